//! Tropical limits of the wall factors: rays of the corner locus of
//! `min(⟨w, x⟩ : w ∈ support)`, and the check that the walls together recover
//! the fan of the polytope.
//!
//! With the min convention a polynomial with Newton polytope `Q` tropicalizes
//! to the codimension-1 skeleton of the *inner* normal fan of `Q`, so
//! comparisons are made against `normal_fan_rays(P).negated()`.

use crate::error::{Error, Result};
use crate::lattice::{normal_fan_rays, IntVector, RaySet, UnimodularSimplex};
use crate::minkowski::MinkowskiDecomposition;

/// Rays through the origin along which the minimum of the linear forms
/// `⟨w, x⟩`, `w ∈ support`, is attained at least twice. Requires `d = 2`.
pub fn tropical_rays_of_support(support: &[IntVector]) -> Result<RaySet> {
    if let Some(w) = support.iter().find(|w| w.dim() != 2) {
        return Err(Error::UnsupportedDimension(w.dim()));
    }
    let mut rays = RaySet::new();
    for (i, a) in support.iter().enumerate() {
        for b in &support[i + 1..] {
            let diff = a - b;
            if diff.is_zero() {
                continue;
            }
            let perp = IntVector::new(vec![-diff.entries()[1].clone(), diff.entries()[0].clone()]);
            for r in [perp.clone(), -&perp] {
                let values: Vec<_> = support.iter().map(|w| w.dot(&r)).collect();
                let min = values.iter().min().expect("support is nonempty");
                if values.iter().filter(|x| *x == min).count() >= 2 {
                    rays.insert(&r);
                }
            }
        }
    }
    Ok(rays)
}

/// Corner locus of `min(0, ⟨u_1, x⟩, .., ⟨u_k, x⟩)` for the wall factor of `R`.
pub fn tropical_rays(r: &UnimodularSimplex) -> Result<RaySet> {
    if r.dim() != 2 {
        return Err(Error::UnsupportedDimension(r.dim()));
    }
    tropical_rays_of_support(&r.vertices())
}

/// True iff the tropical rays of all wall factors together are exactly the
/// rays of the (inner) normal fan of the polytope.
pub fn dual_fan_check(d: &MinkowskiDecomposition) -> Result<bool> {
    if d.dim() != 2 {
        return Err(Error::UnsupportedDimension(d.dim()));
    }
    let mut union = RaySet::new();
    for r in d.summands() {
        union = union.union(&tropical_rays(r)?);
    }
    Ok(union == inner_normal_fan_rays(d)?)
}

/// Inner normals of the edges of the decomposed polytope.
pub fn inner_normal_fan_rays(d: &MinkowskiDecomposition) -> Result<RaySet> {
    Ok(normal_fan_rays(d.polytope())?.negated())
}

/// Number of connected components of the complement of the wall's tropical
/// curve, i.e. maximal cones of the normal fan of `R`.
pub fn wall_chambers(r: &UnimodularSimplex) -> Result<usize> {
    match r.dim() {
        // the complement of a point in a line
        1 if r.k() == 1 => Ok(2),
        // a complete fan in the plane has as many maximal cones as rays
        2 => Ok(tropical_rays(r)?.len()),
        d => Err(Error::UnsupportedDimension(d)),
    }
}
