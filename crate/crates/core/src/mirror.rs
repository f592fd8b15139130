//! Mirror of a smoothing: wall-crossing factors, the polynomial `g`, its
//! coefficient table, the disc potential, Maslov-2 disc classes with their
//! open Gromov-Witten invariants, and the chamber-wise generating functions.
//!
//! Symplectic areas and holonomies are replaced by formal variables: `z_0`
//! tracks the class `β_0`, and `z^v` tracks boundary `v ∈ P`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{LaurentPolynomial, ParametricCoefficient};
use crate::error::{Error, Result};
use crate::json::JsonInt;
use crate::lattice::{lattice_points, IntVector, UnimodularSimplex};
use crate::minkowski::MinkowskiDecomposition;

/// Which boundary divisor a Maslov-2 disc class emanates from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sector {
    D0,
    Dinf,
    /// Purely Maslov-0: only wall classes `β^i_j`.
    #[serde(rename = "none")]
    None,
}

/// `β_0 + Σ n^i_j β^i_j` (or with `β_∞`, or neither).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DiscClass {
    pub sector: Sector,
    /// `multiplicities[i][j-1] = n^i_j`.
    pub multiplicities: Vec<Vec<u32>>,
}

impl DiscClass {
    /// The class `β_0` or `β_∞` with no wall contributions.
    pub fn basic(sector: Sector, shape: &[usize]) -> Self {
        DiscClass { sector, multiplicities: shape.iter().map(|&k| vec![0; k]).collect() }
    }

    pub fn shape(&self) -> Vec<usize> {
        self.multiplicities.iter().map(Vec::len).collect()
    }

    /// `μ(β) = 2 β·(D_0 + D_∞)`.
    pub fn maslov_index(&self) -> u8 {
        match self.sector {
            Sector::D0 | Sector::Dinf => 2,
            Sector::None => 0,
        }
    }

    /// `∂β' = Σ n^i_j u^i_j` for the wall part, as a point of the lattice.
    pub fn boundary(&self, d: &MinkowskiDecomposition) -> Result<IntVector> {
        if self.shape() != d.shape() {
            return Err(Error::ShapeMismatch);
        }
        let mut v = IntVector::zero(d.dim());
        for (row, s) in self.multiplicities.iter().zip(d.summands()) {
            for (&n, u) in row.iter().zip(s.generators()) {
                v = &v + &u.scale(&BigInt::from(n));
            }
        }
        Ok(v)
    }
}

/// Fiber position between walls `H_l` and `H_{l+1}`; `-1` is below all walls
/// and `p` above all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChamberIndex(i64);

impl ChamberIndex {
    pub fn new(l: i64, d: &MinkowskiDecomposition) -> Result<Self> {
        let max = d.p() as i64;
        if l < -1 || l > max {
            return Err(Error::InvalidChamber { index: l, max });
        }
        Ok(ChamberIndex(l))
    }

    /// The chamber above every wall.
    pub fn top(d: &MinkowskiDecomposition) -> Self {
        ChamberIndex(d.p() as i64)
    }

    pub fn value(self) -> i64 {
        self.0
    }

    fn check(self, d: &MinkowskiDecomposition) -> Result<()> {
        Self::new(self.0, d).map(|_| ())
    }

    /// True when wall `i` lies below the fiber.
    fn is_below(self, i: usize) -> bool {
        (i as i64) <= self.0
    }
}

/// Coefficients `n_v` of `g`, one per lattice point of `P`.
///
/// `n_v` counts the ways of writing `v` as a sum of one vertex from each
/// summand. It is 1 at vertices of `P` but can be 0 at other lattice points:
/// `[0,e_1] + conv(0, e_2, e_1 + 3e_2)` contains `(1,2)`, which is no such sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwTable {
    entries: BTreeMap<IntVector, BigInt>,
}

impl GwTable {
    pub fn get(&self, v: &IntVector) -> Option<&BigInt> {
        self.entries.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntVector, &BigInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> BigInt {
        self.entries.values().sum()
    }
}

#[derive(Serialize, Deserialize)]
struct GwEntryJson {
    point: IntVector,
    n: JsonInt,
}

#[derive(Serialize, Deserialize)]
struct GwTableJson {
    entries: Vec<GwEntryJson>,
}

impl Serialize for GwTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GwTableJson { entries: self.entries.iter().map(|(p, n)| GwEntryJson { point: p.clone(), n: JsonInt(n.clone()) }).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GwTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GwTableJson::deserialize(d)?;
        Ok(GwTable { entries: raw.entries.into_iter().map(|e| (e.point, e.n.0)).collect() })
    }
}

/// `1 + Σ_l z^{u_l}` for the summand `R` with generators `u_1, .., u_k`.
pub fn wall_factor(r: &UnimodularSimplex) -> LaurentPolynomial {
    let mut f = LaurentPolynomial::one(r.dim());
    for u in r.generators() {
        f.add_term(u.clone(), ParametricCoefficient::one());
    }
    f
}

fn product(dim: usize, factors: &[LaurentPolynomial]) -> LaurentPolynomial {
    factors.iter().fold(LaurentPolynomial::one(dim), |acc, f| acc.mul(f).expect("factors share one dimension"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyzMirror {
    /// Wall factors in summand order.
    pub factored: Vec<LaurentPolynomial>,
    /// `g = ∏ factors`.
    pub expanded: LaurentPolynomial,
    pub table: GwTable,
}

/// The mirror `uv = g(z)` of the smoothing given by `d`.
pub fn syz_mirror(d: &MinkowskiDecomposition) -> SyzMirror {
    let factored: Vec<LaurentPolynomial> = d.summands().iter().map(wall_factor).collect();
    let expanded = product(d.dim(), &factored);
    let points = lattice_points(d.polytope()).expect("decomposed polytopes have dimension 1 or 2");
    let entries = points
        .into_iter()
        .map(|v| {
            let n = expanded.rational_coeff(&v).map_or_else(BigInt::zero, |q| {
                debug_assert!(q.denom().is_one());
                q.to_integer()
            });
            (v, n)
        })
        .collect();
    SyzMirror { factored, expanded, table: GwTable { entries } }
}

/// `W = z_0 Σ_v n_v z^v`, in variables `(z_0, z_1, .., z_d)`.
pub fn disc_potential(d: &MinkowskiDecomposition) -> LaurentPolynomial {
    syz_mirror(d).expanded.with_leading_exponent(1)
}

/// Open Gromov-Witten invariant of a Maslov-2 class for a fiber in chamber `l`.
///
/// A `β_0` class counts 1 iff every wall contributes at most one `β^i_j` and
/// walls above the fiber (`i > l`) contribute none. A `β_∞` class is the
/// mirror image: walls at or below the fiber (`i ≤ l`) contribute none. Classes
/// with sector [`Sector::None`] have Maslov index 0 and evaluate to 0.
pub fn gw_invariant(d: &MinkowskiDecomposition, l: ChamberIndex, beta: &DiscClass) -> Result<u8> {
    l.check(d)?;
    if beta.shape() != d.shape() {
        return Err(Error::ShapeMismatch);
    }
    let allowed = |i: usize| match beta.sector {
        Sector::D0 => l.is_below(i),
        Sector::Dinf => !l.is_below(i),
        Sector::None => false,
    };
    if beta.sector == Sector::None {
        return Ok(0);
    }
    for (i, row) in beta.multiplicities.iter().enumerate() {
        let total: u32 = row.iter().sum();
        if total > 1 || (total == 1 && !allowed(i)) {
            return Ok(0);
        }
    }
    Ok(1)
}

/// Every class with invariant 1 in the given sector, in lexicographic order of
/// the multiplicity table.
pub fn enumerate_gw_classes(d: &MinkowskiDecomposition, l: ChamberIndex, sector: Sector) -> Result<Vec<DiscClass>> {
    l.check(d)?;
    let shape = d.shape();
    if sector == Sector::None {
        return Ok(Vec::new());
    }
    let active: Vec<usize> = (0..shape.len()).filter(|&i| if sector == Sector::D0 { l.is_below(i) } else { !l.is_below(i) }).collect();
    // choice[a] = 0 for no contribution from wall active[a], else j
    let mut choice = vec![0usize; active.len()];
    let mut out = Vec::new();
    loop {
        let mut class = DiscClass::basic(sector, &shape);
        for (a, &i) in active.iter().enumerate() {
            if choice[a] > 0 {
                class.multiplicities[i][choice[a] - 1] = 1;
            }
        }
        out.push(class);
        // odometer, last wall fastest
        let mut a = active.len();
        loop {
            if a == 0 {
                out.sort();
                return Ok(out);
            }
            a -= 1;
            if choice[a] < shape[active[a]] {
                choice[a] += 1;
                break;
            }
            choice[a] = 0;
        }
    }
}

/// Generating functions `(u, v)` for a fiber in chamber `l`, in variables
/// `(z_0, z_1, .., z_d)`: `u = z_0 ∏_{i ≤ l} f_i` and `v = z_0^{-1} ∏_{i > l} f_i`.
pub fn chamber_uv(d: &MinkowskiDecomposition, l: ChamberIndex) -> Result<(LaurentPolynomial, LaurentPolynomial)> {
    l.check(d)?;
    let factors: Vec<LaurentPolynomial> = d.summands().iter().map(wall_factor).collect();
    let split = (l.value() + 1) as usize;
    let below = product(d.dim(), &factors[..split]);
    let above = product(d.dim(), &factors[split..]);
    Ok((below.with_leading_exponent(1), above.with_leading_exponent(-1)))
}

/// `g(1, .., 1) = ∏ (1 + k_i)`.
pub fn total_count(d: &MinkowskiDecomposition) -> BigInt {
    d.shape().iter().map(|&k| BigInt::from(k + 1)).fold(BigInt::one(), |a, b| a * b)
}

/// Number of basic disc classes with nonzero invariant, `Σ_v n_v`, as counted
/// from the classes themselves grouped by boundary point.
pub fn count_by_boundary(d: &MinkowskiDecomposition, classes: &[DiscClass]) -> Result<BTreeMap<IntVector, BigInt>> {
    let mut out: BTreeMap<IntVector, BigInt> = BTreeMap::new();
    for c in classes {
        *out.entry(c.boundary(d)?).or_insert_with(BigInt::zero) += 1;
    }
    Ok(out)
}
