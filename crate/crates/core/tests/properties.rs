use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use syzkit::algebra::{apply_character, newton_polytope, Character, LaurentPolynomial};
use syzkit::lattice::{hull, is_unimodular_simplex, lattice_points, minkowski_sum, minkowski_sum_all, normal_fan_rays};
use syzkit::minkowski::{cayley_cone, MinkowskiDecomposition};
use syzkit::mirror::{chamber_uv, enumerate_gw_classes, syz_mirror, total_count, ChamberIndex, Sector};
use syzkit::transition::{default_basis_for, match_transition};
use syzkit::tropical::{dual_fan_check, tropical_rays, wall_chambers};
use syzkit::{IntVector, LatticePolytope, UnimodularSimplex};

fn point() -> impl Strategy<Value = IntVector> {
    (-3i64..=3, -3i64..=3).prop_map(|(x, y)| IntVector::from([x, y]))
}

fn polygon() -> impl Strategy<Value = LatticePolytope> {
    prop::collection::vec(point(), 1..6).prop_map(|pts| hull(&pts).unwrap())
}

fn poly() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec(((-2i64..=2, -2i64..=2), -3i64..=3), 0..5).prop_map(|terms| {
        LaurentPolynomial::from_terms(
            2,
            terms.into_iter().map(|((x, y), c)| (IntVector::from([x, y]), BigRational::from_integer(BigInt::from(c)))),
        )
        .unwrap()
    })
}

fn simplex() -> impl Strategy<Value = UnimodularSimplex> {
    prop_oneof![
        point().prop_map(|a| vec![a]),
        (point(), point()).prop_map(|(a, b)| vec![a, b]),
    ]
    .prop_filter_map("not unimodular", |gens| {
        let gens: Vec<IntVector> = gens.into_iter().map(|g| IntVector::new(g.entries().iter().map(|x| x.clone().max(BigInt::from(-2)).min(BigInt::from(2))).collect())).collect();
        if !is_unimodular_simplex(&gens) {
            return None;
        }
        let mut verts = vec![IntVector::zero(2)];
        verts.extend(gens);
        UnimodularSimplex::from_vertices(&verts).ok()
    })
}

fn decomposition() -> impl Strategy<Value = MinkowskiDecomposition> {
    prop::collection::vec(simplex(), 1..=4).prop_map(|rs| {
        let polys: Vec<LatticePolytope> = rs.iter().map(UnimodularSimplex::polytope).collect();
        let p = minkowski_sum_all(&polys).unwrap().unwrap();
        MinkowskiDecomposition::new(p, IntVector::zero(2), rs).unwrap()
    })
}

/// `n_v` recounted directly: tuples of one vertex per summand summing to `v`.
fn vertex_sum_counts(d: &MinkowskiDecomposition) -> BTreeMap<IntVector, BigInt> {
    let mut sums: BTreeMap<IntVector, BigInt> = BTreeMap::from([(IntVector::zero(2), BigInt::one())]);
    for r in d.summands() {
        let mut next = BTreeMap::new();
        for (s, n) in &sums {
            for w in r.vertices() {
                *next.entry(s + &w).or_insert_with(|| BigInt::from(0)) += n;
            }
        }
        sums = next;
    }
    sums
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g.add(&h).unwrap()).unwrap(), f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&LaurentPolynomial::one(2)).unwrap(), f.clone());
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn newton_polytope_of_product_is_sum(f in poly(), g in poly()) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let lhs = newton_polytope(&f.mul(&g).unwrap()).unwrap();
        let rhs = minkowski_sum(&newton_polytope(&f).unwrap(), &newton_polytope(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hull_is_idempotent(p in polygon()) {
        prop_assert_eq!(hull(p.vertices()).unwrap(), p.clone());
        prop_assert_eq!(hull(&lattice_points(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn minkowski_sum_laws(p in polygon(), q in polygon(), r in polygon()) {
        let pq = minkowski_sum(&p, &q).unwrap();
        prop_assert_eq!(&pq, &minkowski_sum(&q, &p).unwrap());
        prop_assert_eq!(minkowski_sum(&pq, &r).unwrap(), minkowski_sum(&p, &minkowski_sum(&q, &r).unwrap()).unwrap());
        let n = lattice_points(&pq).unwrap().len();
        prop_assert!(n >= lattice_points(&p).unwrap().len().max(lattice_points(&q).unwrap().len()));
        // every vertex of the sum is a sum of vertices
        for w in pq.vertices() {
            prop_assert!(p.vertices().iter().any(|a| q.vertices().iter().any(|b| &(a + b) == w)));
        }
    }

    #[test]
    fn normal_fan_of_sum_is_union(p in polygon(), q in polygon()) {
        let lhs = normal_fan_rays(&minkowski_sum(&p, &q).unwrap()).unwrap();
        let rhs = normal_fan_rays(&p).unwrap().union(&normal_fan_rays(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn decomposition_invariants(d in decomposition()) {
        let m = syz_mirror(&d);
        let p = d.polytope();
        prop_assert_eq!(&newton_polytope(&m.expanded).unwrap(), p);
        for v in p.vertices() {
            prop_assert_eq!(m.table.get(v), Some(&BigInt::one()));
        }
        let points = lattice_points(p).unwrap();
        prop_assert_eq!(m.table.len(), points.len());
        let oracle = vertex_sum_counts(&d);
        for (v, n) in m.table.iter() {
            prop_assert_eq!(n, &oracle.get(v).cloned().unwrap_or_default());
        }
        prop_assert_eq!(m.table.total(), total_count(&d));

        let inner = normal_fan_rays(p).unwrap().negated();
        for r in d.summands() {
            prop_assert!(tropical_rays(r).unwrap().is_subset(&inner));
            prop_assert_eq!(wall_chambers(r).unwrap(), r.k() + 1);
        }
        prop_assert!(dual_fan_check(&d).unwrap());

        for l in -1..=d.p() as i64 {
            let l = ChamberIndex::new(l, &d).unwrap();
            let (u, v) = chamber_uv(&d, l).unwrap();
            prop_assert_eq!(u.mul(&v).unwrap().drop_leading_variable().unwrap(), m.expanded.clone());
        }
        let top = ChamberIndex::top(&d);
        prop_assert_eq!(BigInt::from(enumerate_gw_classes(&d, top, Sector::D0).unwrap().len()), total_count(&d));

        let cone = cayley_cone(&d);
        prop_assert_eq!(cone.generators().len(), d.shape().iter().map(|k| k + 1).sum::<usize>());
        for (i, r) in d.summands().iter().enumerate() {
            prop_assert_eq!(cone.fiber(i, 2), r.vertices());
        }
    }

    #[test]
    fn transition_on_random_decompositions(d in decomposition()) {
        prop_assume!(d.polytope().is_full_dimensional());
        let table = syz_mirror(&d).table;
        let b = match default_basis_for(&d) {
            Ok(b) => b,
            Err(_) => {
                // only acceptable when every unimodular triangle has a vanishing coefficient
                let pts = lattice_points(d.polytope()).unwrap();
                let usable = |w: &IntVector| !table.get(w).unwrap().is_zero();
                for a in &pts {
                    for b in &pts {
                        for c in &pts {
                            if is_unimodular_simplex(&[b - a, c - a]) && d.polytope().vertices().contains(a) {
                                prop_assert!(!(usable(a) && usable(b) && usable(c)));
                            }
                        }
                    }
                }
                return Ok(());
            }
        };
        let r = match_transition(&d, &b).unwrap();
        prop_assert!(r.verified);
        let m = lattice_points(d.polytope()).unwrap().len();
        prop_assert_eq!(r.specialization.len(), m - 3);
        for (v, q) in &r.specialization {
            prop_assert!(!q.is_negative());
            prop_assert_eq!(q.is_zero(), table.get(v).unwrap().is_zero());
        }
        let g = syz_mirror(&d).expanded;
        for v in b.points() {
            prop_assert_eq!(Some(r.character.mu(v).unwrap()), g.rational_coeff(v));
        }
    }

    #[test]
    fn character_inverse_undoes(f in poly(), g in 1i64..6, a in 1i64..6, b in 1i64..6) {
        let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let c = Character::new(q(g, 7 - g), vec![q(a, 6), q(5, b)]).unwrap();
        let back = apply_character(&apply_character(&f, &c).unwrap(), &c.inverse()).unwrap();
        prop_assert_eq!(back, f);
    }
}
