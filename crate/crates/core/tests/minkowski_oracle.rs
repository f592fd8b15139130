//! Cross-checks `enumerate_decompositions` against a brute-force search that
//! knows nothing about edge directions: it tries every multiset of unimodular
//! simplices that fit inside `P` and keeps those whose sum is `P`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use syzkit::lattice::{hull, is_unimodular_simplex, lattice_points, minkowski_sum};
use syzkit::minkowski::{enumerate_decompositions, DEFAULT_SEARCH_BUDGET};
use syzkit::{IntVector, LatticePolytope, UnimodularSimplex};

fn v(x: i64, y: i64) -> IntVector {
    IntVector::from([x, y])
}

/// Some lattice translate of `q` lies inside `p`.
fn fits(q: &LatticePolytope, p: &LatticePolytope, p_points: &[IntVector]) -> bool {
    let anchor = q.lex_min();
    p_points.iter().any(|t| {
        let shift = t - anchor;
        q.vertices().iter().all(|w| p.contains(&(w + &shift)))
    })
}

fn perimeter(p: &LatticePolytope) -> BigInt {
    match p.affine_dim() {
        0 => BigInt::from(0),
        _ => p.edges().unwrap().into_iter().map(|(_, len)| len).sum(),
    }
}

fn candidates(p: &LatticePolytope, points: &[IntVector]) -> Vec<UnimodularSimplex> {
    let mut diffs: BTreeSet<IntVector> = BTreeSet::new();
    for a in points {
        for b in points {
            if a != b {
                diffs.insert(a - b);
            }
        }
    }
    let diffs: Vec<IntVector> = diffs.into_iter().collect();
    let mut out = BTreeSet::new();
    for a in &diffs {
        if is_unimodular_simplex(std::slice::from_ref(a)) {
            out.insert(UnimodularSimplex::from_vertices(&[IntVector::zero(2), a.clone()]).unwrap());
        }
        for b in &diffs {
            if is_unimodular_simplex(&[a.clone(), b.clone()]) {
                out.insert(UnimodularSimplex::from_vertices(&[IntVector::zero(2), a.clone(), b.clone()]).unwrap());
            }
        }
    }
    out.into_iter().filter(|r| fits(&r.polytope(), p, points)).collect()
}

fn brute_force(p: &LatticePolytope) -> BTreeSet<Vec<UnimodularSimplex>> {
    let points = lattice_points(p).unwrap();
    let cands = candidates(p, &points);
    let target = p.normalized();
    let budget = perimeter(p);
    let mut found = BTreeSet::new();

    fn go(
        start: usize,
        cands: &[UnimodularSimplex],
        chosen: &mut Vec<UnimodularSimplex>,
        sum: &LatticePolytope,
        used: BigInt,
        ctx: (&LatticePolytope, &[IntVector], &LatticePolytope, &BigInt),
        found: &mut BTreeSet<Vec<UnimodularSimplex>>,
    ) {
        let (p, points, target, budget) = ctx;
        if &used == budget && !chosen.is_empty() {
            if &sum.normalized() == target {
                let mut key = chosen.clone();
                key.sort();
                found.insert(key);
            }
            return;
        }
        for i in start..cands.len() {
            let r = &cands[i];
            let next = minkowski_sum(sum, &r.polytope()).unwrap();
            let used_next = &used + perimeter(&r.polytope());
            if &used_next > budget || !fits(&next, p, points) {
                continue;
            }
            chosen.push(r.clone());
            go(i, cands, chosen, &next, used_next, ctx, found);
            chosen.pop();
        }
    }

    let origin = LatticePolytope::point(IntVector::zero(2));
    go(0, &cands, &mut Vec::new(), &origin, BigInt::from(0), (p, &points, &target, &budget), &mut found);
    found
}

fn enumerated(p: &LatticePolytope) -> BTreeSet<Vec<UnimodularSimplex>> {
    enumerate_decompositions(p, DEFAULT_SEARCH_BUDGET).unwrap().into_iter().map(|d| d.summands().to_vec()).collect()
}

#[test]
fn fixtures_match_brute_force() {
    let polys = [
        hull(&[v(0, 0), v(1, 0), v(2, 1), v(2, 2), v(1, 2), v(0, 1)]).unwrap(),
        hull(&[v(0, 0), v(1, 0), v(1, 1), v(0, 1)]).unwrap(),
        hull(&[v(0, 0), v(2, 0), v(0, 2)]).unwrap(),
        hull(&[v(0, 0), v(1, 0), v(1, 2)]).unwrap(),
        hull(&[v(0, 0), v(3, 0)]).unwrap(),
        hull(&[v(0, 0), v(2, 0), v(2, 1), v(0, 1)]).unwrap(),
    ];
    for p in &polys {
        assert_eq!(enumerated(p), brute_force(p), "polytope {:?}", p.vertices());
    }
}

#[test]
fn random_small_polygons_match_brute_force() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut checked = 0;
    while checked < 120 {
        let n = rng.gen_range(2..=5);
        let pts: Vec<IntVector> = (0..n).map(|_| v(rng.gen_range(0..=3), rng.gen_range(0..=3))).collect();
        let p = hull(&pts).unwrap();
        if p.affine_dim() == 0 || lattice_points(&p).unwrap().len() > 8 {
            continue;
        }
        assert_eq!(enumerated(&p), brute_force(&p), "polytope {:?}", p.vertices());
        checked += 1;
    }
}

/// Every edge of `P` is split among the summands with the same direction:
/// the lattice lengths per primitive direction add up.
#[test]
fn edge_lengths_are_shared_out() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for _ in 0..80 {
        let pts: Vec<IntVector> = (0..5).map(|_| v(rng.gen_range(0..=3), rng.gen_range(0..=3))).collect();
        let p = hull(&pts).unwrap();
        if p.affine_dim() == 0 {
            continue;
        }
        let expected: BTreeMap<IntVector, BigInt> = p.edges().unwrap().into_iter().collect();
        for d in enumerate_decompositions(&p, DEFAULT_SEARCH_BUDGET).unwrap() {
            let mut got: BTreeMap<IntVector, BigInt> = BTreeMap::new();
            for r in d.summands() {
                for (dir, len) in r.polytope().edges().unwrap() {
                    *got.entry(dir).or_insert_with(|| BigInt::from(0)) += len;
                }
            }
            assert_eq!(got, expected, "polytope {:?}", p.vertices());
        }
    }
}
