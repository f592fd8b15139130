//! Minkowski decompositions into unimodular simplices and the Cayley cone of
//! a decomposition.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{cross2, minkowski_sum_all, IntVector, LatticePolytope, UnimodularSimplex};

/// Node cap for [`enumerate_decompositions`] when the caller does not pick one.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// `P - v_0 = R_0 + ... + R_p` with every `R_i` a unimodular simplex rooted at
/// its lexicographically smallest vertex.
///
/// `polytope` is the translated polytope (its lex-min vertex is the origin)
/// and `translation` is `v_0`, so the original polytope is
/// `polytope + translation`. Summands are stored sorted by `k_i`, then by
/// their generator lists; that order is the wall order downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinkowskiDecomposition {
    polytope: LatticePolytope,
    translation: IntVector,
    summands: Vec<UnimodularSimplex>,
}

impl MinkowskiDecomposition {
    /// Validates and normalizes a decomposition. Summands are re-rooted and
    /// sorted; `polytope` may be given at any position as long as it equals
    /// the summands' sum up to translation.
    pub fn new(polytope: LatticePolytope, translation: IntVector, summands: Vec<UnimodularSimplex>) -> Result<Self> {
        let dim = polytope.dim();
        if dim != 1 && dim != 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        if translation.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: translation.dim() });
        }
        if summands.is_empty() {
            return Err(Error::InvalidDecomposition("no summands".into()));
        }
        let mut canonical = Vec::with_capacity(summands.len());
        for s in &summands {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
            }
            canonical.push(s.canonical()?);
        }
        canonical.sort();
        let shift = polytope.lex_min().clone();
        let normalized = polytope.normalized();
        let sum = sum_of_summands(&canonical)?;
        if sum != normalized {
            return Err(Error::InvalidDecomposition(format!("summands add up to {sum}, not {normalized}")));
        }
        Ok(MinkowskiDecomposition { polytope: normalized, translation: &translation + &shift, summands: canonical })
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn translation(&self) -> &IntVector {
        &self.translation
    }

    pub fn summands(&self) -> &[UnimodularSimplex] {
        &self.summands
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// Index `p` of the last summand.
    pub fn p(&self) -> usize {
        self.summands.len() - 1
    }

    /// `(k_0, .., k_p)`.
    pub fn shape(&self) -> Vec<usize> {
        self.summands.iter().map(UnimodularSimplex::k).collect()
    }

    /// The polytope at its original position, `polytope + translation`.
    pub fn original_polytope(&self) -> LatticePolytope {
        self.polytope.translate(&self.translation)
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    polytope: LatticePolytope,
    translation: IntVector,
    summands: Vec<UnimodularSimplex>,
}

impl Serialize for MinkowskiDecomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionJson {
            polytope: self.polytope.clone(),
            translation: self.translation.clone(),
            summands: self.summands.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MinkowskiDecomposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DecompositionJson::deserialize(d)?;
        MinkowskiDecomposition::new(raw.polytope, raw.translation, raw.summands).map_err(serde::de::Error::custom)
    }
}

fn sum_of_summands(summands: &[UnimodularSimplex]) -> Result<LatticePolytope> {
    let polys: Vec<LatticePolytope> = summands.iter().map(UnimodularSimplex::polytope).collect();
    match minkowski_sum_all(&polys)? {
        Some(p) => Ok(p),
        None => Err(Error::EmptyInput),
    }
}

/// True iff the summands add up to `p` up to translation. The summands are
/// unimodular by construction of [`UnimodularSimplex`]. An empty summand
/// list sums to a point.
pub fn verify_decomposition(p: &LatticePolytope, summands: &[UnimodularSimplex]) -> Result<bool> {
    let dim = p.dim();
    if dim != 1 && dim != 2 {
        return Err(Error::UnsupportedDimension(dim));
    }
    if summands.iter().any(|s| s.dim() != dim) {
        return Ok(false);
    }
    if summands.is_empty() {
        return Ok(p.affine_dim() == 0);
    }
    Ok(sum_of_summands(summands)?.normalized() == p.normalized())
}

/// A summand candidate for the edge-budget search: the simplex plus the
/// indices of the polygon edge directions it consumes (one unit each).
struct Candidate {
    simplex: UnimodularSimplex,
    uses: Vec<usize>,
}

/// All decompositions of `p` into unimodular simplices, up to reordering.
///
/// In `d = 2` every edge of a summand is parallel to an edge of `p` and the
/// summands' edges exhaust the edges of `p` exactly (with multiplicity given
/// by lattice length). The search enumerates multisets of candidate segments
/// and triangles against that budget, then re-verifies each hit by summing.
/// A point has no decomposition.
pub fn enumerate_decompositions(p: &LatticePolytope, budget: u64) -> Result<Vec<MinkowskiDecomposition>> {
    match p.dim() {
        1 => enumerate_1d(p),
        2 => enumerate_2d(p, budget),
        d => Err(Error::UnsupportedDimension(d)),
    }
}

fn enumerate_1d(p: &LatticePolytope) -> Result<Vec<MinkowskiDecomposition>> {
    let len = match p.vertices() {
        [lo, hi] => &hi.entries()[0] - &lo.entries()[0],
        _ => return Ok(Vec::new()),
    };
    let len = len.to_usize().ok_or_else(|| Error::InvalidDecomposition(format!("segment length {len} too large")))?;
    let unit = UnimodularSimplex::new(vec![IntVector::from([1])])?;
    let d = MinkowskiDecomposition::new(p.clone(), IntVector::zero(1), vec![unit; len])?;
    Ok(vec![d])
}

fn enumerate_2d(p: &LatticePolytope, budget: u64) -> Result<Vec<MinkowskiDecomposition>> {
    let edges = p.edges()?;
    if edges.is_empty() {
        return Ok(Vec::new());
    }
    let mut lengths: BTreeMap<IntVector, BigInt> = BTreeMap::new();
    for (dir, len) in edges {
        *lengths.entry(dir).or_insert_with(BigInt::zero) += len;
    }
    let dirs: Vec<IntVector> = lengths.keys().cloned().collect();
    let mut remaining: Vec<usize> = Vec::with_capacity(dirs.len());
    for len in lengths.values() {
        remaining.push(len.to_usize().ok_or(Error::SearchBudgetExceeded(budget))?);
    }
    let index = |v: &IntVector| dirs.iter().position(|d| d == v);

    let mut candidates = Vec::new();
    for (i, a) in dirs.iter().enumerate() {
        if let Some(j) = index(&-a) {
            if i < j {
                candidates.push(Candidate {
                    simplex: UnimodularSimplex::from_vertices(&[IntVector::zero(2), a.clone()])?,
                    uses: vec![i, j],
                });
            }
        }
    }
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            let (a, b) = (&dirs[i], &dirs[j]);
            let c = -&(a + b);
            let Some(k) = index(&c) else { continue };
            if k <= j || cross2(a, b).abs() != BigInt::from(1) {
                continue;
            }
            // walk the boundary counterclockwise: a then b when a × b > 0
            let (first, second) = if cross2(a, b) > BigInt::zero() { (a, b) } else { (b, a) };
            let verts = [IntVector::zero(2), first.clone(), first + second];
            candidates.push(Candidate { simplex: UnimodularSimplex::from_vertices(&verts)?, uses: vec![i, j, k] });
        }
    }
    candidates.sort_by(|x, y| x.simplex.cmp(&y.simplex));

    // last candidate index that can still consume each direction
    let mut last_user = vec![None; dirs.len()];
    for (ci, c) in candidates.iter().enumerate() {
        for &u in &c.uses {
            last_user[u] = Some(ci);
        }
    }

    let mut search = BudgetSearch { candidates: &candidates, last_user, nodes: 0, budget, counts: vec![0; candidates.len()], hits: Vec::new() };
    search.descend(0, &mut remaining)?;

    let mut out = Vec::with_capacity(search.hits.len());
    for counts in search.hits {
        let summands: Vec<UnimodularSimplex> = counts
            .iter()
            .zip(&candidates)
            .flat_map(|(&m, c)| std::iter::repeat_n(c.simplex.clone(), m))
            .collect();
        out.push(MinkowskiDecomposition::new(p.clone(), IntVector::zero(2), summands)?);
    }
    out.sort_by(|a, b| a.summands.cmp(&b.summands));
    out.dedup();
    Ok(out)
}

struct BudgetSearch<'a> {
    candidates: &'a [Candidate],
    last_user: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
    counts: Vec<usize>,
    hits: Vec<Vec<usize>>,
}

impl BudgetSearch<'_> {
    fn descend(&mut self, ci: usize, remaining: &mut [usize]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        // a direction with budget left and no candidate able to use it
        let stranded = remaining.iter().enumerate().any(|(d, &r)| r > 0 && self.last_user[d].is_none_or(|l| l < ci));
        if stranded {
            return Ok(());
        }
        if ci == self.candidates.len() {
            self.hits.push(self.counts.clone());
            return Ok(());
        }
        let uses = &self.candidates[ci].uses;
        let max = uses.iter().map(|&u| remaining[u]).min().unwrap_or(0);
        for m in 0..=max {
            for &u in uses {
                remaining[u] -= m;
            }
            self.counts[ci] = m;
            let res = self.descend(ci + 1, remaining);
            for &u in uses {
                remaining[u] += m;
            }
            res?;
        }
        self.counts[ci] = 0;
        Ok(())
    }
}

/// Generators of the cone over `⋃ R_i × {e_i}` in `Z^{d+p+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyCone {
    generators: Vec<IntVector>,
}

impl CayleyCone {
    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// Vertices of the summand lying over `e_i`, projected back to `Z^d`.
    pub fn fiber(&self, i: usize, d: usize) -> Vec<IntVector> {
        self.generators
            .iter()
            .filter(|g| g.entries()[d..].iter().enumerate().all(|(j, x)| if j == i { *x == BigInt::from(1) } else { x.is_zero() }))
            .map(|g| IntVector::new(g.entries()[..d].to_vec()))
            .collect()
    }
}

/// Generators `(w; e_i)` for every vertex `w` of every summand `R_i`, ordered
/// by summand and then by vertex (origin first).
pub fn cayley_cone(d: &MinkowskiDecomposition) -> CayleyCone {
    let count = d.summands.len();
    let mut generators = Vec::new();
    for (i, s) in d.summands.iter().enumerate() {
        let e = IntVector::unit(count, i);
        for w in s.vertices() {
            generators.push(w.concat(&e));
        }
    }
    CayleyCone { generators }
}
