//! Exact integer convex geometry in ambient dimension 1 and 2.
//!
//! Everything here works over `BigInt`; there is no floating point. Hulls,
//! lattice point lists and ray sets all come out in a canonical order so that
//! downstream reports are byte-deterministic.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::json::JsonInt;

/// A point of `Z^d`. Ordering is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn zero(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Divides out the content. The zero vector is returned unchanged.
    pub fn primitive(&self) -> IntVector {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        IntVector(self.0.iter().map(|x| x / &g).collect())
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * k).collect())
    }

    /// Concatenation `(self; other)`.
    pub fn concat(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().chain(&other.0).cloned().collect())
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: self.dim() });
        }
        Ok(())
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector(v.into_iter().map(BigInt::from).collect())
    }
}

impl<const N: usize> From<[i64; N]> for IntVector {
    fn from(v: [i64; N]) -> Self {
        IntVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<JsonInt> = self.0.iter().cloned().map(JsonInt).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<JsonInt>::deserialize(d)?;
        Ok(IntVector(v.into_iter().map(|x| x.0).collect()))
    }
}

/// 2D cross product `a × b`.
pub(crate) fn cross2(a: &IntVector, b: &IntVector) -> BigInt {
    &a.0[0] * &b.0[1] - &a.0[1] * &b.0[0]
}

/// Orientation of `c` relative to the directed line `a → b`.
fn orient(a: &IntVector, b: &IntVector, c: &IntVector) -> BigInt {
    cross2(&(b - a), &(c - a))
}

fn check_supported(dim: usize) -> Result<()> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// A convex lattice polytope stored by its vertices.
///
/// Vertices are exactly the extreme points of the hull. In `d = 2` they are
/// listed counterclockwise starting at the lexicographic minimum, in `d = 1`
/// increasing. Points and segments are valid (degenerate) polytopes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IntVector>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeJson {
    dim: usize,
    vertices: Vec<IntVector>,
}

impl Serialize for LatticePolytope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeJson { dim: self.dim, vertices: self.vertices.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePolytope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PolytopeJson::deserialize(d)?;
        if let Some(v) = raw.vertices.iter().find(|v| v.dim() != raw.dim) {
            return Err(serde::de::Error::custom(format!(
                "vertex {v} does not have dimension {}",
                raw.dim
            )));
        }
        hull(&raw.vertices).map_err(serde::de::Error::custom)
    }
}

/// Canonical convex hull of a nonempty point list in `Z^1` or `Z^2`.
pub fn hull(points: &[IntVector]) -> Result<LatticePolytope> {
    let first = points.first().ok_or(Error::EmptyInput)?;
    let dim = first.dim();
    check_supported(dim)?;
    for p in points {
        p.check_dim(dim)?;
    }
    let mut pts: Vec<IntVector> = points.to_vec();
    pts.sort();
    pts.dedup();

    let vertices = if dim == 1 || pts.len() <= 2 {
        let lo = pts.first().unwrap().clone();
        let hi = pts.last().unwrap().clone();
        if lo == hi {
            vec![lo]
        } else if dim == 1 {
            vec![lo, hi]
        } else {
            // two distinct points in the plane: a segment
            vec![lo, hi]
        }
    } else {
        monotone_chain(&pts)
    };
    Ok(LatticePolytope { dim, vertices })
}

/// Andrew's monotone chain on lex-sorted, deduplicated points. Collinear
/// points are dropped; the result starts at the lex-min point and runs ccw.
fn monotone_chain(pts: &[IntVector]) -> Vec<IntVector> {
    let mut lower: Vec<IntVector> = Vec::new();
    for p in pts {
        while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<IntVector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

impl LatticePolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    /// The single-point polytope `{v}`.
    pub fn point(v: IntVector) -> Self {
        LatticePolytope { dim: v.dim(), vertices: vec![v] }
    }

    /// Dimension of the affine hull (0, 1 or 2).
    pub fn affine_dim(&self) -> usize {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn is_vertex(&self, v: &IntVector) -> bool {
        self.vertices.contains(v)
    }

    /// Lexicographically smallest vertex.
    pub fn lex_min(&self) -> &IntVector {
        // canonical order puts it first in both d = 1 and d = 2
        &self.vertices[0]
    }

    pub fn translate(&self, by: &IntVector) -> LatticePolytope {
        LatticePolytope { dim: self.dim, vertices: self.vertices.iter().map(|v| v + by).collect() }
    }

    /// Translate so that the lexicographically smallest vertex is the origin.
    pub fn normalized(&self) -> LatticePolytope {
        self.translate(&-self.lex_min())
    }

    /// Closed-polytope membership test.
    pub fn contains(&self, p: &IntVector) -> bool {
        if p.dim() != self.dim {
            return false;
        }
        match self.vertices.len() {
            1 => &self.vertices[0] == p,
            2 => {
                let (a, b) = (&self.vertices[0], &self.vertices[1]);
                if self.dim == 1 {
                    return a <= p && p <= b;
                }
                orient(a, b, p).is_zero() && (p - a).dot(&(b - a)) >= BigInt::zero() && (p - b).dot(&(a - b)) >= BigInt::zero()
            }
            n => (0..n).all(|i| !orient(&self.vertices[i], &self.vertices[(i + 1) % n], p).is_negative()),
        }
    }

    /// Directed boundary edges in `d = 2` as `(primitive direction, lattice length)`,
    /// counterclockwise from the lex-min vertex. A segment contributes both
    /// orientations; a point has none.
    pub fn edges(&self) -> Result<Vec<(IntVector, BigInt)>> {
        if self.dim != 2 {
            return Err(Error::UnsupportedDimension(self.dim));
        }
        let n = self.vertices.len();
        if n == 1 {
            return Ok(Vec::new());
        }
        Ok((0..n)
            .map(|i| {
                let e = &self.vertices[(i + 1) % n] - &self.vertices[i];
                let len = e.content();
                (e.primitive(), len)
            })
            .collect())
    }
}

impl fmt::Display for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// All lattice points of `p`, lexicographically sorted.
pub fn lattice_points(p: &LatticePolytope) -> Result<Vec<IntVector>> {
    check_supported(p.dim)?;
    let vs = &p.vertices;
    let mut out = Vec::new();
    match vs.len() {
        1 => out.push(vs[0].clone()),
        2 => {
            let (a, b) = (&vs[0], &vs[1]);
            let e = b - a;
            let g = e.content();
            let step = e.primitive();
            let mut t = BigInt::zero();
            while t <= g {
                out.push(a + &step.scale(&t));
                t += 1;
            }
        }
        _ => {
            let min_y = vs.iter().map(|v| v.0[1].clone()).min().unwrap();
            let max_y = vs.iter().map(|v| v.0[1].clone()).max().unwrap();
            let min_x = vs.iter().map(|v| v.0[0].clone()).min().unwrap();
            let max_x = vs.iter().map(|v| v.0[0].clone()).max().unwrap();
            let mut x = min_x;
            while x <= max_x {
                let mut y = min_y.clone();
                while y <= max_y {
                    let q = IntVector(vec![x.clone(), y.clone()]);
                    if p.contains(&q) {
                        out.push(q);
                    }
                    y += 1;
                }
                x += 1;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Minkowski sum `p + q`, the hull of pairwise vertex sums.
pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> Result<LatticePolytope> {
    check_supported(p.dim)?;
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: q.dim });
    }
    let sums: Vec<IntVector> = p.vertices.iter().flat_map(|a| q.vertices.iter().map(move |b| a + b)).collect();
    hull(&sums)
}

/// Sum of a sequence of polytopes; `None` for an empty sequence.
pub fn minkowski_sum_all<'a, I>(polytopes: I) -> Result<Option<LatticePolytope>>
where
    I: IntoIterator<Item = &'a LatticePolytope>,
{
    let mut acc: Option<LatticePolytope> = None;
    for p in polytopes {
        acc = Some(match acc {
            None => p.clone(),
            Some(a) => minkowski_sum(&a, p)?,
        });
    }
    Ok(acc)
}

/// A set of primitive rays in `Z^2`, kept in lexicographic order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaySet {
    rays: BTreeSet<IntVector>,
}

impl RaySet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts the primitive representative of `v`. Zero vectors are ignored.
    pub fn insert(&mut self, v: &IntVector) -> bool {
        if v.is_zero() {
            return false;
        }
        self.rays.insert(v.primitive())
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.rays.contains(&v.primitive())
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &IntVector> {
        self.rays.iter()
    }

    pub fn union(&self, other: &RaySet) -> RaySet {
        RaySet { rays: self.rays.union(&other.rays).cloned().collect() }
    }

    pub fn is_subset(&self, other: &RaySet) -> bool {
        self.rays.is_subset(&other.rays)
    }

    /// The antipodal ray set `{-r}`.
    pub fn negated(&self) -> RaySet {
        RaySet { rays: self.rays.iter().map(|r| -r).collect() }
    }
}

impl<V: Into<IntVector>> FromIterator<V> for RaySet {
    fn from_iter<T: IntoIterator<Item = V>>(iter: T) -> Self {
        let mut s = RaySet::new();
        for v in iter {
            s.insert(&v.into());
        }
        s
    }
}

/// Primitive outward edge normals of a polygon in `Z^2`.
///
/// A segment yields both normals of its line, a point yields nothing.
pub fn normal_fan_rays(p: &LatticePolytope) -> Result<RaySet> {
    let edges = p.edges()?;
    let mut rays = RaySet::new();
    for (dir, _) in &edges {
        rays.insert(&IntVector(vec![dir.0[1].clone(), -&dir.0[0]]));
    }
    Ok(rays)
}

/// Why a generator list fails to span a unimodular simplex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnimodularityDefect {
    Empty,
    MixedDimensions,
    TooManyGenerators { k: usize, dim: usize },
    Dependent,
    /// Linearly independent, but the maximal minors share the factor `gcd`.
    Index { gcd: BigInt },
}

impl fmt::Display for UnimodularityDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UnimodularityDefect::Empty => write!(f, "no generators"),
            UnimodularityDefect::MixedDimensions => write!(f, "generators have different lengths"),
            UnimodularityDefect::TooManyGenerators { k, dim } => write!(f, "{k} generators in dimension {dim}"),
            UnimodularityDefect::Dependent => write!(f, "generators are linearly dependent"),
            UnimodularityDefect::Index { gcd } => write!(f, "maximal minors have gcd {gcd}"),
        }
    }
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub(crate) fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// gcd of all `k × k` minors of the `k × d` generator matrix.
pub(crate) fn maximal_minor_gcd(generators: &[IntVector]) -> BigInt {
    let k = generators.len();
    let d = generators[0].dim();
    combinations(d, k).into_iter().fold(BigInt::zero(), |g, cols| {
        let sub: Vec<Vec<BigInt>> = generators.iter().map(|u| cols.iter().map(|&c| u.0[c].clone()).collect()).collect();
        g.gcd(&determinant(&sub))
    })
}

/// Checks that `{0, u_1, .., u_k}` is a unimodular simplex.
pub fn check_unimodular(generators: &[IntVector]) -> std::result::Result<(), UnimodularityDefect> {
    let first = generators.first().ok_or(UnimodularityDefect::Empty)?;
    let dim = first.dim();
    if generators.iter().any(|g| g.dim() != dim) {
        return Err(UnimodularityDefect::MixedDimensions);
    }
    if generators.len() > dim {
        return Err(UnimodularityDefect::TooManyGenerators { k: generators.len(), dim });
    }
    match maximal_minor_gcd(generators) {
        g if g.is_zero() => Err(UnimodularityDefect::Dependent),
        g if g.is_one() => Ok(()),
        gcd => Err(UnimodularityDefect::Index { gcd }),
    }
}

/// True iff the generators are independent and their maximal minors have gcd 1.
pub fn is_unimodular_simplex(generators: &[IntVector]) -> bool {
    check_unimodular(generators).is_ok()
}

/// A unimodular simplex with vertices `{0, u_1, .., u_k}`.
///
/// Generators are kept lexicographically sorted. [`UnimodularSimplex::from_vertices`]
/// normalizes any placement so that the origin is the lex-min vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnimodularSimplex {
    generators: Vec<IntVector>,
}

impl PartialOrd for UnimodularSimplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Order by `k`, then lexicographically by the sorted generator list.
impl Ord for UnimodularSimplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.k().cmp(&other.k()).then_with(|| self.generators.cmp(&other.generators))
    }
}

impl UnimodularSimplex {
    pub fn new(mut generators: Vec<IntVector>) -> Result<Self> {
        if let Err(defect) = check_unimodular(&generators) {
            return Err(Error::InvalidSummand(defect.to_string()));
        }
        generators.sort();
        Ok(UnimodularSimplex { generators })
    }

    /// Builds the simplex from a full vertex list, re-rooting it at its lex-min vertex.
    pub fn from_vertices(vertices: &[IntVector]) -> Result<Self> {
        let root = vertices.iter().min().ok_or(Error::EmptyInput)?;
        let mut gens: Vec<IntVector> = vertices.iter().filter(|v| *v != root).map(|v| v - root).collect();
        gens.sort();
        gens.dedup();
        Self::new(gens)
    }

    /// Re-roots an arbitrary placement (generators relative to some vertex) at the lex-min vertex.
    pub fn canonical(&self) -> Result<Self> {
        Self::from_vertices(&self.vertices())
    }

    pub fn is_canonical(&self) -> bool {
        self.generators.iter().all(|g| g > &IntVector::zero(self.dim()))
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    /// Number of generators (the simplex dimension).
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[IntVector] {
        &self.generators
    }

    /// `0` followed by the generators.
    pub fn vertices(&self) -> Vec<IntVector> {
        std::iter::once(IntVector::zero(self.dim())).chain(self.generators.iter().cloned()).collect()
    }

    pub fn polytope(&self) -> LatticePolytope {
        hull(&self.vertices()).expect("simplex vertices are nonempty and share a dimension")
    }
}

#[derive(Serialize, Deserialize)]
struct SimplexJson {
    generators: Vec<IntVector>,
}

impl Serialize for UnimodularSimplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SimplexJson { generators: self.generators.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnimodularSimplex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SimplexJson::deserialize(d)?;
        UnimodularSimplex::new(raw.generators).map_err(serde::de::Error::custom)
    }
}
