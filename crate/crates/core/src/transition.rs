//! Matching the smoothing mirror against the toric-resolution mirror family.
//!
//! The family has coefficient 1 at the points of a basis simplex and one free
//! parameter at every other lattice point. A diagonal rescaling `μ` is fixed by
//! `μ(v_i) = n_{v_i}` at the basis points, and the remaining parameters are
//! then forced to `q̌_v = n_v / μ(v)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{apply_character, rational_pow, Character, LaurentPolynomial, ParametricCoefficient};
use crate::error::{Error, Result};
use crate::json::RationalString;
use crate::lattice::{determinant, lattice_points, IntVector, LatticePolytope};
use crate::minkowski::MinkowskiDecomposition;
use crate::mirror::syz_mirror;

/// Points `v_1, .., v_{d+1}` of `P` with `v_1` a vertex and consecutive
/// differences forming a basis of `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BasisSimplex {
    points: Vec<IntVector>,
}

impl BasisSimplex {
    /// Unchecked; see [`validate`](Self::validate).
    pub fn new(points: Vec<IntVector>) -> Self {
        BasisSimplex { points }
    }

    pub fn points(&self) -> &[IntVector] {
        &self.points
    }

    pub fn contains(&self, v: &IntVector) -> bool {
        self.points.contains(v)
    }

    pub fn validate(&self, p: &LatticePolytope) -> Result<()> {
        let d = p.dim();
        let invalid = |why: String| Err(Error::InvalidBasis(why));
        if self.points.len() != d + 1 {
            return invalid(format!("expected {} points, got {}", d + 1, self.points.len()));
        }
        if let Some(v) = self.points.iter().find(|v| v.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: v.dim() });
        }
        if !p.is_vertex(&self.points[0]) {
            return invalid(format!("{} is not a vertex", self.points[0]));
        }
        if let Some(v) = self.points.iter().find(|v| !p.contains(v)) {
            return invalid(format!("{v} lies outside the polytope"));
        }
        if !determinant(&difference_rows(&self.points)).abs().is_one() {
            return invalid("differences do not form a lattice basis".into());
        }
        Ok(())
    }
}

fn difference_rows(points: &[IntVector]) -> Vec<Vec<BigInt>> {
    points.windows(2).map(|w| (&w[1] - &w[0]).into_entries()).collect()
}

impl fmt::Display for BasisSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses `"(0,0),(1,0),(0,1)"`; whitespace is ignored.
impl FromStr for BasisSimplex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("malformed point list {s:?}"));
        let inner = compact.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let mut points = Vec::new();
        for chunk in inner.split("),(") {
            let entries = chunk
                .split(',')
                .map(|x| x.parse::<BigInt>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            points.push(IntVector::new(entries));
        }
        Ok(BasisSimplex { points })
    }
}

/// Deterministic basis: `v_1` is the first vertex in lex order that admits one,
/// then a depth-first search over lattice points in lex order keeping the
/// differences primitive.
pub fn default_basis(p: &LatticePolytope) -> Result<BasisSimplex> {
    basis_among(p, lattice_points(p)?)
}

/// Like [`default_basis`], restricted to points where the mirror coefficient
/// `n_v` is nonzero, so that the basis equations have a positive solution.
pub fn default_basis_for(d: &MinkowskiDecomposition) -> Result<BasisSimplex> {
    let table = syz_mirror(d).table;
    let support = table.iter().filter(|(_, n)| !n.is_zero()).map(|(v, _)| v.clone()).collect();
    basis_among(d.polytope(), support)
}

fn basis_among(p: &LatticePolytope, points: Vec<IntVector>) -> Result<BasisSimplex> {
    let d = p.dim();

    fn extend(chain: &mut Vec<IntVector>, points: &[IntVector], d: usize) -> bool {
        if chain.len() == d + 1 {
            return true;
        }
        for w in points {
            if chain.contains(w) {
                continue;
            }
            chain.push(w.clone());
            let diffs: Vec<IntVector> = chain.windows(2).map(|x| &x[1] - &x[0]).collect();
            if crate::lattice::is_unimodular_simplex(&diffs) && extend(chain, points, d) {
                return true;
            }
            chain.pop();
        }
        false
    }

    // lex-min vertex first, then the others in order
    let mut starts: Vec<&IntVector> = p.vertices().iter().filter(|w| points.contains(w)).collect();
    starts.sort();
    for start in starts {
        let mut chain = vec![start.clone()];
        if extend(&mut chain, &points, d) {
            return Ok(BasisSimplex { points: chain });
        }
    }
    Err(Error::InvalidBasis("no unimodular simplex with a vertex of P among the admissible points".into()))
}

/// Parameter name for the coefficient at `v`, e.g. `q(2,1)`.
pub fn parameter_name(v: &IntVector) -> String {
    format!("q{v}")
}

/// `Σ_{i} z^{v_i} + Σ_{v ∉ B} q(v) z^v` over the lattice points of `P`.
pub fn toric_family(p: &LatticePolytope, b: &BasisSimplex) -> Result<LaurentPolynomial> {
    b.validate(p)?;
    let points = lattice_points(p)?;
    let free: Vec<&IntVector> = points.iter().filter(|v| !b.contains(v)).collect();
    let params = free.iter().map(|v| parameter_name(v)).collect();
    let mut f = LaurentPolynomial::zero_with_params(p.dim(), params);
    for v in b.points() {
        f.push_term(v.clone(), ParametricCoefficient::one())?;
    }
    for (i, v) in free.into_iter().enumerate() {
        f.push_term(v.clone(), ParametricCoefficient::param(i))?;
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionReport {
    pub basis: BasisSimplex,
    pub character: Character,
    /// `(v, q̌_v)` over the non-basis lattice points, in lex order.
    pub specialization: Vec<(IntVector, BigRational)>,
    pub verified: bool,
}

#[derive(Serialize, Deserialize)]
struct SpecEntryJson {
    point: IntVector,
    value: RationalString,
}

#[derive(Serialize, Deserialize)]
struct TransitionReportJson {
    basis: BasisSimplex,
    character: Character,
    specialization: Vec<SpecEntryJson>,
    verified: bool,
}

impl Serialize for TransitionReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TransitionReportJson {
            basis: self.basis.clone(),
            character: self.character.clone(),
            specialization: self
                .specialization
                .iter()
                .map(|(p, q)| SpecEntryJson { point: p.clone(), value: RationalString(q.clone()) })
                .collect(),
            verified: self.verified,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TransitionReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TransitionReportJson::deserialize(d)?;
        Ok(TransitionReport {
            basis: raw.basis,
            character: raw.character,
            specialization: raw.specialization.into_iter().map(|e| (e.point, e.value.0)).collect(),
            verified: raw.verified,
        })
    }
}

/// Inverse of a unimodular integer matrix via the adjugate.
fn unimodular_inverse(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let det = determinant(m);
    debug_assert!(det.abs().is_one());
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    // inv[r][c] = (-1)^{r+c} M_{c,r} / det
                    let minor: Vec<Vec<BigInt>> = (0..n)
                        .filter(|&i| i != c)
                        .map(|i| (0..n).filter(|&j| j != r).map(|j| m[i][j].clone()).collect())
                        .collect();
                    let cof = determinant(&minor);
                    let signed = if (r + c) % 2 == 0 { cof } else { -cof };
                    signed * &det
                })
                .collect()
        })
        .collect()
}

/// The character with `μ(v_i) = targets[i]`; unique since the rows `(1, v_i)`
/// form a unimodular matrix.
pub fn solve_basis_character(b: &BasisSimplex, targets: &[BigRational]) -> Result<Character> {
    let rows: Vec<Vec<BigInt>> = b.points().iter().map(|v| IntVector::from([1]).concat(v).into_entries()).collect();
    if determinant(&rows).abs() != BigInt::one() {
        return Err(Error::InvalidBasis("differences do not form a lattice basis".into()));
    }
    let inv = unimodular_inverse(&rows);
    let mut unknowns = Vec::with_capacity(rows.len());
    for row in &inv {
        let mut x = BigRational::one();
        for (e, t) in row.iter().zip(targets) {
            if !e.is_zero() {
                x *= rational_pow(t, e)?;
            }
        }
        unknowns.push(x);
    }
    let gamma = unknowns.remove(0);
    Character::new(gamma, unknowns)
}

/// Solves for the character and the specialization, then checks that the
/// rescaled specialized family equals the expanded mirror exactly.
///
/// Basis points are in the coordinates of `d.polytope()` (lex-min vertex at
/// the origin).
pub fn match_transition(d: &MinkowskiDecomposition, b: &BasisSimplex) -> Result<TransitionReport> {
    let p = d.polytope();
    let family = toric_family(p, b)?;
    let g = syz_mirror(d).expanded;
    let n_at = |v: &IntVector| g.rational_coeff(v).unwrap_or_else(BigRational::zero);

    let targets: Vec<BigRational> = b.points().iter().map(n_at).collect();
    if let Some((v, _)) = b.points().iter().zip(&targets).find(|(_, n)| n.is_zero()) {
        return Err(Error::InvalidBasis(format!("mirror coefficient vanishes at basis point {v}")));
    }
    let character = solve_basis_character(b, &targets)?;

    let mut specialization = Vec::new();
    for v in lattice_points(p)? {
        if !b.contains(&v) {
            let q = n_at(&v) / character.mu(&v)?;
            specialization.push((v, q));
        }
    }
    let values: Vec<(String, BigRational)> = specialization.iter().map(|(v, q)| (parameter_name(v), q.clone())).collect();
    let specialized = family.specialize(&values)?;
    if apply_character(&specialized, &character)? != g {
        return Err(Error::VerificationFailed(format!("basis {b}")));
    }
    Ok(TransitionReport { basis: b.clone(), character, specialization, verified: true })
}

/// The family with the report's values substituted, before rescaling.
pub fn specialized_family(d: &MinkowskiDecomposition, report: &TransitionReport) -> Result<LaurentPolynomial> {
    let values: Vec<(String, BigRational)> =
        report.specialization.iter().map(|(v, q)| (parameter_name(v), q.clone())).collect();
    toric_family(d.polytope(), &report.basis)?.specialize(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::solve_character_match;
    use crate::lattice::{hull, UnimodularSimplex};
    use crate::minkowski::{enumerate_decompositions, DEFAULT_SEARCH_BUDGET};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn v(x: i64, y: i64) -> IntVector {
        IntVector::from([x, y])
    }

    fn decompositions(points: &[IntVector]) -> Vec<MinkowskiDecomposition> {
        enumerate_decompositions(&hull(points).unwrap(), DEFAULT_SEARCH_BUDGET).unwrap()
    }

    fn hexagon() -> Vec<MinkowskiDecomposition> {
        decompositions(&[v(0, 0), v(1, 0), v(2, 1), v(2, 2), v(1, 2), v(0, 1)])
    }

    fn values(r: &TransitionReport) -> Vec<BigRational> {
        r.specialization.iter().map(|(_, q)| q.clone()).collect()
    }

    #[test]
    fn basis_parsing_and_validation() {
        let b: BasisSimplex = " (0,1), (1,1),(1,2) ".parse().unwrap();
        assert_eq!(b.points(), &[v(0, 1), v(1, 1), v(1, 2)]);
        assert_eq!(b.to_string(), "(0,1),(1,1),(1,2)");
        assert!("(0,1)(1,1)".parse::<BasisSimplex>().is_err());
        assert!("0,1".parse::<BasisSimplex>().is_err());

        let hex = hexagon()[0].polytope().clone();
        assert!(b.validate(&hex).is_ok());
        let inner: BasisSimplex = "(1,1),(2,1),(2,2)".parse().unwrap();
        assert!(matches!(inner.validate(&hex), Err(Error::InvalidBasis(_))));
        let fat: BasisSimplex = "(0,0),(2,1),(1,2)".parse().unwrap();
        assert!(matches!(fat.validate(&hex), Err(Error::InvalidBasis(_))));
        let outside: BasisSimplex = "(0,0),(1,0),(2,0)".parse().unwrap();
        assert!(matches!(outside.validate(&hex), Err(Error::InvalidBasis(_))));
        let short: BasisSimplex = "(0,0),(1,0)".parse().unwrap();
        assert!(matches!(short.validate(&hex), Err(Error::InvalidBasis(_))));
    }

    #[test]
    fn family_examples() {
        let hex = hexagon()[0].polytope().clone();
        let f = toric_family(&hex, &"(0,1),(1,1),(1,2)".parse().unwrap()).unwrap();
        assert_eq!(f.params(), &["q(0,0)", "q(1,0)", "q(2,1)", "q(2,2)"]);
        assert_eq!(f.len(), 7);
        assert_eq!(f.rational_coeff(&v(1, 1)), Some(q(1, 1)));

        let seg = hull(&[IntVector::from([0]), IntVector::from([2])]).unwrap();
        let f = toric_family(&seg, &"(0),(1)".parse().unwrap()).unwrap();
        assert_eq!(f.params(), &["q(2)"]);
        assert_eq!(f.display_with_vars(&["z"]), "1 + z + q(2)*z^2");
    }

    #[test]
    fn conifold_is_identity() {
        let d = &decompositions(&[v(0, 0), v(1, 0), v(1, 1), v(0, 1)])[0];
        let r = match_transition(d, &"(0,0),(1,0),(0,1)".parse().unwrap()).unwrap();
        assert!(r.character.is_identity());
        assert_eq!(r.specialization, vec![(v(1, 1), q(1, 1))]);
    }

    #[test]
    fn a1_rescales_by_two() {
        let seg = hull(&[IntVector::from([0]), IntVector::from([2])]).unwrap();
        let d = &enumerate_decompositions(&seg, DEFAULT_SEARCH_BUDGET).unwrap()[0];
        let r = match_transition(d, &"(0),(1)".parse().unwrap()).unwrap();
        assert_eq!(r.character, Character::new(q(1, 1), vec![q(2, 1)]).unwrap());
        assert_eq!(values(&r), vec![q(1, 4)]);
    }

    #[test]
    fn hexagon_specializations() {
        let b: BasisSimplex = "(0,1),(1,1),(1,2)".parse().unwrap();
        let ds = hexagon();
        let r1 = match_transition(&ds[0], &b).unwrap();
        assert_eq!(r1.character, Character::new(q(2, 1), vec![q(2, 1), q(1, 2)]).unwrap());
        assert_eq!(values(&r1), vec![q(1, 2), q(1, 4), q(1, 4), q(1, 2)]);
        let r2 = match_transition(&ds[1], &b).unwrap();
        assert_eq!(values(&r2), vec![q(1, 3), q(1, 9), q(1, 9), q(1, 3)]);

        let json = serde_json::to_string(&r1).unwrap();
        assert!(json.starts_with(r#"{"basis":[[0,1],[1,1],[1,2]],"character":{"gamma":"2/1","alpha":["2/1","1/2"]},"specialization":[{"point":[0,0],"value":"1/2"}"#));
        assert!(json.ends_with(r#""verified":true}"#));
        assert_eq!(serde_json::from_str::<TransitionReport>(&json).unwrap(), r1);
    }

    #[test]
    fn bases_give_character_equivalent_families() {
        let b1: BasisSimplex = "(0,1),(1,1),(1,2)".parse().unwrap();
        let b2: BasisSimplex = "(0,0),(1,0),(1,1)".parse().unwrap();
        for d in hexagon() {
            let f1 = specialized_family(&d, &match_transition(&d, &b1).unwrap()).unwrap();
            let f2 = specialized_family(&d, &match_transition(&d, &b2).unwrap()).unwrap();
            let c = solve_character_match(&f1, &f2).unwrap().expect("families differ by a rescaling");
            assert_eq!(apply_character(&f1, &c).unwrap(), f2);
        }
    }

    #[test]
    fn default_basis_is_deterministic_and_valid() {
        for d in hexagon() {
            let b = default_basis(d.polytope()).unwrap();
            assert_eq!(b.points()[0], v(0, 0));
            assert!(match_transition(&d, &b).unwrap().verified);
        }
        let thin = hull(&[v(0, 0), v(3, 1), v(1, 1)]).unwrap();
        assert!(default_basis(&thin).is_ok());
        let seg = hull(&[v(0, 0), v(2, 0)]).unwrap();
        assert!(matches!(default_basis(&seg), Err(Error::InvalidBasis(_))));
    }

    #[test]
    fn basis_avoids_vanishing_coefficients() {
        let segment = UnimodularSimplex::new(vec![v(1, 0)]).unwrap();
        let triangle = UnimodularSimplex::new(vec![v(0, 1), v(1, 3)]).unwrap();
        let p = hull(&[v(0, 0), v(1, 0), v(2, 3), v(1, 3), v(0, 1)]).unwrap();
        let d = MinkowskiDecomposition::new(p, v(0, 0), vec![segment, triangle]).unwrap();
        // n_(1,2) = 0
        let bad: BasisSimplex = "(1,3),(1,2),(2,3)".parse().unwrap();
        assert!(matches!(match_transition(&d, &bad), Err(Error::InvalidBasis(_))));
        let b = default_basis_for(&d).unwrap();
        assert!(!b.contains(&v(1, 2)));
        let r = match_transition(&d, &b).unwrap();
        assert!(r.specialization.contains(&(v(1, 2), BigRational::zero())));
    }

    #[test]
    fn inverse_of_unimodular_matrix() {
        let m = vec![vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)], vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)]];
        let inv = unimodular_inverse(&m);
        for i in 0..3 {
            for j in 0..3 {
                let e: BigInt = (0..3).map(|k| &m[i][k] * &inv[k][j]).sum();
                assert_eq!(e, BigInt::from((i == j) as i64));
            }
        }
    }
}
