use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::{ParamMonomial, ParametricCoefficient};
use crate::error::{Error, Result};
use crate::json::JsonInt;
use crate::lattice::{hull, IntVector, LatticePolytope};

/// Sparse Laurent polynomial in `z_1, .., z_dim` whose coefficients may
/// involve the declared parameter symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    dim: usize,
    params: Vec<String>,
    terms: BTreeMap<IntVector, ParametricCoefficient>,
}

impl LaurentPolynomial {
    pub fn zero(dim: usize) -> Self {
        LaurentPolynomial { dim, params: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(IntVector::zero(dim), BigRational::one())
    }

    pub fn monomial(exp: IntVector, coeff: BigRational) -> Self {
        let mut f = Self::zero(exp.dim());
        f.add_term(exp, ParametricCoefficient::constant(coeff));
        f
    }

    /// Parameter-free polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IntVector, BigRational)>,
    {
        let mut f = Self::zero(dim);
        for (e, c) in terms {
            check_len(&e, dim)?;
            f.add_term(e, ParametricCoefficient::constant(c));
        }
        Ok(f)
    }

    /// Polynomial with integer coefficients, convenient for fixtures.
    pub fn from_int_terms<const N: usize>(terms: &[([i64; N], i64)]) -> Self {
        let mut f = Self::zero(N);
        for (e, c) in terms {
            f.add_term(IntVector::from(*e), ParametricCoefficient::integer(*c));
        }
        f
    }

    /// Empty polynomial in a given parameter context.
    pub fn zero_with_params(dim: usize, params: Vec<String>) -> Self {
        LaurentPolynomial { dim, params, terms: BTreeMap::new() }
    }

    pub(crate) fn add_term(&mut self, exp: IntVector, c: ParametricCoefficient) {
        debug_assert_eq!(exp.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&exp) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(exp, merged);
        }
    }

    /// Adds `c * z^exp`, checking the exponent length.
    pub fn push_term(&mut self, exp: IntVector, c: ParametricCoefficient) -> Result<()> {
        check_len(&exp, self.dim)?;
        if let Some(i) = c.terms().filter_map(|(m, _)| m.max_index()).max() {
            if i >= self.params.len() {
                return Err(Error::ParameterMismatch);
            }
        }
        self.add_term(exp, c);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IntVector, &ParametricCoefficient)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &IntVector) -> Option<&ParametricCoefficient> {
        self.terms.get(exp)
    }

    /// Rational coefficient at `exp` (zero when absent); `None` if it is parametric.
    pub fn rational_coeff(&self, exp: &IntVector) -> Option<BigRational> {
        match self.terms.get(exp) {
            Some(c) => c.as_rational(),
            None => Some(BigRational::zero()),
        }
    }

    /// Exponents with nonzero coefficient, lexicographically sorted.
    pub fn support(&self) -> Vec<IntVector> {
        self.terms.keys().cloned().collect()
    }

    pub fn is_parameter_free(&self) -> bool {
        self.terms.values().all(|c| c.as_rational().is_some())
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        if self.params != other.params && !self.params.is_empty() && !other.params.is_empty() {
            return Err(Error::ParameterMismatch);
        }
        Ok(())
    }

    fn joint_params(&self, other: &Self) -> Vec<String> {
        if self.params.is_empty() { other.params.clone() } else { self.params.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = self.clone();
        out.params = self.joint_params(other);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            dim: self.dim,
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Exact product. A parameter-free operand is compatible with any parameter context.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let mut out = Self::zero_with_params(self.dim, self.joint_params(other));
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero_with_params(self.dim, self.params.clone());
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(k));
        }
        out
    }

    /// Multiplies by the monomial `z^shift`.
    pub fn shift(&self, shift: &IntVector) -> Result<Self> {
        check_len(shift, self.dim)?;
        Ok(LaurentPolynomial {
            dim: self.dim,
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        })
    }

    /// Embeds into one more variable placed first: `z^v ↦ z_0^k z^v`.
    pub fn with_leading_exponent(&self, k: i64) -> Self {
        let lead = IntVector::from([k]);
        LaurentPolynomial {
            dim: self.dim + 1,
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, c)| (lead.concat(e), c.clone())).collect(),
        }
    }

    /// Inverse of [`with_leading_exponent`](Self::with_leading_exponent) for `k = 0`:
    /// drops the first variable, which must not occur.
    pub fn drop_leading_variable(&self) -> Option<Self> {
        if self.dim == 0 || self.terms.keys().any(|e| !e.entries()[0].is_zero()) {
            return None;
        }
        Some(LaurentPolynomial {
            dim: self.dim - 1,
            params: self.params.clone(),
            terms: self.terms.iter().map(|(e, c)| (IntVector::new(e.entries()[1..].to_vec()), c.clone())).collect(),
        })
    }

    /// Value at a point of `(Q^*)^dim`; requires a parameter-free polynomial.
    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: point.len() });
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let c = c.as_rational().ok_or_else(|| Error::ParametricCoefficient(e.to_string()))?;
            let mut term = c;
            for (x, k) in point.iter().zip(e.entries()) {
                term *= rational_pow(x, k)?;
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Replaces the named parameters by rationals and drops them from the
    /// parameter list; the remaining parameters keep their relative order.
    pub fn specialize(&self, values: &[(String, BigRational)]) -> Result<Self> {
        let mut by_index = BTreeMap::new();
        for (name, q) in values {
            let i = self.params.iter().position(|p| p == name).ok_or(Error::ParameterMismatch)?;
            by_index.insert(i, q.clone());
        }
        let mut reindex = BTreeMap::new();
        let mut params = Vec::new();
        for (i, p) in self.params.iter().enumerate() {
            if !by_index.contains_key(&i) {
                reindex.insert(i, params.len());
                params.push(p.clone());
            }
        }
        let mut out = Self::zero_with_params(self.dim, params);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.specialize(&by_index, &reindex));
        }
        Ok(out)
    }

    /// General monomial change `z^v ↦ z^{A v}` for an integer matrix `A`
    /// given by rows (`A` is `rows.len() × dim`). Recomputes every term.
    pub fn substitute_monomials(&self, rows: &[IntVector]) -> Result<Self> {
        for r in rows {
            check_len(r, self.dim)?;
        }
        let mut out = Self::zero_with_params(rows.len(), self.params.clone());
        for (e, c) in &self.terms {
            let image = IntVector::new(rows.iter().map(|r| r.dot(e)).collect());
            out.add_term(image, c.clone());
        }
        Ok(out)
    }

    /// Formats with explicit variable names.
    pub fn display_with_vars(&self, vars: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, k)| !k.is_zero())
                .map(|(i, k)| {
                    let name = vars.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("z{}", i + 1));
                    if k.is_one() { name } else { format!("{name}^{k}") }
                })
                .collect();
            let (negative, coeff_text) = match c.as_rational() {
                Some(q) => (q.is_negative(), {
                    let a = q.abs();
                    if a.is_one() && !mono.is_empty() { String::new() } else { a.to_string() }
                }),
                None if c.terms().count() == 1 => {
                    let negative = c.terms().all(|(_, q)| q.is_negative());
                    let shown = if negative { c.neg() } else { c.clone() };
                    (negative, shown.display_with(&self.params))
                }
                None => (false, format!("({})", c.display_with(&self.params))),
            };
            if idx > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let mut parts = Vec::new();
            if !coeff_text.is_empty() {
                parts.push(coeff_text);
            }
            parts.extend(mono);
            out.push_str(&parts.join("*"));
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with_vars(&[]))
    }
}

fn check_len(e: &IntVector, dim: usize) -> Result<()> {
    if e.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: e.dim() });
    }
    Ok(())
}

/// `x^k` for an integer (possibly negative) exponent.
pub(crate) fn rational_pow(x: &BigRational, k: &BigInt) -> Result<BigRational> {
    let n = k.abs().to_usize().filter(|&n| n <= u32::MAX as usize).ok_or_else(|| Error::ExponentOverflow(k.to_string()))?;
    if k.is_negative() && x.is_zero() {
        return Err(Error::NonPositiveCoefficient("0".into()));
    }
    let p = num_traits::pow(x.clone(), n);
    Ok(if k.is_negative() { p.recip() } else { p })
}

/// Newton polytope of a nonzero polynomial in one or two variables.
pub fn newton_polytope(f: &LaurentPolynomial) -> Result<LatticePolytope> {
    if f.dim != 1 && f.dim != 2 {
        return Err(Error::UnsupportedDimension(f.dim));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    hull(&f.support())
}

/// Product of two polynomials; see [`LaurentPolynomial::mul`].
pub fn multiply(f: &LaurentPolynomial, g: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    f.mul(g)
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    num: JsonInt,
    den: JsonInt,
    param_exp: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: IntVector,
    coeff: CoeffJson,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    dim: usize,
    params: Vec<String>,
    terms: Vec<TermJson>,
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.params.len();
        let mut terms = Vec::new();
        for (e, c) in &self.terms {
            for (m, q) in c.terms() {
                terms.push(TermJson {
                    exp: e.clone(),
                    coeff: CoeffJson { num: JsonInt(q.numer().clone()), den: JsonInt(q.denom().clone()), param_exp: m.to_dense(n) },
                });
            }
        }
        PolyJson { dim: self.dim, params: self.params.clone(), terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PolyJson::deserialize(d)?;
        let mut f = LaurentPolynomial::zero_with_params(raw.dim, raw.params);
        for t in raw.terms {
            if t.coeff.den.0.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            if t.coeff.param_exp.len() != f.params.len() {
                return Err(D::Error::custom("param_exp length does not match params"));
            }
            let q = BigRational::new(t.coeff.num.0, t.coeff.den.0);
            let mut c = ParametricCoefficient::zero();
            c.add_term(ParamMonomial::from_dense(&t.coeff.param_exp), q);
            f.push_term(t.exp, c).map_err(D::Error::custom)?;
        }
        Ok(f)
    }
}
