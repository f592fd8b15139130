use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A monomial in the parameter symbols, stored sparsely as
/// `parameter index -> positive exponent`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamMonomial(BTreeMap<usize, u32>);

impl ParamMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(index: usize) -> Self {
        ParamMonomial(BTreeMap::from([(index, 1)]))
    }

    pub fn from_dense(exponents: &[u32]) -> Self {
        ParamMonomial(exponents.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect())
    }

    pub fn to_dense(&self, nparams: usize) -> Vec<u32> {
        let mut out = vec![0; nparams];
        for (&i, &e) in &self.0 {
            out[i] = e;
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&i, &e)| (i, e))
    }

    fn mul(&self, other: &ParamMonomial) -> ParamMonomial {
        let mut out = self.0.clone();
        for (&i, &e) in &other.0 {
            *out.entry(i).or_insert(0) += e;
        }
        ParamMonomial(out)
    }
}

/// A polynomial in the parameter symbols with exact rational coefficients.
/// Pure rationals are the case where only the empty monomial appears.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ParametricCoefficient {
    terms: BTreeMap<ParamMonomial, BigRational>,
}

impl ParametricCoefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(q: BigRational) -> Self {
        let mut c = Self::zero();
        c.add_term(ParamMonomial::one(), q);
        c
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    /// The bare parameter symbol with index `index`.
    pub fn param(index: usize) -> Self {
        let mut c = Self::zero();
        c.add_term(ParamMonomial::var(index), BigRational::one());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(q)` when the coefficient is parameter-free.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&ParamMonomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, m: ParamMonomial, q: BigRational) {
        if q.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, q) in &other.terms {
            out.add_term(m.clone(), q.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ParametricCoefficient { terms: self.terms.iter().map(|(m, q)| (m.clone(), -q)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, q1) in &self.terms {
            for (m2, q2) in &other.terms {
                out.add_term(m1.mul(m2), q1 * q2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let mut out = Self::zero();
        for (m, q) in &self.terms {
            out.add_term(m.clone(), q * k);
        }
        out
    }

    /// Substitutes `values[i]` for every parameter `i` that has one and
    /// renames the survivors through `reindex`.
    pub(crate) fn specialize(&self, values: &BTreeMap<usize, BigRational>, reindex: &BTreeMap<usize, usize>) -> Self {
        let mut out = Self::zero();
        for (m, q) in &self.terms {
            let mut factor = q.clone();
            let mut rest = BTreeMap::new();
            for (i, e) in m.iter() {
                match values.get(&i) {
                    Some(v) => factor *= num_traits::pow(v.clone(), e as usize),
                    None => {
                        rest.insert(reindex[&i], e);
                    }
                }
            }
            out.add_term(ParamMonomial(rest), factor);
        }
        out
    }

    /// Formats with the given parameter names, e.g. `1/2*q(0,0)^2 + 3`.
    pub fn display_with(&self, params: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, q)) in self.terms.iter().enumerate() {
            let negative = q.is_negative();
            if idx > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let q = q.abs();
            let mut factors = Vec::new();
            if !q.is_one() || m.is_one() {
                factors.push(q.to_string());
            }
            for (i, e) in m.iter() {
                let name = params.get(i).cloned().unwrap_or_else(|| format!("t{i}"));
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for ParametricCoefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}
