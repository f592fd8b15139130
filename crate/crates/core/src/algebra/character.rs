//! Diagonal monomial rescalings ("characters") and the exact matching solver.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::intlin::solve_integer_system;
use super::poly::{rational_pow, LaurentPolynomial};
use crate::error::{Error, Result};
use crate::json::RationalString;
use crate::lattice::IntVector;

/// The rescaling `z_0 ↦ γ z_0, z_j ↦ α_j z_j`, acting on the coefficient at
/// exponent `v` by `μ(v) = γ ∏ α_j^{v_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    gamma: BigRational,
    alpha: Vec<BigRational>,
}

impl Character {
    pub fn new(gamma: BigRational, alpha: Vec<BigRational>) -> Result<Self> {
        if !gamma.is_positive() || alpha.iter().any(|a| !a.is_positive()) {
            return Err(Error::InvalidCharacter);
        }
        Ok(Character { gamma, alpha })
    }

    pub fn identity(dim: usize) -> Self {
        Character { gamma: BigRational::one(), alpha: vec![BigRational::one(); dim] }
    }

    pub fn gamma(&self) -> &BigRational {
        &self.gamma
    }

    pub fn alpha(&self) -> &[BigRational] {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_identity(&self) -> bool {
        self.gamma.is_one() && self.alpha.iter().all(One::is_one)
    }

    /// `μ(v) = γ ∏ α_j^{v_j}`.
    pub fn mu(&self, v: &IntVector) -> Result<BigRational> {
        if v.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: v.dim() });
        }
        let mut out = self.gamma.clone();
        for (a, k) in self.alpha.iter().zip(v.entries()) {
            out *= rational_pow(a, k)?;
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Character {
        Character { gamma: self.gamma.recip(), alpha: self.alpha.iter().map(|a| a.recip()).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct CharacterJson {
    gamma: RationalString,
    alpha: Vec<RationalString>,
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterJson {
            gamma: RationalString(self.gamma.clone()),
            alpha: self.alpha.iter().cloned().map(RationalString).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CharacterJson::deserialize(d)?;
        Character::new(raw.gamma.0, raw.alpha.into_iter().map(|a| a.0).collect()).map_err(serde::de::Error::custom)
    }
}

/// Scales every term `c_v z^v` of `f` to `μ(v) c_v z^v`.
pub fn apply_character(f: &LaurentPolynomial, c: &Character) -> Result<LaurentPolynomial> {
    if c.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: c.dim() });
    }
    let mut out = LaurentPolynomial::zero_with_params(f.dim(), f.params().to_vec());
    for (e, coeff) in f.terms() {
        out.add_term(e.clone(), coeff.scale(&c.mu(e)?));
    }
    Ok(out)
}

/// Refines a list of integers > 1 into pairwise coprime factors, none of which
/// is a perfect power, such that every input is a product of powers of them.
fn coprime_base(numbers: impl IntoIterator<Item = BigInt>) -> Vec<BigInt> {
    let mut base: BTreeSet<BigInt> = numbers.into_iter().filter(|n| n > &BigInt::one()).collect();
    'refine: loop {
        let items: Vec<BigInt> = base.iter().cloned().collect();
        for (i, a) in items.iter().enumerate() {
            for b in &items[i + 1..] {
                let g = a.gcd(b);
                if !g.is_one() {
                    base.remove(a);
                    base.remove(b);
                    for x in [a / &g, b / &g, g] {
                        if x > BigInt::one() {
                            base.insert(x);
                        }
                    }
                    continue 'refine;
                }
            }
        }
        break;
    }
    base.into_iter().map(perfect_power_root).collect::<BTreeSet<_>>().into_iter().collect()
}

/// The smallest `r` with `n = r^k` for some `k ≥ 1`.
fn perfect_power_root(mut n: BigInt) -> BigInt {
    'outer: loop {
        let max_k = n.bits() as u32;
        for k in (2..=max_k).rev() {
            let r = n.nth_root(k);
            if r > BigInt::one() && num_traits::pow(r.clone(), k as usize) == n {
                n = r;
                continue 'outer;
            }
        }
        return n;
    }
}

/// Multiplicity of `b` in `n` (`n` nonzero, `b > 1`).
fn valuation(n: &BigInt, b: &BigInt) -> BigInt {
    let mut n = n.abs();
    let mut k = BigInt::zero();
    loop {
        let (q, r) = n.div_rem(b);
        if !r.is_zero() {
            return k;
        }
        n = q;
        k += 1;
    }
}

fn positive_coefficients(f: &LaurentPolynomial) -> Result<Vec<(IntVector, BigRational)>> {
    f.terms()
        .map(|(e, c)| {
            let q = c.as_rational().ok_or_else(|| Error::ParametricCoefficient(e.to_string()))?;
            if !q.is_positive() {
                return Err(Error::NonPositiveCoefficient(e.to_string()));
            }
            Ok((e.clone(), q))
        })
        .collect()
}

/// Finds a character with `apply_character(f, c) = g`, or `None` if no
/// character over the positive rationals does it.
///
/// The ratios `r_v = g_v / f_v` must satisfy `r_v = γ ∏ α_j^{v_j}`. Over a
/// coprime base of all numerators and denominators, each base element `b`
/// gives the integer system `val_b(r_v) = c_0 + Σ_j v_j c_j`; these are
/// equivalent to the per-prime valuation systems because no base element
/// is a perfect power.
pub fn solve_character_match(f: &LaurentPolynomial, g: &LaurentPolynomial) -> Result<Option<Character>> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    let fc = positive_coefficients(f)?;
    let gc = positive_coefficients(g)?;
    if fc.len() != gc.len() || fc.iter().zip(&gc).any(|((a, _), (b, _))| a != b) {
        return Err(Error::SupportMismatch);
    }
    let dim = f.dim();
    let ratios: Vec<(IntVector, BigRational)> = fc.iter().zip(&gc).map(|((e, a), (_, b))| (e.clone(), b / a)).collect();
    let base = coprime_base(ratios.iter().flat_map(|(_, r)| [r.numer().clone(), r.denom().clone()]));

    let rows: Vec<Vec<BigInt>> = ratios
        .iter()
        .map(|(e, _)| std::iter::once(BigInt::one()).chain(e.entries().iter().cloned()).collect())
        .collect();
    let mut gamma = BigRational::one();
    let mut alpha = vec![BigRational::one(); dim];
    for b in &base {
        let rhs: Vec<BigInt> = ratios.iter().map(|(_, r)| valuation(r.numer(), b) - valuation(r.denom(), b)).collect();
        let Some(sol) = solve_integer_system(&rows, &rhs) else {
            return Ok(None);
        };
        let b = BigRational::from_integer(b.clone());
        gamma *= rational_pow(&b, &sol[0])?;
        for (a, k) in alpha.iter_mut().zip(&sol[1..]) {
            *a *= rational_pow(&b, k)?;
        }
    }
    let c = Character::new(gamma, alpha)?;
    // every ratio is a product of base powers, so this cannot fail
    debug_assert_eq!(apply_character(f, &c)?, *g);
    Ok(Some(c))
}
