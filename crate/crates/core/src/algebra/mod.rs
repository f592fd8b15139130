//! Sparse Laurent polynomials over exact rationals with optional parameter
//! symbols, monomial rescalings, and the character-matching solver.

mod character;
mod coeff;
pub mod intlin;
mod poly;

pub use character::{apply_character, solve_character_match, Character};
pub use coeff::{ParamMonomial, ParametricCoefficient};
pub use poly::{multiply, newton_polytope, LaurentPolynomial};
pub(crate) use poly::rational_pow;
