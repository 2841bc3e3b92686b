//! Exact arithmetic over Q in one variable: polynomials, rational functions,
//! places of the projective line and factorization.

mod factor;
mod place;
mod poly;
mod ratfunc;

pub use factor::{irreducible_factors, squarefree_decomposition};
pub use place::Place;
pub use poly::Polynomial;
pub use ratfunc::RationalFunction;

/// Reduced fraction of arbitrary-precision integers with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
