//! Exact arithmetic: rationals, polynomials and series in `w`, rational
//! functions in `w` (with `u = w^2`) and integer characteristic polynomials.

mod matrix;
mod poly;
mod ratfunc;
mod series;

pub use matrix::{det_identity_minus_wt, IntMatrix};
pub use poly::Poly;
pub use ratfunc::RationalFunctionW;
pub use series::{reconstruct_poly_from_series, Series, DEFAULT_ORDER, RECONSTRUCTION_SLACK};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Integer rational shorthand.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
