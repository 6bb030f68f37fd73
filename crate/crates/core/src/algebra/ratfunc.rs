//! Rational functions in `w`, where `u = w^2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Poly, Rational, Series};
use crate::{Error, Result};

/// `numerator / denominator` in lowest terms with `denominator(0) = 1`.
///
/// Because the canonical form is unique, structural equality coincides with
/// equality of functions; [`RationalFunctionW::equals`] additionally checks the
/// cross-multiplied identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunctionW {
    num: Poly,
    den: Poly,
}

impl RationalFunctionW {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::BadDenominator);
        }
        if num.is_zero() {
            return Ok(RationalFunctionW {
                num: Poly::zero(),
                den: Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let c0 = den.constant_term();
        if c0.is_zero() {
            return Err(Error::BadDenominator);
        }
        let inv = c0.recip();
        Ok(RationalFunctionW {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn one() -> Self {
        RationalFunctionW {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunctionW::new(p, Poly::one()).expect("constant denominator")
    }

    /// `1 / p`; `p(0)` must be nonzero.
    pub fn reciprocal_of(p: Poly) -> Result<Self> {
        RationalFunctionW::new(Poly::one(), p)
    }

    /// `(1 - w^k)^(-1)`
    pub fn euler_factor(k: usize) -> Self {
        RationalFunctionW::reciprocal_of(Poly::one_minus_w_pow(k)).expect("unit constant term")
    }

    /// `(1 + w^k) / (1 - w^k)`
    pub fn plus_over_minus(k: usize) -> Self {
        RationalFunctionW::new(Poly::one_plus_w_pow(k), Poly::one_minus_w_pow(k)).expect("unit constant term")
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn value_at_zero(&self) -> Rational {
        self.num.constant_term()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunctionW::new(&self.num * &other.num, &self.den * &other.den).expect("product of valid denominators")
    }

    /// Division; fails if `other(0) = 0`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::BadDenominator);
        }
        RationalFunctionW::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn inv(&self) -> Result<Self> {
        RationalFunctionW::one().div(self)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunctionW {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Cross-multiplied equality `f.num * g.den == g.num * f.den`.
    pub fn equals(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Replace `w` by `w^k`.
    pub fn substitute(&self, k: usize) -> Self {
        RationalFunctionW {
            num: self.num.substitute(k),
            den: self.den.substitute(k),
        }
    }

    /// Replace `w` by `-w`.
    pub fn negate_variable(&self) -> Self {
        RationalFunctionW {
            num: self.num.negate_variable(),
            den: self.den.negate_variable(),
        }
    }

    /// Replace `u` by `-u`; only defined for functions of `u`.
    pub fn negate_u(&self) -> Result<Self> {
        Ok(RationalFunctionW {
            num: self.num.negate_u()?,
            den: self.den.negate_u()?,
        })
    }

    pub fn is_even_in_w(&self) -> bool {
        self.num.is_even_in_w() && self.den.is_even_in_w()
    }

    pub fn is_even_in_u(&self) -> bool {
        self.num.is_even_in_u() && self.den.is_even_in_u()
    }

    /// Taylor expansion through `w^order`.
    pub fn to_series(&self, order: usize) -> Result<Series> {
        let inv = Series::from_poly(&self.den, order).reciprocal()?;
        Ok(Series::from_poly(&self.num, order).mul(&inv))
    }

    /// Numerator and denominator scaled by a common positive integer so both
    /// have integer coefficients with no common content.
    pub fn integer_parts(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let lcm = self
            .num
            .coeffs()
            .iter()
            .chain(self.den.coeffs())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let to_int = |p: &Poly| -> Vec<BigInt> { p.coeffs().iter().map(|c| c.numer() * (&lcm / c.denom())).collect() };
        let (n, d) = (to_int(&self.num), to_int(&self.den));
        let content = n.iter().chain(&d).fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() || content.is_one() {
            return (n, d);
        }
        (
            n.into_iter().map(|c| c / &content).collect(),
            d.into_iter().map(|c| c / &content).collect(),
        )
    }

    /// Like [`Self::integer_parts`] but indexed by powers of `u` when the
    /// function is even in `w`. Returns the variable tag alongside.
    pub fn tagged_parts(&self) -> (Vec<BigInt>, Vec<BigInt>, &'static str) {
        let (n, d) = self.integer_parts();
        if self.is_even_in_w() {
            let halve = |v: Vec<BigInt>| v.into_iter().step_by(2).collect();
            (halve(n), halve(d), "u")
        } else {
            (n, d, "w")
        }
    }

    /// Human-readable form in `u` when even, else in `w`.
    pub fn pretty(&self) -> String {
        let (var, num, den) = if self.is_even_in_w() {
            let f = |p: &Poly| Poly::from_coeffs(p.to_u_coeffs().expect("even"));
            ("u", f(&self.num), f(&self.den))
        } else {
            ("w", self.num.clone(), self.den.clone())
        };
        if den.is_one() {
            num.display_in(var)
        } else {
            format!("({}) / ({})", num.display_in(var), den.display_in(var))
        }
    }
}

impl fmt::Display for RationalFunctionW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for RationalFunctionW {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunctionW(({}) / ({}))", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunctionW {
        RationalFunctionW::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn equality_after_cancellation() {
        let f = rf(&[1, 0, -1], &[1, -1]);
        let g = rf(&[1, 1], &[1]);
        assert!(f.equals(&g));
        assert_eq!(f, g);
    }

    #[test]
    fn substitution_examples() {
        let f = RationalFunctionW::euler_factor(2);
        assert_eq!(f.substitute(2), RationalFunctionW::euler_factor(4));
        let g = rf(&[1, 1], &[1, -1]);
        assert_eq!(g.negate_variable(), rf(&[1, -1], &[1, 1]));
    }

    #[test]
    fn canonical_denominator_constant_is_one() {
        let f = rf(&[2, 4], &[2, 0, 6]);
        assert_eq!(f.denominator().constant_term(), Rational::one());
        assert_eq!(f.numerator(), &p(&[1, 2]));
    }

    #[test]
    fn rejects_vanishing_denominator() {
        assert_eq!(RationalFunctionW::new(p(&[1]), p(&[0, 1])), Err(Error::BadDenominator));
        assert_eq!(
            RationalFunctionW::new(p(&[1]), Poly::zero()),
            Err(Error::BadDenominator)
        );
        // w / w is fine once cancelled
        assert!(RationalFunctionW::new(p(&[0, 1]), p(&[0, 1])).unwrap().is_one());
    }

    #[test]
    fn negate_u_on_even_functions() {
        let f = RationalFunctionW::euler_factor(2); // 1/(1-u)
        assert_eq!(f.negate_u().unwrap(), rf(&[1], &[1, 0, 1]));
        assert!(RationalFunctionW::euler_factor(3).negate_u().is_err());
    }

    #[test]
    fn tagged_parts_uses_u_when_even() {
        let f = RationalFunctionW::euler_factor(6);
        let (n, d, var) = f.tagged_parts();
        assert_eq!(var, "u");
        assert_eq!(n, vec![BigInt::from(1)]);
        assert_eq!(d, vec![1, 0, 0, -1].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(f.pretty(), "(1) / (1 - u^3)");
    }

    #[test]
    fn series_expansion() {
        let s = RationalFunctionW::euler_factor(1).to_series(4).unwrap();
        assert_eq!(s, Series::from_ints(&[1, 1, 1, 1, 1]));
    }
}
