//! Truncated formal power series with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Poly, Rational};
use crate::{Error, Result};

/// Extra coefficients required beyond a degree bound before a reciprocal is
/// accepted as a polynomial.
pub const RECONSTRUCTION_SLACK: usize = 8;

/// Default truncation order in `w`.
pub const DEFAULT_ORDER: usize = 48;

/// A power series known through `w^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Build from coefficients of `w^0 ..= w^order`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        Series { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Series::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Series {
            coeffs: (0..=order).map(|i| p.coeff(i)).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let k = self.order().min(other.order());
        Series {
            coeffs: (0..=k).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let k = self.order().min(other.order());
        Series {
            coeffs: (0..=k).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let k = self.order().min(other.order());
        let mut out = vec![Rational::zero(); k + 1];
        for (i, a) in self.coeffs.iter().take(k + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(k + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::Invariant(
                "series with zero constant term has no reciprocal".into(),
            ));
        }
        if c0.abs().is_one() && self.coeffs.iter().all(|c| c.is_integer()) {
            return Ok(self.reciprocal_integral());
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc += a * &out[n - k];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(Series { coeffs: out })
    }

    // Unit constant term and integer coefficients: stay in BigInt throughout.
    fn reciprocal_integral(&self) -> Series {
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.to_integer()).collect();
        let sign = ints[0].clone();
        let mut out: Vec<BigInt> = Vec::with_capacity(ints.len());
        out.push(sign.clone());
        for n in 1..ints.len() {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                if !ints[k].is_zero() {
                    acc += &ints[k] * &out[n - k];
                }
            }
            out.push(-(acc * &sign));
        }
        Series {
            coeffs: out.into_iter().map(Rational::from_integer).collect(),
        }
    }

    /// Formal exponential; the constant term must vanish.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ExpConstantTerm(self.coeffs[0].to_string()));
        }
        // n s_n = sum_k (k f_k) s_{n-k}
        let weighted: Vec<Rational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        if weighted.iter().all(|c| c.is_integer()) {
            if let Some(s) = Self::exp_integral(&weighted) {
                return Ok(s);
            }
        }
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(Rational::one());
        for n in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !weighted[k].is_zero() {
                    acc += &weighted[k] * &out[n - k];
                }
            }
            out.push(acc / Rational::from_integer(n.into()));
        }
        Ok(Series { coeffs: out })
    }

    // Integer k·f_k: stay in BigInt while every n divides its partial sum
    // (always the case for exp of a counting series); None otherwise.
    fn exp_integral(weighted: &[Rational]) -> Option<Series> {
        let g: Vec<BigInt> = weighted.iter().map(|c| c.to_integer()).collect();
        let mut out: Vec<BigInt> = Vec::with_capacity(g.len());
        out.push(BigInt::one());
        for n in 1..g.len() {
            let mut acc = BigInt::zero();
            for k in 1..=n {
                if !g[k].is_zero() {
                    acc += &g[k] * &out[n - k];
                }
            }
            let n_big = BigInt::from(n);
            if !(&acc % &n_big).is_zero() {
                return None;
            }
            out.push(acc / n_big);
        }
        Some(Series {
            coeffs: out.into_iter().map(Rational::from_integer).collect(),
        })
    }

    /// Formal logarithm; the constant term must be 1.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogConstantTerm(self.coeffs[0].to_string()));
        }
        // g_n = n log_n satisfies n s_n = sum_{k=1}^{n} g_k s_{n-k}
        let mut g: Vec<Rational> = vec![Rational::zero(); self.coeffs.len()];
        for n in 1..self.coeffs.len() {
            let mut acc = &self.coeffs[n] * Rational::from_integer(n.into());
            for (k, gk) in g.iter().enumerate().take(n).skip(1) {
                if !gk.is_zero() && !self.coeffs[n - k].is_zero() {
                    acc -= gk * &self.coeffs[n - k];
                }
            }
            g[n] = acc;
        }
        Ok(Series {
            coeffs: g
                .into_iter()
                .enumerate()
                .map(|(n, c)| {
                    if n == 0 {
                        c
                    } else {
                        c / Rational::from_integer(n.into())
                    }
                })
                .collect(),
        })
    }

    /// Keep every `k`-th coefficient: the series in `v = w^k`, if no other powers occur.
    pub fn decimate(&self, k: usize) -> Result<Series> {
        assert!(k > 0);
        if self.coeffs.iter().enumerate().any(|(i, c)| i % k != 0 && !c.is_zero()) {
            return Err(Error::NotEvenInW { op: "decimate" });
        }
        Ok(Series {
            coeffs: self.coeffs.iter().step_by(k).cloned().collect(),
        })
    }

    /// Lowest exponent at which two series differ, within the common order.
    pub fn first_mismatch(&self, other: &Series) -> Option<usize> {
        let k = self.order().min(other.order());
        (0..=k).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = Poly::from_coeffs(self.coeffs.clone());
        write!(f, "Series({} + O(w^{}))", p, self.order() + 1)
    }
}

/// Recover `P` of degree at most `degree_bound` with `P * s = 1`, checking that
/// every coefficient of `1/s` above the bound vanishes through `s.order()`.
pub fn reconstruct_poly_from_series(s: &Series, degree_bound: usize) -> Result<Poly> {
    if !s.coeff(0).is_one() {
        return Err(Error::Invariant(format!(
            "reconstruction needs constant term 1, found {}",
            s.coeff(0)
        )));
    }
    let required = degree_bound + RECONSTRUCTION_SLACK;
    if s.order() < required {
        return Err(Error::InsufficientOrder {
            required,
            available: s.order(),
        });
    }
    let r = s.reciprocal()?;
    if let Some(exponent) = (degree_bound + 1..=r.order()).find(|&i| !r.coeff(i).is_zero()) {
        return Err(Error::NotPolynomial {
            bound: degree_bound,
            exponent,
        });
    }
    Ok(Poly::from_coeffs(r.coeffs[..=degree_bound].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    // (1 - w^3)^(-3) = sum_j C(j+2, 2) w^(3j)
    fn inv_cube_binomial(order: usize) -> Series {
        let mut c = vec![Rational::zero(); order + 1];
        for j in 0..=order / 3 {
            c[3 * j] = Rational::from_integer((((j + 1) * (j + 2)) / 2).into());
        }
        Series::from_coeffs(c)
    }

    // 3 * sum_{k>=1} w^(3k) / k
    fn three_log_series(order: usize) -> Series {
        let mut c = vec![Rational::zero(); order + 1];
        for k in 1..=order / 3 {
            c[3 * k] = q(3, k as i64);
        }
        Series::from_coeffs(c)
    }

    #[test]
    fn exp_examples() {
        assert_eq!(Series::zero(5).exp().unwrap(), Series::one(5));
        let e = Series::from_ints(&[0, 1, 0, 0, 0]).exp().unwrap();
        assert_eq!(e.coeffs(), &[q(1, 1), q(1, 1), q(1, 2), q(1, 6), q(1, 24)]);
        let s = three_log_series(9).exp().unwrap();
        assert_eq!(s, Series::from_ints(&[1, 0, 0, 3, 0, 0, 6, 0, 0, 10]));
        assert_eq!(s, inv_cube_binomial(9));
    }

    #[test]
    fn exp_rejects_constant_term() {
        assert!(matches!(
            Series::from_ints(&[1, 1]).exp(),
            Err(Error::ExpConstantTerm(_))
        ));
    }

    #[test]
    fn log_examples() {
        assert_eq!(Series::one(4).log().unwrap(), Series::zero(4));
        let l = Series::from_ints(&[1, -1, 0, 0]).log().unwrap();
        assert_eq!(l.coeffs(), &[q(0, 1), q(-1, 1), q(-1, 2), q(-1, 3)]);
        assert_eq!(inv_cube_binomial(9).log().unwrap(), three_log_series(9));
        assert!(matches!(
            Series::from_ints(&[2, 1]).log(),
            Err(Error::LogConstantTerm(_))
        ));
    }

    #[test]
    fn reconstruction_examples() {
        let geom = Series::from_ints(&[1; 12]);
        assert_eq!(
            reconstruct_poly_from_series(&geom, 1).unwrap(),
            Poly::from_ints(&[1, -1])
        );

        let p = reconstruct_poly_from_series(&inv_cube_binomial(20), 9).unwrap();
        assert_eq!(p, Poly::one_minus_w_pow(3).pow(3));

        let e = Series::from_ints(&[0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0])
            .exp()
            .unwrap();
        assert!(matches!(
            reconstruct_poly_from_series(&e, 5),
            Err(Error::NotPolynomial { bound: 5, exponent: 6 })
        ));
    }

    #[test]
    fn reconstruction_demands_slack() {
        let geom = Series::from_ints(&[1; 6]);
        assert_eq!(
            reconstruct_poly_from_series(&geom, 1),
            Err(Error::InsufficientOrder {
                required: 9,
                available: 5
            })
        );
    }

    #[test]
    fn truncation_uses_min_order() {
        let a = Series::from_ints(&[1, 1, 1, 1]);
        let b = Series::from_ints(&[1, 2]);
        assert_eq!(a.mul(&b).order(), 1);
        assert_eq!(a.add(&b), Series::from_ints(&[2, 3]));
    }
}
