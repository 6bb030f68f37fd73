//! Square integer matrices and the division-free determinant `det(I - wT)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        let mut m = IntMatrix::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.entries[i * dim + j] = v.clone().into();
            }
        }
        m
    }

    /// The matrix with `T[i][perm[i]] = 1`.
    pub fn permutation(perm: &[usize]) -> Self {
        let mut m = IntMatrix::zeros(perm.len());
        for (i, &j) in perm.iter().enumerate() {
            m.set(i, j, BigInt::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.dim + j] = v;
    }

    /// Coefficients `[1, c_1, ..., c_n]` of `det(xI - T) = x^n + c_1 x^(n-1) + ... + c_n`
    /// by Berkowitz's algorithm. Integer-only; zero entries are skipped so
    /// sparse (e.g. permutation) matrices stay cheap.
    pub fn char_poly_coeffs(&self) -> Vec<BigInt> {
        let n = self.dim;
        let mut p = vec![BigInt::one(), -self.get(n - 1, n - 1).clone()];
        for k in (0..n - 1).rev() {
            // M = [[a, R], [C, S]] with S the trailing block already processed.
            let s = n - 1 - k;
            let a = self.get(k, k);
            let row: Vec<&BigInt> = (k + 1..n).map(|j| self.get(k, j)).collect();
            let mut col: Vec<BigInt> = (k + 1..n).map(|i| self.get(i, k).clone()).collect();

            // t = [1, -a, -R C, -R S C, ..., -R S^(s-1) C]
            let mut t = Vec::with_capacity(s + 2);
            t.push(BigInt::one());
            t.push(-a.clone());
            for step in 0..s {
                let mut dot = BigInt::zero();
                for (r, c) in row.iter().zip(&col) {
                    if !r.is_zero() && !c.is_zero() {
                        dot += *r * c;
                    }
                }
                t.push(-dot);
                if step + 1 < s {
                    col = self.trailing_mul(k + 1, &col);
                }
            }

            let mut next = vec![BigInt::zero(); s + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    let ti = &t[i - j];
                    if !ti.is_zero() && !pj.is_zero() {
                        *slot += ti * pj;
                    }
                }
            }
            p = next;
        }
        p
    }

    // S * v where S is the trailing principal block starting at `start`.
    fn trailing_mul(&self, start: usize, v: &[BigInt]) -> Vec<BigInt> {
        let n = self.dim;
        let mut out = vec![BigInt::zero(); n - start];
        for (oi, i) in (start..n).enumerate() {
            let mut acc = BigInt::zero();
            for (vj, j) in (start..n).enumerate() {
                let e = self.get(i, j);
                if !e.is_zero() && !v[vj].is_zero() {
                    acc += e * &v[vj];
                }
            }
            out[oi] = acc;
        }
        out
    }
}

/// `det(I - wT)` as an integer polynomial in `w` of degree at most `dim(T)`.
pub fn det_identity_minus_wt(t: &IntMatrix) -> Poly {
    Poly::from_big_ints(&t.char_poly_coeffs())
}
