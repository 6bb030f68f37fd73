//! Brute-force closed-walk and closed-gallery counts.
//!
//! Everything here goes through [`QuotientGroup::transporter`] and plain
//! stepping in the apartment; no transfer systems are involved, so these
//! counts are independent oracles for the zeta engine.

use rayon::prelude::*;
use serde::Serialize;

use crate::quotient::{AffineMap, QuotientGroup};
use crate::roots::{HalfVector, LatticeVector, Rep};
use crate::{Error, Result};

fn fixes(g: &AffineMap, dirs: &[LatticeVector], images: &[LatticeVector]) -> bool {
    dirs.iter().zip(images).all(|(&d, &e)| g.linear.apply(d) == e)
}

/// N_n: pairs (x, λ) over Γ\Λ × wt′(π) with γ(x) = x + nλ for some γ ∈ Γ.
pub fn count_closed_walks(q: &QuotientGroup, rep: Rep, n: usize) -> Result<u64> {
    walk_count(q, rep, n, false)
}

/// Ñ_n: as N_n, additionally requiring the linear part of γ to fix λ.
pub fn count_geodesic_walks(q: &QuotientGroup, rep: Rep, n: usize) -> Result<u64> {
    walk_count(q, rep, n, true)
}

fn walk_count(q: &QuotientGroup, rep: Rep, n: usize, geodesic: bool) -> Result<u64> {
    assert!(n >= 1, "walk length must be positive");
    let weights = q.rs.weights(rep)?;
    let n = n as i64;
    let mut count = 0;
    for &x in &q.vertex_reps {
        for &l in weights {
            if let Some(g) = q.transporter(x, x + n * l) {
                if !geodesic || g.linear.apply(l) == l {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// The λ-line through `x ∈ ½Λ` misses Λ exactly when `x mod Λ ∉ {0, ½λ}`.
pub fn is_semi_start(x: HalfVector, l: LatticeVector) -> bool {
    let r = x.residue();
    r != (0, 0) && r != (l.x.rem_euclid(2), l.y.rem_euclid(2))
}

/// Closings after `j` half-steps of size ½λ, starting on non-rational λ-lines.
pub fn count_semi_closings(q: &QuotientGroup, rep: Rep, j: usize) -> Result<u64> {
    assert!(j >= 1, "half-step count must be positive");
    let weights = q.rs.weights(rep)?;
    let j = j as i64;
    let mut count = 0;
    for x in q.half_reps() {
        for &l in weights {
            if !is_semi_start(x, l) {
                continue;
            }
            let y = x + HalfVector::new(j * l.x, j * l.y);
            if let Some(g) = q.transporter_half(x, y) {
                if g.linear.apply(l) == l {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Closed paths of length `n` of `(v, λ, μ) ↦ (v + λ, μ, λ)` over Γ-orbits,
/// found by stepping in the apartment and comparing orbits at the end.
pub fn count_closed_galleries(q: &QuotientGroup, rep: Rep, n: usize) -> Result<u64> {
    assert!(n >= 1, "gallery length must be positive");
    let pairs = q.rs.gallery_pairs(rep)?;
    let mut count = 0;
    for &v in &q.vertex_reps {
        for &(l, m) in &pairs {
            let (mut x, mut a, mut b) = (v, l, m);
            for _ in 0..n {
                x = x + a;
                std::mem::swap(&mut a, &mut b);
            }
            if let Some(g) = q.transporter(v, x) {
                if fixes(&g, &[l, m], &[a, b]) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Which glide a [`lambda_set_size`] query refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Glide {
    Sigma,
    TSigma,
}

/// `|A_γ ∩ Λ(γ^m, v)|` for `γ = σ` or `tσ`, where `Λ(g, v) = {x ∈ Λ : g(x) = x + v}`
/// and `A_γ` is the half-open fundamental strip of ⟨γ⟩ bounded by its axis.
///
/// Counted by testing every lattice point of a window of `A_γ` containing
/// all the relevant lines.
pub fn lambda_set_size(q: &QuotientGroup, glide: Glide, m_odd: i64, v: LatticeVector) -> Result<usize> {
    let kd = q
        .klein_data()
        .ok_or_else(|| Error::InvalidGroup("lambda sets are defined for Klein-bottle groups".into()))?;
    if m_odd % 2 == 0 {
        return Err(Error::InvalidGroup(format!("exponent {m_odd} is not odd")));
    }
    if !q.rs.in_coroot_lattice(v) {
        return Err(Error::InvalidGroup(format!("{v} is not in the coroot lattice")));
    }
    let (_, d) = kd.alpha_beta_coords(v);
    if d == 0 {
        return Err(Error::InvalidGroup("v has zero beta-component".into()));
    }
    let g = match glide {
        Glide::Sigma => kd.sigma,
        Glide::TSigma => kd.t.compose(&kd.sigma),
    };
    let (_, b) = kd.alpha_beta_coords(g.translation);
    let gm = g.pow(m_odd);
    let k = kd.k;
    let y_top = b.div_euclid(2);
    let y_bottom = (b - d.abs()).div_euclid(2) - k - 2;
    let mut count = 0;
    for y in y_bottom..=y_top {
        for x in 0..k {
            let in_domain = 2 * y < b || (2 * y == b && 2 * x < k);
            if !in_domain {
                continue;
            }
            let p = x * kd.alpha + y * kd.beta;
            if gm.apply(p) == p + v {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The predicted value of [`lambda_set_size`]: `k_Γ` when `d > 0` and
/// `2(v,α)/(α,α) = m·k_Γ`, else 0.
pub fn lambda_set_expected(q: &QuotientGroup, m_odd: i64, v: LatticeVector) -> Option<usize> {
    let kd = q.klein_data()?;
    let (_, d) = kd.alpha_beta_coords(v);
    let lhs = 2 * q.rs.pairing_int(v, kd.alpha);
    let rhs = m_odd * kd.k * q.rs.pairing_int(kd.alpha, kd.alpha);
    Some(if d > 0 && lhs == rhs { kd.k as usize } else { 0 })
}

/// One row of counts, indexed from n = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountTable {
    pub rep: Rep,
    pub values: Vec<u64>,
}

/// All four count sequences for one representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepCounts {
    #[serde(rename = "N")]
    pub closed: Vec<u64>,
    #[serde(rename = "N_tilde")]
    pub geodesic: Vec<u64>,
    /// Indexed by half-steps j = 1..=2·max_n.
    pub semi: Vec<u64>,
    pub galleries: Vec<u64>,
}

fn table(
    q: &QuotientGroup,
    rep: Rep,
    len: usize,
    f: fn(&QuotientGroup, Rep, usize) -> Result<u64>,
) -> Result<CountTable> {
    let values = (1..=len)
        .into_par_iter()
        .map(|n| f(q, rep, n))
        .collect::<Result<Vec<u64>>>()?;
    Ok(CountTable { rep, values })
}

pub fn closed_walk_table(q: &QuotientGroup, rep: Rep, max_n: usize) -> Result<CountTable> {
    table(q, rep, max_n, count_closed_walks)
}

pub fn geodesic_walk_table(q: &QuotientGroup, rep: Rep, max_n: usize) -> Result<CountTable> {
    table(q, rep, max_n, count_geodesic_walks)
}

pub fn semi_table(q: &QuotientGroup, rep: Rep, max_j: usize) -> Result<CountTable> {
    table(q, rep, max_j, count_semi_closings)
}

pub fn gallery_table(q: &QuotientGroup, rep: Rep, max_n: usize) -> Result<CountTable> {
    table(q, rep, max_n, count_closed_galleries)
}

pub fn rep_counts(q: &QuotientGroup, rep: Rep, max_n: usize) -> Result<RepCounts> {
    Ok(RepCounts {
        closed: closed_walk_table(q, rep, max_n)?.values,
        geodesic: geodesic_walk_table(q, rep, max_n)?.values,
        semi: semi_table(q, rep, 2 * max_n)?.values,
        galleries: gallery_table(q, rep, max_n)?.values,
    })
}
