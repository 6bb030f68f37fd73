//! Transfer systems and the zeta and L-functions built from them.
//!
//! Each transfer system is a permutation of finitely many Γ-orbits of states,
//! so its zeta function is the cycle product `∏ (1 - w^{s·len})^{-1}`, with
//! `s = 2` when one step has length `u` and `s = 1` for half-steps.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::algebra::{
    det_identity_minus_wt, reconstruct_poly_from_series, IntMatrix, Poly, Rational, RationalFunctionW, Series,
};
use crate::census::{closed_walk_table, is_semi_start};
use crate::quotient::QuotientGroup;
use crate::roots::{HalfVector, LatticeVector, Rep};
use crate::{Error, Result};

/// Default series order in `u`.
pub const DEFAULT_ORDER_U: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemKind {
    /// `(x, λ) ↦ (x + λ, λ)` on Γ\(Λ × wt′(π))
    Walks,
    /// `(x, λ) ↦ (x + ½λ, λ)` on points of ½Λ whose λ-line misses Λ
    Semi,
    /// `(v, λ, μ) ↦ (v + λ, μ, λ)` over gallery pairs
    Galleries,
}

impl SystemKind {
    /// Power of `w` contributed by one step.
    pub fn step_in_w(self) -> usize {
        match self {
            SystemKind::Semi => 1,
            SystemKind::Walks | SystemKind::Galleries => 2,
        }
    }
}

/// A point (doubled coordinates) with up to two directions; unused slots are zero.
pub type State = (HalfVector, [LatticeVector; 2]);

#[derive(Clone, Debug)]
pub struct TransferSystem {
    pub kind: SystemKind,
    pub rep: Rep,
    pub states: Vec<State>,
    next: Vec<usize>,
}

impl TransferSystem {
    pub fn build(q: &QuotientGroup, rep: Rep, kind: SystemKind) -> Result<Self> {
        let weights = q.rs.weights(rep)?;
        let zero = LatticeVector::ZERO;
        let mut starts: Vec<State> = Vec::new();
        match kind {
            SystemKind::Walks => {
                for &x in &q.vertex_reps {
                    for &l in weights {
                        starts.push((x.doubled(), [l, zero]));
                    }
                }
            }
            SystemKind::Semi => {
                for x in q.half_reps() {
                    for &l in weights {
                        if is_semi_start(x, l) {
                            starts.push((x, [l, zero]));
                        }
                    }
                }
            }
            SystemKind::Galleries => {
                for &x in &q.vertex_reps {
                    for (l, m) in q.rs.gallery_pairs(rep)? {
                        starts.push((x.doubled(), [l, m]));
                    }
                }
            }
        }
        let canon = |s: State| q.canonical_state(s.0, s.1);
        let states: Vec<State> = starts
            .into_iter()
            .map(canon)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<State, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let step = |(x, [l, m]): State| -> State {
            match kind {
                SystemKind::Walks => (x.plus(l), [l, m]),
                SystemKind::Semi => (x + HalfVector::half_of(l), [l, m]),
                SystemKind::Galleries => (x.plus(l), [m, l]),
            }
        };
        let mut next = Vec::with_capacity(states.len());
        for &s in &states {
            let t = canon(step(s));
            let j = *index
                .get(&t)
                .ok_or_else(|| Error::Invariant(format!("{kind:?} step leaves the state set at {:?}", s)))?;
            next.push(j);
        }
        let mut hit = vec![false; next.len()];
        for &j in &next {
            if std::mem::replace(&mut hit[j], true) {
                return Err(Error::Invariant(format!("{kind:?} transfer map is not a bijection")));
            }
        }
        Ok(TransferSystem {
            kind,
            rep,
            states,
            next,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn successor(&self, i: usize) -> usize {
        self.next[i]
    }

    pub fn permutation(&self) -> &[usize] {
        &self.next
    }

    /// Every state has exactly one predecessor.
    pub fn is_bijective(&self) -> bool {
        let mut indeg = vec![0u32; self.next.len()];
        for &j in &self.next {
            indeg[j] += 1;
        }
        indeg.iter().all(|&d| d == 1)
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = vec![false; self.next.len()];
        let mut out = Vec::new();
        for start in 0..self.next.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.next[i];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// `∏ (1 - w^{s·len})` over cycles.
    pub fn inverse_zeta_poly(&self) -> Poly {
        let mut by_len: BTreeMap<usize, u32> = BTreeMap::new();
        for l in self.cycle_lengths() {
            *by_len.entry(l).or_default() += 1;
        }
        let s = self.kind.step_in_w();
        by_len
            .into_iter()
            .fold(Poly::one(), |acc, (l, c)| &acc * &Poly::one_minus_w_pow(s * l).pow(c))
    }

    pub fn zeta(&self) -> RationalFunctionW {
        RationalFunctionW::reciprocal_of(self.inverse_zeta_poly()).expect("unit constant term")
    }

    /// `det(I - xT)` with `x = w^s`, from the explicit permutation matrix.
    pub fn matrix_determinant(&self) -> Poly {
        if self.next.is_empty() {
            return Poly::one();
        }
        det_identity_minus_wt(&IntMatrix::permutation(&self.next)).substitute(self.kind.step_in_w())
    }

    /// Number of fixed points of the `n`-th power of the transfer map.
    pub fn trace_of_power(&self, n: usize) -> u64 {
        (0..self.next.len())
            .filter(|&i| {
                let mut j = i;
                for _ in 0..n {
                    j = self.next[j];
                }
                j == i
            })
            .count() as u64
    }
}

pub fn zeta_walks(q: &QuotientGroup, rep: Rep) -> Result<RationalFunctionW> {
    Ok(TransferSystem::build(q, rep, SystemKind::Walks)?.zeta())
}

pub fn zeta_semi(q: &QuotientGroup, rep: Rep) -> Result<RationalFunctionW> {
    Ok(TransferSystem::build(q, rep, SystemKind::Semi)?.zeta())
}

pub fn zeta_galleries(q: &QuotientGroup, rep: Rep) -> Result<RationalFunctionW> {
    Ok(TransferSystem::build(q, rep, SystemKind::Galleries)?.zeta())
}

/// Series order in `u` needed to certify the L-polynomial of `rep`.
pub fn required_order(q: &QuotientGroup, rep: Rep) -> Result<usize> {
    Ok(2 * q.size() * q.rs.weights(rep)?.len() + crate::algebra::RECONSTRUCTION_SLACK)
}

/// Largest [`required_order`] over both representations.
pub fn required_order_all(q: &QuotientGroup) -> Result<usize> {
    q.rs.kind
        .reps()
        .iter()
        .map(|&r| required_order(q, r))
        .try_fold(0, |acc, r| r.map(|r| acc.max(r)))
}

/// Pick the working order: the requested one if sufficient, else an error;
/// without a request, the larger of the default and the requirement.
pub fn resolve_order(q: &QuotientGroup, requested: Option<usize>) -> Result<usize> {
    let required = required_order_all(q)?;
    match requested {
        None => Ok(required.max(DEFAULT_ORDER_U)),
        Some(k) if k < required => Err(Error::InsufficientOrder { required, available: k }),
        Some(k) => Ok(k),
    }
}

/// The L-function, via `(1-u)^{εN} L = 1/P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LFunction {
    /// P as a polynomial in `w` (even).
    pub p: Poly,
    /// `(1-u)^{-εN} / P`
    pub l: RationalFunctionW,
    /// `N_1, ..., N_order`
    pub closed_counts: Vec<u64>,
    pub order: usize,
}

/// Reconstruct P from `exp(Σ N_n uⁿ/n)` computed to `order` in `u`.
pub fn l_function(q: &QuotientGroup, rep: Rep, order: usize) -> Result<LFunction> {
    let required = required_order(q, rep)?;
    if order < required {
        return Err(Error::InsufficientOrder {
            required,
            available: order,
        });
    }
    let counts = closed_walk_table(q, rep, order)?.values;
    let mut log = vec![Rational::from_integer(0.into())];
    log.extend(
        counts
            .iter()
            .enumerate()
            .map(|(i, &c)| Rational::new(BigInt::from(c), BigInt::from(i + 1))),
    );
    let s = Series::from_coeffs(log).exp()?;
    let bound = q.size() * q.rs.weights(rep)?.len();
    let p_u = reconstruct_poly_from_series(&s, bound).map_err(|e| match e {
        Error::NotPolynomial { exponent, .. } => Error::Invariant(format!(
            "exp of the closed-walk series for {rep} is not 1/P with deg P <= {bound} (u^{exponent})"
        )),
        other => other,
    })?;
    if !p_u.has_integer_coeffs() {
        return Err(Error::Invariant(format!(
            "L-polynomial for {rep} has non-integer coefficients"
        )));
    }
    let p = p_u.substitute(2);
    let eps = q.rs.repr(rep)?.epsilon as i32;
    let trivial = RationalFunctionW::euler_factor(2).pow(eps * q.size() as i32)?;
    let l = trivial.mul(&RationalFunctionW::reciprocal_of(p.clone())?);
    Ok(LFunction {
        p,
        l,
        closed_counts: counts,
        order,
    })
}

fn check_torus(q: &QuotientGroup) -> Result<()> {
    if q.is_klein() {
        return Err(Error::InvalidGroup("closed form needs a torus".into()));
    }
    Ok(())
}

/// Order of λ in Λ/Γ.
pub fn weight_degree(q: &QuotientGroup, l: LatticeVector) -> usize {
    (1..).find(|&d| q.in_gamma0(d as i64 * l)).expect("Λ/Γ is finite")
}

/// `∏_λ (1 - u^{deg λ})^{-N/deg λ}` for a torus.
pub fn torus_closed_form(q: &QuotientGroup, rep: Rep) -> Result<RationalFunctionW> {
    check_torus(q)?;
    let n = q.size();
    let mut den = Poly::one();
    for &l in q.rs.weights(rep)? {
        let d = weight_degree(q, l);
        if !n.is_multiple_of(d) {
            return Err(Error::Invariant(format!("deg {l} = {d} does not divide N = {n}")));
        }
        den = &den * &Poly::one_minus_w_pow(2 * d).pow((n / d) as u32);
    }
    RationalFunctionW::reciprocal_of(den)
}

/// `∏_λ det(I - u·R(λ))`, R the regular representation of Λ/Γ, for a torus:
/// the L-polynomial P by characters, computed with determinants.
pub fn torus_character_product(q: &QuotientGroup, rep: Rep) -> Result<Poly> {
    check_torus(q)?;
    let index: HashMap<LatticeVector, usize> = q.vertex_reps.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut p = Poly::one();
    for &l in q.rs.weights(rep)? {
        let perm: Vec<usize> = q
            .vertex_reps
            .iter()
            .map(|&x| index[&q.canonical_vertex(x + l)])
            .collect();
        p = &p * &det_identity_minus_wt(&IntMatrix::permutation(&perm));
    }
    Ok(p.substitute(2))
}

/// `((1 + u^{k/n}) / (1 - u^{k/n}))^{n δ}`; 1 for tori.
pub fn correction_factor(q: &QuotientGroup, rep: Rep) -> Result<RationalFunctionW> {
    let Some(kd) = q.klein_data() else {
        return Ok(RationalFunctionW::one());
    };
    if kd.k % kd.n != 0 {
        return Err(Error::Invariant(format!(
            "k = {} is not divisible by n = {}",
            kd.k, kd.n
        )));
    }
    let e = (kd.n as u32 * q.delta(rep)) as i32;
    RationalFunctionW::plus_over_minus((2 * kd.k / kd.n) as usize).pow(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepZeta {
    pub rep: Rep,
    pub z: RationalFunctionW,
    pub z_semi: RationalFunctionW,
    pub z2: RationalFunctionW,
    pub l: LFunction,
    pub correction: RationalFunctionW,
}

/// All zeta-type invariants of a quotient, for both representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaBundle {
    pub order: usize,
    pub reps: Vec<RepZeta>,
}

impl ZetaBundle {
    pub fn compute(q: &QuotientGroup, order: usize) -> Result<Self> {
        let mut reps = Vec::new();
        for rep in q.rs.kind.reps() {
            reps.push(RepZeta {
                rep,
                z: zeta_walks(q, rep)?,
                z_semi: zeta_semi(q, rep)?,
                z2: zeta_galleries(q, rep)?,
                l: l_function(q, rep, order)?,
                correction: correction_factor(q, rep)?,
            });
        }
        Ok(ZetaBundle { order, reps })
    }

    pub fn get(&self, rep: Rep) -> Option<&RepZeta> {
        self.reps.iter().find(|r| r.rep == rep)
    }

    /// `{rep: {num, den, var, Z_semi, Z2, L, P, correction, N}}`; the top-level
    /// `num/den/var` describe Z.
    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        for r in &self.reps {
            let mut entry = match ratfunc_json(&r.z) {
                Value::Object(m) => m,
                _ => unreachable!(),
            };
            entry.insert("Z_semi".into(), ratfunc_json(&r.z_semi));
            entry.insert("Z2".into(), ratfunc_json(&r.z2));
            entry.insert("L".into(), ratfunc_json(&r.l.l));
            entry.insert("P".into(), poly_json(&r.l.p));
            entry.insert("correction".into(), ratfunc_json(&r.correction));
            entry.insert("N".into(), json!(r.l.closed_counts));
            out.insert(r.rep.to_string(), Value::Object(entry));
        }
        Value::Object(out)
    }
}

pub fn big_json(b: &BigInt) -> Value {
    Value::Number(serde_json::Number::from_str(&b.to_string()).expect("integer literal"))
}

/// `{"num": [...], "den": [...], "var": "u" | "w"}` with integer coefficients.
pub fn ratfunc_json(f: &RationalFunctionW) -> Value {
    let (n, d, var) = f.tagged_parts();
    json!({
        "num": n.iter().map(big_json).collect::<Vec<_>>(),
        "den": d.iter().map(big_json).collect::<Vec<_>>(),
        "var": var,
    })
}

/// Integer polynomial as `{"coeffs": [...], "var": ...}`, in `u` when even.
pub fn poly_json(p: &Poly) -> Value {
    let f = RationalFunctionW::from_poly(p.clone());
    let (n, _, var) = f.tagged_parts();
    json!({
        "coeffs": n.iter().map(big_json).collect::<Vec<_>>(),
        "var": var,
    })
}
