//! Torsion-free quotients Γ\A: simplicial tori and Klein bottles.
//!
//! A Klein-bottle group is generated by a glide reflection
//! `σ(x) = σ₀(x) + aα + bβ` (σ₀ the reflection fixing α) and a translation `t`
//! orthogonal to α, subject to `tσ = σt⁻¹`. Its translation subgroup Γ₀ is
//! spanned by `t` and `σ² = τ(kα)`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::roots::{HalfVector, LatticeVector, Rep, RootKind, RootSystem, WeylElement};
use crate::{Error, Result};

/// `x ↦ linear(x) + translation`. Group elements always have integral translation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    pub linear: WeylElement,
    pub translation: LatticeVector,
}

impl AffineMap {
    pub const IDENTITY: AffineMap = AffineMap {
        linear: WeylElement::IDENTITY,
        translation: LatticeVector::ZERO,
    };

    pub fn new(linear: WeylElement, translation: LatticeVector) -> Self {
        AffineMap { linear, translation }
    }

    pub fn translation_by(v: LatticeVector) -> Self {
        AffineMap::new(WeylElement::IDENTITY, v)
    }

    pub fn apply(&self, x: LatticeVector) -> LatticeVector {
        self.linear.apply(x) + self.translation
    }

    pub fn apply_half(&self, x: HalfVector) -> HalfVector {
        self.linear.apply_half(x).plus(self.translation)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap::new(
            self.linear.compose(&other.linear),
            self.linear.apply(other.translation) + self.translation,
        )
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.linear.inverse();
        AffineMap::new(inv, -inv.apply(self.translation))
    }

    pub fn pow(&self, e: i64) -> AffineMap {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut out = AffineMap::IDENTITY;
        for _ in 0..e.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        *self == AffineMap::IDENTITY
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> {:?}x + {}", self.linear, self.translation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Torus {
        v1: LatticeVector,
        v2: LatticeVector,
    },
    Klein {
        alpha: LatticeVector,
        beta: LatticeVector,
        a: i64,
        b: i64,
        m: i64,
    },
}

/// Derived data of a Klein-bottle group, after sign normalization (`k > 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleinData {
    pub alpha: LatticeVector,
    pub beta: LatticeVector,
    pub a: i64,
    pub b: i64,
    pub m: i64,
    pub k: i64,
    pub n: i64,
    pub sigma: AffineMap,
    pub t: AffineMap,
    /// Primitive coroot-lattice vector orthogonal to α with positive β-coefficient.
    pub p: LatticeVector,
    pub type_rep: Rep,
    pub m_axes: u32,
}

impl KleinData {
    pub fn t_vec(&self) -> LatticeVector {
        self.t.translation
    }

    /// Coordinates of `v` in the basis (α, β), which is a basis of Λ.
    pub fn alpha_beta_coords(&self, v: LatticeVector) -> (i64, i64) {
        let det = self.alpha.cross(self.beta);
        (v.cross(self.beta) / det, self.alpha.cross(v) / det)
    }
}

/// Hermite basis `(a, b), (0, c)` of a full-rank sublattice of ℤ², `a, c > 0`, `0 ≤ b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hermite {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Hermite {
    pub fn new(v1: LatticeVector, v2: LatticeVector) -> Option<Self> {
        if v1.cross(v2) == 0 {
            return None;
        }
        let (mut u, mut v) = (v1, v2);
        while v.x != 0 {
            let q = Integer::div_floor(&u.x, &v.x);
            u = u - q * v;
            std::mem::swap(&mut u, &mut v);
        }
        if u.x < 0 {
            u = -u;
        }
        let c = v.y.abs();
        Some(Hermite {
            a: u.x,
            b: u.y.rem_euclid(c),
            c,
        })
    }

    pub fn index(&self) -> i64 {
        self.a * self.c
    }

    /// Representative of `x` modulo `scale`·L in `[0, scale·a) × [0, scale·c)`.
    pub fn reduce(&self, x: LatticeVector, scale: i64) -> LatticeVector {
        let (a, b, c) = (scale * self.a, scale * self.b, scale * self.c);
        let q = Integer::div_floor(&x.x, &a);
        LatticeVector::new(x.x - q * a, (x.y - q * b).rem_euclid(c))
    }

    pub fn contains(&self, v: LatticeVector) -> bool {
        self.reduce(v, 1).is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub rs: RootSystem,
    /// The input description, before sign normalization.
    pub spec: GroupSpec,
    pub klein: Option<KleinData>,
    pub gamma0_basis: [LatticeVector; 2],
    pub lattice: Hermite,
    /// |Γ\Λ|
    pub n_vertices: usize,
    pub vertex_reps: Vec<LatticeVector>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidGroup(msg.into())
}

impl QuotientGroup {
    pub fn build(rs: &RootSystem, spec: GroupSpec) -> Result<Self> {
        let (klein, basis) = match spec {
            GroupSpec::Torus { v1, v2 } => {
                for (name, v) in [("v1", v1), ("v2", v2)] {
                    if !rs.in_coroot_lattice(v) {
                        return Err(invalid(format!("{name} = {v} is not in the coroot lattice")));
                    }
                }
                if v1.cross(v2) == 0 {
                    return Err(invalid("v1 and v2 are linearly dependent"));
                }
                (None, [v1, v2])
            }
            GroupSpec::Klein { alpha, beta, a, b, m } => {
                let kd = Self::derive_klein(rs, alpha, beta, a, b, m)?;
                let basis = [kd.t_vec(), kd.k * kd.alpha];
                (Some(kd), basis)
            }
        };
        let lattice = Hermite::new(basis[0], basis[1]).expect("independent basis");
        let index = lattice.index();
        let n_vertices = if klein.is_some() { index / 2 } else { index } as usize;
        let mut q = QuotientGroup {
            rs: rs.clone(),
            spec,
            klein,
            gamma0_basis: basis,
            lattice,
            n_vertices,
            vertex_reps: Vec::new(),
        };
        q.vertex_reps = q
            .enumerate_reps(1)
            .into_iter()
            .map(|h| h.to_lattice().unwrap())
            .collect();
        if q.vertex_reps.len() != n_vertices {
            return Err(Error::Invariant(format!(
                "enumerated {} vertex classes, expected {n_vertices}",
                q.vertex_reps.len()
            )));
        }
        Ok(q)
    }

    fn derive_klein(
        rs: &RootSystem,
        alpha: LatticeVector,
        beta: LatticeVector,
        a: i64,
        b: i64,
        m: i64,
    ) -> Result<KleinData> {
        let arep = rs
            .rep_of_weight(alpha)
            .ok_or_else(|| invalid("alpha is not a nontrivial weight"))?;
        if !rs.weights(arep.partner())?.contains(&beta) {
            return Err(invalid("beta is not a weight of the complementary representation"));
        }
        if !rs.beta_candidates(alpha)?.contains(&beta) {
            return Err(invalid("beta does not maximize pairing"));
        }
        if m == 0 {
            return Err(invalid("m = 0"));
        }
        if alpha.cross(beta).abs() != 1 {
            return Err(Error::Invariant(
                "alpha, beta do not form a basis of the lattice".into(),
            ));
        }
        let tr = a * alpha + b * beta;
        if !rs.in_coroot_lattice(tr) {
            return Err(invalid("translation part not in coroot lattice"));
        }
        let two_ab = 2 * rs.pairing_int(alpha, beta);
        let aa = rs.pairing_int(alpha, alpha);
        if two_ab % aa != 0 {
            return Err(Error::Invariant("2(alpha,beta)/(alpha,alpha) is not integral".into()));
        }
        let n = two_ab / aa;
        let mut k = 2 * a + n * b;
        if k == 0 {
            return Err(invalid("k = 0"));
        }
        let (mut alpha, mut beta, mut a, mut b) = (alpha, beta, a, b);
        if k < 0 {
            alpha = -alpha;
            beta = -beta;
            a = -a;
            b = -b;
            k = -k;
        }
        let type_rep = rs.rep_of_weight(alpha).expect("negation stays in the weight sets");
        let sigma = AffineMap::new(rs.reflection_fixing(alpha)?, a * alpha + b * beta);
        let p = Self::orthogonal_generator(rs, alpha, beta);
        let t = AffineMap::translation_by(m * p);
        Ok(KleinData {
            alpha,
            beta,
            a,
            b,
            m,
            k,
            n,
            sigma,
            t,
            p,
            type_rep,
            m_axes: if b.is_even() { 2 } else { 0 },
        })
    }

    // Primitive element of Λ_r ∩ α^⊥, oriented to have positive β-coefficient.
    fn orthogonal_generator(rs: &RootSystem, alpha: LatticeVector, beta: LatticeVector) -> LatticeVector {
        let g = &rs.gram;
        let ga = LatticeVector::new(
            g[0][0] * alpha.x + g[0][1] * alpha.y,
            g[1][0] * alpha.x + g[1][1] * alpha.y,
        );
        let d = ga.x.gcd(&ga.y);
        let p0 = LatticeVector::new(-ga.y / d, ga.x / d);
        let p = (1..=rs.coroot_index())
            .map(|j| j * p0)
            .find(|&v| rs.in_coroot_lattice(v))
            .expect("some multiple lies in the coroot lattice");
        if alpha.cross(p) * alpha.cross(beta) > 0 {
            p
        } else {
            -p
        }
    }

    /// Rebuild the group from arbitrary generators, via [`normalize_generators`].
    pub fn from_generators(rs: &RootSystem, g_t: &AffineMap, g_sigma: &AffineMap) -> Result<Self> {
        let (t, sigma) = normalize_generators(rs, g_t, g_sigma)?;
        let alpha = rs
            .reps
            .iter()
            .flat_map(|r| r.nontrivial_weights.iter().copied())
            .find(|&d| rs.reflection_fixing(d).map(|r| r == sigma.linear).unwrap_or(false))
            .expect("checked during normalization");
        let beta = rs.beta_candidates(alpha)?[0];
        let det = alpha.cross(beta);
        let tr = sigma.translation;
        let (a, b) = (tr.cross(beta) / det, alpha.cross(tr) / det);
        let p = Self::orthogonal_generator(rs, alpha, beta);
        let n = 2 * rs.pairing_int(alpha, beta) / rs.pairing_int(alpha, alpha);
        // after sign normalization in build, p flips together with (α, β)
        let p = if 2 * a + n * b < 0 { -p } else { p };
        let m = if p.x != 0 {
            t.translation.x / p.x
        } else {
            t.translation.y / p.y
        };
        QuotientGroup::build(rs, GroupSpec::Klein { alpha, beta, a, b, m })
    }

    pub fn kind(&self) -> RootKind {
        self.rs.kind
    }

    pub fn is_klein(&self) -> bool {
        self.klein.is_some()
    }

    pub fn klein_data(&self) -> Option<&KleinData> {
        self.klein.as_ref()
    }

    /// N = |Γ\Λ|.
    pub fn size(&self) -> usize {
        self.n_vertices
    }

    pub fn in_gamma0(&self, v: LatticeVector) -> bool {
        self.lattice.contains(v)
    }

    /// Reduce modulo Γ₀ (points of ½Λ handled in doubled coordinates).
    pub fn reduce(&self, x: HalfVector) -> HalfVector {
        let r = self.lattice.reduce(x.doubled_coords(), 2);
        HalfVector::new(r.x, r.y)
    }

    /// Canonical representative of the Γ-orbit of a point of Λ.
    pub fn canonical_vertex(&self, x: LatticeVector) -> LatticeVector {
        self.canonical_half(x.doubled()).to_lattice().expect("Γ preserves Λ")
    }

    /// Canonical representative of the Γ-orbit of a point of ½Λ.
    pub fn canonical_half(&self, x: HalfVector) -> HalfVector {
        let r = self.reduce(x);
        match &self.klein {
            Some(kd) => r.min(self.reduce(kd.sigma.apply_half(x))),
            None => r,
        }
    }

    /// Canonical representative of the orbit of `(x, dirs)` under
    /// `γ·(x, d) = (γx, γ₀d)`.
    pub fn canonical_state<const D: usize>(
        &self,
        x: HalfVector,
        dirs: [LatticeVector; D],
    ) -> (HalfVector, [LatticeVector; D]) {
        let plain = (self.reduce(x), dirs);
        match &self.klein {
            Some(kd) => {
                let s = kd.sigma;
                let flipped = (self.reduce(s.apply_half(x)), dirs.map(|d| s.linear.apply(d)));
                plain.min(flipped)
            }
            None => plain,
        }
    }

    /// The unique γ ∈ Γ with γ(x) = y, if any.
    pub fn transporter(&self, x: LatticeVector, y: LatticeVector) -> Option<AffineMap> {
        self.transporter_half(x.doubled(), y.doubled())
    }

    pub fn transporter_half(&self, x: HalfVector, y: HalfVector) -> Option<AffineMap> {
        let half_diff = |p: HalfVector, q: HalfVector| {
            let d = LatticeVector::new(q.x2 - p.x2, q.y2 - p.y2);
            (d.x % 2 == 0 && d.y % 2 == 0).then(|| LatticeVector::new(d.x / 2, d.y / 2))
        };
        if let Some(d) = half_diff(x, y) {
            if self.in_gamma0(d) {
                return Some(AffineMap::translation_by(d));
            }
        }
        let kd = self.klein.as_ref()?;
        let d = half_diff(kd.sigma.apply_half(x), y)?;
        self.in_gamma0(d)
            .then(|| AffineMap::translation_by(d).compose(&kd.sigma))
    }

    fn enumerate_reps(&self, scale: i64) -> Vec<HalfVector> {
        let h = &self.lattice;
        let mut set = BTreeSet::new();
        for i in 0..scale * h.a {
            for j in 0..scale * h.c {
                // in doubled coordinates, scale 1 means even entries only
                let x = if scale == 1 {
                    HalfVector::new(2 * i, 2 * j)
                } else {
                    HalfVector::new(i, j)
                };
                set.insert(self.canonical_half(x));
            }
        }
        set.into_iter().collect()
    }

    /// Canonical representatives of Γ\½Λ.
    pub fn half_reps(&self) -> Vec<HalfVector> {
        self.enumerate_reps(2)
    }

    /// δ(π, Γ): 1 for Ã₂ Klein bottles; for C̃₂, 0 if Γ has type π and 2
    /// otherwise; 0 for tori.
    pub fn delta(&self, rep: Rep) -> u32 {
        match &self.klein {
            None => 0,
            Some(kd) => match self.rs.kind {
                RootKind::A2 => 1,
                RootKind::C2 => {
                    if rep == kd.type_rep {
                        0
                    } else {
                        2
                    }
                }
            },
        }
    }

    /// Weights λ of π with (λ, α) ≠ 0 and positive β-coefficient (Klein only).
    pub fn wt_plus(&self, rep: Rep) -> Result<Vec<LatticeVector>> {
        let Some(kd) = &self.klein else {
            return Ok(Vec::new());
        };
        Ok(self
            .rs
            .weights(rep)?
            .iter()
            .copied()
            .filter(|&l| self.rs.pairing_int(l, kd.alpha) != 0 && kd.alpha_beta_coords(l).1 > 0)
            .collect())
    }

    /// `σ^m` for even `n`, `(tσ)^m` for odd `n`: the class of `tⁿσᵐ`.
    pub fn glide_conjugacy_representative(&self, n: i64, m_odd: i64) -> Result<AffineMap> {
        let kd = self
            .klein
            .as_ref()
            .ok_or_else(|| invalid("glide reflections exist only in Klein-bottle groups"))?;
        if m_odd.is_even() {
            return Err(invalid(format!("exponent {m_odd} is not odd")));
        }
        let g = if n.is_even() { kd.sigma } else { kd.t.compose(&kd.sigma) };
        Ok(g.pow(m_odd))
    }

    /// Torus group on Γ₀, the translation subgroup.
    pub fn translation_cover(&self) -> Result<QuotientGroup> {
        QuotientGroup::build(
            &self.rs,
            GroupSpec::Torus {
                v1: self.gamma0_basis[0],
                v2: self.gamma0_basis[1],
            },
        )
    }

    pub fn invariants_report(&self) -> Result<InvariantsReport> {
        let mut reps = Vec::new();
        for r in &self.rs.reps {
            reps.push(RepInvariants {
                rep: r.rep,
                epsilon: r.epsilon,
                n_value: r.n_value,
                delta: self.delta(r.rep),
                wt_plus: self.wt_plus(r.rep)?.len(),
            });
        }
        let kd = self.klein.as_ref();
        Ok(InvariantsReport {
            root_system: self.rs.kind,
            kind: if kd.is_some() { "klein" } else { "torus" }.into(),
            n: self.n_vertices,
            gamma0_basis: self.gamma0_basis,
            k_gamma: kd.map(|k| k.k),
            n_gamma: kd.map(|k| k.n),
            type_rep: kd.map(|k| k.type_rep),
            m_axes: kd.map(|k| k.m_axes),
            alpha: kd.map(|k| k.alpha),
            beta: kd.map(|k| k.beta),
            a: kd.map(|k| k.a),
            b: kd.map(|k| k.b),
            t_vec: kd.map(|k| k.t_vec()),
            reps,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepInvariants {
    pub rep: Rep,
    pub epsilon: u32,
    pub n_value: i64,
    pub delta: u32,
    pub wt_plus: usize,
}

/// Summary of the derived invariants of a quotient (after sign normalization).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    pub root_system: RootKind,
    pub kind: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub gamma0_basis: [LatticeVector; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_gamma: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_gamma: Option<i64>,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub type_rep: Option<Rep>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_axes: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<LatticeVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<LatticeVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_vec: Option<LatticeVector>,
    pub reps: Vec<RepInvariants>,
}

impl fmt::Display for InvariantsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "root system: {}", self.root_system)?;
        writeln!(f, "kind: {}", self.kind)?;
        writeln!(f, "N: {}", self.n)?;
        writeln!(f, "Gamma0 basis: {} {}", self.gamma0_basis[0], self.gamma0_basis[1])?;
        if let (Some(k), Some(n), Some(ty), Some(ma)) = (self.k_gamma, self.n_gamma, self.type_rep, self.m_axes) {
            writeln!(f, "k_Gamma: {k}")?;
            writeln!(f, "n_Gamma: {n}")?;
            writeln!(f, "type: {ty}")?;
            writeln!(f, "m_axes: {ma}")?;
        }
        if let (Some(al), Some(be), Some(a), Some(b), Some(t)) = (self.alpha, self.beta, self.a, self.b, self.t_vec) {
            writeln!(f, "sigma: reflection fixing {al}, translation {a}*{al} + {b}*{be}")?;
            writeln!(f, "t: translation by {t}")?;
        }
        for r in &self.reps {
            writeln!(
                f,
                "{}: epsilon={} n={} delta={} |wt+|={}",
                r.rep, r.epsilon, r.n_value, r.delta, r.wt_plus
            )?;
        }
        Ok(())
    }
}

/// Bring a generating pair of a Klein-bottle group to normal form: `t`
/// orthogonal to the glide axis, so that `tσ = σt⁻¹`.
///
/// With `t = τ(v)` one has `σ⁻¹tσ = τ(σ₀v) = τ(-v + cα)`, `c = 2(v,α)/(α,α)`.
/// If `c = 2jk` the replacement `t ↦ tσ^{-2j}` kills the axial component. If
/// `c ≡ k (mod 2k)` the group contains a reflection. Other values of `c`
/// mean that σ is not a primitive glide of the group it generates with `t`
/// and are rejected.
pub fn normalize_generators(rs: &RootSystem, g_t: &AffineMap, g_sigma: &AffineMap) -> Result<(AffineMap, AffineMap)> {
    if !g_t.is_translation() {
        return Err(invalid("t is not a translation"));
    }
    let alpha = rs
        .reps
        .iter()
        .flat_map(|r| r.nontrivial_weights.iter().copied())
        .find(|&d| rs.reflection_fixing(d).map(|r| r == g_sigma.linear).unwrap_or(false))
        .ok_or_else(|| invalid("sigma is not a glide reflection along a weight direction"))?;
    let v = g_t.translation;
    if !rs.in_coroot_lattice(v) || !rs.in_coroot_lattice(g_sigma.translation) {
        return Err(invalid("translation part not in coroot lattice"));
    }
    let sq = g_sigma.compose(g_sigma).translation;
    // σ² = τ(kα) with k possibly negative
    let aa = rs.pairing_int(alpha, alpha);
    let k = 2 * rs.pairing_int(sq, alpha) / (2 * aa);
    if sq != k * alpha {
        return Err(Error::Invariant("sigma squared is not an axial translation".into()));
    }
    if k == 0 {
        return Err(invalid("sigma has a fixed line (torsion)"));
    }
    if v.is_zero() || g_t.compose(g_sigma) == g_sigma.compose(g_t) {
        return Err(invalid("generators commute"));
    }
    let c = 2 * rs.pairing_int(v, alpha) / aa;
    let k_abs = k.abs();
    if (2 * rs.pairing_int(v, alpha)) % aa != 0 || c % k_abs != 0 {
        return Err(invalid(
            "sigma is not a primitive glide reflection of the generated group",
        ));
    }
    let q = c / k;
    if q.is_odd() {
        return Err(invalid("generated group has torsion"));
    }
    let t = g_t.compose(&g_sigma.pow(-q));
    debug_assert!(t.is_translation() && rs.pairing_int(t.translation, alpha) == 0);
    Ok((t, *g_sigma))
}
