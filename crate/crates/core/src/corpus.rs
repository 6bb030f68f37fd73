//! Seeded random corpora of quotients, verified in parallel.
//!
//! Tori have basis entries bounded by 6 and lie in the coroot lattice.
//! Klein bottles are enumerated over every admissible (α, β) with
//! `a, b ∈ [-4, 4]`, `m ∈ [-3, 3] \ {0}`, then sampled per cell
//! (root system, type representation, parity of `b`).
//! Both families are filtered to `N ≤ max_vertices` and deduplicated as groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::quotient::{GroupSpec, Hermite, QuotientGroup};
use crate::roots::{LatticeVector, Rep, RootKind, RootSystem};
use crate::verify::{verify, VerificationReport};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusConfig {
    pub seed: u64,
    pub tori_per_kind: usize,
    pub kleins_per_cell: usize,
    pub max_vertices: usize,
    pub torus_bound: i64,
    pub klein_bound: i64,
    pub m_bound: i64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 0,
            tori_per_kind: 20,
            kleins_per_cell: 3,
            max_vertices: 60,
            torus_bound: 6,
            klein_bound: 4,
            m_bound: 3,
        }
    }
}

/// Sampling cell of a Klein bottle. For A2 both type representations share a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct KleinCell {
    pub kind: RootKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_rep: Option<Rep>,
    pub b_even: bool,
}

impl fmt::Display for KleinCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(r) = self.type_rep {
            write!(f, " {r}-type")?;
        }
        write!(f, " b {}", if self.b_even { "even" } else { "odd" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusMember {
    pub kind: RootKind,
    pub group: GroupSpec,
    #[serde(rename = "N")]
    pub n_vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<KleinCell>,
}

impl CorpusMember {
    pub fn build(&self) -> Result<QuotientGroup> {
        QuotientGroup::build(&RootSystem::new(self.kind), self.group)
    }

    pub fn is_klein(&self) -> bool {
        matches!(self.group, GroupSpec::Klein { .. })
    }
}

impl fmt::Display for CorpusMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.group {
            GroupSpec::Torus { v1, v2 } => write!(f, "{} torus v1={v1} v2={v2} N={}", self.kind, self.n_vertices),
            GroupSpec::Klein { alpha, beta, a, b, m } => write!(
                f,
                "{} klein alpha={alpha} beta={beta} a={a} b={b} m={m} N={}",
                self.kind, self.n_vertices
            ),
        }
    }
}

type GroupKey = (RootKind, (i64, i64, i64), Option<([[i64; 2]; 2], LatticeVector)>);

fn group_key(q: &QuotientGroup) -> GroupKey {
    let h = q.lattice;
    let glide = q.klein_data().map(|kd| {
        let m = kd.sigma.linear.m;
        (m, h.reduce(kd.sigma.translation, 1))
    });
    (q.kind(), (h.a, h.b, h.c), glide)
}

/// `count` random tori of one root system, distinct as subgroups.
pub fn random_tori(kind: RootKind, count: usize, cfg: &CorpusConfig, rng: &mut impl Rng) -> Vec<CorpusMember> {
    let rs = RootSystem::new(kind);
    let bound = cfg.torus_bound;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < count && attempts < 200_000 {
        attempts += 1;
        let mut draw = || LatticeVector::new(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        let (v1, v2) = (draw(), draw());
        if !rs.in_coroot_lattice(v1) || !rs.in_coroot_lattice(v2) {
            continue;
        }
        let n = v1.cross(v2).unsigned_abs() as usize;
        if n == 0 || n > cfg.max_vertices {
            continue;
        }
        let Some(h) = Hermite::new(v1, v2) else { continue };
        if !seen.insert((h.a, h.b, h.c)) {
            continue;
        }
        out.push(CorpusMember {
            kind,
            group: GroupSpec::Torus { v1, v2 },
            n_vertices: n,
            cell: None,
        });
    }
    out
}

/// Every valid Klein bottle within the configured bounds, one spec per group,
/// bucketed by cell.
pub fn klein_cells(cfg: &CorpusConfig) -> BTreeMap<KleinCell, Vec<CorpusMember>> {
    let mut seen = BTreeSet::new();
    let mut cells: BTreeMap<KleinCell, Vec<CorpusMember>> = BTreeMap::new();
    for kind in [RootKind::A2, RootKind::C2] {
        let rs = RootSystem::new(kind);
        for rep in kind.reps() {
            let alphas = rs.weights(rep).map(<[_]>::to_vec).unwrap_or_default();
            for alpha in alphas {
                let betas = rs.beta_candidates(alpha).unwrap_or_default();
                for beta in betas {
                    for a in -cfg.klein_bound..=cfg.klein_bound {
                        for b in -cfg.klein_bound..=cfg.klein_bound {
                            for m in (-cfg.m_bound..=cfg.m_bound).filter(|&m| m != 0) {
                                let group = GroupSpec::Klein { alpha, beta, a, b, m };
                                let Ok(q) = QuotientGroup::build(&rs, group) else {
                                    continue;
                                };
                                if q.size() > cfg.max_vertices || !seen.insert(group_key(&q)) {
                                    continue;
                                }
                                let kd = q.klein_data().expect("klein group");
                                let cell = KleinCell {
                                    kind,
                                    type_rep: (kind == RootKind::C2).then_some(kd.type_rep),
                                    b_even: kd.b % 2 == 0,
                                };
                                cells.entry(cell).or_default().push(CorpusMember {
                                    kind,
                                    group,
                                    n_vertices: q.size(),
                                    cell: Some(cell),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    cells
}

/// The full corpus: tori for both root systems, then Klein bottles by cell.
pub fn generate(cfg: &CorpusConfig) -> Vec<CorpusMember> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for kind in [RootKind::A2, RootKind::C2] {
        out.extend(random_tori(kind, cfg.tori_per_kind, cfg, &mut rng));
    }
    for (_, mut members) in klein_cells(cfg) {
        members.shuffle(&mut rng);
        members.truncate(cfg.kleins_per_cell);
        out.extend(members);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberOutcome {
    pub member: CorpusMember,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl MemberOutcome {
    pub fn holds(&self) -> bool {
        self.report.as_ref().is_some_and(VerificationReport::all_hold)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub members: Vec<MemberOutcome>,
}

impl CorpusReport {
    pub fn all_hold(&self) -> bool {
        self.members.iter().all(MemberOutcome::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &MemberOutcome> {
        self.members.iter().filter(|m| !m.holds())
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "corpus seed {}: {} members", self.seed, self.members.len())?;
        for m in &self.members {
            let status = if m.holds() { "PASS" } else { "FAIL" };
            write!(f, "{status} {}", m.member)?;
            if let Some(c) = m.member.cell {
                write!(f, " [{c}]")?;
            }
            if let Some(e) = &m.error {
                write!(f, ": {e}")?;
            }
            writeln!(f)?;
            if let Some(r) = &m.report {
                for rec in r.failures() {
                    let rep = rec.rep.map(|r| format!(" [{r}]")).unwrap_or_default();
                    writeln!(f, "    FAIL {}{}: {}", rec.id, rep, rec.statement)?;
                }
            }
        }
        Ok(())
    }
}

/// Verify members in parallel; outcomes keep the input order.
pub fn verify_members(members: &[CorpusMember], order: Option<usize>) -> Vec<MemberOutcome> {
    members
        .par_iter()
        .map(|m| {
            let result = m.build().and_then(|q| verify(&q, order));
            match result {
                Ok(report) => MemberOutcome {
                    member: m.clone(),
                    report: Some(report),
                    error: None,
                },
                Err(e) => MemberOutcome {
                    member: m.clone(),
                    report: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

pub fn run(cfg: &CorpusConfig, order: Option<usize>) -> CorpusReport {
    CorpusReport {
        seed: cfg.seed,
        members: verify_members(&generate(cfg), order),
    }
}
