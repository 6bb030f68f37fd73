//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use apartment_zeta::corpus::{self, CorpusConfig, CorpusMember, KleinCell, MemberOutcome};
use apartment_zeta::zeta::{l_function, required_order, required_order_all, ZetaBundle};
use apartment_zeta::{
    verify, Error, GroupSpec, LatticeVector, QuotientGroup, RationalFunctionW, Rep, RootKind, RootSystem,
};

type Check = Result<String, String>;

fn lv(x: i64, y: i64) -> LatticeVector {
    LatticeVector::new(x, y)
}

fn group(kind: RootKind, spec: GroupSpec) -> QuotientGroup {
    QuotientGroup::build(&RootSystem::new(kind), spec).expect("valid group")
}

fn coroot_torus(kind: RootKind) -> QuotientGroup {
    match kind {
        RootKind::A2 => group(
            kind,
            GroupSpec::Torus {
                v1: lv(1, 1),
                v2: lv(-1, 2),
            },
        ),
        RootKind::C2 => group(
            kind,
            GroupSpec::Torus {
                v1: lv(1, 1),
                v2: lv(1, -1),
            },
        ),
    }
}

/// `(1 - u^k)^(-e)`
fn u_factor(k: usize, e: i32) -> RationalFunctionW {
    RationalFunctionW::euler_factor(2 * k).pow(e).unwrap()
}

fn expect_eq(label: &str, got: &RationalFunctionW, want: &RationalFunctionW) -> Result<(), String> {
    if got.equals(want) {
        Ok(())
    } else {
        Err(format!("{label}: got {got}, expected {want}"))
    }
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{label} took {elapsed:?}, limit {limit:?}"))
    }
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let a2 = coroot_torus(RootKind::A2);
    let b = ZetaBundle::compute(&a2, 48).map_err(|e| e.to_string())?;
    for rep in [Rep::Pi1, Rep::Pi2] {
        let r = b.get(rep).unwrap();
        expect_eq(&format!("A2 Z({rep})"), &r.z, &u_factor(3, 3))?;
        expect_eq(&format!("A2 Z2({rep})"), &r.z2, &u_factor(6, 3))?;
    }
    let c2 = coroot_torus(RootKind::C2);
    let b = ZetaBundle::compute(&c2, 48).map_err(|e| e.to_string())?;
    let spin = b.get(Rep::Spin).unwrap();
    let st = b.get(Rep::St).unwrap();
    expect_eq("C2 Z(spin)", &spin.z, &u_factor(2, 4))?;
    expect_eq("C2 Z(st)", &st.z, &u_factor(1, 8))?;
    expect_eq("C2 L(st)", &st.l.l, &u_factor(1, 10))?;
    expect_eq("C2 Z2(spin)", &spin.z2, &u_factor(2, 8))?;
    expect_eq("C2 Z2(st)", &st.z2, &u_factor(2, 8))?;

    let klein = group(
        RootKind::A2,
        GroupSpec::Klein {
            alpha: lv(1, 0),
            beta: lv(0, 1),
            a: 1,
            b: 1,
            m: 1,
        },
    );
    let b = ZetaBundle::compute(&klein, 48).map_err(|e| e.to_string())?;
    let want = RationalFunctionW::plus_over_minus(6);
    for rep in [Rep::Pi1, Rep::Pi2] {
        let r = b.get(rep).unwrap();
        expect_eq(&format!("A2 klein correction({rep})"), &r.correction, &want)?;
        let eps = klein.rs.repr(rep).unwrap().epsilon as i32;
        let lhs = r.l.l.mul(&u_factor(1, eps * 3).inv().unwrap());
        expect_eq(&format!("A2 klein (1-u)^(eps N) L({rep})"), &lhs, &r.z.mul(&want))?;
    }
    within("regressions", start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("coroot tori and A2 klein k=3 in {:?}", start.elapsed()))
}

/// Every `(member, rep)` pair (or the member, for group-level ids) has a holding record.
fn require(outcomes: &[&MemberOutcome], ids: &[&str], per_rep: bool) -> Result<usize, String> {
    let mut checked = 0;
    for o in outcomes {
        let report = o
            .report
            .as_ref()
            .ok_or_else(|| format!("{}: {}", o.member, o.error.clone().unwrap_or_default()))?;
        let reps: Vec<Option<Rep>> = if per_rep {
            o.member.kind.reps().into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        for id in ids {
            for &rep in &reps {
                let rec = report
                    .find(id, rep)
                    .ok_or_else(|| format!("{}: missing record {id} {rep:?}", o.member))?;
                if !rec.holds {
                    return Err(format!(
                        "{}: {id} {rep:?} fails: {}",
                        o.member,
                        rec.detail.clone().unwrap_or_default()
                    ));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

struct Suite {
    tori: Vec<MemberOutcome>,
    tori_time: Duration,
    kleins: Vec<MemberOutcome>,
    klein_time: Duration,
}

impl Suite {
    fn run() -> Suite {
        let members = corpus::generate(&CorpusConfig::default());
        let (tori, kleins): (Vec<CorpusMember>, Vec<CorpusMember>) = members.into_iter().partition(|m| !m.is_klein());
        let start = Instant::now();
        let tori = corpus::verify_members(&tori, None);
        let tori_time = start.elapsed();
        let start = Instant::now();
        let kleins = corpus::verify_members(&kleins, None);
        let klein_time = start.elapsed();
        Suite {
            tori,
            tori_time,
            kleins,
            klein_time,
        }
    }

    fn all(&self) -> Vec<&MemberOutcome> {
        self.tori.iter().chain(&self.kleins).collect()
    }
}

fn criterion_2(s: &Suite) -> Check {
    for kind in [RootKind::A2, RootKind::C2] {
        let n = s.tori.iter().filter(|o| o.member.kind == kind).count();
        if n < 20 {
            return Err(format!("only {n} {kind} tori"));
        }
    }
    let tori: Vec<&MemberOutcome> = s.tori.iter().collect();
    if let Some(o) = tori
        .iter()
        .find(|o| o.report.as_ref().is_some_and(|r| r.census_depth < 12))
    {
        return Err(format!("{}: census depth below 12", o.member));
    }
    let n = require(
        &tori,
        &[
            "torus-walk-zeta-closed-form",
            "torus-l-function-closed-form",
            "torus-character-product",
            "torus-closed-equals-geodesic",
            "log-walk-zeta-vs-geodesic-counts",
            "l-function-vs-closed-counts",
        ],
        true,
    )?;
    within("torus suite", s.tori_time, Duration::from_secs(60))?;
    Ok(format!("{} tori, {n} checks in {:?}", tori.len(), s.tori_time))
}

fn criterion_3(s: &Suite) -> Check {
    let kleins: Vec<&MemberOutcome> = s.kleins.iter().collect();
    if kleins.len() < 12 {
        return Err(format!("only {} klein groups", kleins.len()));
    }
    let cells: BTreeSet<KleinCell> = kleins.iter().filter_map(|o| o.member.cell).collect();
    let want = [
        (RootKind::A2, None, true),
        (RootKind::A2, None, false),
        (RootKind::C2, Some(Rep::Spin), true),
        (RootKind::C2, Some(Rep::Spin), false),
        (RootKind::C2, Some(Rep::St), true),
    ];
    for (kind, type_rep, b_even) in want {
        let cell = KleinCell { kind, type_rep, b_even };
        if !cells.contains(&cell) {
            return Err(format!("cell {cell} not covered"));
        }
    }
    let forbidden = KleinCell {
        kind: RootKind::C2,
        type_rep: Some(Rep::St),
        b_even: false,
    };
    if cells.contains(&forbidden) {
        return Err(format!("cell {forbidden} should be empty"));
    }
    let mut n = require(&kleins, &["klein-l-function-vs-walk-zeta", "klein-walk-excess"], true)?;
    n += require(
        &kleins,
        &["klein-relations", "irrational-axis-parity", "lambda-set-cardinalities"],
        false,
    )?;
    within("klein suite", s.klein_time, Duration::from_secs(90))?;
    Ok(format!(
        "{} groups over {} cells, {n} checks in {:?}",
        kleins.len(),
        cells.len(),
        s.klein_time
    ))
}

fn criterion_4(s: &Suite) -> Check {
    let kleins: Vec<&MemberOutcome> = s.kleins.iter().collect();
    let n = require(&kleins, &["double-cover-squared", "klein-semi-vs-walk-zeta"], true)?;
    let tori: Vec<&MemberOutcome> = s.tori.iter().collect();
    let m = require(&tori, &["torus-semi-equals-walk-zeta"], true)?;
    Ok(format!("{n} klein cover checks, {m} torus semi checks"))
}

fn criterion_5(s: &Suite) -> Check {
    let all = s.all();
    if let Some(o) = all
        .iter()
        .find(|o| o.report.as_ref().is_some_and(|r| r.census_depth < 10))
    {
        return Err(format!("{}: gallery census depth below 10", o.member));
    }
    let n = require(
        &all,
        &[
            "gallery-vs-partner-semi-zeta",
            "log-gallery-zeta-vs-gallery-counts",
            "log-semi-zeta-vs-semi-counts",
        ],
        true,
    )?;
    Ok(format!("{n} checks over {} members", all.len()))
}

fn criterion_6(s: &Suite) -> Check {
    let all = s.all();
    let n = require(&all, &["main-identity", "gallery-quotient-equals-correction"], true)?;
    for o in &s.tori {
        let q = o.member.build().map_err(|e| e.to_string())?;
        let order = required_order_all(&q).map_err(|e| e.to_string())?.max(48);
        let b = ZetaBundle::compute(&q, order).map_err(|e| e.to_string())?;
        if let Some(r) = b.reps.iter().find(|r| !r.correction.is_one()) {
            return Err(format!(
                "{}: torus correction factor for {} is {}",
                o.member, r.rep, r.correction
            ));
        }
    }
    Ok(format!("{n} checks over {} members", all.len()))
}

fn criterion_7(s: &Suite) -> Check {
    let all = s.all();
    let mut n = require(
        &all,
        &[
            "transfer-maps-bijective",
            "inverse-zetas-integral",
            "l-polynomial-integral",
        ],
        true,
    )?;
    for o in &all {
        let Some(report) = &o.report else { continue };
        for rec in report
            .records
            .iter()
            .filter(|r| r.id == "spin-walk-parity" || r.id == "type-gallery-parity")
        {
            if !rec.holds {
                return Err(format!("{}: {} fails", o.member, rec.id));
            }
            n += 1;
        }
        if o.member.kind == RootKind::C2 && report.find("spin-walk-parity", Some(Rep::Spin)).is_none() {
            return Err(format!("{}: spin parity not checked", o.member));
        }
    }
    // Order insufficiency, on the largest member.
    let largest = all.iter().max_by_key(|o| o.member.n_vertices).unwrap();
    let q = largest.member.build().map_err(|e| e.to_string())?;
    let required = required_order_all(&q).map_err(|e| e.to_string())?;
    match verify(&q, Some(required - 1)) {
        Err(Error::InsufficientOrder { required: r, .. }) if r == required => {}
        other => {
            return Err(format!(
                "order {} not rejected: {:?}",
                required - 1,
                other.map(|r| r.all_hold())
            ))
        }
    }
    let rep = q.kind().reps()[0];
    let need = required_order(&q, rep).map_err(|e| e.to_string())?;
    if !matches!(l_function(&q, rep, need - 1), Err(Error::InsufficientOrder { .. })) {
        return Err("l_function accepted an insufficient order".into());
    }
    if l_function(&q, rep, need).is_err() {
        return Err("l_function rejected a sufficient order".into());
    }
    Ok(format!(
        "{n} checks; order {} rejected for N = {}",
        required - 1,
        largest.member.n_vertices
    ))
}

fn main() -> ExitCode {
    let mut failed = 0;
    let mut report = |id: usize, name: &str, result: Check| match result {
        Ok(msg) => println!("PASS {id} {name}: {msg}"),
        Err(msg) => {
            failed += 1;
            println!("FAIL {id} {name}: {msg}");
        }
    };
    report(1, "regression values", criterion_1());
    let suite = Suite::run();
    report(2, "torus suite", criterion_2(&suite));
    report(3, "klein suite", criterion_3(&suite));
    report(4, "cover consistency", criterion_4(&suite));
    report(5, "gallery suite", criterion_5(&suite));
    report(6, "main identity", criterion_6(&suite));
    report(7, "structural invariants", criterion_7(&suite));
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
