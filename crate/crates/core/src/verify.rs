//! The identity battery: every relation between walk, semi-rational and
//! gallery zetas, the L-function and the brute-force counts, checked exactly.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{Poly, Rational, RationalFunctionW, Series};
use crate::census::{gallery_table, geodesic_walk_table, lambda_set_expected, lambda_set_size, semi_table, Glide};
use crate::quotient::{AffineMap, QuotientGroup};
use crate::roots::{LatticeVector, Rep, RootKind};
use crate::zeta::{
    correction_factor, resolve_order, torus_character_product, torus_closed_form, zeta_walks, SystemKind,
    TransferSystem, ZetaBundle,
};
use crate::{Error, Result};

/// Count comparisons run to this many steps in `u` (or the series order, if smaller).
pub const CENSUS_DEPTH_U: usize = 24;

/// The first exponent of `w` at which two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exponent: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub id: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep: Option<Rep>,
    pub statement: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityRecord {
    fn new(id: &'static str, rep: Option<Rep>, statement: impl Into<String>) -> Self {
        IdentityRecord {
            id,
            rep,
            statement: statement.into(),
            holds: true,
            lhs: None,
            rhs: None,
            mismatch: None,
            detail: None,
        }
    }

    fn check(mut self, holds: bool, detail: impl FnOnce() -> String) -> Self {
        self.holds = holds;
        if !holds {
            self.detail = Some(detail());
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub order: usize,
    pub census_depth: usize,
    pub records: Vec<IdentityRecord>,
}

impl VerificationReport {
    pub fn all_hold(&self) -> bool {
        self.records.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityRecord> {
        self.records.iter().filter(|r| !r.holds)
    }

    pub fn find(&self, id: &str, rep: Option<Rep>) -> Option<&IdentityRecord> {
        self.records.iter().find(|r| r.id == id && r.rep == rep)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {} (u), census depth {}", self.order, self.census_depth)?;
        for r in &self.records {
            let rep = r.rep.map(|r| format!(" [{r}]")).unwrap_or_default();
            writeln!(
                f,
                "{} {}{}: {}",
                if r.holds { "PASS" } else { "FAIL" },
                r.id,
                rep,
                r.statement
            )?;
            if let Some(m) = &r.mismatch {
                writeln!(f, "     first mismatch at w^{}: {} vs {}", m.exponent, m.lhs, m.rhs)?;
            }
            if let Some(d) = &r.detail {
                writeln!(f, "     {d}")?;
            }
        }
        let fails = self.failures().count();
        write!(f, "{} identities, {} failed", self.records.len(), fails)
    }
}

fn degree_sum(f: &RationalFunctionW) -> usize {
    f.numerator().degree().unwrap_or(0) + f.denominator().degree().unwrap_or(0)
}

fn first_difference(a: &RationalFunctionW, b: &RationalFunctionW) -> Option<Mismatch> {
    let order = degree_sum(a) + degree_sum(b) + 1;
    let (sa, sb) = (a.to_series(order).ok()?, b.to_series(order).ok()?);
    sa.first_mismatch(&sb).map(|i| Mismatch {
        exponent: i,
        lhs: sa.coeff(i).to_string(),
        rhs: sb.coeff(i).to_string(),
    })
}

fn rf_identity(
    id: &'static str,
    rep: Option<Rep>,
    statement: &str,
    lhs: &RationalFunctionW,
    rhs: &RationalFunctionW,
) -> IdentityRecord {
    let mut r = IdentityRecord::new(id, rep, statement);
    r.holds = lhs.equals(rhs);
    r.lhs = Some(lhs.pretty());
    r.rhs = Some(rhs.pretty());
    if !r.holds {
        r.mismatch = first_difference(lhs, rhs);
    }
    r
}

fn series_identity(id: &'static str, rep: Option<Rep>, statement: &str, lhs: &Series, rhs: &Series) -> IdentityRecord {
    let mut r = IdentityRecord::new(id, rep, statement);
    r.mismatch = lhs.first_mismatch(rhs).map(|i| Mismatch {
        exponent: i,
        lhs: lhs.coeff(i).to_string(),
        rhs: rhs.coeff(i).to_string(),
    });
    r.holds = r.mismatch.is_none();
    r
}

/// `Σ c_n vⁿ / n` for `c_1, c_2, ...`, each `v`-step worth `stride` powers of `w`.
fn count_log_series(counts: &[u64], stride: usize) -> Series {
    let mut coeffs = vec![Rational::from_integer(0.into()); counts.len() * stride + 1];
    for (i, &c) in counts.iter().enumerate() {
        coeffs[(i + 1) * stride] = Rational::new(BigInt::from(c), BigInt::from(i + 1));
    }
    Series::from_coeffs(coeffs)
}

fn log_of(f: &RationalFunctionW, order_w: usize) -> Result<Series> {
    f.to_series(order_w)?.log()
}

/// `Z(π′, u^{2/n′})^{n′}`, performed in `w`.
fn partner_power(f: &RationalFunctionW, n_partner: i64) -> Result<RationalFunctionW> {
    if n_partner == 1 {
        Ok(f.substitute(2))
    } else {
        f.pow(2)
    }
}

/// Run the whole battery. `order` is the series order in `u`; when absent the
/// smallest sufficient order (at least the default) is used.
pub fn verify(q: &QuotientGroup, order: Option<usize>) -> Result<VerificationReport> {
    let order = resolve_order(q, order)?;
    let depth = order.min(CENSUS_DEPTH_U);
    let bundle = ZetaBundle::compute(q, order)?;
    let cover = match q.klein_data() {
        Some(_) => Some(q.translation_cover()?),
        None => None,
    };
    let mut records = Vec::new();
    for rz in &bundle.reps {
        records.extend(rep_identities(q, &bundle, rz.rep, depth, cover.as_ref())?);
    }
    records.extend(group_identities(q)?);
    Ok(VerificationReport {
        order,
        census_depth: depth,
        records,
    })
}

fn rep_identities(
    q: &QuotientGroup,
    bundle: &ZetaBundle,
    rep: Rep,
    depth: usize,
    cover: Option<&QuotientGroup>,
) -> Result<Vec<IdentityRecord>> {
    let rs = &q.rs;
    let rz = bundle.get(rep).expect("bundle covers both reps");
    let partner = bundle.get(rep.partner()).expect("bundle covers both reps");
    let n_partner = rs.repr(rep.partner())?.n_value;
    let some = Some(rep);
    let mut out = Vec::new();

    let inv_p = RationalFunctionW::reciprocal_of(rz.l.p.clone())?;
    let geodesic = geodesic_walk_table(q, rep, depth)?.values;
    let closed = &rz.l.closed_counts[..depth];

    // walk zeta against geodesic counts
    out.push(series_identity(
        "log-walk-zeta-vs-geodesic-counts",
        some,
        "log Z(u) = sum_n Ñ_n u^n / n",
        &log_of(&rz.z, 2 * depth)?,
        &count_log_series(&geodesic, 2),
    ));

    // trace formula: exp of the closed-walk series is 1/P through the full order (in u)
    let exp_side = count_log_series(&rz.l.closed_counts, 1).exp()?;
    let p_u = Poly::from_coeffs(rz.l.p.to_u_coeffs()?);
    out.push(series_identity(
        "l-function-vs-closed-counts",
        some,
        "(1-u)^(eps N) L(u) = exp(sum_n N_n u^n / n)",
        &exp_side,
        &Series::from_poly(&p_u, bundle.order).reciprocal()?,
    ));

    let bound = q.size() * rs.weights(rep)?.len();
    let p_deg = rz.l.p.degree().unwrap_or(0);
    out.push(
        IdentityRecord::new("l-polynomial-integral", some, "P in Z[u], P(0) = 1, deg P <= N |wt'|").check(
            rz.l.p.has_integer_coeffs()
                && rz.l.p.is_even_in_w()
                && rz.l.p.constant_term() == Rational::from_integer(1.into())
                && p_deg <= 2 * bound,
            || format!("P = {}", rz.l.p.display_in("w")),
        ),
    );

    match q.klein_data() {
        None => {
            let closed_form = torus_closed_form(q, rep)?;
            out.push(rf_identity(
                "torus-walk-zeta-closed-form",
                some,
                "Z(u) = prod_lambda (1 - u^deg)^(-N/deg)",
                &rz.z,
                &closed_form,
            ));
            out.push(rf_identity(
                "torus-l-function-closed-form",
                some,
                "(1-u)^(eps N) L(u) = Z(u)",
                &inv_p,
                &rz.z,
            ));
            let chars = torus_character_product(q, rep)?;
            out.push(
                IdentityRecord::new("torus-character-product", some, "P = prod_lambda det(1 - u R(lambda))")
                    .check(chars == rz.l.p, || {
                        format!("{} vs {}", chars.display_in("w"), rz.l.p.display_in("w"))
                    }),
            );
            let equal = closed.iter().zip(&geodesic).all(|(a, b)| a == b);
            out.push(
                IdentityRecord::new(
                    "torus-closed-equals-geodesic",
                    some,
                    format!("N_n = Ñ_n for n <= {depth}"),
                )
                .check(equal, || format!("N = {closed:?}, Ñ = {geodesic:?}")),
            );
            out.push(rf_identity(
                "torus-semi-equals-walk-zeta",
                some,
                "Z_semi(u) = Z(u)",
                &rz.z_semi,
                &rz.z,
            ));
        }
        Some(kd) => {
            out.push(rf_identity(
                "klein-l-function-vs-walk-zeta",
                some,
                "(1-u)^(eps N) L(u) = Z(u) ((1+u^(k/n))/(1-u^(k/n)))^(n delta)",
                &inv_p,
                &rz.z.mul(&rz.correction),
            ));

            let wt_plus = q.wt_plus(rep)?.len() as i64;
            let f = RationalFunctionW::plus_over_minus((2 * kd.k / kd.n) as usize);
            let rhs = log_of(&f, 2 * depth)?.scale(&Rational::from_integer((wt_plus * kd.n).into()));
            let diffs: Vec<u64> = closed.iter().zip(&geodesic).map(|(a, b)| a - b).collect();
            let ok = closed.iter().zip(&geodesic).all(|(a, b)| a >= b);
            let mut rec = series_identity(
                "klein-walk-excess",
                some,
                "sum_n (N_n - Ñ_n) u^n / n = |wt+| n log((1+u^(k/n))/(1-u^(k/n)))",
                &count_log_series(&diffs, 2),
                &rhs,
            );
            rec.holds &= ok;
            out.push(rec);

            let delta = q.delta(rep) as i32;
            let m_axes = kd.m_axes as i32;
            let fk = RationalFunctionW::plus_over_minus(kd.k as usize);
            let cover = cover.expect("klein verification builds the cover");
            let z_cover = zeta_walks(cover, rep)?;
            out.push(rf_identity(
                "double-cover-squared",
                some,
                "Z(u)^2 ((1+u^(k/2))/(1-u^(k/2)))^(-m (2-delta)) = Z(Gamma0 torus, u)",
                &rz.z.pow(2)?.mul(&fk.pow(-m_axes * (2 - delta))?),
                &z_cover,
            ));
            out.push(rf_identity(
                "klein-semi-vs-walk-zeta",
                some,
                "Z_semi(u) = Z(u) ((1+u^(k/2))/(1-u^(k/2)))^((2-delta)(1-m))",
                &rz.z_semi,
                &rz.z.mul(&fk.pow((2 - delta) * (1 - m_axes))?),
            ));
        }
    }

    let semi = semi_table(q, rep, 2 * depth)?.values;
    out.push(series_identity(
        "log-semi-zeta-vs-semi-counts",
        some,
        "log Z_semi = sum_j S_j w^j / j",
        &log_of(&rz.z_semi, 2 * depth)?,
        &count_log_series(&semi, 1),
    ));

    let gallery_depth = depth.min(12);
    let galleries = gallery_table(q, rep, gallery_depth)?.values;
    out.push(series_identity(
        "log-gallery-zeta-vs-gallery-counts",
        some,
        "log Z2(u) = sum_n G_n u^n / n",
        &log_of(&rz.z2, 2 * gallery_depth)?,
        &count_log_series(&galleries, 2),
    ));

    out.push(rf_identity(
        "gallery-vs-partner-semi-zeta",
        some,
        "Z2(pi, u) = Z_semi(pi', u^(2/n'))^(n')",
        &rz.z2,
        &partner_power(&partner.z_semi, n_partner)?,
    ));

    let partner_walk = partner_power(&partner.z, n_partner)?;
    let z2_neg = rz.z2.negate_u()?;
    let quotient = partner_walk.div(&z2_neg)?;
    out.push(rf_identity(
        "main-identity",
        some,
        "(1-u)^(eps N) L(pi, u) = Z(pi, u) Z(pi', u^(2/n'))^(n') / Z2(pi, -u)",
        &inv_p,
        &rz.z.mul(&quotient),
    ));
    out.push(rf_identity(
        "gallery-quotient-equals-correction",
        some,
        "Z(pi', u^(2/n'))^(n') / Z2(pi, -u) = correction factor",
        &quotient,
        &correction_factor(q, rep)?,
    ));

    // structure
    let mut bijective = true;
    for kind in [SystemKind::Walks, SystemKind::Semi, SystemKind::Galleries] {
        bijective &= TransferSystem::build(q, rep, kind)?.is_bijective();
    }
    out.push(
        IdentityRecord::new(
            "transfer-maps-bijective",
            some,
            "walk, semi and gallery maps are bijections",
        )
        .check(bijective, String::new),
    );
    let integral = [&rz.z, &rz.z_semi, &rz.z2]
        .iter()
        .all(|f| f.numerator().is_one() && f.denominator().has_integer_coeffs());
    out.push(
        IdentityRecord::new(
            "inverse-zetas-integral",
            some,
            "1/Z, 1/Z_semi, 1/Z2 in Z[w] with constant term 1",
        )
        .check(integral, String::new),
    );

    if rep == Rep::Spin {
        let odd_zero = geodesic.iter().step_by(2).all(|&c| c == 0);
        out.push(
            IdentityRecord::new(
                "spin-walk-parity",
                some,
                "Z(spin) is a function of u^2; Ñ_n = 0 for odd n",
            )
            .check(rz.z.is_even_in_u() && odd_zero, || format!("Ñ = {geodesic:?}")),
        );
    }
    if let Some(kd) = q.klein_data() {
        if rs.kind == RootKind::C2 && kd.type_rep == rep {
            let odd_zero = galleries.iter().step_by(2).all(|&c| c == 0);
            out.push(
                IdentityRecord::new(
                    "type-gallery-parity",
                    some,
                    "Z2(pi) is a function of u^2 when Gamma has type pi",
                )
                .check(rz.z2.is_even_in_u() && odd_zero, || format!("G = {galleries:?}")),
            );
        }
    }
    Ok(out)
}

/// Largest |c| scanned when checking lambda-set cardinalities.
fn lambda_window(k: i64) -> i64 {
    2 * k + 2
}

fn group_identities(q: &QuotientGroup) -> Result<Vec<IdentityRecord>> {
    let mut out = Vec::new();
    let Some(kd) = q.klein_data() else {
        return Ok(out);
    };
    let (sigma, t) = (kd.sigma, kd.t);
    let ts = t.compose(&sigma);
    let relations = t.compose(&sigma) == sigma.compose(&t.inverse())
        && sigma.compose(&sigma) == AffineMap::translation_by(kd.k * kd.alpha)
        && ts.compose(&ts) == sigma.compose(&sigma);
    out.push(
        IdentityRecord::new(
            "klein-relations",
            None,
            "t sigma = sigma t^-1, sigma^2 = (t sigma)^2 = translation by k alpha",
        )
        .check(relations, String::new),
    );

    let odd_kn = kd.k % kd.n == 0 && (kd.k / kd.n) % 2 != 0;
    let mut parity = (kd.b % 2 != 0) == odd_kn && (kd.m_axes == 2) == (kd.b % 2 == 0);
    if q.rs.kind == RootKind::C2 && kd.n == 1 {
        parity &= kd.b % 2 == 0;
    }
    out.push(
        IdentityRecord::new(
            "irrational-axis-parity",
            None,
            "b odd <=> k/n odd; C2 with n = 1 forces b even",
        )
        .check(parity, || format!("b = {}, k = {}, n = {}", kd.b, kd.k, kd.n)),
    );

    let mut bad = Vec::new();
    let w = lambda_window(kd.k);
    for m in [1, 3] {
        for c in -w..=w {
            for d in -6..=6i64 {
                if d == 0 {
                    continue;
                }
                let v: LatticeVector = c * kd.alpha + d * kd.beta;
                if !q.rs.in_coroot_lattice(v) {
                    continue;
                }
                let s = lambda_set_size(q, Glide::Sigma, m, v)?;
                let ts = lambda_set_size(q, Glide::TSigma, m, v)?;
                let expected = lambda_set_expected(q, m, v).expect("klein");
                if s != expected || ts != s {
                    bad.push(format!("m={m} v={v}: sigma {s}, t sigma {ts}, expected {expected}"));
                }
            }
        }
    }
    out.push(
        IdentityRecord::new(
            "lambda-set-cardinalities",
            None,
            "|A ∩ Λ(g^m, v)| is k or 0 and agrees for g = sigma, t sigma",
        )
        .check(bad.is_empty(), || bad.join("; ")),
    );
    Ok(out)
}

/// Exact L-polynomial check used by tests: `P` equals `1/Z · corr⁻¹`.
pub fn expected_l_polynomial(q: &QuotientGroup, rep: Rep) -> Result<Poly> {
    let z = zeta_walks(q, rep)?;
    let f = z.mul(&correction_factor(q, rep)?).inv()?;
    if !f.denominator().is_one() {
        return Err(Error::Invariant("Z times correction is not 1/polynomial".into()));
    }
    Ok(f.numerator().clone())
}
