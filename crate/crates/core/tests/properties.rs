use std::sync::OnceLock;

use apartment_zeta::algebra::{
    det_identity_minus_wt, rat, reconstruct_poly_from_series, IntMatrix, RECONSTRUCTION_SLACK,
};
use apartment_zeta::corpus::{self, CorpusConfig};
use apartment_zeta::{
    AffineMap, HalfVector, LatticeVector, Poly, QuotientGroup, Rational, RootKind, RootSystem, Series,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn sample_groups() -> &'static [QuotientGroup] {
    static GROUPS: OnceLock<Vec<QuotientGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        let cfg = CorpusConfig {
            seed: 11,
            tori_per_kind: 6,
            kleins_per_cell: 4,
            ..CorpusConfig::default()
        };
        corpus::generate(&cfg).iter().map(|m| m.build().unwrap()).collect()
    })
}

/// `t^i σ^j` for a Klein bottle, `i v1 + j v2` for a torus.
fn element(q: &QuotientGroup, i: i64, j: i64) -> AffineMap {
    match q.klein_data() {
        Some(kd) => kd.t.pow(i).compose(&kd.sigma.pow(j)),
        None => {
            let [v1, v2] = q.gamma0_basis;
            AffineMap::translation_by(i * v1 + j * v2)
        }
    }
}

fn rational_series(order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec((-5i64..=5, 1i64..=4), order).prop_map(|cs| {
        let mut coeffs = vec![rat(0)];
        coeffs.extend(cs.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())));
        Series::from_coeffs(coeffs)
    })
}

fn cycle_product(perm: &[usize]) -> Poly {
    let mut seen = vec![false; perm.len()];
    let mut out = Poly::one();
    for s in 0..perm.len() {
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            out = &out * &Poly::one_minus_w_pow(len);
        }
    }
    out
}

fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut total = BigInt::from(0);
    for j in 0..n {
        if m[0][j] == BigInt::from(0) {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn eval(p: &Poly, x: i64) -> Rational {
    p.coeffs().iter().rev().fold(rat(0), |acc, c| acc * rat(x) + c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_log_round_trip(f in rational_series(10)) {
        let e = f.exp().unwrap();
        prop_assert_eq!(e.log().unwrap(), f.clone());
        let one_plus = Series::one(10).add(&f);
        prop_assert_eq!(one_plus.log().unwrap().exp().unwrap(), one_plus);
    }

    #[test]
    fn permutation_determinant_is_cycle_product(
        perm in (1usize..=64).prop_flat_map(|n| Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    ) {
        let det = det_identity_minus_wt(&IntMatrix::permutation(&perm));
        prop_assert_eq!(det, cycle_product(&perm));
    }

    #[test]
    fn berkowitz_matches_cofactor_expansion(
        rows in (1usize..=8).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-3i64..=3, n), n))
    ) {
        let n = rows.len();
        let p = det_identity_minus_wt(&IntMatrix::from_rows(&rows));
        let big: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(p.coeff(n), Rational::from_integer(sign * cofactor_det(&big)));
        for x in [-2i64, 1, 3] {
            // det(I - xT) by cofactors
            let m: Vec<Vec<BigInt>> = (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(i64::from(i == j)) - BigInt::from(x) * &big[i][j]).collect())
                .collect();
            prop_assert_eq!(eval(&p, x), Rational::from_integer(cofactor_det(&m)));
        }
    }

    #[test]
    fn polynomial_reconstruction(tail in prop::collection::vec(-4i64..=4, 1..=10)) {
        let mut coeffs = vec![1i64];
        coeffs.extend(tail);
        let p = Poly::from_ints(&coeffs);
        let bound = coeffs.len() - 1;
        let s = Series::from_poly(&p, bound + RECONSTRUCTION_SLACK).reciprocal().unwrap();
        prop_assert_eq!(reconstruct_poly_from_series(&s, bound).unwrap(), p);
        let short = Series::from_poly(&Poly::one(), bound + RECONSTRUCTION_SLACK - 1);
        prop_assert!(reconstruct_poly_from_series(&short, bound).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn action_is_free(idx in any::<prop::sample::Index>(), i in -3i64..=3, j in -3i64..=3, x2 in -40i64..=40, y2 in -40i64..=40) {
        prop_assume!(i != 0 || j != 0);
        let groups = sample_groups();
        let q = &groups[idx.index(groups.len())];
        let g = element(q, i, j);
        let x = HalfVector::new(x2, y2);
        prop_assert_ne!(g.apply_half(x), x, "{:?} fixes {:?}", g, x);
    }

    #[test]
    fn canonical_form_is_an_orbit_invariant(
        idx in any::<prop::sample::Index>(),
        i in -3i64..=3, j in -3i64..=3,
        x2 in -40i64..=40, y2 in -40i64..=40,
        d in any::<prop::sample::Index>(),
    ) {
        let groups = sample_groups();
        let q = &groups[idx.index(groups.len())];
        let weights = q.rs.weights(q.kind().reps()[0]).unwrap();
        let dir = weights[d.index(weights.len())];
        let x = HalfVector::new(x2, y2);
        let c = q.canonical_state(x, [dir]);
        prop_assert_eq!(q.canonical_state(c.0, c.1), c);
        let g = element(q, i, j);
        prop_assert_eq!(q.canonical_state(g.apply_half(x), [g.linear.apply(dir)]), c);
        let v = LatticeVector::new(x2, y2);
        prop_assert_eq!(q.canonical_vertex(g.apply(v)), q.canonical_vertex(v));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn pairing_is_positive_definite(x in -50i64..=50, y in -50i64..=50) {
        prop_assume!(x != 0 || y != 0);
        for kind in [RootKind::A2, RootKind::C2] {
            let rs = RootSystem::new(kind);
            let v = LatticeVector::new(x, y);
            prop_assert!(rs.pairing_int(v, v) > 0);
            for w in &rs.weyl {
                prop_assert_eq!(rs.pairing_int(w.apply(v), w.apply(v)), rs.pairing_int(v, v));
            }
        }
    }
}
