//! Fixed quotients for benchmarks, from small coroot tori to the largest
//! corpus sizes.

use apartment_zeta::{GroupSpec, LatticeVector, QuotientGroup, RootKind, RootSystem};

fn lv(x: i64, y: i64) -> LatticeVector {
    LatticeVector::new(x, y)
}

/// `(label, group)` pairs in increasing size.
pub fn sample_groups() -> Vec<(&'static str, QuotientGroup)> {
    let specs = [
        (
            "a2_torus_n3",
            RootKind::A2,
            GroupSpec::Torus {
                v1: lv(1, 1),
                v2: lv(-1, 2),
            },
        ),
        (
            "c2_torus_n2",
            RootKind::C2,
            GroupSpec::Torus {
                v1: lv(1, 1),
                v2: lv(1, -1),
            },
        ),
        (
            "a2_klein_n3",
            RootKind::A2,
            GroupSpec::Klein {
                alpha: lv(1, 0),
                beta: lv(0, 1),
                a: 1,
                b: 1,
                m: 1,
            },
        ),
        (
            "a2_torus_n27",
            RootKind::A2,
            GroupSpec::Torus {
                v1: lv(3, 3),
                v2: lv(-3, 6),
            },
        ),
        (
            "c2_klein_st",
            RootKind::C2,
            GroupSpec::Klein {
                alpha: lv(1, 1),
                beta: lv(1, 0),
                a: 3,
                b: 2,
                m: 3,
            },
        ),
        (
            "c2_torus_n66",
            RootKind::C2,
            GroupSpec::Torus {
                v1: lv(6, 0),
                v2: lv(1, 11),
            },
        ),
    ];
    specs
        .into_iter()
        .map(|(label, kind, spec)| {
            (
                label,
                QuotientGroup::build(&RootSystem::new(kind), spec).expect("valid sample"),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    #[test]
    fn samples_build_and_verify() {
        let groups = super::sample_groups();
        assert_eq!(groups.len(), 6);
        for (label, q) in &groups {
            assert!(apartment_zeta::verify(q, None).unwrap().all_hold(), "{label}");
        }
        assert_eq!(groups.last().unwrap().1.size(), 66);
    }
}
