use atlas_core::invariants::chern_coords;
use atlas_core::realizer::{
    audit_region, check_decomposition, decompose, extend_point, extend_region, plan_even, plan_odd, plan_point,
    region_points, Decomposition, Mode, PointStatus, RealizeError, Seed,
};
use atlas_core::surgery::{evaluate_plan, Pi1};
use fpgroups::VerdictLevel;
use proptest::prelude::*;

/// Every tuple with components up to `4n` solving both equations.
fn all_tuples(m: i64, n: i64) -> Vec<Decomposition> {
    let top = 4 * n as u32;
    let mut out = Vec::new();
    for b in 0..=top {
        for c in 0..=top {
            for g in 0..=top {
                let partial = 2 * c as i64 + 3 * b as i64 + 4 * g as i64;
                if partial > m {
                    break;
                }
                let d = (m - partial) as u32;
                let used = (b + c + d + g) as i64;
                if used <= n && (g == 0 || b >= 1) {
                    out.push(Decomposition { b, c, d, g, k: (n - used) as u32 });
                }
            }
        }
    }
    out
}

#[test]
fn decompose_against_exhaustive_search() {
    for n in 1..=6 {
        for m in 0..4 * n {
            let t = decompose(m, n).unwrap();
            let all = all_tuples(m, n);
            assert!(all.contains(&t), "({m}, {n}) -> {t}");
            assert!(all.iter().all(|u| check_decomposition(m, n, u)));
        }
    }
    assert_eq!(all_tuples(1, 2), [Decomposition { b: 0, c: 0, d: 1, g: 0, k: 1 }]);
    assert_eq!(decompose(1, 2).unwrap(), Decomposition { b: 0, c: 0, d: 1, g: 0, k: 1 });
    for n in 1..8 {
        assert_eq!(decompose(0, n).unwrap(), Decomposition { b: 0, c: 0, d: 0, g: 0, k: n as u32 });
    }
}

#[test]
fn both_recorded_tuples_check() {
    assert!(check_decomposition(39, 11, &Decomposition { b: 1, c: 0, d: 0, g: 9, k: 1 }));
    assert!(check_decomposition(39, 11, &Decomposition { b: 2, c: 0, d: 1, g: 8, k: 0 }));
    assert!(!check_decomposition(1, 2, &Decomposition { b: 1, c: 0, d: 0, g: 9, k: 1 }));
    assert!(!check_decomposition(4, 1, &Decomposition { b: 0, c: 0, d: 0, g: 1, k: 0 }));
}

#[test]
fn decompose_rejects_outside() {
    assert!(matches!(decompose(4, 1), Err(RealizeError::OutOfRegion { .. })));
    assert!(matches!(decompose(0, 0), Err(RealizeError::OutOfRegion { .. })));
    assert!(matches!(plan_even(3, 1, Pi1::Infinite), Err(RealizeError::OddC(3))));
    assert!(matches!(plan_odd(4, 1, Pi1::Infinite), Err(RealizeError::EvenC(4))));
    assert!(matches!(plan_point(99, 2, Pi1::Finite(3)), Err(RealizeError::OutOfRegion { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decomposition_identity(n in 1i64..60, m in 0i64..240) {
        let m = m % (4 * n);
        let t = decompose(m, n).unwrap();
        let (c, chi) = (8 * t.g + 6 * t.b + 4 * t.c + 2 * t.d, t.b + t.c + t.d + t.g + t.k);
        prop_assert_eq!((i64::from(c), i64::from(chi)), (2 * m, n));
    }

    #[test]
    fn plans_land_on_their_targets(chi in 1i64..7, c in 0i64..56, finite in any::<bool>()) {
        let c = c % (8 * chi);
        let pi1 = if finite { Pi1::Finite(3) } else { Pi1::Infinite };
        let plan = plan_point(c, chi, pi1).unwrap();
        prop_assert_eq!(plan.target.map(|t| (t.c1sq, t.chi_h, t.pi1)), Some((c, chi, pi1)));
        let s = evaluate_plan(&plan).unwrap();
        prop_assert_eq!(chern_coords(&s.invariants).lattice(), Some((c, chi)));
        prop_assert_eq!(&s.closure.unwrap().abelianization, &pi1.abelian());
    }
}

#[test]
fn elliptic_branch_numbers() {
    let s = evaluate_plan(&plan_even(0, 1, Pi1::Finite(3)).unwrap()).unwrap();
    // E'(1) has e = 12, sigma = -8; the torus sum with T4 adds nothing
    assert_eq!((s.invariants.e, s.invariants.sigma), (12, -8));
    assert_eq!(chern_coords(&s.invariants).lattice(), Some((0, 1)));
}

#[test]
fn extension_shifts_exactly() {
    for (seed, base) in [(Seed::sigma_four(), (364, 45)), (Seed::sigma_two(), (194, 24))] {
        for mode in [Mode::Open, Mode::Closed] {
            let out = extend_region(&seed, mode, 2, Pi1::Infinite).unwrap();
            assert!(!out.is_empty());
            for ((c, chi), plan) in out {
                let t = plan.target.unwrap();
                assert_eq!((t.c1sq, t.chi_h), (c, chi));
                let (cp, chip) = (c - base.0, chi - base.1);
                assert!((1..=2).contains(&chip) && cp >= 0 && cp <= 8 * chip);
                if mode == Mode::Open {
                    assert!(cp < 8 * chip);
                }
            }
        }
    }
    let p = extend_point(&Seed::sigma_four(), 0, 1, Pi1::Finite(3)).unwrap();
    let s = evaluate_plan(&p).unwrap();
    assert_eq!(chern_coords(&s.invariants).lattice(), Some((364, 46)));
}

#[test]
fn small_region_is_complete() {
    // independent count: sum over chi of 8 chi
    let expected: usize = (1..=3).map(|chi| 8 * chi).sum();
    assert_eq!(region_points(3).len(), expected);
    assert_eq!(expected, 48);
    assert_eq!(region_points(1), (0..8).map(|c| (c, 1)).collect::<Vec<_>>());
    for pi1 in [Pi1::Finite(3), Pi1::Infinite] {
        let r = audit_region(3, pi1);
        assert_eq!(r.points.len(), expected);
        assert_eq!(r.count("Unrealized"), 0);
        let order: Vec<(i64, i64)> = r.points.iter().map(|p| (p.c1sq, p.chi_h)).collect();
        assert_eq!(order, region_points(3));
    }
}

#[test]
fn worked_point_present() {
    let r = audit_region(11, Pi1::Finite(3));
    let p = r.points.iter().find(|p| (p.c1sq, p.chi_h) == (78, 11)).unwrap();
    assert!(matches!(p.status, PointStatus::Realized { level: VerdictLevel::ProvenCyclic, .. }));
    let t = decompose(39, 11).unwrap();
    assert!(check_decomposition(39, 11, &t));
}
