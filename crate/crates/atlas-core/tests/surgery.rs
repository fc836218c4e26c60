use atlas_core::catalog::BlockRef;
use atlas_core::invariants::chern_coords;
use atlas_core::realizer::{eight_torus_plan, plan_point, product_plan, sigma_line_plan, six_torus_plan};
use atlas_core::surgery::{apply_step, evaluate_plan, ConstructionPlan, ManifoldState, Pi1, PlanStep};
use proptest::prelude::*;

fn ab(s: &ManifoldState) -> String {
    s.closure.as_ref().unwrap().abelianization.to_string()
}

fn replay(plan: &ConstructionPlan) -> Vec<ManifoldState> {
    let mut s = ManifoldState::from_block(&plan.base.lookup().unwrap());
    let mut out = vec![s.clone()];
    for step in &plan.steps {
        s = apply_step(s, step).unwrap();
        out.push(s.clone());
    }
    out
}

fn fixed_plans() -> Vec<ConstructionPlan> {
    let mut v = Vec::new();
    for pi1 in [Pi1::Infinite, Pi1::Finite(3)] {
        v.push(product_plan(1, pi1));
        v.push(six_torus_plan(pi1));
        v.push(eight_torus_plan(pi1));
        v.push(sigma_line_plan(3, 1, pi1));
    }
    v
}

#[test]
fn step_arithmetic() {
    for plan in fixed_plans() {
        let states = replay(&plan);
        for (step, w) in plan.steps.iter().zip(states.windows(2)) {
            let (a, b) = (&w[0].invariants, &w[1].invariants);
            match step {
                PlanStep::Luttinger { .. } | PlanStep::TorusSurgery { .. } => {
                    assert_eq!((a.e, a.sigma), (b.e, b.sigma), "{step}");
                }
                PlanStep::BlowUp { count } => {
                    assert_eq!((b.e, b.sigma), (a.e + i64::from(*count), a.sigma - i64::from(*count)));
                }
                PlanStep::Sum { left_surface, right_block, .. } => {
                    let r = right_block.lookup().unwrap().invariants;
                    let g = i64::from(w[0].surface(left_surface).unwrap().genus);
                    assert_eq!((b.e, b.sigma), (a.e + r.e + 4 * g - 4, a.sigma + r.sigma), "{step}");
                }
            }
        }
    }
}

#[test]
fn deterministic() {
    for plan in fixed_plans() {
        assert_eq!(evaluate_plan(&plan), evaluate_plan(&plan));
    }
}

#[test]
fn blowups_shift_by_one() {
    let p = ConstructionPlan::new(BlockRef::new("B")).then(PlanStep::BlowUp { count: 3 });
    let s = evaluate_plan(&p).unwrap();
    assert_eq!((s.invariants.e, s.invariants.sigma), (9, -5));
    assert_eq!(chern_coords(&s.invariants).lattice(), Some((3, 1)));
}

#[test]
fn dial_changes_only_flags() {
    let mut dialed = 0;
    for plan in fixed_plans().into_iter().filter(|p| p.has_dial()) {
        dialed += 1;
        let a = evaluate_plan(&plan.with_dial(1)).unwrap();
        let b = evaluate_plan(&plan.with_dial(2)).unwrap();
        assert_eq!((a.invariants.e, a.invariants.sigma, a.invariants.b1), (b.invariants.e, b.invariants.sigma, b.invariants.b1));
        assert_eq!(ab(&a), ab(&b));
        assert!(a.invariants.symplectic && !b.invariants.symplectic);
        assert!(a.admits_infinite_family && b.admits_infinite_family);
    }
    assert!(dialed >= 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dial_invariance_on_realized_points(chi in 1i64..5, c in 0i64..40, n in 1i64..6, finite in any::<bool>()) {
        let c = c % (8 * chi);
        let pi1 = if finite { Pi1::Finite(3) } else { Pi1::Infinite };
        let plan = plan_point(c, chi, pi1).unwrap();
        let a = evaluate_plan(&plan.with_dial(1)).unwrap();
        let b = evaluate_plan(&plan.with_dial(n)).unwrap();
        prop_assert_eq!((a.invariants.e, a.invariants.sigma), (b.invariants.e, b.invariants.sigma));
        prop_assert_eq!(ab(&a), ab(&b));
    }
}

#[test]
fn skipped_surgery_line() {
    for n in 3..=6u32 {
        let s = evaluate_plan(&sigma_line_plan(n, 1, Pi1::Infinite)).unwrap();
        assert_eq!((s.invariants.e, s.invariants.sigma), (4 * i64::from(n) + 1, -1), "n = {n}");
        assert_eq!(ab(&s), "Z");
    }
}

#[test]
fn documented_examples() {
    let b = ConstructionPlan::new(BlockRef::new("B")).then(PlanStep::luttinger("T2", "m", 1, 1));
    let z = evaluate_plan(&b).unwrap();
    assert_eq!(ab(&z), "Z");
    assert_eq!(chern_coords(&z.invariants).lattice(), Some((6, 1)));
    let zp = evaluate_plan(&b.clone().then(PlanStep::luttinger("T1", "l", 1, 3))).unwrap();
    assert_eq!(ab(&zp), "Z_3");
    assert_eq!((zp.invariants.e, zp.invariants.sigma, zp.invariants.b1), (6, -2, 0));

    let d = ConstructionPlan::new(BlockRef::new("D"))
        .then(PlanStep::torus_sum("T1", BlockRef::new("E").with("k", 1), "T"));
    let s = evaluate_plan(&d).unwrap();
    assert_eq!((s.invariants.e, s.invariants.sigma), (22, -14));
    assert_eq!(ab(&s), "Z");
}
