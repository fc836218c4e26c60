use atlas_core::catalog::BlockRef;
use atlas_core::classifier::{homeo_equal, omega2_type, prototype, HomeoVerdict, Omega2Type, PrototypeName, Tail};
use atlas_core::invariants::Parity;
use atlas_core::realizer::{audit_region, plan_point, product_plan, six_torus_plan};
use atlas_core::surgery::{evaluate_plan, ConstructionPlan, Pi1, PlanStep};

#[test]
fn finite_cyclic_formula_over_region() {
    let r = audit_region(6, Pi1::Finite(3));
    let mut checked = 0;
    for p in &r.points {
        let (c, chi) = (p.c1sq, p.chi_h);
        let name = prototype(p.state.as_ref().unwrap(), Pi1::Finite(3)).unwrap();
        if (3 * (c - 8 * chi)) % 16 == 0 {
            assert!(matches!(name, PrototypeName::Unclassified(_)), "({c}, {chi})");
            continue;
        }
        checked += 1;
        assert_eq!(name.to_string(), format!("{} CP2 # {} -CP2 # ~L(3,1)xS1", 2 * chi - 1, 10 * chi - c - 1));
    }
    assert!(checked > 150);
}

#[test]
fn infinite_cyclic_formula_over_region() {
    let r = audit_region(6, Pi1::Infinite);
    for p in r.points.iter().filter(|p| p.chi_h >= 2) {
        let (c, chi) = (p.c1sq, p.chi_h);
        let name = prototype(p.state.as_ref().unwrap(), Pi1::Infinite).unwrap();
        assert_eq!(name.to_string(), format!("{} CP2 # {} -CP2 # S1xS3", 2 * chi, 10 * chi - c));
    }
    // chi = 1 sits below the stable range: b2 - |sigma| = 4
    for p in r.points.iter().filter(|p| p.chi_h == 1) {
        assert!(matches!(prototype(p.state.as_ref().unwrap(), Pi1::Infinite), Ok(PrototypeName::Unclassified(_))));
    }
}

#[test]
fn prototype_ignores_the_dial() {
    for (c, chi) in [(6, 1), (2, 2), (14, 2), (23, 3), (78, 11)] {
        for pi1 in [Pi1::Finite(3), Pi1::Infinite] {
            let plan = plan_point(c, chi, pi1).unwrap();
            let names: Vec<PrototypeName> =
                [1, 2, 5].iter().map(|&n| prototype(&evaluate_plan(&plan.with_dial(n)).unwrap(), pi1).unwrap()).collect();
            assert!(names.windows(2).all(|w| w[0] == w[1]), "({c}, {chi}) {pi1}");
        }
    }
}

#[test]
fn rendering() {
    let a = PrototypeName::Manifold { b2plus: 4, b2minus: 18, tail: Tail::S1xS3 };
    assert_eq!(a.to_string(), "4 CP2 # 18 -CP2 # S1xS3");
    let b = PrototypeName::Manifold { b2plus: 1, b2minus: 3, tail: Tail::SurgeredLens(3) };
    assert_eq!(b.to_string(), "1 CP2 # 3 -CP2 # ~L(3,1)xS1");
}

#[test]
fn documented_classifications() {
    let d = ConstructionPlan::new(BlockRef::new("D"))
        .then(PlanStep::torus_sum("T1", BlockRef::new("E").with("k", 1), "T"));
    let s = evaluate_plan(&d).unwrap();
    assert_eq!(prototype(&s, Pi1::Infinite).unwrap().to_string(), "4 CP2 # 18 -CP2 # S1xS3");

    let s = evaluate_plan(&six_torus_plan(Pi1::Finite(3))).unwrap();
    assert_eq!(prototype(&s, Pi1::Finite(3)).unwrap().to_string(), "1 CP2 # 3 -CP2 # ~L(3,1)xS1");

    let s = evaluate_plan(&product_plan(1, Pi1::Infinite)).unwrap();
    assert_eq!((s.invariants.e, s.invariants.sigma), (5, -1));
    assert!(matches!(prototype(&s, Pi1::Infinite), Ok(PrototypeName::Unclassified(_))));
}

#[test]
fn omega2_exclusions() {
    assert_eq!(omega2_type(Parity::Odd, Some(3), 6, -2), Ok(Omega2Type::TypeI));
    assert_eq!(omega2_type(Parity::Odd, Some(16), 6, -2), Ok(Omega2Type::Undetermined));
    assert_eq!(omega2_type(Parity::Odd, Some(3), 184, 0), Ok(Omega2Type::Undetermined));
    assert_eq!(omega2_type(Parity::Even, None, 4, 0), Ok(Omega2Type::Undetermined));
    assert_eq!(omega2_type(Parity::Odd, None, 5, -1), Ok(Omega2Type::TypeI));
}

#[test]
fn homeomorphism_verdicts() {
    let plan = six_torus_plan(Pi1::Finite(3));
    let a = evaluate_plan(&plan.with_dial(1)).unwrap();
    let b = evaluate_plan(&plan.with_dial(2)).unwrap();
    assert_eq!(homeo_equal(&a, &b), HomeoVerdict::Homeomorphic);

    let z = evaluate_plan(&six_torus_plan(Pi1::Infinite)).unwrap();
    assert_eq!(homeo_equal(&a, &z), HomeoVerdict::Distinct);

    // sigma = -16 with Z_3: omega2 is undetermined on both sides
    let x = evaluate_plan(&plan_point(0, 2, Pi1::Finite(3)).unwrap()).unwrap();
    assert_eq!(x.invariants.sigma, -16);
    assert_eq!(homeo_equal(&x, &x.clone()), HomeoVerdict::Undetermined);
}
