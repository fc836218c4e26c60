use atlas_core::invariants::{
    betti, blowup_invariants, chern_coords, cover_invariants, sum_invariants, CharInvariants, Minimality, Parity,
};
use num_rational::Ratio;
use proptest::prelude::*;

fn inv() -> impl Strategy<Value = CharInvariants> {
    (-200i64..200, -200i64..200).prop_map(|(e, s)| CharInvariants::new(e, s))
}

/// Invariants whose `e + sigma` is divisible by 4.
fn lattice_inv() -> impl Strategy<Value = CharInvariants> {
    (-100i64..100, -50i64..50).prop_map(|(e, k)| CharInvariants::new(e, 4 * k - e))
}

proptest! {
    #[test]
    fn lattice_identities(i in lattice_inv()) {
        let (c, chi) = chern_coords(&i).lattice().unwrap();
        prop_assert_eq!(4 * chi, i.e + i.sigma);
        prop_assert_eq!(c - 8 * chi, i.sigma);
        let (e, s) = chern_coords(&i).euler_signature();
        prop_assert_eq!((e, s), (Ratio::from_integer(i.e), Ratio::from_integer(i.sigma)));
    }

    #[test]
    fn sums_commute_and_associate(a in inv(), b in inv(), c in inv(), g in 1u32..5, h in 1u32..5) {
        let ab = sum_invariants(&a, &b, g).unwrap();
        let ba = sum_invariants(&b, &a, g).unwrap();
        prop_assert_eq!((ab.e, ab.sigma), (ba.e, ba.sigma));
        let left = sum_invariants(&ab, &c, h).unwrap();
        let right = sum_invariants(&a, &sum_invariants(&b, &c, h).unwrap(), g).unwrap();
        prop_assert_eq!((left.e, left.sigma), (right.e, right.sigma));
    }

    #[test]
    fn torus_sums_add_coordinates(a in inv(), b in inv()) {
        let s = chern_coords(&sum_invariants(&a, &b, 1).unwrap());
        let (x, y) = (chern_coords(&a), chern_coords(&b));
        prop_assert_eq!(s.c1sq, x.c1sq + y.c1sq);
        prop_assert_eq!(s.chi_h, x.chi_h + y.chi_h);
    }

    #[test]
    fn blowups_keep_chi(a in inv(), n in 0u32..30) {
        let b = blowup_invariants(&a, n);
        prop_assert_eq!(b.e + b.sigma, a.e + a.sigma);
        prop_assert_eq!(chern_coords(&b).chi_h, chern_coords(&a).chi_h);
        prop_assert_eq!(chern_coords(&b).c1sq, chern_coords(&a).c1sq - i64::from(n));
        if n > 0 {
            prop_assert_eq!(b.minimal, Minimality::NonMinimal);
            prop_assert_eq!(b.parity, Parity::Odd);
        }
    }

    #[test]
    fn covers_are_repeated_addition(a in inv(), d in 1u32..12) {
        let (mut e, mut s) = (0, 0);
        for _ in 0..d {
            e += a.e;
            s += a.sigma;
        }
        prop_assert_eq!(cover_invariants(&a, d), (e, s));
    }

    #[test]
    fn betti_reassembles(i in inv(), b1 in 0u32..3) {
        let mut i = i;
        i.b1 = b1;
        if let Ok((b2, plus, minus)) = betti(&i) {
            prop_assert_eq!(plus + minus, b2);
            prop_assert_eq!(plus - minus, i.sigma);
            prop_assert_eq!(2 - 2 * i64::from(b1) + b2, i.e);
        }
    }
}

#[test]
fn b1_is_not_inferred() {
    // same e and sigma, different first Betti numbers
    let mut a = CharInvariants::new(6, -2);
    assert_eq!(betti(&a), Ok((4, 1, 3)));
    a.b1 = 1;
    assert_eq!(betti(&a), Ok((6, 2, 4)));
}
