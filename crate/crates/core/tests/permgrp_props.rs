use m12_core::partition::Partition;
use m12_core::permgrp::{group_order, monodromy, Bsgs, Perm};
use proptest::prelude::*;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn perms(n: usize) -> impl Strategy<Value = (Perm, Perm, Perm)> {
    (perm(n), perm(n), perm(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative((a, b, c) in perms(12)) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert!(a.then(&a.inverse()).is_identity());
        prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&a.inverse()));
    }

    #[test]
    fn power_cycle_type_is_predicted(a in perm(24), j in 0u64..30) {
        prop_assert_eq!(a.pow(j as i64).cycle_type(), a.cycle_type().power(j));
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.cycle_type().order(), a.order());
    }

    #[test]
    fn conjugation_keeps_cycle_type((a, h, _) in perms(12)) {
        prop_assert_eq!(a.conjugate_by(&h).cycle_type(), a.cycle_type());
    }

    #[test]
    fn bsgs_order_divides_and_contains((a, b, c) in perms(8)) {
        let g = Bsgs::new(8, &[a.clone(), b.clone()]);
        prop_assert!(40_320 % g.order() == 0);
        prop_assert!(g.contains(&a.then(&b).then(&a.inverse())));
        let with_c = Bsgs::new(8, &[a, b, c.clone()]);
        prop_assert_eq!(with_c.order() % g.order(), 0);
        prop_assert_eq!(g.contains(&c), with_c.order() == g.order());
    }

    #[test]
    fn m12_membership_of_words(w in prop::collection::vec(0u8..2, 0..40)) {
        let m = monodromy("D").unwrap();
        let g = Bsgs::new(12, &[m.g0().clone(), m.g1().clone()]);
        let mut x = Perm::identity(12);
        for s in w {
            x = x.then(if s == 0 { m.g0() } else { m.g1() });
        }
        prop_assert!(g.contains(&x));
    }
}

#[test]
fn m12_order_from_d() {
    let m = monodromy("D").unwrap();
    assert_eq!(group_order(&[m.g0().clone(), m.g1().clone()]), 95_040);
    assert_eq!(
        Partition::new(vec![4, 4, 2, 2]).power(2),
        Partition::new(vec![2, 2, 2, 2, 1, 1, 1, 1])
    );
}
