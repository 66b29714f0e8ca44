use m12_core::covers::{self, rat_discriminant, specialize, specialize_raw, CoverId};
use m12_core::{Int, Rat};
use num_traits::Zero;
use proptest::prelude::*;

fn value() -> impl Strategy<Value = Rat> {
    (-5000i64..5000, 1i64..500).prop_map(|(n, d)| Rat::new(Int::from(n), Int::from(d)))
}

fn base_cover() -> impl Strategy<Value = CoverId> {
    let ids: Vec<CoverId> = CoverId::ALL
        .into_iter()
        .filter(|id| *id != CoverId::E && covers::spec(*id).is_ok_and(|s| s.is_rational()))
        .collect();
    prop::sample::select(ids)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn specializations_are_primitive_integral(id in base_cover(), v in value()) {
        let spec = covers::spec(id).unwrap();
        match specialize(id, &v) {
            Ok(f) => {
                prop_assert!(f.poly.is_primitive());
                prop_assert_eq!(f.poly.deg(), f.degree);
                prop_assert_eq!(f.degree % spec.triple.degree() as usize, 0);
                prop_assert!(f.poly.lc() > Int::zero());
            }
            Err(e) => prop_assert!(e.to_string().contains("cusp") || e.to_string().contains("degenerate"), "{}", e),
        }
    }

    /// The printed `f_B` has discriminant `C (s^2 - 5)^6` for one constant `C`.
    #[test]
    fn b_discriminant_is_sixth_power_law(s in value()) {
        let five = Rat::from_integer(Int::from(5));
        let q = &s * &s - &five;
        prop_assume!(!q.is_zero());
        let law = |x: &Rat| rat_discriminant(&specialize_raw(CoverId::B, x).unwrap()) / num_traits::pow((x * x) - &five, 6);
        prop_assert_eq!(law(&s), law(&Rat::zero()));
    }
}
