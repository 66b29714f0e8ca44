use m12_core::covers::{self, specialize, CoverId};
use m12_core::exactnum::val_int;
use m12_core::ramify::order::{dedekind_maximal, FieldAnalyzer};
use m12_core::specsets::predict_tame;
use m12_core::{Int, IntPoly, Rat};
use proptest::prelude::*;

fn irreducible_like() -> impl Strategy<Value = IntPoly> {
    // x^n + p(...) is Eisenstein at p when the constant term is p times a unit
    (
        2usize..7,
        prop::sample::select(vec![2i64, 3, 5, 7]),
        prop::collection::vec(-6i64..6, 7),
        1i64..6,
    )
        .prop_map(|(n, p, mids, u)| {
            let mut c: Vec<i64> = mids[..n].iter().map(|m| p * m).collect();
            c[0] = p * if u % p == 0 { u + 1 } else { u };
            c.push(1);
            IntPoly::from_i64(&c)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn field_valuation_bounds(f in irreducible_like(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let fa = FieldAnalyzer::new(&f).unwrap();
        let vp = fa.poly_valuation(p);
        let vf = fa.valuation(p).unwrap();
        prop_assert!(vf >= 0 && vf <= vp);
        prop_assert_eq!((vp - vf) % 2, 0);
        if dedekind_maximal(&f, p).unwrap() {
            prop_assert_eq!(vf, vp);
        }
    }

    #[test]
    fn tame_valuation_matches_prediction(
        id in prop::sample::select(vec![CoverId::B, CoverId::A2, CoverId::C2, CoverId::D2]),
        p in prop::sample::select(vec![7u64, 13, 17, 19]),
        j in 1u32..6, u in 1i64..40, w in 1i64..40, inf: bool,
    ) {
        let spec = covers::spec(id).unwrap();
        prop_assume!(!spec.bad_primes().contains(&p) && u % p as i64 != 0 && w % p as i64 != 0);
        let pj = Rat::from_integer(num_traits::pow(Int::from(p), j as usize));
        let q = Rat::new(Int::from(u), Int::from(w));
        let value = if inf { &q / &pj } else { &q * &pj };
        let f = specialize(id, &value).unwrap();
        let fa = FieldAnalyzer::new(&f.poly).unwrap();
        let predicted = predict_tame(id, &value, p).unwrap() as i64;
        prop_assert_eq!(fa.valuation(p).unwrap(), predicted, "{}({})", id.name(), value);
        prop_assert!(val_int(fa.poly_disc(), p) as i64 >= predicted);
    }
}

#[test]
fn tame_example_is_not_vacuous() {
    let seven = Rat::from_integer(Int::from(7));
    let f = specialize(CoverId::D2, &seven).unwrap();
    let fa = FieldAnalyzer::new(&f.poly).unwrap();
    assert_eq!(predict_tame(CoverId::D2, &seven, 7).unwrap(), 16);
    assert_eq!(fa.valuation(7).unwrap(), 16);
}
