use m12_core::polyalg::{ddf_partition, factor_rational, resultant};
use m12_core::{FpPoly, Int, IntPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    (
        prop::collection::vec(-20i64..20, 1..=max_deg),
        1i64..5,
        any::<bool>(),
    )
        .prop_map(|(mut c, lead, neg)| {
            c.push(if neg { -lead } else { lead });
            IntPoly::from_i64(&c)
        })
}

/// `f(x + c)` by Horner.
fn shift(f: &IntPoly, c: i64) -> IntPoly {
    let xc = IntPoly::from_i64(&[c, 1]);
    let mut acc = IntPoly::zero();
    for a in f.coeffs().iter().rev() {
        acc = &(&acc * &xc) + &IntPoly::constant(a.clone());
    }
    acc
}

fn up_to_sign(a: &IntPoly, b: &IntPoly) -> bool {
    a == b || *a == -b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn discriminant_is_shift_invariant(f in poly(6), c in -7i64..7) {
        prop_assert_eq!(shift(&f, c).discriminant(), f.discriminant());
    }

    #[test]
    fn discriminant_of_product(f in poly(3), g in poly(3)) {
        // disc(fg) = disc(f) disc(g) res(f, g)^2
        let r = resultant(&f, &g);
        prop_assert_eq!((&f * &g).discriminant(), f.discriminant() * g.discriminant() * &r * &r);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in poly(4), g in poly(4)) {
        let common = f.gcd(&g).deg() > 0;
        prop_assert_eq!(resultant(&f, &g).is_zero(), common);
    }

    #[test]
    fn rational_factors_multiply_back(f in poly(4), g in poly(3), square: bool) {
        let mut h = &f * &g;
        if square {
            h = &h * &g;
        }
        let fac = factor_rational(&h).unwrap();
        let mut prod = IntPoly::one();
        for (q, e) in &fac {
            prop_assert!(q.deg() >= 1 && q.is_primitive());
            for _ in 0..*e {
                prod = &prod * q;
            }
        }
        prop_assert!(up_to_sign(&prod, &h.primitive_part()));
        let total: u32 = fac.iter().map(|(_, e)| *e).sum();
        prop_assert!(total >= 2);
    }

    #[test]
    fn ddf_accounts_for_every_degree(c in prop::collection::vec(0u64..1_000, 2..12), p in prop::sample::select(vec![3u64, 7, 101, 997])) {
        let mut c = c;
        c.push(1);
        let f = FpPoly::new(p, c);
        prop_assume!(f.is_squarefree());
        let parts = f.ddf();
        let total: usize = parts.iter().map(|(g, _)| g.deg()).sum();
        prop_assert_eq!(total, f.deg());
        for (g, d) in &parts {
            prop_assert_eq!(g.deg() % d, 0);
            for h in g.edf(*d, 7) {
                prop_assert_eq!(h.deg(), *d);
            }
        }
    }

    #[test]
    fn mod_p_pattern_sums_to_degree(f in poly(8), p in prop::sample::select(vec![5u64, 13, 10_007])) {
        if let Some(part) = ddf_partition(&f, p) {
            prop_assert_eq!(part.total() as usize, f.deg());
        }
    }

    #[test]
    fn text_round_trip(f in poly(8)) {
        prop_assert_eq!(IntPoly::from_text(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn eval_respects_products(f in poly(4), g in poly(4), x in -30i64..30) {
        let x = Int::from(x);
        prop_assert_eq!((&f * &g).eval(&x), f.eval(&x) * g.eval(&x));
        prop_assert!(!IntPoly::one().is_zero());
        prop_assert_eq!(IntPoly::one().eval(&x), Int::one());
    }
}
