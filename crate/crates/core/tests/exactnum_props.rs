use m12_core::exactnum::{
    exact_root, factor_int, is_prime, is_prime_u64, jacobi, parse_rat, powmod, s_decompose, QuadElt,
};
use m12_core::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 31, 101, 1009, 65537, 1_000_003])
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (
        any::<i64>().prop_filter("nonzero", |v| *v != 0),
        1i64..i64::MAX,
    )
        .prop_map(|(n, d)| Rat::new(Int::from(n), Int::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_recomposes(ps in prop::collection::vec((small_prime(), 1u32..4), 1..6), neg: bool) {
        let mut n = Int::one();
        for (p, e) in &ps {
            n *= num_traits::pow(Int::from(*p), *e as usize);
        }
        if neg {
            n = -n;
        }
        let f = factor_int(&n);
        prop_assert!(f.is_complete());
        prop_assert_eq!(f.recompose(), n);
        for (p, _) in &f.factors {
            prop_assert!(is_prime(p));
        }
    }

    #[test]
    fn arbitrary_u64_factors(n in 2u64..u64::MAX) {
        let f = factor_int(&Int::from(n));
        prop_assert_eq!(f.recompose(), Int::from(n));
        prop_assert!(f.is_complete());
    }

    #[test]
    fn s_decomposition_splits_off_s(x in nonzero_rat(), s in prop::collection::btree_set(small_prime(), 0..4)) {
        let s: Vec<u64> = s.into_iter().collect();
        let d = s_decompose(&x, &s).unwrap();
        prop_assert_eq!(d.recompose(), x);
        for &p in &s {
            prop_assert!(!(&d.num % p).is_zero());
            prop_assert!(!(&d.den % p).is_zero());
        }
    }

    #[test]
    fn rational_text_round_trip(x in nonzero_rat()) {
        prop_assert_eq!(parse_rat(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn exact_roots(x in -10_000i64..10_000, k in 1u32..7) {
        let x = Int::from(x);
        let n = num_traits::pow(x.clone(), k as usize);
        let r = exact_root(&n, k);
        if k % 2 == 0 {
            prop_assert_eq!(r, Some(x.abs()));
        } else {
            prop_assert_eq!(r, Some(x.clone()));
        }
        if k >= 2 && x.abs() >= Int::one() {
            prop_assert_eq!(exact_root(&(n.abs() + 1u32), k), None);
        }
    }

    #[test]
    fn jacobi_is_euler_at_primes(a in any::<i64>(), p in small_prime().prop_filter("odd", |p| *p > 2)) {
        let r = Int::from(a).mod_floor(&Int::from(p));
        let e = powmod(num_traits::ToPrimitive::to_u64(&r).unwrap(), (p - 1) / 2, p);
        let expect = if r.is_zero() { 0 } else if e == 1 { 1 } else { -1 };
        prop_assert_eq!(jacobi(&Int::from(a), &Int::from(p)), expect);
    }

    #[test]
    fn miller_rabin_matches_trial_division(n in 0u64..200_000) {
        let trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime_u64(n), trial);
    }

    #[test]
    fn quadratic_norm_is_multiplicative(
        d in prop::sample::select(vec![-11i64, -1, 5, 13]),
        a in (-50i64..50, 1i64..20), b in (-50i64..50, 1i64..20),
        c in (-50i64..50, 1i64..20), e in (-50i64..50, 1i64..20),
    ) {
        let d = Int::from(d);
        let r = |(n, m): (i64, i64)| Rat::new(Int::from(n), Int::from(m));
        let x = QuadElt::new(d.clone(), r(a), r(b));
        let y = QuadElt::new(d.clone(), r(c), r(e));
        let xy = x.checked_mul(&y).unwrap();
        prop_assert_eq!(xy.norm(), x.norm() * y.norm());
        prop_assert_eq!(xy.conj(), x.conj().checked_mul(&y.conj()).unwrap());
    }
}
