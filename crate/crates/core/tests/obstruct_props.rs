use m12_core::obstruct::{hilbert_symbol, reciprocity_check, Place};
use m12_core::{Int, Rat};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-2000i64..2000, 1i64..300)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Rat::new(Int::from(n), Int::from(d)))
}

fn place() -> impl Strategy<Value = Place> {
    prop::sample::select(vec![
        Place::Infinity,
        Place::Prime(2),
        Place::Prime(3),
        Place::Prime(5),
        Place::Prime(7),
        Place::Prime(11),
    ])
}

/// Does `z^2 = a x^2 + b y^2` have a primitive solution mod `p^k`? With
/// `ord_p a, ord_p b <= 1`, `k = 3` (odd `p`) or `k = 5` (`p = 2`) is enough
/// for Hensel's lemma, so this decides solubility in `Q_p`.
fn soluble_mod_pk(a: i64, b: i64, p: i64) -> bool {
    let k = if p == 2 { 5 } else { 3 };
    let m = p.pow(k);
    let (mut any_root, mut unit_root) = (vec![false; m as usize], vec![false; m as usize]);
    for z in 0..m {
        let r = (z * z % m) as usize;
        any_root[r] = true;
        if z % p != 0 {
            unit_root[r] = true;
        }
    }
    for x in 0..m {
        for y in 0..m {
            let r = (a * x % m * x + b * y % m * y).rem_euclid(m) as usize;
            let ok = if x % p == 0 && y % p == 0 {
                unit_root[r]
            } else {
                any_root[r]
            };
            if ok {
                return true;
            }
        }
    }
    false
}

fn square_class_rep(p: i64) -> impl Strategy<Value = i64> {
    (prop::sample::select(vec![1i64, -1]), 0u32..2, 1i64..60)
        .prop_filter("unit part prime to p", move |(_, _, u)| u % p != 0)
        .prop_map(move |(s, e, u)| s * p.pow(e) * u)
}

fn brute_case() -> impl Strategy<Value = (i64, i64, i64)> {
    prop::sample::select(vec![2i64, 3, 5, 7])
        .prop_flat_map(|p| (Just(p), square_class_rep(p), square_class_rep(p)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn symbol_matches_brute_force((p, a, b) in brute_case()) {
        let s = hilbert_symbol(&Rat::from_integer(Int::from(a)), &Rat::from_integer(Int::from(b)), Place::Prime(p as u64)).unwrap();
        prop_assert_eq!(s == 1, soluble_mod_pk(a, b, p), "({}, {})_{}", a, b, p);
    }

    #[test]
    fn symmetric_and_bilinear(a in small_rat(), a2 in small_rat(), b in small_rat(), v in place()) {
        let h = |x: &Rat, y: &Rat| hilbert_symbol(x, y, v).unwrap();
        prop_assert_eq!(h(&a, &b), h(&b, &a));
        prop_assert_eq!(h(&(&a * &a2), &b), h(&a, &b) * h(&a2, &b));
        prop_assert_eq!(h(&a, &(&b * &b)), 1);
    }

    #[test]
    fn standard_identities(a in small_rat(), v in place()) {
        prop_assert_eq!(hilbert_symbol(&a, &-&a, v).unwrap(), 1);
        let one_minus = Rat::from_integer(Int::from(1)) - &a;
        if one_minus != Rat::from_integer(Int::from(0)) {
            prop_assert_eq!(hilbert_symbol(&a, &one_minus, v).unwrap(), 1);
        }
    }

    #[test]
    fn reciprocity(a in small_rat(), b in small_rat()) {
        prop_assert!(reciprocity_check(&a, &b).unwrap());
    }
}
