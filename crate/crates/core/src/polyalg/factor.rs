//! Rational factorization: squarefree decomposition, a good prime, factor
//! tree Hensel lifting, and Zassenhaus subset recombination.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FpPoly, IntPoly};
use crate::error::{Error, Result};
use crate::exactnum::{is_prime_u64, Int};

/// Recombination stops after this many candidate subsets.
pub const SUBSET_GUARD: u64 = 1 << 20;

/// Candidate lifting primes examined before choosing the one with the
/// fewest modular factors.
const PRIME_CANDIDATES: usize = 10;

fn modp(v: &Int, m: &Int) -> Int {
    v.mod_floor(m)
}

fn sym(v: &Int, m: &Int) -> Int {
    let r = v.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

// ---- polynomials with coefficients mod m (ascending Vec<Int>) ------------

fn trim(mut v: Vec<Int>) -> Vec<Int> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn pm_reduce(a: &[Int], m: &Int) -> Vec<Int> {
    trim(a.iter().map(|x| modp(x, m)).collect())
}

fn pm_mul(a: &[Int], b: &[Int], m: &Int) -> Vec<Int> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    pm_reduce(&c, m)
}

fn pm_add(a: &[Int], b: &[Int], m: &Int) -> Vec<Int> {
    let n = a.len().max(b.len());
    let z = Int::zero();
    pm_reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

fn pm_sub(a: &[Int], b: &[Int], m: &Int) -> Vec<Int> {
    let n = a.len().max(b.len());
    let z = Int::zero();
    pm_reduce(
        &(0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect::<Vec<_>>(),
        m,
    )
}

/// Division by a monic polynomial mod m.
fn pm_divrem_monic(a: &[Int], b: &[Int], m: &Int) -> (Vec<Int>, Vec<Int>) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if a.len() <= db {
        return (Vec::new(), a.to_vec());
    }
    let mut r = a.to_vec();
    let mut q = vec![Int::zero(); a.len() - db];
    for k in (db..r.len()).rev() {
        let c = modp(&r[k], m);
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            r[i + k - db] -= &c * bi;
        }
        q[k - db] = c;
    }
    r.truncate(db);
    (pm_reduce(&q, m), pm_reduce(&r, m))
}

fn fp_to_int(f: &FpPoly) -> Vec<Int> {
    f.coeffs().iter().map(|&c| Int::from(c)).collect()
}

// ---- factor tree lifting -------------------------------------------------

/// Binary factor tree: each inner node holds `f = g * h (mod m)` with
/// Bezout cofactors `s g + t h = 1 (mod m)`; `h` is monic.
enum Node {
    Leaf,
    Split {
        g: Vec<Int>,
        h: Vec<Int>,
        s: Vec<Int>,
        t: Vec<Int>,
        left: Box<Node>,
        right: Box<Node>,
    },
}

fn build(factors: &[FpPoly], lc: u64, p: u64) -> (Node, FpPoly) {
    let lcp = FpPoly::new(p, vec![lc]);
    if factors.len() == 1 {
        return (Node::Leaf, factors[0].mul(&lcp));
    }
    let mid = factors.len() / 2;
    let (ln, lg) = build(&factors[..mid], lc, p);
    let (rn, rh) = build(&factors[mid..], 1, p);
    let (one, s, t) = lg.xgcd(&rh);
    debug_assert!(one.is_one());
    let prod = lg.mul(&rh);
    let node = Node::Split {
        g: fp_to_int(&lg),
        h: fp_to_int(&rh),
        s: fp_to_int(&s),
        t: fp_to_int(&t),
        left: Box::new(ln),
        right: Box::new(rn),
    };
    (node, prod)
}

/// One quadratic Hensel step from modulus `m` to `m2 = m^2`.
fn hensel_step(
    f: &[Int],
    g: &mut Vec<Int>,
    h: &mut Vec<Int>,
    s: &mut Vec<Int>,
    t: &mut Vec<Int>,
    m2: &Int,
) {
    let e = pm_sub(f, &pm_mul(g, h, m2), m2);
    let (q, r) = pm_divrem_monic(&pm_mul(s, &e, m2), h, m2);
    let g2 = pm_add(g, &pm_add(&pm_mul(t, &e, m2), &pm_mul(&q, g, m2), m2), m2);
    let h2 = pm_add(h, &r, m2);
    let b = pm_sub(
        &pm_add(&pm_mul(s, &g2, m2), &pm_mul(t, &h2, m2), m2),
        &[Int::one()],
        m2,
    );
    let (c, d) = pm_divrem_monic(&pm_mul(s, &b, m2), &h2, m2);
    let s2 = pm_sub(s, &d, m2);
    let t2 = pm_sub(t, &pm_add(&pm_mul(t, &b, m2), &pm_mul(&c, &g2, m2), m2), m2);
    *g = g2;
    *h = h2;
    *s = s2;
    *t = t2;
}

fn lift_tree(node: &mut Node, f: &[Int], m2: &Int, leaves: &mut Vec<Vec<Int>>) {
    match node {
        Node::Leaf => leaves.push(pm_reduce(f, m2)),
        Node::Split {
            g,
            h,
            s,
            t,
            left,
            right,
        } => {
            hensel_step(f, g, h, s, t, m2);
            let (g, h) = (g.clone(), h.clone());
            lift_tree(left, &g, m2, leaves);
            lift_tree(right, &h, m2, leaves);
        }
    }
}

/// Lifts `f = lc * prod factors (mod p)` to modulus `p^(2^k) >= bound`.
/// Returns the monic lifted factors and the final modulus. Every
/// intermediate factorization reduces to the previous one.
pub fn hensel_lift(f: &IntPoly, factors: &[FpPoly], p: u64, bound: &Int) -> (Vec<Vec<Int>>, Int) {
    let lc = f.lc().mod_floor(&Int::from(p)).to_u64().unwrap();
    let (mut tree, _) = build(factors, lc, p);
    let mut m = Int::from(p);
    let mut leaves: Vec<Vec<Int>> = factors.iter().map(fp_to_int).collect();
    if let Some(first) = leaves.first_mut() {
        *first = pm_mul(first, &[Int::from(lc)], &m);
    }
    while &m <= bound {
        let m2 = &m * &m;
        let mut out = Vec::new();
        lift_tree(&mut tree, f.coeffs(), &m2, &mut out);
        leaves = out;
        m = m2;
    }
    // make the first factor monic again
    let inv = f.lc().extended_gcd(&m).x.mod_floor(&m);
    leaves[0] = pm_mul(&leaves[0], &[inv], &m);
    (leaves, m)
}

// ---- driver ---------------------------------------------------------------

/// Chooses the lifting prime: among the first candidates `p >= 101` with
/// `p` prime to `lc` and `f mod p` squarefree, the one with fewest factors.
pub fn choose_prime(f: &IntPoly) -> (u64, Vec<FpPoly>) {
    let mut best: Option<(u64, usize)> = None;
    let mut seen = 0;
    let mut p = 101u64;
    while seen < PRIME_CANDIDATES {
        if is_prime_u64(p) {
            let fp = f.mod_p(p);
            if fp.deg() == f.deg() && fp.is_squarefree() {
                seen += 1;
                let k = super::squarefree_partition(&fp.monic()).len();
                if best.is_none_or(|(_, b)| k < b) {
                    best = Some((p, k));
                }
                if k == 1 {
                    break;
                }
            }
        }
        p += 2;
    }
    let (p, _) = best.unwrap();
    (p, f.mod_p(p).factor_squarefree().1)
}

/// Landau-Mignotte style bound on coefficients of any factor:
/// `2^n * ceil(||f||_2)`.
pub fn coefficient_bound(f: &IntPoly) -> Int {
    (Int::one() << f.deg()) * f.norm2_ceil()
}

/// Irreducible factors of a squarefree primitive `f` with positive leading
/// coefficient, sorted by degree.
pub fn factor_squarefree(f: &IntPoly) -> Result<Vec<IntPoly>> {
    let f = f.primitive_part();
    if f.deg() <= 1 {
        return Ok(vec![f]);
    }
    let (p, modular) = choose_prime(&f);
    if modular.len() == 1 {
        return Ok(vec![f]);
    }
    let b = f.lc().abs() * coefficient_bound(&f) * 2;
    let (lifted, m) = hensel_lift(&f, &modular, p, &b);
    recombine(&f, lifted, &m)
}

fn recombine(f: &IntPoly, lifted: Vec<Vec<Int>>, m: &Int) -> Result<Vec<IntPoly>> {
    let mut remaining: Vec<Vec<Int>> = lifted;
    let mut cur = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    let mut tried: u64 = 0;
    while 2 * s <= remaining.len() {
        let mut hit = None;
        let n = remaining.len();
        let mut idx: Vec<usize> = (0..s).collect();
        'subsets: loop {
            tried += 1;
            if tried > SUBSET_GUARD {
                return Err(Error::RecombinationLimit(tried));
            }
            let lc = cur.lc();
            let mut prod = vec![lc.clone()];
            for &i in &idx {
                prod = pm_mul(&prod, &remaining[i], m);
            }
            let cand = IntPoly::new(prod.iter().map(|x| sym(x, m)).collect()).primitive_part();
            // cheap constant-term test first
            let c0 = cand.coeff(0);
            let passes = if c0.is_zero() {
                cur.coeff(0).is_zero()
            } else {
                (cur.coeff(0) % &c0).is_zero()
            };
            if passes {
                if let Some(q) = cur.div_exact(&cand) {
                    hit = Some((idx.clone(), cand, q));
                    break 'subsets;
                }
            }
            // next combination
            let mut k = s;
            loop {
                if k == 0 {
                    break 'subsets;
                }
                k -= 1;
                if idx[k] < n - s + k {
                    idx[k] += 1;
                    for j in k + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        match hit {
            Some((idx, g, q)) => {
                found.push(g);
                cur = q.primitive_part();
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !idx.contains(i))
                    .map(|(_, v)| v)
                    .collect();
            }
            None => s += 1,
        }
    }
    found.push(cur);
    found.sort_by_key(|g| g.deg());
    Ok(found)
}

/// Full factorization over `Q` with multiplicities, via Yun then Zassenhaus.
pub fn factor_rational(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor_rational of zero polynomial"));
    }
    let mut out = Vec::new();
    for (g, e) in f.squarefree_decomposition() {
        for h in factor_squarefree(&g)? {
            out.push((h, e));
        }
    }
    out.sort_by(|a, b| (a.0.deg(), a.1, a.0.coeffs()).cmp(&(b.0.deg(), b.1, b.0.coeffs())));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn x2_minus_1() {
        let fs = factor_rational(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(fs, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_stays_irreducible() {
        // x^4 - 10x^2 + 1 splits mod every prime but is irreducible
        let fs = factor_rational(&p(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(fs.len(), 1);
    }

    #[test]
    fn nonmonic_product() {
        let a = p(&[3, 0, 2]);
        let b = p(&[-1, 5, 0, 7]);
        let c = p(&[2, -3]);
        let f = &(&a * &b) * &c;
        let fs: Vec<IntPoly> = factor_rational(&f)
            .unwrap()
            .into_iter()
            .map(|x| x.0)
            .collect();
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(IntPoly::one(), |acc, g| &acc * g);
        assert_eq!(prod.primitive_part(), f.primitive_part());
    }

    #[test]
    fn hensel_reduces_consistently() {
        let f = p(&[6, -5, -2, 1]); // (x-1)(x+2)(x-3)
        let (q, fs) = choose_prime(&f);
        let b = Int::from(10).pow(30u32);
        let (lifted, m) = hensel_lift(&f, &fs, q, &b);
        let prod = lifted
            .iter()
            .fold(vec![Int::one()], |acc, g| pm_mul(&acc, g, &m));
        assert_eq!(pm_reduce(&prod, &m), pm_reduce(f.coeffs(), &m));
        for (g, g0) in lifted.iter().zip(&fs) {
            let back: Vec<u64> = g
                .iter()
                .map(|x| x.mod_floor(&Int::from(q)).to_u64().unwrap())
                .collect();
            assert_eq!(&FpPoly::new(q, back), g0);
        }
    }
}
