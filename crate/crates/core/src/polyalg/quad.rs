use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};
use crate::exactnum::{Int, QuadElt, Rat};

/// Polynomial over `Q(sqrt d)`, ascending coefficients sharing one `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPoly {
    d: Int,
    c: Vec<QuadElt>,
}

impl QuadPoly {
    pub fn new(d: Int, mut c: Vec<QuadElt>) -> Result<Self> {
        if let Some(bad) = c.iter().find(|x| x.d != d) {
            return Err(Error::MixedQuadratic(d.to_string(), bad.d.to_string()));
        }
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Ok(QuadPoly { d, c })
    }

    fn raw(d: &Int, mut c: Vec<QuadElt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QuadPoly { d: d.clone(), c }
    }

    pub fn from_int_poly(d: &Int, f: &IntPoly) -> Self {
        Self::raw(
            d,
            f.coeffs()
                .iter()
                .map(|a| QuadElt::from_rat(d, Rat::from_integer(a.clone())))
                .collect(),
        )
    }

    /// Builds `sum (a_i + b_i sqrt d) x^i` from rational pairs.
    pub fn from_parts(d: &Int, a: &[Rat], b: &[Rat]) -> Self {
        let n = a.len().max(b.len());
        let get = |v: &[Rat], i: usize| v.get(i).cloned().unwrap_or_else(Rat::zero);
        Self::raw(
            d,
            (0..n)
                .map(|i| QuadElt::new(d.clone(), get(a, i), get(b, i)))
                .collect(),
        )
    }

    pub fn d(&self) -> &Int {
        &self.d
    }

    pub fn coeffs(&self) -> &[QuadElt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> QuadElt {
        self.c
            .last()
            .cloned()
            .unwrap_or_else(|| QuadElt::zero(&self.d))
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().all(|x| x.is_rational())
    }

    pub fn conj(&self) -> Self {
        Self::raw(&self.d, self.c.iter().map(|x| x.conj()).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = QuadElt::zero(&self.d);
        Self::raw(
            &self.d,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let z = QuadElt::zero(&self.d);
        Self::raw(
            &self.d,
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) - o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::raw(&self.d, Vec::new());
        }
        let mut c = vec![QuadElt::zero(&self.d); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Self::raw(&self.d, c)
    }

    pub fn scale(&self, k: &QuadElt) -> Self {
        Self::raw(&self.d, self.c.iter().map(|x| x * k).collect())
    }

    pub fn monic(&self) -> Self {
        let inv = self.lc().inv().expect("monic of zero polynomial");
        self.scale(&inv)
    }

    pub fn eval(&self, x: &QuadElt) -> QuadElt {
        self.c
            .iter()
            .rev()
            .fold(QuadElt::zero(&self.d), |acc, a| &(&acc * x) + a)
    }

    pub fn substitute_square(&self) -> Self {
        let mut c = vec![QuadElt::zero(&self.d); 2 * self.c.len().max(1) - 1];
        for (i, a) in self.c.iter().enumerate() {
            c[2 * i] = a.clone();
        }
        Self::raw(&self.d, c)
    }

    /// `f(c y^2)`.
    pub fn substitute_scaled_square(&self, c: &QuadElt) -> Self {
        let mut out = vec![QuadElt::zero(&self.d); 2 * self.c.len().max(1) - 1];
        let mut pw = QuadElt::one(&self.d);
        for (i, a) in self.c.iter().enumerate() {
            out[2 * i] = a * &pw;
            pw = &pw * c;
        }
        Self::raw(&self.d, out)
    }

    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero());
        let d = &self.d;
        if self.deg() < b.deg() || self.is_zero() {
            return (Self::raw(d, Vec::new()), self.clone());
        }
        let inv = b.lc().inv().unwrap();
        let db = b.deg();
        let mut r = self.c.clone();
        let mut q = vec![QuadElt::zero(d); self.deg() - db + 1];
        for k in (db..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let coef = &r[k] * &inv;
            for (i, bi) in b.c.iter().enumerate() {
                r[i + k - db] = &r[i + k - db] - &(&coef * bi);
            }
            q[k - db] = coef;
        }
        r.truncate(db);
        (Self::raw(d, q), Self::raw(d, r))
    }

    /// Resultant over the field `Q(sqrt d)` by the Euclidean recursion.
    pub fn resultant(&self, o: &Self) -> QuadElt {
        let d = &self.d;
        if self.is_zero() || o.is_zero() {
            return QuadElt::zero(d);
        }
        let (m, n) = (self.deg(), o.deg());
        if n == 0 {
            return pow(&o.lc(), m);
        }
        if m == 0 {
            return pow(&self.lc(), n);
        }
        let r = self.divrem(o).1;
        if r.is_zero() {
            return QuadElt::zero(d);
        }
        // res(A, B) = (-1)^{mn} lc(B)^{m - deg R} res(B, R)
        let mut out = &pow(&o.lc(), m - r.deg()) * &o.resultant(&r);
        if (m * n) % 2 == 1 {
            out = -&out;
        }
        out
    }

    /// Exact square root of a polynomial with a square leading coefficient
    /// in the base ring, or `None`.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let n = self.deg();
        if n % 2 == 1 {
            return None;
        }
        let m = n / 2;
        let lc = self.lc();
        let s_lc = quad_sqrt(&lc)?;
        let two_inv = QuadElt::from_rat(&self.d, Rat::new(Int::one(), Int::from(2)));
        let inv2lc = (&s_lc.inv().ok()? * &two_inv).clone();
        let mut s = vec![QuadElt::zero(&self.d); m + 1];
        s[m] = s_lc;
        // top-down: coefficient n - k of s^2 fixes s[m - k]
        for k in 1..=m {
            let idx = n - k;
            let mut acc = self.c[idx].clone();
            for i in (m - k + 1)..=m {
                let j = idx as isize - i as isize;
                if j < 0 || j as usize > m || (j as usize) < m - k + 1 {
                    continue;
                }
                acc = &acc - &(&s[i] * &s[j as usize]);
            }
            s[m - k] = &acc * &inv2lc;
        }
        let cand = Self::raw(&self.d, s);
        (cand.mul(&cand) == *self).then_some(cand)
    }

    /// `f * conj(f)`, cleared to a primitive integral polynomial.
    pub fn norm_rationalize(&self) -> IntPoly {
        let n = self.mul(&self.conj());
        debug_assert!(n.is_rational());
        let rats: Vec<Rat> = n.c.iter().map(|x| x.a.clone()).collect();
        IntPoly::from_rats(&rats)
    }

    /// The rational polynomial when every coefficient is rational.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        if !self.is_rational() {
            return None;
        }
        let rats: Vec<Rat> = self.c.iter().map(|x| x.a.clone()).collect();
        Some(IntPoly::from_rats(&rats))
    }
}

fn pow(x: &QuadElt, e: usize) -> QuadElt {
    let mut r = QuadElt::one(&x.d);
    for _ in 0..e {
        r = &r * x;
    }
    r
}

/// Square root of a quadratic element when it is a square in `Q(sqrt d)`.
pub fn quad_sqrt(x: &QuadElt) -> Option<QuadElt> {
    use crate::exactnum::rat_sqrt;
    if x.is_zero() {
        return Some(x.clone());
    }
    if x.b.is_zero() {
        if let Some(r) = rat_sqrt(&x.a) {
            return Some(QuadElt::from_rat(&x.d, r));
        }
        let dr = Rat::from_integer(x.d.clone());
        let r = rat_sqrt(&(&x.a / &dr))?;
        return Some(QuadElt::new(x.d.clone(), Rat::zero(), r));
    }
    // (p + q sqrt d)^2 = x: p^2 = (a + sqrt(N))/2 for N = norm(x)
    let nr = rat_sqrt(&x.norm())?;
    let two = Rat::from_integer(Int::from(2));
    for cand in [(&x.a + &nr) / &two, (&x.a - &nr) / &two] {
        if let Some(p) = rat_sqrt(&cand) {
            if p.is_zero() {
                continue;
            }
            let q = &x.b / (&two * &p);
            let r = QuadElt::new(x.d.clone(), p, q);
            if &(&r * &r) == x {
                return Some(r);
            }
        }
    }
    None
}

/// `R(Y) = Res_x(Y - alpha(x), f(x))`, a polynomial of degree `deg f` in `Y`,
/// recovered by evaluation at `deg f + 1` integer points and interpolation.
pub fn charpoly_resultant(alpha: &QuadPoly, f: &QuadPoly) -> QuadPoly {
    let d = f.d.clone();
    let n = f.deg();
    let pts: Vec<QuadElt> = (0..=n)
        .map(|i| QuadElt::from_rat(&d, Rat::from_integer(Int::from(i as i64))))
        .collect();
    let vals: Vec<QuadElt> = pts
        .iter()
        .map(|y| {
            let a = QuadPoly::raw(&d, vec![y.clone()]).sub(alpha);
            a.resultant(f)
        })
        .collect();
    interpolate(&d, &pts, &vals)
}

fn interpolate(d: &Int, xs: &[QuadElt], ys: &[QuadElt]) -> QuadPoly {
    let mut out = QuadPoly::raw(d, Vec::new());
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = QuadPoly::raw(d, vec![QuadElt::one(d)]);
        let mut denom = QuadElt::one(d);
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&QuadPoly::raw(d, vec![-xj, QuadElt::one(d)]));
            denom = &denom * &(xi - xj);
        }
        let k = &ys[i] * &denom.inv().unwrap();
        out = out.add(&basis.scale(&k));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    #[test]
    fn norm_of_x_plus_root() {
        let d = int(-11);
        let f = QuadPoly::from_parts(&d, &[rat(0, 1), rat(1, 1)], &[rat(1, 1)]);
        assert_eq!(f.norm_rationalize(), IntPoly::from_i64(&[11, 0, 1]));
        assert_eq!(f.conj().norm_rationalize(), f.norm_rationalize());
    }

    #[test]
    fn sqrt_round_trip() {
        let d = int(-11);
        let g = QuadPoly::from_parts(
            &d,
            &[rat(3, 2), rat(-1, 1), rat(1, 1)],
            &[rat(1, 1), rat(5, 1)],
        );
        let f = g.mul(&g).scale(&QuadElt::from_rat(&d, rat(16, 1)));
        let s = f.sqrt().unwrap();
        assert_eq!(s.mul(&s), f);
        assert!(f
            .add(&QuadPoly::from_parts(&d, &[rat(1, 1)], &[]))
            .sqrt()
            .is_none());
    }

    #[test]
    fn charpoly_of_identity_is_f_reversed_sign() {
        // Res_x(Y - x, f) = f(Y) for monic f of even degree
        let d = int(-5);
        let f = QuadPoly::from_parts(&d, &[rat(2, 1), rat(0, 1), rat(1, 1)], &[rat(1, 1)]);
        let alpha = QuadPoly::from_parts(&d, &[rat(0, 1), rat(1, 1)], &[]);
        assert_eq!(charpoly_resultant(&alpha, &f), f);
    }

    #[test]
    fn quad_resultant_matches_integer_one() {
        let d = int(-11);
        let a = IntPoly::from_i64(&[3, -1, 4, 1]);
        let b = IntPoly::from_i64(&[-5, 9, 2]);
        let qa = QuadPoly::from_int_poly(&d, &a);
        let qb = QuadPoly::from_int_poly(&d, &b);
        let r = qa.resultant(&qb);
        assert_eq!(r, QuadElt::from_rat(&d, Rat::from_integer(a.resultant(&b))));
    }
}
