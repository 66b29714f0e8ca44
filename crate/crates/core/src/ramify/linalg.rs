//! Dense linear algebra over `F_p` for small primes (`p < 2^32`).

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    crate::exactnum::invmod(a, p)
}

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, rows beyond the rank are zero.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let piv = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for (x, &y) in row.iter_mut().zip(&piv).skip(c) {
                if y != 0 {
                    *x = (*x + mul_mod(f, y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis (in reduced echelon form) of `{x : x M = 0}` for an `m x k` matrix.
pub(crate) fn left_kernel(m: &[Vec<u64>], p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let nrows = m.len();
    let k = m.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..nrows).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    // eliminate on the first k columns only
    let mut r = 0;
    for c in 0..k {
        if r == nrows {
            break;
        }
        let Some(s) = (r..nrows).find(|&s| aug[s][c] != 0) else {
            continue;
        };
        aug.swap(r, s);
        let inv = inv_mod(aug[r][c], p);
        for x in aug[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let piv = aug[r].clone();
        for row in aug.iter_mut().skip(r + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for (x, &y) in row.iter_mut().zip(&piv).skip(c) {
                if y != 0 {
                    *x = (*x + mul_mod(f, y, p)) % p;
                }
            }
        }
        r += 1;
    }
    let mut ker: Vec<Vec<u64>> = aug[r..].iter().map(|row| row[k..].to_vec()).collect();
    let piv = rref(&mut ker, p);
    (ker, piv)
}

pub(crate) fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut acc = vec![0u128; n];
            for (&x, brow) in row.iter().zip(b) {
                if x == 0 {
                    continue;
                }
                for (s, &y) in acc.iter_mut().zip(brow) {
                    *s = (*s + x as u128 * y as u128) % p as u128;
                }
            }
            acc.into_iter().map(|v| v as u64).collect()
        })
        .collect()
}
