//! Dense univariate polynomials over a prime field.
//!
//! Coefficients are stored little-endian (`c[i]` is the coefficient of `x^i`)
//! and kept trimmed, so the zero polynomial is the empty vector.

use rand::Rng;

use super::prime::pow_mod;

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Poly {
    trim(a.iter().map(|&x| x * c % p).collect())
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = pow_mod(b[db], p - 2, p);
    let mut r: Poly = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i] * lead_inv % p;
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            let idx = i - db + j;
            r[idx] = (r[idx] + p - c * bj % p) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Poly {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Poly {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => scale(a, pow_mod(lead, p - 2, p), p),
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    rem(&mul(a, b, p), m, p)
}

pub fn powmod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
    let mut acc: Poly = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

/// Distinct-degree factorization of a squarefree polynomial: pairs
/// `(d, g)` where `g` is the product of all monic irreducible factors of
/// degree `d`.
pub fn distinct_degree(f: &[u64], p: u64) -> Vec<(usize, Poly)> {
    let mut rest = monic(f, p);
    let mut out = Vec::new();
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0usize;
    while degree(&rest).unwrap_or(0) > 0 {
        d += 1;
        if 2 * d > degree(&rest).unwrap() {
            let deg = degree(&rest).unwrap();
            out.push((deg, rest));
            break;
        }
        h = powmod(&h, p, &rest, p);
        let g = gcd(&sub(&h, &x, p), &rest, p);
        if degree(&g).unwrap_or(0) > 0 {
            rest = divrem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((d, g));
        }
    }
    out
}

pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    match degree(f) {
        None | Some(0) => false,
        Some(n) => {
            let parts = distinct_degree(f, p);
            parts.len() == 1 && parts[0].0 == n
        }
    }
}

/// Splits a product of distinct monic irreducibles of common degree `d`
/// (Cantor–Zassenhaus, odd characteristic). The returned factors are sorted
/// by [`encoding`], so the result does not depend on the random draws.
pub fn equal_degree<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<Poly> {
    let f = monic(f, p);
    let n = degree(&f).unwrap_or(0);
    let mut out = Vec::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        let dg = degree(&g).unwrap_or(0);
        if dg == d {
            out.push(g);
            continue;
        }
        if dg == 0 {
            continue;
        }
        loop {
            let a: Poly = trim((0..dg).map(|_| rng.gen_range(0..p)).collect());
            if degree(&a).unwrap_or(0) == 0 {
                continue;
            }
            // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
            let mut t = rem(&a, &g, p);
            let mut s = t.clone();
            for _ in 1..d {
                t = powmod(&t, p, &g, p);
                s = mulmod(&s, &t, &g, p);
            }
            let b = powmod(&s, (p - 1) / 2, &g, p);
            let h = gcd(&sub(&b, &[1], p), &g, p);
            let dh = degree(&h).unwrap_or(0);
            if dh > 0 && dh < dg {
                let other = divrem(&g, &h, p).0;
                stack.push(h);
                stack.push(other);
                break;
            }
        }
    }
    debug_assert_eq!(out.len() * d, n);
    out.sort_by_key(|g| encoding(g, p));
    out
}

/// Integer encoding `sum c_i p^i`, saturating; used as a total order.
pub fn encoding(a: &[u64], p: u64) -> u128 {
    let mut acc: u128 = 0;
    for &c in a.iter().rev() {
        acc = acc.saturating_mul(p as u128).saturating_add(c as u128);
    }
    acc
}

/// `1 + x + ... + x^(l-1)`, the `l`-th cyclotomic polynomial for prime `l`.
pub fn cyclotomic(l: u64, p: u64) -> Poly {
    trim(vec![1 % p; l as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn division_identity() {
        let p = 7;
        let a = vec![3, 0, 5, 1, 6];
        let b = vec![2, 1, 1];
        let (q, r) = divrem(&a, &b, p);
        assert_eq!(add(&mul(&q, &b, p), &r, p), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn irreducibility() {
        // x^2 + x + 1 over F_5: discriminant -3 = 2 is a non-square.
        assert!(is_irreducible(&[1, 1, 1], 5));
        // x^2 + 1 over F_5 has roots 2, 3.
        assert!(!is_irreducible(&[1, 0, 1], 5));
        // Phi_7 is irreducible over F_3 since ord(3 mod 7) = 6.
        assert!(is_irreducible(&cyclotomic(7, 3), 3));
    }

    #[test]
    fn splits_phi5_over_f11() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ddf = distinct_degree(&cyclotomic(5, 11), 11);
        assert_eq!(ddf.len(), 1);
        assert_eq!(ddf[0].0, 1);
        let roots: Vec<u64> = equal_degree(&ddf[0].1, 1, 11, &mut rng)
            .iter()
            .map(|g| (11 - g[0]) % 11)
            .collect();
        // sorted by encoding of x - r, i.e. by decreasing r
        assert_eq!(roots, vec![9, 5, 4, 3]);
    }

    #[test]
    fn phi13_over_f103_is_quadratics() {
        let ddf = distinct_degree(&cyclotomic(13, 103), 103);
        assert_eq!(ddf.len(), 1);
        assert_eq!(ddf[0].0, 2);
        assert_eq!(degree(&ddf[0].1), Some(12));
    }
}
