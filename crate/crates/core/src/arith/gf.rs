//! Finite fields `F_p[x]/(m(x))`.
//!
//! An element is identified by its code `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`,
//! i.e. its little-endian base-`p` coefficient vector read as an integer.
//! Codes are what matrices, vectors and hash keys store. Small fields carry
//! log/Zech tables; large ones fall back to polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::poly;
use super::prime::{pow_mod, prime_factors, PrimeField};
use crate::error::{Error, Result};

/// Field element code.
pub type Fe = u64;

const TABLE_LIMIT: u64 = 1 << 20;
const ADD_TABLE_LIMIT: u64 = 1024;
const NO_LOG: u32 = u32::MAX;

#[derive(Clone)]
pub struct GaloisField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u64,
    degree: usize,
    modulus: Vec<u64>,
    size: u64,
    backend: Backend,
}

enum Backend {
    Prime,
    Table(Tables),
    Poly,
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2(Q-1)`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`.
    log: Vec<u32>,
    /// `zech[n] = log(1 + g^n)`, or `NO_LOG` when that sum is zero.
    zech: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.p(), self.degree(), self.inner.modulus)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for GaloisField {}

/// Serializable summary of a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub degree: usize,
    pub order: String,
    pub modulus: Vec<u64>,
}

impl GaloisField {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        PrimeField::new(p)?;
        Ok(Self::build(p, 1, vec![0, 1], p))
    }

    /// `F_p[x]/(modulus)`; `modulus` is little-endian, monic and irreducible.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        PrimeField::new(p)?;
        let modulus = poly::trim(modulus.into_iter().map(|c| c % p).collect());
        let degree = poly::degree(&modulus).unwrap_or(0);
        if degree == 0 || modulus[degree] != 1 || !poly::is_irreducible(&modulus, p) {
            return Err(Error::BadModulus { p, degree });
        }
        if degree == 1 {
            // A linear modulus gives the prime field itself.
            return Self::prime(p);
        }
        let size = checked_size(p, degree)?;
        Ok(Self::build(p, degree, modulus, size))
    }

    /// The extension of degree `degree` with the least monic irreducible
    /// modulus in the integer-code order.
    pub fn least(p: u64, degree: usize) -> Result<Self> {
        PrimeField::new(p)?;
        if degree <= 1 {
            return Self::prime(p);
        }
        let size = checked_size(p, degree)?;
        for code in 0..size {
            let mut m: Vec<u64> = digits_of(code, p, degree);
            m.push(1);
            if poly::is_irreducible(&m, p) {
                return Ok(Self::build(p, degree, m, size));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn build(p: u64, degree: usize, modulus: Vec<u64>, size: u64) -> Self {
        let backend = if degree == 1 {
            Backend::Prime
        } else if size <= TABLE_LIMIT {
            Backend::Table(Tables::build(p, degree, &modulus, size))
        } else {
            Backend::Poly
        };
        GaloisField {
            inner: Arc::new(Inner {
                p,
                degree,
                modulus,
                size,
                backend,
            }),
        }
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn size(&self) -> u64 {
        self.inner.size
    }

    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p(),
            degree: self.degree(),
            order: self.size().to_string(),
            modulus: self.inner.modulus.clone(),
        }
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        0
    }

    #[inline]
    pub fn one(&self) -> Fe {
        1
    }

    /// The class of `x` (code `p`); in the prime field this is just `0`.
    pub fn x(&self) -> Fe {
        if self.degree() == 1 {
            0
        } else {
            self.p()
        }
    }

    pub fn from_int(&self, v: i64) -> Fe {
        v.rem_euclid(self.p() as i64) as u64
    }

    pub fn digits(&self, a: Fe) -> Vec<u64> {
        digits_of(a, self.p(), self.degree())
    }

    pub fn from_digits(&self, digits: &[u64]) -> Fe {
        let p = self.p();
        digits
            .iter()
            .take(self.degree())
            .rev()
            .fold(0u64, |acc, &d| acc * p + d % p)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        rng.gen_range(0..self.size())
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        rng.gen_range(1..self.size())
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.inner.backend {
            Backend::Prime => {
                let s = a + b;
                if s >= self.inner.p {
                    s - self.inner.p
                } else {
                    s
                }
            }
            Backend::Table(t) => t.add(a, b, self.inner.size),
            Backend::Poly => self.slow_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        match &self.inner.backend {
            Backend::Prime => {
                if a == 0 {
                    0
                } else {
                    self.inner.p - a
                }
            }
            Backend::Table(t) => t.neg[a as usize] as Fe,
            Backend::Poly => {
                let p = self.p();
                let d: Vec<u64> = self.digits(a).iter().map(|&c| (p - c) % p).collect();
                self.from_digits(&d)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.inner.backend {
            Backend::Prime => a * b % self.inner.p,
            Backend::Table(t) => {
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[(t.log[a as usize] + t.log[b as usize]) as usize] as Fe
                }
            }
            Backend::Poly => self.slow_mul(a, b),
        }
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return None;
        }
        Some(match &self.inner.backend {
            Backend::Prime => pow_mod(a, self.p() - 2, self.p()),
            Backend::Table(t) => {
                let q1 = (self.size() - 1) as u32;
                let l = t.log[a as usize];
                t.exp[((q1 - l) % q1) as usize] as Fe
            }
            Backend::Poly => self.pow(a, self.size() - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        if let Backend::Table(t) = &self.inner.backend {
            if a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let q1 = self.size() - 1;
            let l = (t.log[a as usize] as u128 * (e % q1) as u128 % q1 as u128) as usize;
            return t.exp[l] as Fe;
        }
        let mut acc = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: Fe, k: usize) -> Fe {
        let mut out = a;
        for _ in 0..k % self.degree() {
            out = self.pow(out, self.p());
        }
        out
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> u64 {
        assert!(a != 0, "zero has no multiplicative order");
        let mut n = self.size() - 1;
        for r in prime_factors(n) {
            while n % r == 0 && self.pow(a, n / r) == 1 {
                n /= r;
            }
        }
        n
    }

    /// Degree over `F_p` of the subfield generated by `a`.
    pub fn generated_degree(&self, a: Fe) -> usize {
        (1..=self.degree())
            .find(|&k| self.degree() % k == 0 && self.frobenius(a, k) == a)
            .unwrap_or(self.degree())
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.size()
    }

    pub fn sum<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    fn slow_add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        let mut out = 0u64;
        let mut scale = 1u64;
        let (mut x, mut y) = (a, b);
        for _ in 0..self.degree() {
            out += (x % p + y % p) % p * scale;
            x /= p;
            y /= p;
            scale = scale.wrapping_mul(p);
        }
        out
    }

    fn slow_mul(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p();
        let pa = poly::trim(self.digits(a));
        let pb = poly::trim(self.digits(b));
        let r = poly::mulmod(&pa, &pb, &self.inner.modulus, p);
        self.from_digits(&r)
    }
}

impl Tables {
    fn build(p: u64, degree: usize, modulus: &[u64], size: u64) -> Tables {
        let q1 = size - 1;
        let mul = |a: Fe, b: Fe| -> Fe {
            let pa = poly::trim(digits_of(a, p, degree));
            let pb = poly::trim(digits_of(b, p, degree));
            let r = poly::mulmod(&pa, &pb, modulus, p);
            r.iter().rev().fold(0u64, |acc, &d| acc * p + d)
        };
        let add_codes = |a: Fe, b: Fe| -> Fe {
            let da = digits_of(a, p, degree);
            let db = digits_of(b, p, degree);
            da.iter()
                .zip(&db)
                .rev()
                .fold(0u64, |acc, (&x, &y)| acc * p + (x + y) % p)
        };
        let factors = prime_factors(q1);
        let is_primitive = |g: Fe| -> bool {
            factors.iter().all(|&r| {
                let mut e = q1 / r;
                let mut acc = 1u64;
                let mut b = g;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = mul(acc, b);
                    }
                    b = mul(b, b);
                    e >>= 1;
                }
                acc != 1
            })
        };
        let g = (2..size).find(|&g| is_primitive(g)).expect("primitive element");

        let mut exp = vec![0u32; 2 * q1 as usize];
        let mut log = vec![NO_LOG; size as usize];
        let mut cur = 1u64;
        for i in 0..q1 as usize {
            exp[i] = cur as u32;
            exp[i + q1 as usize] = cur as u32;
            log[cur as usize] = i as u32;
            cur = mul(cur, g);
        }
        let mut zech = vec![NO_LOG; q1 as usize];
        for (n, z) in zech.iter_mut().enumerate() {
            let s = add_codes(1, exp[n] as Fe);
            if s != 0 {
                *z = log[s as usize];
            }
        }
        let neg: Vec<u32> = (0..size)
            .map(|a| {
                let d = digits_of(a, p, degree);
                d.iter().rev().fold(0u64, |acc, &c| acc * p + (p - c) % p) as u32
            })
            .collect();
        let add = (size <= ADD_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; (size * size) as usize];
            for a in 0..size {
                for b in 0..size {
                    t[(a * size + b) as usize] = add_codes(a, b) as u32;
                }
            }
            t
        });
        Tables {
            exp,
            log,
            zech,
            neg,
            add,
        }
    }

    #[inline]
    fn add(&self, a: Fe, b: Fe, size: u64) -> Fe {
        if let Some(t) = &self.add {
            return t[(a * size + b) as usize] as Fe;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let q1 = (size - 1) as u32;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let n = if lb >= la { lb - la } else { lb + q1 - la };
        let z = self.zech[n as usize];
        if z == NO_LOG {
            0
        } else {
            self.exp[(la + z) as usize] as Fe
        }
    }
}

fn checked_size(p: u64, degree: usize) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..degree {
        acc = acc
            .checked_mul(p)
            .filter(|&v| v < (1u64 << 62))
            .ok_or(Error::FieldTooLarge { p, degree })?;
    }
    Ok(acc)
}

pub(crate) fn digits_of(mut a: u64, p: u64, degree: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(degree);
    for _ in 0..degree {
        out.push(a % p);
        a /= p;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fields() -> Vec<GaloisField> {
        vec![
            GaloisField::prime(11).unwrap(),
            GaloisField::new(5, vec![1, 1, 1]).unwrap(),
            GaloisField::least(3, 6).unwrap(),
            GaloisField::least(3, 9).unwrap(),
            GaloisField::least(7, 8).unwrap(),
        ]
    }

    #[test]
    fn backends_agree_with_polynomial_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in fields() {
            for _ in 0..500 {
                let a = f.random(&mut rng);
                let b = f.random(&mut rng);
                assert_eq!(f.add(a, b), f.slow_add(a, b), "{f:?}");
                if f.degree() > 1 {
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b), "{f:?}");
                }
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn f25_from_phi3() {
        let f = GaloisField::new(5, vec![1, 1, 1]).unwrap();
        let x = f.x();
        assert_eq!(f.pow(x, 3), 1);
        // x^5 = x^2 = -x - 1
        assert_eq!(f.pow(x, 5), f.from_digits(&[4, 4]));
        assert_eq!(f.order(x), 3);
    }

    #[test]
    fn frobenius_fixes_subfield() {
        let f = GaloisField::least(3, 6).unwrap();
        let fixed: Vec<Fe> = f.elements().filter(|&a| f.frobenius(a, 3) == a).collect();
        assert_eq!(fixed.len(), 27);
        assert_eq!(f.generated_degree(1), 1);
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(matches!(
            GaloisField::new(5, vec![1, 0, 1]),
            Err(Error::BadModulus { .. })
        ));
    }

    #[test]
    fn least_modulus_f25() {
        // x^2 + 2 has code 2 + 0*5 and 2 is a non-square mod 5
        let f = GaloisField::least(5, 2).unwrap();
        assert_eq!(f.modulus(), &[2, 0, 1]);
    }
}
