//! Prime fields and elementary number theory.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic trial-division primality test; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc: u128 = 1 % m128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

/// An odd prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotOddPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            None
        } else {
            Some(pow_mod(a, self.p - 2, self.p))
        }
    }
}

/// Least `f >= 1` with `p^f = 1 (mod l)`.
pub fn ord_mod(p: u64, l: u64) -> Result<u64> {
    check_pair(p, l)?;
    let mut acc = p % l;
    let mut f = 1;
    while acc != 1 {
        acc = acc * (p % l) % l;
        f += 1;
    }
    Ok(f)
}

pub(crate) fn check_pair(p: u64, l: u64) -> Result<()> {
    PrimeField::new(p)?;
    PrimeField::new(l)?;
    if p == l {
        return Err(Error::EqualPrimes(p));
    }
    Ok(())
}

/// Odd primes strictly below `bound`.
pub fn odd_primes_below(bound: u64) -> Vec<u64> {
    (3..bound).filter(|&n| is_prime(n)).collect()
}
