//! The coefficient algebra `E_q` with its involution.
//!
//! * Unitary case: `E_q = F_{q^2}`, involution `x -> x^q`.
//! * Split case: `E_q = F_q (+) F_q`, involution swaps the coordinates.
//!
//! Both are handled through one element type holding one or two codes in a
//! "component field": `F_{q^2}` in the unitary case, `F_q` in the split case.

use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gf::{Fe, GaloisField};
use super::poly;
use super::splitting::{Case, SplittingData};
use crate::error::{Error, Result};

/// Element of an [`InvolutiveAlgebra`]. In the unitary case only the first
/// code is used and the second is always zero.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgElem {
    pub(crate) c: [Fe; 2],
}

impl AlgElem {
    pub fn component(&self, i: usize) -> Fe {
        self.c[i]
    }
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c[0], self.c[1])
    }
}

#[derive(Clone)]
pub struct InvolutiveAlgebra {
    splitting: SplittingData,
    field: GaloisField,
    zeta: AlgElem,
    /// Power of the Frobenius `x -> x^p` realizing the involution (unitary).
    frob_power: usize,
}

impl fmt::Debug for InvolutiveAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InvolutiveAlgebra")
            .field("case", &self.splitting.case)
            .field("p", &self.splitting.p)
            .field("l", &self.splitting.l)
            .field("field", &self.field)
            .field("zeta", &self.zeta)
            .finish()
    }
}

/// Serializable summary `{p, l, f, case, q, modulus}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDescriptor {
    pub p: u64,
    pub l: u64,
    pub f: u64,
    pub case: Case,
    #[serde(with = "crate::serde_big")]
    pub q: BigUint,
    pub modulus: Vec<u64>,
    pub zeta: Vec<u64>,
}

/// Builds `E_q` for the given splitting data.
///
/// The component field is `F_p[x]/(g)` where `g` is the irreducible factor
/// of `Phi_l` mod `p` with the least integer code (for `f = 1` the field is
/// `F_p` itself). `zeta` is the least-code primitive `l`-th root of unity,
/// which is the class of `x` whenever `f >= 2`. In the split case the two
/// coordinates of `zeta` are `z` and `z^-1`, so the involution inverts it.
pub fn build_algebra(sd: &SplittingData) -> Result<InvolutiveAlgebra> {
    let p = sd.p;
    let f = sd.f as usize;
    let field = if f == 1 {
        GaloisField::prime(p)?
    } else {
        // size guard before any polynomial work
        if (f as f64) * (p as f64).log2() > 61.0 {
            return Err(Error::FieldTooLarge { p, degree: f });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p ^ (sd.l << 32));
        let phi = poly::cyclotomic(sd.l, p);
        let parts = poly::distinct_degree(&phi, p);
        debug_assert_eq!(parts.len(), 1);
        let factors = poly::equal_degree(&parts[0].1, f, p, &mut rng);
        GaloisField::new(p, factors[0].clone())?
    };
    let l = sd.l;
    let z = (1..field.size())
        .find(|&a| a != 1 && field.pow(a, l) == 1)
        .ok_or_else(|| Error::NoSolution(format!("no primitive {l}-th root in {field:?}")))?;
    let (zeta, frob_power) = match sd.case {
        Case::Unitary => (AlgElem { c: [z, 0] }, f / 2),
        Case::Split => (
            AlgElem {
                c: [z, field.inv(z).expect("unit")],
            },
            0,
        ),
    };
    Ok(InvolutiveAlgebra {
        splitting: sd.clone(),
        field,
        zeta,
        frob_power,
    })
}

impl InvolutiveAlgebra {
    pub fn splitting(&self) -> &SplittingData {
        &self.splitting
    }

    pub fn case(&self) -> Case {
        self.splitting.case
    }

    pub fn p(&self) -> u64 {
        self.splitting.p
    }

    pub fn l(&self) -> u64 {
        self.splitting.l
    }

    /// Order of the fixed field.
    pub fn q(&self) -> u64 {
        match self.case() {
            Case::Unitary => self.field.p().pow(self.frob_power as u32),
            Case::Split => self.field.size(),
        }
    }

    /// Field each component lives in.
    pub fn component_field(&self) -> &GaloisField {
        &self.field
    }

    pub fn components(&self) -> usize {
        match self.case() {
            Case::Unitary => 1,
            Case::Split => 2,
        }
    }

    /// Dimension of the algebra as an `F_p`-vector space.
    pub fn prime_dim(&self) -> usize {
        self.components() * self.field.degree()
    }

    /// Dimension of the fixed subfield over `F_p`.
    pub fn fixed_prime_dim(&self) -> usize {
        match self.case() {
            Case::Unitary => self.frob_power,
            Case::Split => self.field.degree(),
        }
    }

    /// Number of elements of the algebra.
    pub fn size(&self) -> u128 {
        (self.field.size() as u128).pow(self.components() as u32)
    }

    pub fn zeta(&self) -> AlgElem {
        self.zeta
    }

    pub fn descriptor(&self) -> AlgebraDescriptor {
        AlgebraDescriptor {
            p: self.p(),
            l: self.l(),
            f: self.splitting.f,
            case: self.case(),
            q: self.splitting.q.clone(),
            modulus: self.field.modulus().to_vec(),
            zeta: self.to_digits(self.zeta),
        }
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem { c: [0, 0] }
    }

    pub fn one(&self) -> AlgElem {
        self.scalar(1)
    }

    /// Embeds a component-field element diagonally.
    pub fn scalar(&self, a: Fe) -> AlgElem {
        match self.case() {
            Case::Unitary => AlgElem { c: [a, 0] },
            Case::Split => AlgElem { c: [a, a] },
        }
    }

    pub fn from_int(&self, v: i64) -> AlgElem {
        self.scalar(self.field.from_int(v))
    }

    /// Builds an element from its component codes (one or two).
    pub fn from_components(&self, codes: &[Fe]) -> AlgElem {
        match self.case() {
            Case::Unitary => AlgElem { c: [codes[0], 0] },
            Case::Split => AlgElem {
                c: [codes[0], codes[1]],
            },
        }
    }

    pub fn is_zero(&self, x: AlgElem) -> bool {
        x.c == [0, 0]
    }

    #[inline]
    pub fn add(&self, x: AlgElem, y: AlgElem) -> AlgElem {
        let f = &self.field;
        match self.case() {
            Case::Unitary => AlgElem {
                c: [f.add(x.c[0], y.c[0]), 0],
            },
            Case::Split => AlgElem {
                c: [f.add(x.c[0], y.c[0]), f.add(x.c[1], y.c[1])],
            },
        }
    }

    #[inline]
    pub fn neg(&self, x: AlgElem) -> AlgElem {
        let f = &self.field;
        AlgElem {
            c: [f.neg(x.c[0]), f.neg(x.c[1])],
        }
    }

    #[inline]
    pub fn sub(&self, x: AlgElem, y: AlgElem) -> AlgElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: AlgElem, y: AlgElem) -> AlgElem {
        let f = &self.field;
        match self.case() {
            Case::Unitary => AlgElem {
                c: [f.mul(x.c[0], y.c[0]), 0],
            },
            Case::Split => AlgElem {
                c: [f.mul(x.c[0], y.c[0]), f.mul(x.c[1], y.c[1])],
            },
        }
    }

    pub fn is_unit(&self, x: AlgElem) -> bool {
        (0..self.components()).all(|i| x.c[i] != 0)
    }

    /// Inverse; a non-unit reports the first zero component.
    pub fn inv(&self, x: AlgElem) -> Result<AlgElem> {
        let mut out = [0; 2];
        for (i, slot) in out.iter_mut().enumerate().take(self.components()) {
            *slot = self
                .field
                .inv(x.c[i])
                .ok_or(Error::ZeroDivisor { component: i })?;
        }
        Ok(AlgElem { c: out })
    }

    pub fn div(&self, x: AlgElem, y: AlgElem) -> Result<AlgElem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: AlgElem, e: u64) -> AlgElem {
        let f = &self.field;
        match self.case() {
            Case::Unitary => AlgElem {
                c: [f.pow(x.c[0], e), 0],
            },
            Case::Split => AlgElem {
                c: [f.pow(x.c[0], e), f.pow(x.c[1], e)],
            },
        }
    }

    /// The involution ("bar").
    #[inline]
    pub fn involve(&self, x: AlgElem) -> AlgElem {
        match self.case() {
            Case::Unitary => AlgElem {
                c: [self.field.frobenius(x.c[0], self.frob_power), 0],
            },
            Case::Split => AlgElem {
                c: [x.c[1], x.c[0]],
            },
        }
    }

    /// `x * bar(x)`, an element of the fixed field.
    pub fn norm(&self, x: AlgElem) -> AlgElem {
        self.mul(x, self.involve(x))
    }

    /// `x + bar(x)`.
    pub fn trace(&self, x: AlgElem) -> AlgElem {
        self.add(x, self.involve(x))
    }

    pub fn is_fixed(&self, x: AlgElem) -> bool {
        self.involve(x) == x
    }

    /// `bar(x) = -x`.
    pub fn is_imaginary(&self, x: AlgElem) -> bool {
        self.involve(x) == self.neg(x)
    }

    /// All elements in increasing code order (only for small algebras).
    pub fn elements(&self) -> impl Iterator<Item = AlgElem> + '_ {
        let size = self.field.size();
        let total = match self.case() {
            Case::Unitary => size,
            Case::Split => size * size,
        };
        (0..total).map(move |code| match self.case() {
            Case::Unitary => AlgElem { c: [code, 0] },
            Case::Split => AlgElem {
                c: [code % size, code / size],
            },
        })
    }

    /// Elements of the fixed field in increasing order.
    pub fn fixed_elements(&self) -> Vec<AlgElem> {
        match self.case() {
            Case::Unitary => self.elements().filter(|&x| self.is_fixed(x)).collect(),
            Case::Split => self.field.elements().map(|a| self.scalar(a)).collect(),
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgElem {
        let a = self.field.random(rng);
        match self.case() {
            Case::Unitary => AlgElem { c: [a, 0] },
            Case::Split => AlgElem {
                c: [a, self.field.random(rng)],
            },
        }
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgElem {
        let a = self.field.random_nonzero(rng);
        match self.case() {
            Case::Unitary => AlgElem { c: [a, 0] },
            Case::Split => AlgElem {
                c: [a, self.field.random_nonzero(rng)],
            },
        }
    }

    /// A uniformly random imaginary element `r - bar(r)`.
    pub fn random_imaginary<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgElem {
        let r = self.random(rng);
        let two_inv = self.inv(self.from_int(2)).expect("q odd");
        // (r - bar r)/2 ranges uniformly over the imaginary elements
        self.mul(self.sub(r, self.involve(r)), two_inv)
    }

    /// The `l` powers of `zeta`.
    pub fn roots_of_unity(&self) -> Vec<AlgElem> {
        let mut out = Vec::with_capacity(self.l() as usize);
        let mut acc = self.one();
        for _ in 0..self.l() {
            out.push(acc);
            acc = self.mul(acc, self.zeta);
        }
        out
    }

    /// `zeta^k`, `k` taken mod `l`.
    pub fn zeta_pow(&self, k: i64) -> AlgElem {
        self.pow(self.zeta, k.rem_euclid(self.l() as i64) as u64)
    }

    /// Exponent `k` with `x = zeta^k`, if `x` is an `l`-th root of unity.
    pub fn root_exponent(&self, x: AlgElem) -> Option<u64> {
        let mut acc = self.one();
        for k in 0..self.l() {
            if acc == x {
                return Some(k);
            }
            acc = self.mul(acc, self.zeta);
        }
        None
    }

    /// Little-endian base-`p` digits: the digits of each component, in order.
    pub fn to_digits(&self, x: AlgElem) -> Vec<u64> {
        (0..self.components())
            .flat_map(|i| self.field.digits(x.c[i]))
            .collect()
    }

    /// Inverse of [`to_digits`](Self::to_digits).
    pub fn from_digits(&self, digits: &[u64]) -> AlgElem {
        let d = self.field.degree();
        let codes: Vec<Fe> = digits
            .chunks(d)
            .map(|chunk| self.field.from_digits(chunk))
            .collect();
        self.from_components(&codes)
    }

    /// Coordinates over `F_p` (same as the digit vector).
    pub fn to_prime_coords(&self, x: AlgElem) -> Vec<u64> {
        self.to_digits(x)
    }

    /// The `F_p`-basis element with a single `1` at coordinate `i`.
    pub fn prime_basis(&self, i: usize) -> AlgElem {
        let mut digits = vec![0u64; self.prime_dim()];
        digits[i] = 1;
        self.from_digits(&digits)
    }

    /// Degree over `F_p` of the field generated (per component) by `xs`.
    pub fn generated_degree(&self, xs: &[AlgElem]) -> usize {
        let f = &self.field;
        let mut deg = 1usize;
        for x in xs {
            for i in 0..self.components() {
                let d = f.generated_degree(x.c[i]);
                deg = lcm(deg, d);
            }
        }
        deg
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::splitting::splitting_data;

    fn alg(p: u64, l: u64) -> InvolutiveAlgebra {
        build_algebra(&splitting_data(p, l).unwrap()).unwrap()
    }

    #[test]
    fn f25_example() {
        let a = alg(5, 3);
        assert_eq!(a.component_field().modulus(), &[1, 1, 1]);
        let x = a.zeta();
        assert_eq!(a.to_digits(x), vec![0, 1]);
        // bar(x) = x^5 = x^2 = -x - 1
        assert_eq!(a.to_digits(a.involve(x)), vec![4, 4]);
        assert_eq!(a.norm(x), a.one());
        assert_eq!(a.trace(x), a.from_int(-1));
        let roots = a.roots_of_unity();
        assert_eq!(roots, vec![a.one(), x, a.from_digits(&[4, 4])]);
    }

    #[test]
    fn split_f11_example() {
        let a = alg(11, 5);
        assert_eq!(a.zeta().component(0), 3);
        assert_eq!(a.zeta().component(1), 4); // 3 * 4 = 12 = 1
        let x = a.from_components(&[2, 7]);
        assert_eq!(a.involve(x), a.from_components(&[7, 2]));
        assert_eq!(a.norm(x), a.from_components(&[3, 3]));
        let roots = a.roots_of_unity();
        let threes: Vec<u64> = roots.iter().map(|r| r.component(0)).collect();
        assert_eq!(threes, vec![1, 3, 9, 5, 4]);
    }

    #[test]
    fn f729_example() {
        let a = alg(3, 7);
        assert_eq!(a.component_field().size(), 729);
        assert_eq!(a.q(), 27);
        assert_eq!(a.component_field().modulus(), &poly::cyclotomic(7, 3)[..]);
        assert_eq!(a.fixed_elements().len(), 27);
    }

    #[test]
    fn zero_divisor_is_reported() {
        let a = alg(11, 5);
        let x = a.from_components(&[5, 0]);
        assert_eq!(a.inv(x), Err(Error::ZeroDivisor { component: 1 }));
    }

    #[test]
    fn algebra_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, l) in [(5, 3), (11, 5), (3, 7), (7, 3), (13, 7), (29, 5), (7, 5)] {
            let a = alg(p, l);
            let z = a.zeta();
            assert_eq!(a.pow(z, l), a.one());
            assert_ne!(z, a.one());
            assert_eq!(a.norm(z), a.one());
            assert_eq!(a.roots_of_unity().len(), l as usize);
            match a.case() {
                Case::Unitary => assert_eq!((a.q() + 1) % l, 0),
                Case::Split => assert_eq!((a.q() - 1) % l, 0),
            }
            assert_eq!(a.fixed_elements().len() as u64, a.q());
            for _ in 0..100 {
                let x = a.random(&mut rng);
                let y = a.random(&mut rng);
                assert_eq!(a.involve(a.involve(x)), x);
                assert!(a.is_fixed(a.norm(x)));
                assert_eq!(a.norm(a.mul(x, y)), a.mul(a.norm(x), a.norm(y)));
                assert_eq!(a.involve(a.mul(x, y)), a.mul(a.involve(x), a.involve(y)));
                assert_eq!(a.from_digits(&a.to_digits(x)), x);
                assert!(a.is_imaginary(a.random_imaginary(&mut rng)));
            }
        }
    }
}
