//! Orders of classical groups, the predicted monodromy image, and standard
//! generators used to exercise the group engine.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::subsequence::{find_degenerate_subsequence, SubsequenceCertificate};
use crate::arith::{is_prime, Case, Fe, GaloisField, SplittingData};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClassicalKind {
    SL,
    SU,
    Sp,
}

/// `|SL(m, q)|`, `|SU(m, q)|` or `|Sp(m, q)|` (`m` even for `Sp`).
pub fn classical_group_order(kind: ClassicalKind, m: usize, q: &BigUint) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::Hypothesis("dimension must be positive".into()));
    }
    if q < &BigUint::from(3u32) || (q % 2u32).is_zero() {
        return Err(Error::Hypothesis(format!("q = {q} is not an odd prime power")));
    }
    let one = BigUint::one();
    let order = match kind {
        ClassicalKind::SL | ClassicalKind::SU => {
            let mut acc = q.pow((m * (m - 1) / 2) as u32);
            for i in 2..=m {
                let qi = q.pow(i as u32);
                let factor = if kind == ClassicalKind::SU && i % 2 == 1 {
                    qi + &one
                } else {
                    qi - &one
                };
                acc *= factor;
            }
            acc
        }
        ClassicalKind::Sp => {
            if m % 2 == 1 {
                return Err(Error::Hypothesis("symplectic dimension must be even".into()));
            }
            let h = m / 2;
            let mut acc = q.pow((h * h) as u32);
            for i in 1..=h {
                acc *= q.pow(2 * i as u32) - &one;
            }
            acc
        }
    };
    Ok(order)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ImageKind {
    SlU,
    SlL,
}

/// Which hypotheses of the big-monodromy theorem hold.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremHypotheses {
    /// `n >= l + 1`.
    pub n_at_least_l_plus_1: bool,
    /// A proper zero-sum subsequence of length at least three.
    pub certificate: Option<SubsequenceCertificate>,
}

impl TheoremHypotheses {
    pub fn satisfied(&self) -> bool {
        self.n_at_least_l_plus_1 || self.certificate.as_ref().is_some_and(|c| c.proper)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectedImage {
    pub kind: ImageKind,
    pub dim: usize,
    #[serde(with = "crate::serde_big")]
    pub q: BigUint,
    pub l: u64,
    #[serde(with = "crate::serde_big")]
    pub order: BigUint,
    pub hypotheses: TheoremHypotheses,
}

/// Predicted image for the monodromy vector `kvec = (k_0, .., k_n)`: a
/// subgroup of `U(n, q)` or `GL(n, q)` with determinants exactly `mu_l`.
pub fn expected_image(sd: &SplittingData, kvec: &[u64]) -> Result<ExpectedImage> {
    let l = sd.l;
    if kvec.len() < 3 {
        return Err(Error::InvalidMonodromyVector("need at least 3 entries".into()));
    }
    if let Some(k) = kvec.iter().find(|&&k| k == 0 || k >= l) {
        return Err(Error::InvalidMonodromyVector(format!("entry {k} not in 1..{}", l - 1)));
    }
    if kvec.iter().sum::<u64>() % l == 0 {
        return Err(Error::InvalidMonodromyVector(
            "sum is 0 mod l, the form is degenerate".into(),
        ));
    }
    let n = kvec.len() - 1;
    let (kind, classical) = match sd.case {
        Case::Unitary => (ImageKind::SlU, ClassicalKind::SU),
        Case::Split => (ImageKind::SlL, ClassicalKind::SL),
    };
    let order = classical_group_order(classical, n, &sd.q)? * BigUint::from(l);
    Ok(ExpectedImage {
        kind,
        dim: n,
        q: sd.q.clone(),
        l,
        order,
        hypotheses: TheoremHypotheses {
            n_at_least_l_plus_1: n as u64 > l,
            certificate: find_degenerate_subsequence(kvec, l),
        },
    })
}

/// Elementary generators `[[1,1],[0,1]]`, `[[1,0],[1,1]]` of `SL(2, p)`.
pub fn sl2_generators(p: u64) -> Result<(GaloisField, Vec<Matrix>)> {
    if !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let f = GaloisField::prime(p)?;
    Ok((
        f,
        vec![
            Matrix::from_rows(vec![vec![1, 1], vec![0, 1]]),
            Matrix::from_rows(vec![vec![1, 0], vec![1, 1]]),
        ],
    ))
}

/// Random unitary transvections `x -> x + a v (bar(v)^T J x)` for the
/// hermitian form `J` with ones on the antidiagonal over `F_{q^2}`, where
/// `v` is isotropic and `a^q = -a`. For `count` large enough they generate
/// `SU(m, q)`.
pub fn su_transvection_generators(
    q: u64,
    m: usize,
    count: usize,
    seed: u64,
) -> Result<(GaloisField, Vec<Matrix>)> {
    let p = smallest_prime_factor(q);
    let mut e = 0;
    let mut r = q;
    while r > 1 {
        if r % p != 0 {
            return Err(Error::Hypothesis(format!("{q} is not a prime power")));
        }
        r /= p;
        e += 1;
    }
    let f = GaloisField::least(p, 2 * e)?;
    let conj = |x: Fe| f.frobenius(x, e);
    let form = |x: &[Fe], y: &[Fe]| -> Fe {
        // bar(x)^T J y with J antidiagonal
        (0..m).fold(0, |acc, i| f.add(acc, f.mul(conj(x[i]), y[m - 1 - i])))
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = Vec::with_capacity(count);
    while gens.len() < count {
        let v: Vec<Fe> = (0..m).map(|_| f.random(&mut rng)).collect();
        if v.iter().all(|&x| x == 0) || form(&v, &v) != 0 {
            continue;
        }
        let r = f.random(&mut rng);
        let a = f.sub(r, conj(r));
        if a == 0 {
            continue;
        }
        // T = 1 + a v bar(v)^T J; column j of bar(v)^T J is bar(v_{m-1-j})
        let mut t = Matrix::identity(m);
        for i in 0..m {
            for j in 0..m {
                let delta = f.mul(f.mul(a, v[i]), conj(v[m - 1 - j]));
                t.set(i, j, f.add(t.get(i, j), delta));
            }
        }
        if !gens.contains(&t) {
            gens.push(t);
        }
    }
    Ok((f, gens))
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..)
        .take_while(|d| d * d <= n)
        .find(|d| n % d == 0)
        .unwrap_or(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::splitting_data;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn orders() {
        assert_eq!(classical_group_order(ClassicalKind::SL, 2, &big(5)).unwrap(), big(120));
        assert_eq!(classical_group_order(ClassicalKind::SL, 2, &big(7)).unwrap(), big(336));
        assert_eq!(classical_group_order(ClassicalKind::SU, 2, &big(3)).unwrap(), big(24));
        assert_eq!(classical_group_order(ClassicalKind::SU, 3, &big(5)).unwrap(), big(378_000));
        assert_eq!(classical_group_order(ClassicalKind::SU, 1, &big(7)).unwrap(), big(1));
        assert_eq!(
            classical_group_order(ClassicalKind::SU, 4, &big(5)).unwrap(),
            big(29_484_000_000)
        );
        assert_eq!(
            classical_group_order(ClassicalKind::SL, 3, &big(11)).unwrap(),
            big(212_427_600)
        );
        assert_eq!(classical_group_order(ClassicalKind::Sp, 2, &big(5)).unwrap(), big(120));
        assert!(classical_group_order(ClassicalKind::Sp, 3, &big(5)).is_err());
        assert!(classical_group_order(ClassicalKind::SL, 2, &big(4)).is_err());
    }

    #[test]
    fn expected_images() {
        let e = expected_image(&splitting_data(5, 3).unwrap(), &[1, 1, 1, 1]).unwrap();
        assert_eq!((e.kind, e.dim, e.order.clone()), (ImageKind::SlU, 3, big(1_134_000)));
        assert!(e.hypotheses.satisfied());
        assert!(!e.hypotheses.n_at_least_l_plus_1);
        let e = expected_image(&splitting_data(11, 5).unwrap(), &[1, 1, 3, 2]).unwrap();
        assert_eq!((e.kind, e.dim, e.order.clone()), (ImageKind::SlL, 3, big(1_062_138_000)));
        let e = expected_image(&splitting_data(5, 3).unwrap(), &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(e.order, big(88_452_000_000));
        assert!(e.hypotheses.n_at_least_l_plus_1);
        assert!(expected_image(&splitting_data(5, 3).unwrap(), &[1, 1, 1]).is_err());
        assert!(expected_image(&splitting_data(5, 3).unwrap(), &[1, 3, 1]).is_err());
    }

    #[test]
    fn su_generators_are_unitary_and_unimodular() {
        let (f, gens) = su_transvection_generators(5, 3, 4, 1).unwrap();
        assert_eq!(f.size(), 25);
        for g in &gens {
            assert_eq!(g.det(&f), 1);
            assert!(!g.is_identity());
        }
    }
}
