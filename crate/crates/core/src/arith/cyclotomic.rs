//! Independent classification of `(p, l)` by factoring polynomials mod `p`.
//!
//! `Phi_l` factors mod `p` into irreducibles of degree `f`, the residue
//! degree of `p` in `Z[zeta_l]`. The minimal polynomial of `zeta + zeta^-1`
//! factors into irreducibles of the residue degree `f'` in the real subring.
//! The prime above `p` in the real subring is inert in `Z[zeta_l]` exactly
//! when `f = 2 f'`.

use serde::{Deserialize, Serialize};

use super::poly::{self, Poly};
use super::prime::check_pair;
use super::splitting::Case;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationSplitting {
    pub p: u64,
    pub l: u64,
    /// Common degree of the irreducible factors of `Phi_l` mod `p`.
    pub cyclotomic_degree: usize,
    /// Common degree of the irreducible factors of the real cyclotomic
    /// polynomial mod `p`.
    pub real_degree: usize,
    pub case: Case,
}

/// Minimal polynomial of `zeta_l + zeta_l^-1` reduced mod `p`:
/// `1 + sum_{k=1}^{(l-1)/2} D_k(y)` with `D_0 = 2`, `D_1 = y`,
/// `D_{k+1} = y D_k - D_{k-1}` (so that `D_k(x + 1/x) = x^k + x^-k`).
pub fn real_cyclotomic(l: u64, p: u64) -> Poly {
    let h = ((l - 1) / 2) as usize;
    let y: Poly = vec![0, 1];
    let mut prev: Poly = poly::trim(vec![2 % p]);
    let mut cur: Poly = y.clone();
    let mut total: Poly = poly::trim(vec![1 % p]);
    for _ in 1..=h {
        total = poly::add(&total, &cur, p);
        let next = poly::sub(&poly::mul(&y, &cur, p), &prev, p);
        prev = cur;
        cur = next;
    }
    total
}

/// Factor degrees `(degree, multiplicity)` of a squarefree polynomial.
pub fn factor_degrees(f: &[u64], p: u64) -> Vec<(usize, usize)> {
    poly::distinct_degree(f, p)
        .into_iter()
        .map(|(d, g)| (d, poly::degree(&g).unwrap_or(0) / d))
        .collect()
}

fn uniform_degree(f: &[u64], p: u64) -> usize {
    let parts = factor_degrees(f, p);
    assert_eq!(parts.len(), 1, "factors of unequal degree: {parts:?}");
    parts[0].0
}

pub fn classify_by_factorization(p: u64, l: u64) -> Result<FactorizationSplitting> {
    check_pair(p, l)?;
    let cyclotomic_degree = uniform_degree(&poly::cyclotomic(l, p), p);
    let real_degree = uniform_degree(&real_cyclotomic(l, p), p);
    let case = if cyclotomic_degree == 2 * real_degree {
        Case::Unitary
    } else {
        Case::Split
    };
    Ok(FactorizationSplitting {
        p,
        l,
        cyclotomic_degree,
        real_degree,
        case,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_cyclotomic_small() {
        // zeta_3 + zeta_3^-1 = -1
        assert_eq!(real_cyclotomic(3, 7), vec![1, 1]);
        // 2cos(2pi/5) satisfies y^2 + y - 1
        assert_eq!(real_cyclotomic(5, 7), vec![6, 1, 1]);
        // 2cos(2pi/7) satisfies y^3 + y^2 - 2y - 1
        assert_eq!(real_cyclotomic(7, 11), vec![10, 9, 1, 1]);
    }

    #[test]
    fn classification_examples() {
        let c = classify_by_factorization(5, 3).unwrap();
        assert_eq!((c.cyclotomic_degree, c.real_degree, c.case), (2, 1, Case::Unitary));
        let c = classify_by_factorization(11, 5).unwrap();
        assert_eq!((c.cyclotomic_degree, c.real_degree, c.case), (1, 1, Case::Split));
        let c = classify_by_factorization(103, 13).unwrap();
        assert_eq!((c.cyclotomic_degree, c.real_degree, c.case), (2, 1, Case::Unitary));
    }
}
