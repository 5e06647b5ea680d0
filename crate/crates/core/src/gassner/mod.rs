//! The colored specialized reduced Gassner representation.
//!
//! Strand `s` carries the color `t_s = zeta^{k_s}`. A single crossing
//! `sigma_i` applied while the colors `a` (position `i`) and `b` (position
//! `i + 1`) are in place right-multiplies the running matrix by `B(a)`, the
//! identity with row `i` replaced by `(a, -a, 1)` on columns
//! `(i - 1, i, i + 1)`, entries outside `0..n` dropped. The positions of the
//! two strands are then swapped. `sigma_i^-1` right-multiplies by `B(b)^-1`,
//! whose row `i` is `(1, -1/a, 1/a)` with `a = b`. Consequently `sigma_i^2`
//! has row `i` equal to `(a - ab, ab, 1 - a)`.

mod form;
mod spin;
mod transvection;

pub(crate) use form::algebra_nullspace;
pub use form::{invariant_form, invariant_vectors, HermitianForm, KernelClosedForm};
pub use spin::{determinant_subgroup, spin_span, DeterminantSubgroup, SpinMode, SpinResult};
pub use transvection::{
    is_transvection, prop21_commutator, CommutatorConvention, HalfTwistReading, Prop21Report,
    Transvection,
};

use crate::arith::{AlgElem, InvolutiveAlgebra};
use crate::braid::{pure_generators, BraidWord, Letter, StrandPermutation};
use crate::error::{Error, Result};
use crate::linalg::AlgMatrix;

/// Algebra, monodromy vector and the derived colors.
#[derive(Debug, Clone)]
pub struct GassnerContext {
    algebra: InvolutiveAlgebra,
    kvec: Vec<u64>,
    colors: Vec<AlgElem>,
}

impl GassnerContext {
    /// `kvec = (k_0, .., k_n)` with every `k_i` in `1..l` and `n >= 2`.
    pub fn new(algebra: InvolutiveAlgebra, kvec: Vec<u64>) -> Result<Self> {
        let l = algebra.l();
        if kvec.len() < 3 {
            return Err(Error::InvalidMonodromyVector(format!(
                "need at least 3 entries, got {}",
                kvec.len()
            )));
        }
        if let Some(k) = kvec.iter().find(|&&k| k == 0 || k >= l) {
            return Err(Error::InvalidMonodromyVector(format!(
                "entry {k} not in 1..{}",
                l - 1
            )));
        }
        let colors = kvec.iter().map(|&k| algebra.zeta_pow(k as i64)).collect();
        Ok(GassnerContext {
            algebra,
            kvec,
            colors,
        })
    }

    pub fn algebra(&self) -> &InvolutiveAlgebra {
        &self.algebra
    }

    pub fn kvec(&self) -> &[u64] {
        &self.kvec
    }

    pub fn colors(&self) -> &[AlgElem] {
        &self.colors
    }

    /// `n`: number of strands minus one, also the matrix size.
    pub fn n(&self) -> usize {
        self.kvec.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.n()
    }

    pub fn strands(&self) -> usize {
        self.kvec.len()
    }

    pub fn k_sum_mod_l(&self) -> u64 {
        self.kvec.iter().sum::<u64>() % self.algebra.l()
    }

    /// `t_0 .. t_n = 1`, the degenerate case.
    pub fn product_is_one(&self) -> bool {
        self.k_sum_mod_l() == 0
    }

    fn start_slots(&self) -> Vec<usize> {
        (0..self.strands()).collect()
    }

    /// Right-multiplies `m` in place by the single-crossing matrix of
    /// `letter` with `slots[pos]` the strand at each position, then updates
    /// `slots`.
    fn apply_letter(&self, m: &mut AlgMatrix, slots: &mut [usize], letter: Letter) {
        let alg = &self.algebra;
        let n = self.n();
        let i = letter.generator;
        let (left, mid, right) = if letter.inverse {
            let a = self.colors[slots[i + 1]];
            let a_inv = alg.inv(a).expect("roots of unity are units");
            (alg.one(), alg.neg(a_inv), a_inv)
        } else {
            let a = self.colors[slots[i]];
            (a, alg.neg(a), alg.one())
        };
        // M B = M + M[:, i] (row_i(B) - e_i)
        for r in 0..m.rows() {
            let c = m.get(r, i);
            if alg.is_zero(c) {
                continue;
            }
            if i > 0 {
                m.set(r, i - 1, alg.add(m.get(r, i - 1), alg.mul(c, left)));
            }
            if i + 1 < n {
                m.set(r, i + 1, alg.add(m.get(r, i + 1), alg.mul(c, right)));
            }
            m.set(r, i, alg.mul(c, mid));
        }
        slots.swap(i, i + 1);
    }

    /// Matrix of a single letter at the given color state.
    pub fn generator_matrix_at(&self, letter: Letter, slots: &[usize]) -> Result<AlgMatrix> {
        self.check_slots(slots)?;
        if letter.generator >= self.n() {
            return Err(Error::IndexOutOfRange {
                index: letter.generator,
                bound: self.n(),
            });
        }
        let mut m = AlgMatrix::identity(&self.algebra, self.n());
        let mut s = slots.to_vec();
        self.apply_letter(&mut m, &mut s, letter);
        Ok(m)
    }

    /// `sigma_i` evaluated from the initial color state.
    pub fn generator_matrix(&self, i: usize) -> Result<ColoredElement> {
        let w = BraidWord::generator(self.strands(), i)?;
        self.evaluate_word(&w)
    }

    fn check_slots(&self, slots: &[usize]) -> Result<()> {
        if slots.len() != self.strands() {
            return Err(Error::StrandMismatch {
                left: slots.len(),
                right: self.strands(),
            });
        }
        StrandPermutation::from_images(slots.to_vec())?;
        Ok(())
    }

    pub fn evaluate_word(&self, w: &BraidWord) -> Result<ColoredElement> {
        self.evaluate_word_at(w, &self.start_slots())
    }

    /// Evaluates `w` starting with `slots[pos]` the strand at position `pos`.
    pub fn evaluate_word_at(&self, w: &BraidWord, slots: &[usize]) -> Result<ColoredElement> {
        if w.strands() != self.strands() {
            return Err(Error::StrandMismatch {
                left: w.strands(),
                right: self.strands(),
            });
        }
        self.check_slots(slots)?;
        let mut m = AlgMatrix::identity(&self.algebra, self.n());
        let mut s = slots.to_vec();
        for &letter in w.letters() {
            self.apply_letter(&mut m, &mut s, letter);
        }
        Ok(ColoredElement {
            matrix: m,
            start: slots.to_vec(),
            end: s,
        })
    }

    /// Matrix of a pure braid; errors if `w` is not pure.
    pub fn pure_matrix(&self, w: &BraidWord) -> Result<AlgMatrix> {
        let e = self.evaluate_word(w)?;
        if !e.is_pure() {
            return Err(Error::Hypothesis(format!("word {w} is not pure")));
        }
        Ok(e.matrix)
    }

    /// Images of `sigma_i^2`, `i = 0..n-1`.
    pub fn square_images(&self) -> Vec<AlgMatrix> {
        (0..self.n())
            .map(|i| {
                let w = BraidWord::new(self.strands(), vec![Letter::positive(i); 2])
                    .expect("index in range");
                self.pure_matrix(&w).expect("square is pure")
            })
            .collect()
    }

    /// Images of the standard pure generators `A_ij`, lexicographic in `(i, j)`.
    pub fn pure_generator_images(&self) -> Vec<AlgMatrix> {
        pure_generators(self.n())
            .iter()
            .map(|w| self.pure_matrix(w).expect("pure generator"))
            .collect()
    }
}

/// Value of a braid word: its matrix together with the color states before
/// and after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredElement {
    pub matrix: AlgMatrix,
    /// Strand at each position before the word.
    pub start: Vec<usize>,
    /// Strand at each position after the word.
    pub end: Vec<usize>,
}

impl ColoredElement {
    /// Strand permutation of the word (start position to end position).
    pub fn permutation(&self) -> StrandPermutation {
        let mut pos_of_strand = vec![0; self.end.len()];
        for (pos, &s) in self.end.iter().enumerate() {
            pos_of_strand[s] = pos;
        }
        StrandPermutation::from_images(self.start.iter().map(|&s| pos_of_strand[s]).collect())
            .expect("slots are permutations")
    }

    pub fn is_pure(&self) -> bool {
        self.start == self.end
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn then(&self, alg: &InvolutiveAlgebra, other: &ColoredElement) -> Result<ColoredElement> {
        if self.end != other.start {
            return Err(Error::Hypothesis(
                "color states do not match for composition".into(),
            ));
        }
        Ok(ColoredElement {
            matrix: self.matrix.mul(alg, &other.matrix),
            start: self.start.clone(),
            end: other.end.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_algebra, splitting_data};

    fn ctx(p: u64, l: u64, k: &[u64]) -> GassnerContext {
        let alg = build_algebra(&splitting_data(p, l).unwrap()).unwrap();
        GassnerContext::new(alg, k.to_vec()).unwrap()
    }

    #[test]
    fn square_of_sigma0_truncated_block() {
        let c = ctx(5, 3, &[1, 1, 1, 1]);
        let alg = c.algebra();
        let z = alg.zeta();
        let m = c.square_images()[0].clone();
        assert_eq!(m.get(0, 0), alg.mul(z, z));
        assert_eq!(m.get(0, 1), alg.sub(alg.one(), z));
        assert_eq!(m.get(1, 0), alg.zero());
        assert_eq!(m.get(1, 1), alg.one());
        assert_eq!(m.get(2, 2), alg.one());
    }

    #[test]
    fn rejects_bad_vectors() {
        let alg = build_algebra(&splitting_data(5, 3).unwrap()).unwrap();
        assert!(GassnerContext::new(alg.clone(), vec![1, 1]).is_err());
        assert!(GassnerContext::new(alg.clone(), vec![1, 0, 1]).is_err());
        assert!(GassnerContext::new(alg, vec![1, 3, 1]).is_err());
    }

    #[test]
    fn letter_and_inverse_cancel() {
        let c = ctx(11, 5, &[1, 2, 3, 4]);
        let w = BraidWord::parse(4, "1 -1 0 2 -2 -0").unwrap();
        let e = c.evaluate_word(&w).unwrap();
        assert!(e.matrix.is_identity(c.algebra()));
        assert!(e.is_pure());
    }

    #[test]
    fn composition_matches_concatenation() {
        let c = ctx(5, 3, &[1, 2, 1, 2, 2]);
        let a = BraidWord::parse(5, "0 1 -2 3").unwrap();
        let b = BraidWord::parse(5, "2 2 -0 1").unwrap();
        let ea = c.evaluate_word(&a).unwrap();
        let eb = c.evaluate_word_at(&b, &ea.end).unwrap();
        let eab = c.evaluate_word(&a.concat(&b).unwrap()).unwrap();
        assert_eq!(ea.then(c.algebra(), &eb).unwrap(), eab);
        assert_eq!(
            eab.permutation(),
            a.underlying_permutation().then(&b.underlying_permutation())
        );
    }
}
