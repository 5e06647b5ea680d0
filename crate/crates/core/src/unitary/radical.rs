//! The unipotent radical of the isometry group of a degenerate form: all
//! transvections `x -> x + phi(x) v` along the radical line `v` with
//! `phi(v) = 0`. In the split case each component carries its own
//! transvection, so an element is a pair.

use serde::Serialize;

use crate::arith::{AlgElem, Fe, InvolutiveAlgebra};
use crate::error::{Error, Result};
use crate::gassner::HermitianForm;
use crate::linalg::{AlgMatrix, Matrix};

#[derive(Debug, Clone)]
pub struct Radical {
    pub direction: Vec<AlgElem>,
    /// Basis of the functionals vanishing on `direction`, as row vectors.
    pub annihilator: Vec<Vec<AlgElem>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RadicalSummary {
    pub direction: Vec<Vec<u64>>,
    pub annihilator_dim: usize,
    /// `|E|^annihilator_dim` when it fits in `u128`.
    pub size: Option<u128>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    /// `1 + v phi^T` with `phi = sum c_i annihilator_i`.
    pub fn element(&self, alg: &InvolutiveAlgebra, coeffs: &[AlgElem]) -> AlgMatrix {
        let n = self.dim();
        let mut phi = vec![alg.zero(); n];
        for (c, basis) in coeffs.iter().zip(&self.annihilator) {
            for (x, &b) in phi.iter_mut().zip(basis) {
                *x = alg.add(*x, alg.mul(*c, b));
            }
        }
        self.from_functional(alg, &phi)
    }

    pub fn from_functional(&self, alg: &InvolutiveAlgebra, phi: &[AlgElem]) -> AlgMatrix {
        let n = self.dim();
        let mut m = AlgMatrix::identity(alg, n);
        for i in 0..n {
            for j in 0..n {
                let d = alg.mul(self.direction[i], phi[j]);
                m.set(i, j, alg.add(m.get(i, j), d));
            }
        }
        m
    }

    /// Whether `m` lies in the radical.
    pub fn contains(&self, alg: &InvolutiveAlgebra, m: &AlgMatrix) -> bool {
        let n = self.dim();
        if m.rows() != n || m.cols() != n {
            return false;
        }
        let f = alg.component_field();
        let d = m.sub(alg, &AlgMatrix::identity(alg, n));
        (0..alg.components()).all(|c| {
            let dc = d.component(c);
            let v: Vec<Fe> = self.direction.iter().map(|x| x.component(c)).collect();
            component_contains(f, &dc, &v)
        })
    }

    /// Every element, when there are at most `cap`.
    pub fn enumerate(&self, alg: &InvolutiveAlgebra, cap: u128) -> Option<Vec<AlgMatrix>> {
        let size = self.size(alg)?;
        if size > cap {
            return None;
        }
        let elems: Vec<AlgElem> = alg.elements().collect();
        let k = self.annihilator.len();
        let mut out = Vec::with_capacity(size as usize);
        let mut idx = vec![0usize; k];
        loop {
            let coeffs: Vec<AlgElem> = idx.iter().map(|&i| elems[i]).collect();
            out.push(self.element(alg, &coeffs));
            let mut pos = 0;
            while pos < k {
                idx[pos] += 1;
                if idx[pos] < elems.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
        Some(out)
    }

    pub fn size(&self, alg: &InvolutiveAlgebra) -> Option<u128> {
        alg.size().checked_pow(self.annihilator.len() as u32)
    }

    pub fn summary(&self, alg: &InvolutiveAlgebra) -> RadicalSummary {
        RadicalSummary {
            direction: self.direction.iter().map(|&x| alg.to_digits(x)).collect(),
            annihilator_dim: self.annihilator.len(),
            size: self.size(alg),
        }
    }
}

/// `d = v phi^T` for some `phi` with `phi(v) = 0` (including `d = 0`).
fn component_contains(f: &crate::arith::GaloisField, d: &Matrix, v: &[Fe]) -> bool {
    let n = v.len();
    let Some(r) = v.iter().position(|&x| x != 0) else {
        return d.is_zero();
    };
    let inv = f.inv(v[r]).expect("nonzero");
    let phi: Vec<Fe> = d.row(r).iter().map(|&x| f.mul(x, inv)).collect();
    let on_v = phi
        .iter()
        .zip(v)
        .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
    on_v == 0 && (0..n).all(|i| (0..n).all(|j| d.get(i, j) == f.mul(v[i], phi[j])))
}

/// The radical of a degenerate form.
pub fn radical_transvections(alg: &InvolutiveAlgebra, form: &HermitianForm) -> Result<Radical> {
    let v = form
        .kernel_vector()
        .ok_or_else(|| Error::Hypothesis("form radical is not a line".into()))?
        .to_vec();
    let n = v.len();
    // functionals phi with sum phi_j v_j = 0: kernel of the 1 x n matrix v^T
    let row = AlgMatrix::from_rows(vec![v.clone()]);
    let annihilator = crate::gassner::algebra_nullspace(alg, &row);
    if annihilator.len() != n - 1 {
        return Err(Error::Hypothesis("radical vector vanishes in a component".into()));
    }
    Ok(Radical {
        direction: v,
        annihilator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_algebra, splitting_data};
    use crate::gassner::{invariant_form, is_transvection, GassnerContext};
    use crate::linalg::proportional;

    #[test]
    fn radical_elements_are_transvections_along_kernel() {
        let alg = build_algebra(&splitting_data(5, 3).unwrap()).unwrap();
        let ctx = GassnerContext::new(alg.clone(), vec![1, 1, 2, 2]).unwrap();
        let form = invariant_form(&ctx).unwrap();
        let rad = radical_transvections(&alg, &form).unwrap();
        let all = rad.enumerate(&alg, 10_000).unwrap();
        assert_eq!(all.len(), 625);
        let mut nontrivial = 0;
        for m in &all {
            assert!(rad.contains(&alg, m));
            assert!(form.preserved_by(&alg, m));
            if let Some(t) = is_transvection(&alg, m) {
                assert!(proportional(&alg, &t.direction, &rad.direction));
                nontrivial += 1;
            }
        }
        assert_eq!(nontrivial, 624);
        assert!(rad.contains(&alg, &AlgMatrix::identity(&alg, 3)));
        // a Gassner square with t_i t_{i+1} != 1 is not in the radical
        assert!(!rad.contains(&alg, &ctx.square_images()[0]));
    }

    #[test]
    fn nondegenerate_rejected() {
        let alg = build_algebra(&splitting_data(5, 3).unwrap()).unwrap();
        let ctx = GassnerContext::new(alg.clone(), vec![1, 1, 1, 1]).unwrap();
        let form = invariant_form(&ctx).unwrap();
        assert!(radical_transvections(&alg, &form).is_err());
    }
}
