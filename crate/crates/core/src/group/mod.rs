//! Finitely generated matrix groups over a finite field: closure
//! enumeration for small groups, randomized Schreier–Sims with a
//! deterministic verification pass for large ones.

mod bsgs;
mod closure;
mod monodromy;

pub use bsgs::{bsgs_order, ChainSummary, StabilizerChain};
pub use closure::{enumerate_closure, ClosureResult, ClosureSet};
pub use monodromy::{
    monodromy_group, radical_containment, ActionKind, MonodromyGroup, RadicalContainmentReport,
};

use crate::arith::{Fe, GaloisField};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Generators of a matrix group acting on column vectors.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    field: GaloisField,
    dim: usize,
    gens: Vec<Matrix>,
}

impl MatrixGroup {
    pub fn new(field: GaloisField, dim: usize, gens: Vec<Matrix>) -> Result<Self> {
        for g in &gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch {
                    left: g.rows(),
                    right: dim,
                });
            }
            if g.det(&field) == 0 {
                return Err(Error::Singular);
            }
        }
        Ok(MatrixGroup { field, dim, gens })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.gens
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.dim)
    }

    /// Same group with a different generating list.
    pub fn with_generators(&self, gens: Vec<Matrix>) -> Result<Self> {
        Self::new(self.field.clone(), self.dim, gens)
    }
}

/// Canonical key: row-major, each entry as its little-endian base-`p`
/// digits, one byte per digit (two bytes when `p > 255`).
pub fn canonical_key(field: &GaloisField, m: &Matrix) -> Box<[u8]> {
    let wide = field.p() > 255;
    let mut out = Vec::with_capacity(m.data().len() * field.degree() * if wide { 2 } else { 1 });
    for &x in m.data() {
        let mut v: Fe = x;
        for _ in 0..field.degree() {
            let d = v % field.p();
            v /= field.p();
            if wide {
                out.extend_from_slice(&(d as u16).to_le_bytes());
            } else {
                out.push(d as u8);
            }
        }
    }
    out.into_boxed_slice()
}
