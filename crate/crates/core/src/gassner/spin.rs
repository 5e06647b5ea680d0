//! Spinning vectors under the pure braid image, and the determinant subgroup.

use std::collections::BTreeSet;

use serde::Serialize;

use super::GassnerContext;
use crate::arith::{AlgElem, Case, Fe, GaloisField};
use crate::error::{Error, Result};
use crate::linalg::{AlgMatrix, EchelonBasis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinMode {
    /// Submodules over the algebra (one subspace per component).
    Algebra,
    /// Submodules of the underlying `F_p`-vector space.
    PrimeField,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinResult {
    pub mode: SpinMode,
    /// Dimension of the spun subspace, per component for [`SpinMode::Algebra`]
    /// and a single `F_p`-dimension otherwise.
    pub dims: Vec<usize>,
    /// Dimension of the ambient space in the same units.
    pub ambient: usize,
}

impl SpinResult {
    pub fn is_full(&self) -> bool {
        self.dims.iter().all(|&d| d == self.ambient)
    }
}

fn spin_field(f: &GaloisField, gens: &[crate::linalg::Matrix], v: &[Fe]) -> usize {
    let mut basis = EchelonBasis::new(v.len());
    let mut queue = Vec::new();
    if let Some(r) = basis.insert(f, v) {
        queue.push(r);
    }
    while let Some(w) = queue.pop() {
        for g in gens {
            let image = g.mul_vec(f, &w);
            if let Some(r) = basis.insert(f, &image) {
                queue.push(r);
            }
            if basis.is_full() {
                return basis.len();
            }
        }
    }
    basis.len()
}

/// Smallest subspace containing `v` stable under the images of all pure
/// generators `A_ij` and their inverses.
pub fn spin_span(ctx: &GassnerContext, v: &[AlgElem], mode: SpinMode) -> Result<SpinResult> {
    let alg = ctx.algebra();
    let n = ctx.n();
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            left: v.len(),
            right: n,
        });
    }
    if v.iter().all(|&x| alg.is_zero(x)) {
        return Err(Error::ZeroVector);
    }
    let mut gens: Vec<AlgMatrix> = ctx.pure_generator_images();
    let inverses = gens
        .iter()
        .map(|g| g.inverse(alg))
        .collect::<Result<Vec<_>>>()?;
    gens.extend(inverses);
    match mode {
        SpinMode::Algebra => {
            let f = alg.component_field();
            let dims = (0..alg.components())
                .map(|c| {
                    let vc: Vec<Fe> = v.iter().map(|x| x.component(c)).collect();
                    if vc.iter().all(|&x| x == 0) {
                        return 0;
                    }
                    let gc: Vec<_> = gens.iter().map(|g| g.component(c)).collect();
                    spin_field(f, &gc, &vc)
                })
                .collect();
            Ok(SpinResult {
                mode,
                dims,
                ambient: n,
            })
        }
        SpinMode::PrimeField => {
            let fp = GaloisField::prime(alg.p())?;
            let d = alg.prime_dim();
            // F_p-matrix of x -> M x in the coordinates (entry, digit)
            let lifted: Vec<crate::linalg::Matrix> = gens
                .iter()
                .map(|g| {
                    let mut m = crate::linalg::Matrix::zeros(n * d, n * d);
                    for col in 0..n {
                        for b in 0..d {
                            let mut e = vec![alg.zero(); n];
                            e[col] = alg.prime_basis(b);
                            let image = g.mul_vec(alg, &e);
                            for (row, x) in image.iter().enumerate() {
                                for (k, digit) in alg.to_prime_coords(*x).into_iter().enumerate() {
                                    m.set(row * d + k, col * d + b, digit);
                                }
                            }
                        }
                    }
                    m
                })
                .collect();
            let coords: Vec<Fe> = v.iter().flat_map(|&x| alg.to_prime_coords(x)).collect();
            Ok(SpinResult {
                mode,
                dims: vec![spin_field(&fp, &lifted, &coords)],
                ambient: n * d,
            })
        }
    }
}

/// Multiplicative closure of the determinants of the `sigma_i^2` images.
#[derive(Debug, Clone, Serialize)]
pub struct DeterminantSubgroup {
    /// Exponents `e` with `det(sigma_i^2) = zeta^e`.
    pub generator_exponents: Vec<u64>,
    /// Exponents of all elements of the generated subgroup, sorted.
    pub subgroup_exponents: Vec<u64>,
    pub is_full_mu_l: bool,
    /// Degree over `F_p` of the field generated by the determinants, per
    /// component; equal to the component degree when the entries cannot be
    /// written over a proper subfield.
    pub generated_degree: usize,
    /// Determinants take different values in the two components (split case).
    pub components_distinct: bool,
}

impl DeterminantSubgroup {
    /// Certifies that prime-field spinning should fill the whole space.
    pub fn certifies_prime_field_irreducibility(&self, component_degree: usize, case: Case) -> bool {
        self.generated_degree == component_degree
            && (case == Case::Unitary || self.components_distinct)
    }
}

pub fn determinant_subgroup(ctx: &GassnerContext) -> Result<DeterminantSubgroup> {
    let alg = ctx.algebra();
    let l = alg.l();
    let dets: Vec<AlgElem> = ctx.square_images().iter().map(|m| m.det(alg)).collect();
    let generator_exponents = dets
        .iter()
        .map(|&d| {
            alg.root_exponent(d).ok_or_else(|| {
                Error::Hypothesis(format!("determinant {d:?} is not an l-th root of unity"))
            })
        })
        .collect::<Result<Vec<u64>>>()?;
    let mut seen = BTreeSet::from([0u64]);
    let mut frontier = vec![0u64];
    while let Some(e) = frontier.pop() {
        for &g in &generator_exponents {
            let next = (e + g) % l;
            if seen.insert(next) {
                frontier.push(next);
            }
        }
    }
    let components_distinct = alg.case() == Case::Split
        && dets.iter().any(|d| d.component(0) != d.component(1));
    Ok(DeterminantSubgroup {
        is_full_mu_l: seen.len() as u64 == l,
        subgroup_exponents: seen.into_iter().collect(),
        generated_degree: alg.generated_degree(&dets),
        components_distinct,
        generator_exponents,
    })
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
    fn determinants() {
        let c = ctx(5, 3, &[1, 1, 1, 1]);
        let d = determinant_subgroup(&c).unwrap();
        assert_eq!(d.generator_exponents, vec![2, 2, 2]);
        assert!(d.is_full_mu_l);
        let c = ctx(7, 5, &[1, 4, 1, 4]);
        let d = determinant_subgroup(&c).unwrap();
        assert_eq!(d.subgroup_exponents, vec![0]);
    }

    #[test]
    fn spinning() {
        let c = ctx(5, 3, &[1, 1, 1, 1]);
        let alg = c.algebra();
        let v = vec![alg.one(), alg.zero(), alg.zero()];
        assert!(spin_span(&c, &v, SpinMode::Algebra).unwrap().is_full());
        let r = spin_span(&c, &v, SpinMode::PrimeField).unwrap();
        assert_eq!(r.ambient, 6);
        assert!(r.is_full());
        assert!(spin_span(&c, &[alg.zero(); 3], SpinMode::Algebra).is_err());

        let c = ctx(5, 3, &[1, 1, 1]);
        let v = super::super::invariant_vectors(&c).remove(0);
        assert_eq!(spin_span(&c, &v, SpinMode::Algebra).unwrap().dims, vec![1]);
    }
}
