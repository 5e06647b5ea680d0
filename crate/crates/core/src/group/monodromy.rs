//! The image of the pure braid group under a Gassner context, realized as
//! a matrix group over a single field.
//!
//! Unitary case: the algebra is `F_{q^2}` and the first component is the
//! whole story. Split case with a nondegenerate form: the second component
//! of every element is `G^-T M^-T G^T` where `G`, `M` are first components,
//! so the first component is a faithful image (checked on generators).
//! Split degenerate case: no such relation holds in general and the group
//! acts on pairs, block-diagonally.

use std::collections::HashSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{MatrixGroup, StabilizerChain};
use crate::arith::{AlgElem, Case};
use crate::error::{Error, Result};
use crate::gassner::{invariant_form, GassnerContext};
use crate::linalg::{AlgMatrix, Matrix};
use crate::unitary::radical_transvections;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    UnitaryComponent,
    SplitFirstComponent,
    SplitPair,
}

#[derive(Debug, Clone)]
pub struct MonodromyGroup {
    pub action: ActionKind,
    pub group: MatrixGroup,
    /// Split nondegenerate case: whether every generator's second component
    /// was determined by its first through the form. `None` otherwise.
    pub dual_determination: Option<bool>,
}

impl MonodromyGroup {
    /// The matrix representing an algebra matrix under the chosen action.
    pub fn embed(&self, m: &AlgMatrix) -> Matrix {
        match self.action {
            ActionKind::UnitaryComponent | ActionKind::SplitFirstComponent => m.component(0),
            ActionKind::SplitPair => Matrix::block_diag(&m.component(0), &m.component(1)),
        }
    }
}

fn dual_of(f: &crate::arith::GaloisField, g0: &Matrix, m0: &Matrix) -> Result<Matrix> {
    let g_inv_t = g0.inverse(f)?.transpose();
    let m_inv_t = m0.inverse(f)?.transpose();
    Ok(g_inv_t.mul(f, &m_inv_t).mul(f, &g0.transpose()))
}

/// Matrix group generated by the images of the pure generators `A_ij`.
pub fn monodromy_group(ctx: &GassnerContext) -> Result<MonodromyGroup> {
    let alg = ctx.algebra();
    let f = alg.component_field().clone();
    let images = ctx.pure_generator_images();
    let n = ctx.n();
    match alg.case() {
        Case::Unitary => {
            let gens = images.iter().map(|m| m.component(0)).collect();
            Ok(MonodromyGroup {
                action: ActionKind::UnitaryComponent,
                group: MatrixGroup::new(f, n, gens)?,
                dual_determination: None,
            })
        }
        Case::Split => {
            let form = invariant_form(ctx)?;
            if !form.is_degenerate() {
                let g0 = form.gram.component(0);
                let mut determined = true;
                for m in &images {
                    if dual_of(&f, &g0, &m.component(0))? != m.component(1) {
                        determined = false;
                        break;
                    }
                }
                if determined {
                    let gens = images.iter().map(|m| m.component(0)).collect();
                    return Ok(MonodromyGroup {
                        action: ActionKind::SplitFirstComponent,
                        group: MatrixGroup::new(f, n, gens)?,
                        dual_determination: Some(true),
                    });
                }
                let gens = images
                    .iter()
                    .map(|m| Matrix::block_diag(&m.component(0), &m.component(1)))
                    .collect();
                return Ok(MonodromyGroup {
                    action: ActionKind::SplitPair,
                    group: MatrixGroup::new(f, 2 * n, gens)?,
                    dual_determination: Some(false),
                });
            }
            let gens = images
                .iter()
                .map(|m| Matrix::block_diag(&m.component(0), &m.component(1)))
                .collect();
            Ok(MonodromyGroup {
                action: ActionKind::SplitPair,
                group: MatrixGroup::new(f, 2 * n, gens)?,
                dual_determination: None,
            })
        }
    }
}

/// Which radical transvections lie in the monodromy group.
#[derive(Debug, Clone, Serialize)]
pub struct RadicalContainmentReport {
    /// Radical size as a decimal string, when it fits in `u128`.
    pub radical_size: Option<String>,
    pub tested: usize,
    pub contained: usize,
    pub exhaustive: bool,
    pub all_contained: bool,
    /// Split case, exhaustive runs only: number of distinct first and
    /// second components among the contained elements.
    pub projection_sizes: Option<(usize, usize)>,
    /// The contained elements form the graph of a bijection between the
    /// two component radicals.
    pub graph_pattern: Option<bool>,
}

/// Tests radical elements for membership, all of them when there are at
/// most `cap`, otherwise `cap` random ones drawn with `seed`.
pub fn radical_containment(
    ctx: &GassnerContext,
    mg: &MonodromyGroup,
    chain: &StabilizerChain,
    cap: usize,
    seed: u64,
) -> Result<RadicalContainmentReport> {
    let alg = ctx.algebra();
    let form = invariant_form(ctx)?;
    if !form.is_degenerate() {
        return Err(Error::Hypothesis("form is nondegenerate, radical is trivial".into()));
    }
    let rad = radical_transvections(alg, &form)?;
    let size = rad.size(alg);
    let (elements, exhaustive) = match rad.enumerate(alg, cap as u128) {
        Some(all) => (all, true),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = rad.annihilator.len();
            let sample = (0..cap)
                .map(|_| {
                    let coeffs: Vec<AlgElem> = (0..k).map(|_| alg.random(&mut rng)).collect();
                    rad.element(alg, &coeffs)
                })
                .collect();
            (sample, false)
        }
    };
    let inside: Vec<&AlgMatrix> = elements
        .iter()
        .filter(|m| chain.contains(&mg.embed(m)))
        .collect();
    let (projection_sizes, graph_pattern) = if exhaustive && mg.action == ActionKind::SplitPair {
        let (a, b, graph) = graph_check(&inside, size);
        (Some((a, b)), Some(graph))
    } else {
        (None, None)
    };
    Ok(RadicalContainmentReport {
        radical_size: size.map(|s| s.to_string()),
        tested: elements.len(),
        contained: inside.len(),
        exhaustive,
        all_contained: inside.len() == elements.len(),
        projection_sizes,
        graph_pattern,
    })
}

fn graph_check(inside: &[&AlgMatrix], size: Option<u128>) -> (usize, usize, bool) {
    let first: HashSet<Matrix> = inside.iter().map(|m| m.component(0)).collect();
    let second: HashSet<Matrix> = inside.iter().map(|m| m.component(1)).collect();
    // each component radical has sqrt(size) elements
    let per_component = size.map(|s| (s as f64).sqrt().round() as usize);
    let graph = first.len() == inside.len()
        && second.len() == inside.len()
        && per_component == Some(inside.len());
    (first.len(), second.len(), graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_algebra, splitting_data};
    use num_bigint::BigUint;

    fn ctx(p: u64, l: u64, k: &[u64]) -> GassnerContext {
        let alg = build_algebra(&splitting_data(p, l).unwrap()).unwrap();
        GassnerContext::new(alg, k.to_vec()).unwrap()
    }

    #[test]
    fn split_nondegenerate_uses_first_component() {
        let c = ctx(11, 5, &[1, 1, 1]);
        let mg = monodromy_group(&c).unwrap();
        assert_eq!(mg.action, ActionKind::SplitFirstComponent);
        assert_eq!(mg.dual_determination, Some(true));
    }

    #[test]
    fn unitary_small_group_order() {
        let c = ctx(5, 3, &[1, 1, 1]);
        let mg = monodromy_group(&c).unwrap();
        assert_eq!(mg.action, ActionKind::UnitaryComponent);
        let chain = StabilizerChain::build(&mg.group, 0).unwrap();
        let closure = crate::group::enumerate_closure(&mg.group, 1_000_000)
            .order()
            .unwrap();
        assert_eq!(chain.order(), BigUint::from(closure));
    }

    #[test]
    fn degenerate_unitary_radical_membership() {
        let c = ctx(5, 3, &[1, 1, 2, 2]);
        let mg = monodromy_group(&c).unwrap();
        let chain = StabilizerChain::build(&mg.group, 0).unwrap();
        let r = radical_containment(&c, &mg, &chain, 10_000, 0).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.tested, 625);
        assert!(r.contained >= 1);
    }
}
