//! The invariant skew-hermitian form and the invariant vectors.

use serde::Serialize;

use super::GassnerContext;
use crate::arith::{AlgElem, Fe, GaloisField, InvolutiveAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{proportional, AlgMatrix, EchelonBasis, Matrix};

/// Gram matrix `G` with `bar(G)^T = -G` and `bar(M)^T G M = G` for every
/// generator image `M`.
#[derive(Debug, Clone)]
pub struct HermitianForm {
    pub gram: AlgMatrix,
    /// `F_p`-dimension of the solution space (equals the `F_p`-dimension of
    /// the fixed field when the form is unique up to fixed scalars).
    pub solution_dim: usize,
    pub rank: usize,
    /// Basis of the radical, empty when the form is nondegenerate.
    pub kernel: Vec<Vec<AlgElem>>,
}

impl HermitianForm {
    pub fn is_degenerate(&self) -> bool {
        self.rank < self.gram.rows()
    }

    pub fn kernel_vector(&self) -> Option<&[AlgElem]> {
        match self.kernel.as_slice() {
            [v] => Some(v),
            _ => None,
        }
    }

    /// `h(x, y) = bar(x)^T G y`.
    pub fn pairing(&self, alg: &InvolutiveAlgebra, x: &[AlgElem], y: &[AlgElem]) -> AlgElem {
        let gy = self.gram.mul_vec(alg, y);
        x.iter()
            .zip(&gy)
            .fold(alg.zero(), |acc, (&a, &b)| alg.add(acc, alg.mul(alg.involve(a), b)))
    }

    pub fn preserved_by(&self, alg: &InvolutiveAlgebra, m: &AlgMatrix) -> bool {
        m.involve_transpose(alg).mul(alg, &self.gram).mul(alg, m) == self.gram
    }
}

/// Which closed form the radical line matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KernelClosedForm {
    /// `x_i = 1 - t_0 .. t_i`.
    pub inclusive: bool,
    /// `x_i = 1 - t_0 .. t_{i-1}`.
    pub exclusive: bool,
}

impl KernelClosedForm {
    pub fn candidates(ctx: &GassnerContext) -> (Vec<AlgElem>, Vec<AlgElem>) {
        let alg = ctx.algebra();
        let t = ctx.colors();
        let mut inclusive = Vec::new();
        let mut exclusive = Vec::new();
        let mut prefix = alg.one();
        for &ti in t.iter().take(ctx.n()) {
            exclusive.push(alg.sub(alg.one(), prefix));
            prefix = alg.mul(prefix, ti);
            inclusive.push(alg.sub(alg.one(), prefix));
        }
        (inclusive, exclusive)
    }

    pub fn evaluate(ctx: &GassnerContext, v: &[AlgElem]) -> Self {
        let (inc, exc) = Self::candidates(ctx);
        KernelClosedForm {
            inclusive: proportional(ctx.algebra(), &inc, v),
            exclusive: proportional(ctx.algebra(), &exc, v),
        }
    }
}

/// Matrix unit `E_rc` scaled by `b`, as a function of the image it produces
/// under `G -> bar(M)^T G M - G`, flattened to `F_p` coordinates.
fn constraint_columns(
    alg: &InvolutiveAlgebra,
    gens: &[AlgMatrix],
    n: usize,
) -> (Matrix, Vec<(usize, usize, AlgElem)>) {
    let d = alg.prime_dim();
    let mut unknowns = Vec::with_capacity(n * n * d);
    for r in 0..n {
        for c in 0..n {
            for b in 0..d {
                unknowns.push((r, c, alg.prime_basis(b)));
            }
        }
    }
    // rows: each generator gives n*n*d equations, skewness gives n*n*d more
    let rows = (gens.len() + 1) * n * n * d;
    let mut sys = Matrix::zeros(rows, unknowns.len());
    for (col, &(r, c, b)) in unknowns.iter().enumerate() {
        let mut row = 0;
        for m in gens {
            // (bar(M)^T E M)_{xy} = bar(M_rx) b M_cy
            for x in 0..n {
                let left = alg.mul(alg.involve(m.get(r, x)), b);
                for y in 0..n {
                    let mut v = alg.mul(left, m.get(c, y));
                    if x == r && y == c {
                        v = alg.sub(v, b);
                    }
                    for (k, digit) in alg.to_prime_coords(v).into_iter().enumerate() {
                        sys.set(row + k, col, digit);
                    }
                    row += d;
                }
            }
        }
        // (bar(E)^T + E)_{xy}: entry (c, r) gets bar(b), entry (r, c) gets b
        for x in 0..n {
            for y in 0..n {
                let mut v = alg.zero();
                if x == c && y == r {
                    v = alg.add(v, alg.involve(b));
                }
                if x == r && y == c {
                    v = alg.add(v, b);
                }
                for (k, digit) in alg.to_prime_coords(v).into_iter().enumerate() {
                    sys.set(row + k, col, digit);
                }
                row += d;
            }
        }
    }
    (sys, unknowns)
}

fn assemble(alg: &InvolutiveAlgebra, n: usize, coords: &[Fe]) -> AlgMatrix {
    let d = alg.prime_dim();
    let mut g = AlgMatrix::zeros(alg, n, n);
    for r in 0..n {
        for c in 0..n {
            let start = (r * n + c) * d;
            g.set(r, c, alg.from_digits(&coords[start..start + d]));
        }
    }
    g
}

/// `F_p`-basis of the fixed field, as traces of the prime basis.
fn fixed_basis(alg: &InvolutiveAlgebra) -> Vec<AlgElem> {
    let fp = GaloisField::prime(alg.p()).expect("odd prime");
    let mut span = EchelonBasis::new(alg.prime_dim());
    let mut out = Vec::new();
    for i in 0..alg.prime_dim() {
        let t = alg.trace(alg.prime_basis(i));
        if span.insert(&fp, &alg.to_prime_coords(t)).is_some() {
            out.push(t);
        }
    }
    out
}

/// Solves for the invariant skew-hermitian form over `F_p`, imposing
/// invariance under the images of `sigma_i^2`.
pub fn invariant_form(ctx: &GassnerContext) -> Result<HermitianForm> {
    let alg = ctx.algebra();
    let n = ctx.n();
    let fp = GaloisField::prime(alg.p())?;
    let gens = ctx.square_images();
    let (sys, _) = constraint_columns(alg, &gens, n);
    let solutions = sys.nullspace(&fp);
    let expected = alg.fixed_prime_dim();
    if solutions.len() != expected {
        return Err(Error::FormDimension {
            found: solutions.len(),
            expected,
        });
    }
    let gram = assemble(alg, n, &solutions[0]);
    // every solution must be a fixed-field multiple of the first
    let mut multiples = EchelonBasis::new(solutions[0].len());
    for c in fixed_basis(alg) {
        let scaled = gram.scale(alg, c);
        multiples.insert(&fp, &flatten(alg, &scaled));
    }
    if multiples.len() != expected || !solutions.iter().all(|s| multiples.contains(&fp, s)) {
        return Err(Error::FormDimension {
            found: multiples.len(),
            expected,
        });
    }
    let rank = gram.rank(alg).ok_or_else(|| {
        Error::Hypothesis("form has different ranks in the two components".into())
    })?;
    let kernel = algebra_nullspace(alg, &gram);
    Ok(HermitianForm {
        gram,
        solution_dim: solutions.len(),
        rank,
        kernel,
    })
}

fn flatten(alg: &InvolutiveAlgebra, m: &AlgMatrix) -> Vec<Fe> {
    m.entries()
        .iter()
        .flat_map(|&x| alg.to_prime_coords(x))
        .collect()
}

/// Right kernel of `m` over the algebra, assuming every component has the
/// same kernel dimension. Each basis vector is normalized so its first
/// nonzero entry (per component) is `1`.
pub(crate) fn algebra_nullspace(alg: &InvolutiveAlgebra, m: &AlgMatrix) -> Vec<Vec<AlgElem>> {
    let f = alg.component_field();
    let per: Vec<Vec<Vec<Fe>>> = m.components(alg).iter().map(|c| c.nullspace(f)).collect();
    let dim = per[0].len();
    if per.iter().any(|k| k.len() != dim) {
        return Vec::new();
    }
    (0..dim)
        .map(|b| {
            (0..m.cols())
                .map(|j| {
                    let codes: Vec<Fe> = per.iter().map(|k| k[b][j]).collect();
                    alg.from_components(&codes)
                })
                .collect()
        })
        .collect()
}

/// Common fixed vectors of the `sigma_i^2` images (column action).
pub fn invariant_vectors(ctx: &GassnerContext) -> Vec<Vec<AlgElem>> {
    let alg = ctx.algebra();
    let n = ctx.n();
    let gens = ctx.square_images();
    let id = AlgMatrix::identity(alg, n);
    let mut stacked = AlgMatrix::zeros(alg, n * gens.len(), n);
    for (g, m) in gens.iter().enumerate() {
        let d = m.sub(alg, &id);
        for r in 0..n {
            for c in 0..n {
                stacked.set(g * n + r, c, d.get(r, c));
            }
        }
    }
    algebra_nullspace(alg, &stacked)
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
    fn nondegenerate_example() {
        let c = ctx(5, 3, &[1, 1, 1, 1]);
        let form = invariant_form(&c).unwrap();
        assert_eq!(form.rank, 3);
        assert!(form.kernel.is_empty());
        assert!(invariant_vectors(&c).is_empty());
        let alg = c.algebra();
        assert_eq!(form.gram.involve_transpose(alg), form.gram.map(|x| alg.neg(x)));
        for m in c.pure_generator_images() {
            assert!(form.preserved_by(alg, &m));
        }
    }

    #[test]
    fn degenerate_examples() {
        for (p, l, k) in [(5, 3, vec![1, 1, 1]), (5, 3, vec![1, 1, 2, 2]), (11, 5, vec![1, 1, 3])] {
            let c = ctx(p, l, &k);
            let form = invariant_form(&c).unwrap();
            assert_eq!(form.rank, c.n() - 1);
            let v = form.kernel_vector().unwrap();
            let inv = invariant_vectors(&c);
            assert_eq!(inv.len(), 1);
            assert!(proportional(c.algebra(), &inv[0], v));
            let closed = KernelClosedForm::evaluate(&c, v);
            assert!(closed.inclusive);
            assert!(!closed.exclusive);
        }
    }

    #[test]
    fn split_form_unique() {
        let c = ctx(11, 5, &[1, 1, 3, 2]);
        let form = invariant_form(&c).unwrap();
        assert_eq!(form.solution_dim, 1);
        assert_eq!(form.rank, 3);
    }
}
