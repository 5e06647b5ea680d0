//! Dense matrices over a [`GaloisField`] and over an [`InvolutiveAlgebra`].
//!
//! Field matrices carry no reference to their field; every operation takes
//! it explicitly. Algebra matrices are handled through their component
//! matrices whenever a field is required (rank, kernels, inverses).

use crate::arith::{AlgElem, Fe, GaloisField, InvolutiveAlgebra};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fe>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<Fe> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Fe>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u64::from(i == j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, f: &GaloisField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &GaloisField, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut acc = 0;
                for (a, &b) in row.iter().zip(v) {
                    if *a != 0 && b != 0 {
                        acc = f.add(acc, f.mul(*a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, f: &GaloisField, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, f: &GaloisField, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, f: &GaloisField, c: Fe) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &GaloisField) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in 0..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self, f: &GaloisField) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self, f: &GaloisField) -> Vec<Vec<Fe>> {
        let (r, pivots) = self.rref(f);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut x = vec![0; self.cols];
            x[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(r.get(i, free));
            }
            basis.push(x);
        }
        basis
    }

    pub fn inverse(&self, f: &GaloisField) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Ok(out)
    }

    pub fn det(&self, f: &GaloisField) -> Fe {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Block diagonal `diag(a, b)`.
    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                out.set(i, j, a.get(i, j));
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(a.rows + i, a.cols + j, b.get(i, j));
            }
        }
        out
    }
}

/// Incrementally maintained row-echelon basis of a subspace of `F^n`.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    dim: usize,
    /// Rows normalized so their pivot entry is `1`, ordered by pivot.
    rows: Vec<(usize, Vec<Fe>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    pub fn reduce(&self, f: &GaloisField, v: &[Fe]) -> Vec<Fe> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        v
    }

    pub fn contains(&self, f: &GaloisField, v: &[Fe]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns the reduced vector when it enlarged the span.
    pub fn insert(&mut self, f: &GaloisField, v: &[Fe]) -> Option<Vec<Fe>> {
        let mut r = self.reduce(f, v);
        let pivot = r.iter().position(|&x| x != 0)?;
        let inv = f.inv(r[pivot]).expect("nonzero");
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[pivot];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, r.clone()));
        Some(r)
    }

    pub fn vectors(&self) -> Vec<Vec<Fe>> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

/// Matrix over the involutive algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgMatrix {
    rows: usize,
    cols: usize,
    data: Vec<AlgElem>,
}

impl AlgMatrix {
    pub fn zeros(alg: &InvolutiveAlgebra, rows: usize, cols: usize) -> Self {
        AlgMatrix {
            rows,
            cols,
            data: vec![alg.zero(); rows * cols],
        }
    }

    pub fn identity(alg: &InvolutiveAlgebra, n: usize) -> Self {
        let mut m = Self::zeros(alg, n, n);
        for i in 0..n {
            m.set(i, i, alg.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<AlgElem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<AlgElem> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        AlgMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[AlgElem] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> AlgElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: AlgElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[AlgElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<AlgElem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_identity(&self, alg: &InvolutiveAlgebra) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    self.get(i, j) == if i == j { alg.one() } else { alg.zero() }
                })
            })
    }

    pub fn mul(&self, alg: &InvolutiveAlgebra, other: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = AlgMatrix::zeros(alg, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if alg.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !alg.is_zero(b) {
                        let idx = i * other.cols + j;
                        out.data[idx] = alg.add(out.data[idx], alg.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, alg: &InvolutiveAlgebra, v: &[AlgElem]) -> Vec<AlgElem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(alg.zero(), |acc, (&a, &b)| alg.add(acc, alg.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, alg: &InvolutiveAlgebra, other: &AlgMatrix) -> AlgMatrix {
        self.zip_with(other, |a, b| alg.add(a, b))
    }

    pub fn sub(&self, alg: &InvolutiveAlgebra, other: &AlgMatrix) -> AlgMatrix {
        self.zip_with(other, |a, b| alg.sub(a, b))
    }

    fn zip_with(&self, other: &AlgMatrix, op: impl Fn(AlgElem, AlgElem) -> AlgElem) -> AlgMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        AlgMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn map(&self, op: impl Fn(AlgElem) -> AlgElem) -> AlgMatrix {
        AlgMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| op(a)).collect(),
        }
    }

    pub fn scale(&self, alg: &InvolutiveAlgebra, c: AlgElem) -> AlgMatrix {
        self.map(|a| alg.mul(c, a))
    }

    pub fn transpose(&self) -> AlgMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        AlgMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `bar(M)^T`.
    pub fn involve_transpose(&self, alg: &InvolutiveAlgebra) -> AlgMatrix {
        self.transpose().map(|a| alg.involve(a))
    }

    /// The matrix of `c`-th component codes.
    pub fn component(&self, c: usize) -> Matrix {
        Matrix::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(|a| a.component(c)).collect(),
        )
    }

    pub fn components(&self, alg: &InvolutiveAlgebra) -> Vec<Matrix> {
        (0..alg.components()).map(|c| self.component(c)).collect()
    }

    pub fn from_components(alg: &InvolutiveAlgebra, comps: &[Matrix]) -> AlgMatrix {
        let (rows, cols) = (comps[0].rows(), comps[0].cols());
        let data = (0..rows * cols)
            .map(|idx| {
                let codes: Vec<Fe> = comps.iter().map(|m| m.data()[idx]).collect();
                alg.from_components(&codes)
            })
            .collect();
        AlgMatrix { rows, cols, data }
    }

    /// Rank of each component matrix.
    pub fn component_ranks(&self, alg: &InvolutiveAlgebra) -> Vec<usize> {
        let f = alg.component_field();
        self.components(alg).iter().map(|m| m.rank(f)).collect()
    }

    /// Rank when all components agree.
    pub fn rank(&self, alg: &InvolutiveAlgebra) -> Option<usize> {
        let ranks = self.component_ranks(alg);
        ranks.iter().all(|&r| r == ranks[0]).then_some(ranks[0])
    }

    pub fn inverse(&self, alg: &InvolutiveAlgebra) -> Result<AlgMatrix> {
        let f = alg.component_field();
        let comps = self
            .components(alg)
            .iter()
            .map(|m| m.inverse(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgMatrix::from_components(alg, &comps))
    }

    pub fn det(&self, alg: &InvolutiveAlgebra) -> AlgElem {
        let f = alg.component_field();
        let codes: Vec<Fe> = self.components(alg).iter().map(|m| m.det(f)).collect();
        alg.from_components(&codes)
    }
}

/// Right-kernel basis of each component matrix.
pub fn component_nullspaces(alg: &InvolutiveAlgebra, m: &AlgMatrix) -> Vec<Vec<Vec<Fe>>> {
    let f = alg.component_field();
    m.components(alg).iter().map(|c| c.nullspace(f)).collect()
}

/// Whether `u` is an algebra multiple of `v` in every component.
pub fn proportional(alg: &InvolutiveAlgebra, u: &[AlgElem], v: &[AlgElem]) -> bool {
    let f = alg.component_field();
    (0..alg.components()).all(|c| {
        let uc: Vec<Fe> = u.iter().map(|x| x.component(c)).collect();
        let vc: Vec<Fe> = v.iter().map(|x| x.component(c)).collect();
        field_proportional(f, &uc, &vc)
    })
}

/// `u` and `v` are nonzero and span the same line.
pub fn field_proportional(f: &GaloisField, u: &[Fe], v: &[Fe]) -> bool {
    let Some(i) = v.iter().position(|&x| x != 0) else {
        return false;
    };
    if u[i] == 0 {
        return false;
    }
    let ratio = f.div(u[i], v[i]).expect("nonzero");
    u.iter().zip(v).all(|(&a, &b)| a == f.mul(ratio, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &GaloisField, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
        Matrix::from_vec(n, n, (0..n * n).map(|_| f.random(rng)).collect())
    }

    #[test]
    fn inverse_and_det() {
        let f = GaloisField::new(5, vec![1, 1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_matrix(&f, 4, &mut rng);
            let b = random_matrix(&f, 4, &mut rng);
            let da = a.det(&f);
            assert_eq!(a.mul(&f, &b).det(&f), f.mul(da, b.det(&f)));
            match a.inverse(&f) {
                Ok(ai) => {
                    assert_ne!(da, 0);
                    assert!(a.mul(&f, &ai).is_identity());
                }
                Err(Error::Singular) => assert_eq!(da, 0),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn nullspace_dimension() {
        let f = GaloisField::prime(7).unwrap();
        let a = Matrix::from_rows(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let ns = a.nullspace(&f);
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&f, &ns[0]).iter().all(|&x| x == 0));
        assert_eq!(a.rank(&f), 2);
    }

    #[test]
    fn echelon_basis_spans() {
        let f = GaloisField::prime(3).unwrap();
        let mut b = EchelonBasis::new(3);
        assert!(b.insert(&f, &[1, 1, 0]).is_some());
        assert!(b.insert(&f, &[2, 2, 0]).is_none());
        assert!(b.insert(&f, &[0, 1, 1]).is_some());
        assert!(b.contains(&f, &[1, 2, 1]));
        assert!(!b.contains(&f, &[0, 0, 1]));
        assert!(b.insert(&f, &[0, 0, 1]).is_some());
        assert!(b.is_full());
    }
}
