//! Randomized Schreier–Sims on column vectors.
//!
//! The group acts on `F^d` by `v -> g v`. Level `k` stores a base vector
//! `b_k`, generators fixing `b_0 .. b_{k-1}`, the orbit of `b_k` and for each
//! orbit point `beta` a transversal element `u` with `u b_k = beta` together
//! with its inverse. Random elements come from product replacement; after a
//! run of consecutive elements that sift to the identity, every Schreier
//! generator is sifted deterministically, so a returned chain is exact.

use std::collections::HashMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::MatrixGroup;
use crate::arith::{Fe, GaloisField};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

const POOL_SIZE: usize = 10;
const WARMUP: usize = 50;
const MISSES_TO_STOP: usize = 40;

#[derive(Debug, Clone)]
struct Level {
    base: Vec<Fe>,
    gens: Vec<Matrix>,
    gen_invs: Vec<Matrix>,
    index: HashMap<u128, usize>,
    points: Vec<Vec<Fe>>,
    trans: Vec<Matrix>,
    trans_inv: Vec<Matrix>,
}

impl Level {
    fn new(base: Vec<Fe>, q: u128) -> Self {
        let dim = base.len();
        let mut index = HashMap::new();
        index.insert(point_code(&base, q), 0);
        Level {
            points: vec![base.clone()],
            base,
            gens: Vec::new(),
            gen_invs: Vec::new(),
            index,
            trans: vec![Matrix::identity(dim)],
            trans_inv: vec![Matrix::identity(dim)],
        }
    }

    fn add_generator(&mut self, f: &GaloisField, q: u128, g: Matrix, g_inv: Matrix) {
        self.gens.push(g);
        self.gen_invs.push(g_inv);
        let mut i = 0;
        while i < self.points.len() {
            for s in 0..self.gens.len() {
                let img = self.gens[s].mul_vec(f, &self.points[i]);
                let code = point_code(&img, q);
                if self.index.contains_key(&code) {
                    continue;
                }
                let u = self.gens[s].mul(f, &self.trans[i]);
                let u_inv = self.trans_inv[i].mul(f, &self.gen_invs[s]);
                self.index.insert(code, self.points.len());
                self.points.push(img);
                self.trans.push(u);
                self.trans_inv.push(u_inv);
            }
            i += 1;
        }
    }

    fn orbit_len(&self) -> usize {
        self.points.len()
    }
}

fn point_code(v: &[Fe], q: u128) -> u128 {
    v.iter().rev().fold(0u128, |acc, &x| acc * q + x as u128)
}

/// Base and strong generating set with transversals.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    field: GaloisField,
    dim: usize,
    q: u128,
    levels: Vec<Level>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainSummary {
    /// Base vectors as element codes.
    pub base: Vec<Vec<u64>>,
    pub orbit_sizes: Vec<usize>,
    pub strong_generators: usize,
    #[serde(with = "crate::serde_big")]
    pub order: BigUint,
}

impl StabilizerChain {
    /// Builds a verified chain. `seed` only affects running time and the
    /// choice of strong generators, never the order.
    pub fn build(group: &MatrixGroup, seed: u64) -> Result<Self> {
        let f = group.field().clone();
        let dim = group.dim();
        let q = f.size() as u128;
        let bits = (dim as f64) * (q as f64).log2();
        if bits >= 127.0 {
            return Err(Error::Engine(format!(
                "vectors of length {dim} over a field of size {q} do not fit a point code"
            )));
        }
        let gens: Vec<Matrix> = group
            .generators()
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut chain = StabilizerChain {
            field: f.clone(),
            dim,
            q,
            levels: Vec::new(),
        };
        if gens.is_empty() {
            return Ok(chain);
        }
        let first = chain.basis_vector_moved_by_most(&gens);
        chain.levels.push(Level::new(first, q));
        for g in &gens {
            let inv = g.inverse(&f)?;
            chain.levels[0].add_generator(&f, q, g.clone(), inv);
        }
        chain.random_phase(&gens, seed)?;
        chain.verify()?;
        Ok(chain)
    }

    fn basis_vector_moved_by_most(&self, gens: &[Matrix]) -> Vec<Fe> {
        let mut best = (0, 0);
        for i in 0..self.dim {
            let moved = gens
                .iter()
                .filter(|g| (0..self.dim).any(|r| g.get(r, i) != if r == i { 1 } else { 0 }))
                .count();
            if moved > best.1 {
                best = (i, moved);
            }
        }
        unit_vector(self.dim, best.0)
    }

    fn random_phase(&mut self, gens: &[Matrix], seed: u64) -> Result<()> {
        let f = self.field.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pool: Vec<Matrix> = gens.iter().cycle().take(POOL_SIZE.max(gens.len())).cloned().collect();
        let mut acc = Matrix::identity(self.dim);
        let step = |rng: &mut ChaCha8Rng, pool: &mut Vec<Matrix>, acc: &mut Matrix| {
            let n = pool.len();
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            pool[i] = if rng.gen_bool(0.5) {
                pool[i].mul(&f, &pool[j])
            } else {
                pool[j].mul(&f, &pool[i])
            };
            *acc = acc.mul(&f, &pool[i]);
        };
        if pool.len() < 2 {
            pool.push(Matrix::identity(self.dim));
        }
        for _ in 0..WARMUP {
            step(&mut rng, &mut pool, &mut acc);
        }
        let mut misses = 0;
        while misses < MISSES_TO_STOP {
            step(&mut rng, &mut pool, &mut acc);
            let (residue, level) = self.sift(acc.clone(), 0);
            if residue.is_identity() {
                misses += 1;
            } else {
                self.add_residue(residue, level)?;
                misses = 0;
            }
        }
        Ok(())
    }

    /// Strips `h` through levels `from..`. Returns the residue and the level
    /// at which it left the chain (`levels.len()` if it passed every level).
    fn sift(&self, mut h: Matrix, from: usize) -> (Matrix, usize) {
        let f = &self.field;
        for (k, level) in self.levels.iter().enumerate().skip(from) {
            let img = h.mul_vec(f, &level.base);
            match level.index.get(&point_code(&img, self.q)) {
                Some(&idx) => h = level.trans_inv[idx].mul(f, &h),
                None => return (h, k),
            }
        }
        (h, self.levels.len())
    }

    fn add_residue(&mut self, r: Matrix, level: usize) -> Result<()> {
        let f = self.field.clone();
        if level == self.levels.len() {
            let i = (0..self.dim)
                .find(|&i| (0..self.dim).any(|row| r.get(row, i) != if row == i { 1 } else { 0 }))
                .ok_or_else(|| Error::Engine("identity residue added".into()))?;
            self.levels.push(Level::new(unit_vector(self.dim, i), self.q));
        }
        let inv = r.inverse(&f)?;
        for k in 0..=level {
            self.levels[k].add_generator(&f, self.q, r.clone(), inv.clone());
        }
        Ok(())
    }

    /// Sifts every Schreier generator, bottom level first, adding any
    /// nontrivial residue and starting over.
    fn verify(&mut self) -> Result<()> {
        'restart: loop {
            for k in (0..self.levels.len()).rev() {
                let found = self.first_failing_schreier_generator(k);
                if let Some((residue, level)) = found {
                    self.add_residue(residue, level)?;
                    continue 'restart;
                }
            }
            return Ok(());
        }
    }

    fn first_failing_schreier_generator(&self, k: usize) -> Option<(Matrix, usize)> {
        let f = &self.field;
        let level = &self.levels[k];
        (0..level.orbit_len()).into_par_iter().find_map_first(|i| {
            for s in &level.gens {
                let img = s.mul_vec(f, &level.points[i]);
                let j = level.index[&point_code(&img, self.q)];
                let h = level.trans_inv[j].mul(f, &s.mul(f, &level.trans[i]));
                if h.is_identity() {
                    continue;
                }
                let (residue, at) = self.sift(h, k + 1);
                if !residue.is_identity() {
                    return Some((residue, at));
                }
            }
            None
        })
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit_len()))
    }

    pub fn contains(&self, m: &Matrix) -> bool {
        if m.rows() != self.dim || m.cols() != self.dim {
            return false;
        }
        let (residue, level) = self.sift(m.clone(), 0);
        level == self.levels.len() && residue.is_identity()
    }

    pub fn base_len(&self) -> usize {
        self.levels.len()
    }

    pub fn summary(&self) -> ChainSummary {
        let mut strong: Vec<&Matrix> = self.levels.iter().flat_map(|l| &l.gens).collect();
        strong.sort_by(|a, b| a.data().cmp(b.data()));
        strong.dedup();
        ChainSummary {
            base: self.levels.iter().map(|l| l.base.clone()).collect(),
            orbit_sizes: self.levels.iter().map(Level::orbit_len).collect(),
            strong_generators: strong.len(),
            order: self.order(),
        }
    }
}

fn unit_vector(dim: usize, i: usize) -> Vec<Fe> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Order of the group generated by `group`'s generators.
pub fn bsgs_order(group: &MatrixGroup, seed: u64) -> Result<BigUint> {
    Ok(StabilizerChain::build(group, seed)?.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::enumerate_closure;
    use crate::unitary::{classical_group_order, sl2_generators, su_transvection_generators, ClassicalKind};

    #[test]
    fn sl2_orders_match_closure() {
        for p in [3u64, 5, 7, 11] {
            let (f, gens) = sl2_generators(p).unwrap();
            let g = MatrixGroup::new(f, 2, gens).unwrap();
            let expected = classical_group_order(ClassicalKind::SL, 2, &BigUint::from(p)).unwrap();
            assert_eq!(bsgs_order(&g, 1).unwrap(), expected);
            if p <= 7 {
                let c = enumerate_closure(&g, 10_000).order().unwrap();
                assert_eq!(BigUint::from(c), expected);
            }
        }
    }

    #[test]
    fn seed_and_generator_order_do_not_matter() {
        let (f, gens) = su_transvection_generators(3, 3, 4, 7).unwrap();
        let g = MatrixGroup::new(f, 3, gens.clone()).unwrap();
        let o = bsgs_order(&g, 0).unwrap();
        for seed in 1..4 {
            assert_eq!(bsgs_order(&g, seed).unwrap(), o);
        }
        let mut rev = gens;
        rev.reverse();
        assert_eq!(bsgs_order(&g.with_generators(rev).unwrap(), 0).unwrap(), o);
    }

    #[test]
    fn membership() {
        let (f, gens) = sl2_generators(5).unwrap();
        let g = MatrixGroup::new(f.clone(), 2, gens.clone()).unwrap();
        let chain = StabilizerChain::build(&g, 3).unwrap();
        let prod = gens[0].mul(&f, &gens[1]).mul(&f, &gens[0]);
        assert!(chain.contains(&prod));
        // diag(2, 2) has determinant 4
        let d = Matrix::from_rows(vec![vec![2, 0], vec![0, 2]]);
        assert!(!chain.contains(&d));
        assert_eq!(chain.summary().order, BigUint::from(120u32));
    }

    #[test]
    fn trivial_and_cyclic() {
        let f = GaloisField::prime(7).unwrap();
        let g = MatrixGroup::new(f.clone(), 2, vec![]).unwrap();
        assert_eq!(bsgs_order(&g, 0).unwrap(), BigUint::from(1u32));
        let t = Matrix::from_rows(vec![vec![1, 1], vec![0, 1]]);
        let g = MatrixGroup::new(f, 2, vec![t]).unwrap();
        assert_eq!(bsgs_order(&g, 0).unwrap(), BigUint::from(7u32));
    }
}
