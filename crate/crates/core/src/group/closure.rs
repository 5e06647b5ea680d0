//! Breadth-first enumeration of a group from its generators.

use std::collections::HashSet;

use super::{canonical_key, MatrixGroup};
use crate::linalg::Matrix;

/// All elements of a group, stored by canonical key.
#[derive(Debug, Clone)]
pub struct ClosureSet {
    keys: HashSet<Box<[u8]>>,
}

impl ClosureSet {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, group: &MatrixGroup, m: &Matrix) -> bool {
        self.keys.contains(&canonical_key(group.field(), m))
    }
}

#[derive(Debug, Clone)]
pub enum ClosureResult {
    Complete(ClosureSet),
    /// More than `cap` elements; `explored` were found before stopping.
    Overflow { explored: usize },
}

impl ClosureResult {
    pub fn order(&self) -> Option<usize> {
        match self {
            ClosureResult::Complete(s) => Some(s.len()),
            ClosureResult::Overflow { .. } => None,
        }
    }
}

/// Left-multiplies a frontier by the generators until nothing new appears.
/// Finite groups are closed under products, so inverses are not needed.
pub fn enumerate_closure(group: &MatrixGroup, cap: usize) -> ClosureResult {
    let f = group.field();
    let id = group.identity();
    let mut keys = HashSet::new();
    keys.insert(canonical_key(f, &id));
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for g in group.generators() {
                let y = g.mul(f, x);
                if keys.insert(canonical_key(f, &y)) {
                    if keys.len() > cap {
                        return ClosureResult::Overflow {
                            explored: keys.len(),
                        };
                    }
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    ClosureResult::Complete(ClosureSet { keys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitary::sl2_generators;

    #[test]
    fn sl2_small_orders() {
        for (p, order) in [(3u64, 24usize), (5, 120), (7, 336)] {
            let (f, gens) = sl2_generators(p).unwrap();
            let g = MatrixGroup::new(f, 2, gens).unwrap();
            assert_eq!(enumerate_closure(&g, 1000).order(), Some(order));
        }
    }

    #[test]
    fn overflow_reported() {
        let (f, gens) = sl2_generators(7).unwrap();
        let g = MatrixGroup::new(f, 2, gens).unwrap();
        assert!(matches!(
            enumerate_closure(&g, 100),
            ClosureResult::Overflow { .. }
        ));
    }

    #[test]
    fn trivial_group() {
        let (f, _) = sl2_generators(5).unwrap();
        let g = MatrixGroup::new(f, 2, vec![]).unwrap();
        assert_eq!(enumerate_closure(&g, 10).order(), Some(1));
    }
}
