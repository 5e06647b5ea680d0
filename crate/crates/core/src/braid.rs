//! Braid words on `n + 1` strands.
//!
//! Generator `sigma_i` (`i = 0..n-1`) crosses the strands at positions `i`
//! and `i + 1`. Words are applied left to right.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn positive(generator: usize) -> Self {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn negative(generator: usize) -> Self {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "-{}", self.generator)
        } else {
            write!(f, "{}", self.generator)
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    /// `"3"` is `sigma_3`, `"-3"` its inverse. `"-0"` is `sigma_0^-1`.
    fn from_str(s: &str) -> Result<Self> {
        let (inverse, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let generator = digits
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad braid letter {s:?}")))?;
        Ok(Letter { generator, inverse })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::IndexOutOfRange {
                index: strands,
                bound: 2,
            });
        }
        if let Some(bad) = letters.iter().find(|l| l.generator + 1 >= strands) {
            return Err(Error::IndexOutOfRange {
                index: bad.generator,
                bound: strands - 1,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Self {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    /// `sigma_i` on its own.
    pub fn generator(strands: usize, i: usize) -> Result<Self> {
        Self::new(strands, vec![Letter::positive(i)])
    }

    /// Parses whitespace-separated signed generator indices.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Letter>>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    /// `w^k` for `k >= 0`, `(w^-1)^|k|` otherwise.
    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &BraidWord, b: &BraidWord) -> Result<BraidWord> {
        a.concat(b)?.concat(&a.invert())?.concat(&b.invert())
    }

    /// Cancels adjacent `x x^-1` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last() == Some(&l.inverted()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: stack,
        }
    }

    pub fn underlying_permutation(&self) -> StrandPermutation {
        let mut position: Vec<usize> = (0..self.strands).collect();
        // at[pos] = strand currently at pos
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            let i = l.generator;
            at.swap(i, i + 1);
            position[at[i]] = i;
            position[at[i + 1]] = i + 1;
        }
        StrandPermutation { images: position }
    }

    pub fn is_pure(&self) -> bool {
        self.underlying_permutation().is_identity()
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// Permutation of strands: `images[s]` is the final position of the strand
/// starting at position `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StrandPermutation {
    images: Vec<usize>,
}

impl StrandPermutation {
    pub fn identity(n: usize) -> Self {
        StrandPermutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Parse(format!("not a permutation: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(StrandPermutation { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, s: usize) -> usize {
        self.images[s]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &StrandPermutation) -> StrandPermutation {
        StrandPermutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> StrandPermutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        StrandPermutation { images: inv }
    }
}

/// `A_ij = (sigma_{j-1} .. sigma_{i+1}) sigma_i^2 (sigma_{j-1} .. sigma_{i+1})^-1`
/// on `n + 1` strands.
pub fn pure_generator(i: usize, j: usize, n: usize) -> Result<BraidWord> {
    if i >= j {
        return Err(Error::IndexOutOfRange { index: i, bound: j });
    }
    if j > n {
        return Err(Error::IndexOutOfRange {
            index: j,
            bound: n + 1,
        });
    }
    let conj: Vec<Letter> = (i + 1..j).rev().map(Letter::positive).collect();
    let conj = BraidWord::new(n + 1, conj)?;
    let square = BraidWord::new(n + 1, vec![Letter::positive(i); 2])?;
    conj.concat(&square)?.concat(&conj.invert())
}

/// All `A_ij`, `0 <= i < j <= n`, in lexicographic order of `(i, j)`.
pub fn pure_generators(n: usize) -> Vec<BraidWord> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..=n {
            out.push(pure_generator(i, j, n).expect("indices in range"));
        }
    }
    out
}

/// `(sigma_first .. sigma_last)(sigma_first .. sigma_{last-1}) .. (sigma_first)`.
pub fn half_twist(strands: usize, first: usize, last: usize) -> Result<BraidWord> {
    if first > last {
        return Err(Error::IndexOutOfRange {
            index: first,
            bound: last + 1,
        });
    }
    let mut letters = Vec::new();
    for top in (first..=last).rev() {
        letters.extend((first..=top).map(Letter::positive));
    }
    BraidWord::new(strands, letters)
}
