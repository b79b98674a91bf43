//! Basis multi-indices, permutations and their signs.
//!
//! Internally all indices are 0-based; reports and documents shift to
//! 1-based at the boundary.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// A bijection on `{0, .., k-1}`, stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds from 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || seen[i] {
                return Err(Error::MalformedPermutation(images.iter().map(|x| x + 1).collect()));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// Builds from 1-based images, as written in cycle-free notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::MalformedPermutation(images.to_vec()));
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(k: usize) -> Self {
        Self {
            images: (0..k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different size");
        Self {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    /// Parity via cycle decomposition: a cycle of length `l` contributes `l - 1` transpositions.
    pub fn parity(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut transpositions = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2
    }

    pub fn sign_i64(&self) -> i64 {
        if self.parity() == 0 {
            1
        } else {
            -1
        }
    }

    /// All `k!` permutations of `{0, .., k-1}` in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..k).collect();
        loop {
            out.push(Self {
                images: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// Sign of a permutation as an exact scalar.
pub fn perm_sign(p: &Permutation) -> Scalar {
    int(p.sign_i64())
}

/// An ordered tuple of basis indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<usize>);

impl MultiIndex {
    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_canonical(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_degenerate(&self) -> bool {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.windows(2).any(|w| w[0] == w[1])
    }

    /// The canonical reordering and the sign of the sorting permutation;
    /// `None` for degenerate tuples.
    pub fn canonicalize(&self) -> Option<(MultiIndex, i64)> {
        sort_with_sign(&self.0).map(|(v, s)| (MultiIndex(v), s))
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

/// Sorts a small index tuple, returning the sign of the sort; `None` when an
/// index repeats.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    // insertion sort counts inversions exactly
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// Strictly increasing `k`-tuples over `0..d`, lexicographic.
pub fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < d - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// All `k`-tuples over `0..d`, lexicographic (first slot most significant).
pub fn all_tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    let total = d.pow(k as u32);
    (0..total).map(|flat| unflatten(flat, d, k)).collect()
}

pub fn flatten(idx: &[usize], d: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * d + i)
}

pub fn unflatten(mut flat: usize, d: usize, k: usize) -> Vec<usize> {
    let mut idx = vec![0; k];
    for slot in (0..k).rev() {
        idx[slot] = flat % d;
        flat /= d;
    }
    idx
}

/// Ranks the canonical `k`-subsets of `0..d` (used to address wedge blocks).
#[derive(Debug, Clone)]
pub struct CombinationIndex {
    combos: Vec<Vec<usize>>,
    rank: HashMap<Vec<usize>, usize>,
}

impl CombinationIndex {
    pub fn new(d: usize, k: usize) -> Self {
        let combos = combinations(d, k);
        let rank = combos.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Self { combos, rank }
    }

    pub fn len(&self) -> usize {
        self.combos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combos.is_empty()
    }

    pub fn combos(&self) -> &[Vec<usize>] {
        &self.combos
    }

    pub fn get(&self, rank: usize) -> &[usize] {
        &self.combos[rank]
    }

    pub fn rank_of(&self, canonical: &[usize]) -> usize {
        self.rank[canonical]
    }

    /// Rank and sign of an arbitrary tuple; `None` if degenerate.
    pub fn locate(&self, idx: &[usize]) -> Option<(usize, i64)> {
        let (sorted, sign) = sort_with_sign(idx)?;
        Some((self.rank[&sorted], sign))
    }
}
