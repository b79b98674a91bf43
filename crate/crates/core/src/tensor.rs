//! Dense tensors in `⊗ᵏV`, the unnormalized wedge product, antisymmetrization
//! and the canonical pairing with `⊗ᵏV*`.
//!
//! Conventions:
//! - `wedge(v₁, …, v_k) = Σ_σ sgn(σ) v_σ(1) ⊗ ⋯ ⊗ v_σ(k)` with no `1/k!`.
//! - `antisymmetrize` is the idempotent projector, so on already alternating
//!   tensors it is the identity; `antisymmetrize(v₁ ⊗ ⋯ ⊗ v_k) = wedge(v…)/k!`.
//! - `⟨ξ₁⊗⋯⊗ξ_k, v₁⊗⋯⊗v_k⟩ = ∏ ξᵢ(vᵢ)`, extended linearly.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index::{flatten, unflatten, Permutation};
use crate::linalg::Matrix;
use crate::scalar::{int, zero, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseTensor {
    rank: usize,
    dim: usize,
    entries: Vec<Scalar>,
}

impl DenseTensor {
    pub fn zeros(rank: usize, dim: usize) -> Self {
        Self {
            rank,
            dim,
            entries: vec![Scalar::zero(); dim.pow(rank as u32)],
        }
    }

    pub fn from_entries(rank: usize, dim: usize, entries: Vec<Scalar>) -> Result<Self> {
        let expected = dim.pow(rank as u32);
        if entries.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: entries.len(),
            });
        }
        Ok(Self { rank, dim, entries })
    }

    /// `v₁ ⊗ ⋯ ⊗ v_k`.
    pub fn outer(vectors: &[Vec<Scalar>]) -> Result<Self> {
        let dim = check_dims(vectors)?;
        let mut t = Self::zeros(vectors.len(), dim);
        for flat in 0..t.entries.len() {
            let idx = unflatten(flat, dim, vectors.len());
            let mut prod = Scalar::from_integer(1.into());
            for (v, &i) in vectors.iter().zip(&idx) {
                if v[i].is_zero() {
                    prod = zero();
                    break;
                }
                prod *= &v[i];
            }
            t.entries[flat] = prod;
        }
        Ok(t)
    }

    /// `e_{i₁} ⊗ ⋯ ⊗ e_{i_k}` (0-based indices).
    pub fn basis(dim: usize, idx: &[usize]) -> Self {
        let mut t = Self::zeros(idx.len(), dim);
        t.entries[flatten(idx, dim)] = Scalar::from_integer(1.into());
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.entries
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.entries[flatten(idx, self.dim)]
    }

    pub fn set(&mut self, idx: &[usize], value: Scalar) {
        let f = flatten(idx, self.dim);
        self.entries[f] = value;
    }

    pub fn add_at(&mut self, idx: &[usize], value: &Scalar) {
        let f = flatten(idx, self.dim);
        self.entries[f] += value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Nonzero entries with their index tuples.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(f, c)| (unflatten(f, self.dim, self.rank), c))
    }

    pub fn add_assign_scaled(&mut self, coeff: &Scalar, other: &DenseTensor) {
        assert_eq!((self.rank, self.dim), (other.rank, other.dim));
        if coeff.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += coeff * b;
            }
        }
    }

    pub fn scaled(&self, coeff: &Scalar) -> Self {
        Self {
            rank: self.rank,
            dim: self.dim,
            entries: self.entries.iter().map(|x| coeff * x).collect(),
        }
    }

    pub fn sub(&self, other: &DenseTensor) -> Self {
        let mut out = self.clone();
        out.add_assign_scaled(&int(-1), other);
        out
    }

    /// `(1^{⊗slot} ⊗ op ⊗ 1^{⊗(k-slot-1)}) t` for a `dim × dim` operator (0-based slot).
    pub fn apply_to_slot(&self, slot: usize, op: &Matrix) -> Self {
        assert!(slot < self.rank, "slot {slot} out of range for rank {}", self.rank);
        assert_eq!(op.rows(), self.dim);
        assert_eq!(op.cols(), self.dim);
        let mut out = Self::zeros(self.rank, self.dim);
        for (idx, c) in self.nonzero() {
            let col = idx[slot];
            let mut target = idx.clone();
            for row in 0..self.dim {
                let m = op.get(row, col);
                if m.is_zero() {
                    continue;
                }
                target[slot] = row;
                out.add_at(&target, &(m * c));
            }
        }
        out
    }

    /// `t ↦ t ∘ σ` on slots: entry `(i₁, …, i_k)` of the result is entry
    /// `(i_σ(1), …, i_σ(k))` of `self`.
    pub fn permute_slots(&self, sigma: &Permutation) -> Self {
        assert_eq!(sigma.len(), self.rank);
        let mut out = Self::zeros(self.rank, self.dim);
        for flat in 0..self.entries.len() {
            let idx = unflatten(flat, self.dim, self.rank);
            let src: Vec<usize> = (0..self.rank).map(|s| idx[sigma.apply(s)]).collect();
            out.entries[flat] = self.get(&src).clone();
        }
        out
    }

    /// First violation of alternation: a slot pair `(a, b)` and an index
    /// tuple where swapping those slots does not negate the entry.
    pub fn antisymmetry_violation(&self) -> Option<((usize, usize), Vec<usize>)> {
        for flat in 0..self.entries.len() {
            let idx = unflatten(flat, self.dim, self.rank);
            for a in 0..self.rank {
                for b in a + 1..self.rank {
                    let mut sw = idx.clone();
                    sw.swap(a, b);
                    let here = &self.entries[flat];
                    let there = self.get(&sw);
                    if &-here != there {
                        return Some(((a, b), idx));
                    }
                }
            }
        }
        None
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_violation().is_none()
    }
}

fn check_dims(vectors: &[Vec<Scalar>]) -> Result<usize> {
    let dim = vectors.first().map_or(0, Vec::len);
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    if dim == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    Ok(dim)
}

/// `v₁ ∧ ⋯ ∧ v_k = Σ_σ sgn(σ) v_σ(1) ⊗ ⋯ ⊗ v_σ(k)`.
pub fn wedge(vectors: &[Vec<Scalar>]) -> Result<DenseTensor> {
    let dim = check_dims(vectors)?;
    let k = vectors.len();
    let mut out = DenseTensor::zeros(k, dim);
    for sigma in Permutation::all(k) {
        let ordered: Vec<Vec<Scalar>> = (0..k).map(|s| vectors[sigma.apply(s)].clone()).collect();
        out.add_assign_scaled(&int(sigma.sign_i64()), &DenseTensor::outer(&ordered)?);
    }
    Ok(out)
}

/// Full contraction `⟨t, ξ₁ ⊗ ⋯ ⊗ ξ_k⟩` against coordinate covectors.
pub fn pair(t: &DenseTensor, covectors: &[Vec<Scalar>]) -> Result<Scalar> {
    if covectors.len() != t.rank() {
        return Err(Error::ArgumentCount {
            expected: t.rank(),
            found: covectors.len(),
        });
    }
    for c in covectors {
        if c.len() != t.dim() {
            return Err(Error::DimensionMismatch {
                expected: t.dim(),
                found: c.len(),
            });
        }
    }
    let mut acc = zero();
    'entries: for (idx, c) in t.nonzero() {
        let mut prod = c.clone();
        for (xi, &i) in covectors.iter().zip(&idx) {
            if xi[i].is_zero() {
                continue 'entries;
            }
            prod *= &xi[i];
        }
        acc += prod;
    }
    Ok(acc)
}

/// `(1/|S|!) Σ_σ sgn(σ) σ·t`, with σ permuting only the slots in `slots` (0-based).
pub fn antisymmetrize(t: &DenseTensor, slots: &[usize]) -> Result<DenseTensor> {
    let mut sorted = slots.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.iter().any(|&s| s >= t.rank()) {
        return Err(Error::InvalidSlots(slots.to_vec()));
    }
    let k = sorted.len();
    let mut out = DenseTensor::zeros(t.rank(), t.dim());
    let perms = Permutation::all(k);
    let norm = Scalar::new(1.into(), (perms.len() as i64).into());
    for tau in &perms {
        // lift tau on the chosen slots to a permutation of all slots
        let mut images: Vec<usize> = (0..t.rank()).collect();
        for (a, &slot) in sorted.iter().enumerate() {
            images[slot] = sorted[tau.apply(a)];
        }
        let sigma = Permutation::new(images).expect("lifted permutation is a bijection");
        out.add_assign_scaled(&(&norm * int(tau.sign_i64())), &t.permute_slots(&sigma));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, unit};

    fn e(d: usize, i: usize) -> Vec<Scalar> {
        unit(d, i - 1)
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(wedge(&[e(3, 1)]).unwrap(), DenseTensor::basis(3, &[0]));
        assert!(wedge(&[e(3, 1), e(3, 1)]).unwrap().is_zero());
        let w = wedge(&[e(2, 1), e(2, 2)]).unwrap();
        let expected = DenseTensor::basis(2, &[0, 1]).sub(&DenseTensor::basis(2, &[1, 0]));
        assert_eq!(w, expected);
        assert!(wedge(&[e(2, 1), e(3, 2)]).is_err());
    }

    #[test]
    fn pair_examples() {
        let t = DenseTensor::basis(2, &[0, 1]);
        assert_eq!(pair(&t, &[e(2, 1), e(2, 2)]).unwrap(), int(1));
        assert_eq!(pair(&t, &[e(2, 2), e(2, 1)]).unwrap(), int(0));
        let w = wedge(&[e(2, 1), e(2, 2)]).unwrap();
        assert_eq!(pair(&w, &[e(2, 1), e(2, 2)]).unwrap(), int(1));
        assert!(pair(&t, &[e(2, 1)]).is_err());
        assert!(pair(&t, &[e(2, 1), e(3, 1)]).is_err());
    }

    #[test]
    fn antisymmetrize_examples() {
        let alt = DenseTensor::basis(2, &[0, 1]).sub(&DenseTensor::basis(2, &[1, 0]));
        assert_eq!(antisymmetrize(&alt, &[0, 1]).unwrap(), alt);
        assert!(antisymmetrize(&DenseTensor::basis(2, &[0, 0]), &[0, 1])
            .unwrap()
            .is_zero());
        let half = alt.scaled(&frac(1, 2));
        assert_eq!(antisymmetrize(&DenseTensor::basis(2, &[0, 1]), &[0, 1]).unwrap(), half);
        assert!(antisymmetrize(&alt, &[0, 0]).is_err());
        assert!(antisymmetrize(&alt, &[0, 2]).is_err());
    }

    #[test]
    fn partial_antisymmetrize_leaves_other_slots() {
        // antisymmetrizing slots {0, 2} of e1⊗e2⊗e3
        let t = DenseTensor::basis(3, &[0, 1, 2]);
        let a = antisymmetrize(&t, &[0, 2]).unwrap();
        assert_eq!(a.get(&[0, 1, 2]), &frac(1, 2));
        assert_eq!(a.get(&[2, 1, 0]), &frac(-1, 2));
        assert_eq!(a.nonzero().count(), 2);
    }

    #[test]
    fn slot_operator() {
        // op sends e1 -> e2
        let mut op = Matrix::zeros(2, 2);
        op.set(1, 0, int(1));
        let t = DenseTensor::basis(2, &[0, 0]);
        assert_eq!(t.apply_to_slot(1, &op), DenseTensor::basis(2, &[0, 1]));
        assert_eq!(t.apply_to_slot(0, &op), DenseTensor::basis(2, &[1, 0]));
    }

    #[test]
    fn antisymmetry_detection() {
        let w = wedge(&[e(3, 1), e(3, 2), e(3, 3)]).unwrap();
        assert!(w.is_antisymmetric());
        let t = DenseTensor::basis(3, &[0, 1, 2]);
        assert!(t.antisymmetry_violation().is_some());
    }
}
