//! Cochains `u: ∧^{n−1}g ⊗ ⋯ ⊗ ∧^{n−1}g ⊗ g → M` and the coboundary map.
//!
//! A degree-`k` cochain is stored on `k−1` increasing `(n−1)`-blocks plus one
//! free basis index `z`. Blocks are addressed by their lexicographic rank and
//! the domain is flattened row-major (first block most significant, `z`
//! last). No skew-symmetry is imposed across different blocks.

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::index::sort_with_sign;
use crate::linalg::{kernel, solve, Matrix};
use crate::rep::Representation;
use crate::scalar::{add_scaled, int, is_zero_vec, sign_pow, zeros, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    arity: usize,
    dim: usize,
    module_dim: usize,
    /// Number of increasing `(n−1)`-blocks.
    blocks: usize,
    values: Vec<Vector>,
}

/// Where the bracketed element goes when one block acts on another in the
/// last sum of the coboundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    /// `[Xᵢ, x_m^j]` replaces `x_m^j` in its own position.
    InPlace,
    /// `[Xᵢ, x_m^j] ∧ x_1^j ∧ ⋯ x̂_m^j ⋯`, bracket placed first.
    Leading,
}

impl Cochain {
    pub fn zero(rep: &Representation, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::BadDegree {
                found: 0,
                need: "k >= 1",
            });
        }
        let alg = rep.algebra();
        let blocks = rep.blocks().len();
        let points = blocks.pow(degree as u32 - 1) * alg.dim();
        Ok(Self {
            degree,
            arity: alg.arity(),
            dim: alg.dim(),
            module_dim: rep.module_dim(),
            blocks,
            values: vec![zeros(rep.module_dim()); points],
        })
    }

    /// Builds from a function of `(block ranks, z)`.
    pub fn from_fn<F>(rep: &Representation, degree: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[usize], usize) -> Vector,
    {
        let mut u = Self::zero(rep, degree)?;
        for p in 0..u.values.len() {
            let (ranks, z) = u.point(p);
            let v = f(&ranks, z);
            if v.len() != u.module_dim {
                return Err(Error::DimensionMismatch {
                    expected: u.module_dim,
                    found: v.len(),
                });
            }
            u.values[p] = v;
        }
        Ok(u)
    }

    /// Integer entries drawn uniformly from `-3..=3`.
    pub fn random<R: Rng>(rep: &Representation, degree: usize, rng: &mut R) -> Result<Self> {
        Self::from_fn(rep, degree, |_, _| {
            (0..rep.module_dim()).map(|_| int(rng.gen_range(-3..=3))).collect()
        })
    }

    /// Inverse of [`Cochain::to_vector`].
    pub fn from_vector(rep: &Representation, degree: usize, flat: &[Scalar]) -> Result<Self> {
        let mut u = Self::zero(rep, degree)?;
        let m = u.module_dim;
        if flat.len() != u.values.len() * m {
            return Err(Error::DimensionMismatch {
                expected: u.values.len() * m,
                found: flat.len(),
            });
        }
        for (p, chunk) in flat.chunks(m).enumerate() {
            u.values[p] = chunk.to_vec();
        }
        Ok(u)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    /// Number of domain points `(blocks, z)`.
    pub fn points(&self) -> usize {
        self.values.len()
    }

    /// Block ranks and `z` of a flat domain position.
    pub fn point(&self, mut p: usize) -> (Vec<usize>, usize) {
        let z = p % self.dim;
        p /= self.dim;
        let mut ranks = vec![0; self.degree - 1];
        for r in ranks.iter_mut().rev() {
            *r = p % self.blocks;
            p /= self.blocks;
        }
        (ranks, z)
    }

    fn position(&self, ranks: &[usize], z: usize) -> usize {
        ranks.iter().fold(0, |acc, &r| acc * self.blocks + r) * self.dim + z
    }

    pub fn value(&self, ranks: &[usize], z: usize) -> &Vector {
        &self.values[self.position(ranks, z)]
    }

    pub fn values(&self) -> &[Vector] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vec(v))
    }

    /// Domain-major, module-minor flattening.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.values.iter().flatten().cloned().collect()
    }

    /// Adds `coeff · u(blocks, z)` for arbitrary-order basis blocks.
    fn accumulate(&self, rep: &Representation, blocks: &[Vec<usize>], z: usize, coeff: &Scalar, out: &mut [Scalar]) {
        let mut ranks = Vec::with_capacity(blocks.len());
        let mut sign = 1;
        for b in blocks {
            match rep.locate(b) {
                None => return,
                Some((r, s)) => {
                    ranks.push(r);
                    sign *= s;
                }
            }
        }
        add_scaled(out, &(coeff * int(sign)), self.value(&ranks, z));
    }
}

/// `δ_ρ u` with the in-place insertion (the reading that squares to zero).
pub fn coboundary(rep: &Representation, u: &Cochain) -> Result<Cochain> {
    coboundary_with(rep, u, Insertion::InPlace)
}

/// `(δu)(X₁…X_k, z)` as the sum of four parts:
/// `Σᵢ (−1)^{i+1} ρ(Xᵢ) u(…X̂ᵢ…, z)`,
/// `Σᵢ (−1)^{n+k−i+1} ρ(x^k…x̂ᵢ^k…, z) u(X₁…X_{k−1}, xᵢ^k)`,
/// `Σᵢ (−1)^i u(…X̂ᵢ…, [Xᵢ, z])` and
/// `Σ_{i<j} (−1)^i u(…X̂ᵢ…, Xᵢ·X_j, …, z)`.
pub fn coboundary_with(rep: &Representation, u: &Cochain, insertion: Insertion) -> Result<Cochain> {
    check_compatible(rep, u)?;
    let alg = rep.algebra();
    let n = alg.arity();
    let k = u.degree;
    let mut out = Cochain::zero(rep, k + 1)?;
    let combos = rep.blocks();
    let m = u.module_dim;
    let values: Vec<Vector> = {
        use rayon::prelude::*;
        (0..out.values.len())
            .into_par_iter()
            .map(|p| {
                let (ranks, z) = out.point(p);
                let xs: Vec<&Vec<usize>> = ranks.iter().map(|&r| &combos[r]).collect();
                let mut acc = zeros(m);
                let without = |i: usize| -> Vec<Vec<usize>> {
                    xs.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, b)| (*b).clone())
                        .collect()
                };
                for i in 0..k {
                    let mut inner = zeros(m);
                    u.accumulate(rep, &without(i), z, &int(1), &mut inner);
                    let term = rep.sparse(ranks[i]).mul_vec(&inner);
                    add_scaled(&mut acc, &sign_pow(i), &term);
                }
                let last = xs[k - 1];
                let head = without(k - 1);
                for i in 0..n - 1 {
                    let mut args: Vec<usize> = (0..n - 1).filter(|&j| j != i).map(|j| last[j]).collect();
                    args.push(z);
                    if sort_with_sign(&args).is_none() {
                        continue;
                    }
                    let mut inner = zeros(m);
                    u.accumulate(rep, &head, last[i], &int(1), &mut inner);
                    let term = rep.act_basis(&args, &inner);
                    add_scaled(&mut acc, &sign_pow(n + k - i), &term);
                }
                for i in 0..k {
                    let mut bargs = xs[i].clone();
                    bargs.push(z);
                    let w = alg.bracket_basis(&bargs);
                    let rest = without(i);
                    for (t, c) in w.iter().enumerate() {
                        if !c.is_zero() {
                            u.accumulate(rep, &rest, t, &(sign_pow(i + 1) * c), &mut acc);
                        }
                    }
                }
                for i in 0..k {
                    for j in i + 1..k {
                        for mm in 0..n - 1 {
                            let mut bargs = xs[i].clone();
                            bargs.push(xs[j][mm]);
                            let w = alg.bracket_basis(&bargs);
                            for (t, c) in w.iter().enumerate() {
                                if c.is_zero() {
                                    continue;
                                }
                                let block = match insertion {
                                    Insertion::InPlace => {
                                        let mut b = xs[j].clone();
                                        b[mm] = t;
                                        b
                                    }
                                    Insertion::Leading => {
                                        let mut b = vec![t];
                                        b.extend((0..n - 1).filter(|&q| q != mm).map(|q| xs[j][q]));
                                        b
                                    }
                                };
                                let blocks: Vec<Vec<usize>> = (0..k)
                                    .filter(|&q| q != i)
                                    .map(|q| if q == j { block.clone() } else { xs[q].clone() })
                                    .collect();
                                u.accumulate(rep, &blocks, z, &(sign_pow(i + 1) * c), &mut acc);
                            }
                        }
                    }
                }
                acc
            })
            .collect()
    };
    out.values = values;
    Ok(out)
}

fn check_compatible(rep: &Representation, u: &Cochain) -> Result<()> {
    let alg = rep.algebra();
    if u.module_dim != rep.module_dim() {
        return Err(Error::DimensionMismatch {
            expected: rep.module_dim(),
            found: u.module_dim,
        });
    }
    if u.dim != alg.dim() || u.arity != alg.arity() {
        return Err(Error::DimensionMismatch {
            expected: alg.dim(),
            found: u.dim,
        });
    }
    Ok(())
}

pub fn is_cocycle(rep: &Representation, u: &Cochain) -> Result<bool> {
    Ok(coboundary(rep, u)?.is_zero())
}

/// Matrix of `δ` on degree-`k` cochains in the flattened coordinates.
pub fn coboundary_matrix(rep: &Representation, degree: usize) -> Result<Matrix> {
    let zero = Cochain::zero(rep, degree)?;
    let cols = zero.points() * zero.module_dim;
    let mut columns = Vec::with_capacity(cols);
    for c in 0..cols {
        let mut flat = zeros(cols);
        flat[c] = int(1);
        let basis = Cochain::from_vector(rep, degree, &flat)?;
        columns.push(coboundary(rep, &basis)?.to_vector());
    }
    let rows = Cochain::zero(rep, degree + 1)?.points() * zero.module_dim;
    if columns.is_empty() {
        return Ok(Matrix::zeros(rows, 0));
    }
    Ok(Matrix::from_columns(&columns))
}

/// Some `v` with `δv = u`, or `None` when the exact system is inconsistent.
pub fn solve_coboundary(rep: &Representation, u: &Cochain) -> Result<Option<Cochain>> {
    check_compatible(rep, u)?;
    if u.degree < 2 {
        return Err(Error::BadDegree {
            found: u.degree,
            need: "k >= 2",
        });
    }
    let a = coboundary_matrix(rep, u.degree - 1)?;
    match solve(&a, &u.to_vector()) {
        None => Ok(None),
        Some(v) => Ok(Some(Cochain::from_vector(rep, u.degree - 1, &v)?)),
    }
}

/// `dim ker δ_k − rank δ_{k−1}` (with `rank δ_0 = 0`).
pub fn cohomology_dim(rep: &Representation, degree: usize) -> Result<usize> {
    let dk = coboundary_matrix(rep, degree)?;
    let cocycles = dk.cols() - dk.rank();
    let boundaries = if degree >= 2 {
        coboundary_matrix(rep, degree - 1)?.rank()
    } else {
        0
    };
    Ok(cocycles - boundaries)
}

/// A degree-`k` cocycle that is not a coboundary, if the cohomology is
/// nonzero there.
pub fn nontrivial_cocycle(rep: &Representation, degree: usize) -> Result<Option<Cochain>> {
    if degree < 2 {
        return Err(Error::BadDegree {
            found: degree,
            need: "k >= 2",
        });
    }
    let dk = coboundary_matrix(rep, degree)?;
    let prev = coboundary_matrix(rep, degree - 1)?;
    for z in kernel(&dk) {
        if solve(&prev, &z).is_none() {
            return Ok(Some(Cochain::from_vector(rep, degree, &z)?));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::NLieAlgebra;
    use crate::rep::{adjoint_rep, coadjoint_rep, tensor_power_rep};
    use crate::scalar::unit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a4() -> NLieAlgebra {
        NLieAlgebra::from_canonical(3, 4, [(vec![0, 1, 2], unit(4, 3))]).unwrap()
    }

    fn sl2() -> NLieAlgebra {
        NLieAlgebra::from_canonical(
            2,
            3,
            [
                (vec![0, 1], unit(3, 2)),
                (vec![0, 2], vec![int(-2), int(0), int(0)]),
                (vec![1, 2], vec![int(0), int(2), int(0)]),
            ],
        )
        .unwrap()
    }

    fn squares_to_zero(rep: &Representation, ins: Insertion, degree: usize, seed: u64) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..5).all(|_| {
            let u = Cochain::random(rep, degree, &mut rng).unwrap();
            let du = coboundary_with(rep, &u, ins).unwrap();
            coboundary_with(rep, &du, ins).unwrap().is_zero()
        })
    }

    #[test]
    fn zero_maps_to_zero() {
        let rep = adjoint_rep(&a4()).unwrap();
        let u = Cochain::zero(&rep, 2).unwrap();
        assert!(coboundary(&rep, &u).unwrap().is_zero());
        assert!(is_cocycle(&rep, &u).unwrap());
    }

    #[test]
    fn delta_squared_in_place() {
        for alg in [a4(), sl2()] {
            let reps = [
                adjoint_rep(&alg).unwrap(),
                coadjoint_rep(&alg),
                tensor_power_rep(&alg, alg.arity()).unwrap(),
            ];
            for rep in &reps {
                for k in 1..=2 {
                    assert!(squares_to_zero(rep, Insertion::InPlace, k, 7));
                }
            }
        }
    }

    #[test]
    fn leading_insertion_breaks_delta_squared() {
        let rep = adjoint_rep(&a4()).unwrap();
        assert!(!squares_to_zero(&rep, Insertion::Leading, 1, 7));
        // for n = 2 the two readings coincide
        let rep = adjoint_rep(&sl2()).unwrap();
        assert!(squares_to_zero(&rep, Insertion::Leading, 2, 7));
    }

    #[test]
    fn simple_three_lie_tensor_square_is_not_a_module() {
        let entries = crate::index::combinations(4, 3).into_iter().map(|c| {
            let missing = (0..4).find(|i| !c.contains(i)).unwrap();
            let mut v = zeros(4);
            v[missing] = sign_pow(missing);
            (c, v)
        });
        let alg = NLieAlgebra::from_canonical(3, 4, entries).unwrap();
        assert!(alg.check_filippov_jacobi().passed);
        let adj = adjoint_rep(&alg).unwrap();
        assert!(squares_to_zero(&adj, Insertion::InPlace, 2, 1));
        let sq = tensor_power_rep(&alg, 2).unwrap();
        let r = sq.check_representation();
        assert!(!r.passed);
        assert_eq!(r.failing_tuple(), Some(&[1, 2, 3, 4][..]));
        let cube = tensor_power_rep(&alg, 3).unwrap();
        assert!(!squares_to_zero(&cube, Insertion::InPlace, 1, 1));
    }

    #[test]
    fn solve_round_trip() {
        let rep = adjoint_rep(&sl2()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v0 = Cochain::random(&rep, 1, &mut rng).unwrap();
        let u = coboundary(&rep, &v0).unwrap();
        let v = solve_coboundary(&rep, &u).unwrap().unwrap();
        assert_eq!(coboundary(&rep, &v).unwrap(), u);
        let zero = Cochain::zero(&rep, 2).unwrap();
        assert!(solve_coboundary(&rep, &zero).unwrap().unwrap().is_zero());
    }

    #[test]
    fn nontrivial_class_has_no_primitive() {
        let rep = adjoint_rep(&a4()).unwrap();
        let h2 = cohomology_dim(&rep, 2).unwrap();
        assert!(h2 > 0);
        let u = nontrivial_cocycle(&rep, 2).unwrap().unwrap();
        assert!(is_cocycle(&rep, &u).unwrap());
        assert_eq!(solve_coboundary(&rep, &u).unwrap(), None);
    }
}
