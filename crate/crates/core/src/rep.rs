//! Representations `ρ: ∧^{n−1} g → gl(M)` and the standard examples.
//!
//! `ρ` is stored on increasing `(n−1)`-tuples of basis indices; other orders
//! follow by sign and repeated indices give zero.

use crate::algebra::NLieAlgebra;
use crate::error::{Error, Result};
use crate::index::{combinations, flatten, unflatten};
use crate::linalg::{Matrix, SparseMatrix};
use crate::report::{product, scan, CheckReport, Unverified};
use crate::scalar::{int, sign_pow, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: NLieAlgebra,
    module_dim: usize,
    blocks: Vec<Vec<usize>>,
    rho: Vec<SparseMatrix>,
}

impl Representation {
    /// `rho[r]` is the operator of the `r`-th increasing `(n−1)`-tuple in
    /// lexicographic order.
    pub fn new(algebra: NLieAlgebra, module_dim: usize, rho: Vec<Matrix>) -> Result<Self> {
        let blocks = combinations(algebra.dim(), algebra.arity() - 1);
        if rho.len() != blocks.len() {
            return Err(Error::DimensionMismatch {
                expected: blocks.len(),
                found: rho.len(),
            });
        }
        for m in &rho {
            if m.rows() != module_dim || m.cols() != module_dim {
                return Err(Error::DimensionMismatch {
                    expected: module_dim,
                    found: if m.rows() != module_dim { m.rows() } else { m.cols() },
                });
            }
        }
        let rho = rho.iter().map(SparseMatrix::from_dense).collect();
        Ok(Self {
            algebra,
            module_dim,
            blocks,
            rho,
        })
    }

    fn from_sparse(algebra: NLieAlgebra, module_dim: usize, rho: Vec<SparseMatrix>) -> Self {
        let blocks = combinations(algebra.dim(), algebra.arity() - 1);
        Self {
            algebra,
            module_dim,
            blocks,
            rho,
        }
    }

    pub fn zero(algebra: NLieAlgebra, module_dim: usize) -> Self {
        let count = combinations(algebra.dim(), algebra.arity() - 1).len();
        Self::from_sparse(algebra, module_dim, vec![SparseMatrix::zeros(module_dim); count])
    }

    pub fn algebra(&self) -> &NLieAlgebra {
        &self.algebra
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    /// The increasing `(n−1)`-tuples, in storage order.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn matrix(&self, rank: usize) -> Matrix {
        self.rho[rank].to_dense()
    }

    pub(crate) fn sparse(&self, rank: usize) -> &SparseMatrix {
        &self.rho[rank]
    }

    /// `ρ(e_{a₁}, …, e_{a_{n−1}})` for any order of 0-based indices.
    pub fn rho_basis(&self, idx: &[usize]) -> SparseMatrix {
        match self.locate(idx) {
            None => SparseMatrix::zeros(self.module_dim),
            Some((rank, sign)) => self.rho[rank].scaled(&int(sign)),
        }
    }

    pub(crate) fn locate(&self, idx: &[usize]) -> Option<(usize, i64)> {
        let (sorted, sign) = crate::index::sort_with_sign(idx)?;
        let rank = self.blocks.binary_search(&sorted).ok()?;
        Some((rank, sign))
    }

    /// `ρ(e_{a₁}, …) v` without materializing a signed copy.
    pub fn act_basis(&self, idx: &[usize], v: &[Scalar]) -> Vec<Scalar> {
        match self.locate(idx) {
            None => vec![Scalar::default(); self.module_dim],
            Some((rank, sign)) => {
                let mut out = self.rho[rank].mul_vec(v);
                if sign < 0 {
                    for x in &mut out {
                        *x = -x.clone();
                    }
                }
                out
            }
        }
    }

    /// `ρ` with one argument a general vector and the rest basis vectors.
    fn rho_with(&self, basis: &[usize], slot: usize, v: &[Scalar]) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.module_dim);
        let mut idx = basis.to_vec();
        for (t, c) in v.iter().enumerate() {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            idx[slot] = t;
            out.add_assign_scaled(c, &self.rho_basis(&idx));
        }
        out
    }

    /// Residual of `ρ([x₁…x_n], y) − Σᵢ (−1)^{n−i} ρ(x̂ᵢ) ρ(xᵢ, y)` where
    /// `y` has `n−2` entries.
    pub fn bracket_rule_residual(&self, xs: &[usize], ys: &[usize]) -> SparseMatrix {
        let n = self.algebra.arity();
        let mut first = vec![0];
        first.extend_from_slice(ys);
        let mut res = self.rho_with(&first, 0, self.algebra.bracket_basis(xs));
        for i in 0..n {
            let hat: Vec<usize> = (0..n).filter(|&j| j != i).map(|j| xs[j]).collect();
            let mut inner = vec![xs[i]];
            inner.extend_from_slice(ys);
            let term = self.rho_basis(&hat).mul(&self.rho_basis(&inner));
            res.add_assign_scaled(&-sign_pow(n - 1 - i), &term);
        }
        res
    }

    /// Residual of `[ρ(x), ρ(y)] − Σᵢ ρ(y₁, …, [x, yᵢ], …, y_{n−1})`.
    pub fn commutator_rule_residual(&self, xs: &[usize], ys: &[usize]) -> SparseMatrix {
        let (rx, ry) = (self.rho_basis(xs), self.rho_basis(ys));
        let mut res = rx.mul(&ry);
        res.add_assign_scaled(&int(-1), &ry.mul(&rx));
        let mut xargs = xs.to_vec();
        xargs.push(0);
        for i in 0..ys.len() {
            xargs[xs.len()] = ys[i];
            let xy = self.algebra.bracket_basis(&xargs).to_vec();
            res.add_assign_scaled(&int(-1), &self.rho_with(ys, i, &xy));
        }
        res
    }

    /// Both representation axioms over increasing basis tuples. Residuals
    /// are `m×m` matrices flattened row-major.
    pub fn check_representation(&self) -> CheckReport {
        let (n, d) = (self.algebra.arity(), self.algebra.dim());
        let t3 = product(&[combinations(d, n), combinations(d, n - 2)]);
        let r3 = scan("rep-bracket-rule", "x | y", &t3, |t| {
            residual_vec(&self.bracket_rule_residual(&t[..n], &t[n..]))
        });
        let t4 = product(&[combinations(d, n - 1), combinations(d, n - 1)]);
        let r4 = scan("rep-commutator-rule", "x | y", &t4, |t| {
            residual_vec(&self.commutator_rule_residual(&t[..n - 1], &t[n - 1..]))
        });
        CheckReport::all("representation", &[r3, r4])
    }
}

fn residual_vec(m: &SparseMatrix) -> Vec<Scalar> {
    if m.is_zero() {
        Vec::new()
    } else {
        m.flatten()
    }
}

/// `ρ = ad` on `M = g`. Returned as `Err(Unverified)` when the algebra fails
/// the Filippov–Jacobi identity.
pub fn adjoint_rep(alg: &NLieAlgebra) -> Result<Representation, Unverified<Representation>> {
    let rho = combinations(alg.dim(), alg.arity() - 1)
        .iter()
        .map(|c| SparseMatrix::from_dense(&alg.ad_basis(c)))
        .collect();
    let rep = Representation::from_sparse(alg.clone(), alg.dim(), rho);
    let fji = alg.check_filippov_jacobi();
    if fji.passed {
        Ok(rep)
    } else {
        Err(Unverified {
            value: rep,
            report: fji,
        })
    }
}

/// `ρ*(X) = −ad(X)ᵀ` acting on the dual space in the dual basis.
pub fn coadjoint_rep(alg: &NLieAlgebra) -> Representation {
    let rho = combinations(alg.dim(), alg.arity() - 1)
        .iter()
        .map(|c| SparseMatrix::from_dense(&alg.ad_basis(c)).transpose().scaled(&int(-1)))
        .collect();
    Representation::from_sparse(alg.clone(), alg.dim(), rho)
}

/// `ad^{(p)}(X) = Σᵢ 1 ⊗ ⋯ ⊗ ad(X) ⊗ ⋯ ⊗ 1` on `⊗^p g`, basis flattened
/// row-major with slot 1 most significant.
pub fn tensor_power_rep(alg: &NLieAlgebra, p: usize) -> Result<Representation> {
    if p == 0 {
        return Err(Error::ZeroPower);
    }
    let d = alg.dim();
    let m = d.pow(p as u32);
    let rho = combinations(d, alg.arity() - 1)
        .iter()
        .map(|c| {
            let ad = alg.ad_basis(c);
            let mut op = SparseMatrix::zeros(m);
            for col in 0..m {
                let idx = unflatten(col, d, p);
                for s in 0..p {
                    let mut row_idx = idx.clone();
                    for r in 0..d {
                        let a = ad.get(r, idx[s]);
                        if num_traits::Zero::is_zero(a) {
                            continue;
                        }
                        row_idx[s] = r;
                        op.add_at(flatten(&row_idx, d), col, a);
                    }
                }
            }
            op
        })
        .collect();
    Ok(Representation::from_sparse(alg.clone(), m, rho))
}

/// Row-major position of a basis tensor in `⊗^p g`.
pub fn tensor_basis_index(idx: &[usize], d: usize) -> usize {
    flatten(idx, d)
}
