//! n-Lie (Filippov) algebras given by structure constants.
//!
//! The bracket is stored as a dense table `T[a₁, …, a_n] ∈ F^d` over all
//! basis tuples. The canonical constructor fills every permutation of each
//! increasing tuple with the permutation sign, so skew-symmetry holds by
//! construction; [`NLieAlgebra::from_dense`] accepts arbitrary tables and
//! [`NLieAlgebra::check_skew_symmetry`] validates them.
//!
//! Quantified checks only visit increasing basis tuples in each block that
//! the identity is skew in. Every identity below is multilinear, so basis
//! tuples suffice, and permuting inside a skew block only changes the
//! residual by a sign.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::index::{all_tuples, combinations, flatten, sort_with_sign, Permutation};
use crate::linalg::Matrix;
use crate::report::{product, scan, CheckReport};
use crate::scalar::{add_scaled, int, is_zero_vec, sub_vec, zeros, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NLieAlgebra {
    arity: usize,
    dim: usize,
    /// `table[flatten(a) * dim + k] = T^k_{a}`.
    table: Vec<Scalar>,
}

impl NLieAlgebra {
    pub fn abelian(arity: usize, dim: usize) -> Result<Self> {
        if arity < 2 || dim == 0 {
            return Err(Error::BadShape { arity, dim });
        }
        Ok(Self {
            arity,
            dim,
            table: zeros(dim.pow(arity as u32) * dim),
        })
    }

    /// Builds from brackets on strictly increasing, 0-based index tuples.
    /// Each entry `(a, v)` sets `[e_{a₁}, …, e_{a_n}] = v`.
    pub fn from_canonical<I>(arity: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Vector)>,
    {
        let mut alg = Self::abelian(arity, dim)?;
        let mut seen = std::collections::HashSet::new();
        for (idx, value) in entries {
            let one_based: Vec<usize> = idx.iter().map(|i| i + 1).collect();
            if idx.len() != arity {
                return Err(Error::ArgumentCount {
                    expected: arity,
                    found: idx.len(),
                });
            }
            if value.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: value.len(),
                });
            }
            if idx.iter().any(|&i| i >= dim) || !idx.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::NonCanonicalIndex(one_based));
            }
            if !seen.insert(idx.clone()) {
                return Err(Error::DuplicateEntry(one_based));
            }
            for sigma in Permutation::all(arity) {
                let permuted: Vec<usize> = (0..arity).map(|s| idx[sigma.apply(s)]).collect();
                let sign = int(sigma.sign_i64());
                let base = flatten(&permuted, dim) * dim;
                for (k, c) in value.iter().enumerate() {
                    alg.table[base + k] = &sign * c;
                }
            }
        }
        Ok(alg)
    }

    /// Loads a full bracket table without enforcing skew-symmetry. Tuples
    /// not listed are zero.
    pub fn from_dense<I>(arity: usize, dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Vector)>,
    {
        let mut alg = Self::abelian(arity, dim)?;
        for (idx, value) in entries {
            if idx.len() != arity {
                return Err(Error::ArgumentCount {
                    expected: arity,
                    found: idx.len(),
                });
            }
            if value.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: value.len(),
                });
            }
            if idx.iter().any(|&i| i >= dim) {
                return Err(Error::OutOfRange {
                    what: "basis index",
                    value: idx.iter().max().copied().unwrap_or(0) + 1,
                    max: dim,
                });
            }
            let base = flatten(&idx, dim) * dim;
            alg.table[base..base + dim].clone_from_slice(&value);
        }
        Ok(alg)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[e_{a₁}, …, e_{a_n}]` for 0-based indices, read from the table.
    pub fn bracket_basis(&self, idx: &[usize]) -> &[Scalar] {
        let base = flatten(idx, self.dim) * self.dim;
        &self.table[base..base + self.dim]
    }

    /// Nonzero brackets on increasing tuples, in lexicographic order.
    pub fn canonical_entries(&self) -> Vec<(Vec<usize>, Vector)> {
        combinations(self.dim, self.arity)
            .into_iter()
            .map(|c| {
                let v = self.bracket_basis(&c).to_vec();
                (c, v)
            })
            .filter(|(_, v)| !is_zero_vec(v))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        is_zero_vec(&self.table)
    }

    /// Multilinear bracket of `n` coordinate vectors.
    pub fn bracket(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.arity {
            return Err(Error::ArgumentCount {
                expected: self.arity,
                found: args.len(),
            });
        }
        self.check_vectors(args)?;
        Ok(self.bracket_unchecked(args))
    }

    fn check_vectors(&self, args: &[Vector]) -> Result<()> {
        for a in args {
            if a.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: a.len(),
                });
            }
        }
        Ok(())
    }

    pub(crate) fn bracket_unchecked(&self, args: &[Vector]) -> Vector {
        let mut out = zeros(self.dim);
        let supports: Vec<Vec<(usize, &Scalar)>> = args
            .iter()
            .map(|a| a.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            .collect();
        let mut idx = vec![0; self.arity];
        self.expand(&supports, 0, &mut idx, &int(1), &mut out);
        out
    }

    fn expand(
        &self,
        supports: &[Vec<(usize, &Scalar)>],
        slot: usize,
        idx: &mut Vec<usize>,
        coeff: &Scalar,
        out: &mut Vector,
    ) {
        if slot == supports.len() {
            add_scaled(out, coeff, self.bracket_basis(idx));
            return;
        }
        for &(i, c) in &supports[slot] {
            idx[slot] = i;
            self.expand(supports, slot + 1, idx, &(coeff * c), out);
        }
    }

    /// Bracket where every argument except the one at `slot` is a basis
    /// vector and the one at `slot` is a general vector.
    pub(crate) fn bracket_with(&self, basis: &[usize], slot: usize, v: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim);
        let mut idx = basis.to_vec();
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx[slot] = k;
            add_scaled(&mut out, c, self.bracket_basis(&idx));
        }
        out
    }

    /// Matrix of `y ↦ [x₁, …, x_{n-1}, y]`.
    pub fn ad(&self, xs: &[Vector]) -> Result<Matrix> {
        if xs.len() + 1 != self.arity {
            return Err(Error::ArgumentCount {
                expected: self.arity - 1,
                found: xs.len(),
            });
        }
        self.check_vectors(xs)?;
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let mut args = xs.to_vec();
            args.push(crate::scalar::unit(self.dim, j));
            let col = self.bracket_unchecked(&args);
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// `ad(e_{a₁}, …, e_{a_{n-1}})` for 0-based basis indices.
    pub fn ad_basis(&self, xs: &[usize]) -> Matrix {
        assert_eq!(xs.len() + 1, self.arity);
        let mut m = Matrix::zeros(self.dim, self.dim);
        let mut idx = xs.to_vec();
        idx.push(0);
        for j in 0..self.dim {
            idx[self.arity - 1] = j;
            for (i, c) in self.bracket_basis(&idx).iter().enumerate() {
                if !c.is_zero() {
                    m.set(i, j, c.clone());
                }
            }
        }
        m
    }

    /// `ad` of the tuple `xs` with position `skip` removed (`ad_{x̂ᵢ}`).
    pub fn ad_hat(&self, xs: &[usize], skip: usize) -> Matrix {
        let rest: Vec<usize> = xs
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &x)| x)
            .collect();
        self.ad_basis(&rest)
    }

    /// Compares every permutation of every basis tuple against the sign rule;
    /// tuples with repeated indices must vanish.
    pub fn check_skew_symmetry(&self) -> CheckReport {
        let n = self.arity;
        let mut tuples = Vec::new();
        for c in combinations(self.dim, n) {
            for sigma in Permutation::all(n) {
                tuples.push((0..n).map(|s| c[sigma.apply(s)]).collect::<Vec<_>>());
            }
        }
        tuples.extend(
            all_tuples(self.dim, n)
                .into_iter()
                .filter(|t| sort_with_sign(t).is_none()),
        );
        scan("skew-symmetry", "a", &tuples, |t| match sort_with_sign(t) {
            None => self.bracket_basis(t).to_vec(),
            Some((canonical, sign)) => {
                let expected: Vector = self.bracket_basis(&canonical).iter().map(|c| int(sign) * c).collect();
                sub_vec(self.bracket_basis(t), &expected)
            }
        })
    }

    /// Residual of the Filippov–Jacobi identity
    /// `[x, [y₁…y_n]] − Σᵢ [y₁, …, [x, yᵢ], …, y_n]` on basis vectors, where
    /// `x` is an `(n−1)`-tuple.
    pub fn filippov_jacobi_residual(&self, xs: &[usize], ys: &[usize]) -> Vector {
        let inner = self.bracket_basis(ys);
        let mut xargs = xs.to_vec();
        xargs.push(0);
        let mut res = self.bracket_with(&xargs, self.arity - 1, inner);
        for i in 0..self.arity {
            xargs[self.arity - 1] = ys[i];
            let xy = self.bracket_basis(&xargs).to_vec();
            let term = self.bracket_with(ys, i, &xy);
            for (r, t) in res.iter_mut().zip(term) {
                *r -= t;
            }
        }
        res
    }

    pub fn check_filippov_jacobi(&self) -> CheckReport {
        let n = self.arity;
        let tuples = product(&[combinations(self.dim, n - 1), combinations(self.dim, n)]);
        scan("filippov-jacobi", "x | y", &tuples, |t| {
            self.filippov_jacobi_residual(&t[..n - 1], &t[n - 1..])
        })
    }

    /// `ad(X)` is a derivation: `ad(X)[y] − Σᵢ [y₁, …, ad(X)yᵢ, …, y_n]`.
    /// Same residual as the Filippov–Jacobi identity, computed through the
    /// `ad` matrix.
    pub fn check_derivation(&self) -> CheckReport {
        let n = self.arity;
        let tuples = product(&[combinations(self.dim, n - 1), combinations(self.dim, n)]);
        scan("ad-derivation", "x | y", &tuples, |t| {
            let (xs, ys) = (&t[..n - 1], &t[n - 1..]);
            let ad = self.ad_basis(xs);
            let mut res = ad.mul_vec(self.bracket_basis(ys));
            for i in 0..n {
                let col = ad.column(ys[i]);
                let term = self.bracket_with(ys, i, &col);
                for (r, v) in res.iter_mut().zip(term) {
                    *r -= v;
                }
            }
            res
        })
    }

    /// Residual of
    /// `Σᵢ<n [y₁, …, [x, yᵢ], …, y_n] + Σⱼ [x₁, …, [y₁…y_{n−1}, xⱼ], …, x_{n−1}, y_n]`.
    pub fn pair_identity_residual(&self, xs: &[usize], ys: &[usize]) -> Vector {
        let n = self.arity;
        let mut res = zeros(self.dim);
        let mut xargs = xs.to_vec();
        xargs.push(0);
        for i in 0..n - 1 {
            xargs[n - 1] = ys[i];
            let xy = self.bracket_basis(&xargs).to_vec();
            add_scaled(&mut res, &int(1), &self.bracket_with(ys, i, &xy));
        }
        let mut yargs = ys[..n - 1].to_vec();
        yargs.push(0);
        let mut outer = xs.to_vec();
        outer.push(ys[n - 1]);
        for j in 0..n - 1 {
            yargs[n - 1] = xs[j];
            let yx = self.bracket_basis(&yargs).to_vec();
            add_scaled(&mut res, &int(1), &self.bracket_with(&outer, j, &yx));
        }
        res
    }

    /// Checks the identity over increasing `x`, increasing `(y₁…y_{n−1})`
    /// and every `y_n` (the identity is not skew in `y_n`).
    pub fn check_pair_identity(&self) -> CheckReport {
        let n = self.arity;
        let last: Vec<Vec<usize>> = (0..self.dim).map(|i| vec![i]).collect();
        let tuples = product(&[combinations(self.dim, n - 1), combinations(self.dim, n - 1), last]);
        scan("pair-identity", "x | y", &tuples, |t| {
            self.pair_identity_residual(&t[..n - 1], &t[n - 1..])
        })
    }
}
