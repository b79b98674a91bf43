//! Dense exact matrices and fraction-free Gaussian elimination.
//!
//! Elimination clears denominators row by row, then eliminates with integer
//! cross-multiplication (`r ← a·r − b·p`) and divides each updated row by the
//! gcd of its entries. Pivots are the first nonzero entry in column order,
//! scanning rows top-down, so results are deterministic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{zero, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        self.data[r * self.cols + c] += v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| s * x).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, s: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }

    pub fn mul(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = vec![zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn rank(&self) -> usize {
        Echelon::of(self).pivots.len()
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        crate::scalar::dot(x, &self.mul_vec(y))
    }
}

/// Square sparse matrix used for representation operators, which are mostly
/// zero for tensor-power modules.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    dim: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_dense(m: &Matrix) -> Self {
        assert_eq!(m.rows, m.cols, "sparse matrices are square");
        let mut out = Self::zeros(m.rows);
        for r in 0..m.rows {
            for c in 0..m.cols {
                let v = m.get(r, c);
                if !v.is_zero() {
                    out.entries.insert((r, c), v.clone());
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (&(r, c), v) in &self.entries {
            m.set(r, c, v.clone());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(Scalar::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn add_assign_scaled(&mut self, s: &Scalar, other: &SparseMatrix) {
        if s.is_zero() {
            return;
        }
        for (&(r, c), v) in &other.entries {
            self.add_at(r, c, &(s * v));
        }
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.dim, other.dim, "matrix product shape mismatch");
        let mut out = Self::zeros(self.dim);
        for (&(r, k), a) in &self.entries {
            for (&(_, c), b) in other.entries.range((k, 0)..(k + 1, 0)) {
                out.add_at(r, c, &(a * b));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.dim, v.len(), "matrix-vector shape mismatch");
        let mut out = vec![zero(); self.dim];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn scaled(&self, s: &Scalar) -> SparseMatrix {
        let mut out = Self::zeros(self.dim);
        out.add_assign_scaled(s, self);
        out
    }

    /// Row-major dense entries.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.to_dense().data
    }
}

/// Integer row-echelon form of a rational matrix.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub cols: usize,
    /// Nonzero rows only, each with a leading entry at `pivots[i]`.
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&lcm / x.denom())
            }
        })
        .collect();
    reduce_content(&mut out);
    out
}

fn reduce_content(row: &mut [BigInt]) {
    let g = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x /= &g;
            }
        }
    }
}

impl Echelon {
    pub fn of(m: &Matrix) -> Self {
        let rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|r| integer_row(m.row(r))).collect();
        Self::from_integer_rows(rows, m.cols())
    }

    pub fn from_integer_rows(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        let mut pivots = Vec::new();
        let mut done = 0;
        for col in 0..cols {
            let Some(p) = (done..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(done, p);
            let (head, tail) = rows.split_at_mut(done + 1);
            let pivot_row = &head[done];
            let a = &pivot_row[col];
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let b = row[col].clone();
                for c in col..cols {
                    let updated = a * &row[c] - &b * &pivot_row[c];
                    row[c] = updated;
                }
                reduce_content(row);
            }
            pivots.push(col);
            done += 1;
        }
        rows.truncate(done);
        Self { cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduced row-echelon form over the rationals.
    pub fn reduced(&self) -> Vec<Vec<Scalar>> {
        let mut out: Vec<Vec<Scalar>> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| {
                let lead = Scalar::from_integer(row[p].clone());
                row.iter().map(|x| Scalar::from_integer(x.clone()) / &lead).collect()
            })
            .collect();
        for i in (0..out.len()).rev() {
            let p = self.pivots[i];
            let (above, rest) = out.split_at_mut(i);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                if row[p].is_zero() {
                    continue;
                }
                let f = row[p].clone();
                for c in p..self.cols {
                    if !pivot_row[c].is_zero() {
                        let delta = &f * &pivot_row[c];
                        row[c] -= delta;
                    }
                }
            }
        }
        out
    }
}

/// Solves `A x = b` exactly. Returns `None` when inconsistent; free
/// variables are set to zero.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let rows: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            integer_row(&row)
        })
        .collect();
    let ech = Echelon::from_integer_rows(rows, a.cols() + 1);
    if ech.pivots.last() == Some(&a.cols()) {
        return None;
    }
    let rref = ech.reduced();
    let mut x = vec![zero(); a.cols()];
    for (row, &p) in rref.iter().zip(&ech.pivots) {
        x[p] = row[a.cols()].clone();
    }
    Some(x)
}

/// A basis of the null space `{x : A x = 0}`, one vector per free column.
pub fn kernel(a: &Matrix) -> Vec<Vec<Scalar>> {
    let ech = Echelon::of(a);
    let rref = ech.reduced();
    let pivot_set: std::collections::HashSet<usize> = ech.pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..a.cols()).filter(|c| !pivot_set.contains(c)) {
        let mut v = vec![zero(); a.cols()];
        v[free] = Scalar::one();
        for (row, &p) in rref.iter().zip(&ech.pivots) {
            if !row[free].is_zero() {
                v[p] = -&row[free];
            }
        }
        basis.push(v);
    }
    basis
}

/// Exact determinant of a square matrix via the echelon form.
pub fn determinant(a: &Matrix) -> Scalar {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    // plain rational elimination; matrices here are small
    let n = a.rows();
    let mut m: Vec<Vec<Scalar>> = (0..n).map(|r| a.row(r).to_vec()).collect();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}
