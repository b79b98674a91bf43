//! Brute-force oracles shared by the integration tests.
//!
//! Everything here works on plain coordinate vectors and nested loops. None
//! of it calls the library's checks, so agreement between the two is a real
//! cross-check.

#![allow(dead_code)]

use std::collections::HashMap;

use nlie::bialgebra::Cobracket;
use nlie::NLieAlgebra;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

pub fn e(d: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); d];
    v[i] = Q::one();
    v
}

fn axpy(acc: &mut [Q], c: &Q, v: &[Q]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += c * b;
    }
}

/// Sorts by adjacent swaps, tracking the sign. `None` on a repeated index.
pub fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, sign))
}

/// Increasing `k`-subsets of `0..d`.
pub fn subsets(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    rec(0, d, k, &mut cur, &mut out);
    out
}

/// All `d^k` tuples, first index most significant.
pub fn tuples(d: usize, k: usize) -> Vec<Vec<usize>> {
    (0..d.pow(k as u32))
        .map(|mut f| {
            let mut t = vec![0; k];
            for slot in t.iter_mut().rev() {
                *slot = f % d;
                f /= d;
            }
            t
        })
        .collect()
}

pub fn flat(idx: &[usize], d: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * d + i)
}

/// A skew bracket stored on increasing index tuples only.
#[derive(Clone, Debug)]
pub struct Table {
    pub n: usize,
    pub d: usize,
    pub c: HashMap<Vec<usize>, Vec<Q>>,
}

impl Table {
    pub fn of(alg: &NLieAlgebra) -> Self {
        let (n, d) = (alg.arity(), alg.dim());
        let c = subsets(d, n)
            .into_iter()
            .map(|s| {
                let v = alg.bracket_basis(&s).to_vec();
                (s, v)
            })
            .collect();
        Self { n, d, c }
    }

    pub fn basis(&self, idx: &[usize]) -> Vec<Q> {
        match sort_sign(idx) {
            None => vec![Q::zero(); self.d],
            Some((s, sign)) => match self.c.get(&s) {
                None => vec![Q::zero(); self.d],
                Some(v) => v.iter().map(|x| x * q(sign)).collect(),
            },
        }
    }

    /// Multilinear expansion over the nonzero coordinates of every argument.
    pub fn bracket(&self, args: &[Vec<Q>]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.d];
        let mut idx = vec![0; args.len()];
        self.expand(args, 0, &Q::one(), &mut idx, &mut out);
        out
    }

    fn expand(&self, args: &[Vec<Q>], pos: usize, coeff: &Q, idx: &mut Vec<usize>, out: &mut [Q]) {
        if pos == args.len() {
            axpy(out, coeff, &self.basis(idx));
            return;
        }
        for (i, c) in args[pos].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            idx[pos] = i;
            self.expand(args, pos + 1, &(coeff * c), idx, out);
        }
    }

    /// `ad(x)` as a row-major matrix: column `z` is `[x, e_z]`.
    pub fn ad(&self, x: &[usize]) -> Vec<Vec<Q>> {
        let mut m = vec![vec![Q::zero(); self.d]; self.d];
        for z in 0..self.d {
            let mut idx = x.to_vec();
            idx.push(z);
            for (r, v) in self.basis(&idx).into_iter().enumerate() {
                m[r][z] = v;
            }
        }
        m
    }

    /// First `(x, y)` (increasing, 0-based) violating the Filippov–Jacobi
    /// identity `[x, [y]] = Σ_i [y₁, …, [x, y_i], …, y_n]`.
    pub fn fji_failure(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.n;
        for x in subsets(self.d, n - 1) {
            let xs: Vec<Vec<Q>> = x.iter().map(|&i| e(self.d, i)).collect();
            for y in subsets(self.d, n) {
                let ys: Vec<Vec<Q>> = y.iter().map(|&i| e(self.d, i)).collect();
                let mut args = xs.clone();
                args.push(self.bracket(&ys));
                let mut res = self.bracket(&args);
                for i in 0..n {
                    let mut inner = xs.clone();
                    inner.push(ys[i].clone());
                    let mut outer = ys.clone();
                    outer[i] = self.bracket(&inner);
                    axpy(&mut res, &q(-1), &self.bracket(&outer));
                }
                if res.iter().any(|v| !v.is_zero()) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// `g ⋉ V` with `[x₁, …, x_{n−1}, v] = ρ(x) v`, brackets with two or
    /// more module vectors zero. It satisfies the Filippov–Jacobi identity
    /// exactly when `ρ` is a representation. `rho(x)` is row-major `m × m`.
    pub fn semidirect<F>(&self, m: usize, rho: F) -> Table
    where
        F: Fn(&[usize]) -> Vec<Vec<Q>>,
    {
        let (n, d) = (self.n, self.d);
        let total = d + m;
        let mut c = HashMap::new();
        for s in subsets(total, n) {
            let modules = s.iter().filter(|&&i| i >= d).count();
            let mut v = vec![Q::zero(); total];
            if modules == 0 {
                for (k, x) in self.basis(&s).into_iter().enumerate() {
                    v[k] = x;
                }
            } else if modules == 1 {
                // the module vector is last in an increasing tuple
                let a = &s[..n - 1];
                let col = s[n - 1] - d;
                let r = rho(a);
                for row in 0..m {
                    v[d + row] = r[row][col].clone();
                }
            }
            if v.iter().any(|x| !x.is_zero()) {
                c.insert(s, v);
            }
        }
        Table { n, d: total, c }
    }

    /// Coadjoint action `−ad(x)ᵀ`.
    pub fn coadjoint(&self, x: &[usize]) -> Vec<Vec<Q>> {
        let a = self.ad(x);
        (0..self.d)
            .map(|r| (0..self.d).map(|c| -a[c][r].clone()).collect())
            .collect()
    }

    /// `ad(x)` acting on every factor of `g^{⊗p}`.
    pub fn tensor_ad(&self, x: &[usize], p: usize) -> Vec<Vec<Q>> {
        let a = self.ad(x);
        let size = self.d.pow(p as u32);
        let mut m = vec![vec![Q::zero(); size]; size];
        for col in tuples(self.d, p) {
            for slot in 0..p {
                for r in 0..self.d {
                    let c = &a[r][col[slot]];
                    if c.is_zero() {
                        continue;
                    }
                    let mut row = col.clone();
                    row[slot] = r;
                    m[flat(&row, self.d)][flat(&col, self.d)] += c;
                }
            }
        }
        m
    }
}

/// `γ(e_i)` as a flat vector over `d^n` tensor indices.
pub fn image(cb: &Cobracket, i: usize) -> Vec<Q> {
    cb.image(i).entries().to_vec()
}

/// Whether `γ([x]) = Σ_i (−1)^{n−1−i} ad(x̂_i)·γ(x_i)` holds on every
/// increasing `x`, with `ad` acting on every tensor factor.
pub fn cocycle_holds(t: &Table, cb: &Cobracket) -> bool {
    let (n, d) = (t.n, t.d);
    let size = d.pow(n as u32);
    for x in subsets(d, n) {
        let mut res = vec![Q::zero(); size];
        for (k, c) in t.basis(&x).iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut res, c, &image(cb, k));
            }
        }
        for i in 0..n {
            let hat: Vec<usize> = (0..n).filter(|&j| j != i).map(|j| x[j]).collect();
            let m = t.tensor_ad(&hat, n);
            let g = image(cb, x[i]);
            let sign = if (n - 1 - i) % 2 == 0 { q(-1) } else { q(1) };
            for (r, row) in m.iter().enumerate() {
                let mut acc = Q::zero();
                for (c, v) in row.iter().enumerate() {
                    if !v.is_zero() && !g[c].is_zero() {
                        acc += v * &g[c];
                    }
                }
                res[r] += &sign * acc;
            }
        }
        if res.iter().any(|v| !v.is_zero()) {
            return false;
        }
    }
    true
}

/// The bracket on the dual space: `[f_s]` has coefficient `γ(e_x)_s` on `f_x`.
pub fn dual_table(cb: &Cobracket) -> Table {
    let (n, d) = (cb.algebra().arity(), cb.algebra().dim());
    let c = subsets(d, n)
        .into_iter()
        .map(|s| {
            let v = (0..d).map(|x| image(cb, x)[flat(&s, d)].clone()).collect();
            (s, v)
        })
        .collect();
    Table { n, d, c }
}

/// Invariance `B([x, y], z) + B(y, [x, z]) = 0` over basis vectors, `x` an
/// increasing `(n−1)`-tuple.
pub fn form_invariant(t: &Table, form: &[Vec<Q>]) -> bool {
    let pair = |a: &[Q], b: &[Q]| -> Q {
        let mut acc = Q::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                acc += ai * &form[i][j] * bj;
            }
        }
        acc
    };
    for x in subsets(t.d, t.n - 1) {
        for y in 0..t.d {
            for z in 0..t.d {
                let mut xy = x.clone();
                xy.push(y);
                let mut xz = x.clone();
                xz.push(z);
                let s = pair(&t.basis(&xy), &e(t.d, z)) + pair(&e(t.d, y), &t.basis(&xz));
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// `P·B(P⁻¹x₁, …, P⁻¹x_n)` for a triangular `P` with unit diagonal and the
/// given strictly-upper entries, so `P⁻¹` is exact and cheap.
pub fn transported(alg: &NLieAlgebra, upper: &[i64]) -> NLieAlgebra {
    let (n, d) = (alg.arity(), alg.dim());
    let mut p = vec![vec![Q::zero(); d]; d];
    let mut it = upper.iter().cycle();
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = Q::one();
        for v in row.iter_mut().skip(i + 1) {
            *v = q(*it.next().unwrap_or(&0));
        }
    }
    // back substitution for the columns of P⁻¹
    let mut inv = vec![vec![Q::zero(); d]; d];
    for col in 0..d {
        for r in (0..d).rev() {
            let mut v = if r == col { Q::one() } else { Q::zero() };
            for k in r + 1..d {
                v -= &p[r][k] * &inv[k][col];
            }
            inv[r][col] = v;
        }
    }
    let t = Table::of(alg);
    let entries = subsets(d, n).into_iter().map(|s| {
        let args: Vec<Vec<Q>> = s.iter().map(|&i| (0..d).map(|r| inv[r][i].clone()).collect()).collect();
        let b = t.bracket(&args);
        let img = (0..d)
            .map(|r| (0..d).map(|k| &p[r][k] * &b[k]).sum())
            .collect::<Vec<Q>>();
        (s, img)
    });
    NLieAlgebra::from_canonical(n, d, entries).expect("skew table")
}
