//! Operad matrices, the row (`R_i`) and column (`C_j`) conditions, local
//! cocycle decompositions, centroid and local operad maps, and the
//! structure-constant forms of the last two.
//!
//! Conventions: `i`, `j`, `k` arguments of public checks are 1-based as in
//! the usual notation; tensor slots and basis indices are 0-based internally
//! and 1-based in reports.

use num_traits::Zero;

use crate::algebra::NLieAlgebra;
use crate::bialgebra::{check_dual_condition, BialgebraReport, Cobracket};
use crate::error::{Error, Result};
use crate::index::combinations;
use crate::linalg::Matrix;
use crate::report::{product, scan, verdicts, CheckReport, Counterexample};
use crate::scalar::{int, sign_pow, Scalar};
use crate::tensor::DenseTensor;

/// Grid `h_{ij} = (−1)^{n−j} · ad(x̂_j)` acting on tensor slot `i`, at a
/// fixed basis tuple. Cleared cells are the zero operator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperadMatrix {
    n: usize,
    cells: Vec<Option<Matrix>>,
}

impl OperadMatrix {
    pub fn arity(&self) -> usize {
        self.n
    }

    /// Signed operator of cell `(i, j)` (0-based); `None` is zero.
    pub fn entry(&self, i: usize, j: usize) -> Option<&Matrix> {
        self.cells[i * self.n + j].as_ref()
    }

    /// Only row `i` kept (`A_{R_i}`).
    pub fn row_part(&self, i: usize) -> Self {
        self.keep(|r, _| r == i)
    }

    /// Only column `j` kept (`A_{C_j}`).
    pub fn column_part(&self, j: usize) -> Self {
        self.keep(|_, c| c == j)
    }

    fn keep(&self, f: impl Fn(usize, usize) -> bool) -> Self {
        let n = self.n;
        let cells = (0..n * n)
            .map(|p| if f(p / n, p % n) { self.cells[p].clone() } else { None })
            .collect();
        Self { n, cells }
    }

    /// Cellwise sum of grids of the same arity.
    pub fn sum(parts: &[OperadMatrix]) -> Option<OperadMatrix> {
        let n = parts.first()?.n;
        let mut cells: Vec<Option<Matrix>> = vec![None; n * n];
        for p in parts {
            for (acc, c) in cells.iter_mut().zip(&p.cells) {
                if let Some(m) = c {
                    *acc = Some(match acc.take() {
                        Some(a) => a.add(m),
                        None => m.clone(),
                    });
                }
            }
        }
        Some(OperadMatrix { n, cells })
    }

    /// Cellwise equality, treating `None` and a zero matrix alike.
    pub fn same_operators(&self, other: &OperadMatrix) -> bool {
        self.n == other.n
            && self.cells.iter().zip(&other.cells).all(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => x == y,
                (Some(x), None) | (None, Some(x)) => x.is_zero(),
                (None, None) => true,
            })
    }

    /// `(1, …, 1) · A · (t₁, …, t_n)ᵀ`.
    pub fn apply(&self, column: &[&DenseTensor]) -> DenseTensor {
        let n = self.n;
        let mut out = DenseTensor::zeros(column[0].rank(), column[0].dim());
        for i in 0..n {
            for j in 0..n {
                if let Some(m) = self.entry(i, j) {
                    if !m.is_zero() && !column[j].is_zero() {
                        out.add_assign_scaled(&int(1), &column[j].apply_to_slot(i, m));
                    }
                }
            }
        }
        out
    }
}

pub fn build_operad_matrix(alg: &NLieAlgebra, xs: &[usize]) -> Result<OperadMatrix> {
    let n = alg.arity();
    if xs.len() != n {
        return Err(Error::ArgumentCount {
            expected: n,
            found: xs.len(),
        });
    }
    if let Some(&x) = xs.iter().find(|&&x| x >= alg.dim()) {
        return Err(Error::OutOfRange {
            what: "basis index",
            value: x + 1,
            max: alg.dim(),
        });
    }
    let column: Vec<Matrix> = (0..n).map(|j| alg.ad_hat(xs, j).scaled(&sign_pow(n - 1 - j))).collect();
    let cells = (0..n * n).map(|p| Some(column[p % n].clone())).collect();
    Ok(OperadMatrix { n, cells })
}

fn images_at<'a>(cb: &'a Cobracket, xs: &[usize]) -> Vec<&'a DenseTensor> {
    xs.iter().map(|&x| cb.image(x)).collect()
}

fn operad_residual(cb: &Cobracket, a: &OperadMatrix, xs: &[usize]) -> Vec<Scalar> {
    let lhs = cb.apply(cb.algebra().bracket_basis(xs));
    lhs.sub(&a.apply(&images_at(cb, xs))).into_entries()
}

/// The one-cocycle condition in operad form: `γ([x]) = (1,…,1)·A·(γ(x₁),…,γ(x_n))ᵀ` on
/// increasing tuples.
pub fn check_cocycle_via_operad(cb: &Cobracket) -> CheckReport {
    let alg = cb.algebra();
    let tuples = combinations(alg.dim(), alg.arity());
    scan("one-cocycle-operad", "x", &tuples, |x| {
        let a = build_operad_matrix(alg, x).expect("tuple has arity n");
        operad_residual(cb, &a, x)
    })
}

pub fn cocycle_operad_verdicts(cb: &Cobracket) -> Vec<bool> {
    let alg = cb.algebra();
    let tuples = combinations(alg.dim(), alg.arity());
    verdicts(&tuples, |x| {
        let a = build_operad_matrix(alg, x).expect("tuple has arity n");
        operad_residual(cb, &a, x)
    })
}

fn check_position(what: &'static str, p: usize, n: usize) -> Result<usize> {
    if p == 0 || p > n {
        return Err(Error::OutOfRange { what, value: p, max: n });
    }
    Ok(p - 1)
}

/// Row equation alone (no condition (i)): `γ([x]) = Σ_j h_{ij} γ(x_j)`.
pub fn row_equation(cb: &Cobracket, i: usize) -> Result<CheckReport> {
    let alg = cb.algebra();
    let row = check_position("row", i, alg.arity())?;
    let tuples = combinations(alg.dim(), alg.arity());
    Ok(scan(&format!("row-{i}-operad"), "x", &tuples, |x| {
        let a = build_operad_matrix(alg, x).expect("tuple has arity n").row_part(row);
        operad_residual(cb, &a, x)
    }))
}

/// `R_i`-operad: condition (i) plus the row-`i` equation.
#[allow(non_snake_case)]
pub fn check_Ri_operad(cb: &Cobracket, i: usize) -> Result<CheckReport> {
    let eq = row_equation(cb, i)?;
    Ok(CheckReport::all(
        format!("R{i}-operad"),
        &[check_dual_condition(cb), eq],
    ))
}

/// Column equation `γ([x]) = (−1)^{n−j} ad^{(n)}_{x̂_j} γ(x_j)`. The right
/// side is not skew in `x_j`, so `x_j` runs over all basis vectors while the
/// other entries stay increasing.
pub fn column_equation(cb: &Cobracket, j: usize) -> Result<CheckReport> {
    let alg = cb.algebra();
    let (n, d) = (alg.arity(), alg.dim());
    let col = check_position("column", j, n)?;
    let tuples: Vec<Vec<usize>> = product(&[(0..d).map(|x| vec![x]).collect(), combinations(d, n - 1)])
        .into_iter()
        .map(|t| {
            let mut x = t[1..].to_vec();
            x.insert(col, t[0]);
            x
        })
        .collect();
    Ok(scan(&format!("column-{j}-operad"), "x", &tuples, |x| {
        let a = build_operad_matrix(alg, x).expect("tuple has arity n").column_part(col);
        operad_residual(cb, &a, x)
    }))
}

#[allow(non_snake_case)]
pub fn check_Cj_operad(cb: &Cobracket, j: usize) -> Result<CheckReport> {
    let eq = column_equation(cb, j)?;
    Ok(CheckReport::all(
        format!("C{j}-operad"),
        &[check_dual_condition(cb), eq],
    ))
}

fn check_components(alg: &NLieAlgebra, gammas: &[Cobracket]) -> Result<()> {
    if gammas.len() != alg.arity() {
        return Err(Error::ArgumentCount {
            expected: alg.arity(),
            found: gammas.len(),
        });
    }
    if gammas.iter().any(|g| g.algebra() != alg) {
        return Err(Error::Precondition("components over the given algebra".into()));
    }
    Ok(())
}

/// Component `i` satisfies the row-`i` equation and the sum satisfies
/// condition (i).
pub fn check_local_cocycle(alg: &NLieAlgebra, gammas: &[Cobracket]) -> Result<CheckReport> {
    check_components(alg, gammas)?;
    let mut parts = Vec::with_capacity(gammas.len() + 1);
    for (i, g) in gammas.iter().enumerate() {
        parts.push(row_equation(g, i + 1)?);
    }
    parts.push(check_dual_condition(&Cobracket::sum(gammas)?));
    Ok(CheckReport::all("local-cocycle", &parts))
}

/// `(i, k, j)` (1-based) of every term of the compatibility sum: `i ≠ k`,
/// `j` free. There are `n²(n−1)` of them.
pub fn compatibility_terms(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            if i == k {
                continue;
            }
            for j in 1..=n {
                out.push((i, k, j));
            }
        }
    }
    out
}

/// `Σ_{i≠k, j} (−1)^{n−j} (ad_{x̂_j} in slot k) γ_i(x_j)`.
pub fn compatibility_residual(alg: &NLieAlgebra, gammas: &[Cobracket], xs: &[usize]) -> DenseTensor {
    let n = alg.arity();
    let a = build_operad_matrix(alg, xs).expect("tuple has arity n");
    let mut out = DenseTensor::zeros(n, alg.dim());
    for (i, k, j) in compatibility_terms(n) {
        let m = a.entry(k - 1, j - 1).expect("full grid");
        let g = gammas[i - 1].image(xs[j - 1]);
        if !m.is_zero() && !g.is_zero() {
            out.add_assign_scaled(&int(1), &g.apply_to_slot(k - 1, m));
        }
    }
    out
}

pub fn check_compatibility_sum(alg: &NLieAlgebra, gammas: &[Cobracket]) -> Result<CheckReport> {
    check_components(alg, gammas)?;
    let tuples = combinations(alg.dim(), alg.arity());
    Ok(scan("compatibility-sum", "x", &tuples, |x| {
        compatibility_residual(alg, gammas, x).into_entries()
    }))
}

// Tuple sets shared by the tensor-level checks and their structure-constant
// forms, so verdicts can be compared position by position.

/// `x₁` free, `x₂ < ⋯ < x_n`.
fn centroid_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    product(&[(0..d).map(|x| vec![x]).collect(), combinations(d, n - 1)])
}

/// `j ∈ 1..n−1` (stored 0-based) followed by a centroid tuple.
fn slot_pair_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    product(&[(0..n - 1).map(|j| vec![j]).collect(), centroid_tuples(d, n)])
}

/// `i ≠ k` (0-based), then `x₁` free, increasing middle, `x_n` free.
fn cross_tuples(d: usize, n: usize) -> Vec<Vec<usize>> {
    let pairs: Vec<Vec<usize>> = (0..n)
        .flat_map(|i| (0..n).filter(move |&k| k != i).map(move |k| vec![i, k]))
        .collect();
    let free: Vec<Vec<usize>> = (0..d).map(|x| vec![x]).collect();
    product(&[pairs, free.clone(), combinations(d, n - 2), free])
}

fn slot_ad(t: &DenseTensor, slot: usize, ad: &Matrix) -> DenseTensor {
    if ad.is_zero() || t.is_zero() {
        DenseTensor::zeros(t.rank(), t.dim())
    } else {
        t.apply_to_slot(slot, ad)
    }
}

/// `γ([x₁,…,x_n]) − [γ(x₁), x₂, …, x_n]`, the bracket taken in the first
/// tensor slot: `[y, x₂, …, x_n] = (−1)^{n−1} ad(x₂,…,x_n) y`.
pub fn centroid_residual(cb: &Cobracket, xs: &[usize]) -> DenseTensor {
    let alg = cb.algebra();
    let n = alg.arity();
    let lhs = cb.apply(alg.bracket_basis(xs));
    let ad = alg.ad_basis(&xs[1..]).scaled(&sign_pow(n - 1));
    lhs.sub(&slot_ad(cb.image(xs[0]), 0, &ad))
}

/// `(ad(x₂,…,x_n) in slot j + in slot n) γ(x₁)`, `j` 0-based.
pub fn slot_pair_residual(cb: &Cobracket, j: usize, xs: &[usize]) -> DenseTensor {
    let alg = cb.algebra();
    let n = alg.arity();
    let ad = alg.ad_basis(&xs[1..]);
    let g = cb.image(xs[0]);
    let mut r = slot_ad(g, j, &ad);
    r.add_assign_scaled(&int(1), &slot_ad(g, n - 1, &ad));
    r
}

/// `(ad(x₂,…,x_n) in slot i) γ(x₁) + (ad(x₂,…,x_{n−1},x₁) in slot k) γ(x_n)`.
pub fn cross_residual(cb: &Cobracket, i: usize, k: usize, xs: &[usize]) -> DenseTensor {
    let alg = cb.algebra();
    let n = alg.arity();
    let mut second: Vec<usize> = xs[1..n - 1].to_vec();
    second.push(xs[0]);
    let mut r = slot_ad(cb.image(xs[0]), i, &alg.ad_basis(&xs[1..]));
    r.add_assign_scaled(&int(1), &slot_ad(cb.image(xs[n - 1]), k, &alg.ad_basis(&second)));
    r
}

pub fn check_centroid(cb: &Cobracket) -> CheckReport {
    let alg = cb.algebra();
    let tuples = centroid_tuples(alg.dim(), alg.arity());
    scan("centroid", "x", &tuples, |x| centroid_residual(cb, x).into_entries())
}

fn check_slot_pair(cb: &Cobracket) -> CheckReport {
    let alg = cb.algebra();
    let tuples = slot_pair_tuples(alg.dim(), alg.arity());
    scan("local-operad-slot-pair", "j | x", &tuples, |t| {
        slot_pair_residual(cb, t[0], &t[1..]).into_entries()
    })
}

fn check_cross(cb: &Cobracket) -> CheckReport {
    let alg = cb.algebra();
    let tuples = cross_tuples(alg.dim(), alg.arity());
    scan("local-operad-cross", "i k | x", &tuples, |t| {
        cross_residual(cb, t[0], t[1], &t[2..]).into_entries()
    })
}

pub fn check_local_operad_map(cb: &Cobracket) -> CheckReport {
    CheckReport::all("local-operad-map", &[check_slot_pair(cb), check_cross(cb)])
}

/// Row-1 operad bialgebra whose cobracket is a local operad centroid map.
pub fn check_double_construction(cb: &Cobracket) -> BialgebraReport {
    let row = row_equation(cb, 1).expect("row 1 exists");
    let centroid = check_centroid(cb);
    let local = check_local_operad_map(cb);
    let condition_ii = CheckReport::all("double-construction", &[row.clone(), centroid.clone(), local.clone()]);
    BialgebraReport {
        condition_i: check_dual_condition(cb),
        condition_ii,
        extras: vec![row, centroid, local],
    }
}

/// Which structure-constant identity a residual belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantForm {
    Centroid,
    SlotPair,
    Cross,
}

impl ConstantForm {
    pub const ALL: [ConstantForm; 3] = [Self::Centroid, Self::SlotPair, Self::Cross];

    pub fn name(self) -> &'static str {
        match self {
            Self::Centroid => "centroid",
            Self::SlotPair => "local-operad-slot-pair",
            Self::Cross => "local-operad-cross",
        }
    }

    fn layout(self) -> &'static str {
        match self {
            Self::Centroid => "a",
            Self::SlotPair => "j | a",
            Self::Cross => "i k | a",
        }
    }

    fn tuples(self, d: usize, n: usize) -> Vec<Vec<usize>> {
        match self {
            Self::Centroid => centroid_tuples(d, n),
            Self::SlotPair => slot_pair_tuples(d, n),
            Self::Cross => cross_tuples(d, n),
        }
    }
}

/// Reads `T` and `C` off the algebra and cobracket and evaluates the
/// identities with every displayed index summed, exactly as written.
struct Constants<'a> {
    alg: &'a NLieAlgebra,
    cb: &'a Cobracket,
    all_s: Vec<Vec<usize>>,
}

impl<'a> Constants<'a> {
    fn new(cb: &'a Cobracket) -> Self {
        let alg = cb.algebra();
        Self {
            alg,
            cb,
            all_s: crate::index::all_tuples(alg.dim(), alg.arity()),
        }
    }

    fn t(&self, a: &[usize], k: usize) -> &Scalar {
        &self.alg.bracket_basis(a)[k]
    }

    /// `Σ_k T^k_a`.
    fn t_summed(&self, a: &[usize]) -> Scalar {
        self.alg.bracket_basis(a).iter().sum()
    }

    fn c(&self, i: usize, s: &[usize]) -> &Scalar {
        self.cb.coefficient(i, s)
    }

    /// `Σ_{s,k} ( T^k_a C_k^s − Σ_i (−1)^{n−1} T^{s_i}_{a₂…a_n,k} C_{a₁}^{ŝ_i,k} )`.
    fn centroid(&self, a: &[usize]) -> Scalar {
        let (n, d) = (self.alg.arity(), self.alg.dim());
        let mut acc = Scalar::zero();
        let mut tail: Vec<usize> = a[1..].to_vec();
        tail.push(0);
        for s in &self.all_s {
            for k in 0..d {
                let tk = self.t(a, k);
                if !tk.is_zero() {
                    acc += tk * self.c(k, s);
                }
                tail[n - 1] = k;
                for i in 0..n {
                    let t = self.t(&tail, s[i]);
                    if t.is_zero() {
                        continue;
                    }
                    let mut cs: Vec<usize> = s.iter().enumerate().filter(|&(q, _)| q != i).map(|(_, &v)| v).collect();
                    cs.push(k);
                    acc -= sign_pow(n - 1) * t * self.c(a[0], &cs);
                }
            }
        }
        acc
    }

    /// `Σ_{s,k} T^k_{tail, s_p} C_src^s` with `tail` of length `n−1`.
    fn contracted(&self, tail: &[usize], p: usize, src: usize) -> Scalar {
        let mut idx = tail.to_vec();
        idx.push(0);
        let last = idx.len() - 1;
        let mut acc = Scalar::zero();
        for s in &self.all_s {
            let c = self.c(src, s);
            if c.is_zero() {
                continue;
            }
            idx[last] = s[p];
            acc += self.t_summed(&idx) * c;
        }
        acc
    }

    fn slot_pair(&self, j: usize, a: &[usize]) -> Vec<Scalar> {
        let n = self.alg.arity();
        vec![self.contracted(&a[1..], j, a[0]), self.contracted(&a[1..], n - 1, a[0])]
    }

    fn cross(&self, i: usize, k: usize, a: &[usize]) -> Vec<Scalar> {
        let n = self.alg.arity();
        vec![
            self.contracted(&a[1..], i, a[0]),
            self.contracted(&a[..n - 1], k, a[n - 1]),
        ]
    }

    fn residual(&self, form: ConstantForm, t: &[usize]) -> Vec<Scalar> {
        match form {
            ConstantForm::Centroid => vec![self.centroid(t)],
            ConstantForm::SlotPair => self.slot_pair(t[0], &t[1..]),
            ConstantForm::Cross => self.cross(t[0], t[1], &t[2..]),
        }
    }
}

fn tensor_residual(cb: &Cobracket, form: ConstantForm, t: &[usize]) -> Vec<Scalar> {
    match form {
        ConstantForm::Centroid => centroid_residual(cb, t).into_entries(),
        ConstantForm::SlotPair => slot_pair_residual(cb, t[0], &t[1..]).into_entries(),
        ConstantForm::Cross => cross_residual(cb, t[0], t[1], &t[2..]).into_entries(),
    }
}

/// Outcome of one structure-constant identity next to its tensor-level
/// counterpart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormComparison {
    pub form: ConstantForm,
    /// The identity as written, in `T` and `C`.
    pub constants: CheckReport,
    pub tensor: CheckReport,
    /// First tuple (1-based, with its layout) where the two verdicts differ.
    pub discrepancy: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstantReport {
    pub forms: Vec<FormComparison>,
}

impl StructureConstantReport {
    pub fn flagged(&self) -> bool {
        self.forms.iter().any(|f| f.discrepancy.is_some())
    }

    pub fn first_discrepancy(&self) -> Option<(ConstantForm, &Counterexample)> {
        self.forms
            .iter()
            .find_map(|f| f.discrepancy.as_ref().map(|c| (f.form, c)))
    }

    /// Passes iff both evaluators agree at every tuple. A failure names the
    /// first disagreeing tuple; the residual lists the structure-constant
    /// value(s) there.
    pub fn agreement(&self) -> CheckReport {
        let run = self
            .forms
            .iter()
            .map(|f| f.constants.checks_run.max(f.tensor.checks_run))
            .sum();
        match self.first_discrepancy() {
            None => CheckReport::pass("structure-constants", run),
            Some((form, cx)) => {
                let mut r = CheckReport::fail("structure-constants", run, cx.clone());
                r.notes.push(format!(
                    "transcription discrepancy: {} form disagrees with the tensor-level check",
                    form.name()
                ));
                r
            }
        }
    }
}

pub fn check_structure_constants(cb: &Cobracket) -> StructureConstantReport {
    check_structure_constants_with(cb, |_, _, _| {})
}

/// As [`check_structure_constants`], with `perturb` allowed to edit each
/// structure-constant residual before its verdict is taken. Used to confirm
/// that a corrupted formula is caught.
pub fn check_structure_constants_with<P>(cb: &Cobracket, perturb: P) -> StructureConstantReport
where
    P: Fn(ConstantForm, &[usize], &mut Vec<Scalar>) + Sync,
{
    let consts = Constants::new(cb);
    let alg = cb.algebra();
    let (n, d) = (alg.arity(), alg.dim());
    let forms = ConstantForm::ALL
        .iter()
        .map(|&form| {
            let tuples = form.tuples(d, n);
            let literal = |t: &[usize]| {
                let mut r = consts.residual(form, t);
                perturb(form, t, &mut r);
                r
            };
            let tensor = |t: &[usize]| tensor_residual(cb, form, t);
            let lit_v = verdicts(&tuples, literal);
            let ten_v = verdicts(&tuples, tensor);
            let discrepancy = lit_v
                .iter()
                .zip(&ten_v)
                .position(|(a, b)| a != b)
                .map(|p| Counterexample {
                    layout: form.layout().into(),
                    tuple: tuples[p].iter().map(|v| v + 1).collect(),
                    residual: literal(&tuples[p]),
                });
            FormComparison {
                form,
                constants: scan(&format!("{}-constants", form.name()), form.layout(), &tuples, literal),
                tensor: scan(form.name(), form.layout(), &tuples, tensor),
                discrepancy,
            }
        })
        .collect();
    StructureConstantReport { forms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialgebra::{check_bialgebra, cocycle_verdicts, random_cobracket};
    use crate::catalog;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ad1(alg: &NLieAlgebra, x: usize) -> Matrix {
        alg.ad_basis(&[x])
    }

    #[test]
    fn lie_case_grid() {
        let alg = catalog::sl2();
        let (x1, x2) = (0, 2);
        let a = build_operad_matrix(&alg, &[x1, x2]).unwrap();
        assert_eq!(a.entry(0, 0).unwrap(), &ad1(&alg, x2).neg());
        assert_eq!(a.entry(0, 1).unwrap(), &ad1(&alg, x1));
        assert_eq!(a.entry(1, 0).unwrap(), &ad1(&alg, x2).neg());
        assert_eq!(a.entry(1, 1).unwrap(), &ad1(&alg, x1));
        // the printed column-1 grid
        let c1 = a.column_part(0);
        assert!(c1.entry(0, 1).is_none() && c1.entry(1, 1).is_none());
        assert_eq!(c1.entry(1, 0).unwrap(), &ad1(&alg, x2).neg());
        assert!(matches!(
            build_operad_matrix(&alg, &[0]),
            Err(Error::ArgumentCount { .. })
        ));
    }

    #[test]
    fn three_lie_grid() {
        let alg = catalog::simple3();
        let x = [0, 1, 3];
        let a = build_operad_matrix(&alg, &x).unwrap();
        for i in 0..3 {
            assert_eq!(a.entry(i, 0).unwrap(), &alg.ad_basis(&[1, 3]));
            assert_eq!(a.entry(i, 1).unwrap(), &alg.ad_basis(&[0, 3]).neg());
            assert_eq!(a.entry(i, 2).unwrap(), &alg.ad_basis(&[0, 1]));
        }
        let abel = NLieAlgebra::abelian(3, 4).unwrap();
        let z = build_operad_matrix(&abel, &x).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| z.entry(i, j).unwrap().is_zero())));
    }

    #[test]
    fn rows_and_columns_decompose() {
        for alg in [catalog::sl2(), catalog::simple3(), catalog::a4()] {
            let n = alg.arity();
            for x in crate::index::all_tuples(alg.dim(), n) {
                let a = build_operad_matrix(&alg, &x).unwrap();
                let rows: Vec<_> = (0..n).map(|i| a.row_part(i)).collect();
                let cols: Vec<_> = (0..n).map(|j| a.column_part(j)).collect();
                assert!(OperadMatrix::sum(&rows).unwrap().same_operators(&a));
                assert!(OperadMatrix::sum(&cols).unwrap().same_operators(&a));
            }
        }
    }

    #[test]
    fn operad_form_agrees_with_direct_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (_, alg) in catalog::valid_algebras() {
            for _ in 0..5 {
                let cb = random_cobracket(&alg, 0.3, &mut rng);
                assert_eq!(cocycle_operad_verdicts(&cb), cocycle_verdicts(&cb));
            }
        }
    }

    #[test]
    fn compatibility_term_count() {
        assert_eq!(compatibility_terms(3).len(), 18);
        assert_eq!(compatibility_terms(2), vec![(1, 2, 1), (1, 2, 2), (2, 1, 1), (2, 1, 2)]);
    }

    #[test]
    fn row_and_column_conditions() {
        let abel = catalog::cobracket("wedge-abelian").unwrap();
        for p in 1..=3 {
            assert!(check_Ri_operad(&abel, p).unwrap().passed);
            assert!(check_Cj_operad(&abel, p).unwrap().passed);
        }
        assert!(matches!(check_Ri_operad(&abel, 0), Err(Error::OutOfRange { .. })));
        assert!(matches!(check_Cj_operad(&abel, 4), Err(Error::OutOfRange { .. })));
        let z = Cobracket::zero(catalog::sl2());
        assert!(check_Ri_operad(&z, 1).unwrap().passed && check_Cj_operad(&z, 2).unwrap().passed);
    }

    #[test]
    fn local_cocycle_components() {
        let alg = catalog::a4();
        let zero = || Cobracket::zero(alg.clone());
        let parts = [zero(), zero(), zero()];
        assert!(check_local_cocycle(&alg, &parts).unwrap().passed);
        assert!(check_compatibility_sum(&alg, &parts).unwrap().passed);
        assert!(matches!(
            check_local_cocycle(&alg, &parts[..2]),
            Err(Error::ArgumentCount { .. })
        ));

        let bad = [catalog::cobracket("wedge-A4-e1").unwrap(), zero(), zero()];
        let r = check_local_cocycle(&alg, &bad).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failing_tuple(), Some(&[1, 2, 3][..]));
    }

    #[test]
    fn decomposition_implies_bialgebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut hits = 0;
        for (_, alg) in catalog::valid_algebras() {
            let n = alg.arity();
            for _ in 0..20 {
                let parts: Vec<Cobracket> = (0..n).map(|_| random_cobracket(&alg, 0.15, &mut rng)).collect();
                let local = check_local_cocycle(&alg, &parts).unwrap();
                let compat = check_compatibility_sum(&alg, &parts).unwrap();
                if local.passed && compat.passed {
                    hits += 1;
                    assert!(check_bialgebra(&Cobracket::sum(&parts).unwrap()).passed());
                }
            }
        }
        assert!(hits > 0);
    }

    #[test]
    fn centroid_and_local_operad() {
        let abel = catalog::cobracket("wedge-abelian").unwrap();
        assert!(check_centroid(&abel).passed);
        assert!(check_local_operad_map(&abel).passed);
        assert!(check_double_construction(&abel).passed());
        let z = Cobracket::zero(catalog::a4());
        assert!(check_double_construction(&z).passed());

        let e1 = catalog::cobracket("wedge-A4-e1").unwrap();
        let r = check_double_construction(&e1);
        assert!(!r.passed());
        assert!(!r.extras.iter().find(|c| c.name == "centroid").unwrap().passed);
    }

    #[test]
    fn constants_trivial_cases() {
        for name in ["wedge-abelian", "zero:A4", "zero:sl2"] {
            let r = check_structure_constants(&catalog::cobracket(name).unwrap());
            for f in &r.forms {
                assert!(f.constants.passed && f.tensor.passed, "{name} {:?}", f.form);
            }
            assert!(!r.flagged());
        }
    }

    #[test]
    fn perturbed_formula_is_flagged() {
        let cb = Cobracket::zero(catalog::a4());
        let r = check_structure_constants_with(&cb, |form, t, res| {
            if form == ConstantForm::SlotPair && t == [1, 2, 0, 1] {
                res[0] += int(1);
            }
        });
        let (form, cx) = r.first_discrepancy().unwrap();
        assert_eq!(form, ConstantForm::SlotPair);
        assert_eq!(cx.tuple, vec![2, 3, 1, 2]);
        assert!(!r.agreement().passed);
    }
}
