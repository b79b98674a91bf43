//! Cobrackets `γ: g → ⊗ⁿg`, the dual bracket on `g*`, the bialgebra
//! conditions and the dual bialgebra.
//!
//! `γ(e_i)` is stored as a rank-`n` tensor whose entry at `(s₁, …, s_n)` is
//! the coefficient of `e_{s₁} ⊗ ⋯ ⊗ e_{s_n}`. The bracket on `g*` is its
//! transpose: the coefficient of `f_x` in `[f_{s₁}, …, f_{s_n}]` is the
//! `(s₁, …, s_n)` entry of `γ(e_x)`.

use num_traits::Zero;
use rand::Rng;

use crate::algebra::NLieAlgebra;
use crate::error::{Error, Result};
use crate::index::{all_tuples, combinations, Permutation};
use crate::linalg::Matrix;
use crate::report::{product, scan, verdicts, CheckReport, Counterexample};
use crate::scalar::{dot, int, sign_pow, Scalar, Vector};
use crate::tensor::DenseTensor;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cobracket {
    algebra: NLieAlgebra,
    images: Vec<DenseTensor>,
}

impl Cobracket {
    /// Requires every image to be fully antisymmetric.
    pub fn new(algebra: NLieAlgebra, images: Vec<DenseTensor>) -> Result<Self> {
        let cb = Self::raw(algebra, images)?;
        match cb.antisymmetry_error() {
            Some(e) => Err(e),
            None => Ok(cb),
        }
    }

    /// Accepts arbitrary rank-`n` images (for operad-condition experiments).
    pub fn raw(algebra: NLieAlgebra, images: Vec<DenseTensor>) -> Result<Self> {
        let (n, d) = (algebra.arity(), algebra.dim());
        if images.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: images.len(),
            });
        }
        for t in &images {
            if t.rank() != n {
                return Err(Error::ArgumentCount {
                    expected: n,
                    found: t.rank(),
                });
            }
            if t.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: t.dim(),
                });
            }
        }
        Ok(Self { algebra, images })
    }

    pub fn zero(algebra: NLieAlgebra) -> Self {
        let (n, d) = (algebra.arity(), algebra.dim());
        Self {
            images: vec![DenseTensor::zeros(n, d); d],
            algebra,
        }
    }

    /// `γ(e_i) = Σ c · e_{s₁} ∧ ⋯ ∧ e_{s_n}` from `(i, s, c)` with `s`
    /// increasing (0-based).
    pub fn from_wedges<I>(algebra: NLieAlgebra, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Vec<usize>, Scalar)>,
    {
        let mut cb = Self::zero(algebra);
        let (n, d) = (cb.algebra.arity(), cb.algebra.dim());
        for (i, s, c) in entries {
            if i >= d {
                return Err(Error::OutOfRange {
                    what: "cobracket source",
                    value: i + 1,
                    max: d,
                });
            }
            if s.len() != n || s.iter().any(|&x| x >= d) || !s.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::NonCanonicalIndex(s.iter().map(|x| x + 1).collect()));
            }
            for sigma in Permutation::all(n) {
                let idx: Vec<usize> = (0..n).map(|p| s[sigma.apply(p)]).collect();
                cb.images[i].add_at(&idx, &(int(sigma.sign_i64()) * &c));
            }
        }
        Ok(cb)
    }

    pub fn algebra(&self) -> &NLieAlgebra {
        &self.algebra
    }

    pub fn images(&self) -> &[DenseTensor] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &DenseTensor {
        &self.images[i]
    }

    /// `C_i^{s₁…s_n}`.
    pub fn coefficient(&self, i: usize, s: &[usize]) -> &Scalar {
        self.images[i].get(s)
    }

    /// `γ(v)` for a coordinate vector.
    pub fn apply(&self, v: &[Scalar]) -> DenseTensor {
        let mut out = DenseTensor::zeros(self.algebra.arity(), self.algebra.dim());
        for (i, c) in v.iter().enumerate() {
            out.add_assign_scaled(c, &self.images[i]);
        }
        out
    }

    /// Componentwise sum (same algebra).
    pub fn sum(parts: &[Cobracket]) -> Result<Cobracket> {
        let first = parts.first().ok_or(Error::ArgumentCount { expected: 1, found: 0 })?;
        let mut out = Cobracket::zero(first.algebra.clone());
        for p in parts {
            if p.algebra != first.algebra {
                return Err(Error::Precondition("a family over one algebra".into()));
            }
            for (acc, t) in out.images.iter_mut().zip(&p.images) {
                acc.add_assign_scaled(&int(1), t);
            }
        }
        Ok(out)
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetry_error().is_none()
    }

    fn antisymmetry_error(&self) -> Option<Error> {
        self.images.iter().enumerate().find_map(|(i, t)| {
            t.antisymmetry_violation().map(|((a, b), at)| Error::NotAntisymmetric {
                basis: i + 1,
                slots: (a + 1, b + 1),
                at: at.iter().map(|x| x + 1).collect(),
            })
        })
    }

    /// Antisymmetry of every image as a check: the residual at `(i | s)` is
    /// `γ(e_i)_s + γ(e_i)_{s with slots a, b swapped}` over all slot pairs.
    pub fn check_antisymmetry(&self) -> CheckReport {
        let (n, d) = (self.algebra.arity(), self.algebra.dim());
        let sources: Vec<Vec<usize>> = (0..d).map(|i| vec![i]).collect();
        let tuples = product(&[sources, all_tuples(d, n)]);
        scan("cobracket-antisymmetry", "i | s", &tuples, |t| {
            let (i, s) = (t[0], &t[1..]);
            let mut res = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    let mut sw = s.to_vec();
                    sw.swap(a, b);
                    res.push(self.images[i].get(s) + self.images[i].get(&sw));
                }
            }
            res
        })
    }
}

/// The bracket on `g*` in the dual basis.
pub fn dual_bracket(cb: &Cobracket) -> Result<NLieAlgebra> {
    if let Some(e) = cb.antisymmetry_error() {
        return Err(e);
    }
    let (n, d) = (cb.algebra.arity(), cb.algebra.dim());
    let entries = combinations(d, n).into_iter().filter_map(|s| {
        let v: Vector = (0..d).map(|x| cb.coefficient(x, &s).clone()).collect();
        (!v.iter().all(Zero::is_zero)).then_some((s, v))
    });
    NLieAlgebra::from_canonical(n, d, entries)
}

/// Condition (i): antisymmetric images and a Filippov–Jacobi bracket on `g*`.
pub fn check_dual_condition(cb: &Cobracket) -> CheckReport {
    let anti = cb.check_antisymmetry();
    if !anti.passed {
        return CheckReport::all("dual-bracket", &[anti]);
    }
    let dual = dual_bracket(cb).expect("antisymmetry checked");
    let mut fji = dual.check_filippov_jacobi();
    fji.name = "dual-filippov-jacobi".into();
    CheckReport::all("dual-bracket", &[anti, fji])
}

/// `ad^{(n)}_{x̂ᵢ}` applied to a tensor: the `ad` matrix in every slot.
pub(crate) fn ad_every_slot(t: &DenseTensor, ad: &Matrix) -> DenseTensor {
    let mut out = DenseTensor::zeros(t.rank(), t.dim());
    if ad.is_zero() {
        return out;
    }
    for slot in 0..t.rank() {
        out.add_assign_scaled(&int(1), &t.apply_to_slot(slot, ad));
    }
    out
}

/// `γ([x₁…x_n]) − Σᵢ (−1)^{n−i} ad^{(n)}_{x̂ᵢ} γ(xᵢ)` on basis vectors.
pub fn cocycle_residual(cb: &Cobracket, xs: &[usize]) -> DenseTensor {
    let alg = &cb.algebra;
    let n = alg.arity();
    let mut res = cb.apply(alg.bracket_basis(xs));
    for i in 0..n {
        let term = ad_every_slot(&cb.images[xs[i]], &alg.ad_hat(xs, i));
        res.add_assign_scaled(&-sign_pow(n - 1 - i), &term);
    }
    res
}

/// Condition (ii): the 1-cocycle identity over increasing `x`.
pub fn check_cocycle(cb: &Cobracket) -> CheckReport {
    let alg = &cb.algebra;
    let tuples = combinations(alg.dim(), alg.arity());
    scan("one-cocycle", "x", &tuples, |x| cocycle_residual(cb, x).into_entries())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BialgebraReport {
    pub condition_i: CheckReport,
    pub condition_ii: CheckReport,
    /// Informational sub-reports.
    pub extras: Vec<CheckReport>,
}

impl BialgebraReport {
    pub fn passed(&self) -> bool {
        self.condition_i.passed && self.condition_ii.passed
    }

    pub fn all_reports(&self) -> Vec<&CheckReport> {
        let mut v = vec![&self.condition_i, &self.condition_ii];
        v.extend(self.extras.iter());
        v
    }
}

pub fn check_bialgebra(cb: &Cobracket) -> BialgebraReport {
    let condition_ii = check_cocycle(cb);
    let operad = crate::operad::check_cocycle_via_operad(cb);
    let agreement = if operad.passed == condition_ii.passed && operad.failing_tuple() == condition_ii.failing_tuple() {
        CheckReport::pass("operad-agreement", operad.checks_run)
    } else {
        CheckReport::fail_note("operad-agreement", "operad form and direct form disagree")
    };
    BialgebraReport {
        condition_i: check_dual_condition(cb),
        condition_ii,
        extras: vec![agreement],
    }
}

/// `ad*_X ξ = −ad(X)ᵀ ξ` for a basis tuple `X`.
fn coadjoint_apply(alg: &NLieAlgebra, xs: &[usize], xi: &[Scalar]) -> Vector {
    let ad = alg.ad_basis(xs);
    ad.transpose().mul_vec(xi).into_iter().map(|c| -c).collect()
}

/// The three pointwise forms of the 1-cocycle identity at `x` (basis of
/// `g`) and `s` (dual basis of `g*`): the direct entry and the two pairing
/// reformulations. Each is a single scalar residual.
pub fn pairing_residuals(cb: &Cobracket, dual: &NLieAlgebra, xs: &[usize], s: &[usize]) -> [Scalar; 3] {
    let alg = &cb.algebra;
    let (n, d) = (alg.arity(), alg.dim());
    let direct = cocycle_residual(cb, xs).get(s).clone();
    let lhs = dot(dual.bracket_basis(s), alg.bracket_basis(xs));
    let mut rhs1 = Scalar::zero();
    let mut rhs2 = Scalar::zero();
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&q| q != i).map(|q| s[q]).collect();
        let f_i = crate::scalar::unit(d, s[i]);
        // ãd*_{ξ̂ᵢ} = −(ad_{g*}(ξ̂ᵢ))ᵀ
        let ad_dual = dual.ad_basis(&others);
        for j in 0..n {
            let xhat: Vec<usize> = (0..n).filter(|&q| q != j).map(|q| xs[q]).collect();
            let eta = coadjoint_apply(alg, &xhat, &f_i);
            let mut args = others.clone();
            args.push(0);
            let br = dual.bracket_with(&args, n - 1, &eta);
            rhs1 += sign_pow(i + j + 1) * &br[xs[j]];
            let tilde: Vector = ad_dual.row(xs[j]).iter().map(|c| -c).collect();
            rhs2 += sign_pow(i + j) * dot(&eta, &tilde);
        }
    }
    [direct, lhs.clone() - rhs1, lhs - rhs2]
}

/// Both pairing reformulations against the direct identity over increasing
/// `x` and increasing dual-basis `s`; passes iff the three verdicts agree at
/// every tuple. The residual of a disagreement lists all three.
pub fn check_pairing_identity(cb: &Cobracket) -> CheckReport {
    let dual = match dual_bracket(cb) {
        Ok(a) => a,
        Err(e) => return CheckReport::fail_note("pairing-agreement", format!("condition (i): {e}")),
    };
    let (n, d) = (cb.algebra.arity(), cb.algebra.dim());
    let tuples = product(&[combinations(d, n), combinations(d, n)]);
    let name = "pairing-agreement";
    let res: Vec<[Scalar; 3]> = {
        use rayon::prelude::*;
        tuples
            .par_iter()
            .map(|t| pairing_residuals(cb, &dual, &t[..n], &t[n..]))
            .collect()
    };
    for (t, r) in tuples.iter().zip(&res) {
        let z: Vec<bool> = r.iter().map(Zero::is_zero).collect();
        if z[0] != z[1] || z[0] != z[2] {
            return CheckReport::fail(
                name,
                tuples.len(),
                Counterexample {
                    layout: "x | s".into(),
                    tuple: t.iter().map(|i| i + 1).collect(),
                    residual: r.to_vec(),
                },
            );
        }
    }
    CheckReport::pass(name, tuples.len())
}

/// The three pairing-form verdicts as separate checks (direct, first and
/// second reformulation).
pub fn pairing_checks(cb: &Cobracket) -> Result<[CheckReport; 3]> {
    let dual = dual_bracket(cb)?;
    let (n, d) = (cb.algebra.arity(), cb.algebra.dim());
    let tuples = product(&[combinations(d, n), combinations(d, n)]);
    let names = ["cocycle-entry", "cocycle-pairing-bracket", "cocycle-pairing-coadjoint"];
    Ok(std::array::from_fn(|k| {
        scan(names[k], "x | s", &tuples, |t| {
            vec![pairing_residuals(cb, &dual, &t[..n], &t[n..])[k].clone()]
        })
    }))
}

/// Per-tuple verdict profile of the direct identity, for agreement tests.
pub fn cocycle_verdicts(cb: &Cobracket) -> Vec<bool> {
    let alg = &cb.algebra;
    let tuples = combinations(alg.dim(), alg.arity());
    verdicts(&tuples, |x| cocycle_residual(cb, x).into_entries())
}

/// `(g*, ᵗμ)`: the dual algebra with cobracket `ᵗμ(f_k)` whose entry at
/// `(a₁, …, a_n)` is `T^k_{a₁…a_n}`.
pub fn dual_bialgebra(cb: &Cobracket) -> Result<Cobracket> {
    let report = check_bialgebra(cb);
    if !report.passed() {
        return Err(Error::Precondition("an n-Lie bialgebra".into()));
    }
    let dual = dual_bracket(cb)?;
    let alg = &cb.algebra;
    let (n, d) = (alg.arity(), alg.dim());
    let mut images = vec![DenseTensor::zeros(n, d); d];
    for a in all_tuples(d, n) {
        for (k, c) in alg.bracket_basis(&a).iter().enumerate() {
            if !c.is_zero() {
                images[k].set(&a, c.clone());
            }
        }
    }
    Cobracket::new(dual, images)
}

/// Antisymmetric candidate with integer wedge coefficients in `-2..=2`;
/// each coefficient is zero with probability `1 − density`.
pub fn random_cobracket<R: Rng>(alg: &NLieAlgebra, density: f64, rng: &mut R) -> Cobracket {
    let (n, d) = (alg.arity(), alg.dim());
    let mut entries = Vec::new();
    for i in 0..d {
        for s in combinations(d, n) {
            if rng.gen_bool(density) {
                let c: i64 = rng.gen_range(-2..=2);
                if c != 0 {
                    entries.push((i, s, int(c)));
                }
            }
        }
    }
    Cobracket::from_wedges(alg.clone(), entries).expect("generated indices are canonical")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::{one, unit};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn wedge_dual_is_a4() {
        let cb = catalog::cobracket("wedge-abelian").unwrap();
        assert_eq!(dual_bracket(&cb).unwrap(), catalog::a4());
        let r = check_bialgebra(&cb);
        assert!(r.passed(), "{r:?}");
        assert!(check_pairing_identity(&cb).passed);
    }

    #[test]
    fn zero_cobracket_gives_abelian_dual() {
        let cb = Cobracket::zero(catalog::sl2());
        assert!(dual_bracket(&cb).unwrap().is_abelian());
        assert!(check_bialgebra(&cb).passed());
    }

    #[test]
    fn plain_tensor_image_is_rejected() {
        let mut t = DenseTensor::zeros(3, 4);
        t.set(&[0, 1, 2], one());
        let mut images = vec![DenseTensor::zeros(3, 4); 4];
        images[3] = t;
        let raw = Cobracket::raw(NLieAlgebra::abelian(3, 4).unwrap(), images.clone()).unwrap();
        let err = dual_bracket(&raw).unwrap_err();
        assert!(matches!(err, Error::NotAntisymmetric { basis: 4, .. }), "{err}");
        assert!(Cobracket::new(NLieAlgebra::abelian(3, 4).unwrap(), images).is_err());
        assert!(!raw.check_antisymmetry().passed);
        assert!(!check_bialgebra(&raw).passed());
    }

    #[test]
    fn a4_wedge_at_e1_residual() {
        let cb = catalog::cobracket("wedge-A4-e1").unwrap();
        let r = check_bialgebra(&cb);
        // γ([e1,e2,e3]) = γ(e4) = 0 while ad_{e2,e3} acting on γ(e1) is not
        assert!(r.condition_i.passed);
        assert!(!r.condition_ii.passed);
        assert_eq!(r.condition_ii.failing_tuple(), Some(&[1, 2, 3][..]));
    }

    #[test]
    fn pairing_forms_match_the_entry_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (_, alg) in catalog::valid_algebras() {
            let cb = random_cobracket(&alg, 0.4, &mut rng);
            let dual = dual_bracket(&cb).unwrap();
            let n = alg.arity();
            for x in combinations(alg.dim(), n) {
                for s in combinations(alg.dim(), n) {
                    let [a, b, c] = pairing_residuals(&cb, &dual, &x, &s);
                    assert_eq!(a, b);
                    assert_eq!(a, c);
                }
            }
        }
    }

    #[test]
    fn dual_bialgebra_examples() {
        let cb = catalog::cobracket("wedge-abelian").unwrap();
        let dual = dual_bialgebra(&cb).unwrap();
        assert_eq!(dual.algebra(), &catalog::a4());
        assert!(check_bialgebra(&dual).passed());
        assert_eq!(dual_bialgebra(&dual).unwrap(), cb);

        let z = Cobracket::zero(catalog::sl2());
        let d = dual_bialgebra(&z).unwrap();
        assert!(d.algebra().is_abelian());
        assert_eq!(dual_bracket(&d).unwrap(), catalog::sl2());
        assert_eq!(dual_bialgebra(&d).unwrap(), z);

        let bad = catalog::cobracket("wedge-A4-e1").unwrap();
        assert!(matches!(dual_bialgebra(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn wedges_place_signs() {
        let cb = catalog::cobracket("wedge-abelian").unwrap();
        assert_eq!(cb.coefficient(3, &[1, 0, 2]), &int(-1));
        assert_eq!(cb.coefficient(3, &[2, 0, 1]), &int(1));
        assert_eq!(cb.apply(&unit(4, 3)), *cb.image(3));
    }
}
