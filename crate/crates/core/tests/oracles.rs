//! Library verdicts against the brute-force oracles in `common`.

mod common;

use common::*;
use nlie::bialgebra::{check_bialgebra, check_cocycle, dual_bracket, random_cobracket, Cobracket};
use nlie::catalog;
use nlie::cochain::{coboundary, Cochain};
use nlie::double::{build_double, hyperbolic_form};
use nlie::rep::{adjoint_rep, coadjoint_rep, tensor_power_rep};
use nlie::NLieAlgebra;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rows(m: &nlie::linalg::Matrix) -> Vec<Vec<Q>> {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

#[test]
fn catalog_axioms_match_brute_force() {
    for name in catalog::algebra_names() {
        let alg = catalog::algebra(name).unwrap();
        let oracle = Table::of(&alg).fji_failure();
        let lib = alg.check_filippov_jacobi();
        assert_eq!(lib.passed, oracle.is_none(), "{name}");
    }
}

#[test]
fn a4_values() {
    let t = Table::of(&catalog::a4());
    assert_eq!(t.bracket(&[e(4, 0), e(4, 1), e(4, 2)]), e(4, 3));
    // ad(e1, e2) only sends e3 to e4
    let ad = t.ad(&[0, 1]);
    for r in 0..4 {
        for c in 0..4 {
            let want = if (r, c) == (3, 2) { q(1) } else { q(0) };
            assert_eq!(ad[r][c], want);
        }
    }
    assert_eq!(rows(&catalog::a4().ad_basis(&[0, 1])), ad);
}

#[test]
fn sl2_values() {
    let alg = catalog::sl2();
    let t = Table::of(&alg);
    assert!(t.fji_failure().is_none());
    // basis (e, f, h)
    assert_eq!(
        t.ad(&[2]),
        vec![vec![q(2), q(0), q(0)], vec![q(0), q(-2), q(0)], vec![q(0); 3]]
    );
    assert_eq!(rows(&alg.ad_basis(&[2])), t.ad(&[2]));
    let co = coadjoint_rep(&alg);
    assert_eq!(rows(&co.matrix(2)), t.coadjoint(&[2]));
}

#[test]
fn broken_a4_counterexample_is_real() {
    let alg = catalog::a4_broken();
    let (x, y) = Table::of(&alg).fji_failure().expect("planted violation");
    let cx = alg.check_filippov_jacobi().counterexample.unwrap();
    let oracle: Vec<usize> = x.iter().chain(&y).map(|v| v + 1).collect();
    assert_eq!(cx.tuple, oracle);
}

#[test]
fn representations_match_semidirect_products() {
    for (name, alg) in catalog::valid_algebras() {
        let t = Table::of(&alg);
        let co = coadjoint_rep(&alg);
        let semi = t.semidirect(alg.dim(), |x| t.coadjoint(x));
        assert_eq!(
            co.check_representation().passed,
            semi.fji_failure().is_none(),
            "{name} coadjoint"
        );
        assert!(co.check_representation().passed, "{name}");

        let ad = adjoint_rep(&alg).unwrap();
        let semi = t.semidirect(alg.dim(), |x| t.ad(x));
        assert_eq!(
            ad.check_representation().passed,
            semi.fji_failure().is_none(),
            "{name} adjoint"
        );
    }
    let broken = catalog::a4_broken();
    let t = Table::of(&broken);
    assert!(t.semidirect(4, |x| t.ad(x)).fji_failure().is_some());
    assert!(!adjoint_rep(&broken).unwrap_err().value.check_representation().passed);
}

#[test]
fn tensor_power_matches_semidirect_on_small_cases() {
    for (alg, p) in [
        (catalog::sl2(), 2),
        (catalog::so3(), 2),
        (catalog::a4(), 2),
        (catalog::simple3(), 2),
    ] {
        let t = Table::of(&alg);
        let rep = tensor_power_rep(&alg, p).unwrap();
        let semi = t.semidirect(alg.dim().pow(p as u32), |x| t.tensor_ad(x, p));
        assert_eq!(rep.check_representation().passed, semi.fji_failure().is_none());
    }
}

#[test]
fn tensor_power_example() {
    // ad(e1, e2) on e3 ⊗ e3 gives e4 ⊗ e3 + e3 ⊗ e4
    let alg = catalog::a4();
    let rep = tensor_power_rep(&alg, 2).unwrap();
    let v = e(16, flat(&[2, 2], 4));
    let got = rep.act_basis(&[0, 1], &v);
    let mut want = vec![q(0); 16];
    want[flat(&[3, 2], 4)] = q(1);
    want[flat(&[2, 3], 4)] = q(1);
    assert_eq!(got, want);
    let oracle = Table::of(&alg).tensor_ad(&[0, 1], 2);
    let col: Vec<Q> = oracle.iter().map(|r| r[flat(&[2, 2], 4)].clone()).collect();
    assert_eq!(col, want);
}

fn candidates() -> Vec<Cobracket> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in ["A4", "sl2", "so3", "simple3", "abelian:n3:d4", "abelian:n2:d3"] {
        let alg = catalog::algebra(name).unwrap();
        out.push(Cobracket::zero(alg.clone()));
        for density in [0.1, 0.5] {
            out.push(random_cobracket(&alg, density, &mut rng));
        }
    }
    for name in catalog::cobracket_names() {
        out.push(catalog::cobracket(name).unwrap());
    }
    out
}

#[test]
fn cocycle_condition_matches_brute_force() {
    for cb in candidates() {
        let t = Table::of(cb.algebra());
        assert_eq!(check_cocycle(&cb).passed, cocycle_holds(&t, &cb));
    }
}

#[test]
fn one_cochain_coboundary_is_the_cocycle_condition() {
    for cb in candidates() {
        let alg = cb.algebra();
        let rep = tensor_power_rep(alg, alg.arity()).unwrap();
        let u = Cochain::from_fn(&rep, 1, |_, z| image(&cb, z)).unwrap();
        assert_eq!(coboundary(&rep, &u).unwrap().is_zero(), check_cocycle(&cb).passed);
    }
}

#[test]
fn dual_bracket_matches_brute_force() {
    for cb in candidates() {
        let lib = dual_bracket(&cb).unwrap();
        let oracle = dual_table(&cb);
        for s in subsets(oracle.d, oracle.n) {
            assert_eq!(lib.bracket_basis(&s), &oracle.basis(&s)[..]);
        }
        let report = check_bialgebra(&cb);
        let expect = oracle.fji_failure().is_none() && cocycle_holds(&Table::of(cb.algebra()), &cb);
        assert_eq!(report.passed(), expect);
    }
}

#[test]
fn wedge_dual_is_a4_on_the_dual_space() {
    let cb = catalog::cobracket("wedge-abelian").unwrap();
    let t = dual_table(&cb);
    assert_eq!(t.basis(&[0, 1, 2]), e(4, 3));
    for s in subsets(4, 3).into_iter().skip(1) {
        assert!(t.basis(&s).iter().all(|v| v.is_zero()));
    }
}

fn double_is_metric_n_lie(cb: &Cobracket) -> bool {
    let d = build_double(cb).unwrap();
    let t = Table::of(d.algebra());
    let form = hyperbolic_form(cb.algebra().dim());
    t.fji_failure().is_none() && form_invariant(&t, &rows(&form))
}

#[test]
fn doubles_pass_brute_force() {
    assert!(double_is_metric_n_lie(&Cobracket::zero(catalog::sl2())));
    let wedge = catalog::cobracket("wedge-abelian").unwrap();
    assert!(double_is_metric_n_lie(&wedge));
    // [f1, f2, f3] = f4 in the double (basis e1..e4, f1..f4)
    let d = build_double(&wedge).unwrap();
    assert_eq!(d.algebra().bracket_basis(&[4, 5, 6]), &e(8, 7)[..]);
}

#[test]
fn transported_algebras_stay_n_lie() {
    for (name, alg) in catalog::valid_algebras() {
        let moved: NLieAlgebra = transported(&alg, &[1, -2, 3]);
        assert!(moved.check_filippov_jacobi().passed, "{name}");
        assert!(Table::of(&moved).fji_failure().is_none(), "{name}");
    }
}
