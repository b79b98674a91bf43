//! Built-in algebras and cobrackets, looked up by name.
//!
//! Algebras: `abelian:n{n}:d{d}`, `A4`, `A4-broken`, `sl2`, `so3`,
//! `simple3`. Cobrackets: `wedge-abelian`, `wedge-A4-e4`, `wedge-A4-e1`,
//! `zero:<algebra>`.

use crate::algebra::NLieAlgebra;
use crate::bialgebra::Cobracket;
use crate::error::{Error, Result};
use crate::index::combinations;
use crate::scalar::{int, one, sign_pow, unit, zeros};

/// Names listed by [`algebra_names`] (one abelian representative).
const ALGEBRAS: &[&str] = &["abelian:n3:d4", "A4", "A4-broken", "sl2", "so3", "simple3"];
const COBRACKETS: &[&str] = &["wedge-abelian", "wedge-A4-e4", "wedge-A4-e1", "zero:sl2", "zero:A4"];

pub fn algebra_names() -> Vec<&'static str> {
    ALGEBRAS.to_vec()
}

pub fn cobracket_names() -> Vec<&'static str> {
    COBRACKETS.to_vec()
}

/// Algebras that satisfy the Filippov–Jacobi identity, for regression
/// sweeps.
pub fn valid_algebras() -> Vec<(String, NLieAlgebra)> {
    let mut out: Vec<(String, NLieAlgebra)> = ["A4", "sl2", "so3", "simple3"]
        .iter()
        .map(|n| (n.to_string(), algebra(n).expect("catalog name")))
        .collect();
    for (n, d) in [(2, 3), (3, 4), (4, 5)] {
        let name = format!("abelian:n{n}:d{d}");
        out.push((name.clone(), algebra(&name).expect("catalog name")));
    }
    out
}

/// Every catalog name, for error messages.
pub fn all_names() -> String {
    let mut all: Vec<&str> = ALGEBRAS.iter().chain(COBRACKETS).copied().collect();
    all.extend(["abelian:n<n>:d<d>", "zero:<algebra>"]);
    all.join(", ")
}

fn unknown(name: &str, list: &[&str]) -> Error {
    Error::UnknownName {
        name: name.to_string(),
        available: list.join(", ")
            + if list == ALGEBRAS {
                ", abelian:n<n>:d<d>"
            } else {
                ", zero:<algebra>"
            },
    }
}

fn parse_abelian(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("abelian:n")?;
    let (n, d) = rest.split_once(":d")?;
    Some((n.parse().ok()?, d.parse().ok()?))
}

/// `[e1, e2, e3] = e4`.
pub fn a4() -> NLieAlgebra {
    NLieAlgebra::from_canonical(3, 4, [(vec![0, 1, 2], unit(4, 3))]).expect("valid table")
}

/// Basis `(e, f, h)`: `[e, f] = h`, `[h, e] = 2e`, `[h, f] = −2f`.
pub fn sl2() -> NLieAlgebra {
    NLieAlgebra::from_canonical(
        2,
        3,
        [
            (vec![0, 1], unit(3, 2)),
            (vec![0, 2], vec![int(-2), int(0), int(0)]),
            (vec![1, 2], vec![int(0), int(2), int(0)]),
        ],
    )
    .expect("valid table")
}

/// `[e1, e2] = e3` and cyclic.
pub fn so3() -> NLieAlgebra {
    NLieAlgebra::from_canonical(
        2,
        3,
        [
            (vec![0, 1], unit(3, 2)),
            (vec![0, 2], vec![int(0), int(-1), int(0)]),
            (vec![1, 2], unit(3, 0)),
        ],
    )
    .expect("valid table")
}

/// The simple 3-Lie algebra on four generators: the bracket of the three
/// basis vectors other than `e_m` is `(−1)^m e_m` (0-based `m`).
pub fn simple3() -> NLieAlgebra {
    let entries = combinations(4, 3).into_iter().map(|c| {
        let m = (0..4).find(|i| !c.contains(i)).expect("one index missing");
        let mut v = zeros(4);
        v[m] = sign_pow(m);
        (c, v)
    });
    NLieAlgebra::from_canonical(3, 4, entries).expect("valid table")
}

/// `A4` plus `[e1, e2, e4] = e1`, which breaks the Filippov–Jacobi identity.
pub fn a4_broken() -> NLieAlgebra {
    NLieAlgebra::from_canonical(3, 4, [(vec![0, 1, 2], unit(4, 3)), (vec![0, 1, 3], unit(4, 0))]).expect("valid table")
}

pub fn algebra(name: &str) -> Result<NLieAlgebra> {
    if let Some((n, d)) = parse_abelian(name) {
        return NLieAlgebra::abelian(n, d);
    }
    Ok(match name {
        "A4" => a4(),
        "A4-broken" => a4_broken(),
        "sl2" => sl2(),
        "so3" => so3(),
        "simple3" => simple3(),
        _ => return Err(unknown(name, ALGEBRAS)),
    })
}

/// `γ(e_source) = e1 ∧ e2 ∧ e3` on a four-dimensional 3-Lie algebra.
fn wedge_123(alg: NLieAlgebra, source: usize) -> Cobracket {
    Cobracket::from_wedges(alg, [(source, vec![0, 1, 2], one())]).expect("canonical indices")
}

pub fn cobracket(name: &str) -> Result<Cobracket> {
    if let Some(alg) = name.strip_prefix("zero:") {
        return Ok(Cobracket::zero(algebra(alg)?));
    }
    Ok(match name {
        "wedge-abelian" => wedge_123(NLieAlgebra::abelian(3, 4)?, 3),
        "wedge-A4-e4" => wedge_123(a4(), 3),
        "wedge-A4-e1" => wedge_123(a4(), 0),
        _ => return Err(unknown(name, COBRACKETS)),
    })
}
