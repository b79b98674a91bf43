//! Exact rational scalars.
//!
//! Every coefficient in the library is a [`Scalar`], an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. There is no
//! floating point anywhere; equality is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseScalarError;

pub type Scalar = BigRational;

/// A coordinate vector over the base field.
pub type Vector = Vec<Scalar>;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `+1` for even, `-1` for odd exponents.
pub fn sign_pow(exp: usize) -> Scalar {
    if exp % 2 == 0 {
        one()
    } else {
        -one()
    }
}

pub fn zeros(len: usize) -> Vector {
    vec![Scalar::zero(); len]
}

/// The `i`-th standard basis vector (0-based) of length `len`.
pub fn unit(len: usize, i: usize) -> Vector {
    let mut v = zeros(len);
    v[i] = one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Scalar], coeff: &Scalar, v: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += coeff * b;
        }
    }
}

pub fn scale_vec(coeff: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| coeff * x).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Nonzero entries of a vector as `(index, coefficient)` pairs.
pub fn support(v: &[Scalar]) -> Vec<(usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn to_text(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Parses `"p"` or `"p/q"` (optional sign on `p`, `q` nonzero).
pub fn parse(text: &str) -> Result<Scalar, ParseScalarError> {
    let bad = || ParseScalarError(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if !den.is_positive() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let s = frac(6, -4);
        assert_eq!(s.numer(), &BigInt::from(-3));
        assert_eq!(s.denom(), &BigInt::from(2));
        assert_eq!(to_text(&s), "-3/2");
        assert_eq!(to_text(&int(7)), "7");
    }

    #[test]
    fn parse_round_trip() {
        for t in ["0", "-5", "3/7", "-12/5", "1234567890123456789012345678901/2"] {
            assert_eq!(to_text(&parse(t).unwrap()), t);
        }
        assert_eq!(parse("4/2").unwrap(), int(2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1.5").is_err());
        assert!(parse("1/-2").is_err());
    }

    #[test]
    fn field_axioms_exact() {
        let a = frac(1, 3);
        let b = frac(2, 7);
        assert_eq!(&a + &b, frac(13, 21));
        assert_eq!(&a * &b, frac(2, 21));
        assert_eq!((&a / &b) * &b, a);
        assert_eq!(sign_pow(3), int(-1));
    }
}
