//! Exact rational scalars and their canonical `"p/q"` string form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_u128(n: u128) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `(-1)^e` as a scalar.
pub fn sign_pow(e: usize) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// Canonical string: always `"p/q"` with `q > 0` and `gcd(p, q) = 1`,
/// including integers (`"3/1"`) and zero (`"0/1"`).
pub fn to_fraction_string(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_fraction(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(p, q))
}

/// Returns the integer value of `x`, or `None` if `x` is not integral.
pub fn as_integer(x: &Scalar) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn is_positive_integer(x: &Scalar) -> bool {
    x.is_integer() && x.is_positive()
}

/// Serializes a big integer as its decimal string.
pub fn serialize_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
