//! Exact rational scalars and the combinatorial helpers used by divided powers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The ground field.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_zero(x: &Q) -> bool {
    x.is_zero()
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Product of `C(a_i + b_i, a_i)` over all coordinates.
pub fn multinomial_merge(a: &[u32], b: &[u32]) -> BigInt {
    a.iter()
        .zip(b)
        .fold(BigInt::one(), |acc, (&x, &y)| acc * binomial(x + y, x))
}

/// Parses `p`, `-p`, `p/q` with integer `p`, `q`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Renders a coefficient in front of a monomial: `""` for 1, `"-"` for -1, else `"c*"`.
pub fn coef_prefix(c: &Q) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".to_string()
    } else {
        format!("{c}*")
    }
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
