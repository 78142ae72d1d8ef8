//! Exact scalars, univariate polynomials, truncated power series and a
//! quadratic extension of Q.

mod poly;
mod quad;
mod series;

pub use poly::{poly_gcd, rational_roots, squarefree_part, UniPoly};
pub use quad::{QuadExt, Sqrt2};
pub use series::{series_identity_check, TruncSeries};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, panicking on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k as i64))
}

pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int((n - i) as i64) / int((i + 1) as i64);
    }
    acc
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational: '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

pub fn parse_vec(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

/// Serde adapter storing a rational as its `p/q` string.
pub mod rational_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{fmt_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let q = Rational::new(BigInt::from(4), BigInt::from(-6));
        assert_eq!(fmt_rational(&q), "-2/3");
        assert_eq!(fmt_rational(&int(0)), "0");
        assert_eq!(*Rational::zero().denom(), BigInt::from(1));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(2, 5), int(0));
        assert_eq!(factorial(5), int(120));
    }

    proptest::proptest! {
        #[test]
        fn field_axioms(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20, e in -50i64..50, f in 1i64..20) {
            let (x, y, z) = (frac(a, b), frac(c, d), frac(e, f));
            proptest::prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            proptest::prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            proptest::prop_assert_eq!(&x * &y, &y * &x);
            proptest::prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            proptest::prop_assert_eq!(parse_rational(&fmt_rational(&x)).unwrap(), x);
        }
    }
}
