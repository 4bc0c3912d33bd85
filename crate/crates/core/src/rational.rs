//! Exact rationals over arbitrary-precision integers.

use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field used throughout the exact modules.
pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn from_r64(r: &Ratio<i64>) -> Q {
    q(*r.numer(), *r.denom())
}

/// Parses `"p/q"` or `"p"`. A zero denominator is rejected.
pub fn parse(s: &str) -> Result<Q> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::ParseRational(s.to_string()));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| Error::ParseRational(s.to_string()))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| Error::ParseRational(s.to_string()))?;
        if d.is_zero() {
            return Err(Error::ParseRational(s.to_string()));
        }
        Ok(Q::new(n, d))
    } else {
        let n = BigInt::from_str(t).map_err(|_| Error::ParseRational(s.to_string()))?;
        Ok(Q::from_integer(n))
    }
}

/// Canonical `"p/q"` rendering (`"p"` when the denominator is one).
pub fn render(x: &Q) -> String {
    x.to_string()
}

pub fn to_f64(x: &Q) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Very large numerator/denominator: shift both down before dividing.
    let n = x.numer();
    let d = x.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(1000);
    let ns = n.abs() >> shift;
    let ds = d >> shift;
    let v = ns.to_f64().unwrap_or(f64::INFINITY) / ds.to_f64().unwrap_or(f64::INFINITY);
    if n.is_negative() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3/7").unwrap(), q(3, 7));
        assert_eq!(parse("-4").unwrap(), qi(-4));
        assert_eq!(parse(" 6/4 ").unwrap(), q(3, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
        assert!(parse("0.5").is_err());
    }

    #[test]
    fn render_is_reduced() {
        assert_eq!(render(&q(6, 4)), "3/2");
        assert_eq!(render(&q(4, 2)), "2");
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&q(1, 4)), 0.25);
        let big = Q::new(BigInt::from(3) << 2000u32, BigInt::from(1) << 2000u32);
        assert!((to_f64(&big) - 3.0).abs() < 1e-12);
    }
}
