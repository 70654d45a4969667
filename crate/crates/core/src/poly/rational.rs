//! Exact rationals.
//!
//! `BigRational` already keeps itself reduced with a positive denominator, so
//! it is used directly; this module only adds parsing and conversions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact value of a finite double.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::NonFinite(format!("{x}")))
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back on a ratio of scaled integers when either side overflows.
        let n = q.numer();
        let d = q.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(1000);
        let ns: BigInt = n >> shift;
        let ds: BigInt = d >> shift;
        ns.to_f64().unwrap_or(f64::NAN) / ds.to_f64().unwrap_or(f64::NAN)
    })
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
pub fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        let Some(ai) = a.to_i64() else { break };
        let ai = BigInt::from(ai);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac_part = rest - a;
        if frac_part.abs() < 1e-300 {
            break;
        }
        rest = 1.0 / frac_part;
    }
    out
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"-0.75"` or
/// `"1.5e-3"` into an exact rational (decimals are read exactly, not via f64).
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, fracpart) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fracpart.is_empty() {
        return Err(Error::Parse(format!("no digits in {s:?}")));
    }
    if !whole.chars().chain(fracpart.chars()).all(|c| c.is_ascii_digit()) {
        return Err(Error::Parse(format!("not a number: {s:?}")));
    }
    let all = format!("{whole}{fracpart}");
    let mut n: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().unwrap() };
    if neg {
        n = -n;
    }
    let scale = exp - fracpart.len() as i64;
    let ten = BigInt::from(10);
    let q = if scale >= 0 {
        Rational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(n, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(q)
}

/// `sign(q)` as -1, 0 or 1.
pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub fn pow(q: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= q;
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convergents_of_simple_fractions() {
        assert!(convergents(0.75, 100).contains(&frac(3, 4)));
        assert!(convergents(-2.5, 100).contains(&frac(-5, 2)));
        assert_eq!(convergents(f64::NAN, 10), vec![]);
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!(parse("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse("-0.75").unwrap(), frac(-3, 4));
        assert_eq!(parse("0.1").unwrap(), frac(1, 10));
        assert_eq!(parse("1.5e-3").unwrap(), frac(3, 2000));
        assert_eq!(parse("2E2").unwrap(), int(200));
        assert_eq!(parse(" 7 ").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn float_round_trip() {
        let q = from_f64(0.1).unwrap();
        assert_ne!(q, frac(1, 10));
        assert_eq!(to_f64(&q), 0.1);
        assert!(from_f64(f64::NAN).is_err());
    }

    #[test]
    fn huge_ratio_still_converts() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let q = Rational::new(big.clone() * BigInt::from(3), big);
        assert!((to_f64(&q) - 3.0).abs() < 1e-12);
    }
}
