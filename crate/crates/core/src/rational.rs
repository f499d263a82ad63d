//! Exact rational scalars used by all invariant computations.
//!
//! Every quantity that the theory pins down exactly (Euler characteristics,
//! conductance values, series coefficients, Schur coefficients) is carried as
//! a reduced `BigRational`: arbitrary-precision numerator, positive
//! denominator, gcd-reduced on construction.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rational = BigRational;

/// Rational from an integer pair. Panics on zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `p/q` with positive `q`, or just `p` when `q = 1`.
pub fn render_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation, for human-readable output only.
pub fn rational_to_f64(r: &Rational) -> f64 {
    let numer = r.numer();
    let denom = r.denom();
    // Exact for anything that fits in i128; falls back to string parsing
    // for larger values (display-only path, precision loss acceptable).
    match (i128::try_from(numer), i128::try_from(denom)) {
        (Ok(n), Ok(d)) => n as f64 / d as f64,
        _ => {
            let n: f64 = numer.to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = denom.to_string().parse().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Parses `p`, `p/q` or `-p/q` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

/// True iff `r` is an integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Fractional part of `r` normalized into `[0, 1)`.
pub fn frac_part(r: &Rational) -> Rational {
    let floor = r.floor();
    r - floor
}

/// n! as a rational (for the `chi^n / n!` scalings).
pub fn factorial(n: u64) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    BigRational::from_integer(acc)
}

#[allow(unused)]
pub fn rational_abs(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_reduces() {
        assert_eq!(render_rational(&rat(84, 2)), "42");
        assert_eq!(render_rational(&rat(-1, 42)), "-1/42");
        assert_eq!(render_rational(&rat(0, 7)), "0");
        assert_eq!(render_rational(&rat(3, -6)), "-1/2");
    }

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_rational("-1/42").unwrap(), rat(-1, 42));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn frac_part_negative() {
        assert_eq!(frac_part(&rat(-1, 3)), rat(2, 3));
        assert_eq!(frac_part(&rat(7, 3)), rat(1, 3));
        assert_eq!(frac_part(&rat_int(-2)), rat_int(0));
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), rat_int(1));
        assert_eq!(factorial(5), rat_int(120));
    }
}
