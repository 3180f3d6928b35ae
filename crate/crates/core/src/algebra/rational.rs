//! Exact rationals.
//!
//! `num_rational::BigRational` already keeps values in lowest terms with a
//! positive denominator, so it is used directly.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // fall back to a shifted division for very large operands
            let bits = r.numer().bits().max(r.denom().bits()) as i64;
            let shift = (bits - 900).max(0) as usize;
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Least common multiple of denominators and gcd of numerators of a list,
/// used to scale vectors to primitive integer form.
pub fn content_scale(values: &[Rational]) -> Rational {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    for v in values.iter().filter(|v| !v.is_zero()) {
        lcm = lcm.lcm(v.denom());
        gcd = gcd.gcd(v.numer());
    }
    if gcd.is_zero() {
        return Rational::one();
    }
    Rational::new(lcm, gcd.abs())
}

pub fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
