//! Exact rational linear algebra. No floating point is used for any decision.

mod matrix;
mod poly;
mod psd;

pub use matrix::RationalMatrix;
pub use poly::{char_poly, CharPoly, Polynomial};
pub use psd::{psd_check, LdlFactorization, PsdVerdict, PsdWitness};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Parse `"num/den"` or `"num"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Rational(text.to_string());
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

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Closest `f64`, for human-readable annotations only.
pub fn approx(r: &Rational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // Scale down huge operands before dividing.
            let shift = n.bits().max(d.bits()).saturating_sub(1000) as usize;
            let a = (n.abs() >> shift).to_f64().unwrap_or(f64::MAX);
            let b = (d >> shift).to_f64().unwrap_or(f64::MAX);
            if n.is_negative() {
                -a / b
            } else {
                a / b
            }
        }
    }
}
