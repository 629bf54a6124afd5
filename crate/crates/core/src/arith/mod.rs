//! Number types: exact rationals, cyclotomic numbers, and the [`Scalar`]
//! tower that mixes the exact path with a floating fallback.

mod cyclotomic;
mod scalar;

pub use cyclotomic::{cyclotomic_poly, totient, Cyclotomic};
pub use scalar::{Scalar, DEFAULT_TOLERANCE};

pub(crate) use cyclotomic::rational_to_f64;

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `"p/q"`, or just `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// `base^exp` as a rational; negative exponents allowed.
pub fn rational_pow(base: i64, exp: i64) -> Rational {
    let b = int(base);
    if exp >= 0 {
        num_traits::pow(b, exp as usize)
    } else {
        Rational::one() / num_traits::pow(b, (-exp) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for (s, r) in [("-1/2", rat(-1, 2)), ("3", int(3)), ("4/6", rat(2, 3))] {
            assert_eq!(parse_rational(s).unwrap(), r);
        }
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
        assert_eq!(format_rational(&int(7)), "7");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
        assert_eq!(rational_pow(2, -3), rat(1, 8));
    }
}
