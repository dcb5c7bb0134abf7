//! Decimal rendering of exact values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use origami_core::CyclotomicReal;

pub const DEFAULT_PRECISION: usize = 15;

/// `q` rounded to `digits` fractional digits, trailing zeros dropped.
pub fn rational(q: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = q * BigRational::from_integer(scale);
    // round half away from zero
    let two = BigInt::from(2);
    let n = scaled.numer().abs() * &two + scaled.denom();
    let rounded = n.div_floor(&(scaled.denom() * &two));
    if rounded.is_zero() {
        return "0".into();
    }
    let (int_part, frac_part) = rounded.div_rem(&BigInt::from(10u32).pow(digits as u32));
    let mut s = String::new();
    if q.is_negative() {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 && !frac_part.is_zero() {
        let frac = format!("{:0>width$}", frac_part.to_string(), width = digits);
        s.push('.');
        s.push_str(frac.trim_end_matches('0'));
    }
    s
}

/// `x` to `digits` fractional digits, correct up to the final rounding.
pub fn real(x: &CyclotomicReal, digits: usize) -> String {
    if let Some(q) = x.to_rational() {
        return rational(&q, digits);
    }
    let tol = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits as u32 + 2));
    rational(&x.refine(&tol).midpoint(), digits)
}
