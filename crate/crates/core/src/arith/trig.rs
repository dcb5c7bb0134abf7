//! Exact trigonometric values and square roots as cyclotomic reals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CyclotomicReal;
use crate::angle::Angle;

/// Conductor hosting both `sin(aπ/b)` and `cos(aπ/b)`: `lcm(4, 2b)`.
pub fn trig_conductor(den: u64) -> u64 {
    4u64.lcm(&(2 * den))
}

/// Splits `aπ/b` into the conductor and the exponent `t` with `ζ^t = e^{iaπ/b}`.
fn exponent_of(num: i64, den: u64) -> (u64, u64) {
    assert!(den > 0, "zero denominator");
    let g = (num.unsigned_abs()).gcd(&den).max(1);
    let (num, den) = (num / g as i64, den / g);
    let n = trig_conductor(den);
    let step = n / (2 * den);
    let t = (num as i128 * step as i128).rem_euclid(n as i128) as u64;
    (n, t)
}

/// `cos(num·π/den)` exactly.
pub fn cos_pi(num: i64, den: u64) -> CyclotomicReal {
    let (n, t) = exponent_of(num, den);
    // (ζ^t + ζ^{-t}) / 2
    CyclotomicReal::from_exponent_sum(n, &[(t, 1), ((n - t) % n, 1)], 2)
}

/// `sin(num·π/den)` exactly.
pub fn sin_pi(num: i64, den: u64) -> CyclotomicReal {
    let (n, t) = exponent_of(num, den);
    // (ζ^t − ζ^{-t}) / (2i) = (ζ^{t+3n/4} − ζ^{-t+3n/4}) / 2
    let q = 3 * n / 4;
    CyclotomicReal::from_exponent_sum(n, &[((t + q) % n, 1), ((n - t + q) % n, -1)], 2)
}

/// `sin` of a slope.
pub fn sin_of(angle: Angle) -> CyclotomicReal {
    sin_pi(angle.k() as i64, angle.n())
}

/// `cos` of a slope.
pub fn cos_of(angle: Angle) -> CyclotomicReal {
    cos_pi(angle.k() as i64, angle.n())
}

/// `sin(a − b)` for two slopes, computed from the difference `aπ − bπ`.
pub fn sin_diff(a: Angle, b: Angle) -> CyclotomicReal {
    let (num, den) = diff_fraction(a, b);
    sin_pi(num, den)
}

pub(crate) fn diff_fraction(a: Angle, b: Angle) -> (i64, u64) {
    let den = a.n().lcm(&b.n());
    let num = (a.k() * (den / a.n())) as i64 - (b.k() * (den / b.n())) as i64;
    (num, den)
}

fn legendre(a: u64, p: u64) -> i64 {
    // Euler's criterion
    let mut result: u128 = 1;
    let mut base = (a % p) as u128;
    let mut e = (p - 1) / 2;
    let m = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    match result {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// `√p` for a prime `p`, via the quadratic Gauss sum.
fn sqrt_prime(p: u64) -> CyclotomicReal {
    if p == 2 {
        // ζ_8 + ζ_8^{-1}
        return CyclotomicReal::from_exponent_sum(8, &[(1, 1), (7, 1)], 1);
    }
    let n = 4 * p;
    // g = Σ (a/p) ζ_p^a with ζ_p = ζ_n^4; g² = (−1)^{(p−1)/2}·p
    let mut terms: Vec<(u64, i64)> = (1..p).map(|a| (4 * a, legendre(a, p))).collect();
    if p % 4 == 3 {
        // g = i√p, so √p = −i·g = ζ_4^3·g
        for t in &mut terms {
            t.0 = (t.0 + 3 * n / 4) % n;
        }
    }
    CyclotomicReal::from_exponent_sum(n, &terms, 1)
}

fn factor(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// `√m` for a nonnegative integer small enough to factor by trial division.
pub fn sqrt_integer(m: u64) -> CyclotomicReal {
    let mut square_part = BigInt::one();
    let mut acc = CyclotomicReal::one();
    for (p, e) in factor(m) {
        square_part *= BigInt::from(p).pow(e / 2);
        if e % 2 == 1 {
            acc = &acc * &sqrt_prime(p);
        }
    }
    if m == 0 {
        return CyclotomicReal::zero();
    }
    acc.scale_int(&square_part)
}

/// `√q` for a nonnegative rational, `None` when negative or too large to
/// factor.
pub fn sqrt_rational(q: &BigRational) -> Option<CyclotomicReal> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(CyclotomicReal::zero());
    }
    // √(a/b) = √(ab)/b
    let ab = (q.numer() * q.denom()).to_u64()?;
    let root = sqrt_integer(ab);
    Some(root.scale(&BigRational::new(BigInt::one(), q.denom().clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_values() {
        assert_eq!(sin_pi(1, 2), CyclotomicReal::one());
        assert_eq!(cos_pi(0, 1), CyclotomicReal::one());
        assert_eq!(cos_pi(1, 1), CyclotomicReal::from_integer(-1));
        assert!(sin_pi(1, 1).is_zero());
        assert_eq!(
            cos_pi(1, 3),
            CyclotomicReal::from_rational(&BigRational::new(1.into(), 2.into()))
        );
        assert_eq!(sin_pi(-1, 6), CyclotomicReal::from_rational(&BigRational::new((-1).into(), 2.into())));
    }

    #[test]
    fn square_roots_square_back() {
        for m in [2u64, 3, 5, 6, 7, 11, 12, 13, 18, 30] {
            let r = sqrt_integer(m);
            assert_eq!(r.square(), CyclotomicReal::from_integer(m as i64), "m = {}", m);
            assert_eq!(r.sign(), std::cmp::Ordering::Greater, "m = {}", m);
        }
        let q = BigRational::new(3.into(), 4.into());
        let r = sqrt_rational(&q).unwrap();
        assert_eq!(r.square(), CyclotomicReal::from_rational(&q));
        assert!(sqrt_rational(&BigRational::new((-1).into(), 1.into())).is_none());
    }

    #[test]
    fn sqrt3_is_twice_sin_pi_over_3() {
        assert_eq!(sqrt_integer(3), sin_pi(1, 3).scale_int(&2.into()));
    }
}
