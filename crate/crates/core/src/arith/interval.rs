//! Rigorous enclosures of cyclotomic reals by dyadic intervals.
//!
//! Every bound below is computed with integer arithmetic on values scaled by
//! `2^bits`, rounding lower bounds down and upper bounds up, so the
//! enclosures hold on every platform without rounding-mode assumptions.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CyclotomicReal;

/// Closed interval `[lo, hi]` with rational endpoints, `lo ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        Interval { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every point of the interval, if it is uniform and nonzero.
    pub fn strict_sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    // b > 0
    let (q, r) = a.div_mod_floor(b);
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Fixed-point enclosure `[lo, hi]·2^-bits`.
#[derive(Clone, Debug)]
struct Fixed {
    lo: BigInt,
    hi: BigInt,
}

/// Encloses `atan(1/m)` by its alternating Taylor series.
fn atan_inv(m: u64, bits: u64) -> Fixed {
    let one = BigInt::one() << bits;
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut power = m.clone(); // m^(2k+1)
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let d = &power * BigInt::from(2 * k + 1);
        let t_lo = one.div_floor(&d);
        let t_hi = ceil_div(&one, &d);
        if k.is_multiple_of(2) {
            lo += &t_lo;
            hi += &t_hi;
        } else {
            lo -= &t_hi;
            hi -= &t_lo;
        }
        power *= &m2;
        k += 1;
        let next = ceil_div(&one, &(&power * BigInt::from(2 * k + 1)));
        if next <= BigInt::one() {
            // remainder of an alternating series is bounded by the next term
            lo -= &next;
            hi += &next;
            return Fixed { lo, hi };
        }
    }
}

/// π by Machin's formula `16·atan(1/5) − 4·atan(1/239)`.
fn pi_fixed(bits: u64) -> Fixed {
    let a = atan_inv(5, bits);
    let b = atan_inv(239, bits);
    Fixed {
        lo: a.lo * 16 - b.hi * 4,
        hi: a.hi * 16 - b.lo * 4,
    }
}

/// `cos(2π·j/n)` enclosed at `bits` fractional bits.
fn cos_turn_fraction(j: u64, n: u64, bits: u64) -> Fixed {
    let guard = 24;
    let w = bits + guard;
    let j = j % n;
    // cos is even: fold to [0, π]
    let j = if 2 * j > n { n - j } else { j };
    // angle = π·q with q = 2j/n ∈ [0, 1]; fold to [0, π/2] using cos(π - x) = -cos x
    let (mut qn, qd) = (2 * j, n);
    let negate = 2 * qn > qd;
    if negate {
        qn = qd - qn;
    }
    let one = BigInt::one() << w;
    let result = if qn == 0 {
        Fixed {
            lo: one.clone(),
            hi: one.clone(),
        }
    } else {
        let pi = pi_fixed(w);
        let qn = BigInt::from(qn);
        let qd = BigInt::from(qd);
        let t_lo = (&pi.lo * &qn).div_floor(&qd);
        let t_hi = ceil_div(&(&pi.hi * &qn), &qd);
        let sq_lo = (&t_lo * &t_lo) >> w;
        let sq_hi = ceil_div(&(&t_hi * &t_hi), &one);
        let mut term_lo = one.clone();
        let mut term_hi = one.clone();
        let mut lo = one.clone();
        let mut hi = one.clone();
        let mut k: u64 = 1;
        loop {
            let d = &one * BigInt::from((2 * k - 1) * (2 * k));
            term_lo = (&term_lo * &sq_lo).div_floor(&d);
            term_hi = ceil_div(&(&term_hi * &sq_hi), &d);
            if k % 2 == 1 {
                lo -= &term_hi;
                hi -= &term_lo;
            } else {
                lo += &term_lo;
                hi += &term_hi;
            }
            if term_hi <= BigInt::one() {
                // |remainder| ≤ next term ≤ current term for θ ≤ π/2
                lo -= &term_hi;
                hi += &term_hi;
                break;
            }
            k += 1;
        }
        Fixed { lo, hi }
    };
    let (lo, hi) = if negate {
        (-result.hi, -result.lo)
    } else {
        (result.lo, result.hi)
    };
    let g = BigInt::one() << guard;
    Fixed {
        lo: lo.div_floor(&g),
        hi: ceil_div(&hi, &g),
    }
}

/// Enclosures of `cos(2πj/n)` for `j < φ(n)`, shared across threads.
fn cos_table(n: u64, degree: usize, bits: u64) -> Arc<Vec<Fixed>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<Vec<Fixed>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("cos cache poisoned").get(&(n, bits)) {
        return Arc::clone(t);
    }
    let table: Vec<Fixed> = (0..degree as u64)
        .map(|j| cos_turn_fraction(j, n, bits))
        .collect();
    let table = Arc::new(table);
    cache
        .lock()
        .expect("cos cache poisoned")
        .insert((n, bits), Arc::clone(&table));
    table
}

impl CyclotomicReal {
    /// Encloses the real embedding `Σ c_j cos(2πj/n)` using `bits`
    /// fractional bits for each cosine.
    pub fn enclose(&self, bits: u64) -> Interval {
        if let Some(q) = self.to_rational() {
            return Interval::point(q);
        }
        let table = cos_table(self.conductor(), self.field_degree(), bits);
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (c, cj) in self.numerators().iter().zip(table.iter()) {
            match c.sign() {
                num_bigint::Sign::Plus => {
                    lo += c * &cj.lo;
                    hi += c * &cj.hi;
                }
                num_bigint::Sign::Minus => {
                    lo += c * &cj.hi;
                    hi += c * &cj.lo;
                }
                num_bigint::Sign::NoSign => {}
            }
        }
        let scale = self.denominator() << bits;
        Interval::new(
            BigRational::new(lo, scale.clone()),
            BigRational::new(hi, scale),
        )
    }

    /// Exact sign: zero is decided on the canonical form, a nonzero value
    /// by refining the enclosure until it excludes zero.
    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let mut bits = 64;
        loop {
            if let Some(s) = self.enclose(bits).strict_sign() {
                return s;
            }
            bits *= 2;
        }
    }

    /// Refines until the enclosure is narrower than `tol`.
    pub fn refine(&self, tol: &BigRational) -> Interval {
        let mut bits = 64;
        loop {
            let iv = self.enclose(bits);
            if &iv.width() <= tol {
                return iv;
            }
            bits *= 2;
        }
    }

    /// Nearest-ish `f64`, accurate to well below `1e-15` absolute error plus
    /// the inherent `f64` rounding.
    pub fn to_f64(&self) -> f64 {
        let tol = BigRational::new(BigInt::one(), BigInt::one() << 60u32);
        self.refine(&tol).midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        (self - other).sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(f: &Fixed, bits: u64) -> (f64, f64) {
        let s = (BigInt::one() << bits).to_f64().unwrap();
        (f.lo.to_f64().unwrap() / s, f.hi.to_f64().unwrap() / s)
    }

    #[test]
    fn pi_is_enclosed() {
        let p = pi_fixed(200);
        let (lo, hi) = rat(&p, 200);
        assert!(lo <= std::f64::consts::PI && std::f64::consts::PI <= hi);
        assert!(&p.hi - &p.lo < BigInt::from(1u32 << 12));
    }

    #[test]
    fn cosines_are_enclosed() {
        for n in [1u64, 3, 4, 7, 12, 60, 120] {
            for j in 0..n {
                let f = cos_turn_fraction(j, n, 80);
                let (lo, hi) = rat(&f, 80);
                let v = (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos();
                assert!(lo - 1e-15 <= v && v <= hi + 1e-15, "n={} j={}", n, j);
                assert!(&f.hi - &f.lo < BigInt::from(16));
            }
        }
    }

    #[test]
    fn interval_predicates() {
        let iv = Interval::new(
            BigRational::new((-1).into(), 2.into()),
            BigRational::new(1.into(), 3.into()),
        );
        assert!(iv.contains_zero());
        assert_eq!(iv.strict_sign(), None);
        assert_eq!(iv.width(), BigRational::new(5.into(), 6.into()));
    }
}
