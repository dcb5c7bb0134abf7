//! Elements of the real subfield of a cyclotomic field `Q(ζ_n)`.
//!
//! An element is stored as a polynomial in `ζ = exp(2πi/n)` of degree below
//! `φ(n)`, reduced modulo the `n`-th cyclotomic polynomial, with integer
//! numerators over one positive common denominator. The representation is
//! canonical for a fixed conductor, so equality at a common conductor is
//! coefficient comparison.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::RationalPolynomial;
use super::ArithError;

/// Per-conductor data: the cyclotomic polynomial and reductions of `ζ^e`.
#[derive(Debug)]
pub(crate) struct FieldTables {
    pub(crate) conductor: u64,
    pub(crate) degree: usize,
    /// Monic `Φ_n`, lowest degree first, length `degree + 1`.
    pub(crate) modulus: Vec<i64>,
    /// `ζ^e mod Φ_n` for `e` in `0..n`.
    monomials: Vec<Vec<i64>>,
}

impl FieldTables {
    fn build(n: u64) -> Self {
        let modulus = cyclotomic_polynomial(n);
        let degree = modulus.len() - 1;
        let mut monomials = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; degree];
        if degree > 0 {
            cur[0] = 1;
        }
        for _ in 0..n {
            monomials.push(cur.clone());
            // multiply by ζ and reduce the overflowing top coefficient
            let top = cur[degree - 1];
            for j in (1..degree).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..degree {
                    cur[j] -= top * modulus[j];
                }
            }
        }
        FieldTables {
            conductor: n,
            degree,
            modulus,
            monomials,
        }
    }

    pub(crate) fn monomial(&self, e: u64) -> &[i64] {
        &self.monomials[(e % self.conductor) as usize]
    }
}

/// Shared, lazily built table per conductor.
pub(crate) fn tables(n: u64) -> Arc<FieldTables> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<FieldTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().expect("table cache poisoned").get(&n) {
        return Arc::clone(t);
    }
    let built = Arc::new(FieldTables::build(n));
    let mut guard = cache.write().expect("table cache poisoned");
    Arc::clone(guard.entry(n).or_insert(built))
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Φ_n(x) = ∏_{d | n} (x^d − 1)^{μ(n/d)}`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "conductor must be positive");
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly: Vec<i128> = vec![1];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            // multiply by x^d - 1
            let mut next = vec![0i128; poly.len() + d as usize];
            for (i, &c) in poly.iter().enumerate() {
                next[i + d as usize] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // exact division by x^d - 1: q_i = q_{i-d} - p_i, run from the bottom
            let d = d as usize;
            let qlen = poly.len() - d;
            let mut q = vec![0i128; qlen];
            for i in 0..qlen {
                let prev = if i >= d { q[i - d] } else { 0 };
                q[i] = prev - poly[i];
            }
            poly = q;
        }
    }
    poly.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

pub(crate) fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// A real number in `Q(ζ_n) ∩ R`, exact.
#[derive(Clone)]
pub struct CyclotomicReal {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicReal {
    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        CyclotomicReal {
            conductor: 1,
            num: vec![BigInt::from(v)],
            den: BigInt::one(),
        }
    }

    pub fn from_bigint(v: BigInt) -> Self {
        CyclotomicReal {
            conductor: 1,
            num: vec![v],
            den: BigInt::one(),
        }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        CyclotomicReal {
            conductor: 1,
            num: vec![q.numer().clone()],
            den: q.denom().clone(),
        }
        .normalized()
    }

    /// Builds an element from its canonical coefficient vector.
    ///
    /// Fails if the length does not match `φ(conductor)` or the element is
    /// not fixed by complex conjugation.
    pub fn from_coeffs(conductor: u64, coeffs: &[BigRational]) -> Result<Self, ArithError> {
        if conductor == 0 {
            return Err(ArithError::InvalidConductor(conductor));
        }
        let t = tables(conductor);
        if coeffs.len() != t.degree {
            return Err(ArithError::CoefficientLength {
                conductor,
                expected: t.degree,
                found: coeffs.len(),
            });
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let x = CyclotomicReal { conductor, num, den }.normalized();
        if x.conjugate() != x {
            return Err(ArithError::NotReal);
        }
        Ok(x)
    }

    /// `Σ c_e ζ^e` over arbitrary exponents, with integer weights and a common
    /// denominator. The caller guarantees the sum is real.
    pub(crate) fn from_exponent_sum(conductor: u64, terms: &[(u64, i64)], den: i64) -> Self {
        let t = tables(conductor);
        let mut acc = vec![0i64; t.degree];
        for &(e, c) in terms {
            for (a, m) in acc.iter_mut().zip(t.monomial(e)) {
                *a += c * m;
            }
        }
        CyclotomicReal {
            conductor,
            num: acc.into_iter().map(BigInt::from).collect(),
            den: BigInt::from(den),
        }
        .normalized()
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// `φ(conductor)`, the length of the coefficient vector.
    pub fn field_degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|n| BigRational::new(n.clone(), self.den.clone()))
            .collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    fn normalized(mut self) -> Self {
        if self.den.is_negative() {
            self.den = -self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        let g = self
            .num
            .iter()
            .fold(self.den.clone(), |acc, c| acc.gcd(c));
        if self.is_zero() {
            self.den = BigInt::one();
        } else if !g.is_one() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
        self
    }

    /// Re-expresses the element in `Q(ζ_m)`; `m` must be a multiple of the
    /// current conductor.
    pub fn promote(&self, m: u64) -> Self {
        assert!(
            m.is_multiple_of(self.conductor),
            "conductor {} does not divide {}",
            self.conductor,
            m
        );
        if m == self.conductor {
            return self.clone();
        }
        let t = tables(m);
        let step = m / self.conductor;
        let mut num = vec![BigInt::zero(); t.degree];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, &mono) in num.iter_mut().zip(t.monomial(j as u64 * step)) {
                if mono != 0 {
                    *acc += c * mono;
                }
            }
        }
        CyclotomicReal {
            conductor: m,
            num,
            den: self.den.clone(),
        }
    }

    /// Canonical hashable key at a given conductor.
    pub fn key_at(&self, conductor: u64) -> CoeffKey {
        let p = self.promote(conductor);
        CoeffKey {
            conductor,
            num: p.num,
            den: p.den,
        }
    }

    fn conjugate(&self) -> Self {
        let t = tables(self.conductor);
        let n = self.conductor;
        let mut num = vec![BigInt::zero(); t.degree];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (acc, &mono) in num.iter_mut().zip(t.monomial((n - j as u64 % n) % n)) {
                if mono != 0 {
                    *acc += c * mono;
                }
            }
        }
        CyclotomicReal {
            conductor: n,
            num,
            den: self.den.clone(),
        }
        .normalized()
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        if a.conductor == b.conductor {
            return (a.clone(), b.clone());
        }
        let m = a.conductor.lcm(&b.conductor);
        (a.promote(m), b.promote(m))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = if self.conductor == other.conductor {
            (std::borrow::Cow::Borrowed(self), std::borrow::Cow::Borrowed(other))
        } else {
            let (a, b) = Self::common(self, other);
            (std::borrow::Cow::Owned(a), std::borrow::Cow::Owned(b))
        };
        let g = a.den.gcd(&b.den);
        let fa = &b.den / &g;
        let fb = &a.den / &g;
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &fa;
                let r = y * &fb;
                if negate {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        CyclotomicReal {
            conductor: a.conductor,
            num,
            den: &a.den * fa,
        }
        .normalized()
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if let Some(q) = other.to_rational() {
            return self.scale(&q);
        }
        if let Some(q) = self.to_rational() {
            return other.scale(&q);
        }
        let (a, b) = if self.conductor == other.conductor {
            (std::borrow::Cow::Borrowed(self), std::borrow::Cow::Borrowed(other))
        } else {
            let (a, b) = Self::common(self, other);
            (std::borrow::Cow::Owned(a), std::borrow::Cow::Owned(b))
        };
        let t = tables(a.conductor);
        let d = t.degree;
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for e in (d..prod.len()).rev() {
            let top = std::mem::take(&mut prod[e]);
            if top.is_zero() {
                continue;
            }
            for j in 0..d {
                let m = t.modulus[j];
                if m != 0 {
                    prod[e - d + j] -= &top * m;
                }
            }
        }
        prod.truncate(d);
        CyclotomicReal {
            conductor: a.conductor,
            num: prod,
            den: &a.den * &b.den,
        }
        .normalized()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicReal {
            conductor: self.conductor,
            num: self.num.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        }
        .normalized()
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        CyclotomicReal {
            conductor: self.conductor,
            num: self.num.iter().map(|c| c * k).collect(),
            den: self.den.clone(),
        }
        .normalized()
    }

    pub fn square(&self) -> Self {
        self.mul_impl(self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CyclotomicReal::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(&q.recip()));
        }
        let t = tables(self.conductor);
        let a = RationalPolynomial::new(
            self.num
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        );
        let m = RationalPolynomial::from_integers(&t.modulus);
        let (g, s, _) = a.extended_gcd(&m);
        // g is a nonzero constant because Φ_n is irreducible and a ≢ 0
        debug_assert_eq!(g.degree(), Some(0));
        let g0 = g.coeff(0);
        let s = s.scale(&(BigRational::from_integer(self.den.clone()) / g0));
        let mut coeffs = s.into_coeffs();
        coeffs.resize(t.degree, BigRational::zero());
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(CyclotomicReal {
            conductor: self.conductor,
            num,
            den,
        }
        .normalized())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self * &other.inv()?)
    }
}

impl PartialEq for CyclotomicReal {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.den == other.den && self.num == other.num
        } else {
            (self - other).is_zero()
        }
    }
}

impl Eq for CyclotomicReal {}

impl fmt::Debug for CyclotomicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicReal(n={}, {})", self.conductor, self)
    }
}

/// Prints the element as a polynomial in `ζ_n`, e.g. `(2 + 3ζ^2 - ζ^4)/5`.
impl fmt::Display for CyclotomicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{}", q);
        }
        let mut body = String::new();
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if body.is_empty() {
                if neg {
                    body.push('-');
                }
            } else {
                body.push_str(if neg { " - " } else { " + " });
            }
            let mono = match j {
                0 => String::new(),
                1 => "ζ".to_string(),
                _ => format!("ζ^{}", j),
            };
            if mono.is_empty() {
                body.push_str(&mag.to_string());
            } else if mag.is_one() {
                body.push_str(&mono);
            } else {
                body.push_str(&format!("{}{}", mag, mono));
            }
        }
        if self.den.is_one() {
            write!(f, "{}", body)
        } else {
            write!(f, "({})/{}", body, self.den)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a CyclotomicReal> for &'a CyclotomicReal {
            type Output = CyclotomicReal;
            fn $method(self, rhs: &'a CyclotomicReal) -> CyclotomicReal {
                let f: fn(&CyclotomicReal, &CyclotomicReal) -> CyclotomicReal = $body;
                f(self, rhs)
            }
        }
        impl $tr<CyclotomicReal> for CyclotomicReal {
            type Output = CyclotomicReal;
            fn $method(self, rhs: CyclotomicReal) -> CyclotomicReal {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a CyclotomicReal> for CyclotomicReal {
            type Output = CyclotomicReal;
            fn $method(self, rhs: &'a CyclotomicReal) -> CyclotomicReal {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
// panics on a zero divisor; use `checked_div` where zero is possible
forward_binop!(Div, div, |a, b| a
    .checked_div(b)
    .expect("division by zero"));

impl Neg for &CyclotomicReal {
    type Output = CyclotomicReal;
    fn neg(self) -> CyclotomicReal {
        CyclotomicReal {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicReal {
    type Output = CyclotomicReal;
    fn neg(self) -> CyclotomicReal {
        -&self
    }
}

impl From<i64> for CyclotomicReal {
    fn from(v: i64) -> Self {
        CyclotomicReal::from_integer(v)
    }
}

impl From<BigRational> for CyclotomicReal {
    fn from(q: BigRational) -> Self {
        CyclotomicReal::from_rational(&q)
    }
}

/// Exact coefficient vector at a fixed conductor, usable as a hash key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CoeffKey {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Hash for CoeffKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor.hash(state);
        self.den.hash(state);
        self.num.hash(state);
    }
}
