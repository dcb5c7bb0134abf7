use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{self, CyclotomicReal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AngleError {
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("slope {k}π/{n} is outside [0, π)")]
    OutOfRange { k: u64, n: u64 },
    #[error("cannot parse slope '{0}' as a fraction of π (expected k/n)")]
    Parse(String),
}

/// A slope `kπ/n ∈ [0, π)` in lowest terms; zero is stored as `0/1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    k: u64,
    n: u64,
}

impl Angle {
    pub const ZERO: Angle = Angle { k: 0, n: 1 };

    pub fn new(k: u64, n: u64) -> Result<Self, AngleError> {
        if n == 0 {
            return Err(AngleError::ZeroDenominator);
        }
        if k >= n {
            return Err(AngleError::OutOfRange { k, n });
        }
        if k == 0 {
            return Ok(Self::ZERO);
        }
        let g = k.gcd(&n);
        Ok(Angle { k: k / g, n: n / g })
    }

    /// `π/n`
    pub fn pi_over(n: u64) -> Self {
        Self::new(1, n).expect("π/n with n ≥ 2")
    }

    pub fn k(self) -> u64 {
        self.k
    }

    pub fn n(self) -> u64 {
        self.n
    }

    pub fn is_zero(self) -> bool {
        self.k == 0
    }

    pub fn radians(self) -> f64 {
        std::f64::consts::PI * self.k as f64 / self.n as f64
    }

    /// Conductor of the cyclotomic field holding `sin` and `cos` of this slope.
    pub fn conductor(self) -> u64 {
        arith::trig_conductor(self.n)
    }

    pub fn sin(self) -> CyclotomicReal {
        arith::sin_of(self)
    }

    pub fn cos(self) -> CyclotomicReal {
        arith::cos_of(self)
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k as u128 * other.n as u128).cmp(&(other.k as u128 * self.n as u128))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `k/n` (the implicit unit is π); zero prints as `0`.
impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.k, self.n)
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.n) {
            (0, _) => write!(f, "0"),
            (1, n) => write!(f, "π/{}", n),
            (k, n) => write!(f, "{}π/{}", k, n),
        }
    }
}

impl FromStr for Angle {
    type Err = AngleError;

    /// Accepts `k/n` or a bare integer `k` (only `0` is in range).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let parse = |x: &str| {
            let x = x.trim();
            if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                return Err(AngleError::Parse(s.to_string()));
            }
            x.parse::<u64>().map_err(|_| AngleError::Parse(s.to_string()))
        };
        match t.split_once('/') {
            Some((k, n)) => Angle::new(parse(k)?, parse(n)?),
            None => Angle::new(parse(t)?, 1),
        }
    }
}
