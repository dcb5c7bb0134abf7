//! Exact arithmetic in real subfields of cyclotomic fields.

mod cyclotomic;
mod interval;
pub mod lattice;
pub mod linalg;
mod poly;
mod trig;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, CoeffKey, CyclotomicReal};
pub use interval::Interval;
pub use lattice::{lattice_member, Lattice, Payload};
pub use poly::RationalPolynomial;
pub use trig::{cos_of, cos_pi, sin_diff, sin_of, sin_pi, sqrt_integer, sqrt_rational, trig_conductor};

pub(crate) use cyclotomic::euler_phi;

/// Arbitrary-precision rational with a positive, coprime denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid conductor {0}")]
    InvalidConductor(u64),
    #[error("conductor {conductor} needs {expected} coefficients, got {found}")]
    CoefficientLength {
        conductor: u64,
        expected: usize,
        found: usize,
    },
    #[error("coefficient vector does not describe a real number")]
    NotReal,
}

/// Minimal polynomial over `Q`: the first linear dependency among
/// `1, x, x², …` in the cyclotomic basis.
pub fn minimal_polynomial(x: &CyclotomicReal) -> RationalPolynomial {
    let n = x.conductor();
    let mut space = linalg::EchelonSpace::new(x.field_degree());
    let mut power = CyclotomicReal::one().promote(n);
    loop {
        let v = power.promote(n).coeffs();
        match space.insert(&v) {
            Ok(()) => power = &power * x,
            Err(combo) => {
                // x^d = Σ combo_i x^i  ⇒  μ = X^d − Σ combo_i X^i
                let mut coeffs: Vec<BigRational> = combo.into_iter().map(|c| -c).collect();
                coeffs.push(BigRational::one());
                return RationalPolynomial::new(coeffs);
            }
        }
    }
}

/// Value of `μ(x)` with exact arithmetic; zero exactly when `μ` annihilates `x`.
pub fn annihilates(mu: &RationalPolynomial, x: &CyclotomicReal) -> bool {
    mu.eval(x).is_zero() && !mu.coeffs().iter().all(Zero::is_zero)
}
