//! The real part `M_R` of an origami set, membership in it, and the
//! criteria deciding whether `M(U)` is a ring.

mod criteria;
mod membership;

use thiserror::Error;

use crate::angle::Angle;
use crate::arith::{sin_diff, CyclotomicReal};
use crate::construction::{SlopeSet, SlopeSetError};
use crate::geometry::Cartesian;

pub use criteria::{
    classify, extension_check, ring_check, ring_check_with, Classification, Criterion, CriterionResult,
    Outcome, RingReport, RingVerdict,
};
pub use membership::{
    membership_in_mr, Certificate, IntPoly, MembershipVerdict, MrContext, SearchBounds, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("p is undefined for the zero slope")]
    ZeroSlope,
    #[error("slope {0} is not in U")]
    NotInSet(Angle),
    #[error("slope {0} is already in U")]
    AlreadyInSet(Angle),
    #[error(transparent)]
    Slopes(#[from] SlopeSetError),
}

/// `p(γ) = sin(α−γ)·sin β / (sin(α−β)·sin γ)`, the γ-projection of `⟦0,1⟧`.
pub fn p_value(u: &SlopeSet, gamma: Angle) -> Result<CyclotomicReal, RingError> {
    if gamma.is_zero() {
        return Err(RingError::ZeroSlope);
    }
    if !u.contains(gamma) {
        return Err(RingError::NotInSet(gamma));
    }
    Ok(p_in_frame(u.alpha(), u.beta(), gamma))
}

pub(crate) fn p_in_frame(alpha: Angle, beta: Angle, gamma: Angle) -> CyclotomicReal {
    if gamma == alpha {
        return CyclotomicReal::zero();
    }
    if gamma == beta {
        return CyclotomicReal::one();
    }
    let num = sin_diff(alpha, gamma) * beta.sin();
    let den = sin_diff(alpha, beta) * gamma.sin();
    num.checked_div(&den).expect("nonzero sines")
}

/// `p(γ)` for every nonzero slope, in set order.
#[derive(Clone, Debug)]
pub struct PValueTable {
    entries: Vec<(Angle, CyclotomicReal)>,
}

impl PValueTable {
    pub fn new(u: &SlopeSet) -> Self {
        let entries = u
            .nonzero()
            .map(|g| (g, p_in_frame(u.alpha(), u.beta(), g)))
            .collect();
        PValueTable { entries }
    }

    pub fn get(&self, gamma: Angle) -> Option<&CyclotomicReal> {
        self.entries.iter().find(|(g, _)| *g == gamma).map(|(_, p)| p)
    }

    pub fn entries(&self) -> &[(Angle, CyclotomicReal)] {
        &self.entries
    }
}

/// All differences `p(γ) − p(δ)` over distinct nonzero slopes.
#[derive(Clone, Debug)]
pub struct DeltaSet {
    /// `(γ, δ, p(γ) − p(δ))` over ordered pairs.
    pairs: Vec<(Angle, Angle, CyclotomicReal)>,
    /// Pairwise distinct values in order of first appearance.
    distinct: Vec<CyclotomicReal>,
}

impl DeltaSet {
    pub fn pairs(&self) -> &[(Angle, Angle, CyclotomicReal)] {
        &self.pairs
    }

    pub fn values(&self) -> &[CyclotomicReal] {
        &self.distinct
    }

    pub fn len(&self) -> usize {
        self.distinct.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distinct.is_empty()
    }

    pub fn contains(&self, x: &CyclotomicReal) -> bool {
        self.distinct.iter().any(|d| d == x)
    }

    /// Equality as sets of numbers.
    pub fn same_values(&self, other: &[CyclotomicReal]) -> bool {
        other.iter().all(|x| self.contains(x)) && self.distinct.iter().all(|d| other.contains(d))
    }
}

pub fn delta_set(u: &SlopeSet) -> DeltaSet {
    let table = PValueTable::new(u);
    let mut pairs = Vec::new();
    let mut distinct: Vec<CyclotomicReal> = Vec::new();
    for (g, pg) in table.entries() {
        for (d, pd) in table.entries() {
            if g == d {
                continue;
            }
            let v = pg - pd;
            if !distinct.contains(&v) {
                distinct.push(v.clone());
            }
            pairs.push((*g, *d, v));
        }
    }
    DeltaSet { pairs, distinct }
}

/// The trigonometric quantities the ring criteria are stated in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionValues {
    /// `sin²β / sin²(α−β)`
    pub beta_ratio: CyclotomicReal,
    /// `sin²α / sin²(α−β)`
    pub alpha_ratio: CyclotomicReal,
    /// `2·cos α·sin β / sin(α−β)`
    pub trace_term: CyclotomicReal,
}

impl CriterionValues {
    pub fn new(alpha: Angle, beta: Angle) -> Self {
        let gap = sin_diff(alpha, beta);
        let gap_sq_inv = gap.square().inv().expect("α ≠ β");
        CriterionValues {
            beta_ratio: beta.sin().square() * &gap_sq_inv,
            alpha_ratio: alpha.sin().square() * &gap_sq_inv,
            trace_term: (alpha.cos() * beta.sin()).scale_int(&2.into()) * gap.inv().expect("α ≠ β"),
        }
    }

    pub fn of(u: &SlopeSet) -> Self {
        Self::new(u.alpha(), u.beta())
    }
}

/// Cartesian parts of `⟦0,1⟧`:
/// `(−cos α·sin β / sin(α−β), −sin α·sin β / sin(α−β))`.
pub fn e_closed_form(u: &SlopeSet) -> Cartesian {
    let (a, b) = (u.alpha(), u.beta());
    let k = (b.sin() * sin_diff(a, b).inv().expect("α ≠ β")).scale_int(&(-1).into());
    Cartesian::new(a.cos() * &k, a.sin() * &k)
}

/// `|⟦0,1⟧|² = sin²β / sin²(α−β)`
pub fn e_norm_sq(u: &SlopeSet) -> CyclotomicReal {
    CriterionValues::of(u).beta_ratio
}

/// `(α,β)`-coordinates of `⟦0,1⟧·⟦1,0⟧`, namely
/// `(sin²β / sin²(α−β), sin²α / sin²(α−β))`.
pub fn product_e(u: &SlopeSet) -> (CyclotomicReal, CyclotomicReal) {
    let v = CriterionValues::of(u);
    (v.beta_ratio, v.alpha_ratio)
}
