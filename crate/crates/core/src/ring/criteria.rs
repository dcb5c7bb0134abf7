use std::fmt;

use crate::angle::Angle;
use crate::arith::CyclotomicReal;
use crate::construction::SlopeSet;
use crate::geometry::{Frame, PlanePoint};

use super::membership::{MembershipVerdict, MrContext, SearchBounds};
use super::{CriterionValues, RingError};

/// Equivalent conditions for `M(U)` to be a ring, each reduced to
/// membership of two reals in `M_R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// `⟦0,1⟧` is a root of `X² − sX − r` with `r, s ∈ M_R`.
    MonicQuadratic,
    /// `sin²β/sin²(α−β)` and `2·cos α·sin β/sin(α−β)` lie in `M_R`.
    NormAndTrace,
    /// `sin²α/sin²(α−β)` and `sin²β/sin²(α−β)` lie in `M_R`.
    SineRatios,
    /// `⟦0,1⟧·⟦1,0⟧ ∈ M`.
    ProductInSet,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::MonicQuadratic,
        Criterion::NormAndTrace,
        Criterion::SineRatios,
        Criterion::ProductInSet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::MonicQuadratic => "monic-quadratic",
            Criterion::NormAndTrace => "norm-and-trace",
            Criterion::SineRatios => "sine-ratios",
            Criterion::ProductInSet => "product-in-set",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    Fails,
    Undecided,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub criterion: Criterion,
    /// Labelled values tested for membership in `M_R`.
    pub values: Vec<(&'static str, CyclotomicReal, MembershipVerdict)>,
}

impl CriterionResult {
    pub fn outcome(&self) -> Outcome {
        if self.values.iter().any(|(_, _, v)| v.is_not_in()) {
            Outcome::Fails
        } else if self.values.iter().all(|(_, _, v)| v.is_in()) {
            Outcome::Holds
        } else {
            Outcome::Undecided
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingVerdict {
    Ring,
    NotRing,
    Unknown,
}

impl fmt::Display for RingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingVerdict::Ring => "Ring",
            RingVerdict::NotRing => "NotRing",
            RingVerdict::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug)]
pub struct RingReport {
    pub slopes: SlopeSet,
    /// Frame `(α, β)` the criteria below were evaluated in.
    pub frame: (Angle, Angle),
    pub values: CriterionValues,
    pub criteria: Vec<CriterionResult>,
    pub verdict: RingVerdict,
}

impl RingReport {
    pub fn criterion(&self, c: Criterion) -> &CriterionResult {
        self.criteria
            .iter()
            .find(|r| r.criterion == c)
            .expect("all criteria are evaluated")
    }

    /// Whether all decided criteria agree.
    pub fn coherent(&self) -> bool {
        let holds = self.criteria.iter().any(|c| c.outcome() == Outcome::Holds);
        let fails = self.criteria.iter().any(|c| c.outcome() == Outcome::Fails);
        !(holds && fails)
    }

    /// Whether the criteria were evaluated in a frame other than the set's own.
    pub fn used_alternate_frame(&self) -> bool {
        self.frame != (self.slopes.alpha(), self.slopes.beta())
    }
}

#[derive(Clone, Copy)]
enum Depth {
    Quick,
    Full(SearchBounds),
}

struct Evaluator<'a> {
    ctx: &'a MrContext,
    depth: Depth,
    memo: Vec<(CyclotomicReal, MembershipVerdict)>,
}

impl Evaluator<'_> {
    fn verdict(&mut self, x: &CyclotomicReal) -> MembershipVerdict {
        if let Some((_, v)) = self.memo.iter().find(|(y, _)| y == x) {
            return v.clone();
        }
        let v = match self.depth {
            Depth::Quick => self
                .ctx
                .quick(x)
                .unwrap_or(MembershipVerdict::Unknown(SearchBounds {
                    max_den_exp: 0,
                    max_num_deg: 0,
                })),
            Depth::Full(b) => self.ctx.membership(x, b),
        };
        self.memo.push((x.clone(), v.clone()));
        v
    }

    fn criterion(&mut self, c: Criterion, values: [(&'static str, CyclotomicReal); 2]) -> CriterionResult {
        let values = values
            .into_iter()
            .map(|(l, x)| {
                let v = self.verdict(&x);
                (l, x, v)
            })
            .collect();
        CriterionResult { criterion: c, values }
    }

    fn frame(&mut self, alpha: Angle, beta: Angle) -> (CriterionValues, Vec<CriterionResult>) {
        let vals = CriterionValues::new(alpha, beta);
        let frame = Frame::new(alpha, beta).expect("distinct nonzero slopes");
        let e = frame.point(CyclotomicReal::zero(), CyclotomicReal::one());
        // e² = r + s·e has coordinates ⟦r, r + s⟧
        let sq = e.mul(&e);
        let r = sq.r().clone();
        let s = sq.s() - sq.r();
        let one_minus_e = frame.point(CyclotomicReal::one(), CyclotomicReal::zero());
        let prod: PlanePoint = e.mul(&one_minus_e);
        let results = vec![
            self.criterion(Criterion::MonicQuadratic, [("r", r), ("s", s)]),
            self.criterion(
                Criterion::NormAndTrace,
                [
                    ("sin²β/sin²(α−β)", vals.beta_ratio.clone()),
                    ("2cosα·sinβ/sin(α−β)", vals.trace_term.clone()),
                ],
            ),
            self.criterion(
                Criterion::SineRatios,
                [
                    ("sin²α/sin²(α−β)", vals.alpha_ratio.clone()),
                    ("sin²β/sin²(α−β)", vals.beta_ratio.clone()),
                ],
            ),
            self.criterion(
                Criterion::ProductInSet,
                [("r", prod.r().clone()), ("s", prod.s().clone())],
            ),
        ];
        (vals, results)
    }
}

fn verdict_of(results: &[CriterionResult]) -> RingVerdict {
    if results.iter().any(|c| c.outcome() == Outcome::Holds) {
        RingVerdict::Ring
    } else if results.iter().any(|c| c.outcome() == Outcome::Fails) {
        RingVerdict::NotRing
    } else {
        RingVerdict::Unknown
    }
}

pub fn ring_check(u: &SlopeSet) -> RingReport {
    ring_check_with(u, &MrContext::new(u), SearchBounds::default())
}

/// Evaluates the criteria in the set's own frame and, while undecided, in
/// the other frames `(γ, δ)` of nonzero slopes. Search-free decisions in any
/// frame are tried before bounded witness searches.
pub fn ring_check_with(u: &SlopeSet, ctx: &MrContext, bounds: SearchBounds) -> RingReport {
    let primary = (u.alpha(), u.beta());
    let nonzero: Vec<Angle> = u.nonzero().collect();
    let mut frames = vec![primary];
    for &g in &nonzero {
        for &d in &nonzero {
            if g != d && (g, d) != primary {
                frames.push((g, d));
            }
        }
    }
    let mut fallback = None;
    for depth in [Depth::Quick, Depth::Full(bounds)] {
        for &(a, b) in &frames {
            let mut ev = Evaluator {
                ctx,
                depth,
                memo: Vec::new(),
            };
            let (values, criteria) = ev.frame(a, b);
            let verdict = verdict_of(&criteria);
            let report = RingReport {
                slopes: u.clone(),
                frame: (a, b),
                values,
                criteria,
                verdict,
            };
            if verdict != RingVerdict::Unknown {
                return report;
            }
            if matches!(depth, Depth::Full(_)) && fallback.is_none() {
                fallback = Some(report);
            }
        }
    }
    fallback.expect("at least one frame")
}

/// `U ∪ extra`, rechecked.
pub fn extension_check(u: &SlopeSet, extra: &[Angle], bounds: SearchBounds) -> Result<RingReport, RingError> {
    if let Some(&a) = extra.iter().find(|&&a| u.contains(a)) {
        return Err(RingError::AlreadyInSet(a));
    }
    let v = u.extended(extra)?;
    let ctx = MrContext::new(&v);
    Ok(ring_check_with(&v, &ctx, bounds))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// `M = Z + Z·z`.
    Discrete { z: PlanePoint },
    Dense,
}

impl Classification {
    pub fn is_discrete(&self) -> bool {
        matches!(self, Classification::Discrete { .. })
    }
}

pub fn classify(u: &SlopeSet) -> Classification {
    if u.len() == 3 {
        let z = u.frame().point(CyclotomicReal::zero(), CyclotomicReal::one());
        Classification::Discrete { z }
    } else {
        Classification::Dense
    }
}
