//! Level-wise brute-force generation of origami point sets.
//!
//! Level 0 is `{0, 1}`; level `k` collects every intersection of a line
//! through a level `k−1` point with a line through another level `k−1`
//! point, the two lines having distinct admissible slopes.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;
use thiserror::Error;

use crate::angle::{Angle, AngleError};
use crate::arith::{CoeffKey, CyclotomicReal};
use crate::geometry::{Cartesian, Frame, GeometryError, Intersector, PlanePoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeSetError {
    #[error("invalid slope set: 0 ∈ U and |U| ≥ 3 required ({0})")]
    Constraint(String),
    #[error("duplicate slope {0}")]
    Duplicate(Angle),
    #[error(transparent)]
    Angle(#[from] AngleError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// The admissible slopes `U`, kept in the order given.
///
/// The distinguished frame slopes `α, β` are the first two nonzero slopes in
/// that order unless chosen explicitly.
#[derive(Clone)]
pub struct SlopeSet {
    slopes: Vec<Angle>,
    frame: Arc<Frame>,
}

impl SlopeSet {
    pub fn new(slopes: Vec<Angle>) -> Result<Self, SlopeSetError> {
        Self::validate(&slopes)?;
        let mut nonzero = slopes.iter().copied().filter(|a| !a.is_zero());
        let alpha = nonzero.next().expect("validated");
        let beta = nonzero.next().expect("validated");
        let frame = Frame::new(alpha, beta)?;
        Ok(SlopeSet { slopes, frame })
    }

    /// Same set with an explicit choice of frame slopes.
    pub fn with_frame(slopes: Vec<Angle>, alpha: Angle, beta: Angle) -> Result<Self, SlopeSetError> {
        Self::validate(&slopes)?;
        for a in [alpha, beta] {
            if !slopes.contains(&a) {
                return Err(SlopeSetError::Constraint(format!("frame slope {} is not in U", a)));
            }
        }
        let frame = Frame::new(alpha, beta)?;
        Ok(SlopeSet { slopes, frame })
    }

    fn validate(slopes: &[Angle]) -> Result<(), SlopeSetError> {
        if !slopes.contains(&Angle::ZERO) {
            return Err(SlopeSetError::Constraint("0 is missing".into()));
        }
        let mut seen = HashSet::new();
        for &a in slopes {
            if !seen.insert(a) {
                return Err(SlopeSetError::Duplicate(a));
            }
        }
        if slopes.len() < 3 {
            return Err(SlopeSetError::Constraint(format!(
                "only {} slope(s) given",
                slopes.len()
            )));
        }
        Ok(())
    }

    pub fn slopes(&self) -> &[Angle] {
        &self.slopes
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn alpha(&self) -> Angle {
        self.frame.alpha()
    }

    pub fn beta(&self) -> Angle {
        self.frame.beta()
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    /// Nonzero slopes in set order.
    pub fn nonzero(&self) -> impl Iterator<Item = Angle> + '_ {
        self.slopes.iter().copied().filter(|a| !a.is_zero())
    }

    /// Nonzero slopes other than `α` and `β`.
    pub fn others(&self) -> impl Iterator<Item = Angle> + '_ {
        let (a, b) = (self.alpha(), self.beta());
        self.nonzero().filter(move |&g| g != a && g != b)
    }

    pub fn contains(&self, a: Angle) -> bool {
        self.slopes.contains(&a)
    }

    /// Smallest conductor holding `sin` and `cos` of every slope and every
    /// slope difference.
    pub fn conductor(&self) -> u64 {
        self.slopes.iter().fold(4, |acc, a| acc.lcm(&a.conductor()))
    }

    /// `U ∪ extra`, keeping the current frame.
    pub fn extended(&self, extra: &[Angle]) -> Result<SlopeSet, SlopeSetError> {
        let mut slopes = self.slopes.clone();
        slopes.extend_from_slice(extra);
        Self::with_frame(slopes, self.alpha(), self.beta())
    }
}

impl PartialEq for SlopeSet {
    fn eq(&self, other: &Self) -> bool {
        self.slopes == other.slopes && self.alpha() == other.alpha() && self.beta() == other.beta()
    }
}

impl fmt::Debug for SlopeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SlopeSet({:?}; α={:?}, β={:?})", self.slopes, self.alpha(), self.beta())
    }
}

impl fmt::Display for SlopeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slopes.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for SlopeSet {
    type Err = SlopeSetError;

    /// Comma-separated fractions of π, e.g. `0,1/3,2/3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let slopes = s
            .split(',')
            .map(|t| t.parse::<Angle>())
            .collect::<Result<Vec<_>, _>>()?;
        SlopeSet::new(slopes)
    }
}

type PointKey = (CoeffKey, CoeffKey);

/// One level `M_k` of the construction.
#[derive(Clone)]
pub struct LevelSet {
    level: usize,
    conductor: u64,
    points: Vec<PlanePoint>,
    keys: HashSet<PointKey>,
    truncated: bool,
}

impl LevelSet {
    fn from_points(level: usize, conductor: u64, mut points: Vec<PlanePoint>, truncated: bool) -> Self {
        points.sort_by_cached_key(|p| key_of(p, conductor));
        let keys = points.iter().map(|p| key_of(p, conductor)).collect();
        LevelSet {
            level,
            conductor,
            points,
            keys,
            truncated,
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Points in canonical order.
    pub fn points(&self) -> &[PlanePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Whether the point cap cut this level short.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn contains(&self, pt: &PlanePoint) -> bool {
        let Some(first) = self.points.first() else {
            return false;
        };
        let pt = pt.in_frame(first.frame());
        let fits = |x: &CyclotomicReal| self.conductor.is_multiple_of(x.conductor());
        if fits(pt.r()) && fits(pt.s()) {
            self.keys.contains(&key_of(&pt, self.conductor))
        } else {
            self.points.iter().any(|p| p == &pt)
        }
    }
}

impl fmt::Debug for LevelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LevelSet")
            .field("level", &self.level)
            .field("points", &self.points.len())
            .field("truncated", &self.truncated)
            .finish()
    }
}

fn key_of(p: &PlanePoint, conductor: u64) -> PointKey {
    (p.r().key_at(conductor), p.s().key_at(conductor))
}

pub const DEFAULT_LEVELS: usize = 3;
pub const DEFAULT_POINT_CAP: usize = 50_000;
const CHUNK: usize = 4096;

/// `M_0, …, M_{k_max}`, computed in parallel.
///
/// If a level would exceed `point_cap` points it is cut at the cap, flagged
/// as truncated, and no further levels are produced.
pub fn generate(u: &SlopeSet, k_max: usize, point_cap: usize) -> Vec<LevelSet> {
    generate_with(u, k_max, point_cap, true)
}

pub fn generate_with(u: &SlopeSet, k_max: usize, point_cap: usize, parallel: bool) -> Vec<LevelSet> {
    assert!(point_cap >= 2, "point cap must admit the generators 0 and 1");
    let conductor = u.conductor();
    let frame = u.frame();
    let ix = Intersector::new(u.slopes());
    let m = u.len();
    let slope_pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (0..m).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();

    let zero = frame.real(CyclotomicReal::zero());
    let one = frame.real(CyclotomicReal::one());
    let mut levels = vec![LevelSet::from_points(0, conductor, vec![zero, one], false)];

    for k in 1..=k_max {
        let prev = levels.last().expect("level 0 exists");
        let cart: Vec<Cartesian> = if parallel {
            prev.points.par_iter().map(PlanePoint::to_cartesian).collect()
        } else {
            prev.points.iter().map(PlanePoint::to_cartesian).collect()
        };
        let n = cart.len();
        // (i, a, j, b) and (j, b, i, a) give the same point, and i == j only
        // reproduces the point itself
        let jobs = (0..n).flat_map(|i| {
            (i + 1..n).flat_map({
                let slope_pairs = &slope_pairs;
                move |j| slope_pairs.iter().map(move |&(a, b)| (i, a, j, b))
            })
        });

        let mut keys = prev.keys.clone();
        let mut points = prev.points.clone();
        let mut truncated = false;
        let mut batch = Vec::with_capacity(CHUNK);
        let mut jobs = jobs.peekable();
        'outer: while jobs.peek().is_some() {
            batch.clear();
            batch.extend(jobs.by_ref().take(CHUNK));
            let meet = |&(i, a, j, b): &(usize, usize, usize, usize)| {
                let c = ix.meet(&cart[i], a, &cart[j], b).expect("distinct slopes");
                let p = frame.from_cartesian(&c);
                let key = key_of(&p, conductor);
                (key, p)
            };
            let found: Vec<(PointKey, PlanePoint)> = if parallel {
                batch.par_iter().map(meet).collect()
            } else {
                batch.iter().map(meet).collect()
            };
            for (key, p) in found {
                if keys.contains(&key) {
                    continue;
                }
                if points.len() >= point_cap {
                    truncated = true;
                    break 'outer;
                }
                keys.insert(key);
                points.push(p);
            }
        }
        levels.push(LevelSet::from_points(k, conductor, points, truncated));
        if truncated {
            break;
        }
    }
    levels
}

/// Membership in the deepest generated level (levels are nested).
pub fn contains(levels: &[LevelSet], pt: &PlanePoint) -> bool {
    levels.last().is_some_and(|l| l.contains(pt))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_set_constraints() {
        assert!(matches!(
            "1/3,2/3,1/4".parse::<SlopeSet>(),
            Err(SlopeSetError::Constraint(_))
        ));
        assert!(matches!("0,1/3".parse::<SlopeSet>(), Err(SlopeSetError::Constraint(_))));
        assert!(matches!(
            "0,1/3,2/6".parse::<SlopeSet>(),
            Err(SlopeSetError::Duplicate(_))
        ));
        let u: SlopeSet = "0,1/3,1/4,1/5".parse().unwrap();
        assert_eq!(u.alpha(), Angle::pi_over(3));
        assert_eq!(u.beta(), Angle::pi_over(4));
        assert_eq!(u.others().collect::<Vec<_>>(), vec![Angle::pi_over(5)]);
        assert_eq!(u.conductor(), 120);
        assert_eq!(u.to_string(), "0,1/3,1/4,1/5");
    }

    #[test]
    fn level_zero_is_generators() {
        let u: SlopeSet = "0,1/3,2/3".parse().unwrap();
        let levels = generate(&u, 0, 10);
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0].len(), 2);
    }

    #[test]
    fn truncation_is_flagged() {
        let u: SlopeSet = "0,1/4,1/2,3/4".parse().unwrap();
        let levels = generate(&u, 3, 5);
        let last = levels.last().unwrap();
        assert!(last.truncated());
        assert_eq!(last.len(), 5);
        assert!(levels.len() <= 4);
    }
}
