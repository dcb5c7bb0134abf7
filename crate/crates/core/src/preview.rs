//! Non-certified construction with `f64` arithmetic.
//!
//! Accepts arbitrary slopes in radians and deduplicates points closer than
//! a tolerance. Nothing produced here is exact.

use std::collections::HashMap;
use std::f64::consts::PI;

use thiserror::Error;

pub const DEFAULT_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PreviewError {
    #[error("slope {0} is outside [0, π)")]
    OutOfRange(f64),
    #[error("invalid slope set: 0 ∈ U and |U| ≥ 3 required ({0})")]
    Constraint(String),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatPoint {
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug)]
pub struct PreviewLevel {
    pub level: usize,
    pub points: Vec<FloatPoint>,
    pub truncated: bool,
}

/// Spatial hash with cells of side `eps`; a point is new if no stored point
/// lies within `eps` in both coordinates.
struct Dedup {
    eps: f64,
    cells: HashMap<(i64, i64), Vec<usize>>,
}

impl Dedup {
    fn cell(&self, p: FloatPoint) -> (i64, i64) {
        ((p.x / self.eps).floor() as i64, (p.y / self.eps).floor() as i64)
    }

    fn find(&self, p: FloatPoint, points: &[FloatPoint]) -> bool {
        let (cx, cy) = self.cell(p);
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.cells.get(&(cx + dx, cy + dy)) {
                    if ids.iter().any(|&i| {
                        (points[i].x - p.x).abs() <= self.eps && (points[i].y - p.y).abs() <= self.eps
                    }) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn insert(&mut self, p: FloatPoint, idx: usize) {
        let c = self.cell(p);
        self.cells.entry(c).or_default().push(idx);
    }
}

/// Validates slopes in radians and drops near-duplicates.
pub fn normalize_slopes(slopes: &[f64], eps: f64) -> Result<Vec<f64>, PreviewError> {
    let mut out: Vec<f64> = Vec::new();
    for &s in slopes {
        if !(0.0..PI).contains(&s) {
            return Err(PreviewError::OutOfRange(s));
        }
        if !out.iter().any(|&t| (t - s).abs() <= eps) {
            out.push(s);
        }
    }
    if !out.iter().any(|&s| s.abs() <= eps) {
        return Err(PreviewError::Constraint("0 is missing".into()));
    }
    if out.len() < 3 {
        return Err(PreviewError::Constraint(format!("only {} distinct slope(s)", out.len())));
    }
    Ok(out)
}

/// Level-wise generation mirroring the exact construction.
pub fn preview_generate(
    slopes: &[f64],
    k_max: usize,
    point_cap: usize,
    eps: f64,
) -> Result<Vec<PreviewLevel>, PreviewError> {
    let slopes = normalize_slopes(slopes, eps)?;
    let dirs: Vec<(f64, f64)> = slopes.iter().map(|a| (a.cos(), a.sin())).collect();
    let mut points = vec![FloatPoint { x: 0.0, y: 0.0 }, FloatPoint { x: 1.0, y: 0.0 }];
    let mut levels = vec![PreviewLevel {
        level: 0,
        points: points.clone(),
        truncated: false,
    }];
    for k in 1..=k_max {
        let mut dedup = Dedup {
            eps,
            cells: HashMap::new(),
        };
        for (i, &p) in points.iter().enumerate() {
            dedup.insert(p, i);
        }
        let prev = points.len();
        let mut truncated = false;
        'outer: for i in 0..prev {
            for j in i + 1..prev {
                let (z1, z2) = (points[i], points[j]);
                for (a, &(ux, uy)) in dirs.iter().enumerate() {
                    for (b, &(vx, vy)) in dirs.iter().enumerate() {
                        if a == b {
                            continue;
                        }
                        let det = ux * vy - uy * vx;
                        let t = ((z2.x - z1.x) * vy - (z2.y - z1.y) * vx) / det;
                        let q = FloatPoint {
                            x: z1.x + t * ux,
                            y: z1.y + t * uy,
                        };
                        if dedup.find(q, &points) {
                            continue;
                        }
                        if points.len() >= point_cap {
                            truncated = true;
                            break 'outer;
                        }
                        dedup.insert(q, points.len());
                        points.push(q);
                    }
                }
            }
        }
        levels.push(PreviewLevel {
            level: k,
            points: points.clone(),
            truncated,
        });
        if truncated {
            break;
        }
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equilateral_first_level() {
        let levels = preview_generate(&[0.0, PI / 3.0, 2.0 * PI / 3.0], 1, 100, DEFAULT_EPSILON).unwrap();
        let l1 = &levels[1].points;
        assert_eq!(l1.len(), 4);
        let h = 3f64.sqrt() / 2.0;
        for y in [h, -h] {
            assert!(l1.iter().any(|p| (p.x - 0.5).abs() < 1e-12 && (p.y - y).abs() < 1e-12));
        }
    }

    #[test]
    fn rejects_bad_sets() {
        assert!(matches!(normalize_slopes(&[0.5, 1.0, 1.5], 1e-9), Err(PreviewError::Constraint(_))));
        assert!(matches!(normalize_slopes(&[0.0, 4.0, 1.0], 1e-9), Err(PreviewError::OutOfRange(_))));
        assert!(matches!(
            normalize_slopes(&[0.0, 1.0, 1.0 + 1e-12], 1e-9),
            Err(PreviewError::Constraint(_))
        ));
    }
}
