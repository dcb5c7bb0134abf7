//! Serializable output records.
//!
//! Exact values travel as canonical coefficient vectors over `Q(ζ_n)`
//! (rationals as strings) together with the conductor `n`, so a record can be
//! turned back into the identical element.

use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use origami_core::geometry::Frame;
use origami_core::{CyclotomicReal, PlanePoint};
use serde::{Deserialize, Serialize};

use crate::decimal;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

fn coeff_strings(x: &CyclotomicReal) -> Vec<String> {
    x.coeffs().iter().map(|c| c.to_string()).collect()
}

fn parse_coeffs(conductor: u64, coeffs: &[String]) -> Result<CyclotomicReal, CliError> {
    let parsed = coeffs
        .iter()
        .map(|c| BigRational::from_str(c).map_err(|_| CliError::Record(format!("bad coefficient `{}`", c))))
        .collect::<Result<Vec<_>, _>>()?;
    CyclotomicReal::from_coeffs(conductor, &parsed).map_err(|e| CliError::Record(e.to_string()))
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ExactReal {
    pub conductor: u64,
    pub coeffs: Vec<String>,
}

impl ExactReal {
    pub fn new(x: &CyclotomicReal) -> Self {
        ExactReal { conductor: x.conductor(), coeffs: coeff_strings(x) }
    }

    pub fn value(&self) -> Result<CyclotomicReal, CliError> {
        parse_coeffs(self.conductor, &self.coeffs)
    }
}

/// An exact value with its decimal rendering.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ValueRecord {
    pub decimal: String,
    pub exact: ExactReal,
}

impl ValueRecord {
    pub fn new(x: &CyclotomicReal, digits: usize) -> Self {
        ValueRecord { decimal: decimal::real(x, digits), exact: ExactReal::new(x) }
    }
}

/// One constructed point: decimal Cartesian position plus exact frame
/// coordinates `(r, s)` over a shared conductor.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PointRecord {
    pub level: usize,
    pub re: String,
    pub im: String,
    pub conductor: u64,
    pub r: Vec<String>,
    pub s: Vec<String>,
}

impl PointRecord {
    pub fn new(pt: &PlanePoint, level: usize, digits: usize) -> Self {
        let c = pt.to_cartesian();
        let m = pt.r().conductor().lcm(&pt.s().conductor());
        PointRecord {
            level,
            re: decimal::real(&c.x, digits),
            im: decimal::real(&c.y, digits),
            conductor: m,
            r: coeff_strings(&pt.r().promote(m)),
            s: coeff_strings(&pt.s().promote(m)),
        }
    }

    pub fn to_point(&self, frame: &Arc<Frame>) -> Result<PlanePoint, CliError> {
        Ok(frame.point(parse_coeffs(self.conductor, &self.r)?, parse_coeffs(self.conductor, &self.s)?))
    }
}

/// A non-certified point from the float preview.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct FloatRecord {
    pub level: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct FrameRecord {
    pub alpha: String,
    pub beta: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct LevelSummary {
    pub level: usize,
    pub points: usize,
    pub truncated: bool,
}

/// JSON document written by `generate`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct GenerateDoc {
    pub schema: u32,
    pub command: String,
    pub certified: bool,
    pub slopes: Vec<String>,
    pub frame: FrameRecord,
    pub levels: Vec<LevelSummary>,
    pub points: Vec<PointRecord>,
}

/// JSON document written by `generate --float-preview`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct PreviewDoc {
    pub schema: u32,
    pub command: String,
    pub certified: bool,
    pub slopes: Vec<f64>,
    pub epsilon: f64,
    pub levels: Vec<LevelSummary>,
    pub points: Vec<FloatRecord>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use origami_core::arith::sqrt_integer;
    use origami_core::Angle;

    #[test]
    fn exact_real_round_trip() {
        let x = sqrt_integer(3) + CyclotomicReal::from_integer(2);
        let rec = ExactReal::new(&x);
        assert_eq!(rec.value().unwrap(), x);
        let bad = ExactReal { conductor: rec.conductor, coeffs: vec!["1".into()] };
        assert!(bad.value().is_err());
    }

    #[test]
    fn point_round_trip_with_mixed_conductors() {
        let f = Frame::new(Angle::new(1, 3).unwrap(), Angle::new(1, 4).unwrap()).unwrap();
        let pt = f.point(sqrt_integer(3), sqrt_integer(2));
        let rec = PointRecord::new(&pt, 2, 15);
        assert_eq!(rec.r.len(), rec.s.len());
        assert_eq!(rec.to_point(&f).unwrap(), pt);
    }
}
