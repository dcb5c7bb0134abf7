//! Exact plane geometry in `(α, β)`-coordinates.
//!
//! A point `z` is addressed by its projections onto the real axis along the
//! two frame slopes: `r = α(z)` and `s = β(z)`. Cartesian coordinates are
//! derived on demand and never stored.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::angle::Angle;
use crate::arith::{sin_diff, ArithError, CyclotomicReal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("slope 0 has no projection onto the real axis")]
    ZeroSlope,
    #[error("frame slopes must be distinct and nonzero (got {0:?} twice)")]
    DegenerateFrame(Angle),
    #[error("lines with equal slope {0:?} do not meet in a single point")]
    ParallelLines(Angle),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Cotangent of a nonzero slope.
fn cot(gamma: Angle) -> Result<CyclotomicReal, GeometryError> {
    if gamma.is_zero() {
        return Err(GeometryError::ZeroSlope);
    }
    Ok(gamma.cos().checked_div(&gamma.sin())?)
}

/// The pair of slopes `(α, β)` used to address points.
pub struct Frame {
    alpha: Angle,
    beta: Angle,
    cot_alpha: CyclotomicReal,
    cot_beta: CyclotomicReal,
    /// `1 / (cot α − cot β)`
    inv_cot_gap: CyclotomicReal,
}

impl Frame {
    pub fn new(alpha: Angle, beta: Angle) -> Result<Arc<Frame>, GeometryError> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(GeometryError::ZeroSlope);
        }
        if alpha == beta {
            return Err(GeometryError::DegenerateFrame(alpha));
        }
        let cot_alpha = cot(alpha)?;
        let cot_beta = cot(beta)?;
        let inv_cot_gap = (&cot_alpha - &cot_beta).inv()?;
        Ok(Arc::new(Frame {
            alpha,
            beta,
            cot_alpha,
            cot_beta,
            inv_cot_gap,
        }))
    }

    pub fn alpha(&self) -> Angle {
        self.alpha
    }

    pub fn beta(&self) -> Angle {
        self.beta
    }

    /// `⟦r, s⟧` in this frame.
    pub fn point(self: &Arc<Self>, r: CyclotomicReal, s: CyclotomicReal) -> PlanePoint {
        PlanePoint {
            r,
            s,
            frame: Arc::clone(self),
        }
    }

    /// The real number `x` as `⟦x, x⟧`.
    pub fn real(self: &Arc<Self>, x: CyclotomicReal) -> PlanePoint {
        self.point(x.clone(), x)
    }

    /// `⟦0, 1⟧`, the intersection of the `α`-line through 0 with the
    /// `β`-line through 1.
    pub fn unit(self: &Arc<Self>) -> PlanePoint {
        self.point(CyclotomicReal::zero(), CyclotomicReal::one())
    }

    pub fn from_cartesian(self: &Arc<Self>, c: &Cartesian) -> PlanePoint {
        // α(z) = x − y·cot α, and likewise for β
        let r = &c.x - &(&c.y * &self.cot_alpha);
        let s = &c.x - &(&c.y * &self.cot_beta);
        self.point(r, s)
    }

    /// `γ(⟦0, 1⟧)`, computed by projecting the Cartesian point.
    pub fn p(self: &Arc<Self>, gamma: Angle) -> Result<CyclotomicReal, GeometryError> {
        self.unit().project(gamma)
    }

    fn same(&self, other: &Frame) -> bool {
        self.alpha == other.alpha && self.beta == other.beta
    }
}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({:?}, {:?})", self.alpha, self.beta)
    }
}

/// `x + iy` with exact real parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cartesian {
    pub x: CyclotomicReal,
    pub y: CyclotomicReal,
}

impl Cartesian {
    pub fn new(x: CyclotomicReal, y: CyclotomicReal) -> Self {
        Cartesian { x, y }
    }

    pub fn mul(&self, o: &Cartesian) -> Cartesian {
        Cartesian {
            x: &(&self.x * &o.x) - &(&self.y * &o.y),
            y: &(&self.x * &o.y) + &(&self.y * &o.x),
        }
    }

    pub fn sub(&self, o: &Cartesian) -> Cartesian {
        Cartesian {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        }
    }

    pub fn norm_sq(&self) -> CyclotomicReal {
        &self.x.square() + &self.y.square()
    }
}

/// A point of the plane in `(α, β)`-coordinates.
#[derive(Clone)]
pub struct PlanePoint {
    r: CyclotomicReal,
    s: CyclotomicReal,
    frame: Arc<Frame>,
}

impl PlanePoint {
    pub fn r(&self) -> &CyclotomicReal {
        &self.r
    }

    pub fn s(&self) -> &CyclotomicReal {
        &self.s
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn into_coords(self) -> (CyclotomicReal, CyclotomicReal) {
        (self.r, self.s)
    }

    pub fn is_real(&self) -> bool {
        self.r == self.s
    }

    pub fn to_cartesian(&self) -> Cartesian {
        let y = &(&self.s - &self.r) * &self.frame.inv_cot_gap;
        let x = &self.r + &(&y * &self.frame.cot_alpha);
        Cartesian { x, y }
    }

    /// Re-addresses the point in another frame.
    pub fn in_frame(&self, frame: &Arc<Frame>) -> PlanePoint {
        if self.frame.same(frame) {
            return self.clone();
        }
        frame.from_cartesian(&self.to_cartesian())
    }

    /// The `γ`-projection: where the line of slope `γ` through the point
    /// meets the real axis.
    pub fn project(&self, gamma: Angle) -> Result<CyclotomicReal, GeometryError> {
        if gamma == self.frame.alpha {
            return Ok(self.r.clone());
        }
        if gamma == self.frame.beta {
            return Ok(self.s.clone());
        }
        let c = self.to_cartesian();
        Ok(&c.x - &(&c.y * &cot(gamma)?))
    }

    pub fn add(&self, other: &PlanePoint) -> PlanePoint {
        let o = other.in_frame(&self.frame);
        self.frame.point(&self.r + &o.r, &self.s + &o.s)
    }

    pub fn sub(&self, other: &PlanePoint) -> PlanePoint {
        let o = other.in_frame(&self.frame);
        self.frame.point(&self.r - &o.r, &self.s - &o.s)
    }

    /// Real scalar multiple.
    pub fn scale(&self, lambda: &CyclotomicReal) -> PlanePoint {
        self.frame.point(&self.r * lambda, &self.s * lambda)
    }

    /// Complex product, returned in this point's frame.
    pub fn mul(&self, other: &PlanePoint) -> PlanePoint {
        self.frame
            .from_cartesian(&self.to_cartesian().mul(&other.to_cartesian()))
    }
}

impl PartialEq for PlanePoint {
    fn eq(&self, other: &Self) -> bool {
        if self.frame.same(&other.frame) {
            self.r == other.r && self.s == other.s
        } else {
            self.to_cartesian() == other.to_cartesian()
        }
    }
}

impl Eq for PlanePoint {}

impl fmt::Debug for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "⟦{}, {}⟧_({:?},{:?})",
            self.r, self.s, self.frame.alpha, self.frame.beta
        )
    }
}

/// `through + R·exp(i·slope)`
#[derive(Clone, Debug)]
pub struct Line {
    pub through: PlanePoint,
    pub slope: Angle,
}

impl Line {
    pub fn new(through: PlanePoint, slope: Angle) -> Self {
        Line { through, slope }
    }
}

/// `γ(z)`
pub fn project(z: &PlanePoint, gamma: Angle) -> Result<CyclotomicReal, GeometryError> {
    z.project(gamma)
}

/// `⟦r, s⟧_{α,β}`
pub fn from_coords(
    r: CyclotomicReal,
    s: CyclotomicReal,
    alpha: Angle,
    beta: Angle,
) -> Result<PlanePoint, GeometryError> {
    Ok(Frame::new(alpha, beta)?.point(r, s))
}

/// Precomputed slope data for repeated intersections.
pub struct Intersector {
    slopes: Vec<Angle>,
    cos: Vec<CyclotomicReal>,
    sin: Vec<CyclotomicReal>,
    /// `inv_cross[i][j] = 1 / sin(slope_j − slope_i)`; `None` on the diagonal.
    inv_cross: Vec<Vec<Option<CyclotomicReal>>>,
}

impl Intersector {
    pub fn new(slopes: &[Angle]) -> Self {
        let cos = slopes.iter().map(|a| a.cos()).collect();
        let sin = slopes.iter().map(|a| a.sin()).collect();
        let inv_cross = slopes
            .iter()
            .map(|&g| {
                slopes
                    .iter()
                    .map(|&d| (g != d).then(|| sin_diff(d, g).inv().expect("distinct slopes")))
                    .collect()
            })
            .collect();
        Intersector {
            slopes: slopes.to_vec(),
            cos,
            sin,
            inv_cross,
        }
    }

    pub fn slopes(&self) -> &[Angle] {
        &self.slopes
    }

    /// Meets the line through `z1` with slope index `i` and the line through
    /// `z2` with slope index `j`.
    pub fn meet(&self, z1: &Cartesian, i: usize, z2: &Cartesian, j: usize) -> Result<Cartesian, GeometryError> {
        let inv = self.inv_cross[i][j]
            .as_ref()
            .ok_or(GeometryError::ParallelLines(self.slopes[i]))?;
        // z1 + t·u_i = z2 + μ·u_j  ⇒  t = cross(z2 − z1, u_j) / cross(u_i, u_j)
        let d = z2.sub(z1);
        let cross = &(&d.x * &self.sin[j]) - &(&d.y * &self.cos[j]);
        let t = &cross * inv;
        Ok(Cartesian {
            x: &z1.x + &(&t * &self.cos[i]),
            y: &z1.y + &(&t * &self.sin[i]),
        })
    }
}

/// The unique common point of two non-parallel lines, in the frame of the
/// first line's point.
pub fn intersect(l1: &Line, l2: &Line) -> Result<PlanePoint, GeometryError> {
    if l1.slope == l2.slope {
        return Err(GeometryError::ParallelLines(l1.slope));
    }
    let ix = Intersector::new(&[l1.slope, l2.slope]);
    let c = ix.meet(&l1.through.to_cartesian(), 0, &l2.through.to_cartesian(), 1)?;
    Ok(l1.through.frame.from_cartesian(&c))
}

/// `(γ, δ)`-coordinates of a point: `(r + (s−r)p(γ), r + (s−r)p(δ))`.
pub fn to_frame(
    pt: &PlanePoint,
    gamma: Angle,
    delta: Angle,
) -> Result<(CyclotomicReal, CyclotomicReal), GeometryError> {
    if gamma == delta {
        return Err(GeometryError::DegenerateFrame(gamma));
    }
    let frame = &pt.frame;
    let d = &pt.s - &pt.r;
    let pg = frame.p(gamma)?;
    let pd = frame.p(delta)?;
    Ok((&pt.r + &(&d * &pg), &pt.r + &(&d * &pd)))
}

/// The point with `(γ, δ)`-coordinates `(r, s)`, expressed in `frame`:
/// `⟦(s·p(γ) − r·p(δ))/(p(γ) − p(δ)), (r − s + s·p(γ) − r·p(δ))/(p(γ) − p(δ))⟧`.
pub fn from_frame(
    r: &CyclotomicReal,
    s: &CyclotomicReal,
    gamma: Angle,
    delta: Angle,
    frame: &Arc<Frame>,
) -> Result<PlanePoint, GeometryError> {
    if gamma == delta {
        return Err(GeometryError::DegenerateFrame(gamma));
    }
    let pg = frame.p(gamma)?;
    let pd = frame.p(delta)?;
    let inv = (&pg - &pd).inv()?;
    let cross = &(s * &pg) - &(r * &pd);
    let a = &cross * &inv;
    let b = &(&(r - s) + &cross) * &inv;
    Ok(frame.point(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sqrt_integer;

    fn int(v: i64) -> CyclotomicReal {
        CyclotomicReal::from_integer(v)
    }

    fn frame(a: (u64, u64), b: (u64, u64)) -> Arc<Frame> {
        Frame::new(Angle::new(a.0, a.1).unwrap(), Angle::new(b.0, b.1).unwrap()).unwrap()
    }

    #[test]
    fn degenerate_frames_rejected() {
        let a = Angle::pi_over(3);
        assert_eq!(Frame::new(a, a).unwrap_err(), GeometryError::DegenerateFrame(a));
        assert_eq!(Frame::new(Angle::ZERO, a).unwrap_err(), GeometryError::ZeroSlope);
    }

    #[test]
    fn real_part_is_vertical_projection() {
        let f = frame((1, 3), (2, 3));
        let z = f.from_cartesian(&Cartesian::new(int(2), int(3)));
        assert_eq!(z.project(Angle::pi_over(2)).unwrap(), int(2));
        assert_eq!(z.project(Angle::ZERO), Err(GeometryError::ZeroSlope));
    }

    #[test]
    fn unit_point_for_sixty_degree_frame() {
        // ⟦0,1⟧ for (π/3, 2π/3) is 1/2 + (√3/2)i
        let f = frame((1, 3), (2, 3));
        let c = f.unit().to_cartesian();
        let half = CyclotomicReal::from_rational(&num_rational::BigRational::new(1.into(), 2.into()));
        assert_eq!(c.x, half);
        assert_eq!(c.y, &sqrt_integer(3) * &half);
    }

    #[test]
    fn intersection_below_axis() {
        // 0 + R·e^{2πi/3} meets 1 + R·e^{iπ/3} at 1/2 − (√3/2)i
        let f = frame((1, 3), (2, 3));
        let l1 = Line::new(f.real(int(0)), Angle::new(2, 3).unwrap());
        let l2 = Line::new(f.real(int(1)), Angle::pi_over(3));
        let z = intersect(&l1, &l2).unwrap();
        let c = z.to_cartesian();
        let half = CyclotomicReal::from_rational(&num_rational::BigRational::new(1.into(), 2.into()));
        assert_eq!(c.x, half);
        assert_eq!(c.y, -(&sqrt_integer(3) * &half));
        assert!(matches!(
            intersect(&l1, &Line::new(f.real(int(5)), Angle::new(2, 3).unwrap())),
            Err(GeometryError::ParallelLines(_))
        ));
    }

    #[test]
    fn vertical_line_meets_axis() {
        let f = frame((1, 4), (1, 2));
        let axis = Line::new(f.real(int(0)), Angle::ZERO);
        let vertical = Line::new(f.from_cartesian(&Cartesian::new(int(1), int(1))), Angle::pi_over(2));
        assert_eq!(intersect(&axis, &vertical).unwrap(), f.real(int(1)));
    }

    #[test]
    fn frame_transform_of_unit_gives_p_values() {
        let f = frame((1, 3), (1, 4));
        let (g, d) = (Angle::pi_over(5), Angle::new(2, 3).unwrap());
        let (a, b) = to_frame(&f.unit(), g, d).unwrap();
        assert_eq!(a, f.p(g).unwrap());
        assert_eq!(b, f.p(d).unwrap());
        assert!(matches!(to_frame(&f.unit(), g, g), Err(GeometryError::DegenerateFrame(_))));
    }
}
