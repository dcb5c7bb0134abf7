//! Origami point sets `M(U)` over exact real-cyclotomic arithmetic.
//!
//! `M(U)` is the closure of `{0, 1}` under intersecting lines whose slopes
//! lie in a finite set `U ⊆ [0, π)`. The crate generates such sets level by
//! level, describes their real part `M_R`, and decides when they are rings.

pub mod angle;
pub mod arith;
pub mod construction;
pub mod geometry;
pub mod preview;
pub mod ring;

pub use angle::Angle;
pub use arith::{CyclotomicReal, Rational, RationalPolynomial};
pub use construction::{generate, LevelSet, SlopeSet};
pub use geometry::{Frame, PlanePoint};
