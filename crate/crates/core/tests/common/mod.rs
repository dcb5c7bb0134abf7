#![allow(dead_code)]

use num_rational::BigRational;
use origami_core::arith::CyclotomicReal;
use origami_core::construction::SlopeSet;
use origami_core::geometry::Frame;
use origami_core::{Angle, PlanePoint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> CyclotomicReal {
    CyclotomicReal::from_rational(&BigRational::new(n.into(), d.into()))
}

pub fn int(n: i64) -> CyclotomicReal {
    CyclotomicReal::from_integer(n)
}

pub fn angle(k: u64, n: u64) -> Angle {
    Angle::new(k, n).unwrap()
}

/// Nonzero slopes whose sine and cosine live in conductor ≤ 24.
pub fn universe_24() -> Vec<Angle> {
    let mut out: Vec<Angle> = (1..12).map(|k| angle(k, 12)).collect();
    out.sort();
    out
}

pub fn random_angle(rng: &mut ChaCha8Rng, dens: &[u64]) -> Angle {
    let n = *dens.choose(rng).unwrap();
    angle(rng.gen_range(1..n), n)
}

/// `size` distinct slopes starting with 0, drawn from the given denominators.
pub fn random_slope_set(rng: &mut ChaCha8Rng, size: usize, dens: &[u64]) -> SlopeSet {
    let mut slopes = vec![Angle::ZERO];
    while slopes.len() < size {
        let a = random_angle(rng, dens);
        if !slopes.contains(&a) {
            slopes.push(a);
        }
    }
    SlopeSet::new(slopes).unwrap()
}

/// Recipe for a random real: `c0 + Σ c_i·cos(a_i) + Σ d_i·sin(b_i)`, kept so a
/// float oracle can evaluate it independently.
#[derive(Clone, Debug)]
pub struct Recipe {
    pub c0: (i64, i64),
    pub cos_terms: Vec<(i64, Angle)>,
    pub sin_terms: Vec<(i64, Angle)>,
}

impl Recipe {
    pub fn random(rng: &mut ChaCha8Rng, angles: &[Angle]) -> Self {
        let terms = |rng: &mut ChaCha8Rng| {
            (0..rng.gen_range(0..3))
                .map(|_| (rng.gen_range(-5..=5), *angles.choose(rng).unwrap()))
                .collect::<Vec<_>>()
        };
        Recipe {
            c0: (rng.gen_range(-9..=9), rng.gen_range(1..=4)),
            cos_terms: terms(rng),
            sin_terms: terms(rng),
        }
    }

    pub fn exact(&self) -> CyclotomicReal {
        let mut x = q(self.c0.0, self.c0.1);
        for &(c, a) in &self.cos_terms {
            x = x + int(c) * a.cos();
        }
        for &(c, a) in &self.sin_terms {
            x = x + int(c) * a.sin();
        }
        x
    }

    pub fn float(&self) -> f64 {
        let mut x = self.c0.0 as f64 / self.c0.1 as f64;
        for &(c, a) in &self.cos_terms {
            x += c as f64 * a.radians().cos();
        }
        for &(c, a) in &self.sin_terms {
            x += c as f64 * a.radians().sin();
        }
        x
    }
}

pub fn random_real(rng: &mut ChaCha8Rng, angles: &[Angle]) -> CyclotomicReal {
    Recipe::random(rng, angles).exact()
}

pub fn random_point(rng: &mut ChaCha8Rng, frame: &std::sync::Arc<Frame>, angles: &[Angle]) -> PlanePoint {
    frame.point(random_real(rng, angles), random_real(rng, angles))
}

/// Float intersection of `z1 + R·e^{ia}` and `z2 + R·e^{ib}`.
pub fn float_meet(z1: (f64, f64), a: f64, z2: (f64, f64), b: f64) -> (f64, f64) {
    let (ux, uy) = (a.cos(), a.sin());
    let (vx, vy) = (b.cos(), b.sin());
    let det = ux * vy - uy * vx;
    let t = ((z2.0 - z1.0) * vy - (z2.1 - z1.1) * vx) / det;
    (z1.0 + t * ux, z1.1 + t * uy)
}

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}
