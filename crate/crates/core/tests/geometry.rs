mod common;

use common::*;
use origami_core::arith::sqrt_integer;
use origami_core::geometry::{from_coords, from_frame, intersect, project, to_frame, Frame, GeometryError, Line};
use origami_core::ring::p_value;
use origami_core::{Angle, SlopeSet};
use proptest::prelude::*;

fn frame(a: (u64, u64), b: (u64, u64)) -> std::sync::Arc<Frame> {
    Frame::new(angle(a.0, a.1), angle(b.0, b.1)).unwrap()
}

#[test]
fn vertical_projection_is_real_part() {
    // 2 + 3i in the (π/4, π/3) frame
    let f = frame((1, 4), (1, 3));
    let z = f.from_cartesian(&origami_core::geometry::Cartesian::new(int(2), int(3)));
    assert_eq!(project(&z, angle(1, 2)).unwrap(), int(2));
    assert_eq!(project(&z, Angle::ZERO), Err(GeometryError::ZeroSlope));
}

#[test]
fn real_points_project_to_themselves() {
    let f = frame((1, 5), (2, 3));
    let x = sqrt_integer(5) + q(1, 3);
    for g in universe_24() {
        assert_eq!(project(&f.real(x.clone()), g).unwrap(), x);
    }
}

#[test]
fn unit_splits_into_frame_vectors() {
    let (a, b) = (angle(1, 3), angle(3, 4));
    let sum = from_coords(int(1), int(0), a, b)
        .unwrap()
        .add(&from_coords(int(0), int(1), a, b).unwrap());
    assert!(sum.is_real());
    assert_eq!(sum.r(), &int(1));
}

#[test]
fn sixty_degree_unit_point() {
    // oracle: float solve of λ·e^{iπ/3} = 1 + μ·e^{2iπ/3}
    let (x, y) = float_meet((0.0, 0.0), std::f64::consts::FRAC_PI_3, (1.0, 0.0), 2.0 * std::f64::consts::FRAC_PI_3);
    let z = from_coords(int(0), int(1), angle(1, 3), angle(2, 3)).unwrap();
    let c = z.to_cartesian();
    assert_eq!(c.x, q(1, 2));
    assert_eq!(c.y, sqrt_integer(3) * q(1, 2));
    assert!(close(c.x.to_f64(), x) && close(c.y.to_f64(), y));
}

#[test]
fn intersection_below_the_axis() {
    let f = frame((1, 3), (2, 3));
    let l1 = Line::new(f.real(int(0)), angle(2, 3));
    let l2 = Line::new(f.real(int(1)), angle(1, 3));
    let c = intersect(&l1, &l2).unwrap().to_cartesian();
    assert_eq!(c.x, q(1, 2));
    assert_eq!(c.y, sqrt_integer(3) * q(-1, 2));
    let vertical = Line::new(f.from_cartesian(&origami_core::geometry::Cartesian::new(int(1), int(1))), angle(1, 2));
    let axis = Line::new(f.real(int(0)), Angle::ZERO);
    assert_eq!(intersect(&axis, &vertical).unwrap(), f.real(int(1)));
    assert!(matches!(intersect(&l1, &l1), Err(GeometryError::ParallelLines(_))));
}

#[test]
fn frame_round_trips_over_universe() {
    let u = universe_24();
    let mut r = rng(11);
    let base = frame((1, 4), (1, 3));
    let pts: Vec<_> = (0..2).map(|_| random_point(&mut r, &base, &u)).collect();
    for &g in &u {
        for &d in &u {
            if g == d {
                assert!(matches!(to_frame(&pts[0], g, d), Err(GeometryError::DegenerateFrame(_))));
                continue;
            }
            let target = Frame::new(g, d).unwrap();
            for pt in &pts {
                let (rr, ss) = to_frame(pt, g, d).unwrap();
                // the transformed coordinates address the same point
                assert_eq!(target.point(rr.clone(), ss.clone()), *pt);
                assert_eq!(&from_frame(&rr, &ss, g, d, &base).unwrap(), pt);
                // and the other direction: start from (γ,δ)-coordinates
                let back = from_frame(pt.r(), pt.s(), g, d, &base).unwrap();
                let (r2, s2) = to_frame(&back, g, d).unwrap();
                assert_eq!((&r2, &s2), (pt.r(), pt.s()));
            }
        }
    }
}

#[test]
fn unit_in_other_frames_gives_p_values() {
    let u: SlopeSet = "0,1/3,1/4,1/5,2/3".parse().unwrap();
    let e = u.frame().unit();
    for g in u.nonzero() {
        for d in u.nonzero() {
            if g != d {
                let (pg, pd) = to_frame(&e, g, d).unwrap();
                assert_eq!(pg, p_value(&u, g).unwrap());
                assert_eq!(pd, p_value(&u, d).unwrap());
            }
        }
    }
}

fn arb_case() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projection_is_linear_and_idempotent(seed in arb_case()) {
        let u = universe_24();
        let mut r = rng(seed);
        let a = random_angle(&mut r, &[3, 4, 6, 12]);
        let mut b = random_angle(&mut r, &[3, 4, 6, 12]);
        while b == a {
            b = random_angle(&mut r, &[3, 4, 6, 12]);
        }
        let f = Frame::new(a, b).unwrap();
        let w = random_point(&mut r, &f, &u);
        let z = random_point(&mut r, &f, &u);
        let lambda = random_real(&mut r, &u);
        let g = random_angle(&mut r, &[2, 3, 4, 6, 12]);
        let pw = project(&w, g).unwrap();
        let pz = project(&z, g).unwrap();
        prop_assert_eq!(project(&w.add(&z), g).unwrap(), &pw + &pz);
        prop_assert_eq!(project(&w.scale(&lambda), g).unwrap(), &lambda * &pw);
        prop_assert_eq!(project(&f.real(pw.clone()), g).unwrap(), pw);
    }

    #[test]
    fn realness_iff_equal_coordinates(seed in arb_case()) {
        let u = universe_24();
        let mut r = rng(seed);
        let f = frame((1, 6), (3, 4));
        let x = random_real(&mut r, &u);
        let y = random_real(&mut r, &u);
        let pt = f.point(x.clone(), y.clone());
        prop_assert_eq!(pt.is_real(), x == y);
        prop_assert_eq!(pt.to_cartesian().y.is_zero(), x == y);
    }

    #[test]
    fn intersecting_axis_lines_gives_coordinates(seed in arb_case()) {
        let u = universe_24();
        let mut r = rng(seed);
        let (a, b) = (angle(1, 4), angle(5, 6));
        let f = Frame::new(a, b).unwrap();
        let x = random_real(&mut r, &u);
        let y = random_real(&mut r, &u);
        let meet = intersect(&Line::new(f.real(x.clone()), a), &Line::new(f.real(y.clone()), b)).unwrap();
        prop_assert_eq!(meet, from_coords(x, y, a, b).unwrap());
    }
}
