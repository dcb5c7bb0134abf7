mod common;

use std::cmp::Ordering;

use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use origami_core::arith::lattice::combine_generators;
use origami_core::arith::{
    annihilates, cos_pi, cyclotomic_polynomial, lattice_member, minimal_polynomial, sin_pi, sqrt_integer,
    sqrt_rational, CyclotomicReal, RationalPolynomial,
};
use origami_core::Angle;
use proptest::prelude::*;

fn phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

fn small_angles() -> Vec<Angle> {
    [(1, 3), (1, 4), (1, 5), (2, 5), (1, 6), (1, 8), (3, 10), (1, 12)]
        .iter()
        .map(|&(k, n)| angle(k, n))
        .collect()
}

#[test]
fn pythagoras_exhaustive_to_24() {
    for n in 1..=24u64 {
        for k in 0..2 * n as i64 {
            let c = cos_pi(k, n);
            let s = sin_pi(k, n);
            assert!((c.square() + s.square()).is_one(), "k={} n={}", k, n);
        }
    }
}

#[test]
fn cyclotomic_polynomial_degree_is_totient() {
    for n in 1..=40 {
        assert_eq!(cyclotomic_polynomial(n).len() as u64 - 1, phi(n));
    }
}

#[test]
fn square_roots() {
    for m in [2u64, 3, 5, 6, 7, 10, 12, 15] {
        let r = sqrt_integer(m);
        assert_eq!(r.square(), int(m as i64));
        assert_eq!(r.sign(), Ordering::Greater);
        assert!(close(r.to_f64(), (m as f64).sqrt()));
    }
    let r = sqrt_rational(&BigRational::new(3.into(), 4.into())).unwrap();
    assert_eq!(r.square(), q(3, 4));
    assert!(sqrt_rational(&BigRational::new((-1).into(), 1.into())).is_none());
}

#[test]
fn minimal_polynomial_of_cos_two_pi_over_seven() {
    // oracle: expand ∏ (X − cos(2πk/7)) over the three conjugates in floats
    let roots: Vec<f64> = (1..=3)
        .map(|k| (2.0 * std::f64::consts::PI * k as f64 / 7.0).cos())
        .collect();
    let mut coeffs = vec![1.0f64];
    for r in roots {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        coeffs = next;
    }
    let mu = minimal_polynomial(&cos_pi(2, 7));
    assert_eq!(mu.degree(), Some(3));
    for (i, c) in coeffs.iter().enumerate() {
        let exact = mu.coeff(i);
        assert!(close(exact.to_f64().unwrap(), *c), "coefficient {}", i);
        // denominators divide 8
        assert!((BigInt::from(8) % exact.denom()).is_zero());
    }
}

#[test]
fn minimal_polynomial_of_rational_is_linear() {
    let mu = minimal_polynomial(&q(-7, 3));
    assert_eq!(mu, RationalPolynomial::from_fractions(&[(7, 3), (1, 1)]));
}

fn arb_recipe() -> impl Strategy<Value = Recipe> {
    any::<u64>().prop_map(|seed| Recipe::random(&mut rng(seed), &small_angles()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sign_matches_float_oracle(r in arb_recipe()) {
        let x = r.exact();
        let f = r.float();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.sign(), if f > 0.0 { Ordering::Greater } else { Ordering::Less });
            prop_assert!(close(x.to_f64(), f));
        }
        let iv = x.enclose(64);
        let lo = iv.lo().to_f64().unwrap();
        let hi = iv.hi().to_f64().unwrap();
        prop_assert!(lo - 1e-12 <= f && f <= hi + 1e-12);
    }

    #[test]
    fn ring_identities(a in arb_recipe(), b in arb_recipe(), c in arb_recipe()) {
        let (x, y, z) = (a.exact(), b.exact(), c.exact());
        prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        prop_assert!((&x - &x).is_zero());
        if !y.is_zero() {
            prop_assert_eq!(&(&x * &y) / &y, x.clone());
            prop_assert!((&y * &y.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_stable_under_promotion(a in arb_recipe(), k in 1u64..4) {
        let x = a.exact();
        let m = x.conductor() * k;
        let p = x.promote(m);
        prop_assert_eq!(&p, &x);
        prop_assert_eq!(p.key_at(m * 2), x.key_at(m * 2));
    }

    #[test]
    fn minimal_polynomial_annihilates_and_divides(a in arb_recipe()) {
        let x = a.exact();
        let mu = minimal_polynomial(&x);
        prop_assert!(annihilates(&mu, &x));
        prop_assert!(mu.is_monic());
        let d = mu.degree().unwrap() as u64;
        // the real subfield has degree φ(N)/2 (or 1), and Q(x) sits inside it
        let real_degree = (phi(x.conductor()) / 2).max(1);
        prop_assert_eq!(real_degree % d, 0);
    }

    #[test]
    fn lattice_membership_matches_cramer(
        a in prop::collection::vec(-6i64..=6, 9),
        t in prop::collection::vec(-20i64..=20, 3),
        scale in 1i64..4,
    ) {
        // columns of a 3×3 integer matrix, scaled down by `scale`
        let cols: Vec<Vec<BigRational>> = (0..3)
            .map(|j| (0..3).map(|i| BigRational::new(a[3 * j + i].into(), scale.into())).collect())
            .collect();
        let target: Vec<BigRational> = t.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let m = |i: usize, j: usize| a[3 * j + i] as i128;
        let det3 = |f: &dyn Fn(usize, usize) -> i128| {
            f(0, 0) * (f(1, 1) * f(2, 2) - f(1, 2) * f(2, 1))
                - f(0, 1) * (f(1, 0) * f(2, 2) - f(1, 2) * f(2, 0))
                + f(0, 2) * (f(1, 0) * f(2, 1) - f(1, 1) * f(2, 0))
        };
        let det = det3(&m);
        prop_assume!(det != 0);
        // Cramer on A·c = scale·t
        let integral = (0..3).all(|k| {
            let mk = |i: usize, j: usize| if j == k { scale as i128 * t[i] as i128 } else { m(i, j) };
            det3(&mk) % det == 0
        });
        let w = lattice_member(&target, &cols);
        prop_assert_eq!(w.is_some(), integral);
        if let Some(w) = w {
            prop_assert_eq!(combine_generators(&w, &cols), target);
        }
    }

    #[test]
    fn lattice_membership_matches_brute_force(
        g in prop::collection::vec((-5i64..=5, -5i64..=5), 3),
        t in (-8i64..=8, -8i64..=8),
    ) {
        // rank-deficient and redundant generating sets in Z²
        let gens: Vec<Vec<BigRational>> = g
            .iter()
            .map(|&(x, y)| vec![BigRational::from_integer(x.into()), BigRational::from_integer(y.into())])
            .collect();
        let target = vec![BigRational::from_integer(t.0.into()), BigRational::from_integer(t.1.into())];
        let mut brute = false;
        'search: for c0 in -12i64..=12 {
            for c1 in -12i64..=12 {
                for c2 in -12i64..=12 {
                    let x = c0 * g[0].0 + c1 * g[1].0 + c2 * g[2].0;
                    let y = c0 * g[0].1 + c1 * g[1].1 + c2 * g[2].1;
                    if (x, y) == t {
                        brute = true;
                        break 'search;
                    }
                }
            }
        }
        let w = lattice_member(&target, &gens);
        if brute {
            prop_assert!(w.is_some());
        }
        if let Some(w) = w {
            prop_assert_eq!(combine_generators(&w, &gens), target);
        }
    }
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(CyclotomicReal::zero().inv().is_err());
    assert!(int(1).checked_div(&(sqrt_integer(2) - sqrt_integer(2))).is_err());
}
