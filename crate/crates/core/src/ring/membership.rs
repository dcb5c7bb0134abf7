//! Semi-decision of membership in `M_R = Z[Δ, Δ⁻¹]`.
//!
//! Write `p_1, …, p_k` for the values `p(γ)` of the slopes other than
//! `0, α, β`, and `d_1, …, d_m` for the non-unit differences in `Δ`. Then
//! `M_R = Z[p_1, …, p_k][1/d_1, …, 1/d_m]`, so `x ∈ M_R` exactly when
//! `x·∏ d_j^{e_j}` is an integer polynomial in the `p_i` for some exponents.
//! The polynomials of total degree at most `D` form a lattice `L_D` inside
//! the `Q`-span of `Q(Δ)`; the search tests the scaled element against
//! `L_D` for bounded exponents and degrees.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::angle::Angle;
use crate::arith::linalg::EchelonSpace;
use crate::arith::{lattice_member, CyclotomicReal, Lattice, Payload};
use crate::construction::SlopeSet;

use super::p_in_frame;

/// Limits of the witness search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Largest exponent tried on each denominator.
    pub max_den_exp: u32,
    /// Largest total degree of the numerator polynomial.
    pub max_num_deg: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_den_exp: 8,
            max_num_deg: 32,
        }
    }
}

/// Integer polynomial in `k` variables, stored sparsely by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(vars: usize) -> Self {
        IntPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars], c);
        }
        p
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn from_univariate(coeffs: &[i64]) -> Self {
        let mut p = Self::zero(1);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                p.terms.insert(vec![i as u32], BigInt::from(c));
            }
        }
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// Ascending coefficients of a univariate polynomial.
    pub fn univariate_coeffs(&self) -> Option<Vec<BigInt>> {
        if self.vars != 1 {
            return None;
        }
        let n = self.total_degree().map_or(0, |d| d as usize + 1);
        let mut out = vec![BigInt::zero(); n];
        for (m, c) in &self.terms {
            out[m[0] as usize] = c.clone();
        }
        Some(out)
    }

    fn add_term(&mut self, m: &[u32], c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.to_vec()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(m);
        }
    }

    pub fn eval(&self, xs: &[CyclotomicReal]) -> CyclotomicReal {
        assert_eq!(xs.len(), self.vars, "wrong number of values");
        let mut acc = CyclotomicReal::zero();
        for (m, c) in &self.terms {
            let mut t = CyclotomicReal::from_bigint(c.clone());
            for (x, &e) in xs.iter().zip(m) {
                if e > 0 {
                    t = t * x.pow(e);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Renders with the given variable names, highest degree first.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono: Vec<String> = m
                .iter()
                .zip(names)
                .filter(|(e, _)| **e > 0)
                .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{}^{}", n, e) })
                .collect();
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&format!("{}*", a));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    fn default_names(&self) -> Vec<String> {
        if self.vars == 1 {
            vec!["p".into()]
        } else {
            (1..=self.vars).map(|i| format!("p{}", i)).collect()
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&self.default_names()))
    }
}

impl Payload for IntPoly {
    fn combine(a: &Self, x: &BigInt, b: &Self, y: &BigInt) -> Self {
        let mut out = IntPoly::zero(a.vars.max(b.vars));
        for (m, c) in &a.terms {
            out.add_term(m, c * x);
        }
        for (m, c) in &b.terms {
            out.add_term(m, c * y);
        }
        out
    }

    fn add_scaled(&mut self, k: &BigInt, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m, c * k);
        }
    }
}

/// A non-unit difference `p(minuend) − p(subtrahend)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denominator {
    pub minuend: Angle,
    pub subtrahend: Angle,
    pub value: CyclotomicReal,
}

/// Certificate for `x ∈ M_R`: `x·∏ d_j^{e_j} = f(p_1, …, p_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// `(γ, p(γ))` for each polynomial variable.
    pub generators: Vec<(Angle, CyclotomicReal)>,
    pub denominators: Vec<Denominator>,
    pub exponents: Vec<u32>,
    pub numerator: IntPoly,
}

impl Witness {
    /// `∏ d_j^{e_j}`
    pub fn denominator_product(&self) -> CyclotomicReal {
        self.denominators
            .iter()
            .zip(&self.exponents)
            .fold(CyclotomicReal::one(), |acc, (d, &e)| acc * d.value.pow(e))
    }

    pub fn numerator_value(&self) -> CyclotomicReal {
        let xs: Vec<CyclotomicReal> = self.generators.iter().map(|(_, p)| p.clone()).collect();
        self.numerator.eval(&xs)
    }

    /// Re-evaluates the certificate exactly.
    pub fn verify(&self, x: &CyclotomicReal) -> bool {
        self.numerator_value() == x * &self.denominator_product()
    }

    pub fn variable_names(&self) -> Vec<String> {
        if self.generators.len() == 1 {
            vec!["p".into()]
        } else {
            (1..=self.generators.len()).map(|i| format!("p{}", i)).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// `|U| = 3`, where `M_R = Z`, and the value is rational but not an integer.
    NotInteger,
    /// The value lies outside `Q(Δ)`, a field of the given degree.
    OutsideField { field_degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    ProvenIn(Witness),
    ProvenNotIn(Certificate),
    Unknown(SearchBounds),
}

impl MembershipVerdict {
    pub fn is_in(&self) -> bool {
        matches!(self, MembershipVerdict::ProvenIn(_))
    }

    pub fn is_not_in(&self) -> bool {
        matches!(self, MembershipVerdict::ProvenNotIn(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, MembershipVerdict::Unknown(_))
    }

    pub fn decided(&self) -> Option<bool> {
        match self {
            MembershipVerdict::ProvenIn(_) => Some(true),
            MembershipVerdict::ProvenNotIn(_) => Some(false),
            MembershipVerdict::Unknown(_) => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            MembershipVerdict::ProvenIn(_) => "ProvenIn",
            MembershipVerdict::ProvenNotIn(_) => "ProvenNotIn",
            MembershipVerdict::Unknown(_) => "Unknown",
        }
    }
}

/// Columns are the coordinates of `z·b_j` for the field basis `b_j`.
type MulMatrix = Vec<Vec<BigRational>>;

fn apply(m: &MulMatrix, v: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); v.len()];
    for (c, col) in v.iter().zip(m) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(col) {
            if !x.is_zero() {
                *o += c * x;
            }
        }
    }
    out
}

/// Membership oracle for a fixed `U`, reusable across queries.
pub struct MrContext {
    conductor: u64,
    generators: Vec<(Angle, CyclotomicReal)>,
    denominators: Vec<Denominator>,
    basis: Vec<CyclotomicReal>,
    space: EchelonSpace,
    gen_mats: Vec<MulMatrix>,
    den_mats: Vec<MulMatrix>,
    /// `L_0, L_1, …`, extended on demand.
    lattices: Mutex<Vec<Arc<Lattice<()>>>>,
}

impl MrContext {
    pub fn new(u: &SlopeSet) -> Self {
        let conductor = u.conductor();
        let (alpha, beta) = (u.alpha(), u.beta());
        let mut order = vec![alpha, beta];
        order.extend(u.others());
        let pv: Vec<CyclotomicReal> = order.iter().map(|&g| p_in_frame(alpha, beta, g)).collect();
        let generators: Vec<(Angle, CyclotomicReal)> =
            order[2..].iter().copied().zip(pv[2..].iter().cloned()).collect();

        let one = CyclotomicReal::one();
        let minus_one = -&one;
        let mut denominators: Vec<Denominator> = Vec::new();
        for j in 1..order.len() {
            for i in 0..j {
                let value = &pv[j] - &pv[i];
                let is_unit = value == one || value == minus_one;
                let seen = denominators
                    .iter()
                    .any(|d| d.value == value || d.value == -&value);
                if !is_unit && !seen {
                    denominators.push(Denominator {
                        minuend: order[j],
                        subtrahend: order[i],
                        value,
                    });
                }
            }
        }

        // Q(Δ) = Q(p_1, …, p_k): close {1} under multiplication by the p_i
        let dim = crate::arith::euler_phi(conductor) as usize;
        let mut space = EchelonSpace::new(dim);
        let mut basis = Vec::new();
        let mut queue = VecDeque::from([one]);
        while let Some(x) = queue.pop_front() {
            let v = x.promote(conductor).coeffs();
            if space.contains(&v) {
                continue;
            }
            space.insert(&v).expect("independent");
            for (_, p) in &generators {
                queue.push_back(&x * p);
            }
            basis.push(x);
        }

        let mut ctx = MrContext {
            conductor,
            generators,
            denominators,
            basis,
            space,
            gen_mats: Vec::new(),
            den_mats: Vec::new(),
            lattices: Mutex::new(Vec::new()),
        };
        ctx.gen_mats = ctx.generators.iter().map(|(_, p)| ctx.mul_matrix(p)).collect();
        ctx.den_mats = ctx.denominators.iter().map(|d| ctx.mul_matrix(&d.value)).collect();
        ctx
    }

    fn mul_matrix(&self, z: &CyclotomicReal) -> MulMatrix {
        self.basis
            .iter()
            .map(|b| self.coords(&(z * b)).expect("Q(Δ) is closed under multiplication"))
            .collect()
    }

    /// `[Q(Δ) : Q]`
    pub fn field_degree(&self) -> usize {
        self.basis.len()
    }

    pub fn generators(&self) -> &[(Angle, CyclotomicReal)] {
        &self.generators
    }

    pub fn denominators(&self) -> &[Denominator] {
        &self.denominators
    }

    /// Coordinates over the basis of `Q(Δ)`, or `None` outside it.
    pub fn coords(&self, x: &CyclotomicReal) -> Option<Vec<BigRational>> {
        if self.conductor.is_multiple_of(x.conductor()) {
            return self.space.solve(&x.promote(self.conductor).coeffs());
        }
        let m = self.conductor.lcm(&x.conductor());
        let mut space = EchelonSpace::new(crate::arith::euler_phi(m) as usize);
        for b in &self.basis {
            space.insert(&b.promote(m).coeffs()).expect("independent");
        }
        space.solve(&x.promote(m).coeffs())
    }

    fn lattice(&self, degree: u32) -> Arc<Lattice<()>> {
        let mut lats = self.lattices.lock().expect("lattice cache poisoned");
        let d = self.basis.len();
        if lats.is_empty() {
            let mut l0 = Lattice::new(d);
            l0.insert(&self.unit_coords(), ());
            lats.push(Arc::new(l0));
        }
        while lats.len() <= degree as usize {
            let prev = lats.last().expect("nonempty").clone();
            let mut next = (*prev).clone();
            for (row, _) in prev.basis() {
                for m in &self.gen_mats {
                    next.insert(&apply(m, &row), ());
                }
            }
            lats.push(Arc::new(next));
        }
        lats[degree as usize].clone()
    }

    fn unit_coords(&self) -> Vec<BigRational> {
        let mut unit = vec![BigRational::zero(); self.basis.len()];
        unit[0] = BigRational::one();
        unit
    }

    /// Exponent vectors of total degree at most `degree` with their coordinates.
    fn monomials(&self, degree: u32) -> Vec<(Vec<u32>, Vec<BigRational>)> {
        let k = self.generators.len();
        let mut out = vec![(vec![0; k], self.unit_coords())];
        let mut frontier = 0;
        for _ in 0..degree {
            let end = out.len();
            for idx in frontier..end {
                let (m, c) = out[idx].clone();
                // extend only from the last nonzero variable on, so each
                // monomial appears once
                let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
                for i in start..k {
                    let mut m2 = m.clone();
                    m2[i] += 1;
                    out.push((m2, apply(&self.gen_mats[i], &c)));
                }
            }
            frontier = end;
        }
        out
    }

    /// Integer polynomial of total degree at most `degree` with value `y`.
    fn numerator(&self, y: &[BigRational], degree: u32) -> Option<IntPoly> {
        let monos = self.monomials(degree);
        let gens: Vec<Vec<BigRational>> = monos.iter().map(|(_, c)| c.clone()).collect();
        let coeffs = lattice_member(y, &gens)?;
        let mut f = IntPoly::zero(self.generators.len());
        for ((m, _), c) in monos.iter().zip(coeffs) {
            f.add_term(m, c);
        }
        Some(f)
    }

    fn witness(&self, exponents: Vec<u32>, numerator: IntPoly) -> Witness {
        Witness {
            generators: self.generators.clone(),
            denominators: self.denominators.clone(),
            exponents,
            numerator,
        }
    }

    /// Decides what needs no search: integers, values outside `Q(Δ)`, and
    /// every value when `|U| = 3`.
    pub fn quick(&self, x: &CyclotomicReal) -> Option<MembershipVerdict> {
        if let Some(n) = x.to_integer() {
            let w = self.witness(
                vec![0; self.denominators.len()],
                IntPoly::constant(self.generators.len(), n),
            );
            return Some(MembershipVerdict::ProvenIn(w));
        }
        if self.coords(x).is_none() {
            return Some(MembershipVerdict::ProvenNotIn(Certificate::OutsideField {
                field_degree: self.field_degree(),
            }));
        }
        if self.generators.is_empty() {
            return Some(MembershipVerdict::ProvenNotIn(Certificate::NotInteger));
        }
        None
    }

    pub fn membership(&self, x: &CyclotomicReal, bounds: SearchBounds) -> MembershipVerdict {
        if let Some(v) = self.quick(x) {
            return v;
        }
        let coords = self.coords(x).expect("checked by quick");
        let top = self.lattice(bounds.max_num_deg);
        let test = |e: &[u32]| -> Option<Vec<BigRational>> {
            let mut y = coords.clone();
            for (m, &n) in self.den_mats.iter().zip(e) {
                for _ in 0..n {
                    y = apply(m, &y);
                }
            }
            top.solve(&y, ()).map(|_| y)
        };
        let Some((exps, y)) = self.find_exponents(bounds.max_den_exp, test) else {
            return MembershipVerdict::Unknown(bounds);
        };
        // smallest degree whose lattice holds the scaled value
        let (mut lo, mut hi) = (0u32, bounds.max_num_deg);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.lattice(mid).solve(&y, ()).is_some() {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let numerator = self.numerator(&y, lo).expect("lattice and monomial span agree");
        MembershipVerdict::ProvenIn(self.witness(exps, numerator))
    }

    /// Up to two denominators: the full grid ordered by total exponent, then
    /// by the first exponent. More: the smallest uniform exponent, lowered
    /// one coordinate at a time.
    fn find_exponents<T>(
        &self,
        max: u32,
        test: impl Fn(&[u32]) -> Option<T>,
    ) -> Option<(Vec<u32>, T)> {
        let m = self.denominators.len();
        if m <= 2 {
            for total in 0..=(m as u32 * max) {
                for a in 0..=total.min(max) {
                    let e: Vec<u32> = match m {
                        0 => vec![],
                        1 if a == total => vec![a],
                        1 => continue,
                        _ if total - a <= max => vec![a, total - a],
                        _ => continue,
                    };
                    if let Some(t) = test(&e) {
                        return Some((e, t));
                    }
                }
                if m == 0 {
                    return None;
                }
            }
            return None;
        }
        let (mut e, mut found) = (0..=max).find_map(|n| {
            let e = vec![n; m];
            test(&e).map(|t| (e, t))
        })?;
        for j in 0..m {
            while e[j] > 0 {
                e[j] -= 1;
                match test(&e) {
                    Some(t) => found = t,
                    None => {
                        e[j] += 1;
                        break;
                    }
                }
            }
        }
        Some((e, found))
    }
}

/// One-off membership query; build an [`MrContext`] to ask many.
pub fn membership_in_mr(x: &CyclotomicReal, u: &SlopeSet, bounds: SearchBounds) -> MembershipVerdict {
    MrContext::new(u).membership(x, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sqrt_integer;

    #[test]
    fn three_slopes_means_integers() {
        let u: SlopeSet = "0,1/4,1/3".parse().unwrap();
        let ctx = MrContext::new(&u);
        assert_eq!(ctx.field_degree(), 1);
        assert!(ctx.membership(&CyclotomicReal::from_integer(-7), SearchBounds::default()).is_in());
        let half = CyclotomicReal::from_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(
            ctx.membership(&half, SearchBounds::default()),
            MembershipVerdict::ProvenNotIn(Certificate::NotInteger)
        );
        assert_eq!(
            ctx.membership(&sqrt_integer(2), SearchBounds::default()),
            MembershipVerdict::ProvenNotIn(Certificate::OutsideField { field_degree: 1 })
        );
    }

    #[test]
    fn sqrt3_with_fifth_of_pi() {
        let u: SlopeSet = "0,1/3,1/4,1/5".parse().unwrap();
        let ctx = MrContext::new(&u);
        assert_eq!(ctx.field_degree(), 8);
        let s3 = sqrt_integer(3);
        let MembershipVerdict::ProvenIn(w) = ctx.membership(&s3, SearchBounds::default()) else {
            panic!("√3 should be found");
        };
        assert_eq!(w.exponents, vec![5, 4]);
        assert_eq!(w.numerator.total_degree(), Some(13));
        assert!(w.verify(&s3));
    }

    #[test]
    fn int_poly_display() {
        let f = IntPoly::from_univariate(&[8, -56, 0, 1]);
        assert_eq!(f.to_string(), "p^3 - 56*p + 8");
        assert_eq!(f.univariate_coeffs().unwrap().len(), 4);
    }
}
