//! Integer lattices in `Q^n` kept in Hermite normal form.
//!
//! Each basis row carries a payload recording how it was assembled from the
//! inserted generators, so a successful membership query also yields an
//! integer witness. Rational generators are handled by tracking one common
//! denominator for the whole basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Bookkeeping attached to lattice rows; must follow integer row operations.
pub trait Payload: Clone {
    /// `x·a + y·b`
    fn combine(a: &Self, x: &BigInt, b: &Self, y: &BigInt) -> Self;
    /// `self += k·other`
    fn add_scaled(&mut self, k: &BigInt, other: &Self);
}

impl Payload for () {
    fn combine(_: &Self, _: &BigInt, _: &Self, _: &BigInt) -> Self {}
    fn add_scaled(&mut self, _: &BigInt, _: &Self) {}
}

impl Payload for Vec<BigInt> {
    fn combine(a: &Self, x: &BigInt, b: &Self, y: &BigInt) -> Self {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| {
                let l = a.get(i).map(|v| v * x).unwrap_or_default();
                let r = b.get(i).map(|v| v * y).unwrap_or_default();
                l + r
            })
            .collect()
    }

    fn add_scaled(&mut self, k: &BigInt, other: &Self) {
        if self.len() < other.len() {
            self.resize(other.len(), BigInt::zero());
        }
        for (s, o) in self.iter_mut().zip(other) {
            if !o.is_zero() {
                *s += k * o;
            }
        }
    }
}

#[derive(Clone, Debug)]
struct LatticeRow<W> {
    pivot: usize,
    vec: Vec<BigInt>,
    payload: W,
}

/// A finitely generated subgroup of `Q^dim`.
#[derive(Clone, Debug)]
pub struct Lattice<W> {
    dim: usize,
    /// Rows represent `vec / den`.
    den: BigInt,
    rows: Vec<LatticeRow<W>>,
    kernel: Vec<W>,
    keep_kernel: bool,
}

fn combine_vec(a: &[BigInt], x: &BigInt, b: &[BigInt], y: &BigInt) -> Vec<BigInt> {
    a.iter().zip(b).map(|(p, q)| p * x + q * y).collect()
}

impl<W: Payload> Lattice<W> {
    pub fn new(dim: usize) -> Self {
        Lattice {
            dim,
            den: BigInt::one(),
            rows: Vec::new(),
            kernel: Vec::new(),
            keep_kernel: false,
        }
    }

    /// Also records the payloads of generators that reduce to zero, i.e. the
    /// integer relations among the generators.
    pub fn with_relations(dim: usize) -> Self {
        Lattice {
            keep_kernel: true,
            ..Self::new(dim)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn relations(&self) -> &[W] {
        &self.kernel
    }

    /// Basis vectors, each with its payload.
    pub fn basis(&self) -> impl Iterator<Item = (Vec<BigRational>, &W)> + '_ {
        self.rows.iter().map(move |r| {
            (
                r.vec
                    .iter()
                    .map(|c| BigRational::new(c.clone(), self.den.clone()))
                    .collect(),
                &r.payload,
            )
        })
    }

    fn scaled(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        let mut out = Vec::with_capacity(v.len());
        for c in v {
            let s = c * BigRational::from_integer(self.den.clone());
            if !s.is_integer() {
                return None;
            }
            out.push(s.to_integer());
        }
        Some(out)
    }

    fn widen_denominator(&mut self, v: &[BigRational]) {
        let d = v.iter().fold(self.den.clone(), |acc, c| acc.lcm(c.denom()));
        if d != self.den {
            let k = &d / &self.den;
            for row in &mut self.rows {
                for c in &mut row.vec {
                    *c *= &k;
                }
            }
            self.den = d;
        }
    }

    pub fn insert(&mut self, v: &[BigRational], payload: W) {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        self.widen_denominator(v);
        let mut u = self.scaled(v).expect("denominator widened");
        let mut w = payload;
        loop {
            let Some(c) = u.iter().position(|x| !x.is_zero()) else {
                if self.keep_kernel {
                    self.kernel.push(w);
                }
                break;
            };
            match self.rows.binary_search_by_key(&c, |r| r.pivot) {
                Ok(i) => {
                    let row = &mut self.rows[i];
                    let a = row.vec[c].clone();
                    let b = u[c].clone();
                    let (q, r) = b.div_mod_floor(&a);
                    if r.is_zero() {
                        let mq = -q;
                        u = combine_vec(&u, &BigInt::one(), &row.vec, &mq);
                        w.add_scaled(&mq, &row.payload);
                        continue;
                    }
                    let eg = a.extended_gcd(&b);
                    let (g, x, y) = (eg.gcd, eg.x, eg.y);
                    let ag = &a / &g;
                    let bg = -(&b / &g);
                    let new_row = combine_vec(&row.vec, &x, &u, &y);
                    let new_pay = W::combine(&row.payload, &x, &w, &y);
                    u = combine_vec(&u, &ag, &row.vec, &bg);
                    w = W::combine(&w, &ag, &row.payload, &bg);
                    row.vec = new_row;
                    row.payload = new_pay;
                }
                Err(i) => {
                    if u[c].is_negative() {
                        let m1 = -BigInt::one();
                        u = u.into_iter().map(|x| -x).collect();
                        let zero = w.clone();
                        w = W::combine(&w, &m1, &zero, &BigInt::zero());
                    }
                    self.rows.insert(
                        i,
                        LatticeRow {
                            pivot: c,
                            vec: u,
                            payload: w,
                        },
                    );
                    break;
                }
            }
        }
        self.reduce_above_pivots();
    }

    fn reduce_above_pivots(&mut self) {
        for j in 0..self.rows.len() {
            let (head, tail) = self.rows.split_at_mut(j);
            let pivot_row = &tail[0];
            let c = pivot_row.pivot;
            let a = &pivot_row.vec[c];
            for row in head.iter_mut() {
                let q = row.vec[c].div_floor(a);
                if q.is_zero() {
                    continue;
                }
                let mq = -q;
                row.vec = combine_vec(&row.vec, &BigInt::one(), &pivot_row.vec, &mq);
                row.payload.add_scaled(&mq, &pivot_row.payload);
            }
        }
    }

    /// Integer combination of the generators equal to `v`, if one exists.
    /// `zero` is the payload of the empty combination.
    pub fn solve(&self, v: &[BigRational], zero: W) -> Option<W> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut u = self.scaled(v)?;
        let mut acc = zero;
        for row in &self.rows {
            if let Some(first) = u.iter().position(|x| !x.is_zero()) {
                if first < row.pivot {
                    return None;
                }
            } else {
                break;
            }
            let b = &u[row.pivot];
            if b.is_zero() {
                continue;
            }
            let (q, r) = b.div_mod_floor(&row.vec[row.pivot]);
            if !r.is_zero() {
                return None;
            }
            let mq = -&q;
            u = combine_vec(&u, &BigInt::one(), &row.vec, &mq);
            acc.add_scaled(&q, &row.payload);
        }
        u.iter().all(Zero::is_zero).then_some(acc)
    }
}

/// Decides whether `v` lies in the `Z`-span of `generators`.
///
/// On success returns integer coefficients `c` with `Σ c_i·g_i = v`, reduced
/// modulo the relations among the generators so that later coefficients
/// are as small as possible (each in `[0, d)` for the relevant relation
/// leading coefficient `d`).
pub fn lattice_member(v: &[BigRational], generators: &[Vec<BigRational>]) -> Option<Vec<BigInt>> {
    let dim = v.len();
    let n = generators.len();
    let mut lat: Lattice<Vec<BigInt>> = Lattice::with_relations(dim);
    for (i, g) in generators.iter().enumerate() {
        assert_eq!(g.len(), dim, "generator {} has the wrong length", i);
        let mut unit = vec![BigInt::zero(); n];
        unit[i] = BigInt::one();
        lat.insert(g, unit);
    }
    let mut witness = lat.solve(v, vec![BigInt::zero(); n])?;
    witness.resize(n, BigInt::zero());
    if !lat.relations().is_empty() {
        // reduce against the relation lattice, last generator first
        let mut rel: Lattice<()> = Lattice::new(n);
        for r in lat.relations() {
            let mut rev: Vec<BigRational> = r
                .iter()
                .rev()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect();
            rev.resize(n, BigRational::zero());
            rel.insert(&rev, ());
        }
        let mut rev: Vec<BigInt> = witness.iter().rev().cloned().collect();
        for (basis, _) in rel.basis() {
            let basis: Vec<BigInt> = basis.iter().map(|c| c.to_integer()).collect();
            let p = basis.iter().position(|x| !x.is_zero()).expect("nonzero row");
            let q = rev[p].div_floor(&basis[p]);
            if !q.is_zero() {
                rev = combine_vec(&rev, &BigInt::one(), &basis, &(-q));
            }
        }
        witness = rev.into_iter().rev().collect();
    }
    Some(witness)
}

/// `Σ c_i·g_i`
pub fn combine_generators(coeffs: &[BigInt], generators: &[Vec<BigRational>]) -> Vec<BigRational> {
    let dim = generators.first().map_or(0, Vec::len);
    let mut out = vec![BigRational::zero(); dim];
    for (c, g) in coeffs.iter().zip(generators) {
        let c = BigRational::from_integer(c.clone());
        for (o, x) in out.iter_mut().zip(g) {
            *o += &c * x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn denominator_lifting_example() {
        // 23·(16/25) + 1·(232/25) = 24
        let w = lattice_member(&[r(24, 1)], &[vec![r(16, 25)], vec![r(232, 25)]]).unwrap();
        assert_eq!(w, vec![BigInt::from(23), BigInt::from(1)]);
    }

    #[test]
    fn zero_is_always_member() {
        let w = lattice_member(&[r(0, 1), r(0, 1)], &[vec![r(1, 3), r(2, 1)]]).unwrap();
        assert!(w.iter().all(Zero::is_zero));
        assert_eq!(lattice_member(&[r(0, 1)], &[]), Some(vec![]));
    }

    #[test]
    fn half_is_not_an_integer() {
        assert_eq!(lattice_member(&[r(1, 2)], &[vec![r(1, 1)]]), None);
        // integral but off the lattice 2Z
        assert_eq!(lattice_member(&[r(1, 1)], &[vec![r(2, 1)], vec![r(4, 1)]]), None);
    }

    #[test]
    fn rank_deficient_directions() {
        let gens = vec![vec![r(1, 1), r(1, 1)], vec![r(2, 1), r(2, 1)]];
        assert!(lattice_member(&[r(3, 1), r(3, 1)], &gens).is_some());
        assert!(lattice_member(&[r(3, 1), r(2, 1)], &gens).is_none());
    }
}
