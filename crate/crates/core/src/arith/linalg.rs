//! Reduced row echelon bookkeeping over `Q` with provenance tracking.

use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vec: Vec<BigRational>,
    /// Coefficients over the inserted inputs reproducing `vec`.
    combo: Vec<BigRational>,
}

/// A subspace of `Q^dim` spanned by the vectors inserted so far.
#[derive(Clone, Debug)]
pub struct EchelonSpace {
    dim: usize,
    inputs: usize,
    rows: Vec<Row>,
}

impl EchelonSpace {
    pub fn new(dim: usize) -> Self {
        EchelonSpace {
            dim,
            inputs: 0,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the current rows; returns the residual and the
    /// combination of inputs that was subtracted.
    fn reduce(&self, v: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut res = v.to_vec();
        let mut combo = vec![BigRational::zero(); self.inputs];
        for row in &self.rows {
            let c = res[row.pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (r, x) in res.iter_mut().zip(&row.vec) {
                if !x.is_zero() {
                    *r -= &c * x;
                }
            }
            for (k, x) in combo.iter_mut().zip(&row.combo) {
                if !x.is_zero() {
                    *k += &c * x;
                }
            }
        }
        (res, combo)
    }

    /// Coefficients over the inputs expressing `v`, if `v` is in the span.
    pub fn solve(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let (res, combo) = self.reduce(v);
        res.iter().all(Zero::is_zero).then_some(combo)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.solve(v).is_some()
    }

    /// Inserts `v` as the next input. Returns `Ok(())` if the rank grew, or
    /// `Err(combo)` with `v = Σ combo_i · input_i` over the earlier inputs.
    pub fn insert(&mut self, v: &[BigRational]) -> Result<(), Vec<BigRational>> {
        let (mut res, mut combo) = self.reduce(v);
        let Some(pivot) = res.iter().position(|x| !x.is_zero()) else {
            self.inputs += 1;
            return Err(combo);
        };
        // new row = (v − combo·inputs) / res[pivot]
        let inv = res[pivot].recip();
        for x in &mut res {
            *x *= &inv;
        }
        for k in &mut combo {
            *k = -&*k * &inv;
        }
        combo.push(inv);
        self.inputs += 1;
        for row in &mut self.rows {
            row.combo.resize(self.inputs, BigRational::zero());
            let c = row.vec[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (a, b) in row.vec.iter_mut().zip(&res) {
                if !b.is_zero() {
                    *a -= &c * b;
                }
            }
            for (a, b) in row.combo.iter_mut().zip(&combo) {
                if !b.is_zero() {
                    *a -= &c * b;
                }
            }
        }
        let at = self.rows.partition_point(|r| r.pivot < pivot);
        self.rows.insert(
            at,
            Row {
                pivot,
                vec: res,
                combo,
            },
        );
        debug_assert!(self.rows.iter().all(|r| r.vec[r.pivot].is_one()));
        Ok(())
    }
}
