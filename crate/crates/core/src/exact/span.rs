use num_traits::{One, Zero};

use super::{Matrix, Rational};
use crate::error::{Error, Result};

/// Reduced row-echelon basis of a subspace of `n x n` matrices, with each
/// matrix flattened row-major into a vector of length `n^2`.
///
/// Rows are kept sorted by pivot coordinate, every pivot entry is 1, and
/// every other row is zero in each pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanBasis {
    n: usize,
    rows: Vec<Matrix>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(n: usize) -> Self {
        SpanBasis {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Matrix] {
        &self.rows
    }

    /// Pivot coordinates as flat row-major indices.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, m: &Matrix) -> Result<()> {
        if m.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.n(),
            });
        }
        Ok(())
    }

    /// Remainder of `m` after elimination against the basis; zero iff `m`
    /// lies in the span.
    pub fn reduce(&self, m: &Matrix) -> Result<Matrix> {
        self.check(m)?;
        let mut v = m.clone();
        self.reduce_in_place(&mut v);
        Ok(v)
    }

    fn reduce_in_place(&self, v: &mut Matrix) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let coeff = v.as_slice()[p].clone();
            if coeff.is_zero() {
                continue;
            }
            let dst = v.as_mut_slice();
            for (k, r) in row.as_slice().iter().enumerate().skip(p) {
                if !r.is_zero() {
                    dst[k] -= &coeff * r;
                }
            }
        }
    }

    pub fn contains(&self, m: &Matrix) -> Result<bool> {
        Ok(self.reduce(m)?.is_zero())
    }

    /// Inserts `m`; returns `true` iff the rank grew.
    pub fn insert(&mut self, m: &Matrix) -> Result<bool> {
        let remainder = self.reduce(m)?;
        Ok(self.insert_reduced(remainder))
    }

    /// Inserts a vector already reduced against some earlier state of this
    /// basis. It is reduced again against rows added since then.
    pub(crate) fn insert_reduced(&mut self, mut v: Matrix) -> bool {
        self.reduce_in_place(&mut v);
        let Some(p) = v.as_slice().iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v.as_slice()[p].clone();
        if !lead.is_one() {
            let inv = Rational::one() / lead;
            for x in v.as_mut_slice().iter_mut().skip(p) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        for row in &mut self.rows {
            let coeff = row.as_slice()[p].clone();
            if coeff.is_zero() {
                continue;
            }
            let dst = row.as_mut_slice();
            for (k, r) in v.as_slice().iter().enumerate().skip(p) {
                if !r.is_zero() {
                    dst[k] -= &coeff * r;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }
}
