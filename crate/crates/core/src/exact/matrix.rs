use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rational, rat, Rational};
use crate::error::{Error, Result};

/// Dense square matrix over the rationals.
///
/// Public accessors are 1-based so that `get(i, j)` reads the coefficient of
/// the elementary matrix `e_{i,j}`. Storage is row-major, which is also the
/// flattening order used by [`super::SpanBasis`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zero(n: usize) -> Self {
        Matrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// The elementary matrix `e_{i,j}` (1-based).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i, j, Rational::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Matrix { n, entries })
    }

    /// Convenience constructor for integer matrices; panics if not square.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        Self::from_rows(rows).expect("square integer matrix")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.entries[(i - 1) * self.n + (j - 1)] = value;
    }

    /// Adds `value` to entry `(i, j)` (1-based).
    pub fn add_at(&mut self, i: usize, j: usize, value: &Rational) {
        let idx = (i - 1) * self.n + (j - 1);
        self.entries[idx] += value;
    }

    /// Row-major flattening.
    pub fn as_slice(&self) -> &[Rational] {
        &self.entries
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [Rational] {
        &mut self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, v)| {
            if k / self.n == k % self.n {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(k, v)| k / self.n == k % self.n || v.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|v| v.is_integer())
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).fold(Rational::zero(), |acc, i| {
            acc + &self.entries[i * self.n + i]
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut t = Self::zero(n);
        for r in 0..n {
            for c in 0..n {
                t.entries[c * n + r] = self.entries[r * n + c].clone();
            }
        }
        t
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.n);
        }
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|v| v * k).collect(),
        }
    }

    fn check_dim(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = vec![Rational::zero(); n * n];
        for i in 0..n {
            let row = &self.entries[i * n..(i + 1) * n];
            let acc = &mut out[i * n..(i + 1) * n];
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let other_row = &other.entries[k * n..(k + 1) * n];
                for (dst, b) in acc.iter_mut().zip(other_row) {
                    if !b.is_zero() {
                        *dst += a * b;
                    }
                }
            }
        }
        Matrix { n, entries: out }
    }

    /// The Lie bracket `AB - BA`.
    pub fn bracket(&self, other: &Matrix) -> Result<Matrix> {
        self.check_dim(other)?;
        let ab = self.mul_unchecked(other);
        let ba = other.mul_unchecked(self);
        Ok(&ab - &ba)
    }

    /// Non-negative power by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `M^n = 0` for an `n x n` matrix.
    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.n as u64).is_zero()
    }

    /// Exact determinant by Gaussian elimination.
    pub fn determinant(&self) -> Rational {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Rational::zero();
            };
            if pivot != col {
                for c in 0..n {
                    a.swap(pivot * n + c, col * n + c);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                let f = &a[r * n + col] / &p;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let delta = &f * &a[col * n + c];
                    a[r * n + c] -= delta;
                }
            }
        }
        det
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}[", self.n)?;
        for (r, row) in self.entries.chunks(self.n).enumerate() {
            if r > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl AddAssign<&Matrix> for Matrix {
    fn add_assign(&mut self, rhs: &Matrix) {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        for (a, b) in self.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        self.mul_unchecked(rhs)
    }
}

impl Mul<&[Rational]> for &Matrix {
    type Output = Vec<Rational>;
    fn mul(self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        self.entries
            .chunks(self.n)
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn sl2_relation() {
        let e12 = Matrix::unit(2, 1, 2);
        let e21 = Matrix::unit(2, 2, 1);
        let h = &Matrix::unit(2, 1, 1) - &Matrix::unit(2, 2, 2);
        assert_eq!(e12.bracket(&e21).unwrap(), h);
    }

    #[test]
    fn bracket_of_shift_and_corner() {
        let x = &Matrix::unit(3, 1, 2) + &Matrix::unit(3, 2, 3);
        let y = Matrix::unit(3, 3, 1);
        let expected = &Matrix::unit(3, 2, 1) - &Matrix::unit(3, 3, 2);
        assert_eq!(x.bracket(&y).unwrap(), expected);
    }

    #[test]
    fn bracket_dimension_mismatch() {
        let err = Matrix::identity(2)
            .bracket(&Matrix::identity(3))
            .unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn determinant_cases() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant(), rat(1));
        let singular = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert!(singular.determinant().is_zero());
        let needs_swap = Matrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(needs_swap.determinant(), rat(-3));
        let mut half = Matrix::identity(2);
        half.set(1, 1, ratio(1, 2));
        assert_eq!(half.determinant(), ratio(1, 2));
    }

    #[test]
    fn powers_and_nilpotency() {
        let x = &Matrix::unit(3, 1, 2) + &Matrix::unit(3, 2, 3);
        assert_eq!(x.pow(2), Matrix::unit(3, 1, 3));
        assert!(x.is_nilpotent());
        assert!(!Matrix::identity(3).is_nilpotent());
        assert!(x.pow(0).is_identity());
    }

    #[test]
    fn matrix_vector_product() {
        let m = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(&m * &[rat(1), rat(-1)][..], vec![rat(-1), rat(-1)]);
    }
}
