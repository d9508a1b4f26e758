//! Explicit nilpotent generator matrices and the generation criteria they
//! are checked against.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, Matrix, Rational, SpanBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairFamily {
    /// `x = sum e_{i,i+1}`, `y = e_{n,1}`.
    Corner,
    /// `x = sum e_{i,i+1}`, `y = e_{n-1,1} + e_{n,2}`.
    DoubleCorner,
    /// `x = sum e_{i,i+1}`, `z = sum b_i e_{i+1,i}`.
    LowerBidiagonal,
    /// The 7x7 realization of G2: `x = x1 + x2`, `z = -y1 + y2`.
    G2,
}

impl PairFamily {
    pub fn name(self) -> &'static str {
        match self {
            PairFamily::Corner => "corner",
            PairFamily::DoubleCorner => "double_corner",
            PairFamily::LowerBidiagonal => "lower_bidiagonal",
            PairFamily::G2 => "g2_7x7",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorPair {
    pub n: usize,
    pub first: Matrix,
    pub second: Matrix,
    pub family: PairFamily,
    pub b: Option<Vec<Rational>>,
}

impl GeneratorPair {
    fn checked(self) -> Self {
        debug_assert!(self.first.is_nilpotent() && self.second.is_nilpotent());
        self
    }
}

/// `x = sum_{i=1}^{n-1} e_{i,i+1}`.
pub fn shift_matrix(n: usize) -> Matrix {
    let mut x = Matrix::zero(n);
    for i in 1..n {
        x.set(i, i + 1, Rational::one());
    }
    x
}

pub fn shift_pair(n: usize, family: PairFamily) -> Result<GeneratorPair> {
    let second = match family {
        PairFamily::Corner => {
            if n < 3 {
                return Err(Error::SizeTooSmall { n, min: 3 });
            }
            Matrix::unit(n, n, 1)
        }
        PairFamily::DoubleCorner => {
            if n < 4 {
                return Err(Error::SizeTooSmall { n, min: 4 });
            }
            &Matrix::unit(n, n - 1, 1) + &Matrix::unit(n, n, 2)
        }
        other => {
            return Err(Error::InvalidFamily(format!(
                "{} is not a shift family",
                other.name()
            )))
        }
    };
    Ok(GeneratorPair {
        n,
        first: shift_matrix(n),
        second,
        family,
        b: None,
    }
    .checked())
}

fn check_b(b: &[Rational]) -> Result<()> {
    match b.iter().position(Zero::is_zero) {
        Some(i) => Err(Error::ZeroCoefficient { index: i + 1 }),
        None => Ok(()),
    }
}

/// `z = sum_{i=1}^{n-1} b_i e_{i+1,i}` with `n = b.len() + 1`.
pub fn lower_matrix(b: &[Rational]) -> Result<Matrix> {
    if b.is_empty() {
        return Err(Error::SizeTooSmall { n: 1, min: 2 });
    }
    check_b(b)?;
    let n = b.len() + 1;
    let mut z = Matrix::zero(n);
    for (i, bi) in b.iter().enumerate() {
        z.set(i + 2, i + 1, bi.clone());
    }
    Ok(z)
}

pub fn lower_pair(b: &[Rational]) -> Result<GeneratorPair> {
    let second = lower_matrix(b)?;
    let n = b.len() + 1;
    Ok(GeneratorPair {
        n,
        first: shift_matrix(n),
        second,
        family: PairFamily::LowerBidiagonal,
        b: Some(b.to_vec()),
    }
    .checked())
}

/// How the exponent base in `b_i = sum_{j<=i} 2^{N-j}` is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BVectorConvention {
    /// `N` is the matrix size `n` (gives `(8, 12, 14)` at `n = 4`).
    #[default]
    MatrixSize,
    /// `N` is the rank `n - 1`.
    Rank,
}

/// `b_i = sum_{j=1}^{i} 2^{N-j}` for `1 <= i <= n - 1`.
pub fn doubling_bvector(n: usize, convention: BVectorConvention) -> Result<Vec<Rational>> {
    if n < 3 {
        return Err(Error::SizeTooSmall { n, min: 3 });
    }
    let base = match convention {
        BVectorConvention::MatrixSize => n,
        BVectorConvention::Rank => n - 1,
    };
    let two = rat(2);
    let mut acc = Rational::zero();
    Ok((1..n)
        .map(|j| {
            acc += num_traits::pow(two.clone(), base - j);
            acc.clone()
        })
        .collect())
}

/// The `b`-vector of `z = -y1 + y2` in the G2 realization.
pub fn g2_bvector() -> Vec<Rational> {
    [1, -1, 2, 2, -1, 1].iter().map(|&v| rat(v)).collect()
}

pub fn g2_pair() -> GeneratorPair {
    let b = g2_bvector();
    GeneratorPair {
        n: 7,
        first: shift_matrix(7),
        second: lower_matrix(&b).expect("nonzero G2 coefficients"),
        family: PairFamily::G2,
        b: Some(b),
    }
    .checked()
}

/// A canonical generating set `x_i, y_i, h_i` with its Cartan matrix.
#[derive(Clone, Debug)]
pub struct CanonicalGenerators {
    pub rank: usize,
    pub x: Vec<Matrix>,
    pub y: Vec<Matrix>,
    pub h: Vec<Matrix>,
    pub cartan: Vec<Vec<i64>>,
}

impl CanonicalGenerators {
    /// Checks `[h_i,h_j] = 0`, `[h_i,x_j] = C(j,i) x_j`, `[h_i,y_j] = -C(j,i) y_j`
    /// and `[x_i,y_j] = delta_ij h_i` for all `i, j`. Returns how many
    /// relations were checked.
    pub fn check_relations(&self) -> Result<usize> {
        let mut checked = 0;
        let fail = |what: String| Err(Error::RelationFailure(what));
        for i in 0..self.rank {
            for j in 0..self.rank {
                let c = rat(self.cartan[j][i]);
                if !self.h[i].bracket(&self.h[j])?.is_zero() {
                    return fail(format!("[h{},h{}] != 0", i + 1, j + 1));
                }
                if self.h[i].bracket(&self.x[j])? != self.x[j].scale(&c) {
                    return fail(format!(
                        "[h{},x{}] != C({},{}) x{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    ));
                }
                if self.h[i].bracket(&self.y[j])? != self.y[j].scale(&-c) {
                    return fail(format!(
                        "[h{},y{}] != -C({},{}) y{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    ));
                }
                let xy = self.x[i].bracket(&self.y[j])?;
                let expected = if i == j {
                    self.h[i].clone()
                } else {
                    Matrix::zero(xy.n())
                };
                if xy != expected {
                    return fail(format!("[x{},y{}] != delta h", i + 1, j + 1));
                }
                checked += 4;
            }
        }
        Ok(checked)
    }
}

pub fn cartan_g2() -> Vec<Vec<i64>> {
    vec![vec![2, -3], vec![-1, 2]]
}

/// Cartan matrix of type `A_rank`.
pub fn cartan_a(rank: usize) -> Vec<Vec<i64>> {
    (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

fn sum_units(n: usize, terms: &[(i64, usize, usize)]) -> Matrix {
    let mut m = Matrix::zero(n);
    for &(c, i, j) in terms {
        m.add_at(i, j, &rat(c));
    }
    m
}

/// The six-element canonical generating set of G2 inside `gl(7)`.
pub fn g2_canonical() -> Result<CanonicalGenerators> {
    let x1 = sum_units(7, &[(1, 2, 3), (1, 5, 6)]);
    let y1 = sum_units(7, &[(1, 3, 2), (1, 6, 5)]);
    let x2 = sum_units(7, &[(1, 1, 2), (1, 3, 4), (1, 4, 5), (1, 6, 7)]);
    let y2 = sum_units(7, &[(1, 2, 1), (2, 4, 3), (2, 5, 4), (1, 7, 6)]);
    let h1 = x1.bracket(&y1)?;
    let h2 = x2.bracket(&y2)?;
    let gens = CanonicalGenerators {
        rank: 2,
        x: vec![x1, x2],
        y: vec![y1, y2],
        h: vec![h1, h2],
        cartan: cartan_g2(),
    };
    gens.check_relations()?;
    Ok(gens)
}

/// The involution `e_{i,j} -> (-1)^{i-j+1} e_{n-j+1,n-i+1}` extended linearly.
pub fn diagram_automorphism(a: &Matrix) -> Matrix {
    let n = a.n();
    let mut out = Matrix::zero(n);
    for i in 1..=n {
        for j in 1..=n {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let v = if (i + j + 1) % 2 == 0 { v.clone() } else { -v };
            out.set(n - j + 1, n - i + 1, v);
        }
    }
    out
}

/// Basis of `sl(n)`: off-diagonal units then `e_{i,i} - e_{i+1,i+1}`.
pub fn sl_basis(n: usize) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(n * n - 1);
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                out.push(Matrix::unit(n, i, j));
            }
        }
    }
    for i in 1..n {
        out.push(&Matrix::unit(n, i, i) - &Matrix::unit(n, i + 1, i + 1));
    }
    out
}

/// The subspace `{ z in sl(n) : phi(z) = z }`, spanned by `z + phi(z)` over a
/// basis of `sl(n)`.
pub fn phi_fixed_subalgebra(n: usize) -> SpanBasis {
    let mut span = SpanBasis::new(n);
    for z in sl_basis(n) {
        let sym = &z + &diagram_automorphism(&z);
        span.insert(&sym).expect("same dimension");
    }
    span
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionOutcome {
    pub holds: bool,
    pub v: Vec<Rational>,
}

/// True iff the `2k` values `{+v_i, -v_i}` are pairwise distinct.
pub fn plus_minus_distinct(values: &[Rational]) -> bool {
    let mut all: Vec<Rational> = values
        .iter()
        .flat_map(|v| [v.clone(), -v.clone()])
        .collect();
    all.sort();
    all.windows(2).all(|w| w[0] != w[1])
}

/// Generation criterion for `x = sum x_i`, `y = sum b_i y_i`: with `v = Cb`,
/// holds iff `{+-v_i}` has `2l` distinct elements.
pub fn prop2_criterion(cartan: &[Vec<i64>], b: &[Rational]) -> Result<CriterionOutcome> {
    let l = cartan.len();
    if let Some(row) = cartan.iter().find(|r| r.len() != l) {
        return Err(Error::DimensionMismatch {
            expected: l,
            found: row.len(),
        });
    }
    if b.len() != l {
        return Err(Error::DimensionMismatch {
            expected: l,
            found: b.len(),
        });
    }
    check_b(b)?;
    let v: Vec<Rational> = cartan
        .iter()
        .map(|row| {
            row.iter()
                .zip(b)
                .fold(Rational::zero(), |acc, (&c, bj)| acc + rat(c) * bj)
        })
        .collect();
    Ok(CriterionOutcome {
        holds: plus_minus_distinct(&v),
        v,
    })
}

/// The regular-element criterion on the diagonal of `sl(n)`, where
/// `alpha_i(h) = h_{i,i} - h_{i+1,i+1}`.
pub fn prop1_criterion(h: &Matrix) -> Result<bool> {
    if !h.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    if !h.trace().is_zero() {
        return Err(Error::NotTraceless);
    }
    let diffs: Vec<Rational> = (1..h.n())
        .map(|i| h.get(i, i) - h.get(i + 1, i + 1))
        .collect();
    Ok(plus_minus_distinct(&diffs))
}
