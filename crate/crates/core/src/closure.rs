//! Lie subalgebra generated by a set of matrices, classification by
//! dimension, and the closed forms for iterated brackets `[x^s, y]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, rat_big, Matrix, Rational, SpanBasis};
use crate::generators::PairFamily;
use crate::par::{self, Execution};

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub n: usize,
    pub basis: SpanBasis,
    pub dim: usize,
    /// Bracket sweeps performed until no new direction appeared.
    pub rounds: usize,
    /// Every bracket of two basis rows lies in the span.
    pub verified: bool,
}

/// Scales to a primitive integer vector; keeps entry sizes small during
/// long closure runs without changing the span.
fn primitive(m: Matrix) -> Matrix {
    let lcm = m
        .as_slice()
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let gcd = m
        .as_slice()
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::zero(), |acc, v| {
            acc.gcd(&(v.numer() * &lcm / v.denom()))
        });
    if gcd.is_zero() {
        return m;
    }
    let lead_negative = m
        .as_slice()
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative());
    let mut factor = Rational::new(lcm, gcd);
    if lead_negative {
        factor = -factor;
    }
    m.scale(&factor)
}

pub fn subalgebra_closure(seed: &[Matrix]) -> Result<ClosureResult> {
    subalgebra_closure_with(seed, Execution::default())
}

/// Closure under the bracket.
///
/// Seeds are inserted in order. Each round brackets every newly added
/// element with every earlier one (and with the other new ones), computes the
/// brackets and their remainders in parallel, then inserts the remainders
/// sequentially in pair order, so the resulting basis does not depend on the
/// execution mode. The loop stops at a fixpoint or once the span fills
/// `gl(n)` (or `sl(n)` when every seed is traceless).
pub fn subalgebra_closure_with(seed: &[Matrix], exec: Execution) -> Result<ClosureResult> {
    let first = seed.first().ok_or(Error::EmptySeed)?;
    let n = first.n();
    let mut basis = SpanBasis::new(n);
    let mut elements: Vec<Matrix> = Vec::new();
    for m in seed {
        let r = basis.reduce(m)?;
        if !r.is_zero() {
            let r = primitive(r);
            basis.insert_reduced(r.clone());
            elements.push(r);
        }
    }
    let traceless = seed.iter().all(|m| m.trace().is_zero());
    let ceiling = if traceless { n * n - 1 } else { n * n };

    let mut frontier = 0;
    let mut rounds = 0;
    while frontier < elements.len() && basis.rank() < ceiling {
        rounds += 1;
        let pairs: Vec<(usize, usize)> = (frontier..elements.len())
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        let snapshot = &basis;
        let els = &elements;
        let remainders = par::map(exec, &pairs, |&(i, j)| {
            let b = els[i].bracket(&els[j]).expect("common dimension");
            snapshot.reduce(&b).expect("common dimension")
        });
        frontier = elements.len();
        for r in remainders {
            if r.is_zero() {
                continue;
            }
            let before = basis.rank();
            let mut r = r;
            if let Ok(rr) = basis.reduce(&r) {
                r = rr;
            }
            if r.is_zero() {
                continue;
            }
            let r = primitive(r);
            basis.insert_reduced(r.clone());
            debug_assert_eq!(basis.rank(), before + 1);
            elements.push(r);
            if basis.rank() == ceiling {
                break;
            }
        }
    }

    let verified = basis.rank() == ceiling || is_closed(&basis, exec);
    Ok(ClosureResult {
        n,
        dim: basis.rank(),
        basis,
        rounds,
        verified,
    })
}

/// Full sweep: `[b_i, b_j]` lies in the span for every pair of basis rows.
pub fn is_closed(basis: &SpanBasis, exec: Execution) -> bool {
    let rows = basis.rows();
    let pairs: Vec<(usize, usize)> = (0..rows.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    par::map(exec, &pairs, |&(i, j)| {
        let b = rows[i].bracket(&rows[j]).expect("common dimension");
        basis.contains(&b).expect("common dimension")
    })
    .into_iter()
    .all(|ok| ok)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraFamily {
    A,
    B,
    C,
    G2,
    FullMatrixAlgebra,
    Unrecognized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TypeLabel {
    pub family: AlgebraFamily,
    pub rank: Option<usize>,
    pub dim: usize,
}

impl TypeLabel {
    pub fn a(rank: usize) -> Self {
        TypeLabel {
            family: AlgebraFamily::A,
            rank: Some(rank),
            dim: (rank + 1) * (rank + 1) - 1,
        }
    }

    pub fn b(rank: usize) -> Self {
        TypeLabel {
            family: AlgebraFamily::B,
            rank: Some(rank),
            dim: rank * (2 * rank + 1),
        }
    }

    pub fn c(rank: usize) -> Self {
        TypeLabel {
            family: AlgebraFamily::C,
            rank: Some(rank),
            dim: rank * (2 * rank + 1),
        }
    }

    pub fn g2() -> Self {
        TypeLabel {
            family: AlgebraFamily::G2,
            rank: Some(2),
            dim: 14,
        }
    }

    pub fn is_recognized(&self) -> bool {
        self.family != AlgebraFamily::Unrecognized
    }

    /// One of the simple types A, B, C, G2.
    pub fn is_simple(&self) -> bool {
        matches!(
            self.family,
            AlgebraFamily::A | AlgebraFamily::B | AlgebraFamily::C | AlgebraFamily::G2
        )
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.rank) {
            (AlgebraFamily::A, Some(r)) => write!(f, "A{r}"),
            (AlgebraFamily::B, Some(r)) => write!(f, "B{r}"),
            (AlgebraFamily::C, Some(r)) => write!(f, "C{r}"),
            (AlgebraFamily::G2, _) => write!(f, "G2"),
            (AlgebraFamily::FullMatrixAlgebra, _) => write!(f, "gl"),
            _ => write!(f, "unrecognized"),
        }
    }
}

/// Identifies the algebra from the matrix size and its dimension alone.
/// `B_m` and `C_m` share the dimension `m(2m+1)` and are told apart by the
/// parity of `n`.
pub fn classify_dim(n: usize, dim: usize) -> TypeLabel {
    if n >= 2 && dim == n * n - 1 {
        return TypeLabel::a(n - 1);
    }
    if n == 7 && dim == 14 {
        return TypeLabel::g2();
    }
    let m = n / 2;
    if m >= 1 && dim == m * (2 * m + 1) {
        return if n.is_multiple_of(2) {
            TypeLabel::c(m)
        } else {
            TypeLabel::b(m)
        };
    }
    let family = if dim == n * n {
        AlgebraFamily::FullMatrixAlgebra
    } else {
        AlgebraFamily::Unrecognized
    };
    TypeLabel {
        family,
        rank: None,
        dim,
    }
}

pub fn classify(result: &ClosureResult) -> TypeLabel {
    classify_dim(result.n, result.dim)
}

/// Type of the algebra generated by the explicit pairs.
pub fn predicted_type(family: PairFamily, n: usize) -> Result<TypeLabel> {
    let invalid = || Error::InvalidFamily(format!("{} at n = {n}", family.name()));
    match family {
        PairFamily::Corner if n >= 3 => Ok(if n % 2 == 1 {
            TypeLabel::a(n - 1)
        } else {
            TypeLabel::c(n / 2)
        }),
        PairFamily::DoubleCorner if n >= 4 => Ok(match (n % 2, n) {
            (0, _) => TypeLabel::a(n - 1),
            (_, 7) => TypeLabel::g2(),
            _ => TypeLabel::b((n - 1) / 2),
        }),
        PairFamily::G2 if n == 7 => Ok(TypeLabel::g2()),
        _ => Err(invalid()),
    }
}

/// `C(s, i) = binom(s, i) - binom(s, i - 1)`.
pub fn c_shift(s: i64, i: i64) -> BigInt {
    binomial(s, i) - binomial(s, i - 1)
}

/// `[x^0, y] = y`, `[x^{s+1}, y] = [x, [x^s, y]]`.
///
/// Stops early once the bracket vanishes; fails if it is still nonzero after
/// `4n` steps, which cannot happen for nilpotent `x`.
pub fn iterated_bracket(x: &Matrix, y: &Matrix, s: usize) -> Result<Matrix> {
    let limit = 4 * x.n();
    let mut acc = y.clone();
    for k in 0..s {
        if acc.is_zero() {
            break;
        }
        if k == limit {
            return Err(Error::BracketLimit { limit });
        }
        acc = x.bracket(&acc)?;
    }
    Ok(acc)
}

/// Summation formulas for `[x^s, y]` with `x` the shift and `y` the corner
/// or double-corner element.
pub fn closed_form_bracket(n: usize, s: usize, variant: PairFamily) -> Result<Matrix> {
    let (ni, si) = (n as i64, s as i64);
    let mut out = Matrix::zero(n);
    match variant {
        PairFamily::Corner => {
            // sum_{i=max(0,s-n+1)}^{min(s,n-1)} (-1)^i binom(s,i) e_{n-s+i, i+1}
            for i in (si - ni + 1).max(0)..=si.min(ni - 1) {
                let c = binomial(si, i);
                let c = if i % 2 == 0 { c } else { -c };
                out.set((ni - si + i) as usize, (i + 1) as usize, rat_big(c));
            }
        }
        PairFamily::DoubleCorner => {
            // sum_{i=max(0,s-n+2)}^{min(s+1,n-1)} (-1)^i C(s,i) e_{n-s+i-1, i+1}
            for i in (si - ni + 2).max(0)..=(si + 1).min(ni - 1) {
                let c = c_shift(si, i);
                let c = if i % 2 == 0 { c } else { -c };
                out.set((ni - si + i - 1) as usize, (i + 1) as usize, rat_big(c));
            }
        }
        other => {
            return Err(Error::InvalidFamily(format!(
                "no closed form for {}",
                other.name()
            )))
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::generators::{shift_pair, sl_basis};

    fn closure_dim(seed: &[Matrix]) -> usize {
        subalgebra_closure(seed).unwrap().dim
    }

    #[test]
    fn sl2_triple() {
        let r = subalgebra_closure(&[Matrix::unit(2, 1, 2), Matrix::unit(2, 2, 1)]).unwrap();
        assert_eq!(r.dim, 3);
        assert!(r.verified);
        assert_eq!(classify(&r), TypeLabel::a(1));
    }

    #[test]
    fn small_corner_pairs() {
        let p3 = shift_pair(3, PairFamily::Corner).unwrap();
        assert_eq!(closure_dim(&[p3.first, p3.second]), 8);
        let p4 = shift_pair(4, PairFamily::Corner).unwrap();
        let r = subalgebra_closure(&[p4.first, p4.second]).unwrap();
        assert_eq!(r.dim, 10);
        assert!(r.verified);
    }

    #[test]
    fn abelian_seed_is_its_own_closure() {
        let r = subalgebra_closure(&[Matrix::unit(3, 1, 3), Matrix::unit(3, 1, 2)]).unwrap();
        assert_eq!(r.dim, 2);
        assert!(r.verified);
        assert_eq!(r.rounds, 1);
    }

    #[test]
    fn identity_seed_reaches_gl() {
        let mut seed = sl_basis(2);
        seed.push(Matrix::identity(2));
        let r = subalgebra_closure(&seed).unwrap();
        assert_eq!(r.dim, 4);
        assert_eq!(classify(&r).family, AlgebraFamily::FullMatrixAlgebra);
    }

    #[test]
    fn closure_errors() {
        assert_eq!(subalgebra_closure(&[]).unwrap_err(), Error::EmptySeed);
        assert!(subalgebra_closure(&[Matrix::zero(2), Matrix::zero(3)]).is_err());
    }

    #[test]
    fn modes_give_same_basis() {
        let p = shift_pair(6, PairFamily::Corner).unwrap();
        let seed = [p.first, p.second];
        let a = subalgebra_closure_with(&seed, Execution::Parallel).unwrap();
        let b = subalgebra_closure_with(&seed, Execution::Sequential).unwrap();
        assert_eq!(a.basis, b.basis);
        assert_eq!(a.rounds, b.rounds);
    }

    #[test]
    fn classify_table() {
        assert_eq!(classify_dim(5, 24), TypeLabel::a(4));
        assert_eq!(classify_dim(6, 21), TypeLabel::c(3));
        assert_eq!(classify_dim(7, 14), TypeLabel::g2());
        assert_eq!(classify_dim(9, 36), TypeLabel::b(4));
        assert_eq!(classify_dim(3, 9).family, AlgebraFamily::FullMatrixAlgebra);
        let u = classify_dim(4, 7);
        assert_eq!(u.family, AlgebraFamily::Unrecognized);
        assert_eq!(u.dim, 7);
        assert_eq!(TypeLabel::c(3).to_string(), "C3");
        assert_eq!(TypeLabel::g2().to_string(), "G2");
    }

    #[test]
    fn predictions() {
        assert_eq!(
            predicted_type(PairFamily::Corner, 8).unwrap(),
            TypeLabel::c(4)
        );
        assert_eq!(
            predicted_type(PairFamily::Corner, 5).unwrap(),
            TypeLabel::a(4)
        );
        assert_eq!(
            predicted_type(PairFamily::DoubleCorner, 9).unwrap(),
            TypeLabel::b(4)
        );
        assert_eq!(
            predicted_type(PairFamily::DoubleCorner, 7).unwrap(),
            TypeLabel::g2()
        );
        assert_eq!(
            predicted_type(PairFamily::DoubleCorner, 6).unwrap(),
            TypeLabel::a(5)
        );
        assert_eq!(predicted_type(PairFamily::G2, 7).unwrap(), TypeLabel::g2());
        assert!(predicted_type(PairFamily::Corner, 2).is_err());
        assert!(predicted_type(PairFamily::DoubleCorner, 3).is_err());
        assert!(predicted_type(PairFamily::LowerBidiagonal, 4).is_err());
    }

    #[test]
    fn c_shift_values() {
        assert_eq!(c_shift(3, 0), BigInt::from(1));
        assert_eq!(c_shift(3, 4), BigInt::from(-1));
        assert_eq!(c_shift(3, 5), BigInt::zero());
        assert_eq!(c_shift(3, -1), BigInt::zero());
        assert_eq!(c_shift(4, 2), BigInt::from(2)); // 6 - 4
        for s in 0..=12 {
            for i in -2..=s + 3 {
                assert_eq!(
                    c_shift(s, i) + c_shift(s, i - 1),
                    c_shift(s + 1, i),
                    "s={s} i={i}"
                );
            }
        }
    }

    #[test]
    fn iterated_bracket_cases() {
        let p = shift_pair(3, PairFamily::Corner).unwrap();
        assert_eq!(iterated_bracket(&p.first, &p.second, 0).unwrap(), p.second);
        let h0 = iterated_bracket(&p.first, &p.second, 2).unwrap();
        let mut expected = Matrix::zero(3);
        expected.set(1, 1, rat(1));
        expected.set(2, 2, rat(-2));
        expected.set(3, 3, rat(1));
        assert_eq!(h0, expected);
        assert!(iterated_bracket(&p.first, &p.second, 5).unwrap().is_zero());
        assert!(iterated_bracket(&p.first, &p.second, 1000)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn iterated_bracket_limit() {
        // ad of a diagonal element is not nilpotent on e_{1,2}
        let mut h = Matrix::zero(2);
        h.set(1, 1, rat(1));
        let e = Matrix::unit(2, 1, 2);
        assert_eq!(
            iterated_bracket(&h, &e, 100).unwrap_err(),
            Error::BracketLimit { limit: 8 }
        );
        assert_eq!(iterated_bracket(&h, &e, 8).unwrap(), e);
    }

    #[test]
    fn closed_form_instances() {
        let c = closed_form_bracket(3, 1, PairFamily::Corner).unwrap();
        assert_eq!(c, &Matrix::unit(3, 2, 1) - &Matrix::unit(3, 3, 2));
        let d = closed_form_bracket(4, 2, PairFamily::DoubleCorner).unwrap();
        let mut expected = Matrix::zero(4);
        for (i, v) in [1, -1, -1, 1].iter().enumerate() {
            expected.set(i + 1, i + 1, rat(*v));
        }
        assert_eq!(d, expected);
        for n in 3..=8 {
            assert!(closed_form_bracket(n, 2 * n - 1, PairFamily::Corner)
                .unwrap()
                .is_zero());
        }
        assert!(closed_form_bracket(4, 1, PairFamily::G2).is_err());
    }
}
