use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{format_rational, rat, Rational};
use crate::error::{Error, Result};

/// Univariate polynomial with rational coefficients in ascending degree.
/// Trailing zero coefficients are stripped, so the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Self::new(
            (0..len)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) - other.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(Rational::one() / l)),
            None => Self::zero(),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Same roots, each with multiplicity one.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Integer coefficients obtained by multiplying through by the least
    /// common multiple of the denominators. No content is divided out.
    pub fn cleared_integer_coefficients(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect()
    }

    /// `1 + max |c_i / c_lead|`; every real root has absolute value below it.
    pub fn cauchy_bound(&self) -> Option<Rational> {
        let lead = self.leading()?;
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        Some(Rational::one() + max)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                1 => format!("{}*T", format_rational(c)),
                _ => format!("{}*T^{k}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Interval `[lo, hi]` around the largest positive root of a polynomial `p`
/// with `p(lo) <= 0 < p(hi)` and `p > 0` on `(hi, inf)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: Rational,
    pub hi: Rational,
    pub width_bound: Rational,
}

impl RootBracket {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootIsolation {
    Bracket(RootBracket),
    NoPositiveRoot,
}

impl RootIsolation {
    pub fn bracket(&self) -> Option<&RootBracket> {
        match self {
            RootIsolation::Bracket(b) => Some(b),
            RootIsolation::NoPositiveRoot => None,
        }
    }
}

struct SturmChain {
    chain: Vec<Polynomial>,
}

impl SturmChain {
    fn new(p: &Polynomial) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let k = chain.len();
            let r = chain[k - 2].div_rem(&chain[k - 1]).1;
            chain.push(r.scale(&rat(-1)));
        }
        chain.pop();
        SturmChain { chain }
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|q| q.eval(x).cmp(&Rational::zero())))
    }

    /// Sign variations immediately to the right of zero: each member's sign
    /// there is the sign of its lowest nonzero coefficient.
    fn variations_right_of_zero(&self) -> usize {
        Self::variations(self.chain.iter().map(|q| {
            q.coefficients()
                .iter()
                .find(|c| !c.is_zero())
                .map(|c| c.cmp(&Rational::zero()))
                .unwrap_or(Ordering::Equal)
        }))
    }
}

/// Brackets the largest positive real root of `p` to within `width`.
///
/// Uses the Cauchy bound as the starting upper endpoint and a Sturm chain of
/// the squarefree part to keep exactly the rightmost root inside the bracket
/// while bisecting. `p` must have a positive leading coefficient.
pub fn isolate_largest_positive_root(p: &Polynomial, width: &Rational) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !width.is_positive() {
        return Err(Error::NonPositiveWidth);
    }
    if !p.leading().unwrap().is_positive() {
        return Err(Error::NegativeLeadingCoefficient);
    }
    if p.degree() == Some(0) {
        return Ok(RootIsolation::NoPositiveRoot);
    }

    let sf = p.squarefree();
    let sturm = SturmChain::new(&sf);
    let bound = p.cauchy_bound().unwrap();

    let mut lo = Rational::zero();
    let mut hi = bound;
    let mut v_lo = sturm.variations_right_of_zero();
    let v_hi = sturm.variations_at(&hi);
    if v_lo == v_hi {
        return Ok(RootIsolation::NoPositiveRoot);
    }
    let mut v_hi = v_hi;

    // Invariant: the largest root lies in (lo, hi), sf(hi) != 0, and there
    // are no roots in [hi, inf).
    while &hi - &lo > *width || v_lo - v_hi > 1 {
        let mid = nonroot_midpoint(&sf, &lo, &hi);
        let v_mid = sturm.variations_at(&mid);
        if v_mid > v_hi {
            lo = mid;
            v_lo = v_mid;
        } else {
            hi = mid;
            v_hi = v_mid;
        }
    }

    if p.eval(&lo).is_positive() {
        return Err(Error::TangentialRoot);
    }
    debug_assert!(p.eval(&hi).is_positive());
    Ok(RootIsolation::Bracket(RootBracket {
        lo,
        hi,
        width_bound: width.clone(),
    }))
}

/// A point strictly inside `(lo, hi)` near the midpoint where `sf` does not
/// vanish.
fn nonroot_midpoint(sf: &Polynomial, lo: &Rational, hi: &Rational) -> Rational {
    let span = hi - lo;
    let mut k: i64 = 0;
    loop {
        // 1/2, 1/2 + 1/64, 1/2 - 1/64, 1/2 + 2/64, ...
        let offset = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let frac = super::ratio(32 + offset, 64);
        let mid = lo + &span * frac;
        if !sf.eval(&mid).is_zero() {
            return mid;
        }
        k += 1;
    }
}
