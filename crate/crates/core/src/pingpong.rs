//! Ping-pong bounds for the one-parameter subgroups `a(t)`, `b(s)`, `c(r)`
//! acting on the dominance regions `X1` / `X2`, and free-dense certificates.

use std::ops::RangeInclusive;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closure::{classify, predicted_type, subalgebra_closure, TypeLabel};
use crate::error::{Error, Result};
use crate::exact::{
    dyadic_above, dyadic_width, factorial, format_rational, isolate_largest_positive_root, rat,
    rat_big, Matrix, Polynomial, Rational, RootBracket,
};
use crate::generators::{g2_bvector, g2_pair, lower_pair, shift_pair, GeneratorPair, PairFamily};
use crate::groups::{lower_coefficient, OneParameter};
use crate::par::{self, Execution};

/// Root-isolation width used when none is given: `2^-40`.
pub fn default_width() -> Rational {
    dyadic_width(40)
}

/// Denominator exponent of the dyadic safe values.
const SAFE_BITS: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionKind {
    /// First coordinate strictly dominates.
    X1,
    /// Last coordinate strictly dominates.
    X2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Region {
    pub kind: RegionKind,
    pub n: usize,
}

pub fn in_region(v: &[Rational], region: Region) -> Result<bool> {
    if v.len() != region.n {
        return Err(Error::DimensionMismatch {
            expected: region.n,
            found: v.len(),
        });
    }
    let lead = match region.kind {
        RegionKind::X1 => 0,
        RegionKind::X2 => region.n - 1,
    };
    let top = v[lead].abs();
    Ok(v.iter()
        .enumerate()
        .all(|(i, x)| i == lead || x.abs() < top))
}

fn power_over_factorial(k: usize, scale: Rational) -> (usize, Rational) {
    (k, scale / rat_big(factorial(k)))
}

fn poly_from_terms(
    degree: usize,
    terms: impl IntoIterator<Item = (usize, Rational)>,
) -> Polynomial {
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for (k, c) in terms {
        coeffs[k] += c;
    }
    Polynomial::new(coeffs)
}

/// `T^{n-1}/(n-1)! - 2 sum_{i=1}^{n-1} T^{i-1}/(i-1)!`.
pub fn t_inequality(n: usize) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    let top = power_over_factorial(n - 1, Rational::one());
    let rest = (1..n).map(|i| power_over_factorial(i - 1, rat(-2)));
    Ok(poly_from_terms(n - 1, std::iter::once(top).chain(rest)))
}

/// The `n - 1` polynomials `LHS(R) - RHS_j(R)`, `1 <= j <= n-1`, whose joint
/// positivity at `R = |r|` gives `c(r) X1 \subset X2`. Here
/// `LHS = |c_{n-1,n}| R^{n-1}/(n-1)! - sum_{i=2}^{n} |c_{n-i,n}| R^{n-i}/(n-i)!`
/// and `RHS_j = sum_{i=1}^{j} |c_{j-i,j}| R^{j-i}/(j-i)!`.
pub fn r_inequalities(b: &[Rational]) -> Result<Vec<Polynomial>> {
    if b.is_empty() {
        return Err(Error::SizeTooSmall { n: 1, min: 2 });
    }
    if let Some(i) = b.iter().position(Zero::is_zero) {
        return Err(Error::ZeroCoefficient { index: i + 1 });
    }
    let n = b.len() + 1;
    let c = |k: usize, j: usize| lower_coefficient(b, k, j).abs();
    let lhs: Vec<(usize, Rational)> = std::iter::once(power_over_factorial(n - 1, c(n - 1, n)))
        .chain((2..=n).map(|i| power_over_factorial(n - i, -c(n - i, n))))
        .collect();
    Ok((1..n)
        .map(|j| {
            let rhs = (1..=j).map(|i| power_over_factorial(j - i, -c(j - i, j)));
            poly_from_terms(n - 1, lhs.iter().cloned().chain(rhs))
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    T,
    R,
}

/// Certified threshold: every polynomial is positive on `[safe_value, inf)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PingPongBound {
    pub kind: BoundKind,
    pub polys: Vec<Polynomial>,
    /// Bracket of the largest positive root over all polynomials, if any.
    pub bracket: Option<RootBracket>,
    pub safe_value: Rational,
}

impl PingPongBound {
    /// Re-checks the positivity invariant by exact evaluation.
    pub fn verify(&self) -> bool {
        let above = &self.safe_value + Rational::one();
        self.polys
            .iter()
            .all(|p| p.eval(&self.safe_value).is_positive() && p.eval(&above).is_positive())
            && self
                .bracket
                .as_ref()
                .is_none_or(|b| b.hi <= self.safe_value)
    }
}

fn bound_from(kind: BoundKind, polys: Vec<Polynomial>, width: &Rational) -> Result<PingPongBound> {
    let mut best: Option<RootBracket> = None;
    for p in &polys {
        if let Some(b) = isolate_largest_positive_root(p, width)?.bracket() {
            if best.as_ref().is_none_or(|cur| b.hi > cur.hi) {
                best = Some(b.clone());
            }
        }
    }
    let top = best
        .as_ref()
        .map(|b| b.hi.clone())
        .unwrap_or_else(Rational::zero);
    let bound = PingPongBound {
        kind,
        polys,
        bracket: best,
        safe_value: dyadic_above(&top, SAFE_BITS),
    };
    debug_assert!(bound.verify());
    Ok(bound)
}

pub fn compute_t0(n: usize, width: &Rational) -> Result<PingPongBound> {
    bound_from(BoundKind::T, vec![t_inequality(n)?], width)
}

pub fn compute_r0(b: &[Rational], width: &Rational) -> Result<PingPongBound> {
    bound_from(BoundKind::R, r_inequalities(b)?, width)
}

/// `|s| > 2` suffices for `b(s)`; no polynomial is needed.
pub fn s0() -> Rational {
    rat(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub sample: Vec<Rational>,
    pub power: i64,
    pub image: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpotReport {
    pub n: usize,
    pub source: RegionKind,
    pub target: RegionKind,
    pub samples: usize,
    pub powers: Vec<i64>,
    pub seed: u64,
    pub evaluations: usize,
    pub violations: Vec<Violation>,
}

const SAMPLE_BOX: i64 = 100;

fn regions_for(g: &OneParameter) -> Result<(RegionKind, RegionKind)> {
    match g {
        OneParameter::Upper { .. } => Ok((RegionKind::X2, RegionKind::X1)),
        OneParameter::Corner { .. } | OneParameter::Lower { .. } => {
            Ok((RegionKind::X1, RegionKind::X2))
        }
        OneParameter::Nilpotent { .. } => Err(Error::InvalidFamily(
            "spot checks need a(t), b(s) or c(r)".into(),
        )),
    }
}

/// Random-sample check of `g^m X_src \subset X_dst`, refusing parameters
/// at or below the certified bound, where the inclusion is not guaranteed.
pub fn pingpong_spotcheck(
    g: &OneParameter,
    powers: RangeInclusive<i64>,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<SpotReport> {
    let width = default_width();
    let (value, bound) = match g {
        OneParameter::Upper { n, t } => (t.abs(), compute_t0(*n, &width)?.safe_value),
        OneParameter::Corner { s, .. } => (s.abs(), s0()),
        OneParameter::Lower { r, b } => (r.abs(), compute_r0(b, &width)?.safe_value),
        OneParameter::Nilpotent { .. } => return Err(regions_for(g).unwrap_err()),
    };
    if value <= bound {
        return Err(Error::BelowBound {
            value: format_rational(&value),
            bound: format_rational(&bound),
        });
    }
    pingpong_probe(g, powers, samples, seed, exec)
}

/// Same sampling as [`pingpong_spotcheck`] without the bound check. Any
/// parameter is accepted and violations are simply reported.
pub fn pingpong_probe(
    g: &OneParameter,
    powers: RangeInclusive<i64>,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<SpotReport> {
    let (source, target) = regions_for(g)?;
    let n = g.n();
    let powers: Vec<i64> = powers.filter(|&m| m != 0).collect();
    let mats: Vec<Matrix> = powers.iter().map(|&m| g.power(m)).collect::<Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let src = Region { kind: source, n };
    let dst = Region { kind: target, n };
    let draws: Vec<Vec<Rational>> = (0..samples)
        .map(|_| loop {
            let v: Vec<Rational> = (0..n)
                .map(|_| rat(rng.gen_range(-SAMPLE_BOX..=SAMPLE_BOX)))
                .collect();
            if in_region(&v, src).expect("sample length") {
                break v;
            }
        })
        .collect();

    let per_sample = par::map(exec, &draws, |v| {
        mats.iter()
            .zip(&powers)
            .filter_map(|(m, &power)| {
                let image = m * &v[..];
                (!in_region(&image, dst).expect("image length")).then(|| Violation {
                    sample: v.clone(),
                    power,
                    image,
                })
            })
            .collect::<Vec<_>>()
    });
    Ok(SpotReport {
        n,
        source,
        target,
        samples,
        evaluations: samples * powers.len(),
        powers,
        seed,
        violations: per_sample.into_iter().flatten().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameters {
    /// Generators `a(t)`, `b(s)`.
    UpperCorner { t: Rational, s: Rational },
    /// Generators `a(t)`, `c(r)`.
    UpperLower { t: Rational, r: Rational },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Conclusion {
    Insufficient,
    DenseOnly,
    FreeDenseCertified,
}

impl Conclusion {
    pub fn name(self) -> &'static str {
        match self {
            Conclusion::FreeDenseCertified => "free_dense_certified",
            Conclusion::DenseOnly => "dense_only",
            Conclusion::Insufficient => "insufficient",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SecondBound {
    /// `s0 = 2` for `b(s)`.
    Corner(Rational),
    Lower(Box<PingPongBound>),
}

impl SecondBound {
    pub fn threshold(&self) -> &Rational {
        match self {
            SecondBound::Corner(s0) => s0,
            SecondBound::Lower(b) => &b.safe_value,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub n: usize,
    pub family: PairFamily,
    pub b: Option<Vec<Rational>>,
    pub parameters: Parameters,
    pub closure_dim: usize,
    pub closure_rounds: usize,
    pub label: TypeLabel,
    /// Type the pair is known to generate, when the family determines it.
    pub expected: Option<TypeLabel>,
    pub dense: bool,
    pub t_bound: PingPongBound,
    pub second_bound: SecondBound,
    /// `|t| - t0` and `|s| - s0` (or `|r| - r0`); both positive iff free.
    pub t_margin: Rational,
    pub second_margin: Rational,
    pub free: bool,
    pub conclusion: Conclusion,
}

fn pair_for(n: usize, family: PairFamily, b: Option<&[Rational]>) -> Result<GeneratorPair> {
    match family {
        PairFamily::Corner => shift_pair(n, family),
        PairFamily::LowerBidiagonal => {
            let b =
                b.ok_or_else(|| Error::InvalidFamily("lower family needs a b-vector".into()))?;
            if b.len() + 1 != n {
                return Err(Error::DimensionMismatch {
                    expected: n - 1,
                    found: b.len(),
                });
            }
            lower_pair(b)
        }
        PairFamily::G2 if n == 7 => Ok(g2_pair()),
        _ => Err(Error::InvalidFamily(format!(
            "no ping-pong certificate for {} at n = {n}",
            family.name()
        ))),
    }
}

/// Density from the closure of the pair, freeness from comparing the
/// parameters with the certified bounds.
pub fn certify_free_dense(
    n: usize,
    family: PairFamily,
    b: Option<&[Rational]>,
    parameters: &Parameters,
    width: &Rational,
) -> Result<Certificate> {
    let pair = pair_for(n, family, b)?;
    let (t, second) = match (family, parameters) {
        (PairFamily::Corner, Parameters::UpperCorner { t, s }) => (t, s),
        (PairFamily::LowerBidiagonal | PairFamily::G2, Parameters::UpperLower { t, r }) => (t, r),
        _ => {
            return Err(Error::InvalidFamily(format!(
                "parameters do not match the {} family",
                family.name()
            )))
        }
    };

    let closure = subalgebra_closure(&[pair.first.clone(), pair.second.clone()])?;
    let label = classify(&closure);
    let expected = match family {
        PairFamily::LowerBidiagonal => None,
        _ => Some(predicted_type(family, n)?),
    };
    let nonzero = !t.is_zero() && !second.is_zero();
    let dense =
        nonzero && label.is_simple() && expected.is_none_or(|e| e == label) && closure.verified;

    let t_bound = compute_t0(n, width)?;
    let second_bound = match family {
        PairFamily::Corner => SecondBound::Corner(s0()),
        _ => SecondBound::Lower(Box::new(compute_r0(
            pair.b.as_deref().unwrap_or_default(),
            width,
        )?)),
    };
    let t_margin = t.abs() - &t_bound.safe_value;
    let second_margin = second.abs() - second_bound.threshold();
    let free = t_margin.is_positive() && second_margin.is_positive();

    let conclusion = match (dense, free) {
        (true, true) => Conclusion::FreeDenseCertified,
        (true, false) => Conclusion::DenseOnly,
        _ => Conclusion::Insufficient,
    };
    Ok(Certificate {
        n,
        family,
        b: pair.b.clone(),
        parameters: parameters.clone(),
        closure_dim: closure.dim,
        closure_rounds: closure.rounds,
        label,
        expected,
        dense,
        t_bound,
        second_bound,
        t_margin,
        second_margin,
        free,
        conclusion,
    })
}

/// The G2 pair's `b`-vector, re-exported for callers assembling parameters.
pub fn g2_lower_b() -> Vec<Rational> {
    g2_bvector()
}
