//! Exact exponentials of the nilpotent generators, reduced words over two
//! one-parameter subgroups, freeness scans and thin-pair emission.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{factorial, rat, rat_big, Matrix, Rational};
use crate::par::{self, Execution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub matrix: Matrix,
    pub provenance: Option<Word>,
}

impl GroupElement {
    pub fn new(matrix: Matrix) -> Self {
        GroupElement {
            matrix,
            provenance: None,
        }
    }

    pub fn determinant(&self) -> Rational {
        self.matrix.determinant()
    }

    pub fn has_unit_determinant(&self) -> bool {
        self.determinant().is_one()
    }
}

fn require_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::SizeTooSmall { n, min: 2 });
    }
    Ok(())
}

/// `a(t) = exp(t x) = 1 + sum_{i<j} t^{j-i}/(j-i)! e_{i,j}`.
pub fn exp_upper(t: &Rational, n: usize) -> Result<GroupElement> {
    require_n(n)?;
    let coeff: Vec<Rational> = (0..n)
        .map(|k| num_traits::pow(t.clone(), k) / rat_big(factorial(k)))
        .collect();
    let mut m = Matrix::zero(n);
    for i in 1..=n {
        for j in i..=n {
            m.set(i, j, coeff[j - i].clone());
        }
    }
    Ok(GroupElement::new(m))
}

/// `b(s) = exp(s e_{n,1}) = 1 + s e_{n,1}`.
pub fn exp_corner(s: &Rational, n: usize) -> Result<GroupElement> {
    require_n(n)?;
    let mut m = Matrix::identity(n);
    m.set(n, 1, s.clone());
    Ok(GroupElement::new(m))
}

/// `c_{k,j} = prod_{m=1}^{k} b_{j-m}`, the coefficient products of `exp(r z)`
/// (1-based `j`; `c_{0,j} = 1`).
pub fn lower_coefficient(b: &[Rational], k: usize, j: usize) -> Rational {
    (1..=k).fold(Rational::one(), |acc, m| acc * &b[j - m - 1])
}

/// `c(r) = exp(r z) = 1 + sum_{i<j} c_{j-i,j} r^{j-i}/(j-i)! e_{j,i}`.
pub fn exp_lower(r: &Rational, b: &[Rational]) -> Result<GroupElement> {
    if b.is_empty() {
        return Err(Error::SizeTooSmall { n: 1, min: 2 });
    }
    if let Some(i) = b.iter().position(Zero::is_zero) {
        return Err(Error::ZeroCoefficient { index: i + 1 });
    }
    let n = b.len() + 1;
    let mut m = Matrix::identity(n);
    for j in 2..=n {
        for i in 1..j {
            let k = j - i;
            let v =
                lower_coefficient(b, k, j) * num_traits::pow(r.clone(), k) / rat_big(factorial(k));
            m.set(j, i, v);
        }
    }
    Ok(GroupElement::new(m))
}

/// `exp(t M) = sum_{k<n} t^k M^k / k!` for nilpotent `M`.
pub fn exp_nilpotent(m: &Matrix, t: &Rational) -> Result<GroupElement> {
    let n = m.n();
    if !m.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let tm = m.scale(t);
    let mut term = Matrix::identity(n);
    let mut acc = Matrix::identity(n);
    for k in 1..n {
        term = (&term * &tm).scale(&crate::exact::ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        acc += &term;
    }
    Ok(GroupElement::new(acc))
}

/// A one-parameter subgroup `k -> g^k` used as a word letter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OneParameter {
    /// `a(t)`; `a(t)^k = a(kt)`.
    Upper { n: usize, t: Rational },
    /// `b(s)`; `b(s)^k = b(ks)`.
    Corner { n: usize, s: Rational },
    /// `c(r)` for the given `b`; `c(r)^k = c(kr)`.
    Lower { r: Rational, b: Vec<Rational> },
    /// `exp(t M)` for arbitrary nilpotent `M`, powered by repeated squaring.
    Nilpotent { m: Matrix, t: Rational },
}

impl OneParameter {
    pub fn n(&self) -> usize {
        match self {
            OneParameter::Upper { n, .. } | OneParameter::Corner { n, .. } => *n,
            OneParameter::Lower { b, .. } => b.len() + 1,
            OneParameter::Nilpotent { m, .. } => m.n(),
        }
    }

    pub fn power(&self, k: i64) -> Result<Matrix> {
        let kr = rat(k);
        Ok(match self {
            OneParameter::Upper { n, t } => exp_upper(&(t * &kr), *n)?.matrix,
            OneParameter::Corner { n, s } => exp_corner(&(s * &kr), *n)?.matrix,
            OneParameter::Lower { r, b } => exp_lower(&(r * &kr), b)?.matrix,
            OneParameter::Nilpotent { m, t } => {
                let base = if k < 0 { -t.clone() } else { t.clone() };
                exp_nilpotent(m, &base)?.matrix.pow(k.unsigned_abs())
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub letter: Letter,
    pub exponent: i64,
}

/// Reduced word: alternating letters, nonzero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word {
    syllables: Vec<Syllable>,
}

impl Word {
    pub fn new(syllables: Vec<Syllable>) -> Result<Self> {
        for (k, s) in syllables.iter().enumerate() {
            if s.exponent == 0 {
                return Err(Error::UnreducedWord(format!(
                    "zero exponent in syllable {}",
                    k + 1
                )));
            }
            if k > 0 && syllables[k - 1].letter == s.letter {
                return Err(Error::UnreducedWord(format!(
                    "syllables {} and {} use the same letter",
                    k,
                    k + 1
                )));
            }
        }
        Ok(Word { syllables })
    }

    /// Alternating word starting at `first` with the given exponents.
    pub fn alternating(first: Letter, exponents: &[i64]) -> Result<Self> {
        let mut letter = first;
        let syllables = exponents
            .iter()
            .map(|&exponent| {
                let s = Syllable { letter, exponent };
                letter = letter.other();
                s
            })
            .collect();
        Self::new(syllables)
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Canonical scan order: syllable count, then starting letter, then the
    /// exponent tuple.
    pub fn canonical_cmp(&self, other: &Word) -> Ordering {
        let key = |w: &Word| (w.len(), w.syllables.first().map(|s| s.letter));
        key(self).cmp(&key(other)).then_with(|| {
            let ea = self.syllables.iter().map(|s| s.exponent);
            let eb = other.syllables.iter().map(|s| s.exponent);
            ea.cmp(eb)
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .syllables
            .iter()
            .map(|s| format!("{:?}^{}", s.letter, s.exponent))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Product of the syllable matrices, left to right.
pub fn word_eval(w: &Word, a: &OneParameter, b: &OneParameter) -> Result<Matrix> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    let mut acc = Matrix::identity(a.n());
    for s in w.syllables() {
        let g = match s.letter {
            Letter::A => a.power(s.exponent)?,
            Letter::B => b.power(s.exponent)?,
        };
        acc = &acc * &g;
    }
    Ok(acc)
}

/// Uniformly random reduced word with `1..=max_syllables` syllables and
/// exponents in `[-max_exp, max_exp] \ {0}`.
pub fn random_word<R: Rng>(rng: &mut R, max_syllables: usize, max_exp: i64) -> Word {
    let len = rng.gen_range(1..=max_syllables.max(1));
    let first = if rng.gen_bool(0.5) {
        Letter::A
    } else {
        Letter::B
    };
    let exps: Vec<i64> = (0..len)
        .map(|_| {
            let e = rng.gen_range(1..=max_exp.max(1));
            if rng.gen_bool(0.5) {
                e
            } else {
                -e
            }
        })
        .collect();
    Word::alternating(first, &exps).expect("nonzero alternating exponents")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub words_checked: u64,
    /// Words evaluating to the identity, in canonical order.
    pub collisions: Vec<Word>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// `sum_{k=1}^{L} 2 (2E)^k`, the number of reduced words the scan visits.
pub fn reduced_word_count(max_syllables: usize, max_exp: i64) -> u64 {
    let per = 2 * max_exp as u64;
    (1..=max_syllables as u32).map(|k| 2 * per.pow(k)).sum()
}

struct PowerTable {
    exps: Vec<i64>,
    a: Vec<Matrix>,
    b: Vec<Matrix>,
}

impl PowerTable {
    fn get(&self, letter: Letter, idx: usize) -> &Matrix {
        match letter {
            Letter::A => &self.a[idx],
            Letter::B => &self.b[idx],
        }
    }
}

fn scan_from(
    table: &PowerTable,
    prefix: &mut Vec<(Letter, usize)>,
    product: &Matrix,
    remaining: usize,
    checked: &mut u64,
    hits: &mut Vec<Word>,
) {
    if remaining == 0 {
        return;
    }
    let next = prefix.last().expect("nonempty prefix").0.other();
    for idx in 0..table.exps.len() {
        let p = product * table.get(next, idx);
        prefix.push((next, idx));
        *checked += 1;
        if p.is_identity() {
            hits.push(word_of(table, prefix));
        }
        scan_from(table, prefix, &p, remaining - 1, checked, hits);
        prefix.pop();
    }
}

fn word_of(table: &PowerTable, prefix: &[(Letter, usize)]) -> Word {
    Word::new(
        prefix
            .iter()
            .map(|&(letter, idx)| Syllable {
                letter,
                exponent: table.exps[idx],
            })
            .collect(),
    )
    .expect("scan only builds reduced words")
}

pub fn freeness_scan(
    a: &OneParameter,
    b: &OneParameter,
    max_syllables: usize,
    max_exp: i64,
) -> Result<ScanReport> {
    freeness_scan_with(a, b, max_syllables, max_exp, Execution::default())
}

/// Evaluates every reduced word with at most `max_syllables` syllables and
/// exponents in `[-max_exp, max_exp] \ {0}` and collects those equal to the
/// identity. A clean report is evidence for freeness, a collision disproves it.
///
/// Subtrees rooted at the two-syllable prefixes are scanned in parallel and
/// reuse the prefix product.
pub fn freeness_scan_with(
    a: &OneParameter,
    b: &OneParameter,
    max_syllables: usize,
    max_exp: i64,
    exec: Execution,
) -> Result<ScanReport> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    if max_syllables == 0 || max_exp < 1 {
        return Ok(ScanReport {
            words_checked: 0,
            collisions: Vec::new(),
        });
    }
    let exps: Vec<i64> = (1..=max_exp).flat_map(|e| [-e, e]).collect();
    let table = PowerTable {
        a: exps.iter().map(|&e| a.power(e)).collect::<Result<_>>()?,
        b: exps.iter().map(|&e| b.power(e)).collect::<Result<_>>()?,
        exps,
    };

    let mut checked = 0u64;
    let mut hits = Vec::new();
    let mut roots = Vec::new();
    for letter in [Letter::A, Letter::B] {
        for idx in 0..table.exps.len() {
            checked += 1;
            let m = table.get(letter, idx);
            if m.is_identity() {
                hits.push(word_of(&table, &[(letter, idx)]));
            }
            if max_syllables >= 2 {
                for idx2 in 0..table.exps.len() {
                    roots.push([(letter, idx), (letter.other(), idx2)]);
                }
            }
        }
    }

    let table_ref = &table;
    let results = par::map(exec, &roots, |root| {
        let mut prefix = root.to_vec();
        let p = table_ref.get(root[0].0, root[0].1) * table_ref.get(root[1].0, root[1].1);
        let mut c = 1u64;
        let mut h = Vec::new();
        if p.is_identity() {
            h.push(word_of(table_ref, &prefix));
        }
        scan_from(
            table_ref,
            &mut prefix,
            &p,
            max_syllables - 2,
            &mut c,
            &mut h,
        );
        (c, h)
    });
    for (c, h) in results {
        checked += c;
        hits.extend(h);
    }
    hits.sort_by(Word::canonical_cmp);
    Ok(ScanReport {
        words_checked: checked,
        collisions: hits,
    })
}

/// Evaluates `samples` random reduced words drawn from a ChaCha stream
/// seeded with `seed`. Duplicated draws are reported once.
pub fn sampled_scan(
    a: &OneParameter,
    b: &OneParameter,
    max_syllables: usize,
    max_exp: i64,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<ScanReport> {
    use rand::SeedableRng;
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    if max_syllables == 0 || max_exp < 1 {
        return Ok(ScanReport {
            words_checked: 0,
            collisions: Vec::new(),
        });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<Word> = (0..samples)
        .map(|_| random_word(&mut rng, max_syllables, max_exp))
        .collect();
    let evaluated = par::map(exec, &words, |w| {
        word_eval(w, a, b).map(|m| m.is_identity())
    });
    let mut hits = Vec::new();
    for (w, hit) in words.iter().zip(evaluated) {
        if hit? {
            hits.push(w.clone());
        }
    }
    hits.sort_by(Word::canonical_cmp);
    hits.dedup();
    Ok(ScanReport {
        words_checked: samples as u64,
        collisions: hits,
    })
}

#[derive(Clone, Debug)]
pub struct ThinPair {
    pub n: usize,
    pub t: Rational,
    pub s: Rational,
    pub a: GroupElement,
    pub b: GroupElement,
    /// `|t|` exceeds the certified `t0` and `|s| > 2`.
    pub certified: bool,
    pub warning: Option<String>,
}

/// `(a((n-1)! q), b(s))`, integral by construction.
pub fn thin_pair(n: usize, q: i64, s: i64) -> Result<ThinPair> {
    if n < 3 {
        return Err(Error::SizeTooSmall { n, min: 3 });
    }
    if q == 0 {
        return Err(Error::InvalidFamily("q must be nonzero".into()));
    }
    let t = rat_big(factorial(n - 1)) * rat(q);
    let s = rat(s);
    let a = exp_upper(&t, n)?;
    let b = exp_corner(&s, n)?;
    debug_assert!(a.matrix.is_integral() && b.matrix.is_integral());
    let t0 = crate::pingpong::compute_t0(n, &crate::pingpong::default_width())?;
    let t_ok = t.abs() > t0.safe_value;
    let s_ok = s.abs() > crate::pingpong::s0();
    let warning = match (t_ok, s_ok) {
        (true, true) => None,
        (false, _) => Some(format!(
            "|t| = {} does not exceed the certified t0 bound {}",
            crate::exact::format_rational(&t.abs()),
            crate::exact::format_rational(&t0.safe_value)
        )),
        (true, false) => Some("|s| must exceed 2".to_string()),
    };
    Ok(ThinPair {
        n,
        t,
        s,
        a,
        b,
        certified: t_ok && s_ok,
        warning,
    })
}

/// `(a(6q), c(r))` with `b = (8, 12, 14)`, the only lower-triangular thin
/// pair exposed.
pub fn thin_lower_pair_n4(q: i64, r: i64) -> Result<ThinPair> {
    if q == 0 {
        return Err(Error::InvalidFamily("q must be nonzero".into()));
    }
    let b: Vec<Rational> = [8, 12, 14].iter().map(|&v| rat(v)).collect();
    let t = rat(6 * q);
    let r = rat(r);
    let a = exp_upper(&t, 4)?;
    let c = exp_lower(&r, &b)?;
    let width = crate::pingpong::default_width();
    let t0 = crate::pingpong::compute_t0(4, &width)?;
    let r0 = crate::pingpong::compute_r0(&b, &width)?;
    let t_ok = t.abs() > t0.safe_value;
    let r_ok = r.abs() > r0.safe_value;
    let warning =
        (!(t_ok && r_ok)).then(|| "parameters do not exceed the certified bounds".to_string());
    Ok(ThinPair {
        n: 4,
        t,
        s: r,
        a,
        b: c,
        certified: t_ok && r_ok,
        warning,
    })
}

/// Anti-diagonal form `J` with `J_{k,n+1-k} = (-1)^k`.
///
/// With this sign choice the diagram involution is `z -> -J z^T J^{-1}`, so
/// its fixed algebra is the Lie algebra of `{ g : g^T J g = J }`:
/// symplectic for even `n`, orthogonal for odd `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    pub n: usize,
    pub j: Matrix,
}

impl FormMatrix {
    pub fn is_alternating(&self) -> bool {
        self.j.transpose() == -&self.j
    }

    pub fn is_symmetric(&self) -> bool {
        self.j.transpose() == self.j
    }

    pub fn inverse(&self) -> Matrix {
        // J^2 = (-1)^{n+1}
        if self.n.is_multiple_of(2) {
            -&self.j
        } else {
            self.j.clone()
        }
    }
}

pub fn form_matrix(n: usize) -> Result<FormMatrix> {
    require_n(n)?;
    let mut j = Matrix::zero(n);
    for k in 1..=n {
        j.set(k, n + 1 - k, rat(if k % 2 == 0 { 1 } else { -1 }));
    }
    Ok(FormMatrix { n, j })
}

/// `g^T J g = J`.
pub fn check_form(g: &Matrix, form: &FormMatrix) -> bool {
    g.n() == form.n && &(&g.transpose() * &form.j) * g == form.j
}

/// Checks `check_form` for many group elements at once.
pub fn check_form_all(elements: &[Matrix], form: &FormMatrix, exec: Execution) -> bool {
    par::map(exec, elements, |g| check_form(g, form))
        .into_iter()
        .all(|ok| ok)
}
