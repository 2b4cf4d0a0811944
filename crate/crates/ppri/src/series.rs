//! Series engine: Cauchy products, certified complex summation, p-adic
//! summation against valuation certificates, Abel evaluation,
//! exponentials, and Laurent sequences in the ℓ¹ (Wiener) algebra.
//!
//! Summation never guesses: a result is either accompanied by a proven
//! tail bound (geometric-ratio or alternating certificate, or an exact
//! p-adic precision statement), or it is explicitly flagged as an
//! uncertified partial sum.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalars::{self, Complex64, PAdic, Prime, Valuation};
use crate::Rational;

/// Hard cap on streamed summation before giving up on a certificate.
pub const DEFAULT_SUM_CAP: usize = 1_000_000;

const PADIC_SUM_CAP: usize = 100_000;

/// Ratio threshold for the strict geometric tail certificate.
const GEOMETRIC_CERT_RATIO: f64 = 0.99;

/// Looser ratio used only to distinguish "slowly geometric, uncertified"
/// from "divergence suspected" when the term cap is reached.
const LOOSE_RATIO: f64 = 0.999;

/// Scalars a coefficient sequence can range over.
///
/// Addition and multiplication are fallible because truncated p-adic
/// values can exhaust their precision or disagree on the prime; exact
/// rationals and doubles never fail.
pub trait SeriesScalar: Clone + fmt::Debug {
    fn add_s(&self, other: &Self) -> Result<Self>;
    fn mul_s(&self, other: &Self) -> Result<Self>;
    /// A zero compatible with `self` (for p-adics: same prime).
    fn zero_like(&self) -> Self;
    fn is_zero_s(&self) -> bool;
}

impl SeriesScalar for Rational {
    fn add_s(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn mul_s(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
}

impl SeriesScalar for Complex64 {
    fn add_s(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn mul_s(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn is_zero_s(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
}

impl SeriesScalar for f64 {
    fn add_s(&self, other: &Self) -> Result<Self> {
        Ok(self + other)
    }
    fn mul_s(&self, other: &Self) -> Result<Self> {
        Ok(self * other)
    }
    fn zero_like(&self) -> Self {
        0.0
    }
    fn is_zero_s(&self) -> bool {
        *self == 0.0
    }
}

impl SeriesScalar for PAdic {
    fn add_s(&self, other: &Self) -> Result<Self> {
        self.try_add(other)
    }
    fn mul_s(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)
    }
    fn zero_like(&self) -> Self {
        self.same_prime_zero()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
}

/// A coefficient sequence a₀, a₁, a₂, …
///
/// Finite sequences are zero beyond their stored length (they represent
/// finitely supported series). Streamed sequences wrap a pure generator —
/// the same index always yields the same term — and memoize the consumed
/// prefix behind a mutex, so a sequence can be shared across threads.
pub enum CoeffSeq<T> {
    Finite { terms: Vec<T>, zero: T },
    Streamed(StreamedSeq<T>),
}

pub struct StreamedSeq<T> {
    gen: Arc<dyn Fn(usize) -> T + Send + Sync>,
    cache: Arc<Mutex<Vec<T>>>,
}

impl<T> Clone for StreamedSeq<T> {
    fn clone(&self) -> Self {
        StreamedSeq {
            gen: Arc::clone(&self.gen),
            cache: Arc::clone(&self.cache),
        }
    }
}

impl<T> Clone for CoeffSeq<T>
where
    T: Clone,
{
    fn clone(&self) -> Self {
        match self {
            CoeffSeq::Finite { terms, zero } => CoeffSeq::Finite {
                terms: terms.clone(),
                zero: zero.clone(),
            },
            CoeffSeq::Streamed(s) => CoeffSeq::Streamed(s.clone()),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for CoeffSeq<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffSeq::Finite { terms, .. } => write!(f, "CoeffSeq::Finite({terms:?})"),
            CoeffSeq::Streamed(_) => write!(f, "CoeffSeq::Streamed(..)"),
        }
    }
}

impl<T: SeriesScalar> CoeffSeq<T> {
    /// A finitely supported sequence. The zero element for out-of-range
    /// indices is derived from the first term.
    pub fn finite(terms: Vec<T>) -> CoeffSeq<T> {
        assert!(
            !terms.is_empty(),
            "use finite_with_zero for empty sequences"
        );
        let zero = terms[0].zero_like();
        CoeffSeq::Finite { terms, zero }
    }

    /// A finitely supported sequence with an explicit zero element
    /// (needed when `terms` may be empty).
    pub fn finite_with_zero(terms: Vec<T>, zero: T) -> CoeffSeq<T> {
        CoeffSeq::Finite { terms, zero }
    }

    /// Wrap a pure generator. Terms are memoized on first use.
    pub fn streamed(gen: impl Fn(usize) -> T + Send + Sync + 'static) -> CoeffSeq<T> {
        CoeffSeq::Streamed(StreamedSeq {
            gen: Arc::new(gen),
            cache: Arc::new(Mutex::new(Vec::new())),
        })
    }

    pub fn term(&self, j: usize) -> T {
        match self {
            CoeffSeq::Finite { terms, zero } => {
                terms.get(j).cloned().unwrap_or_else(|| zero.clone())
            }
            CoeffSeq::Streamed(s) => {
                let mut cache = s.cache.lock().expect("series cache poisoned");
                while cache.len() <= j {
                    let k = cache.len();
                    let v = (s.gen)(k);
                    cache.push(v);
                }
                cache[j].clone()
            }
        }
    }

    /// Exact length for finite sequences, `None` for streams.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            CoeffSeq::Finite { terms, .. } => Some(terms.len()),
            CoeffSeq::Streamed(_) => None,
        }
    }

    pub fn zero_elem(&self) -> T {
        match self {
            CoeffSeq::Finite { zero, .. } => zero.clone(),
            CoeffSeq::Streamed(_) => self.term(0).zero_like(),
        }
    }
}

/// A summation outcome: the value, how many terms went into it, and what
/// is known about the truncation error.
#[derive(Debug, Clone, PartialEq)]
pub struct SumResult<T> {
    pub value: T,
    pub terms_used: usize,
    pub error_bound: ErrorBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ErrorBound {
    /// No truncation error at the stated precision (finite sums, p-adic
    /// sums certified modulo p^N).
    ExactZero,
    /// Proven bound on |true sum − value|.
    Proven(f64),
    /// No certificate applies; the value is a best-effort partial sum.
    Unproven,
}

impl ErrorBound {
    pub fn certified(&self) -> bool {
        !matches!(self, ErrorBound::Unproven)
    }

    pub fn bound(&self) -> Option<f64> {
        match self {
            ErrorBound::ExactZero => Some(0.0),
            ErrorBound::Proven(b) => Some(*b),
            ErrorBound::Unproven => None,
        }
    }
}

impl<T> SumResult<T> {
    pub fn certified(&self) -> bool {
        self.error_bound.certified()
    }
}

/// The Cauchy product c_n = Σ_{j=0}^{n} a_j·b_{n−j}, computed exactly in
/// the scalar ring for n = 0..=upto.
pub fn cauchy_product<T: SeriesScalar>(
    a: &CoeffSeq<T>,
    b: &CoeffSeq<T>,
    upto: usize,
) -> Result<CoeffSeq<T>> {
    let zero = a.zero_elem();
    let mut out = Vec::with_capacity(upto + 1);
    for n in 0..=upto {
        let mut acc = zero.clone();
        for j in 0..=n {
            let aj = a.term(j);
            if aj.is_zero_s() {
                continue;
            }
            let bk = b.term(n - j);
            if bk.is_zero_s() {
                continue;
            }
            acc = acc.add_s(&aj.mul_s(&bk)?)?;
        }
        out.push(acc);
    }
    Ok(CoeffSeq::finite_with_zero(out, zero))
}

fn ratio(prev: f64, next: f64) -> f64 {
    if prev == 0.0 {
        if next == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        next / prev
    }
}

/// Sum a complex series with a certified tail bound below `eps` when one
/// of the built-in certificates applies:
///
/// * geometric domination — the last eight term ratios all stay ≤ 0.99,
///   giving the tail bound |a_j|·r/(1−r);
/// * alternating structure — real terms with strictly alternating signs
///   and nonincreasing magnitudes, giving the first-omitted-term bound.
///
/// Both certificates inspect finitely many terms, so they certify the
/// tail of the pattern seen so far; a stream that breaks pattern later is
/// outside any finite test's reach. Finite sequences are summed exactly.
///
/// If `max_terms` is reached without a certificate, the partial sum is
/// returned unproven when the recent term ratios still look summable
/// (≤ 0.999); otherwise the summation reports
/// [`Error::NonConvergenceSuspected`].
pub fn sum_complex(
    a: &CoeffSeq<Complex64>,
    eps: f64,
    max_terms: usize,
) -> Result<SumResult<Complex64>> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::DomainError(
            "summation tolerance must be a positive real".into(),
        ));
    }
    if let Some(len) = a.finite_len() {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..len {
            let t = a.term(j);
            if !t.is_finite() {
                return Err(Error::NonFiniteInput);
            }
            s += t;
        }
        return Ok(SumResult {
            value: s,
            terms_used: len,
            error_bound: ErrorBound::ExactZero,
        });
    }

    let mut s = Complex64::new(0.0, 0.0);
    let mut window: Vec<f64> = Vec::with_capacity(9);
    let mut alternating = true;
    let mut last_sign = 0i8;
    let mut prev_mag = f64::NAN;
    for j in 0..max_terms {
        let t = a.term(j);
        if !t.is_finite() {
            return Err(Error::NonFiniteInput);
        }
        s += t;
        let m = t.norm();
        if alternating {
            let sign = if t.im != 0.0 {
                0
            } else if t.re > 0.0 {
                1
            } else if t.re < 0.0 {
                -1
            } else {
                0
            };
            if sign == 0 || (last_sign != 0 && sign == last_sign) || (j > 0 && m > prev_mag) {
                alternating = false;
            }
            last_sign = sign;
        }
        prev_mag = m;
        if window.len() == 9 {
            window.remove(0);
        }
        window.push(m);

        if alternating {
            let next = a.term(j + 1).norm();
            if next <= eps {
                return Ok(SumResult {
                    value: s,
                    terms_used: j + 1,
                    error_bound: ErrorBound::Proven(next),
                });
            }
        }
        if window.len() == 9 {
            let mut r: f64 = 0.0;
            for i in 1..9 {
                r = r.max(ratio(window[i - 1], window[i]));
            }
            if r <= GEOMETRIC_CERT_RATIO {
                let tail = m * r / (1.0 - r);
                if tail <= eps {
                    return Ok(SumResult {
                        value: s,
                        terms_used: j + 1,
                        error_bound: ErrorBound::Proven(tail),
                    });
                }
            }
        }
    }

    let mut r_loose = f64::INFINITY;
    if window.len() >= 2 {
        r_loose = 0.0;
        for i in 1..window.len() {
            r_loose = r_loose.max(ratio(window[i - 1], window[i]));
        }
    }
    if r_loose <= LOOSE_RATIO {
        Ok(SumResult {
            value: s,
            terms_used: max_terms,
            error_bound: ErrorBound::Unproven,
        })
    } else {
        Err(Error::NonConvergenceSuspected { terms: max_terms })
    }
}

/// Leibniz summation of Σ (−1)^j·b_j for nonincreasing, nonnegative b_j.
///
/// Monotonicity is verified over every consumed term and reported as
/// [`Error::MonotonicityViolation`] with the offending index. The error
/// bound is the first omitted term, which the test guarantees dominates
/// the tail.
pub fn alternating_sum(b: &CoeffSeq<f64>, eps: f64) -> Result<SumResult<f64>> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::DomainError(
            "summation tolerance must be a positive real".into(),
        ));
    }
    let validate = |j: usize, cur: f64, prev: Option<f64>| -> Result<()> {
        if !cur.is_finite() {
            return Err(Error::NonFiniteInput);
        }
        if cur < 0.0 {
            return Err(Error::DomainError(format!(
                "alternating summation needs nonnegative terms; b_{j} = {cur}"
            )));
        }
        if let Some(p) = prev {
            if cur > p {
                return Err(Error::MonotonicityViolation { index: j });
            }
        }
        Ok(())
    };

    if let Some(len) = b.finite_len() {
        let mut s = 0.0;
        let mut prev = None;
        for j in 0..len {
            let t = b.term(j);
            validate(j, t, prev)?;
            prev = Some(t);
            s += if j % 2 == 0 { t } else { -t };
        }
        return Ok(SumResult {
            value: s,
            terms_used: len,
            error_bound: ErrorBound::ExactZero,
        });
    }

    let mut s = 0.0;
    let mut prev = None;
    for j in 0..DEFAULT_SUM_CAP {
        let t = b.term(j);
        validate(j, t, prev)?;
        prev = Some(t);
        s += if j % 2 == 0 { t } else { -t };
        let next = b.term(j + 1);
        validate(j + 1, next, prev)?;
        if next <= eps {
            return Ok(SumResult {
                value: s,
                terms_used: j + 1,
                error_bound: ErrorBound::Proven(next),
            });
        }
    }
    Err(Error::NonConvergenceSuspected {
        terms: DEFAULT_SUM_CAP,
    })
}

/// Σ x^j = 1/(1−x) for a rational |x| < 1 (archimedean), exactly.
pub fn geometric_sum_real(x: &Rational) -> Result<Rational> {
    if x.abs() >= Rational::one() {
        return Err(Error::DomainError(format!(
            "|x| = {} ≥ 1: the terms x^j satisfy |x|^j ≥ 1 and cannot tend to 0",
            x.abs()
        )));
    }
    Ok(Rational::one() / (Rational::one() - x))
}

/// Σ z^j = 1/(1−z) for complex |z| < 1, to double precision.
pub fn geometric_sum_complex(z: Complex64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    if z.norm() >= 1.0 {
        return Err(Error::DomainError(format!(
            "|z| = {} ≥ 1: the terms z^j satisfy |z|^j ≥ 1 and cannot tend to 0",
            z.norm()
        )));
    }
    Ok(Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - z))
}

/// Σ x^j = 1/(1−x) for |x|_p < 1, exactly as a rational.
pub fn geometric_sum_padic(x: &Rational, p: Prime) -> Result<Rational> {
    match scalars::vp(x, p) {
        Valuation::Infinite => Ok(Rational::one()),
        Valuation::Finite(v) if v >= 1 => Ok(Rational::one() / (Rational::one() - x)),
        Valuation::Finite(_) => Err(Error::DomainError(format!(
            "|x|_{} = {} ≥ 1: the terms x^j cannot tend to 0 p-adically",
            p,
            scalars::abs_p(x, p)
        ))),
    }
}

/// Sum a p-adic series exactly modulo p^target.
///
/// The terms are exact rationals read p-adically. The caller supplies a
/// proven, nondecreasing valuation lower bound `vmin` with vmin(j) → ∞;
/// every term with vmin(j) < target is summed and the rest are certified
/// ≡ 0 (mod p^target). Each consumed term is checked against its bound.
///
/// The returned value is the residue class of the sum modulo p^target
/// (the exact-zero p-adic stands for the residue class 0).
pub fn sum_padic<F>(
    a: &CoeffSeq<Rational>,
    p: Prime,
    target: i64,
    vmin: F,
) -> Result<SumResult<PAdic>>
where
    F: Fn(usize) -> i64,
{
    let mut s = Rational::zero();
    let mut terms_used = 0usize;
    let mut prev_bound = i64::MIN;
    let len = a.finite_len();
    for j in 0..PADIC_SUM_CAP {
        if let Some(l) = len {
            if j >= l {
                break; // the remaining terms are literally zero
            }
        }
        let m = vmin(j);
        if m < prev_bound {
            return Err(Error::NoValuationCertificate(format!(
                "the valuation lower bound must be nondecreasing (drops at index {j})"
            )));
        }
        prev_bound = m;
        if m >= target {
            // Everything from here on is ≡ 0 (mod p^target).
            let value = padic_residue(&s, p, target);
            return Ok(SumResult {
                value,
                terms_used,
                error_bound: ErrorBound::ExactZero,
            });
        }
        let t = a.term(j);
        if scalars::vp(&t, p) < Valuation::Finite(m) {
            return Err(Error::NoValuationCertificate(format!(
                "term {j} has p-adic valuation below its certified bound {m}"
            )));
        }
        s += t;
        terms_used += 1;
    }
    if len.is_some() {
        let value = padic_residue(&s, p, target);
        return Ok(SumResult {
            value,
            terms_used,
            error_bound: ErrorBound::ExactZero,
        });
    }
    Err(Error::NoValuationCertificate(format!(
        "the certified bound never reached the target precision within {PADIC_SUM_CAP} terms"
    )))
}

/// The p-adic residue class of an exact rational modulo p^target.
fn padic_residue(s: &Rational, p: Prime, target: i64) -> PAdic {
    if s.is_zero() {
        return PAdic::zero(p);
    }
    match scalars::vp(s, p) {
        Valuation::Finite(v) if v < target => {
            PAdic::from_rational(s, p, (target - v) as usize)
        }
        // The sum is ≡ 0 (mod p^target); report the zero residue class.
        _ => PAdic::zero(p),
    }
}

/// Scalars with an archimedean magnitude, for root-test estimates.
pub trait Magnitude {
    fn magnitude(&self) -> f64;
}

impl Magnitude for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Magnitude for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl Magnitude for Rational {
    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }
}

/// Heuristic radius-of-convergence estimate from the first `j_terms`
/// coefficients (at least 8 are always inspected).
///
/// This is 1 over a windowed root-test estimate of limsup |a_j|^{1/j}.
/// The true limsup is not computable from finitely many terms, so the
/// result is only an estimate. Two situations report +∞: the running
/// estimate exceeding 10¹², and super-geometric coefficient decay (the
/// root estimate shrinking by more than 30% between inspection depths).
pub fn radius_estimate<T: SeriesScalar + Magnitude>(a: &CoeffSeq<T>, j_terms: usize) -> f64 {
    let mut jmax = j_terms.max(8);
    if let Some(len) = a.finite_len() {
        if len <= 1 {
            return f64::INFINITY; // constants are entire
        }
        jmax = jmax.min(len - 1);
    }
    let mags: Vec<f64> = (0..=jmax).map(|j| a.term(j).magnitude()).collect();
    let est = |j: usize| -> f64 { mags[j].powf(1.0 / j as f64) };

    let half = jmax / 2;
    if half >= 1 && mags[jmax] > 0.0 && mags[half] > 0.0 && est(jmax) / est(half) < 0.7 {
        return f64::INFINITY;
    }
    let mut m2 = 0.0f64;
    for j in (half + 1)..=jmax {
        if mags[j] > 0.0 {
            m2 = m2.max(est(j));
        }
    }
    if m2 == 0.0 {
        return f64::INFINITY;
    }
    let r = 1.0 / m2;
    if r > 1e12 {
        f64::INFINITY
    } else {
        r
    }
}

/// Evaluate A(r) = Σ a_j r^j for each r in an increasing schedule inside
/// [0, 1), with a certified geometric tail for each evaluation.
///
/// Streams need a bound M ≥ sup|a_j| to certify the tail (finite
/// sequences are summed exactly); without one the evaluation refuses with
/// [`Error::UnboundedCoefficients`]. No limit as r → 1 is extrapolated —
/// the schedule of values is returned for the caller to inspect.
pub fn abel_eval(
    a: &CoeffSeq<Complex64>,
    schedule: &[f64],
    sup_bound: Option<f64>,
) -> Result<Vec<Complex64>> {
    for (i, &r) in schedule.iter().enumerate() {
        if !(0.0..1.0).contains(&r) || !r.is_finite() {
            return Err(Error::DomainError(format!(
                "Abel schedule entries must lie in [0, 1); entry {i} is {r}"
            )));
        }
        if i > 0 && r <= schedule[i - 1] {
            return Err(Error::DomainError(
                "Abel schedule must be strictly increasing".into(),
            ));
        }
    }

    if let Some(len) = a.finite_len() {
        let mut out = Vec::with_capacity(schedule.len());
        for &r in schedule {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in (0..len).rev() {
                let t = a.term(j);
                if !t.is_finite() {
                    return Err(Error::NonFiniteInput);
                }
                acc = acc * r + t;
            }
            out.push(acc);
        }
        return Ok(out);
    }

    let m = sup_bound.ok_or(Error::UnboundedCoefficients)?;
    if !(m >= 0.0 && m.is_finite()) {
        return Err(Error::DomainError(
            "coefficient bound must be a finite nonnegative real".into(),
        ));
    }
    const EPS: f64 = 1e-12;
    const TERM_CAP: usize = 5_000_000;
    let mut out = Vec::with_capacity(schedule.len());
    for &r in schedule {
        if m == 0.0 || r == 0.0 {
            out.push(a.term(0));
            continue;
        }
        // Tail after L terms ≤ M·r^{L+1}/(1−r) < EPS.
        let l = ((EPS * (1.0 - r) / m).ln() / r.ln()).ceil() as usize;
        if l > TERM_CAP {
            return Err(Error::BudgetExceeded(format!(
                "Abel evaluation at r = {r} needs {l} terms"
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let mut rj = 1.0;
        for j in 0..=l {
            let t = a.term(j);
            if !t.is_finite() {
                return Err(Error::NonFiniteInput);
            }
            acc += t * rj;
            rj *= r;
        }
        out.push(acc);
    }
    Ok(out)
}

/// The number of factors of p in n!, by Legendre's formula
/// Σ_k floor(n/p^k). Always < n/(p−1) for n ≥ 1.
pub fn legendre_vp_factorial(n: u64, p: Prime) -> u64 {
    let mut total = 0u64;
    let mut pk = p.get();
    while pk <= n {
        total += n / pk;
        match pk.checked_mul(p.get()) {
            Some(next) => pk = next,
            None => break,
        }
    }
    total
}

/// E(z) = Σ z^n/n! to double precision, via argument halving and a short
/// Taylor sum. E(0) = 1 exactly.
pub fn exp_complex(z: Complex64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    let r = z.norm();
    if r > 700.0 {
        return Err(Error::OverflowRisk(format!(
            "|z| = {r} exceeds the double-exponential guard 700"
        )));
    }
    let mut w = z;
    let mut halvings = 0u32;
    while w.norm() > 0.5 {
        w /= 2.0;
        halvings += 1;
    }
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for n in 1..=64u32 {
        term *= w / n as f64;
        sum += term;
        // With |w| ≤ 1/2 the factorial tail is dominated by a geometric
        // series of ratio 1/2 starting at |term|.
        if term.norm() < 1e-20 {
            break;
        }
    }
    for _ in 0..halvings {
        sum *= sum;
    }
    Ok(sum)
}

fn exp_domain_check(x: &Rational, p: Prime) -> Result<i64> {
    let need: i64 = if p.get() == 2 { 2 } else { 1 };
    match scalars::vp(x, p) {
        Valuation::Infinite => Ok(i64::MAX),
        Valuation::Finite(v) if v >= need => Ok(v),
        Valuation::Finite(_) => {
            let threshold = if p.get() == 2 {
                "2^{-1}".to_string()
            } else {
                format!("{}^{{-1/{}}}", p, p.get() - 1)
            };
            Err(Error::DomainError(format!(
                "|x|_{} = {} ≥ {}",
                p,
                scalars::abs_p(x, p),
                threshold
            )))
        }
    }
}

/// The p-adic exponential E(x) = Σ x^n/n!, exact modulo p^target.
///
/// The domain is |x|_p < p^{−1/(p−1)}: since rational absolute values are
/// integer powers of p this means vp(x) ≥ 1 for odd p and vp(x) ≥ 2 for
/// p = 2. Term n has valuation n·vp(x) − vp(n!), which grows at least
/// linearly on the domain, so only finitely many terms matter.
pub fn exp_padic(x: &Rational, p: Prime, target: usize) -> Result<PAdic> {
    assert!(target >= 1, "target precision must be at least one digit");
    let v = exp_domain_check(x, p)?;
    if x.is_zero() {
        return Ok(PAdic::one(p, target));
    }
    // vp(x^n/n!) > n·(v − 1/(p−1)); stop once that floor passes target.
    let pm1 = (p.get() - 1) as i128;
    let num = target as i128 * pm1;
    let den = v as i128 * pm1 - 1;
    debug_assert!(den > 0);
    let n_stop = ((num + den - 1) / den) as u64;
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for n in 1..=n_stop {
        term *= x / Rational::from_integer(BigInt::from(n));
        sum += &term;
    }
    Ok(PAdic::from_rational(&sum, p, target))
}

/// Check E(x+y) ≡ E(x)·E(y) (mod p^target), with both sides computed
/// independently. This is a theorem on the exponential's domain, so the
/// result should always be `true`; it is exposed as a user-visible
/// verification.
pub fn exp_additivity_check(x: &Rational, y: &Rational, p: Prime, target: usize) -> Result<bool> {
    exp_domain_check(x, p)?;
    exp_domain_check(y, p)?;
    let lhs = exp_padic(&(x + y), p, target)?;
    let rhs = exp_padic(x, p, target)?.try_mul(&exp_padic(y, p, target)?)?;
    Ok(lhs == rhs)
}

/// A doubly infinite coefficient sequence with finite stored support,
/// optionally carrying a bound t ≥ Σ_{j ∉ stored support} |a_j| so that
/// absolutely summable sequences can be truncated soundly.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeq {
    support: BTreeMap<i64, Rational>,
    tail: Option<Rational>,
}

impl LaurentSeq {
    /// Exact finite support; zero coefficients are dropped.
    pub fn from_support(entries: impl IntoIterator<Item = (i64, Rational)>) -> LaurentSeq {
        let support = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LaurentSeq {
            support,
            tail: None,
        }
    }

    /// A truncation of an absolutely summable sequence, with a proven
    /// tail bound for everything outside the stored support.
    pub fn with_tail_bound(
        entries: impl IntoIterator<Item = (i64, Rational)>,
        tail: Rational,
    ) -> Result<LaurentSeq> {
        if tail.is_negative() {
            return Err(Error::DomainError(
                "a Laurent tail bound must be nonnegative".into(),
            ));
        }
        let support = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentSeq {
            support,
            tail: Some(tail),
        })
    }

    /// The unit of the convolution algebra: 1 at index j, 0 elsewhere.
    pub fn delta(j: i64) -> LaurentSeq {
        LaurentSeq::from_support([(j, Rational::one())])
    }

    pub fn coeff(&self, j: i64) -> Rational {
        self.support.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> &BTreeMap<i64, Rational> {
        &self.support
    }

    pub fn tail_bound(&self) -> Option<&Rational> {
        self.tail.as_ref()
    }

    fn stored_norm(&self) -> Rational {
        self.support
            .values()
            .fold(Rational::zero(), |acc, c| acc + c.abs())
    }

    /// Upper bound on the ℓ¹ norm: the stored mass plus any tail bound.
    pub fn norm_l1_upper(&self) -> Rational {
        let mut n = self.stored_norm();
        if let Some(t) = &self.tail {
            n += t;
        }
        n
    }
}

/// Convolution c_n = Σ_j a_j·b_{n−j}, exact on the stored supports.
///
/// When either factor is a truncation, the product's tail bound is
/// ‖a‖₁·t_b + ‖b‖₁·t_a + t_a·t_b (stored norms), so the Wiener-algebra
/// submultiplicative law ‖c‖₁ ≤ ‖a‖₁·‖b‖₁ survives truncation.
pub fn laurent_product(a: &LaurentSeq, b: &LaurentSeq) -> LaurentSeq {
    let mut support: BTreeMap<i64, Rational> = BTreeMap::new();
    for (ja, ca) in &a.support {
        for (jb, cb) in &b.support {
            let entry = support.entry(ja + jb).or_insert_with(Rational::zero);
            *entry += ca * cb;
        }
    }
    support.retain(|_, c| !c.is_zero());
    let tail = match (&a.tail, &b.tail) {
        (None, None) => None,
        (ta, tb) => {
            let ta = ta.clone().unwrap_or_else(Rational::zero);
            let tb = tb.clone().unwrap_or_else(Rational::zero);
            Some(a.stored_norm() * &tb + b.stored_norm() * &ta + ta * tb)
        }
    };
    LaurentSeq { support, tail }
}

/// Evaluate Σ a_j z^j at a nonzero complex point.
///
/// Exact-support sequences evaluate anywhere on C∖{0}. Truncations are
/// only summable on the unit circle (where z^{−1} = z̄ keeps every
/// monomial bounded), and the evaluation error is at most the tail bound.
pub fn laurent_eval(a: &LaurentSeq, z: Complex64) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::ZeroArgument);
    }
    if a.tail.is_some() && (z.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::OffCircleWithInfiniteSupport);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (&j, c) in &a.support {
        let cf = c.to_f64().ok_or(Error::NonFiniteInput)?;
        acc += z.powi(j as i32) * cf;
    }
    Ok(acc)
}

/// An associative algebra element with a rational scalar action — the
/// shape needed to evaluate polynomials with rational coefficients.
pub trait AlgebraElement: Clone {
    fn one_like(&self) -> Self;
    fn add_alg(&self, other: &Self) -> Self;
    fn mul_alg(&self, other: &Self) -> Self;
    fn scale_alg(&self, c: &Rational) -> Self;
}

impl AlgebraElement for Rational {
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add_alg(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_alg(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_alg(&self, c: &Rational) -> Self {
        self * c
    }
}

/// Evaluate p(x) = a_0·e + a_1·x + … + a_n·xⁿ in any algebra with unit e,
/// by Horner's rule. Coefficients are ascending. This is an algebra
/// homomorphism from polynomials: (p₁·p₂)(x) = p₁(x)·p₂(x).
pub fn poly_eval_in_algebra<A: AlgebraElement>(coeffs: &[Rational], x: &A) -> A {
    let e = x.one_like();
    match coeffs.last() {
        None => e.scale_alg(&Rational::zero()),
        Some(top) => {
            let mut acc = e.scale_alg(top);
            for c in coeffs.iter().rev().skip(1) {
                acc = acc.mul_alg(x).add_alg(&e.scale_alg(c));
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qi(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cauchy_product_examples() {
        // All-ones times all-ones counts the pairs j + (n−j) = n.
        let ones: CoeffSeq<Rational> = CoeffSeq::streamed(|_| Rational::one());
        let c = cauchy_product(&ones, &ones, 6).unwrap();
        for n in 0..=6 {
            assert_eq!(c.term(n), qi(n as i64 + 1));
        }

        // (1, 0, 0, …) is the multiplicative identity.
        let e = CoeffSeq::finite(vec![Rational::one()]);
        let b = CoeffSeq::finite(vec![qi(4), qi(-1), qi(7)]);
        let c = cauchy_product(&e, &b, 4).unwrap();
        assert_eq!(
            (0..=4).map(|n| c.term(n)).collect::<Vec<_>>(),
            vec![qi(4), qi(-1), qi(7), qi(0), qi(0)]
        );

        // (1 + t)(1 − t) = 1 − t².
        let a = CoeffSeq::finite(vec![qi(1), qi(1)]);
        let b = CoeffSeq::finite(vec![qi(1), qi(-1)]);
        let c = cauchy_product(&a, &b, 3).unwrap();
        assert_eq!(
            (0..=3).map(|n| c.term(n)).collect::<Vec<_>>(),
            vec![qi(1), qi(0), qi(-1), qi(0)]
        );
    }

    #[test]
    fn cauchy_product_is_commutative_and_associative() {
        let a = CoeffSeq::finite(vec![q(1, 2), qi(3), q(-2, 5)]);
        let b = CoeffSeq::finite(vec![qi(2), q(1, 3)]);
        let c = CoeffSeq::finite(vec![qi(-1), qi(0), qi(0), q(7, 4)]);
        let upto = 8;
        let ab = cauchy_product(&a, &b, upto).unwrap();
        let ba = cauchy_product(&b, &a, upto).unwrap();
        let ab_c = cauchy_product(&ab, &c, upto).unwrap();
        let a_bc = cauchy_product(&a, &cauchy_product(&b, &c, upto).unwrap(), upto).unwrap();
        for n in 0..=upto {
            assert_eq!(ab.term(n), ba.term(n));
            assert_eq!(ab_c.term(n), a_bc.term(n));
        }
    }

    #[test]
    fn cauchy_product_over_padics() {
        let three = p(3);
        let a = CoeffSeq::finite(vec![
            PAdic::one(three, 6),
            PAdic::from_rational(&qi(3), three, 6),
        ]);
        let e = CoeffSeq::finite(vec![PAdic::one(three, 6)]);
        let c = cauchy_product(&a, &e, 2).unwrap();
        assert_eq!(c.term(0), PAdic::one(three, 6));
        assert_eq!(c.term(1), PAdic::from_rational(&qi(3), three, 6));
        assert!(c.term(2).is_zero());
    }

    #[test]
    fn sum_complex_geometric_certificate() {
        let a = CoeffSeq::streamed(|j| cx(0.5f64.powi(j as i32), 0.0));
        let r = sum_complex(&a, 1e-10, DEFAULT_SUM_CAP).unwrap();
        assert!(r.certified());
        assert!((r.value.re - 2.0).abs() <= 1e-9);
        match r.error_bound {
            ErrorBound::Proven(b) => assert!(b <= 1e-10),
            other => panic!("expected a proven bound, got {other:?}"),
        }
    }

    #[test]
    fn sum_complex_finite_is_exact() {
        let a = CoeffSeq::finite(vec![cx(0.0, 0.0); 3]);
        let r = sum_complex(&a, 1e-10, DEFAULT_SUM_CAP).unwrap();
        assert_eq!(r.value, cx(0.0, 0.0));
        assert_eq!(r.error_bound, ErrorBound::ExactZero);
        assert_eq!(r.terms_used, 3);
    }

    #[test]
    fn sum_complex_harmonic_is_refused() {
        let a = CoeffSeq::streamed(|j| cx(1.0 / (j as f64 + 1.0), 0.0));
        assert_eq!(
            sum_complex(&a, 1e-4, 1_000_000).unwrap_err(),
            Error::NonConvergenceSuspected { terms: 1_000_000 }
        );
    }

    #[test]
    fn sum_complex_alternating_certificate() {
        // Ratios tend to 1, so only the alternating certificate applies.
        let a = CoeffSeq::streamed(|j| {
            let b = 1.0 / ((j + 1) as f64).powi(2);
            cx(if j % 2 == 0 { b } else { -b }, 0.0)
        });
        let r = sum_complex(&a, 1e-6, DEFAULT_SUM_CAP).unwrap();
        assert!(r.certified());
        let pi2_12 = std::f64::consts::PI.powi(2) / 12.0;
        assert!((r.value.re - pi2_12).abs() <= 1e-6);
    }

    #[test]
    fn alternating_sum_examples() {
        let b = CoeffSeq::streamed(|j| 1.0 / (j as f64 + 1.0));
        let r = alternating_sum(&b, 1e-4).unwrap();
        assert!((r.value - std::f64::consts::LN_2).abs() <= 1e-4);
        match r.error_bound {
            ErrorBound::Proven(e) => assert!(e <= 1e-4),
            other => panic!("expected a proven bound, got {other:?}"),
        }

        let z = CoeffSeq::finite(vec![0.0, 0.0, 0.0]);
        let r = alternating_sum(&z, 1e-4).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error_bound, ErrorBound::ExactZero);

        let bad = CoeffSeq::finite(vec![1.0, 2.0]);
        assert_eq!(
            alternating_sum(&bad, 1e-4).unwrap_err(),
            Error::MonotonicityViolation { index: 1 }
        );
    }

    #[test]
    fn alternating_bound_is_honest() {
        // Compare against a higher-precision evaluation of the same sum.
        let mk = |_| CoeffSeq::streamed(|j| 1.0 / (j + 1) as f64);
        let coarse = alternating_sum(&mk(()), 1e-3).unwrap();
        let fine = alternating_sum(&mk(()), 5e-6).unwrap();
        let reported = coarse.error_bound.bound().unwrap();
        let fine_bound = fine.error_bound.bound().unwrap();
        assert!((coarse.value - fine.value).abs() <= reported + fine_bound);
    }

    #[test]
    fn geometric_sum_examples() {
        assert_eq!(geometric_sum_padic(&qi(5), p(5)).unwrap(), q(-1, 4));
        assert_eq!(geometric_sum_real(&q(1, 2)).unwrap(), qi(2));
        let z = geometric_sum_complex(cx(0.5, 0.0)).unwrap();
        assert!((z - cx(2.0, 0.0)).norm() <= 1e-12);
        assert!(matches!(
            geometric_sum_complex(cx(1.0, 0.0)),
            Err(Error::DomainError(_))
        ));
        assert!(matches!(
            geometric_sum_padic(&qi(7), p(5)),
            Err(Error::DomainError(_))
        ));
        assert!(matches!(
            geometric_sum_real(&qi(1)),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn sum_padic_geometric() {
        let a = CoeffSeq::streamed(|j| {
            Rational::from_integer(num_traits::pow(BigInt::from(3), j))
        });
        let r = sum_padic(&a, p(3), 4, |j| j as i64).unwrap();
        assert_eq!(r.terms_used, 4);
        assert_eq!(r.error_bound, ErrorBound::ExactZero);
        // 1/(1−3) = −1/2 ≡ 40 (mod 81), and 40 = 1+3+9+27.
        assert_eq!(r.value.digits(), &[1, 1, 1, 1]);
        assert_eq!(r.value.valuation(), Valuation::Finite(0));
        assert_eq!(
            r.value,
            PAdic::from_rational(&q(-1, 2), p(3), 4)
        );
    }

    #[test]
    fn sum_padic_single_term_and_failure() {
        let single = CoeffSeq::finite(vec![qi(7)]);
        let r = sum_padic(&single, p(5), 6, |_| 0).unwrap();
        assert_eq!(r.value, PAdic::from_rational(&qi(7), p(5), 6));

        let ones: CoeffSeq<Rational> = CoeffSeq::streamed(|_| Rational::one());
        assert!(matches!(
            sum_padic(&ones, p(3), 4, |_| 0).unwrap_err(),
            Error::NoValuationCertificate(_)
        ));

        // A lying certificate is caught on the offending term.
        let flat = CoeffSeq::streamed(|_| Rational::one());
        assert!(matches!(
            sum_padic(&flat, p(3), 4, |j| j as i64).unwrap_err(),
            Error::NoValuationCertificate(_)
        ));
    }

    #[test]
    fn radius_estimate_examples() {
        let ones: CoeffSeq<Rational> = CoeffSeq::streamed(|_| Rational::one());
        assert!((radius_estimate(&ones, 16) - 1.0).abs() <= 1e-12);

        let invfact: CoeffSeq<f64> =
            CoeffSeq::streamed(|j| 1.0 / (1..=j).map(|k| k as f64).product::<f64>());
        assert_eq!(radius_estimate(&invfact, 8), f64::INFINITY);

        let pow2: CoeffSeq<f64> = CoeffSeq::streamed(|j| 2.0f64.powi(j as i32));
        assert!((radius_estimate(&pow2, 16) - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn abel_eval_examples() {
        let alt = CoeffSeq::streamed(|j| cx(if j % 2 == 0 { 1.0 } else { -1.0 }, 0.0));
        let values = abel_eval(&alt, &[0.9, 0.99, 0.999], Some(1.0)).unwrap();
        for (v, r) in values.iter().zip([0.9, 0.99, 0.999]) {
            assert!((v.re - 1.0 / (1.0 + r)).abs() <= 1e-9);
        }

        let poly = CoeffSeq::finite(vec![cx(1.0, 0.0), cx(1.0, 0.0)]);
        let values = abel_eval(&poly, &[0.5], None).unwrap();
        assert!((values[0].re - 1.5).abs() <= 1e-15);

        let factorials: CoeffSeq<Complex64> =
            CoeffSeq::streamed(|j| cx((1..=j).map(|k| k as f64).product::<f64>(), 0.0));
        assert_eq!(
            abel_eval(&factorials, &[0.5], None).unwrap_err(),
            Error::UnboundedCoefficients
        );

        assert!(matches!(
            abel_eval(&poly, &[0.5, 0.4], None).unwrap_err(),
            Error::DomainError(_)
        ));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_vp_factorial(4, p(2)), 3);
        assert_eq!(legendre_vp_factorial(0, p(7)), 0);
        assert_eq!(legendre_vp_factorial(100, p(5)), 24);
        for n in 1..=2000u64 {
            for pr in [2u64, 3, 5, 7] {
                let v = legendre_vp_factorial(n, p(pr));
                assert!((v as f64) < n as f64 / (pr as f64 - 1.0));
            }
        }
    }

    #[test]
    fn exp_complex_examples() {
        assert_eq!(exp_complex(cx(0.0, 0.0)).unwrap(), cx(1.0, 0.0));
        let e = exp_complex(cx(1.0, 0.0)).unwrap();
        assert!((e.re - std::f64::consts::E).abs() <= 1e-12);
        assert!(e.im.abs() <= 1e-15);

        let u = exp_complex(cx(0.0, 1.234)).unwrap();
        assert!((u.norm() - 1.0).abs() <= 1e-12);

        assert!(matches!(
            exp_complex(cx(701.0, 0.0)),
            Err(Error::OverflowRisk(_))
        ));

        // |E(z)|² = E(2 Re z).
        let z = cx(0.3, -1.7);
        let lhs = exp_complex(z).unwrap().norm_sqr();
        let rhs = exp_complex(cx(2.0 * z.re, 0.0)).unwrap().re;
        assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs());
    }

    #[test]
    fn exp_padic_examples() {
        assert_eq!(exp_padic(&qi(0), p(7), 5).unwrap(), PAdic::one(p(7), 5));

        let e3 = exp_padic(&qi(3), p(3), 3).unwrap();
        // 1 + 3 + 9/2 + 27/6 ≡ 13 (mod 27).
        assert_eq!(e3, PAdic::from_rational(&qi(13), p(3), 3));

        let err = exp_padic(&qi(1), p(3), 4).unwrap_err();
        assert_eq!(
            err,
            Error::DomainError("|x|_3 = 1 ≥ 3^{-1/2}".into())
        );

        // p = 2 needs vp ≥ 2.
        assert!(matches!(
            exp_padic(&qi(2), p(2), 4),
            Err(Error::DomainError(_))
        ));
        assert!(exp_padic(&qi(4), p(2), 8).is_ok());
    }

    #[test]
    fn exp_additivity_examples() {
        assert!(exp_additivity_check(&qi(0), &qi(0), p(5), 6).unwrap());
        assert!(exp_additivity_check(&qi(3), &qi(6), p(3), 5).unwrap());
        assert!(exp_additivity_check(&qi(4), &qi(8), p(2), 6).unwrap());
        assert!(matches!(
            exp_additivity_check(&qi(2), &qi(4), p(2), 6),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn laurent_product_examples() {
        let a = LaurentSeq::from_support([(0, qi(1)), (1, qi(1))]);
        let b = LaurentSeq::delta(-1);
        let c = laurent_product(&a, &b);
        assert_eq!(c, LaurentSeq::from_support([(-1, qi(1)), (0, qi(1))]));
        assert_eq!(c.norm_l1_upper(), qi(2));
        assert!(c.norm_l1_upper() <= a.norm_l1_upper() * b.norm_l1_upper());

        let d = LaurentSeq::delta(0);
        assert_eq!(laurent_product(&d, &a), a);

        // Truncated factors combine tail bounds soundly.
        let t = LaurentSeq::with_tail_bound([(0, qi(1))], q(1, 10)).unwrap();
        let prod = laurent_product(&t, &t);
        // ‖a‖·t_b + ‖b‖·t_a + t_a·t_b = 1/10 + 1/10 + 1/100.
        assert_eq!(prod.tail_bound().unwrap(), &q(21, 100));
    }

    #[test]
    fn laurent_eval_examples() {
        let d1 = LaurentSeq::delta(1);
        let v = laurent_eval(&d1, cx(0.0, 1.0)).unwrap();
        assert!((v - cx(0.0, 1.0)).norm() <= 1e-15);

        let sym = LaurentSeq::from_support([(-1, qi(1)), (1, qi(1))]);
        let v = laurent_eval(&sym, cx(1.0, 0.0)).unwrap();
        assert!((v - cx(2.0, 0.0)).norm() <= 1e-15);

        assert_eq!(
            laurent_eval(&sym, cx(0.0, 0.0)).unwrap_err(),
            Error::ZeroArgument
        );

        let t = LaurentSeq::with_tail_bound([(0, qi(1))], q(1, 10)).unwrap();
        assert_eq!(
            laurent_eval(&t, cx(2.0, 0.0)).unwrap_err(),
            Error::OffCircleWithInfiniteSupport
        );
        assert!(laurent_eval(&t, cx(0.0, -1.0)).is_ok());

        // On the circle the evaluation is an algebra homomorphism.
        let z = cx(0.6, 0.8);
        let prod = laurent_product(&sym, &a_example());
        let lhs = laurent_eval(&prod, z).unwrap();
        let rhs = laurent_eval(&sym, z).unwrap() * laurent_eval(&a_example(), z).unwrap();
        assert!((lhs - rhs).norm() <= 1e-12);
    }

    fn a_example() -> LaurentSeq {
        LaurentSeq::from_support([(-2, q(1, 3)), (0, qi(2)), (3, q(-1, 2))])
    }

    #[test]
    fn poly_eval_examples() {
        // t² − 1 at 3.
        let coeffs = [qi(-1), qi(0), qi(1)];
        assert_eq!(poly_eval_in_algebra(&coeffs, &qi(3)), qi(8));

        // The constant polynomial 1 evaluates to the identity.
        assert_eq!(poly_eval_in_algebra(&[qi(1)], &qi(42)), qi(1));

        // Homomorphism: (p₁·p₂)(x) = p₁(x)·p₂(x) for p₁ = 1+t, p₂ = 2−t².
        let p1 = CoeffSeq::finite(vec![qi(1), qi(1)]);
        let p2 = CoeffSeq::finite(vec![qi(2), qi(0), qi(-1)]);
        let p12 = cauchy_product(&p1, &p2, 3).unwrap();
        let prod_coeffs: Vec<Rational> = (0..=3).map(|n| p12.term(n)).collect();
        let x = q(5, 7);
        let lhs = poly_eval_in_algebra(&prod_coeffs, &x);
        let rhs = poly_eval_in_algebra(&[qi(1), qi(1)], &x)
            * poly_eval_in_algebra(&[qi(2), qi(0), qi(-1)], &x);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mertens_product_of_sums() {
        // Two geometric-dominated complex series: the Cauchy product sums
        // to the product of the sums.
        let x = cx(0.3, 0.2);
        let y = cx(-0.5, 0.1);
        let a = CoeffSeq::streamed(move |j| x.powi(j as i32));
        let b = CoeffSeq::streamed(move |j| y.powi(j as i32) * 2.0);
        let c = cauchy_product(&a, &b, 200).unwrap();
        let mut csum = cx(0.0, 0.0);
        for n in 0..=200 {
            csum += c.term(n);
        }
        let asum = geometric_sum_complex(x).unwrap();
        let bsum = geometric_sum_complex(y).unwrap() * 2.0;
        assert!((csum - asum * bsum).norm() <= 1e-9);
    }

    #[test]
    fn padic_product_of_sums() {
        // a_j = 3^j, b_j = 2·3^j: sums and the Cauchy-product sum agree
        // modulo 3^12.
        let three = p(3);
        let target = 12i64;
        let a = CoeffSeq::streamed(|j| {
            Rational::from_integer(num_traits::pow(BigInt::from(3), j))
        });
        let b = CoeffSeq::streamed(|j| {
            Rational::from_integer(num_traits::pow(BigInt::from(3), j) * 2)
        });
        let c = cauchy_product(&a, &b, target as usize).unwrap();
        let sa = sum_padic(&a, three, target, |j| j as i64).unwrap().value;
        let sb = sum_padic(&b, three, target, |j| j as i64).unwrap().value;
        let sc = sum_padic(&c, three, target, |j| j as i64).unwrap().value;
        assert_eq!(sa.try_mul(&sb).unwrap(), sc);
    }

    #[test]
    fn streamed_sequences_memoize_purely(){
        use std::sync::atomic::{AtomicUsize, Ordering};
        static CALLS: AtomicUsize = AtomicUsize::new(0);
        let a: CoeffSeq<f64> = CoeffSeq::streamed(|j| {
            CALLS.fetch_add(1, Ordering::SeqCst);
            j as f64
        });
        assert_eq!(a.term(5), 5.0);
        assert_eq!(a.term(5), 5.0);
        assert_eq!(a.term(3), 3.0);
        assert_eq!(CALLS.load(Ordering::SeqCst), 6); // indices 0..=5, once each
    }
}
