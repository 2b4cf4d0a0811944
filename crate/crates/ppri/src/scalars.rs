//! Exact scalar arithmetic: p-adic valuations and absolute values,
//! truncated p-adic expansions with precision tracking, complex-modulus
//! identities, and ultrametric utilities.
//!
//! All values are immutable and all operations are pure functions, so
//! everything here is safe to share across threads.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub use num_complex::Complex64;

/// A prime modulus, validated once so arithmetic can assume primality.
///
/// Validation is deterministic trial division; moduli are restricted to
/// p < 2³¹, which keeps that check cheap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p < 2 || p >= (1u64 << 31) {
            return Err(Error::NonPrimeModulus(p));
        }
        if p % 2 == 0 {
            return if p == 2 {
                Ok(Prime(2))
            } else {
                Err(Error::NonPrimeModulus(p))
            };
        }
        let mut d = 3u64;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::NonPrimeModulus(p));
            }
            d += 2;
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The exponent of p in a rational, with +∞ reserved for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use Valuation::*;
        match (self, other) {
            (Infinite, Infinite) => std::cmp::Ordering::Equal,
            (Infinite, Finite(_)) => std::cmp::Ordering::Greater,
            (Finite(_), Infinite) => std::cmp::Ordering::Less,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "+inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer.
pub(crate) fn vp_bigint(n: &BigInt, p: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let mut v = 0i64;
    let mut m = n.abs();
    loop {
        let (q, r) = m.div_rem(p);
        if r.is_zero() {
            v += 1;
            m = q;
        } else {
            return v;
        }
    }
}

pub(crate) fn big_pow(p: &BigInt, e: usize) -> BigInt {
    num_traits::pow(p.clone(), e)
}

/// Modular inverse of `b` modulo `m`, for `b` coprime to `m`.
pub(crate) fn mod_inverse(b: &BigInt, m: &BigInt) -> BigInt {
    let e = b.extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "inverse requested for a non-unit");
    e.x.mod_floor(m)
}

/// The p-adic valuation vp(x): the exponent k in x = p^k·(m/n) with p
/// dividing neither m nor n. Returns +∞ for x = 0.
pub fn vp(x: &Rational, p: Prime) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let pb = p.to_bigint();
    Valuation::Finite(vp_bigint(x.numer(), &pb) - vp_bigint(x.denom(), &pb))
}

/// The p-adic absolute value |x|_p = p^{−vp(x)}, exactly as a rational;
/// |0|_p = 0.
pub fn abs_p(x: &Rational, p: Prime) -> Rational {
    match vp(x, p) {
        Valuation::Infinite => Rational::zero(),
        Valuation::Finite(v) => {
            let pk = big_pow(&p.to_bigint(), v.unsigned_abs() as usize);
            if v >= 0 {
                Rational::new(BigInt::one(), pk)
            } else {
                Rational::from_integer(pk)
            }
        }
    }
}

/// A truncated p-adic expansion p^v·(d₀ + d₁p + d₂p² + …), known modulo
/// p^{v+N} where N is the number of stored digits.
///
/// Digits are least-significant first with d₀ ≠ 0, so the valuation is
/// exact. The zero value is represented with the +∞ valuation marker and
/// an empty digit list: it is exact, not an approximation.
///
/// Addition and subtraction work in absolute precision (the minimum of the
/// operands' v+N) and report [`Error::PrecisionExhausted`] when
/// cancellation leaves no certain digit rather than fabricating a zero.
/// Multiplication and division preserve relative precision (the minimum
/// digit count).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdic {
    prime: u64,
    valuation: Option<i64>,
    digits: Vec<u32>,
}

impl PAdic {
    /// The exact zero of Q_p.
    pub fn zero(p: Prime) -> PAdic {
        PAdic {
            prime: p.get(),
            valuation: None,
            digits: Vec::new(),
        }
    }

    /// Expand a rational into `n` base-p digits. The result agrees with
    /// `x` modulo p^{v+n}.
    pub fn from_rational(x: &Rational, p: Prime, n: usize) -> PAdic {
        assert!(n >= 1, "p-adic precision must be at least one digit");
        if x.is_zero() {
            return PAdic::zero(p);
        }
        let pb = p.to_bigint();
        let va = vp_bigint(x.numer(), &pb);
        let vb = vp_bigint(x.denom(), &pb);
        let mut a = x.numer().clone();
        let mut b = x.denom().clone();
        if va > 0 {
            a /= big_pow(&pb, va as usize);
        }
        if vb > 0 {
            b /= big_pow(&pb, vb as usize);
        }
        let modulus = big_pow(&pb, n);
        let u = (a.mod_floor(&modulus) * mod_inverse(&b, &modulus)).mod_floor(&modulus);
        PAdic {
            prime: p.get(),
            valuation: Some(va - vb),
            digits: digits_of(&u, &pb, n),
        }
    }

    /// The multiplicative identity, carried to `n` digits.
    pub fn one(p: Prime, n: usize) -> PAdic {
        PAdic::from_rational(&Rational::one(), p, n)
    }

    /// The exact zero over the same prime as `self`.
    pub fn same_prime_zero(&self) -> PAdic {
        PAdic {
            prime: self.prime,
            valuation: None,
            digits: Vec::new(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn valuation(&self) -> Valuation {
        match self.valuation {
            Some(v) => Valuation::Finite(v),
            None => Valuation::Infinite,
        }
    }

    /// Number of known digits (0 for the exact zero).
    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// |x|_p as an exact rational (0 for the zero value).
    pub fn abs(&self) -> Rational {
        match self.valuation {
            None => Rational::zero(),
            Some(v) => {
                let pk = big_pow(&BigInt::from(self.prime), v.unsigned_abs() as usize);
                if v >= 0 {
                    Rational::new(BigInt::one(), pk)
                } else {
                    Rational::from_integer(pk)
                }
            }
        }
    }

    /// The unit part Σ dᵢpⁱ as an integer in [1, p^N).
    pub fn unit_integer(&self) -> BigInt {
        let pb = BigInt::from(self.prime);
        let mut acc = BigInt::zero();
        for &d in self.digits.iter().rev() {
            acc = acc * &pb + BigInt::from(d);
        }
        acc
    }

    /// The rational p^v·(unit part): a representative of the value's
    /// residue class modulo p^{v+N}.
    pub fn representative(&self) -> Rational {
        match self.valuation {
            None => Rational::zero(),
            Some(v) => {
                let pk = big_pow(&BigInt::from(self.prime), v.unsigned_abs() as usize);
                let u = self.unit_integer();
                if v >= 0 {
                    Rational::from_integer(u * pk)
                } else {
                    Rational::new(u, pk)
                }
            }
        }
    }

    fn check_same_prime(&self, other: &PAdic) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch {
                left: self.prime,
                right: other.prime,
            });
        }
        Ok(())
    }

    /// Additive inverse; precision is preserved exactly.
    pub fn negate(&self) -> PAdic {
        match self.valuation {
            None => self.clone(),
            Some(v) => {
                let pb = BigInt::from(self.prime);
                let modulus = big_pow(&pb, self.digits.len());
                let u = (&modulus - self.unit_integer()).mod_floor(&modulus);
                PAdic {
                    prime: self.prime,
                    valuation: Some(v),
                    digits: digits_of(&u, &pb, self.digits.len()),
                }
            }
        }
    }

    pub fn try_add(&self, other: &PAdic) -> Result<PAdic> {
        self.check_same_prime(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let va = self.valuation.unwrap();
        let vb = other.valuation.unwrap();
        // Absolute precision of the sum: the smaller v+N wins.
        let m = (va + self.digits.len() as i64).min(vb + other.digits.len() as i64);
        let vmin = va.min(vb);
        let k = m - vmin;
        if k <= 0 {
            return Err(Error::PrecisionExhausted);
        }
        let pb = BigInt::from(self.prime);
        let modulus = big_pow(&pb, k as usize);
        let ua = self.unit_integer() * big_pow(&pb, (va - vmin) as usize);
        let ub = other.unit_integer() * big_pow(&pb, (vb - vmin) as usize);
        let s = (ua + ub).mod_floor(&modulus);
        if s.is_zero() {
            // All certain digits cancelled; the true valuation is unknown.
            return Err(Error::PrecisionExhausted);
        }
        let t = vp_bigint(&s, &pb);
        let v = vmin + t;
        let unit = s / big_pow(&pb, t as usize);
        Ok(PAdic {
            prime: self.prime,
            valuation: Some(v),
            digits: digits_of(&unit, &pb, (m - v) as usize),
        })
    }

    pub fn try_sub(&self, other: &PAdic) -> Result<PAdic> {
        self.try_add(&other.negate())
    }

    pub fn try_mul(&self, other: &PAdic) -> Result<PAdic> {
        self.check_same_prime(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(PAdic {
                prime: self.prime,
                valuation: None,
                digits: Vec::new(),
            });
        }
        let n = self.digits.len().min(other.digits.len());
        let pb = BigInt::from(self.prime);
        let modulus = big_pow(&pb, n);
        let u = (self.unit_integer() * other.unit_integer()).mod_floor(&modulus);
        Ok(PAdic {
            prime: self.prime,
            valuation: Some(self.valuation.unwrap() + other.valuation.unwrap()),
            digits: digits_of(&u, &pb, n),
        })
    }

    pub fn try_div(&self, other: &PAdic) -> Result<PAdic> {
        self.check_same_prime(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(PAdic {
                prime: self.prime,
                valuation: None,
                digits: Vec::new(),
            });
        }
        let n = self.digits.len().min(other.digits.len());
        let pb = BigInt::from(self.prime);
        let modulus = big_pow(&pb, n);
        let u = (self.unit_integer() * mod_inverse(&other.unit_integer(), &modulus))
            .mod_floor(&modulus);
        Ok(PAdic {
            prime: self.prime,
            valuation: Some(self.valuation.unwrap() - other.valuation.unwrap()),
            digits: digits_of(&u, &pb, n),
        })
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.valuation {
            Some(v) => v.to_string(),
            None => "+inf".to_string(),
        };
        let ds: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "p={} v={} digits=[{}] (N={})",
            self.prime,
            v,
            ds.join(","),
            self.digits.len()
        )
    }
}

fn digits_of(u: &BigInt, p: &BigInt, n: usize) -> Vec<u32> {
    debug_assert!(!u.is_negative());
    let mut ds = Vec::with_capacity(n);
    let mut m = u.clone();
    for _ in 0..n {
        let (q, r) = m.div_rem(p);
        ds.push(r.to_u32().expect("digit fits in u32 because p < 2^31"));
        m = q;
    }
    debug_assert!(m.is_zero(), "unit part exceeded p^N");
    ds
}

/// The p^n residues 0, 1, …, p^n−1. The balls {x : |x − r|_p ≤ p^{−n}}
/// around them partition Z_p, and distinct representatives satisfy
/// |r − r'|_p > p^{−n}.
pub fn ball_decomposition(p: Prime, n: u32) -> Result<Vec<Rational>> {
    const BUDGET: u128 = 1_000_000;
    let count = (p.get() as u128)
        .checked_pow(n)
        .filter(|&c| c <= BUDGET)
        .ok_or_else(|| Error::BudgetExceeded(format!("{p}^{n} residues exceed the 10^6 cap")))?;
    Ok((0..count as u64)
        .map(|r| Rational::from_integer(BigInt::from(r)))
        .collect())
}

/// |z| = √(x² + y²), rejecting NaN/∞ components.
pub fn cx_abs(z: Complex64) -> Result<f64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    Ok(z.norm())
}

/// The complex conjugate, rejecting NaN/∞ components.
pub fn cx_conj(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    Ok(z.conj())
}

/// Ultrametric on equal-length symbol sequences: 0 when the sequences
/// coincide, otherwise ρ_n where n is the first index of disagreement
/// (1-based). `rho` must be strictly decreasing and positive, with at
/// least as many entries as the sequences have symbols.
pub fn sequence_ultrametric<T: PartialEq>(x: &[T], y: &[T], rho: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    if rho.len() < x.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            got: rho.len(),
        });
    }
    for i in 0..x.len() {
        if rho[i] <= 0.0 || (i > 0 && rho[i] >= rho[i - 1]) {
            return Err(Error::NonDecreasingRho { index: i });
        }
    }
    for i in 0..x.len() {
        if x[i] != y[i] {
            return Ok(rho[i]);
        }
    }
    Ok(0.0)
}

/// The default scale sequence ρ_l = 2^{−l}, l = 1..=len.
pub fn default_rho(len: usize) -> Vec<f64> {
    (1..=len).map(|l| 0.5f64.powi(l as i32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new(2147483647).is_ok()); // 2^31 − 1 is prime
        assert_eq!(Prime::new(1).unwrap_err(), Error::NonPrimeModulus(1));
        assert_eq!(Prime::new(4).unwrap_err(), Error::NonPrimeModulus(4));
        assert_eq!(Prime::new(91).unwrap_err(), Error::NonPrimeModulus(91)); // 7·13
        assert!(Prime::new(1u64 << 31).is_err());
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(&q(12, 1), p(2)), Valuation::Finite(2));
        assert_eq!(vp(&Rational::zero(), p(7)), Valuation::Infinite);
        assert_eq!(vp(&q(5, 6), p(3)), Valuation::Finite(-1));
        assert_eq!(vp(&q(-9, 4), p(3)), Valuation::Finite(2));
    }

    #[test]
    fn abs_p_examples() {
        assert_eq!(abs_p(&q(12, 1), p(2)), q(1, 4));
        assert_eq!(abs_p(&Rational::one(), p(7)), Rational::one());
        assert_eq!(abs_p(&q(50, 1), p(5)), q(1, 25));
        assert_eq!(abs_p(&Rational::zero(), p(3)), Rational::zero());
        assert_eq!(abs_p(&q(5, 6), p(3)), q(3, 1));
    }

    #[test]
    fn expansion_examples() {
        let a = PAdic::from_rational(&q(1, 4), p(3), 4);
        assert_eq!(a.valuation(), Valuation::Finite(0));
        assert_eq!(a.digits(), &[1, 2, 0, 2]); // 4⁻¹ ≡ 61 (mod 81)
        assert_eq!(a.to_string(), "p=3 v=0 digits=[1,2,0,2] (N=4)");

        let b = PAdic::from_rational(&q(-1, 1), p(2), 4);
        assert_eq!(b.valuation(), Valuation::Finite(0));
        assert_eq!(b.digits(), &[1, 1, 1, 1]); // −1 ≡ 15 (mod 16)

        let c = PAdic::from_rational(&q(6, 1), p(3), 3);
        assert_eq!(c.valuation(), Valuation::Finite(1));
        assert_eq!(c.digits(), &[2, 0, 0]);

        let z = PAdic::from_rational(&Rational::zero(), p(5), 8);
        assert!(z.is_zero());
        assert_eq!(z.precision(), 0);
        assert_eq!(z.abs(), Rational::zero());
    }

    #[test]
    fn arithmetic_examples() {
        let three = p(3);
        let a = PAdic::from_rational(&q(1, 4), three, 4);
        let b = PAdic::from_rational(&q(3, 4), three, 4);
        let s = a.try_add(&b).unwrap();
        assert_eq!(s.valuation(), Valuation::Finite(0));
        assert_eq!(s.digits(), &[1, 0, 0, 0]);

        let two = p(2);
        let x = PAdic::from_rational(&q(1, 3), two, 6);
        let y = PAdic::from_rational(&q(3, 1), two, 6);
        let prod = x.try_mul(&y).unwrap();
        assert_eq!(prod, PAdic::one(two, 6));

        let z = PAdic::zero(two);
        assert_eq!(x.try_div(&z).unwrap_err(), Error::DivisionByZero);

        let five = p(5);
        let w = PAdic::from_rational(&q(7, 2), five, 4);
        assert_eq!(
            w.try_add(&PAdic::from_rational(&q(1, 1), p(7), 4))
                .unwrap_err(),
            Error::PrimeMismatch { left: 5, right: 7 }
        );
    }

    #[test]
    fn cancellation_exhausts_precision() {
        let three = p(3);
        let a = PAdic::from_rational(&q(1, 4), three, 4);
        assert_eq!(a.try_sub(&a).unwrap_err(), Error::PrecisionExhausted);

        // 1 and 1 + 3⁴ share all four digits, so their difference has no
        // certain digit either.
        let one = PAdic::from_rational(&Rational::one(), three, 4);
        let shifted = PAdic::from_rational(&q(82, 1), three, 4);
        assert_eq!(one.try_sub(&shifted).unwrap_err(), Error::PrecisionExhausted);
    }

    #[test]
    fn mixed_valuation_addition() {
        let three = p(3);
        // 6 = 2·3 (v=1, N=3 ⇒ known mod 3⁴) plus 1/3 (v=−1, N=3 ⇒ known
        // mod 3²): the sum is certain only modulo 3².
        let a = PAdic::from_rational(&q(6, 1), three, 3);
        let b = PAdic::from_rational(&q(1, 3), three, 3);
        let s = a.try_add(&b).unwrap();
        assert_eq!(s.valuation(), Valuation::Finite(-1));
        assert_eq!(s.precision(), 3);
        // 6 + 1/3 = 19/3 and indeed 19 ≡ 1 + 0·3 + 2·9 (mod 27).
        assert_eq!(s.digits(), &[1, 0, 2]);
    }

    #[test]
    fn subtraction_drops_to_true_valuation() {
        let three = p(3);
        let a = PAdic::from_rational(&q(10, 1), three, 4);
        let b = PAdic::from_rational(&q(1, 1), three, 4);
        let d = a.try_sub(&b).unwrap(); // 9 = 3²
        assert_eq!(d.valuation(), Valuation::Finite(2));
        assert_eq!(d.precision(), 2); // absolute precision 3⁴ retained
        assert_eq!(d.digits(), &[1, 0]);
    }

    #[test]
    fn ball_decomposition_examples() {
        let balls = ball_decomposition(p(2), 1).unwrap();
        assert_eq!(balls, vec![q(0, 1), q(1, 1)]);
        let balls = ball_decomposition(p(3), 2).unwrap();
        assert_eq!(balls.len(), 9);
        assert_eq!(balls[8], q(8, 1));
        // Distinct residues stay p-adically far apart: |r − r'|_p > p^{−n}.
        for r in &balls {
            for s in &balls {
                if r != s {
                    assert!(abs_p(&(r - s), p(3)) > q(1, 9));
                }
            }
        }
        let balls = ball_decomposition(p(5), 0).unwrap();
        assert_eq!(balls, vec![q(0, 1)]);
        assert!(matches!(
            ball_decomposition(p(2), 21),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn complex_identities() {
        let z = Complex64::new(3.0, 4.0);
        assert_eq!(cx_abs(z).unwrap(), 5.0);

        let w = Complex64::new(1.0, 2.0);
        assert_eq!(cx_abs(cx_conj(w).unwrap()).unwrap(), cx_abs(w).unwrap());

        let z = Complex64::new(1.0, 1.0);
        let w = Complex64::new(1.0, -1.0);
        let lhs = cx_abs(z * w).unwrap();
        let rhs = cx_abs(z).unwrap() * cx_abs(w).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);

        assert_eq!(
            cx_abs(Complex64::new(f64::NAN, 0.0)).unwrap_err(),
            Error::NonFiniteInput
        );
        assert_eq!(
            cx_conj(Complex64::new(0.0, f64::INFINITY)).unwrap_err(),
            Error::NonFiniteInput
        );
    }

    #[test]
    fn sequence_ultrametric_examples() {
        let rho = default_rho(4);
        assert_eq!(rho, vec![0.5, 0.25, 0.125, 0.0625]);

        let x = [0, 1, 0, 1];
        assert_eq!(sequence_ultrametric(&x, &x, &rho).unwrap(), 0.0);

        // First disagreement at the third symbol ⇒ ρ₃ = 1/8.
        let y = [0, 1, 1, 1];
        assert_eq!(sequence_ultrametric(&x, &y, &rho).unwrap(), 0.125);

        // Strong triangle inequality on a concrete triple.
        let a = [0, 1, 0];
        let b = [0, 1, 1];
        let c = [1, 1, 1];
        let rho3 = default_rho(3);
        let dab = sequence_ultrametric(&a, &b, &rho3).unwrap();
        let dbc = sequence_ultrametric(&b, &c, &rho3).unwrap();
        let dac = sequence_ultrametric(&a, &c, &rho3).unwrap();
        assert_eq!(dac, 0.5);
        assert!(dac <= dab.max(dbc));

        assert_eq!(
            sequence_ultrametric(&a, &x, &rho).unwrap_err(),
            Error::LengthMismatch {
                expected: 3,
                got: 4
            }
        );
        assert_eq!(
            sequence_ultrametric(&x, &y, &[0.5, 0.5, 0.25, 0.125]).unwrap_err(),
            Error::NonDecreasingRho { index: 1 }
        );
        assert_eq!(
            sequence_ultrametric(&x, &y, &[0.5, -0.25, 0.125, 0.1]).unwrap_err(),
            Error::NonDecreasingRho { index: 1 }
        );
    }

    #[test]
    fn integers_have_small_p_adic_size() {
        for z in -50i64..=50 {
            for pr in [2u64, 3, 5, 7] {
                let a = abs_p(&q(z, 1), p(pr));
                assert!(a <= Rational::one());
            }
        }
    }

    #[test]
    fn round_trip_matches_modular_arithmetic() {
        // Reconstruction mod p^{v+N} must agree with the input rational:
        // p^{v+N} | (num − rep·den) once both are cleared of denominators.
        let three = p(3);
        for (num, den) in [(7i64, 5i64), (-13, 8), (22, 7), (1, 4), (35, 2)] {
            let x = q(num, den);
            let n = 6;
            let a = PAdic::from_rational(&x, three, n);
            let v = a.valuation().finite().unwrap();
            let rep = a.representative();
            let diff = &x - &rep;
            if !diff.is_zero() {
                let vdiff = vp(&diff, three).finite().unwrap();
                assert!(vdiff >= v + n as i64, "x={x} rep={rep}");
            }
        }
    }

    #[test]
    fn addition_agrees_with_exact_rationals() {
        let five = p(5);
        for (a, b) in [(q(3, 4), q(7, 10)), (q(-2, 3), q(2, 3)), (q(12, 1), q(1, 25))] {
            let pa = PAdic::from_rational(&a, five, 8);
            let pb = PAdic::from_rational(&b, five, 8);
            let sum = &a + &b;
            match pa.try_add(&pb) {
                Ok(s) => {
                    let direct =
                        PAdic::from_rational(&sum, five, s.precision().max(1));
                    // Compare in the coarser of the two precisions.
                    let n = s.precision().min(direct.precision());
                    assert_eq!(s.valuation(), direct.valuation());
                    assert_eq!(&s.digits()[..n], &direct.digits()[..n]);
                }
                Err(Error::PrecisionExhausted) => assert!(sum.is_zero()
                    || vp(&sum, five).finite().unwrap() >= 8),
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ultrametric_law(
            an in -1000i64..1000, ad in 1i64..1000,
            bn in -1000i64..1000, bd in 1i64..1000,
            pidx in 0usize..4,
        ) {
            let pr = p([2u64, 3, 5, 7][pidx]);
            let x = q(an, ad);
            let y = q(bn, bd);
            let ax = abs_p(&x, pr);
            let ay = abs_p(&y, pr);
            let asum = abs_p(&(&x + &y), pr);
            prop_assert!(asum <= ax.clone().max(ay.clone()));
            if ax != ay {
                prop_assert_eq!(asum, ax.clone().max(ay.clone()));
            }
            // Multiplicativity is exact.
            let aprod = abs_p(&(&x * &y), pr);
            prop_assert_eq!(aprod, ax * ay);
        }

        #[test]
        fn expansion_round_trip(
            num in -10_000i64..10_000,
            den in 1i64..10_000,
        ) {
            let three = p(3);
            let x = q(num, den);
            let a = PAdic::from_rational(&x, three, 12);
            if let Some(v) = a.valuation().finite() {
                let diff = &x - a.representative();
                if !diff.is_zero() {
                    let vd = vp(&diff, three).finite().unwrap();
                    prop_assert!(vd >= v + 12);
                }
            } else {
                prop_assert!(x.is_zero());
            }
        }
    }

    #[test]
    fn rational_helper_sanity() {
        // Rational::from_f64 is only used in tests; pin its behavior.
        assert_eq!(Rational::from_f64(0.5).unwrap(), q(1, 2));
    }
}
