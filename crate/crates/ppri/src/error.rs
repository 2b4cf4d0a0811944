//! Crate-wide error type.
//!
//! Every fallible operation in the library reports one of these variants.
//! The CLI maps each variant to a stable diagnostic name (see
//! [`Error::name`]) so scripts can match on the first token of stderr.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The modulus failed primality validation (or exceeds the 2^31 bound).
    NonPrimeModulus(u64),
    /// Two p-adic operands carry different primes.
    PrimeMismatch { left: u64, right: u64 },
    DivisionByZero,
    /// Cancellation in p-adic addition/subtraction left no certain digits.
    PrecisionExhausted,
    /// An enumeration or table would exceed the configured memory budget.
    BudgetExceeded(String),
    /// A complex operand contained NaN or an infinity.
    NonFiniteInput,
    LengthMismatch { expected: usize, got: usize },
    /// The scale sequence for the symbol-sequence ultrametric must be
    /// strictly decreasing and positive.
    NonDecreasingRho { index: usize },
    /// Coefficient sequences over different scalar kinds were combined.
    KindMismatch(String),
    /// The summation cap was reached without a convergence certificate.
    NonConvergenceSuspected { terms: usize },
    /// The alternating-series terms increased at this index.
    MonotonicityViolation { index: usize },
    /// p-adic summation needs a valuation lower-bound certificate.
    NoValuationCertificate(String),
    /// The argument lies outside the operation's convergence domain.
    DomainError(String),
    /// Abel evaluation of a streamed series with no coefficient bound.
    UnboundedCoefficients,
    /// Laurent evaluation at z = 0.
    ZeroArgument,
    /// Laurent sequences with a tail bound are only summable on |z| = 1.
    OffCircleWithInfiniteSupport,
    NonSquareMatrix { rows: usize, cols: usize },
    /// Exponent order p <= q violated.
    OrderViolation { p: String, q: String },
    DimensionMismatch { left: usize, right: usize },
    NotSelfAdjoint { deviation: f64 },
    NotOrthonormal { deviation: f64 },
    /// The minimal polynomial has zero constant term, so no inverse exists.
    Singular,
    /// The rational is not in Z_E: its denominator has a prime outside E.
    NotInZE(String),
    /// Grid/box enumeration hit its limit without the guaranteed point.
    SearchExhausted(String),
    AsymmetricRegion(String),
    NonConvexRegion(String),
    UnknownSuite(String),
    /// Argument overflow guard (|z| too large for the double exponential).
    OverflowRisk(String),
    /// Malformed input payload (CLI and JSON parsing).
    ParseError(String),
}

impl Error {
    /// Stable diagnostic name, printed as the first token of CLI errors.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NonPrimeModulus(_) => "NonPrimeModulus",
            Error::PrimeMismatch { .. } => "PrimeMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::PrecisionExhausted => "PrecisionExhausted",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::NonFiniteInput => "NonFiniteInput",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NonDecreasingRho { .. } => "NonDecreasingRho",
            Error::KindMismatch(_) => "KindMismatch",
            Error::NonConvergenceSuspected { .. } => "NonConvergenceSuspected",
            Error::MonotonicityViolation { .. } => "MonotonicityViolation",
            Error::NoValuationCertificate(_) => "NoValuationCertificate",
            Error::DomainError(_) => "DomainError",
            Error::UnboundedCoefficients => "UnboundedCoefficients",
            Error::ZeroArgument => "ZeroArgument",
            Error::OffCircleWithInfiniteSupport => "OffCircleWithInfiniteSupport",
            Error::NonSquareMatrix { .. } => "NonSquareMatrix",
            Error::OrderViolation { .. } => "OrderViolation",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSelfAdjoint { .. } => "NotSelfAdjoint",
            Error::NotOrthonormal { .. } => "NotOrthonormal",
            Error::Singular => "Singular",
            Error::NotInZE(_) => "NotInZE",
            Error::SearchExhausted(_) => "SearchExhausted",
            Error::AsymmetricRegion(_) => "AsymmetricRegion",
            Error::NonConvexRegion(_) => "NonConvexRegion",
            Error::UnknownSuite(_) => "UnknownSuite",
            Error::OverflowRisk(_) => "OverflowRisk",
            Error::ParseError(_) => "ParseError",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPrimeModulus(p) => {
                write!(f, "NonPrimeModulus: {p} is not a prime below 2^31")
            }
            Error::PrimeMismatch { left, right } => {
                write!(f, "PrimeMismatch: operands carry p={left} and p={right}")
            }
            Error::DivisionByZero => write!(f, "DivisionByZero: divisor is zero"),
            Error::PrecisionExhausted => write!(
                f,
                "PrecisionExhausted: cancellation left no certain digits"
            ),
            Error::BudgetExceeded(what) => write!(f, "BudgetExceeded: {what}"),
            Error::NonFiniteInput => write!(f, "NonFiniteInput: NaN or infinite component"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "LengthMismatch: expected length {expected}, got {got}")
            }
            Error::NonDecreasingRho { index } => write!(
                f,
                "NonDecreasingRho: scale sequence fails to decrease at index {index}"
            ),
            Error::KindMismatch(what) => write!(f, "KindMismatch: {what}"),
            Error::NonConvergenceSuspected { terms } => write!(
                f,
                "NonConvergenceSuspected: no certificate after {terms} terms"
            ),
            Error::MonotonicityViolation { index } => write!(
                f,
                "MonotonicityViolation: terms increase at index {index}"
            ),
            Error::NoValuationCertificate(what) => {
                write!(f, "NoValuationCertificate: {what}")
            }
            Error::DomainError(what) => write!(f, "DomainError: {what}"),
            Error::UnboundedCoefficients => write!(
                f,
                "UnboundedCoefficients: streamed series needs a sup|a_j| bound"
            ),
            Error::ZeroArgument => write!(f, "ZeroArgument: evaluation point must be nonzero"),
            Error::OffCircleWithInfiniteSupport => write!(
                f,
                "OffCircleWithInfiniteSupport: truncated Laurent series evaluate only on |z| = 1"
            ),
            Error::NonSquareMatrix { rows, cols } => {
                write!(f, "NonSquareMatrix: {rows}x{cols}")
            }
            Error::OrderViolation { p, q } => {
                write!(f, "OrderViolation: need p <= q, got p={p}, q={q}")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "DimensionMismatch: {left} vs {right}")
            }
            Error::NotSelfAdjoint { deviation } => write!(
                f,
                "NotSelfAdjoint: max |A - A^T| entry is {deviation:e}"
            ),
            Error::NotOrthonormal { deviation } => write!(
                f,
                "NotOrthonormal: max |W^T W - I| entry is {deviation:e}"
            ),
            Error::Singular => write!(f, "Singular: zero constant term in the minimal polynomial"),
            Error::NotInZE(x) => write!(f, "NotInZE: {x} has a denominator prime outside E"),
            Error::SearchExhausted(what) => write!(f, "SearchExhausted: {what}"),
            Error::AsymmetricRegion(what) => write!(f, "AsymmetricRegion: {what}"),
            Error::NonConvexRegion(what) => write!(f, "NonConvexRegion: {what}"),
            Error::UnknownSuite(name) => write!(f, "UnknownSuite: {name}"),
            Error::OverflowRisk(what) => write!(f, "OverflowRisk: {what}"),
            Error::ParseError(what) => write!(f, "ParseError: {what}"),
        }
    }
}

impl std::error::Error for Error {}
