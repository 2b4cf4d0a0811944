//! Command-line driver: every library operation behind one binary, plus the
//! randomized `verify` suites.
//!
//! Exit codes: 0 on success, 2 for usage problems (malformed input, unknown
//! suites, bad flags), 1 for domain errors. Errors print on stderr as
//! `ErrorName: detail`; `--json` switches stdout to one JSON object per
//! invocation.

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use ppri::error::{Error, Result};
use ppri::io;
use ppri::lattice::{
    covering_point, discreteness_gap, in_ze, minkowski_point, pigeonhole_pair, place_distances,
    product_distance, PrimeSet,
};
use ppri::norms::{
    comparison_constant, dual_norm, holder_pairing, lp_norm, norm_l1_exact, norm_linf_exact,
    seminorm_axioms_check, PExponent,
};
use ppri::operators::{
    basis_quadratic_lp, det_exact, eigenvalue_check, inverse_via_powers, minimal_poly,
    opnorm_estimate, opnorm_l1_exact, opnorm_linf_exact, padic_isometry_check, poly_eval_matrix,
    schatten_norm, schur_certificate, symmetric_eigen, unimodular_check, Matrix,
};
use ppri::scalars::{abs_p, ball_decomposition, cx_abs, cx_conj, vp, PAdic, Prime, Valuation};
use ppri::series::{
    abel_eval, alternating_sum, cauchy_product, exp_additivity_check, exp_complex, exp_padic,
    geometric_sum_complex, geometric_sum_padic, geometric_sum_real, laurent_eval, laurent_product,
    legendre_vp_factorial, poly_eval_in_algebra, radius_estimate, sum_complex, sum_padic,
    CoeffSeq,
};
use ppri::verify::run_suite;
use ppri::Rational;
use serde_json::{json, Value};
use std::process::ExitCode;

const ERROR_NAME_HELP: &str = "\
ERRORS:
  Failures print on stderr as `Name: detail` and exit 1, except ParseError and
  UnknownSuite which exit 2 (usage). The names, one per library error type:
    NonPrimeModulus, PrimeMismatch, DivisionByZero, PrecisionExhausted,
    BudgetExceeded, NonFiniteInput, LengthMismatch, NonDecreasingRho,
    KindMismatch, NonConvergenceSuspected, MonotonicityViolation,
    NoValuationCertificate, DomainError, UnboundedCoefficients, ZeroArgument,
    OffCircleWithInfiniteSupport, NonSquareMatrix, OrderViolation,
    DimensionMismatch, NotSelfAdjoint, NotOrthonormal, Singular, NotInZE,
    SearchExhausted, AsymmetricRegion, NonConvexRegion, UnknownSuite,
    OverflowRisk, ParseError";

#[derive(Parser)]
#[command(
    name = "ppri",
    version,
    about = "Exact p-adic arithmetic, certified series, norms, operators, and diagonal-embedding lattices",
    after_long_help = ERROR_NAME_HELP
)]
struct Cli {
    /// Emit one JSON object instead of human-readable text
    #[arg(long, global = true)]
    json: bool,
    /// Significant digits for real-valued human output
    #[arg(long, default_value_t = 15)]
    digits: usize,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand)]
enum Group {
    /// Truncated p-adic arithmetic
    #[command(subcommand)]
    Padic(PadicCmd),
    /// Complex-plane helpers
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Series summation with certificates
    #[command(subcommand)]
    Series(SeriesCmd),
    /// ℓp norms, duality, and axiom checks
    #[command(subcommand)]
    Norm(NormCmd),
    /// Matrix operators: norms, spectra, minimal polynomials
    #[command(subcommand)]
    Op(OpCmd),
    /// Diagonal embeddings of Z_E and geometry-of-numbers searches
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Run a randomized invariant suite (exit 0 iff all trials pass)
    Verify {
        /// ultrametric | cauchy-product | schur | schatten | lattice | all
        suite: String,
        #[arg(long, env = "PPRI_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum PadicCmd {
    /// Expand a rational into base-p digits
    Expand {
        x: String,
        #[arg(long)]
        p: u64,
        /// Number of digits to compute
        #[arg(long, default_value_t = 32)]
        digits: usize,
    },
    /// Add two rationals as truncated p-adics
    Add {
        x: String,
        y: String,
        #[arg(long)]
        p: u64,
        /// Working precision in digits
        #[arg(long, default_value_t = 32)]
        n: usize,
    },
    /// Subtract as truncated p-adics
    Sub {
        x: String,
        y: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 32)]
        n: usize,
    },
    /// Multiply as truncated p-adics
    Mul {
        x: String,
        y: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 32)]
        n: usize,
    },
    /// Divide as truncated p-adics
    Div {
        x: String,
        y: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 32)]
        n: usize,
    },
    /// The p-adic valuation of a rational
    Vp {
        x: String,
        #[arg(long)]
        p: u64,
    },
    /// The p-adic absolute value, exact
    Abs {
        x: String,
        #[arg(long)]
        p: u64,
    },
    /// Decompose Z_p into the p^n balls of radius p^{-n}
    Balls {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// |z| for z given as re,im
    Abs { z: String },
    /// Complex conjugate
    Conj { z: String },
    /// exp(z), summed with a certified tail
    Exp { z: String },
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Sum a complex series with a certified error bound
    Sum {
        /// Inline terms, a named stream, or a JSON payload (@file allowed)
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 1e-10)]
        eps: f64,
        #[arg(long, default_value_t = 1_000_000)]
        max_terms: usize,
    },
    /// Alternating sum Σ(−1)^j b_j with the Leibniz bound
    Alternating {
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 1e-10)]
        eps: f64,
    },
    /// Closed-form geometric sum 1/(1−x): real by default, p-adic with --p
    Geometric {
        x: String,
        /// Sum in Q_p instead of R (requires |x|_p < 1)
        #[arg(long)]
        p: Option<u64>,
        /// Treat x as complex re,im
        #[arg(long)]
        complex: bool,
    },
    /// Sum a finite rational series in Q_p to a target precision
    SumPadic {
        #[arg(long)]
        series: String,
        #[arg(long)]
        p: u64,
        /// Compute the sum modulo p^target
        #[arg(long, default_value_t = 8)]
        target: i64,
    },
    /// Windowed root-test estimate of the radius of convergence
    Radius {
        #[arg(long)]
        series: String,
        #[arg(long, default_value_t = 64)]
        terms: usize,
    },
    /// Abel means Σ a_j r^j along a schedule of radii r < 1
    Abel {
        #[arg(long)]
        series: String,
        /// Comma-separated radii in [0,1)
        #[arg(long)]
        schedule: String,
        /// Known bound sup_j |a_j| (tightens the tail certificate)
        #[arg(long)]
        sup_bound: Option<f64>,
    },
    /// Legendre's formula: v_p(n!)
    Legendre {
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// The p-adic exponential E(x) = Σ x^k/k! (needs |x|_p small)
    ExpPadic {
        x: String,
        #[arg(long)]
        p: u64,
        /// Digits of the result
        #[arg(long, default_value_t = 8)]
        target: usize,
    },
    /// Check E(x+y) = E(x)·E(y) at the working precision
    ExpCheck {
        x: String,
        y: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 8)]
        target: usize,
    },
    /// Cauchy product of two series (exact for rational payloads)
    Cauchy {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Highest coefficient index to produce
        #[arg(long, default_value_t = 16)]
        upto: usize,
    },
    /// Convolution product of two summable Laurent sequences
    LaurentProduct {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Evaluate a Laurent sequence at z on the unit circle
    LaurentEval {
        #[arg(long)]
        a: String,
        /// Evaluation point re,im
        #[arg(long)]
        z: String,
    },
    /// Evaluate a polynomial with rational coefficients at a scalar or matrix
    PolyEval {
        /// Coefficients c_0,c_1,... (ascending)
        #[arg(long)]
        coeffs: String,
        /// Rational evaluation point
        #[arg(long)]
        at: Option<String>,
        /// Square rational matrix argument
        #[arg(long)]
        matrix: Option<String>,
    },
}

#[derive(Subcommand)]
enum NormCmd {
    /// ‖v‖_p (exact for p ∈ {1, ∞})
    Lp {
        #[arg(long)]
        vec: String,
        #[arg(long)]
        p: String,
    },
    /// The constant n^{1/p−1/q} with ‖v‖_q ≤ ‖v‖_p ≤ C‖v‖_q
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Hölder pairing |Σ a_j b_j| against ‖a‖_p ‖b‖_q
    Holder {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        p: String,
    },
    /// Dual norm of w on (Qⁿ, ‖·‖_p) with an extremal witness
    Dual {
        #[arg(long)]
        vec: String,
        #[arg(long)]
        p: String,
    },
    /// Probe the seminorm axioms of a named oracle
    Axioms {
        /// l1 | l2 | linf | l2sq | sqrt2-gap
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, env = "PPRI_SEED", default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum OpCmd {
    /// Exact ℓ1→ℓ1 operator norm (max column sum)
    L1 {
        #[arg(long)]
        matrix: String,
    },
    /// Exact ℓ∞→ℓ∞ operator norm (max row sum)
    Linf {
        #[arg(long)]
        matrix: String,
    },
    /// Schur test: all row and column sums of |entries| ≤ 1
    Schur {
        #[arg(long)]
        matrix: String,
    },
    /// Sampled lower bound for the ℓp→ℓp norm
    Estimate {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 64)]
        trials: usize,
        #[arg(long, env = "PPRI_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Jacobi eigendecomposition of a symmetric matrix
    Eigen {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Schatten p-norm of a symmetric matrix
    Schatten {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// ℓp norm of the diagonal quadratic-form values in an orthonormal basis
    BasisQuadratic {
        #[arg(long)]
        matrix: String,
        /// Orthonormal basis, one vector per row
        #[arg(long)]
        basis: String,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Minimal polynomial of a square rational matrix (exact)
    Minpoly {
        #[arg(long)]
        matrix: String,
    },
    /// Exact inverse via the minimal polynomial
    Inverse {
        #[arg(long)]
        matrix: String,
    },
    /// Exact determinant (Bareiss elimination)
    Det {
        #[arg(long)]
        matrix: String,
    },
    /// Is α an exact eigenvalue of the matrix?
    EigenvalueCheck {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        alpha: String,
    },
    /// Integer entries and determinant ±1?
    Unimodular {
        #[arg(long)]
        matrix: String,
    },
    /// p-adically integral entries and |det|_p = 1?
    Isometry {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Is x in Z_E = Z[1/p : p ∈ E]?
    InZe {
        x: String,
        /// Comma-separated primes, e.g. 2,3
        #[arg(long)]
        primes: String,
    },
    /// Distances between diagonal embeddings: real place and each p ∈ E
    Distance {
        x: String,
        y: String,
        #[arg(long)]
        primes: String,
    },
    /// The discreteness gap max-place distance (≥ 1 for distinct points)
    Gap {
        x: String,
        y: String,
        #[arg(long)]
        primes: String,
    },
    /// Find x ∈ Z_E close to y at the real place and to each w_i p-adically
    Cover {
        y: String,
        /// Comma-separated p-adic targets, one per prime
        #[arg(long)]
        w: String,
        #[arg(long)]
        primes: String,
    },
    /// Find x ≠ y in a region with x − y ∈ Zⁿ (volume > 1)
    Pigeonhole {
        /// {"type":"box",...}, {"type":"ellipsoid",...}, or cross:<n>:<r>
        #[arg(long)]
        region: String,
    },
    /// Find a nonzero integer point in a symmetric convex region (volume > 2ⁿ)
    Minkowski {
        #[arg(long)]
        region: String,
        #[arg(long, env = "PPRI_SEED", default_value_t = 0)]
        seed: u64,
    },
}

/// What a successful subcommand prints, in both renderings.
struct Output {
    human: String,
    json: Value,
    /// Success-with-failures (verify suites): exit 1 without an error.
    failed: bool,
}

impl Output {
    fn new(human: impl Into<String>, json: Value) -> Output {
        Output {
            human: human.into(),
            json,
            failed: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else {
                println!("{}", out.human);
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                Error::ParseError(_) | Error::UnknownSuite(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn prime(p: u64) -> Result<Prime> {
    Prime::new(p)
}

fn parse_primes(s: &str) -> Result<PrimeSet> {
    let primes: Vec<u64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::ParseError(format!("bad prime {t:?}")))
        })
        .collect::<Result<_>>()?;
    PrimeSet::new(primes)
}

fn format_rational_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(io::format_rational).collect();
    format!("({})", parts.join(","))
}

fn rational_vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(io::format_rational(x))).collect())
}

fn format_matrix(m: &Matrix<Rational>) -> String {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| io::format_rational(m.get(i, j)))
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn matrix_json(m: &Matrix<Rational>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(io::format_rational(m.get(i, j))))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn valuation_str(v: Valuation) -> String {
    match v {
        Valuation::Finite(k) => k.to_string(),
        Valuation::Infinite => "+inf".into(),
    }
}

fn digits_str(d: &[u32]) -> String {
    let parts: Vec<String> = d.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(","))
}

fn bool_output(value: bool) -> Output {
    Output::new(value.to_string(), json!({ "value": value }))
}

fn rational_output(x: &Rational) -> Output {
    Output::new(io::format_rational(x), json!({ "value": io::format_rational(x) }))
}

fn f64_output(x: f64, digits: usize) -> Output {
    Output::new(io::format_f64(x, digits), json!({ "value": x }))
}

fn complex_output(z: Complex64, digits: usize) -> Output {
    Output::new(io::format_complex(z, digits), json!({ "value": complex_json(z) }))
}

fn padic_output(x: &PAdic) -> Output {
    Output::new(x.to_string(), io::padic_json(x))
}

/// Coefficients as f64 values (for alternating sums).
fn payload_f64_seq(p: &io::SeriesPayload) -> Result<CoeffSeq<f64>> {
    match p {
        io::SeriesPayload::Rational(a) => Ok(match a.finite_len() {
            Some(len) => CoeffSeq::finite(
                (0..len)
                    .map(|j| a.term(j).to_f64().unwrap_or(f64::NAN))
                    .collect(),
            ),
            None => {
                let a = a.clone();
                CoeffSeq::streamed(move |j| a.term(j).to_f64().unwrap_or(f64::NAN))
            }
        }),
        io::SeriesPayload::Complex(_) => Err(Error::KindMismatch(
            "alternating sums need real terms, got complex".into(),
        )),
    }
}

/// A valid nondecreasing valuation floor for a finite rational series:
/// suffix minima of the term valuations, capped at the target.
fn finite_vmin(terms: &CoeffSeq<Rational>, p: Prime, target: i64) -> Result<Vec<i64>> {
    let len = terms.finite_len().ok_or_else(|| {
        Error::DomainError("sum-padic needs a finite series payload".into())
    })?;
    let mut suffix = vec![target; len + 1];
    for i in (0..len).rev() {
        let v = match vp(&terms.term(i), p) {
            Valuation::Finite(v) => v.min(target),
            Valuation::Infinite => target,
        };
        suffix[i] = suffix[i + 1].min(v);
    }
    Ok(suffix)
}

fn dispatch(cli: &Cli) -> Result<Output> {
    let digits = cli.digits;
    match &cli.group {
        Group::Padic(cmd) => padic_cmd(cmd),
        Group::Complex(cmd) => complex_cmd(cmd, digits),
        Group::Series(cmd) => series_cmd(cmd, digits),
        Group::Norm(cmd) => norm_cmd(cmd, digits),
        Group::Op(cmd) => op_cmd(cmd, digits),
        Group::Lattice(cmd) => lattice_cmd(cmd, digits),
        Group::Verify { suite, seed } => verify_cmd(suite, *seed),
    }
}

fn padic_cmd(cmd: &PadicCmd) -> Result<Output> {
    match cmd {
        PadicCmd::Expand { x, p, digits } => {
            let x = io::parse_rational(x)?;
            let value = PAdic::from_rational(&x, prime(*p)?, *digits);
            let human = format!(
                "v={} digits={}",
                valuation_str(value.valuation()),
                digits_str(value.digits())
            );
            Ok(Output::new(human, io::padic_json(&value)))
        }
        PadicCmd::Add { x, y, p, n }
        | PadicCmd::Sub { x, y, p, n }
        | PadicCmd::Mul { x, y, p, n }
        | PadicCmd::Div { x, y, p, n } => {
            let pr = prime(*p)?;
            let a = PAdic::from_rational(&io::parse_rational(x)?, pr, *n);
            let b = PAdic::from_rational(&io::parse_rational(y)?, pr, *n);
            let value = match cmd {
                PadicCmd::Add { .. } => a.try_add(&b)?,
                PadicCmd::Sub { .. } => a.try_sub(&b)?,
                PadicCmd::Mul { .. } => a.try_mul(&b)?,
                _ => a.try_div(&b)?,
            };
            Ok(padic_output(&value))
        }
        PadicCmd::Vp { x, p } => {
            let v = vp(&io::parse_rational(x)?, prime(*p)?);
            Ok(Output::new(
                valuation_str(v),
                json!({ "valuation": v.finite() }),
            ))
        }
        PadicCmd::Abs { x, p } => {
            let a = abs_p(&io::parse_rational(x)?, prime(*p)?);
            Ok(rational_output(&a))
        }
        PadicCmd::Balls { p, n } => {
            let reps = ball_decomposition(prime(*p)?, *n)?;
            let human = format!(
                "count={}\n{}",
                reps.len(),
                reps.iter().map(io::format_rational).collect::<Vec<_>>().join(",")
            );
            Ok(Output::new(
                human,
                json!({ "count": reps.len(), "representatives": rational_vec_json(&reps) }),
            ))
        }
    }
}

fn complex_cmd(cmd: &ComplexCmd, digits: usize) -> Result<Output> {
    match cmd {
        ComplexCmd::Abs { z } => Ok(f64_output(cx_abs(io::parse_complex(z)?)?, digits)),
        ComplexCmd::Conj { z } => Ok(complex_output(cx_conj(io::parse_complex(z)?)?, digits)),
        ComplexCmd::Exp { z } => Ok(complex_output(exp_complex(io::parse_complex(z)?)?, digits)),
    }
}

fn series_cmd(cmd: &SeriesCmd, digits: usize) -> Result<Output> {
    match cmd {
        SeriesCmd::Sum {
            series,
            eps,
            max_terms,
        } => {
            let payload = io::parse_series(&io::read_payload(series)?)?;
            let result = sum_complex(&payload.to_complex(), *eps, *max_terms)?;
            let human = io::sum_result_line(
                &io::format_complex(result.value, digits),
                result.terms_used,
                &result.error_bound,
            );
            let json = io::sum_result_json(&result, complex_json(result.value));
            Ok(Output::new(human, json))
        }
        SeriesCmd::Alternating { series, eps } => {
            let payload = io::parse_series(&io::read_payload(series)?)?;
            let result = alternating_sum(&payload_f64_seq(&payload)?, *eps)?;
            let human = io::sum_result_line(
                &io::format_f64(result.value, digits),
                result.terms_used,
                &result.error_bound,
            );
            let json = io::sum_result_json(&result, json!(result.value));
            Ok(Output::new(human, json))
        }
        SeriesCmd::Geometric { x, p, complex } => {
            if let Some(p) = p {
                let value = geometric_sum_padic(&io::parse_rational(x)?, prime(*p)?)?;
                Ok(rational_output(&value))
            } else if *complex {
                Ok(complex_output(
                    geometric_sum_complex(io::parse_complex(x)?)?,
                    digits,
                ))
            } else {
                Ok(rational_output(&geometric_sum_real(&io::parse_rational(
                    x,
                )?)?))
            }
        }
        SeriesCmd::SumPadic { series, p, target } => {
            let pr = prime(*p)?;
            let a = io::parse_series(&io::read_payload(series)?)?.into_rational()?;
            let suffix = finite_vmin(&a, pr, *target)?;
            let last = *suffix.last().expect("suffix minima are nonempty");
            let result = sum_padic(&a, pr, *target, move |j| {
                suffix.get(j).copied().unwrap_or(last)
            })?;
            let human = io::sum_result_line(
                &result.value.to_string(),
                result.terms_used,
                &result.error_bound,
            );
            let json = io::sum_result_json(&result, io::padic_json(&result.value));
            Ok(Output::new(human, json))
        }
        SeriesCmd::Radius { series, terms } => {
            let payload = io::parse_series(&io::read_payload(series)?)?;
            let r = match &payload {
                io::SeriesPayload::Rational(a) => radius_estimate(a, *terms),
                io::SeriesPayload::Complex(a) => radius_estimate(a, *terms),
            };
            let json = if r.is_infinite() {
                json!({ "radius": "inf" })
            } else {
                json!({ "radius": r })
            };
            Ok(Output {
                human: io::format_f64(r, digits),
                json,
                failed: false,
            })
        }
        SeriesCmd::Abel {
            series,
            schedule,
            sup_bound,
        } => {
            let payload = io::parse_series(&io::read_payload(series)?)?;
            let radii = io::parse_f64_vec(schedule)?;
            let values = abel_eval(&payload.to_complex(), &radii, *sup_bound)?;
            let human = radii
                .iter()
                .zip(&values)
                .map(|(r, v)| format!("r={}: {}", r, io::format_complex(*v, digits)))
                .collect::<Vec<_>>()
                .join("\n");
            let evals: Vec<Value> = radii
                .iter()
                .zip(&values)
                .map(|(r, v)| json!({ "r": r, "value": complex_json(*v) }))
                .collect();
            Ok(Output::new(human, json!({ "evaluations": evals })))
        }
        SeriesCmd::Legendre { n, p } => {
            let v = legendre_vp_factorial(*n, prime(*p)?);
            Ok(Output::new(v.to_string(), json!({ "value": v })))
        }
        SeriesCmd::ExpPadic { x, p, target } => {
            let value = exp_padic(&io::parse_rational(x)?, prime(*p)?, *target)?;
            Ok(padic_output(&value))
        }
        SeriesCmd::ExpCheck { x, y, p, target } => {
            let ok = exp_additivity_check(
                &io::parse_rational(x)?,
                &io::parse_rational(y)?,
                prime(*p)?,
                *target,
            )?;
            Ok(bool_output(ok))
        }
        SeriesCmd::Cauchy { a, b, upto } => {
            let a = io::parse_series(&io::read_payload(a)?)?;
            let b = io::parse_series(&io::read_payload(b)?)?;
            match (a, b) {
                (io::SeriesPayload::Rational(a), io::SeriesPayload::Rational(b)) => {
                    let prod = cauchy_product(&a, &b, *upto)?;
                    let terms: Vec<Rational> = (0..=*upto).map(|j| prod.term(j)).collect();
                    Ok(Output::new(
                        format_rational_vec(&terms),
                        json!({ "terms": rational_vec_json(&terms) }),
                    ))
                }
                (io::SeriesPayload::Complex(a), io::SeriesPayload::Complex(b)) => {
                    let prod = cauchy_product(&a, &b, *upto)?;
                    let terms: Vec<Complex64> = (0..=*upto).map(|j| prod.term(j)).collect();
                    let human = terms
                        .iter()
                        .map(|z| io::format_complex(*z, digits))
                        .collect::<Vec<_>>()
                        .join(",");
                    let json_terms: Vec<Value> = terms.iter().map(|z| complex_json(*z)).collect();
                    Ok(Output::new(format!("({human})"), json!({ "terms": json_terms })))
                }
                _ => Err(Error::KindMismatch(
                    "cannot convolve a rational series with a complex one".into(),
                )),
            }
        }
        SeriesCmd::LaurentProduct { a, b } => {
            let a = io::parse_laurent(&io::read_payload(a)?)?;
            let b = io::parse_laurent(&io::read_payload(b)?)?;
            let prod = laurent_product(&a, &b);
            let mut json = io::laurent_json(&prod);
            let l1 = prod.norm_l1_upper();
            json["l1_upper"] = Value::String(io::format_rational(&l1));
            Ok(Output::new(json.to_string(), json))
        }
        SeriesCmd::LaurentEval { a, z } => {
            let a = io::parse_laurent(&io::read_payload(a)?)?;
            let value = laurent_eval(&a, io::parse_complex(z)?)?;
            Ok(complex_output(value, digits))
        }
        SeriesCmd::PolyEval { coeffs, at, matrix } => {
            let coeffs = io::parse_rational_vec(coeffs)?;
            match (at, matrix) {
                (Some(x), None) => {
                    let value = poly_eval_in_algebra(&coeffs, &io::parse_rational(x)?);
                    Ok(rational_output(&value))
                }
                (None, Some(m)) => {
                    let t = io::parse_matrix_rational(&io::read_payload(m)?)?;
                    let value = poly_eval_matrix(&coeffs, &t)?;
                    Ok(Output::new(
                        format_matrix(&value),
                        json!({ "matrix": matrix_json(&value) }),
                    ))
                }
                _ => Err(Error::ParseError(
                    "poly-eval needs exactly one of --at or --matrix".into(),
                )),
            }
        }
    }
}

fn norm_cmd(cmd: &NormCmd, digits: usize) -> Result<Output> {
    match cmd {
        NormCmd::Lp { vec, p } => {
            let v = io::parse_rational_vec(vec)?;
            let p = io::parse_exponent(p)?;
            match p {
                PExponent::Infinity => Ok(rational_output(&norm_linf_exact(&v))),
                _ if p == PExponent::one() => Ok(rational_output(&norm_l1_exact(&v))),
                _ => Ok(f64_output(lp_norm(&v, &p), digits)),
            }
        }
        NormCmd::Compare { n, p, q } => {
            let c = comparison_constant(*n, &io::parse_exponent(p)?, &io::parse_exponent(q)?)?;
            Ok(f64_output(c, digits))
        }
        NormCmd::Holder { a, b, p } => {
            let report = holder_pairing(
                &io::parse_rational_vec(a)?,
                &io::parse_rational_vec(b)?,
                &io::parse_exponent(p)?,
            )?;
            let human = format!(
                "pairing={} bound={} young_termwise_ok={}",
                io::format_rational(&report.pairing),
                io::format_f64(report.bound, digits),
                report.young_termwise_ok
            );
            Ok(Output::new(
                human,
                json!({
                    "pairing": io::format_rational(&report.pairing),
                    "bound": report.bound,
                    "young_termwise_ok": report.young_termwise_ok,
                }),
            ))
        }
        NormCmd::Dual { vec, p } => {
            let result = dual_norm(&io::parse_rational_vec(vec)?, &io::parse_exponent(p)?);
            let mut human = format!(
                "{} witness={}",
                io::format_f64(result.value, digits),
                io::format_f64_vec(&result.witness, digits)
            );
            if result.degenerate {
                human.push_str(" degenerate");
            }
            Ok(Output::new(
                human,
                json!({
                    "value": result.value,
                    "witness": result.witness,
                    "degenerate": result.degenerate,
                }),
            ))
        }
        NormCmd::Axioms {
            oracle,
            dim,
            trials,
            seed,
        } => {
            let name = oracle.as_str();
            if name == "sqrt2-gap" && *dim != 2 {
                return Err(Error::DomainError(
                    "the sqrt2-gap oracle is two-dimensional".into(),
                ));
            }
            let oracle: Box<dyn Fn(&[Rational]) -> f64> = match name {
                "l1" => Box::new(|v| lp_norm(v, &PExponent::one())),
                "l2" => Box::new(|v| lp_norm(v, &PExponent::two())),
                "linf" => Box::new(|v| lp_norm(v, &PExponent::Infinity)),
                "l2sq" => Box::new(|v| {
                    let n = lp_norm(v, &PExponent::two());
                    n * n
                }),
                "sqrt2-gap" => Box::new(|v| {
                    let x = v[0].to_f64().unwrap_or(f64::NAN);
                    let y = v[1].to_f64().unwrap_or(f64::NAN);
                    (x - std::f64::consts::SQRT_2 * y).abs()
                }),
                other => {
                    return Err(Error::ParseError(format!(
                        "unknown oracle {other:?}; known: l1, l2, linf, l2sq, sqrt2-gap"
                    )))
                }
            };
            let reports = seminorm_axioms_check(|v| oracle(v), *dim, *trials, *seed);
            let human = reports
                .iter()
                .map(|r| match &r.counterexample {
                    None => format!("{}: pass ({} trials)", r.axiom, r.trials),
                    Some(ce) => format!("{}: FAIL {}", r.axiom, ce),
                })
                .collect::<Vec<_>>()
                .join("\n");
            let json_reports: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut obj = json!({
                        "axiom": r.axiom,
                        "status": if r.passed() { "pass" } else { "fail" },
                    });
                    if let Some(ce) = &r.counterexample {
                        obj["counterexample"] = Value::String(ce.clone());
                    }
                    obj
                })
                .collect();
            Ok(Output::new(human, json!({ "reports": json_reports })))
        }
    }
}

fn op_cmd(cmd: &OpCmd, digits: usize) -> Result<Output> {
    match cmd {
        OpCmd::L1 { matrix } => {
            let t = io::parse_matrix_rational(&io::read_payload(matrix)?)?;
            t.require_square()?;
            Ok(rational_output(&opnorm_l1_exact(&t)))
        }
        OpCmd::Linf { matrix } => {
            let t = io::parse_matrix_rational(&io::read_payload(matrix)?)?;
            t.require_square()?;
            Ok(rational_output(&opnorm_linf_exact(&t)))
        }
        OpCmd::Schur { matrix } => {
            let t = io::parse_matrix_rational(&io::read_payload(matrix)?)?;
            t.require_square()?;
            Ok(bool_output(schur_certificate(&t)))
        }
        OpCmd::Estimate {
            matrix,
            p,
            trials,
            seed,
        } => {
            let t = io::parse_matrix_rational(&io::read_payload(matrix)?)?;
            let value = opnorm_estimate(&t, &io::parse_exponent(p)?, *trials, *seed)?;
            Ok(f64_output(value, digits))
        }
        OpCmd::Eigen { matrix, tol } => {
            let a = io::parse_matrix_f64(&io::read_payload(matrix)?)?;
            let decomp = symmetric_eigen(&a, *tol)?;
            let human = format!(
                "eigenvalues={} residual={}",
                io::format_f64_vec(&decomp.eigenvalues, digits),
                io::format_f64(decomp.residual, 3)
            );
            Ok(Output::new(
                human,
                json!({ "eigenvalues": decomp.eigenvalues, "residual": decomp.residual }),
            ))
        }
        OpCmd::Schatten { matrix, p, tol } => {
            let a = io::parse_matrix_f64(&io::read_payload(matrix)?)?;
            let value = schatten_norm(&a, &io::parse_exponent(p)?, *tol)?;
            Ok(f64_output(value, digits))
        }
        OpCmd::BasisQuadratic {
            matrix,
            basis,
            p,
            tol,
        } => {
            let a = io::parse_matrix_f64(&io::read_payload(matrix)?)?;
            // Basis rows are the vectors; the library wants column vectors.
            let w = io::parse_matrix_f64(&io::read_payload(basis)?)?.transpose();
            let value = basis_quadratic_lp(&a, &w, &io::parse_exponent(p)?, *tol)?;
            Ok(f64_output(value, digits))
        }
        OpCmd::Minpoly { matrix } => {
            let t = io::parse_matrix_rational(&io::read_payload(matrix)?)?;
            let mp = minimal_poly(&t)?;
            let human = format!(
                "coeffs={} degree={}",
                format_rational_vec(&mp.coeffs),
                mp.degree()
            );
            Ok(Output::new(
                human,
                json!({ "coeffs": rational_vec_json(&mp.coeffs), "degree": mp.degree() }),
            ))
        }
        OpCmd::Inverse { matrix } => {
            let t = io::parse_matrix_rational(&io::read_payload(matrix)?)?;
            let inv = inverse_via_powers(&t)?;
            Ok(Output::new(
                format_matrix(&inv),
                json!({ "matrix": matrix_json(&inv) }),
            ))
        }
        OpCmd::Det { matrix } => {
            let t = io::parse_matrix_rational(&io::read_payload(matrix)?)?;
            Ok(rational_output(&det_exact(&t)?))
        }
        OpCmd::EigenvalueCheck { matrix, alpha } => {
            let t = io::parse_matrix_rational(&io::read_payload(matrix)?)?;
            Ok(bool_output(eigenvalue_check(&t, &io::parse_rational(alpha)?)?))
        }
        OpCmd::Unimodular { matrix } => {
            let t = io::parse_matrix_rational(&io::read_payload(matrix)?)?;
            Ok(bool_output(unimodular_check(&t)?))
        }
        OpCmd::Isometry { matrix, p } => {
            let t = io::parse_matrix_rational(&io::read_payload(matrix)?)?;
            Ok(bool_output(padic_isometry_check(&t, prime(*p)?)?))
        }
    }
}

fn lattice_cmd(cmd: &LatticeCmd, digits: usize) -> Result<Output> {
    match cmd {
        LatticeCmd::InZe { x, primes } => {
            let e = parse_primes(primes)?;
            Ok(bool_output(in_ze(&io::parse_rational(x)?, &e)))
        }
        LatticeCmd::Distance { x, y, primes } => {
            let e = parse_primes(primes)?;
            let x = io::parse_rational(x)?;
            let y = io::parse_rational(y)?;
            let d = place_distances(&x, &y, &e);
            let product = product_distance(&x, &y, &e);
            let human = format!(
                "archimedean={} padic={} max={} product={}",
                io::format_rational(&d.archimedean),
                format_rational_vec(&d.padic),
                io::format_rational(&d.max_exact()),
                io::format_f64(product, digits)
            );
            Ok(Output::new(
                human,
                json!({
                    "archimedean": io::format_rational(&d.archimedean),
                    "padic": rational_vec_json(&d.padic),
                    "max": io::format_rational(&d.max_exact()),
                    "product": product,
                }),
            ))
        }
        LatticeCmd::Gap { x, y, primes } => {
            let e = parse_primes(primes)?;
            let gap = discreteness_gap(
                &io::parse_rational(x)?,
                &io::parse_rational(y)?,
                &e,
            )?;
            Ok(rational_output(&gap))
        }
        LatticeCmd::Cover { y, w, primes } => {
            let e = parse_primes(primes)?;
            let cover = covering_point(&io::parse_rational(y)?, &io::parse_rational_vec(w)?, &e)?;
            let human = format!(
                "x={} real_distance={} padic_distances={}",
                io::format_rational(&cover.x),
                io::format_rational(&cover.real_distance),
                format_rational_vec(&cover.padic_distances)
            );
            Ok(Output::new(
                human,
                json!({
                    "x": io::format_rational(&cover.x),
                    "real_distance": io::format_rational(&cover.real_distance),
                    "padic_distances": rational_vec_json(&cover.padic_distances),
                }),
            ))
        }
        LatticeCmd::Pigeonhole { region } => {
            let u = io::parse_region(&io::read_payload(region)?)?;
            let pair = pigeonhole_pair(&u)?;
            let in_x = u.contains(&pair.x);
            let in_y = u.contains(&pair.y);
            let human = format!(
                "x={} y={} difference=({})\nverified: x in region: {}, y in region: {}, x-y nonzero integer: true",
                format_rational_vec(&pair.x),
                format_rational_vec(&pair.y),
                pair.difference
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                in_x,
                in_y
            );
            Ok(Output::new(
                human,
                json!({
                    "x": rational_vec_json(&pair.x),
                    "y": rational_vec_json(&pair.y),
                    "difference": pair.difference.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    "verified": in_x && in_y,
                }),
            ))
        }
        LatticeCmd::Minkowski { region, seed } => {
            let u = io::parse_region(&io::read_payload(region)?)?;
            let point = minkowski_point(&u, *seed)?;
            let coords: Vec<Rational> = point
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect();
            let inside = u.contains(&coords);
            let human = format!(
                "point=({})\nverified: nonzero integer point, in region: {}",
                point
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                inside
            );
            Ok(Output::new(
                human,
                json!({
                    "point": point.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    "verified": inside,
                }),
            ))
        }
    }
}

fn verify_cmd(suite: &str, seed: u64) -> Result<Output> {
    let reports = run_suite(suite, seed)?;
    let mut lines = Vec::new();
    if suite == "all" {
        let mut passed = 0;
        let mut total = 0;
        for r in &reports {
            lines.push(format!("{}: {}", r.suite, r.summary()));
            if let Some(ce) = &r.first_counterexample {
                lines.push(format!("  first counterexample: {ce}"));
            }
            passed += r.passed;
            total += r.total;
        }
        lines.push(format!("all: {passed}/{total} pass"));
    } else {
        for r in &reports {
            lines.push(r.summary());
            if let Some(ce) = &r.first_counterexample {
                lines.push(format!("  first counterexample: {ce}"));
            }
        }
    }
    let failed = reports.iter().any(|r| !r.all_passed());
    let json = json!({ "reports": serde_json::to_value(&reports).expect("reports serialize") });
    Ok(Output {
        human: lines.join("\n"),
        json,
        failed,
    })
}
