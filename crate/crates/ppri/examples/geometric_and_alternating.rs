//! Certified summation: geometric closed forms in R, C, and Q_p, and
//! alternating series with the Leibniz tail bound.
//!
//! Run with: cargo run --example geometric_and_alternating

use num_bigint::BigInt;
use num_complex::Complex64;
use ppri::series::{
    alternating_sum, geometric_sum_complex, geometric_sum_padic, geometric_sum_real, sum_complex,
    CoeffSeq,
};
use ppri::scalars::Prime;
use ppri::{Error, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    // Σ 2^{-j} = 2, exactly.
    let two = geometric_sum_real(&r(1, 2)).unwrap();
    println!("sum 2^-j          = {two}");
    assert_eq!(two, r(2, 1));

    // The same sum term-by-term, with a proven error bound.
    let halves = CoeffSeq::streamed(|j| Complex64::new(0.5f64.powi(j as i32), 0.0));
    let s = sum_complex(&halves, 1e-12, 1_000_000).unwrap();
    println!(
        "partial sums      = {} after {} terms (bound {:?})",
        s.value.re, s.terms_used, s.error_bound
    );
    assert!((s.value.re - 2.0).abs() < 1e-11);
    assert!(s.error_bound.certified());

    // In Q_5 the roles flip: |5|_5 < 1, so Σ 5^j converges to 1/(1−5) = −1/4.
    let p5 = Prime::new(5).unwrap();
    let padic = geometric_sum_padic(&r(5, 1), p5).unwrap();
    println!("sum 5^j in Q_5    = {padic}");
    assert_eq!(padic, r(-1, 4));
    // ... and the real-place sum of the same series is refused: |5| ≥ 1.
    assert!(matches!(
        geometric_sum_real(&r(5, 1)),
        Err(Error::DomainError(_))
    ));

    // Complex ratio inside the unit disk.
    let z = Complex64::new(0.3, 0.4);
    let closed = geometric_sum_complex(z).unwrap();
    println!("1/(1-(0.3+0.4i)) = {closed}");
    assert!((closed * (Complex64::new(1.0, 0.0) - z) - 1.0).norm() < 1e-15);

    // Alternating harmonic series: ln 2 with the first-omitted-term bound.
    let b = CoeffSeq::streamed(|j| 1.0 / (j as f64 + 1.0));
    let alt = alternating_sum(&b, 1e-4).unwrap();
    println!(
        "sum (-1)^j/(j+1)  = {:.6} ({} terms, Leibniz bound)",
        alt.value, alt.terms_used
    );
    assert!((alt.value - std::f64::consts::LN_2).abs() < 1e-4);

    // A non-monotone sequence is rejected with the offending index.
    let bad = CoeffSeq::finite(vec![1.0, 2.0, 0.5]);
    let err = alternating_sum(&bad, 1e-6).unwrap_err();
    println!("non-monotone b_j  -> {err}");
    assert!(matches!(err, Error::MonotonicityViolation { index: 1 }));

    // The harmonic series never certifies: the budget trips instead.
    let harmonic = CoeffSeq::streamed(|j| Complex64::new(1.0 / (j as f64 + 1.0), 0.0));
    let err = sum_complex(&harmonic, 1e-9, 1_000_000).unwrap_err();
    println!("sum 1/(j+1)       -> {err}");
    assert!(matches!(err, Error::NonConvergenceSuspected { .. }));
}
