//! Summable Laurent sequences under convolution: exact products, tail-bound
//! propagation, and evaluation on the unit circle.
//!
//! Run with: cargo run --example wiener_algebra

use num_bigint::BigInt;
use num_complex::Complex64;
use ppri::series::{laurent_eval, laurent_product, LaurentSeq};
use ppri::{Error, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    // Convolution of deltas adds their offsets: δ_1 ∗ δ_{-1} = δ_0.
    let shift_up = LaurentSeq::delta(1);
    let shift_down = LaurentSeq::delta(-1);
    let unit = laurent_product(&shift_up, &shift_down);
    println!("delta_1 * delta_-1 has coeff {} at 0", unit.coeff(0));
    assert_eq!(unit.coeff(0), r(1, 1));

    // cos-like symbol: a = (z + 1/z)/2 squares to (z² + 2 + 1/z²)/4.
    let cos_symbol = LaurentSeq::from_support([(-1, r(1, 2)), (1, r(1, 2))]);
    let sq = laurent_product(&cos_symbol, &cos_symbol);
    println!(
        "((z+1/z)/2)^2: coeffs at -2,0,2 = {}, {}, {}",
        sq.coeff(-2),
        sq.coeff(0),
        sq.coeff(2)
    );
    assert_eq!(sq.coeff(0), r(1, 2));
    assert_eq!(sq.coeff(2), r(1, 4));

    // Tail bounds compose: ‖a‖t_b + ‖b‖t_a + t_a·t_b.
    let a = LaurentSeq::with_tail_bound([(0, r(1, 1))], r(1, 10)).unwrap();
    let b = LaurentSeq::with_tail_bound([(1, r(1, 1))], r(1, 10)).unwrap();
    let ab = laurent_product(&a, &b);
    println!("tail bound of the product = {}", ab.tail_bound().unwrap());
    assert_eq!(ab.tail_bound(), Some(&r(21, 100)));

    // On the unit circle the symbol evaluates like a Fourier series:
    // at z = i, (z + 1/z)/2 = 0; at z = 1 it is 1.
    let at_i = laurent_eval(&cos_symbol, Complex64::new(0.0, 1.0)).unwrap();
    let at_1 = laurent_eval(&cos_symbol, Complex64::new(1.0, 0.0)).unwrap();
    println!("symbol at i = {at_i}, at 1 = {at_1}");
    assert!(at_i.norm() < 1e-15);
    assert!((at_1 - 1.0).norm() < 1e-15);

    // Finite support evaluates anywhere except 0 ...
    let off = laurent_eval(&cos_symbol, Complex64::new(2.0, 0.0)).unwrap();
    assert!((off - 1.25).norm() < 1e-15);
    let err = laurent_eval(&cos_symbol, Complex64::new(0.0, 0.0)).unwrap_err();
    println!("eval at 0 -> {err}");
    assert!(matches!(err, Error::ZeroArgument));

    // ... but an unresolved tail pins evaluation to |z| = 1, where the
    // tail bound actually controls the error.
    let err = laurent_eval(&a, Complex64::new(2.0, 0.0)).unwrap_err();
    println!("tail + |z| != 1 -> {err}");
    assert!(matches!(err, Error::OffCircleWithInfiniteSupport));

    // The l1 norm upper bound is support mass plus tail.
    println!("l1 upper bound of product = {}", ab.norm_l1_upper());
    assert_eq!(ab.norm_l1_upper(), r(1, 1) + r(21, 100));
}
