//! Exponentials in C and in Q_p: certified complex exp, the p-adic
//! convergence domain |x|_p < p^{-1/(p-1)}, and E(x+y) = E(x)·E(y).
//!
//! Run with: cargo run --example exponentials

use num_bigint::BigInt;
use num_complex::Complex64;
use ppri::series::{exp_additivity_check, exp_complex, exp_padic, legendre_vp_factorial};
use ppri::scalars::Prime;
use ppri::{Error, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    // exp over C, summed with a certified tail.
    let e = exp_complex(Complex64::new(1.0, 0.0)).unwrap();
    println!("exp(1)      = {}", e.re);
    assert!((e.re - std::f64::consts::E).abs() < 1e-12);

    // exp(iπ) = −1.
    let ipi = exp_complex(Complex64::new(0.0, std::f64::consts::PI)).unwrap();
    println!("exp(i*pi)   = {ipi}");
    assert!((ipi + 1.0).norm() < 1e-12);

    // |exp(it)| = 1 on the imaginary axis.
    let it = exp_complex(Complex64::new(0.0, 2.4)).unwrap();
    println!("|exp(2.4i)| = {}", it.norm());
    assert!((it.norm() - 1.0).abs() < 1e-12);

    // Legendre's formula drives the p-adic convergence analysis:
    // v_2(4!) = 3 and v_5(100!) = 24.
    assert_eq!(legendre_vp_factorial(4, Prime::new(2).unwrap()), 3);
    assert_eq!(legendre_vp_factorial(100, Prime::new(5).unwrap()), 24);

    // E(3) in Q_3 to 3 digits: 1 + 3 + 9/2 + ... ≡ 13 mod 27.
    let p3 = Prime::new(3).unwrap();
    let e3 = exp_padic(&r(3, 1), p3, 3).unwrap();
    println!("E(3) in Q_3 = {e3}");
    assert_eq!(e3.representative(), r(13, 1));

    // x = 1 sits outside the domain: |1|_3 = 1 ≥ 3^{-1/2}.
    let err = exp_padic(&r(1, 1), p3, 4).unwrap_err();
    println!("E(1) in Q_3 -> {err}");
    assert!(matches!(err, Error::DomainError(_)));

    // At p = 2 the domain needs v_2(x) ≥ 2: E(2) diverges, E(4) converges.
    let p2 = Prime::new(2).unwrap();
    assert!(exp_padic(&r(2, 1), p2, 4).is_err());
    assert!(exp_padic(&r(4, 1), p2, 4).is_ok());

    // The functional equation, verified digit-exactly at precision 12.
    for (x, y) in [(r(3, 1), r(6, 1)), (r(9, 1), r(3, 1)), (r(3, 1), r(-3, 1))] {
        let ok = exp_additivity_check(&x, &y, p3, 12).unwrap();
        println!("E({x}+{y}) = E({x})E({y}) mod 3^12: {ok}");
        assert!(ok);
    }
}
