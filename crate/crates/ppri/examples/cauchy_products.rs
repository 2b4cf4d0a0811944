//! Cauchy products: exact formal algebra over Q, Mertens' theorem over C,
//! and product-of-sums identities in Q_p.
//!
//! Run with: cargo run --example cauchy_products

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use ppri::series::{cauchy_product, geometric_sum_complex, sum_complex, sum_padic, CoeffSeq};
use ppri::scalars::Prime;
use ppri::Rational;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    // (Σ x^j) · (1 − x) telescopes: every product coefficient past the
    // constant term vanishes identically.
    let geometric = CoeffSeq::streamed(|_| Rational::one());
    let one_minus_x = CoeffSeq::finite(vec![r(1, 1), r(-1, 1)]);
    let telescoped = cauchy_product(&geometric, &one_minus_x, 12).unwrap();
    print!("(sum x^j)(1-x) =");
    for j in 0..=12 {
        print!(" {}", telescoped.term(j));
    }
    println!();
    assert_eq!(telescoped.term(0), r(1, 1));
    for j in 1..=12 {
        assert_eq!(telescoped.term(j), r(0, 1));
    }

    // Mertens: with absolute convergence, the Cauchy product sums to the
    // product of the sums. Two geometric series at 0.5 and 0.25i.
    let x = Complex64::new(0.5, 0.0);
    let y = Complex64::new(0.0, 0.25);
    let a = CoeffSeq::streamed(move |j| x.powu(j as u32));
    let b = CoeffSeq::streamed(move |j| y.powu(j as u32));
    let prod = cauchy_product(&a, &b, 256).unwrap();
    let lhs = sum_complex(&prod, 1e-12, 1_000_000).unwrap().value;
    let rhs = geometric_sum_complex(x).unwrap() * geometric_sum_complex(y).unwrap();
    println!("Mertens over C: |lhs - rhs| = {:e}", (lhs - rhs).norm());
    assert!((lhs - rhs).norm() < 1e-9);

    // The same identity in Q_3 with exact digits: a_j = 3^j, b_j = 2·3^j.
    let p3 = Prime::new(3).unwrap();
    let a = CoeffSeq::streamed(|j| Rational::from_integer(BigInt::from(3).pow(j as u32)));
    let b = CoeffSeq::streamed(|j| {
        Rational::from_integer(BigInt::from(2) * BigInt::from(3).pow(j as u32))
    });
    let prod = cauchy_product(&a, &b, 16).unwrap();
    let lhs = sum_padic(&prod, p3, 12, |j| j as i64).unwrap().value;
    let sa = sum_padic(&a, p3, 12, |j| j as i64).unwrap().value;
    let sb = sum_padic(&b, p3, 12, |j| j as i64).unwrap().value;
    let rhs = sa.try_mul(&sb).unwrap();
    println!("product of sums in Q_3: {lhs}");
    println!("sum of products in Q_3: {rhs}");
    // Same residue class mod 3^12: the representatives differ by a multiple.
    let diff = lhs.representative() - rhs.representative();
    let modulus = Rational::from_integer(BigInt::from(3).pow(12));
    assert!((diff / modulus).is_integer());
}
