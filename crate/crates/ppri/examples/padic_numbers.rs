//! Truncated p-adic expansions and exact ultrametric arithmetic.
//!
//! Run with: cargo run --example padic_numbers

use num_bigint::BigInt;
use ppri::scalars::{abs_p, ball_decomposition, vp, PAdic, Prime, Valuation};
use ppri::{Error, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    let p3 = Prime::new(3).unwrap();
    let p2 = Prime::new(2).unwrap();

    // 1/4 in Q_3: the inverse of 4 mod 81 is 61 = 1 + 2·3 + 0·9 + 2·27.
    let quarter = PAdic::from_rational(&r(1, 4), p3, 4);
    println!("1/4 in Q_3:  {quarter}");
    assert_eq!(quarter.digits(), &[1, 2, 0, 2]);

    // −1 in Q_2 is all-ones: −1 ≡ 15 mod 16.
    let minus_one = PAdic::from_rational(&r(-1, 1), p2, 4);
    println!("-1  in Q_2:  {minus_one}");
    assert_eq!(minus_one.digits(), &[1, 1, 1, 1]);

    // 6 = 2·3 has valuation 1 at p = 3.
    let six = PAdic::from_rational(&r(6, 1), p3, 3);
    println!("6   in Q_3:  {six}");
    assert_eq!(six.valuation(), Valuation::Finite(1));

    // Arithmetic: 1/4 + 3/4 = 1, digit-exact.
    let sum = quarter
        .try_add(&PAdic::from_rational(&r(3, 4), p3, 4))
        .unwrap();
    println!("1/4 + 3/4 =  {sum}");
    assert_eq!(sum.digits(), &[1, 0, 0, 0]);

    // Full cancellation is refused rather than faked: x − x has no certain
    // digit at finite precision.
    let err = quarter.try_sub(&quarter).unwrap_err();
    println!("1/4 - 1/4 =  {err}");
    assert!(matches!(err, Error::PrecisionExhausted));

    // The ultrametric inequality |x+y|_p ≤ max(|x|_p, |y|_p), exactly.
    let (x, y) = (r(7, 9), r(5, 3));
    let lhs = abs_p(&(&x + &y), p3);
    let rhs = abs_p(&x, p3).max(abs_p(&y, p3));
    println!("|7/9 + 5/3|_3 = {lhs} <= max = {rhs}");
    assert!(lhs <= rhs);

    // Valuations of factorial-free rationals: v_2(12) = 2, v_3(1/9) = −2.
    assert_eq!(vp(&r(12, 1), p2), Valuation::Finite(2));
    assert_eq!(vp(&r(1, 9), p3), Valuation::Finite(-2));

    // Z_3 splits into 9 disjoint balls of radius 3^{-2}.
    let balls = ball_decomposition(p3, 2).unwrap();
    println!("Z_3 = {} balls of radius 1/9", balls.len());
    assert_eq!(balls.len(), 9);
}
