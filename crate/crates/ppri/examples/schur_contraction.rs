//! The Schur test: row and column sums of |entries| ≤ 1 certify an
//! ℓp-contraction simultaneously for every exponent 1 ≤ p ≤ ∞.
//!
//! Run with: cargo run --example schur_contraction

use num_bigint::BigInt;
use ppri::norms::{lp_norm_f64, PExponent};
use ppri::operators::{
    opnorm_estimate, opnorm_l1_exact, opnorm_linf_exact, schur_certificate, Matrix,
};
use ppri::Rational;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    // The averaging operator passes the certificate.
    let avg = Matrix::from_rows(vec![
        vec![r(1, 2), r(1, 2)],
        vec![r(1, 2), r(1, 2)],
    ])
    .unwrap();
    println!("averaging matrix passes Schur: {}", schur_certificate(&avg));
    assert!(schur_certificate(&avg));

    // ... and indeed contracts across exponents on a fixed vector.
    let v = [3.0, -1.0];
    let tv = [0.5 * (v[0] + v[1]), 0.5 * (v[0] + v[1])];
    for p in [
        PExponent::one(),
        PExponent::new(r(3, 2)).unwrap(),
        PExponent::two(),
        PExponent::new(r(4, 1)).unwrap(),
        PExponent::Infinity,
    ] {
        let before = lp_norm_f64(&v, &p);
        let after = lp_norm_f64(&tv, &p);
        println!("p = {p}: {after:.6} <= {before:.6}");
        assert!(after <= before + 1e-12);
    }

    // A single entry of 2 already fails — a row sum exceeds 1.
    let stretch = Matrix::from_rows(vec![vec![r(2, 1), r(0, 1)], vec![r(0, 1), r(0, 1)]]).unwrap();
    println!("stretch matrix passes Schur: {}", schur_certificate(&stretch));
    assert!(!schur_certificate(&stretch));

    // Exact endpoint norms: ‖T‖₁ is the max column sum, ‖T‖_∞ the max row
    // sum. For [[1,2],[3,4]] these are 6 and 7.
    let t = Matrix::from_rows(vec![vec![r(1, 1), r(2, 1)], vec![r(3, 1), r(4, 1)]]).unwrap();
    let l1 = opnorm_l1_exact(&t);
    let linf = opnorm_linf_exact(&t);
    println!("[[1,2],[3,4]]: l1 norm = {l1}, linf norm = {linf}");
    assert_eq!(l1, r(6, 1));
    assert_eq!(linf, r(7, 1));

    // For intermediate p there is no closed form; a seeded sampler gives a
    // certified lower bound. diag(3, −4) has every ℓp norm equal to 4.
    let diag = Matrix::from_rows(vec![vec![r(3, 1), r(0, 1)], vec![r(0, 1), r(-4, 1)]]).unwrap();
    for p in [PExponent::new(r(3, 2)).unwrap(), PExponent::two()] {
        let est = opnorm_estimate(&diag, &p, 64, 7).unwrap();
        println!("diag(3,-4) sampled l{p} norm >= {est}");
        assert!((est - 4.0).abs() < 1e-9);
    }
}
