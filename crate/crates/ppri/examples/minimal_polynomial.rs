//! Exact linear algebra over Q: minimal polynomials, inverses through the
//! minimal polynomial, determinants, and unimodularity/isometry checks.
//!
//! Run with: cargo run --example minimal_polynomial

use num_bigint::BigInt;
use ppri::operators::{
    det_exact, eigenvalue_check, inverse_via_powers, minimal_poly, padic_isometry_check,
    poly_eval_matrix, unimodular_check, Matrix,
};
use ppri::scalars::Prime;
use ppri::{Error, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn m(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
    Matrix::from_rows(
        rows.into_iter()
            .map(|row| row.into_iter().map(|x| r(x, 1)).collect())
            .collect(),
    )
    .unwrap()
}

fn main() {
    // The swap matrix satisfies t² − 1 = 0, nothing smaller.
    let swap = m(vec![vec![0, 1], vec![1, 0]]);
    let mp = minimal_poly(&swap).unwrap();
    println!("minpoly(swap)      = {:?} (degree {})", mp.coeffs, mp.degree());
    assert_eq!(mp.coeffs, vec![r(-1, 1), r(0, 1), r(1, 1)]);

    // Substituting the matrix back in gives exactly zero.
    let evaluated = poly_eval_matrix(&mp.coeffs, &swap).unwrap();
    assert_eq!(evaluated, Matrix::zero(2, 2));
    println!("p(swap)            = 0 exactly");

    // A nilpotent block has minimal polynomial t² and no inverse.
    let nil = m(vec![vec![0, 1], vec![0, 0]]);
    assert_eq!(minimal_poly(&nil).unwrap().coeffs, vec![r(0, 1), r(0, 1), r(1, 1)]);
    let err = inverse_via_powers(&nil).unwrap_err();
    println!("inverse(nilpotent) -> {err}");
    assert!(matches!(err, Error::Singular));

    // When the constant term is nonzero the inverse falls out of the
    // minimal polynomial; for the swap it is the swap again.
    let inv = inverse_via_powers(&swap).unwrap();
    assert_eq!(inv, swap);
    println!("inverse(swap)      = swap");

    // Exact determinants by fraction-free elimination.
    let t = m(vec![vec![1, 2], vec![3, 4]]);
    println!("det [[1,2],[3,4]]  = {}", det_exact(&t).unwrap());
    assert_eq!(det_exact(&t).unwrap(), r(-2, 1));

    // α is an eigenvalue iff t − αI is singular; exact, no rounding.
    assert!(eigenvalue_check(&swap, &r(1, 1)).unwrap());
    assert!(eigenvalue_check(&swap, &r(-1, 1)).unwrap());
    assert!(!eigenvalue_check(&swap, &r(2, 1)).unwrap());
    println!("eigenvalues(swap)  = ±1 confirmed, 2 rejected");

    // Change-of-basis certificates: the swap is unimodular (integer, det ±1)
    // and hence a p-adic isometry for every p; diag(3,1) is a 2-adic
    // isometry but not unimodular.
    assert!(unimodular_check(&swap).unwrap());
    let diag31 = m(vec![vec![3, 0], vec![0, 1]]);
    let p2 = Prime::new(2).unwrap();
    println!(
        "diag(3,1): unimodular = {}, 2-adic isometry = {}",
        unimodular_check(&diag31).unwrap(),
        padic_isometry_check(&diag31, p2).unwrap()
    );
    assert!(!unimodular_check(&diag31).unwrap());
    assert!(padic_isometry_check(&diag31, p2).unwrap());
}
