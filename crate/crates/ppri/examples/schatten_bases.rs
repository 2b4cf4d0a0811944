//! Schatten norms of symmetric matrices and the basis-optimization
//! inequality: over all orthonormal bases, the ℓp norm of the diagonal
//! quadratic-form values is maximized by the eigenbasis.
//!
//! Run with: cargo run --example schatten_bases

use ppri::norms::PExponent;
use ppri::operators::{basis_quadratic_lp, random_orthonormal, schatten_norm, symmetric_eigen, Matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let a = Matrix::from_rows(vec![vec![3.0, 0.0], vec![0.0, -4.0]]).unwrap();

    // Eigendecomposition by cyclic Jacobi rotations, residual-checked.
    let decomp = symmetric_eigen(&a, 1e-12).unwrap();
    println!(
        "eigenvalues = {:?}, residual = {:e}",
        decomp.eigenvalues, decomp.residual
    );
    assert_eq!(decomp.eigenvalues, vec![3.0, -4.0]);
    assert!(decomp.residual < 1e-12);

    // Schatten norms are ℓp norms of the spectrum: 7, 5, 4 for p = 1, 2, ∞.
    let s1 = schatten_norm(&a, &PExponent::one(), 1e-12).unwrap();
    let s2 = schatten_norm(&a, &PExponent::two(), 1e-12).unwrap();
    let sinf = schatten_norm(&a, &PExponent::Infinity, 1e-12).unwrap();
    println!("Schatten norms of diag(3,-4): S1 = {s1}, S2 = {s2}, Sinf = {sinf}");
    assert!((s1 - 7.0).abs() < 1e-12);
    assert!((s2 - 5.0).abs() < 1e-12);
    assert!((sinf - 4.0).abs() < 1e-12);

    // The eigenbasis attains the Schatten norm ...
    let p1 = PExponent::one();
    let attained = basis_quadratic_lp(&a, &decomp.basis, &p1, 1e-12).unwrap();
    println!("eigenbasis value = {attained}");
    assert!((attained - s1).abs() < 1e-12);

    // ... and no other orthonormal basis beats it. With the rotation by 45°
    // the diagonal values are both −1/2, summing to 1 ≪ 7.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let rotated = Matrix::from_rows(vec![vec![h, h], vec![-h, h]]).unwrap();
    let off_axis = basis_quadratic_lp(&a, &rotated, &p1, 1e-12).unwrap();
    println!("rotated-basis value = {off_axis}");
    assert!(off_axis <= s1 + 1e-12);

    // Random orthonormal bases, seeded: all stay below the Schatten value.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut best = f64::MIN;
    for _ in 0..500 {
        let w = random_orthonormal(2, &mut rng);
        let value = basis_quadratic_lp(&a, &w, &p1, 1e-12).unwrap();
        assert!(value <= s1 + 1e-9);
        best = best.max(value);
    }
    println!("best of 500 random bases = {best} (supremum is {s1})");

    // A non-symmetric input is refused with its asymmetry measured.
    let skew = Matrix::from_rows(vec![vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
    let err = symmetric_eigen(&skew, 1e-12).unwrap_err();
    println!("nilpotent input -> {err}");
}
