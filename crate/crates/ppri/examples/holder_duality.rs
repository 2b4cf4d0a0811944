//! ℓp norms on Qⁿ: Hölder's inequality with conjugate exponents, dual norms
//! with extremal witnesses, and randomized seminorm-axiom probes.
//!
//! Run with: cargo run --example holder_duality

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use ppri::norms::{
    comparison_constant, dual_norm, holder_pairing, lp_norm, norm_l1_exact, norm_linf_exact,
    seminorm_axioms_check, PExponent,
};
use ppri::Rational;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn vec_r(entries: &[i64]) -> Vec<Rational> {
    entries.iter().map(|&n| r(n, 1)).collect()
}

fn main() {
    let v = vec_r(&[3, 4]);
    let p2 = PExponent::two();

    // The 3-4-5 triangle: ‖(3,4)‖₂ = 5, ‖·‖₁ = 7, ‖·‖_∞ = 4.
    println!("l2 norm of (3,4)  = {}", lp_norm(&v, &p2));
    assert_eq!(lp_norm(&v, &p2), 5.0);
    assert_eq!(norm_l1_exact(&v), r(7, 1));
    assert_eq!(norm_linf_exact(&v), r(4, 1));

    // Conjugate exponents: (3/2)' = 3, 1' = ∞.
    let p32 = PExponent::new(r(3, 2)).unwrap();
    println!("conjugate of 3/2  = {}", p32.conjugate());
    assert_eq!(p32.conjugate(), PExponent::new(r(3, 1)).unwrap());
    assert_eq!(PExponent::one().conjugate(), PExponent::Infinity);

    // Hölder: |Σ a_j b_j| ≤ ‖a‖_p ‖b‖_q, with the Young term-wise check.
    let report = holder_pairing(&vec_r(&[1, -2]), &vec_r(&[3, 1]), &p2).unwrap();
    println!(
        "pairing = {}, bound = {}, young_ok = {}",
        report.pairing, report.bound, report.young_termwise_ok
    );
    assert!(report.pairing_abs().to_f64().unwrap() <= report.bound + 1e-12);
    assert!(report.young_termwise_ok);

    // Norm comparison on Qⁿ: ‖v‖_p ≤ n^{1/p−1/q} ‖v‖_q for p ≤ q.
    let c = comparison_constant(4, &PExponent::one(), &p2).unwrap();
    println!("c(n=4, 1 <- 2)    = {c}");
    assert_eq!(c, 2.0);

    // Dual norms with witnesses. For p = 1 the dual is ℓ∞ and the witness
    // is a signed coordinate vector: ‖(1,-2)‖_∞∗ = 2 at (0,-1).
    let d1 = dual_norm(&vec_r(&[1, -2]), &PExponent::one());
    println!("dual_1 of (1,-2)  = {} at {:?}", d1.value, d1.witness);
    assert_eq!(d1.value, 2.0);
    assert_eq!(d1.witness, vec![0.0, -1.0]);

    // For p = 2 the dual is ℓ2 and the witness is the normalized vector.
    let d2 = dual_norm(&v, &p2);
    println!("dual_2 of (3,4)   = {} at {:?}", d2.value, d2.witness);
    assert_eq!(d2.value, 5.0);
    assert!((d2.witness[0] - 0.6).abs() < 1e-12);

    // Axiom probes: ‖·‖₂ passes; its square fails homogeneity with an
    // explicit counterexample.
    let good = seminorm_axioms_check(|w| lp_norm(w, &PExponent::two()), 3, 200, 7);
    assert!(good.iter().all(|a| a.passed()));
    println!("l2 axioms: all pass");

    let bad = seminorm_axioms_check(
        |w| {
            let n = lp_norm(w, &PExponent::two());
            n * n
        },
        3,
        200,
        7,
    );
    let homogeneity = bad.iter().find(|a| a.axiom == "homogeneity").unwrap();
    println!(
        "l2^2 homogeneity: {}",
        homogeneity.counterexample.as_deref().unwrap_or("pass")
    );
    assert!(!homogeneity.passed());
}
