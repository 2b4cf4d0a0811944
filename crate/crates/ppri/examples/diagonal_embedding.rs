//! The ring Z_E = Z[1/p : p ∈ E] embedded diagonally into R × Π Q_p:
//! membership, place-by-place distances, the discreteness gap, and
//! simultaneous approximation (covering).
//!
//! Run with: cargo run --example diagonal_embedding

use num_bigint::BigInt;
use ppri::lattice::{
    covering_point, discreteness_gap, in_ze, place_distances, product_distance, EmbeddedPoint,
    PrimeSet,
};
use ppri::{Error, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    let e = PrimeSet::new([2, 3]).unwrap();
    println!("E = {e}, so Z_E = Z[1/2, 1/3]");

    // 5/6 has only 2s and 3s in its denominator; 1/7 does not.
    assert!(in_ze(&r(5, 6), &e));
    assert!(!in_ze(&r(1, 7), &e));
    println!("5/6 in Z_E: true, 1/7 in Z_E: false");

    // The diagonal embedding keeps one coordinate per place.
    let x = EmbeddedPoint::new(r(5, 6), e.clone()).unwrap();
    let coords = x.coordinates();
    println!(
        "5/6 embeds at (|x|, |x|_2, |x|_3) = ({}, {}, {})",
        coords.archimedean, coords.padic[0], coords.padic[1]
    );

    // Distances are computed per place: |x−y| at the real place and
    // |x−y|_p at each prime of E.
    let d = place_distances(&r(5, 6), &r(1, 3), &e);
    println!(
        "d(5/6, 1/3): archimedean = {}, 2-adic = {}, 3-adic = {}",
        d.archimedean, d.padic[0], d.padic[1]
    );
    assert_eq!(d.archimedean, r(1, 2));
    assert_eq!(d.padic[0], r(2, 1)); // |1/2|_2 = 2
    assert_eq!(d.padic[1], r(1, 1));

    // Discreteness: distinct points of Z_E stay at max-place distance ≥ 1.
    // (|x−y| · Π|x−y|_p ≥ 1, so some factor is ≥ 1.)
    for (x, y) in [(r(0, 1), r(5, 6)), (r(1, 2), r(1, 3)), (r(7, 8), r(2, 9))] {
        let gap = discreteness_gap(&x, &y, &e).unwrap();
        println!("gap({x}, {y}) = {gap}");
        assert!(gap >= r(1, 1));
    }
    // The product-of-places distance shows why: it is always ≥ 1 here.
    assert!(product_distance(&r(0, 1), &r(5, 6), &e) >= 1.0 - 1e-12);

    // Points outside Z_E are rejected by the gap computation.
    let err = discreteness_gap(&r(1, 7), &r(0, 1), &e).unwrap_err();
    println!("gap(1/7, 0) -> {err}");
    assert!(matches!(err, Error::NotInZE(_)));

    // Covering: Z_E reaches any target configuration — close to y at the
    // real place, close to w_p in each Q_p. Here y = 0, targets 1/2 and 1/3.
    let cover = covering_point(&r(0, 1), &[r(1, 2), r(1, 3)], &e).unwrap();
    println!(
        "cover(y=0, w=(1/2, 1/3)): x = {}, |x−y| = {}, p-adic distances = {:?}",
        cover.x, cover.real_distance, cover.padic_distances
    );
    assert_eq!(cover.x, r(5, 6));
    assert!(cover.real_distance < r(2, 1));
    assert!(cover.padic_distances.iter().all(|d| *d <= r(1, 1)));
}
