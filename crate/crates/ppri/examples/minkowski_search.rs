//! Geometry of numbers with certified volumes: the pigeonhole pair search
//! (volume > 1) and Minkowski's lattice-point theorem (volume > 2ⁿ).
//!
//! Run with: cargo run --example minkowski_search

use num_bigint::BigInt;
use num_traits::Zero;
use ppri::lattice::{minkowski_point, pigeonhole_pair, region_spot_check, ConvexRegion};
use ppri::operators::Matrix;
use ppri::{Error, Rational};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    // A box of half-widths 11/10: volume (11/5)² > 4 = 2², so Minkowski
    // guarantees a nonzero integer point.
    let b = ConvexRegion::box_region(&[r(11, 10), r(11, 10)]).unwrap();
    println!("box volume lower bound = {}", b.volume_lb());
    let point = minkowski_point(&b, 7).unwrap();
    println!("integer point in the box: {point:?}");
    assert!(point.iter().any(|c| !c.is_zero()));

    // An ellipsoid x'Ax < 1 with A = (25/36)·I: semi-axes 6/5, area
    // π(6/5)² ≈ 4.52 > 4. The volume bound is certified from below with
    // rational arithmetic (no floating point in the certificate).
    let a = Matrix::from_rows(vec![vec![r(25, 36), r(0, 1)], vec![r(0, 1), r(25, 36)]]).unwrap();
    let disk = ConvexRegion::ellipsoid(&a).unwrap();
    println!("disk volume lower bound = {}", disk.volume_lb());
    assert!(disk.volume_lb() > &r(4, 1));
    let point = minkowski_point(&disk, 7).unwrap();
    println!("integer point in the disk: {point:?}");
    // For this disk the only candidates are (±1, 0), (0, ±1): norm² = 1.
    let norm_sq: BigInt = point.iter().map(|c| c * c).sum();
    assert_eq!(norm_sq, BigInt::from(1));

    // Interval of half-width 3/2 in dimension 1: the search returns ±1.
    let seg = ConvexRegion::box_region(&[r(3, 2)]).unwrap();
    let p1 = minkowski_point(&seg, 7).unwrap();
    assert_eq!(p1[0].clone() * p1[0].clone(), BigInt::from(1));

    // Volume ≤ 2ⁿ is refused outright — the theorem does not apply.
    let small = ConvexRegion::box_region(&[r(1, 2), r(1, 2)]).unwrap();
    let err = minkowski_point(&small, 7).unwrap_err();
    println!("undersized box -> {err}");
    assert!(matches!(err, Error::DomainError(_)));

    // The pigeonhole search needs only volume > 1: a box of half-widths
    // 3/5 (volume 36/25) contains two points differing by a lattice vector.
    let u = ConvexRegion::box_region(&[r(3, 5), r(3, 5)]).unwrap();
    let pair = pigeonhole_pair(&u).unwrap();
    println!(
        "pigeonhole: x = {:?}, y = {:?}, x - y = {:?}",
        pair.x, pair.y, pair.difference
    );
    assert!(pair.difference.iter().any(|c| !c.is_zero()));
    assert!(u.contains(&pair.x) && u.contains(&pair.y));

    // Claimed symmetry and convexity are probed before any search: an
    // off-center box fails loudly.
    let shifted = ConvexRegion::from_oracle(
        1,
        std::sync::Arc::new(|x: &[Rational]| {
            Rational::zero() <= x[0] && x[0] <= Rational::new(BigInt::from(3), BigInt::from(1))
        }),
        vec![(r(-3, 1), r(3, 1))],
        r(3, 1),
    )
    .unwrap();
    let err = region_spot_check(&shifted, 7).unwrap_err();
    println!("asymmetric oracle -> {err}");
    assert!(matches!(err, Error::AsymmetricRegion(_)));
}
