//! Exact-arithmetic toolkit for p-adic numbers, certified series, norm
//! duality, and desk-scale geometry of numbers.
//!
//! Everything is computed either exactly (arbitrary-precision rationals,
//! truncated p-adic digit expansions with tracked precision) or with an
//! explicit, proven error bound. Operations that cannot certify their
//! result say so instead of guessing.
//!
//! The crate is organized around six capabilities:
//!
//! * [`scalars`] — p-adic valuations and absolute values, truncated p-adic
//!   arithmetic with precision tracking, complex-modulus identities, and
//!   ultrametric utilities.
//! * [`series`] — Cauchy products, certified complex summation, p-adic
//!   summation against valuation certificates, complex and p-adic
//!   exponentials, and Laurent series in the ℓ¹ (Wiener) algebra.
//! * [`norms`] — ℓp norms and comparison constants, conjugate exponents,
//!   Hölder pairings, dual norms with extremal witnesses, and randomized
//!   seminorm-axiom falsification.
//! * [`operators`] — exact ℓ1/ℓ∞ operator norms, the Schur contraction
//!   certificate, cyclic-Jacobi eigendecomposition, Schatten norms,
//!   minimal polynomials with inverse-via-powers, and integer/p-adic
//!   matrix group membership tests.
//! * [`lattice`] — the diagonal embedding of Z[1/p] and Z_E with its
//!   discreteness gap and covering construction, plus pigeonhole and
//!   Minkowski lattice-point searches in convex symmetric regions.
//! * [`verify`] — seeded, deterministic property suites exercising the
//!   invariants of every module above.
//!
//! The best starting point is the `examples/` directory; each example is a
//! runnable walkthrough of one capability:
//!
//! ```text
//! cargo run --example padic_numbers
//! cargo run --example geometric_and_alternating
//! cargo run --example exponentials
//! cargo run --example cauchy_products
//! cargo run --example wiener_algebra
//! cargo run --example holder_duality
//! cargo run --example schur_contraction
//! cargo run --example schatten_bases
//! cargo run --example minimal_polynomial
//! cargo run --example diagonal_embedding
//! cargo run --example minkowski_search
//! ```
//!
//! A thin `ppri` binary exposes the same operations as subcommands (see
//! `ppri --help`), including a `verify` mode that runs the property suites
//! with a fixed seed.
//!
//! # Quick taste
//!
//! ```
//! use ppri::scalars::{Prime, PAdic};
//! use ppri::Rational;
//! use num_bigint::BigInt;
//!
//! let p = Prime::new(3).unwrap();
//! let x = Rational::new(BigInt::from(1), BigInt::from(4));
//! let a = PAdic::from_rational(&x, p, 4);
//! assert_eq!(a.to_string(), "p=3 v=0 digits=[1,2,0,2] (N=4)");
//! ```

pub mod error;
pub mod io;
pub mod lattice;
pub mod norms;
pub mod operators;
pub mod scalars;
pub mod series;
pub mod verify;

pub use error::{Error, Result};

/// The universal exact scalar: an arbitrary-precision reduced fraction.
pub type Rational = num_rational::BigRational;
