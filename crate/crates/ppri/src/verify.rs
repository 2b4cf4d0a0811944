//! Randomized self-verification suites.
//!
//! Each suite draws its instances from a `ChaCha8Rng` seeded with the caller's
//! seed, so a fixed seed reproduces the exact same trials (and the exact same
//! report bytes) on every run.  A trial either passes or fails; the first
//! failing trial is kept as a printable counterexample.

use crate::error::{Error, Result};
use crate::lattice::{covering_point, discreteness_gap, minkowski_point, ConvexRegion, PrimeSet};
use crate::norms::{lp_norm_f64, PExponent};
use crate::operators::{
    basis_quadratic_lp, opnorm_l1_exact, opnorm_linf_exact, random_orthonormal, schatten_norm,
    schur_certificate, symmetric_eigen, Matrix,
};
use crate::scalars::{abs_p, Prime};
use crate::series::{cauchy_product, geometric_sum_complex, sum_padic, CoeffSeq};
use crate::Rational;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// The names accepted by [`run_suite`], in the order `all` executes them.
pub const SUITE_NAMES: [&str; 5] = [
    "ultrametric",
    "cauchy-product",
    "schur",
    "schatten",
    "lattice",
];

/// Outcome of one verification suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: u64,
    pub failed: u64,
    pub total: u64,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0 && self.passed == self.total
    }

    /// The one-line human rendering, e.g. `10000/10000 pass`.
    pub fn summary(&self) -> String {
        format!("{}/{} pass", self.passed, self.total)
    }
}

/// Tracks pass/fail counts and the first counterexample seen.
struct Tally {
    suite: &'static str,
    passed: u64,
    failed: u64,
    first_counterexample: Option<String>,
}

impl Tally {
    fn new(suite: &'static str) -> Self {
        Tally {
            suite,
            passed: 0,
            failed: 0,
            first_counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(describe());
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite.to_string(),
            passed: self.passed,
            failed: self.failed,
            total: self.passed + self.failed,
            first_counterexample: self.first_counterexample,
        }
    }
}

/// Run one named suite (or `all`) and return the reports in execution order.
pub fn run_suite(name: &str, seed: u64) -> Result<Vec<SuiteReport>> {
    match name {
        "ultrametric" => Ok(vec![ultrametric_suite(seed)]),
        "cauchy-product" => Ok(vec![cauchy_product_suite(seed)]),
        "schur" => Ok(vec![schur_suite(seed)]),
        "schatten" => Ok(vec![schatten_suite(seed)]),
        "lattice" => Ok(vec![lattice_suite(seed)]),
        "all" => Ok(vec![
            ultrametric_suite(seed),
            cauchy_product_suite(seed),
            schur_suite(seed),
            schatten_suite(seed),
            lattice_suite(seed),
        ]),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// A random rational with numerator in ±bound and denominator in 1..=bound.
fn rand_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let numer = rng.gen_range(-bound..=bound);
    let denom = rng.gen_range(1..=bound);
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// 10 000 random triples, cycling p through {2, 3, 5, 7}: the strong triangle
/// inequality for d(x,w) = |x − w|_p, exact multiplicativity of |·|_p, and the
/// equality case of the ultrametric when the two sides have different sizes.
fn ultrametric_suite(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new("ultrametric");
    for trial in 0..10_000u64 {
        let p = Prime::new(SMALL_PRIMES[(trial % 4) as usize]).unwrap();
        let x = rand_rational(&mut rng, 9999);
        let y = rand_rational(&mut rng, 9999);
        let w = rand_rational(&mut rng, 9999);

        let d_xw = abs_p(&(&x - &w), p);
        let d_xy = abs_p(&(&x - &y), p);
        let d_yw = abs_p(&(&y - &w), p);
        let max_legs = d_xy.clone().max(d_yw.clone());
        let triangle = d_xw <= max_legs;

        let prod_ok = abs_p(&(&x * &y), p) == abs_p(&x, p) * abs_p(&y, p);

        let equality = if d_xy != d_yw {
            d_xw == max_legs
        } else {
            true
        };

        tally.record(triangle && prod_ok && equality, || {
            format!(
                "p={} x={} y={} w={}: triangle={} multiplicative={} equality={}",
                p.get(),
                x,
                y,
                w,
                triangle,
                prod_ok,
                equality
            )
        });
    }
    tally.finish()
}

fn rand_finite_seq(rng: &mut ChaCha8Rng, max_len: usize, bound: i64) -> CoeffSeq<Rational> {
    let len = rng.gen_range(1..=max_len);
    CoeffSeq::finite((0..len).map(|_| rand_rational(rng, bound)).collect())
}

fn coeffs_equal(a: &CoeffSeq<Rational>, b: &CoeffSeq<Rational>, upto: usize) -> bool {
    (0..=upto).all(|j| a.term(j) == b.term(j))
}

/// Cauchy products: exact commutativity/associativity on random finite
/// rational sequences, absolutely convergent complex products against the
/// closed form, and p-adic product-of-sums identities to high precision.
fn cauchy_product_suite(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new("cauchy-product");

    // Phase 1: 200 algebraic-identity trials over exact rationals.
    for _ in 0..200 {
        let a = rand_finite_seq(&mut rng, 6, 9);
        let b = rand_finite_seq(&mut rng, 6, 9);
        let c = rand_finite_seq(&mut rng, 6, 9);
        let upto = 16;
        let ok = (|| -> Result<bool> {
            let ab = cauchy_product(&a, &b, upto)?;
            let ba = cauchy_product(&b, &a, upto)?;
            let ab_c = cauchy_product(&ab, &c, upto)?;
            let bc = cauchy_product(&b, &c, upto)?;
            let a_bc = cauchy_product(&a, &bc, upto)?;
            Ok(coeffs_equal(&ab, &ba, upto) && coeffs_equal(&ab_c, &a_bc, upto))
        })()
        .unwrap_or(false);
        tally.record(ok, || {
            format!("finite sequences a={:?} b={:?} c={:?}", a, b, c)
        });
    }

    // Phase 2: 100 complex geometric products; the Cauchy product of two
    // geometric series must converge to the product of the closed forms.
    for _ in 0..100 {
        let draw = |rng: &mut ChaCha8Rng| {
            let r = rng.gen_range(0.05..0.7);
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, theta)
        };
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let ok = (|| -> Result<bool> {
            let a = CoeffSeq::streamed(move |j| x.powu(j as u32));
            let b = CoeffSeq::streamed(move |j| y.powu(j as u32));
            let prod = cauchy_product(&a, &b, 140)?;
            let mut partial = Complex64::new(0.0, 0.0);
            for j in 0..=140 {
                partial += prod.term(j);
            }
            let closed = geometric_sum_complex(x)? * geometric_sum_complex(y)?;
            Ok((partial - closed).norm() <= 1e-9)
        })()
        .unwrap_or(false);
        tally.record(ok, || format!("x={} y={}", x, y));
    }

    // Phase 3: 100 p-adic trials: sum(a·b) = sum(a)·sum(b) as residues mod p^12
    // for a_j = c_a p^j, b_j = c_b p^j with small integer c's.
    for _ in 0..100 {
        let p = Prime::new(SMALL_PRIMES[rng.gen_range(0..3)]).unwrap();
        let ca = BigInt::from(rng.gen_range(1..=9i64));
        let cb = BigInt::from(rng.gen_range(1..=9i64));
        let pb = BigInt::from(p.get());
        let target = 12i64;
        let ok = (|| -> Result<bool> {
            let (pa, pb2, ca2, cb2) = (pb.clone(), pb.clone(), ca.clone(), cb.clone());
            let a = CoeffSeq::streamed(move |j| {
                Rational::from_integer(&ca2 * pa.pow(j as u32))
            });
            let b = CoeffSeq::streamed(move |j| {
                Rational::from_integer(&cb2 * pb2.pow(j as u32))
            });
            let prod = cauchy_product(&a, &b, 16)?;
            let lhs = sum_padic(&prod, p, target, |j| j as i64)?.value;
            let sa = sum_padic(&a, p, target, |j| j as i64)?.value;
            let sb = sum_padic(&b, p, target, |j| j as i64)?.value;
            let rhs = sa.try_mul(&sb)?;
            // Same residue class mod p^target.
            let diff = lhs.representative() - rhs.representative();
            Ok(match crate::scalars::vp(&diff, p) {
                crate::scalars::Valuation::Infinite => true,
                crate::scalars::Valuation::Finite(v) => v >= target,
            })
        })()
        .unwrap_or(false);
        tally.record(ok, || format!("p={} ca={} cb={}", p.get(), ca, cb));
    }

    tally.finish()
}

fn rand_matrix(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Matrix<Rational> {
    let data = (0..n * n).map(|_| rand_rational(rng, bound)).collect();
    Matrix::new(n, n, data).unwrap()
}

/// Scale a matrix so every row sum and column sum of |entries| is ≤ 1.
fn schur_scaled(t: &Matrix<Rational>) -> Matrix<Rational> {
    let bound = opnorm_l1_exact(t).max(opnorm_linf_exact(t));
    if bound <= Rational::one() {
        return t.clone();
    }
    t.map(|x| x / &bound)
}

/// Schur-test contractions for intermediate exponents, plus brute-force
/// confirmation of the exact ℓ1 and ℓ∞ operator norms on ball extreme points.
fn schur_suite(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new("schur");
    let exponents = [
        PExponent::new(Rational::new(BigInt::from(3), BigInt::from(2))).unwrap(),
        PExponent::two(),
        PExponent::new(Rational::from_integer(BigInt::from(3))).unwrap(),
        PExponent::new(Rational::from_integer(BigInt::from(4))).unwrap(),
    ];

    for _ in 0..1000 {
        let n = rng.gen_range(1..=5);
        let raw = rand_matrix(&mut rng, n, 9);
        let t = schur_scaled(&raw);

        let mut ok = schur_certificate(&t);
        let mut note = String::new();
        if !ok {
            note = "scaled matrix failed the Schur certificate".to_string();
        }

        // Contraction in every tested ℓp for a random vector.
        if ok {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let tv: Vec<f64> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| t.get(i, j).to_f64().unwrap_or(0.0) * v[j])
                        .sum()
                })
                .collect();
            for p in &exponents {
                let lhs = lp_norm_f64(&tv, p);
                let rhs = lp_norm_f64(&v, p);
                if lhs > rhs + 1e-10 {
                    ok = false;
                    note = format!("contraction failed at p={}: {} > {}", p, lhs, rhs);
                    break;
                }
            }
        }

        // Brute-force the exact norms on the unscaled matrix: the ℓ1 norm is
        // attained at a coordinate vector, the ℓ∞ norm at a sign pattern.
        if ok {
            let l1 = opnorm_l1_exact(&raw);
            let mut best1 = Rational::zero();
            for j in 0..n {
                let mut col = Rational::zero();
                for i in 0..n {
                    col += raw.get(i, j).abs();
                }
                best1 = best1.max(col);
            }
            let linf = opnorm_linf_exact(&raw);
            let mut bestinf = Rational::zero();
            for mask in 0..(1u32 << n) {
                let signs: Vec<Rational> = (0..n)
                    .map(|j| {
                        if mask >> j & 1 == 1 {
                            -Rational::one()
                        } else {
                            Rational::one()
                        }
                    })
                    .collect();
                let image = raw.apply(&signs).unwrap();
                for entry in image {
                    bestinf = bestinf.max(entry.abs());
                }
            }
            if l1 != best1 || linf != bestinf {
                ok = false;
                note = format!(
                    "exact norms disagree with brute force: l1 {} vs {}, linf {} vs {}",
                    l1, best1, linf, bestinf
                );
            }
        }

        tally.record(ok, || format!("n={} t={:?}: {}", n, raw, note));
    }
    tally.finish()
}

/// Spectral checks: Jacobi residuals, trace and Frobenius identities, the
/// basis-optimization inequality against random orthonormal systems, and its
/// equality case in the eigenbasis.
fn schatten_suite(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new("schatten");
    let exponents = [
        PExponent::one(),
        PExponent::two(),
        PExponent::new(Rational::from_integer(BigInt::from(3))).unwrap(),
        PExponent::Infinity,
    ];

    for trial in 0..100u64 {
        let n = rng.gen_range(2..=6);
        let mut sym = vec![0.0f64; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = rng.gen_range(-2.0..2.0);
                sym[i * n + j] = v;
                sym[j * n + i] = v;
            }
        }
        let a = Matrix::new(n, n, sym).unwrap();
        let p = &exponents[(trial % 4) as usize];

        let ok = (|| -> Result<bool> {
            let decomp = symmetric_eigen(&a, 1e-12)?;
            if decomp.residual > 1e-10 {
                return Ok(false);
            }
            // Trace and Frobenius identities against eigenvalues.
            let trace: f64 = (0..n).map(|i| a.get(i, i)).sum();
            let eig_sum: f64 = decomp.eigenvalues.iter().sum();
            if (trace - eig_sum).abs() > 1e-8 {
                return Ok(false);
            }
            let frob_sq: f64 = a.entries().iter().map(|x| x * x).sum();
            let eig_sq: f64 = decomp.eigenvalues.iter().map(|x| x * x).sum();
            if (frob_sq - eig_sq).abs() > 1e-8 {
                return Ok(false);
            }

            let schatten = schatten_norm(&a, p, 1e-12)?;
            // The eigenbasis attains the Schatten norm.
            let attained = basis_quadratic_lp(&a, &decomp.basis, p, 1e-12)?;
            if (attained - schatten).abs() > 1e-8 {
                return Ok(false);
            }
            // Random orthonormal systems never exceed it.
            for _ in 0..100 {
                let w = random_orthonormal(n, &mut rng);
                let value = basis_quadratic_lp(&a, &w, p, 1e-12)?;
                if value > schatten + 1e-8 {
                    return Ok(false);
                }
            }
            Ok(true)
        })()
        .unwrap_or(false);

        tally.record(ok, || format!("n={} p={} entries={:?}", n, p, a.entries()));
    }
    tally.finish()
}

fn rand_prime_set(rng: &mut ChaCha8Rng) -> PrimeSet {
    let count = rng.gen_range(1..=3);
    let mut picked: Vec<u64> = Vec::new();
    while picked.len() < count {
        let p = SMALL_PRIMES[rng.gen_range(0..4)];
        if !picked.contains(&p) {
            picked.push(p);
        }
    }
    PrimeSet::new(picked).unwrap()
}

/// A random element of Z_E for a prime set E: an integer plus fractions whose
/// denominators are powers of primes in E.
fn rand_ze_element(rng: &mut ChaCha8Rng, e: &PrimeSet) -> Rational {
    let mut x = Rational::from_integer(BigInt::from(rng.gen_range(-50..=50i64)));
    for p in e.primes() {
        let exp = rng.gen_range(0..=3u32);
        let den = BigInt::from(p.get()).pow(exp);
        let num = BigInt::from(rng.gen_range(0..=40i64));
        x += Rational::new(num, den);
    }
    x
}

/// Discreteness of the diagonal embedding, exact covering constructions, and
/// Minkowski lattice-point searches in symmetric convex bodies of volume > 2^n.
fn lattice_suite(seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::new("lattice");

    // Phase 1: 1000 discreteness gaps: distinct points of Z_E stay at
    // product-distance ≥ 1 in the diagonal embedding.
    for _ in 0..1000 {
        let e = rand_prime_set(&mut rng);
        let x = rand_ze_element(&mut rng, &e);
        let mut y = rand_ze_element(&mut rng, &e);
        while y == x {
            y = rand_ze_element(&mut rng, &e);
        }
        let ok = match discreteness_gap(&x, &y, &e) {
            Ok(gap) => gap >= Rational::one(),
            Err(_) => false,
        };
        tally.record(ok, || format!("E={} x={} y={}", e, x, y));
    }

    // Phase 2: 1000 covering instances: given targets at each place, produce
    // x ∈ Z_E that is simultaneously close everywhere.
    for _ in 0..1000 {
        let e = rand_prime_set(&mut rng);
        let y = rand_ze_element(&mut rng, &e);
        let w: Vec<Rational> = e
            .primes()
            .iter()
            .map(|_| rand_rational(&mut rng, 99))
            .collect();
        let n = e.len() as i64;
        let ok = match covering_point(&y, &w, &e) {
            Ok(cover) => {
                let real_ok = cover.real_distance < Rational::from_integer(BigInt::from(n));
                let padic_ok = cover
                    .padic_distances
                    .iter()
                    .all(|d| *d <= Rational::one());
                real_ok && padic_ok
            }
            Err(_) => false,
        };
        tally.record(ok, || format!("E={} y={} w={:?}", e, y, w));
    }

    // Phase 3: 200 Minkowski searches over boxes and sheared ellipsoids with
    // certified volume > 2^n; the returned lattice point must lie inside.
    for trial in 0..200u64 {
        let n = rng.gen_range(1..=4usize);
        let region: Result<ConvexRegion> = if trial % 2 == 0 {
            // Box with half-widths in (1, 2): volume ≥ 2^n (1 + 1/64)^n.
            let halfwidths: Vec<Rational> = (0..n)
                .map(|_| {
                    Rational::one()
                        + Rational::new(BigInt::from(rng.gen_range(1..=64i64)), BigInt::from(64))
                })
                .collect();
            ConvexRegion::box_region(&halfwidths)
        } else {
            // Ellipsoid with semi-axes in [3/2, 2): x' D x ≤ 1 sheared by a
            // unit-determinant integer map, so the certified volume stays > 2^n.
            let radii: Vec<Rational> = (0..n)
                .map(|_| {
                    Rational::new(BigInt::from(3), BigInt::from(2))
                        + Rational::new(BigInt::from(rng.gen_range(0..32i64)), BigInt::from(64))
                })
                .collect();
            let mut a = Matrix::zero(n, n);
            for (i, r) in radii.iter().enumerate() {
                a.set(i, i, Rational::one() / (r * r));
            }
            if n >= 2 {
                let shear = rng.gen_range(-2..=2i64);
                let mut u = Matrix::<Rational>::identity(n);
                u.set(0, 1, Rational::from_integer(BigInt::from(shear)));
                a = u.transpose().mul(&a).unwrap().mul(&u).unwrap();
            }
            ConvexRegion::ellipsoid(&a)
        };

        let ok = (|| -> Result<bool> {
            let region = region?;
            let threshold = Rational::from_integer(BigInt::one() << n)
                * Rational::new(BigInt::from(1001), BigInt::from(1000));
            if region.volume_lb() <= &threshold {
                return Ok(false);
            }
            let point = minkowski_point(&region, seed ^ trial)?;
            if point.iter().all(|c| c.is_zero()) {
                return Ok(false);
            }
            let coords: Vec<Rational> = point.iter().map(|c| Rational::from_integer(c.clone())).collect();
            Ok(region.contains(&coords))
        })()
        .unwrap_or(false);
        tally.record(ok, || format!("trial {}: n={}", trial, n));
    }

    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        let err = run_suite("bogus", 7).unwrap_err();
        assert!(matches!(err, Error::UnknownSuite(_)));
        assert_eq!(err.to_string(), "UnknownSuite: bogus");
    }

    #[test]
    fn ultrametric_suite_all_pass() {
        let reports = run_suite("ultrametric", 7).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].summary(), "10000/10000 pass");
        assert!(reports[0].all_passed());
    }

    #[test]
    fn cauchy_suite_all_pass() {
        let reports = run_suite("cauchy-product", 7).unwrap();
        assert!(reports[0].all_passed(), "{:?}", reports[0].first_counterexample);
        assert_eq!(reports[0].total, 400);
    }

    #[test]
    fn schur_suite_all_pass() {
        let reports = run_suite("schur", 7).unwrap();
        assert!(reports[0].all_passed(), "{:?}", reports[0].first_counterexample);
        assert_eq!(reports[0].total, 1000);
    }

    #[test]
    fn schatten_suite_all_pass() {
        let reports = run_suite("schatten", 11).unwrap();
        assert!(reports[0].all_passed(), "{:?}", reports[0].first_counterexample);
        assert_eq!(reports[0].total, 100);
    }

    #[test]
    fn lattice_suite_all_pass() {
        let reports = run_suite("lattice", 7).unwrap();
        assert!(reports[0].all_passed(), "{:?}", reports[0].first_counterexample);
        assert_eq!(reports[0].total, 2200);
    }

    #[test]
    fn same_seed_reproduces_report_bytes() {
        let a = run_suite("schur", 42).unwrap();
        let b = run_suite("schur", 42).unwrap();
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
    }
}
