//! The diagonal embedding of Z_E = Z[1/p₁, …, 1/pₙ] into the product of
//! the real place and the p-adic places, with its exact discreteness and
//! covering constructions, plus desk-scale geometry-of-numbers searches:
//! the pigeonhole pair finder (volume > 1) and the Minkowski nonzero
//! integer point (volume > 2ⁿ).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::operators::{det_exact, inverse_via_powers, Matrix};
use crate::scalars::{self, big_pow, mod_inverse, Prime, Valuation};
use crate::Rational;

const MAX_PRIMES: usize = 8;
const SEARCH_CELL_BUDGET: u128 = 1 << 24;
const SPOT_CHECK_POINTS: usize = 256;

/// A sorted set of distinct primes p₁ < … < pₙ, 1 ≤ n ≤ 8.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSet {
    primes: Vec<Prime>,
}

impl PrimeSet {
    pub fn new(primes: impl IntoIterator<Item = u64>) -> Result<PrimeSet> {
        let mut primes: Vec<Prime> = primes
            .into_iter()
            .map(Prime::new)
            .collect::<Result<_>>()?;
        primes.sort_by_key(|p| p.get());
        if primes.is_empty() {
            return Err(Error::DomainError(
                "a prime set needs at least one prime".into(),
            ));
        }
        if primes.len() > MAX_PRIMES {
            return Err(Error::DomainError(format!(
                "prime sets are capped at {MAX_PRIMES} primes, got {}",
                primes.len()
            )));
        }
        if primes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DomainError(
                "a prime set must not repeat a prime".into(),
            ));
        }
        Ok(PrimeSet { primes })
    }

    pub fn primes(&self) -> &[Prime] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one prime
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Is x in Z_E — that is, does its reduced denominator factor completely
/// over the primes of E?
pub fn in_ze(x: &Rational, e: &PrimeSet) -> bool {
    let mut d = x.denom().abs();
    for p in e.primes() {
        let pb = p.to_bigint();
        while (&d % &pb).is_zero() {
            d /= &pb;
        }
    }
    d.is_one()
}

/// The distances between x and y at every place of the embedding: the
/// archimedean |x−y| and each |x−y|_{p_i}, all as exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaceDistances {
    pub archimedean: Rational,
    pub padic: Vec<Rational>,
}

impl PlaceDistances {
    /// The product-space (sup) distance, exact.
    pub fn max_exact(&self) -> Rational {
        let mut m = self.archimedean.clone();
        for d in &self.padic {
            if d > &m {
                m = d.clone();
            }
        }
        m
    }
}

pub fn place_distances(x: &Rational, y: &Rational, e: &PrimeSet) -> PlaceDistances {
    let diff = x - y;
    PlaceDistances {
        archimedean: diff.abs(),
        padic: e
            .primes()
            .iter()
            .map(|&p| scalars::abs_p(&diff, p))
            .collect(),
    }
}

/// The distance between x and y in the product of the real and p-adic
/// places: max(|x−y|, |x−y|_{p_1}, …). Reported in double precision;
/// use [`discreteness_gap`] for the exact value on Z_E points.
pub fn product_distance(x: &Rational, y: &Rational, e: &PrimeSet) -> f64 {
    place_distances(x, y, e)
        .max_exact()
        .to_f64()
        .unwrap_or(f64::INFINITY)
}

/// The exact product-place distance between two Z_E points.
///
/// For distinct points this is always ≥ 1 — making the diagonal copy of
/// Z_E a discrete set — because a rational with every |·|_{p_i} ≤ 1 has
/// an E-free denominator of 1... more precisely, a nonzero difference
/// with all p-adic absolute values < 1 at the places of E would be a
/// nonzero integer multiple of Π p_i, forcing |x−y| ≥ 1 at the real
/// place. The implementation asserts the bound.
pub fn discreteness_gap(x: &Rational, y: &Rational, e: &PrimeSet) -> Result<Rational> {
    for (label, v) in [("x", x), ("y", y)] {
        if !in_ze(v, e) {
            return Err(Error::NotInZE(format!("{label} = {v} is not in Z_{e}")));
        }
    }
    let gap = place_distances(x, y, e).max_exact();
    assert!(
        x == y || gap >= Rational::one(),
        "discreteness theorem violated: gap {gap} < 1 for x = {x}, y = {y}, E = {e}"
    );
    Ok(gap)
}

/// A Z_E element viewed diagonally: one rational value, measured
/// simultaneously at the real place and at each p-adic place of E.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedPoint {
    value: Rational,
    places: PrimeSet,
}

impl EmbeddedPoint {
    pub fn new(value: Rational, places: PrimeSet) -> Result<EmbeddedPoint> {
        if !in_ze(&value, &places) {
            return Err(Error::NotInZE(format!(
                "{value} is not in Z_{places}"
            )));
        }
        Ok(EmbeddedPoint { value, places })
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn places(&self) -> &PrimeSet {
        &self.places
    }

    /// The coordinates (|x|, |x|_{p_1}, …, |x|_{p_n}) of the embedded
    /// point's distance from the origin, exactly.
    pub fn coordinates(&self) -> PlaceDistances {
        place_distances(&self.value, &Rational::zero(), &self.places)
    }

    pub fn distance_to(&self, other: &EmbeddedPoint) -> Result<Rational> {
        if self.places != other.places {
            return Err(Error::KindMismatch(format!(
                "embedded points live over different prime sets {} and {}",
                self.places, other.places
            )));
        }
        discreteness_gap(&self.value, &other.value, &self.places)
    }
}

/// The outcome of the covering construction: a Z_E point close to y in
/// the real place and close to each w_i at the corresponding p-adic
/// place, with the achieved distances recorded exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringPoint {
    pub x: Rational,
    /// |x − y|, exact; always < n.
    pub real_distance: Rational,
    /// |x − w_i|_{p_i}, exact; always ≤ 1.
    pub padic_distances: Vec<Rational>,
}

/// Decompose d into a + b with a having |a|_p ≤ 1 and b ∈ Z[1/p] ∩ [0,1):
/// returns b. Writing d = u/(p^e·b') reduced, b = c/p^e where
/// c ≡ u·(b')⁻¹ (mod p^e) is taken in [0, p^e).
fn padic_fractional_part(d: &Rational, p: Prime) -> Rational {
    let v = match scalars::vp(d, p) {
        Valuation::Infinite => return Rational::zero(),
        Valuation::Finite(v) => v,
    };
    if v >= 0 {
        return Rational::zero();
    }
    let e = (-v) as usize;
    let pe = big_pow(&p.to_bigint(), e);
    let bprime = d.denom() / &pe; // coprime to p and invertible mod p^e
    let c = (d.numer() * mod_inverse(&bprime, &pe)).mod_floor(&pe);
    Rational::new(c, pe)
}

/// Simultaneous approximation: given y ∈ Z_E and rational targets w_i (one
/// per prime of E), produce x ∈ Z_E with |x − y| < n at the real place and
/// |x − w_i|_{p_i} ≤ 1 at each p-adic place. The construction takes
/// x = y + Σ b_i with b_i ∈ Z[1/p_i] ∩ [0, 1) matching the p_i-adic
/// fractional part of w_i − y; all bounds are re-verified exactly.
pub fn covering_point(y: &Rational, w: &[Rational], e: &PrimeSet) -> Result<CoveringPoint> {
    if !in_ze(y, e) {
        return Err(Error::NotInZE(format!("y = {y} is not in Z_{e}")));
    }
    if w.len() != e.len() {
        return Err(Error::LengthMismatch {
            expected: e.len(),
            got: w.len(),
        });
    }
    let mut x = y.clone();
    for (wi, &p) in w.iter().zip(e.primes()) {
        x += padic_fractional_part(&(wi - y), p);
    }
    let real_distance = (&x - y).abs();
    assert!(
        real_distance < Rational::from_integer(BigInt::from(e.len() as i64)),
        "covering construction exceeded its real-place bound"
    );
    let padic_distances: Vec<Rational> = w
        .iter()
        .zip(e.primes())
        .map(|(wi, &p)| scalars::abs_p(&(&x - wi), p))
        .collect();
    assert!(
        padic_distances.iter().all(|d| *d <= Rational::one()),
        "covering construction exceeded a p-adic bound"
    );
    Ok(CoveringPoint {
        x,
        real_distance,
        padic_distances,
    })
}

/// A bounded region of Qⁿ given by a pure membership oracle, a bounding
/// box, and a caller-certified rational lower bound on its volume.
///
/// The oracle must be pure: the searches sample it repeatedly and may do
/// so from multiple threads. Symmetry and convexity are the caller's
/// claim; [`region_spot_check`] probes both probabilistically.
#[derive(Clone)]
pub struct ConvexRegion {
    dim: usize,
    membership: Arc<dyn Fn(&[Rational]) -> bool + Send + Sync>,
    bounding_box: Vec<(Rational, Rational)>,
    volume_lb: Rational,
}

impl fmt::Debug for ConvexRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConvexRegion")
            .field("dim", &self.dim)
            .field("bounding_box", &self.bounding_box)
            .field("volume_lb", &self.volume_lb)
            .finish_non_exhaustive()
    }
}

/// π exceeds 333/106 (a continued-fraction convergent from below), which
/// is enough slack for certified volume lower bounds at desk scale.
fn pi_lower() -> Rational {
    Rational::new(BigInt::from(333), BigInt::from(106))
}

/// A rational upper bound on √r, from a float seed corrected upward and
/// polished by Newton steps (which preserve the upper-bound property).
fn sqrt_upper(r: &Rational) -> Rational {
    assert!(!r.is_negative(), "square roots of negatives are not real");
    if r.is_zero() {
        return Rational::zero();
    }
    let seed = (r.to_f64().unwrap_or(1.0).sqrt() * 1.125).max(f64::MIN_POSITIVE);
    let mut s = Rational::from_float(seed).unwrap_or_else(Rational::one);
    if !s.is_positive() {
        s = Rational::one();
    }
    while &s * &s < *r {
        s *= Rational::from_integer(BigInt::from(2));
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    for _ in 0..4 {
        s = (&s + r / &s) * &half;
    }
    // Newton squares the digit count each step; round the bound up onto
    // the 2⁻²⁴ grid so downstream exact arithmetic stays on small words.
    let scale = Rational::from_integer(BigInt::one() << 24);
    s = Rational::new((s * &scale).ceil().to_integer(), BigInt::one() << 24);
    debug_assert!(&s * &s >= *r);
    s
}

impl ConvexRegion {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn volume_lb(&self) -> &Rational {
        &self.volume_lb
    }

    pub fn bounding_box(&self) -> &[(Rational, Rational)] {
        &self.bounding_box
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        assert_eq!(point.len(), self.dim, "point dimension mismatch");
        (self.membership)(point)
    }

    /// The open box |x_i| < h_i. Its volume Π 2h_i is exact, so the
    /// stored lower bound is the volume itself.
    pub fn box_region(halfwidths: &[Rational]) -> Result<ConvexRegion> {
        let dim = halfwidths.len();
        if dim == 0 || dim > MAX_PRIMES {
            return Err(Error::DomainError(format!(
                "box regions are supported for 1 ≤ n ≤ {MAX_PRIMES}, got {dim}"
            )));
        }
        if halfwidths.iter().any(|h| !h.is_positive()) {
            return Err(Error::DomainError(
                "box halfwidths must be positive".into(),
            ));
        }
        let two = Rational::from_integer(BigInt::from(2));
        let volume = halfwidths
            .iter()
            .fold(Rational::one(), |acc, h| acc * h * &two);
        let hs: Vec<Rational> = halfwidths.to_vec();
        let bounding_box = hs.iter().map(|h| (-h.clone(), h.clone())).collect();
        Ok(ConvexRegion {
            dim,
            membership: Arc::new(move |x: &[Rational]| {
                x.iter().zip(&hs).all(|(xi, h)| xi.abs() < *h)
            }),
            bounding_box,
            volume_lb: volume,
        })
    }

    /// The open ellipsoid xᵀAx < 1 for a symmetric positive-definite
    /// rational matrix A (n ≤ 4). Positive definiteness is decided
    /// exactly through leading principal minors; the volume lower bound
    /// V_n/√(det A) is certified with rational π and √ bounds.
    pub fn ellipsoid(a: &Matrix<Rational>) -> Result<ConvexRegion> {
        let n = a.require_square()?;
        if n == 0 || n > 4 {
            return Err(Error::DomainError(format!(
                "ellipsoid regions are supported for 1 ≤ n ≤ 4, got {n}"
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if a.get(i, j) != a.get(j, i) {
                    return Err(Error::DomainError(
                        "an ellipsoid matrix must be symmetric".into(),
                    ));
                }
            }
        }
        for k in 1..=n {
            let minor = Matrix::from_rows(
                (0..k)
                    .map(|i| (0..k).map(|j| a.get(i, j).clone()).collect())
                    .collect(),
            )?;
            if !det_exact(&minor)?.is_positive() {
                return Err(Error::NonConvexRegion(
                    "the quadratic form is not positive definite".into(),
                ));
            }
        }
        let det = det_exact(a)?;
        let pi = pi_lower();
        // V_1 = 2, V_2 = π, V_3 = 4π/3, V_4 = π²/2 — from below.
        let vn_lower = match n {
            1 => Rational::from_integer(BigInt::from(2)),
            2 => pi.clone(),
            3 => pi * Rational::new(BigInt::from(4), BigInt::from(3)),
            _ => &pi * &pi / Rational::from_integer(BigInt::from(2)),
        };
        let volume_lb = vn_lower / sqrt_upper(&det);
        // The extreme of x_i over the ellipsoid is √((A⁻¹)_ii). The box only
        // needs to contain the region, so round outward onto a coarse grid:
        // this keeps every later sample point's denominator small.
        let inv = inverse_via_powers(a)?;
        let grid = BigInt::from(256);
        let bounding_box = (0..n)
            .map(|i| {
                let h = sqrt_upper(inv.get(i, i));
                let h = Rational::new((h * &grid).ceil().to_integer(), grid.clone());
                (-h.clone(), h)
            })
            .collect();
        let aa = a.clone();
        Ok(ConvexRegion {
            dim: n,
            membership: Arc::new(move |x: &[Rational]| {
                let ax = aa.apply(&x.to_vec()).expect("dimension checked");
                let form = x
                    .iter()
                    .zip(&ax)
                    .fold(Rational::zero(), |acc, (xi, axi)| acc + xi * axi);
                form < Rational::one()
            }),
            bounding_box,
            volume_lb,
        })
    }

    /// Wrap a caller-supplied oracle. The volume lower bound and the
    /// bounding box are trusted as stated.
    pub fn from_oracle(
        dim: usize,
        membership: Arc<dyn Fn(&[Rational]) -> bool + Send + Sync>,
        bounding_box: Vec<(Rational, Rational)>,
        volume_lb: Rational,
    ) -> Result<ConvexRegion> {
        if dim == 0 || dim > MAX_PRIMES {
            return Err(Error::DomainError(format!(
                "regions are supported for 1 ≤ n ≤ {MAX_PRIMES}, got {dim}"
            )));
        }
        if bounding_box.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                got: bounding_box.len(),
            });
        }
        if bounding_box.iter().any(|(lo, hi)| lo >= hi) {
            return Err(Error::DomainError(
                "bounding box intervals must be nonempty".into(),
            ));
        }
        Ok(ConvexRegion {
            dim,
            membership,
            bounding_box,
            volume_lb,
        })
    }
}

/// Probabilistic validation of a region's symmetry (x ∈ U ⇒ −x ∈ U) and
/// convexity (midpoints of members are members) on seeded random points
/// from the bounding box. A pass is evidence; a failure is a proof and
/// names the offending point(s).
pub fn region_spot_check(u: &ConvexRegion, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members: Vec<Vec<Rational>> = Vec::new();
    let denom = BigInt::from(256);
    for _ in 0..SPOT_CHECK_POINTS {
        let point: Vec<Rational> = u
            .bounding_box
            .iter()
            .map(|(lo, hi)| {
                let t = Rational::new(BigInt::from(rng.gen_range(0u32..=256)), denom.clone());
                lo + (hi - lo) * t
            })
            .collect();
        if !u.contains(&point) {
            continue;
        }
        let neg: Vec<Rational> = point.iter().map(|x| -x.clone()).collect();
        if !u.contains(&neg) {
            return Err(Error::AsymmetricRegion(format!(
                "contains {} but not its negation",
                format_rational_point(&point)
            )));
        }
        if let Some(prev) = members.last() {
            let half = Rational::new(BigInt::one(), BigInt::from(2));
            let mid: Vec<Rational> = prev
                .iter()
                .zip(&point)
                .map(|(a, b)| (a + b) * &half)
                .collect();
            if !u.contains(&mid) {
                return Err(Error::NonConvexRegion(format!(
                    "contains {} and {} but not their midpoint",
                    format_rational_point(prev),
                    format_rational_point(&point)
                )));
            }
        }
        members.push(point);
    }
    Ok(())
}

fn format_rational_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Iterate over the integer vectors of a product of ranges in a fixed
/// odometer order; `visit` returns true to stop early.
fn enumerate_box(ranges: &[(i64, i64)], mut visit: impl FnMut(&[i64]) -> bool) -> bool {
    if ranges.iter().any(|r| r.0 > r.1) {
        return false;
    }
    let n = ranges.len();
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        if visit(&cur) {
            return true;
        }
        let mut i = n;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1;
                for j in i + 1..n {
                    cur[j] = ranges[j].0;
                }
                break;
            }
        }
    }
}

fn rational_ceil_i64(x: &Rational) -> Option<i64> {
    x.ceil().to_integer().to_i64()
}

fn rational_floor_i64(x: &Rational) -> Option<i64> {
    x.floor().to_integer().to_i64()
}

/// Two distinct points of U whose difference is a nonzero integer
/// vector — the pigeonhole consequence of volume > 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PigeonholePair {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    /// x − y ∈ Zⁿ, nonzero.
    pub difference: Vec<BigInt>,
}

/// Find x ≠ y in U with x − y ∈ Zⁿ, which must exist when vol(U) > 1.
///
/// The search walks the lattice (1/m)Zⁿ inside the bounding box and
/// buckets member points by their coordinatewise fractional part; a
/// bucket collision is exactly the desired pair. The grid starts at
/// m = 16 per axis and doubles until a collision appears or the cell
/// budget 2²⁴ is exhausted (which indicates the volume bound was wrong —
/// the true statement needs no symmetry or convexity, only the volume).
pub fn pigeonhole_pair(u: &ConvexRegion) -> Result<PigeonholePair> {
    if u.volume_lb <= Rational::one() {
        return Err(Error::DomainError(format!(
            "the pigeonhole argument needs volume > 1, got lower bound {}",
            u.volume_lb
        )));
    }
    let mut m: i64 = 16;
    loop {
        let mb = Rational::from_integer(BigInt::from(m));
        let mut ranges = Vec::with_capacity(u.dim);
        let mut cells: u128 = 1;
        for (lo, hi) in &u.bounding_box {
            let kmin = rational_ceil_i64(&(lo * &mb)).ok_or_else(budget_error)?;
            let kmax = rational_floor_i64(&(hi * &mb)).ok_or_else(budget_error)?;
            if kmin > kmax {
                return Err(Error::SearchExhausted(
                    "the bounding box contains no grid points".into(),
                ));
            }
            cells = cells.saturating_mul((kmax - kmin + 1) as u128);
            ranges.push((kmin, kmax));
        }
        if cells > SEARCH_CELL_BUDGET {
            return Err(budget_error());
        }
        let mut buckets: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut found: Option<(Vec<i64>, Vec<i64>)> = None;
        enumerate_box(&ranges, |k| {
            let point: Vec<Rational> = k
                .iter()
                .map(|&ki| Rational::new(BigInt::from(ki), BigInt::from(m)))
                .collect();
            if !u.contains(&point) {
                return false;
            }
            let key: Vec<i64> = k.iter().map(|&ki| ki.rem_euclid(m)).collect();
            match buckets.get(&key) {
                Some(prev) => {
                    found = Some((k.to_vec(), prev.clone()));
                    true
                }
                None => {
                    buckets.insert(key, k.to_vec());
                    false
                }
            }
        });
        if let Some((kx, ky)) = found {
            let to_point = |k: &[i64]| -> Vec<Rational> {
                k.iter()
                    .map(|&ki| Rational::new(BigInt::from(ki), BigInt::from(m)))
                    .collect()
            };
            let difference: Vec<BigInt> = kx
                .iter()
                .zip(&ky)
                .map(|(a, b)| BigInt::from((a - b) / m))
                .collect();
            debug_assert!(kx.iter().zip(&ky).all(|(a, b)| (a - b) % m == 0));
            debug_assert!(difference.iter().any(|d| !d.is_zero()));
            return Ok(PigeonholePair {
                x: to_point(&kx),
                y: to_point(&ky),
                difference,
            });
        }
        m = m.saturating_mul(2);
    }
}

fn budget_error() -> Error {
    Error::SearchExhausted(format!(
        "grid refinement passed the {SEARCH_CELL_BUDGET}-cell budget without a collision — \
         the declared volume bound cannot be right"
    ))
}

/// Find a nonzero integer point of U, which must exist when
/// vol(U) > 2ⁿ and U is symmetric about the origin and convex
/// (Minkowski). Symmetry and convexity are spot-checked on seeded
/// samples before the search; integer points of the bounding box are
/// then enumerated in increasing sup-norm order.
pub fn minkowski_point(u: &ConvexRegion, seed: u64) -> Result<Vec<BigInt>> {
    let two_n = big_pow(&BigInt::from(2), u.dim);
    if u.volume_lb <= Rational::from_integer(two_n) {
        return Err(Error::DomainError(format!(
            "Minkowski's theorem needs volume > 2^{}, got lower bound {}",
            u.dim, u.volume_lb
        )));
    }
    region_spot_check(u, seed)?;
    let mut ranges = Vec::with_capacity(u.dim);
    let mut radius: i64 = 0;
    for (lo, hi) in &u.bounding_box {
        let kmin = rational_ceil_i64(lo).ok_or_else(|| {
            Error::SearchExhausted("the bounding box is too large to enumerate".into())
        })?;
        let kmax = rational_floor_i64(hi).ok_or_else(|| {
            Error::SearchExhausted("the bounding box is too large to enumerate".into())
        })?;
        radius = radius.max(kmin.abs()).max(kmax.abs());
        ranges.push((kmin, kmax));
    }
    let mut visited: u128 = 0;
    for r in 1..=radius {
        let shell: Vec<(i64, i64)> = ranges
            .iter()
            .map(|&(lo, hi)| (lo.max(-r), hi.min(r)))
            .collect();
        let mut hit: Option<Vec<i64>> = None;
        let stopped = enumerate_box(&shell, |k| {
            if k.iter().map(|ki| ki.abs()).max() != Some(r) {
                return false; // interior of the shell: already visited
            }
            visited += 1;
            if visited > SEARCH_CELL_BUDGET {
                return true;
            }
            let point: Vec<Rational> = k
                .iter()
                .map(|&ki| Rational::from_integer(BigInt::from(ki)))
                .collect();
            if u.contains(&point) {
                hit = Some(k.to_vec());
                true
            } else {
                false
            }
        });
        if visited > SEARCH_CELL_BUDGET {
            return Err(Error::SearchExhausted(
                "integer-point enumeration passed its budget".into(),
            ));
        }
        if stopped {
            if let Some(k) = hit {
                return Ok(k.iter().map(|&ki| BigInt::from(ki)).collect());
            }
        }
    }
    Err(Error::SearchExhausted(
        "no nonzero integer point in the bounding box belongs to the region — \
         the volume bound or the region description must be wrong"
            .into(),
    ))
}
