//! ℓp norms on rational n-tuples, comparison constants, Hölder/Young
//! inequalities, dual norms with extremal witnesses, and a randomized
//! seminorm-axiom checker.
//!
//! Exactness policy: p ∈ {1, ∞} norms are exact rationals, p = 2 is
//! compared through exact squared values, and every other exponent goes
//! through double precision (p-th roots are irrational).

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::Rational;

/// An ℓp exponent: a rational p ≥ 1 or +∞.
///
/// The derived order puts every finite exponent below `Infinity`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PExponent {
    Finite(Rational),
    Infinity,
}

impl PExponent {
    pub fn new(p: Rational) -> Result<PExponent> {
        if p < Rational::one() {
            return Err(Error::DomainError(format!(
                "an ℓp exponent must satisfy p ≥ 1; got {p}"
            )));
        }
        Ok(PExponent::Finite(p))
    }

    pub fn one() -> PExponent {
        PExponent::Finite(Rational::one())
    }

    pub fn two() -> PExponent {
        PExponent::Finite(Rational::from_integer(2.into()))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, PExponent::Infinity)
    }

    /// The conjugate exponent q with 1/p + 1/q = 1.
    pub fn conjugate(&self) -> PExponent {
        match self {
            PExponent::Infinity => PExponent::one(),
            PExponent::Finite(p) if p.is_one() => PExponent::Infinity,
            PExponent::Finite(p) => PExponent::Finite(p / (p - Rational::one())),
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            PExponent::Infinity => f64::INFINITY,
            PExponent::Finite(p) => p.to_f64().unwrap_or(f64::INFINITY),
        }
    }

    /// 1/p, with 1/∞ = 0 — the quantity appearing in comparison
    /// exponents.
    pub fn reciprocal_f64(&self) -> f64 {
        match self {
            PExponent::Infinity => 0.0,
            PExponent::Finite(p) => p.recip().to_f64().unwrap_or(0.0),
        }
    }
}

impl std::fmt::Display for PExponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PExponent::Infinity => write!(f, "inf"),
            PExponent::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// Exact ℓ¹ norm Σ|v_j|.
pub fn norm_l1_exact(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x.abs())
}

/// Exact ℓ∞ norm max|v_j| (0 for the empty tuple).
pub fn norm_linf_exact(v: &[Rational]) -> Rational {
    v.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Exact squared ℓ² norm Σ v_j² — comparisons at p = 2 stay in Q.
pub fn norm_l2_sq_exact(v: &[Rational]) -> Rational {
    v.iter().fold(Rational::zero(), |acc, x| acc + x * x)
}

/// ‖v‖_p = (Σ|v_j|^p)^{1/p}, with ‖v‖_∞ = max|v_j|.
///
/// p ∈ {1, 2, ∞} are computed from exact rational accumulations; other
/// exponents are evaluated in scaled double precision.
pub fn lp_norm(v: &[Rational], p: &PExponent) -> f64 {
    match p {
        PExponent::Infinity => norm_linf_exact(v).to_f64().unwrap_or(f64::INFINITY),
        PExponent::Finite(pf) if pf.is_one() => {
            norm_l1_exact(v).to_f64().unwrap_or(f64::INFINITY)
        }
        PExponent::Finite(pf) if *pf == Rational::from_integer(2.into()) => norm_l2_sq_exact(v)
            .to_f64()
            .unwrap_or(f64::INFINITY)
            .sqrt(),
        PExponent::Finite(_) => {
            let scale = norm_linf_exact(v).to_f64().unwrap_or(f64::INFINITY);
            if scale == 0.0 {
                return 0.0;
            }
            let pf = p.as_f64();
            let mut acc = 0.0;
            for x in v {
                let m = x.abs().to_f64().unwrap_or(f64::INFINITY) / scale;
                acc += m.powf(pf);
            }
            scale * acc.powf(1.0 / pf)
        }
    }
}

/// ‖v‖_p for double-precision tuples — the f64 twin of [`lp_norm`],
/// used where the data is already inexact (eigenvalues, sampled
/// directions).
pub fn lp_norm_f64(v: &[f64], p: &PExponent) -> f64 {
    match p {
        PExponent::Infinity => v.iter().fold(0.0f64, |a, x| a.max(x.abs())),
        PExponent::Finite(pf) if pf.is_one() => v.iter().map(|x| x.abs()).sum(),
        PExponent::Finite(pf) if *pf == Rational::from_integer(2.into()) => {
            v.iter().map(|x| x * x).sum::<f64>().sqrt()
        }
        PExponent::Finite(_) => {
            let scale = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
            if scale == 0.0 {
                return 0.0;
            }
            let pf = p.as_f64();
            let acc: f64 = v.iter().map(|x| (x.abs() / scale).powf(pf)).sum();
            scale * acc.powf(1.0 / pf)
        }
    }
}

/// The sharp constant n^{1/p − 1/q} in ‖v‖_p ≤ n^{1/p−1/q}·‖v‖_q for
/// p ≤ q on n-dimensional tuples (the companion direction
/// ‖v‖_q ≤ ‖v‖_p holds with constant 1).
pub fn comparison_constant(n: usize, p: &PExponent, q: &PExponent) -> Result<f64> {
    if n == 0 {
        return Err(Error::DomainError(
            "comparison constants need dimension n ≥ 1".into(),
        ));
    }
    if p > q {
        return Err(Error::OrderViolation {
            p: p.to_string(),
            q: q.to_string(),
        });
    }
    let e = p.reciprocal_f64() - q.reciprocal_f64();
    Ok((n as f64).powf(e))
}

/// Outcome of a Hölder pairing: the exact pairing Σ a_j·b_j, the bound
/// ‖a‖_p·‖b‖_q, and whether the scalar Young inequality
/// |ab| ≤ |a|^p/p + |b|^q/q held termwise (trivially true for p ∈ {1, ∞},
/// where the inequality degenerates).
#[derive(Debug, Clone)]
pub struct HolderReport {
    pub pairing: Rational,
    pub bound: f64,
    pub young_termwise_ok: bool,
}

impl HolderReport {
    pub fn pairing_abs(&self) -> f64 {
        self.pairing.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Pair a against b under the ℓp/ℓq duality: |Σ a_j·b_j| ≤ ‖a‖_p·‖b‖_q.
pub fn holder_pairing(a: &[Rational], b: &[Rational], p: &PExponent) -> Result<HolderReport> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let q = p.conjugate();
    let pairing = a
        .iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y);
    let bound = lp_norm(a, p) * lp_norm(b, &q);
    let mut young_termwise_ok = true;
    if !p.is_infinite() && !q.is_infinite() {
        let pf = p.as_f64();
        let qf = q.as_f64();
        if pf > 1.0 {
            for (x, y) in a.iter().zip(b) {
                let xa = x.abs().to_f64().unwrap_or(f64::INFINITY);
                let ya = y.abs().to_f64().unwrap_or(f64::INFINITY);
                let lhs = xa * ya;
                let rhs = xa.powf(pf) / pf + ya.powf(qf) / qf;
                if lhs > rhs + 1e-12 * (1.0 + rhs) {
                    young_termwise_ok = false;
                }
            }
        }
    }
    Ok(HolderReport {
        pairing,
        bound,
        young_termwise_ok,
    })
}

/// A dual-norm value together with an extremal witness on the primal
/// unit sphere: ‖witness‖_p = 1 and Σ w_j·witness_j = value (both up to
/// double-precision roundoff).
#[derive(Debug, Clone)]
pub struct DualNormResult {
    pub value: f64,
    pub witness: Vec<f64>,
    /// w = 0: the value is 0 and the witness is an arbitrary unit vector.
    pub degenerate: bool,
}

/// The dual norm of the functional λ(v) = Σ v_j·w_j on (Qⁿ, ‖·‖_p),
/// which equals ‖w‖_q for the conjugate exponent q, together with the
/// equality-achieving direction:
///
/// * p = 1 — a signed coordinate vector at a maximal |w_j|;
/// * p = ∞ — the sign pattern of w;
/// * 1 < p < ∞ — v_j ∝ sign(w_j)·|w_j|^{q−1}, normalized in ℓp.
pub fn dual_norm(w: &[Rational], p: &PExponent) -> DualNormResult {
    let n = w.len();
    if w.iter().all(|x| x.is_zero()) {
        let mut witness = vec![0.0; n];
        if n > 0 {
            witness[0] = 1.0;
        }
        return DualNormResult {
            value: 0.0,
            witness,
            degenerate: true,
        };
    }
    let q = p.conjugate();
    let value = lp_norm(w, &q);
    let sign = |x: &Rational| -> f64 {
        if x.is_positive() {
            1.0
        } else if x.is_negative() {
            -1.0
        } else {
            0.0
        }
    };
    let witness = match p {
        PExponent::Finite(pf) if pf.is_one() => {
            let best = norm_linf_exact(w);
            let mut v = vec![0.0; n];
            let j = w.iter().position(|x| x.abs() == best).expect("w ≠ 0");
            v[j] = sign(&w[j]);
            v
        }
        PExponent::Infinity => w.iter().map(sign).collect(),
        PExponent::Finite(_) => {
            let qm1 = q.as_f64() - 1.0;
            let scale = norm_linf_exact(w).to_f64().unwrap_or(f64::INFINITY);
            let mags: Vec<f64> = w
                .iter()
                .map(|x| (x.abs().to_f64().unwrap_or(f64::INFINITY) / scale).powf(qm1))
                .collect();
            let pf = p.as_f64();
            let unit = mags.iter().map(|m| m.powf(pf)).sum::<f64>().powf(1.0 / pf);
            w.iter()
                .zip(&mags)
                .map(|(x, m)| sign(x) * m / unit)
                .collect()
        }
    };
    DualNormResult {
        value,
        witness,
        degenerate: false,
    }
}

/// One axiom's verdict from [`seminorm_axioms_check`].
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub axiom: &'static str,
    pub trials: usize,
    pub counterexample: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Rational> {
    (0..dim)
        .map(|_| {
            Rational::new(
                rng.gen_range(-99i64..=99).into(),
                rng.gen_range(1i64..=9).into(),
            )
        })
        .collect()
}

fn format_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Randomized falsification of the seminorm axioms for a pure oracle
/// N: Qⁿ → R — absolute homogeneity N(αv) = |α|N(v), the triangle
/// inequality, and midpoint convexity of the unit ball (equivalent to
/// the triangle inequality under homogeneity, but probed directly).
///
/// Each axiom reports its first counterexample, or the number of trials
/// it survived. Passing is evidence, not proof; failing is a proof.
pub fn seminorm_axioms_check<F>(oracle: F, dim: usize, trials: usize, seed: u64) -> Vec<AxiomReport>
where
    F: Fn(&[Rational]) -> f64,
{
    const TOL: f64 = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut homogeneity = AxiomReport {
        axiom: "homogeneity",
        trials,
        counterexample: None,
    };
    for _ in 0..trials {
        let v = random_vector(&mut rng, dim);
        let alpha = Rational::new(
            rng.gen_range(-12i64..=12).into(),
            rng.gen_range(1i64..=4).into(),
        );
        let av: Vec<Rational> = v.iter().map(|x| x * &alpha).collect();
        let lhs = oracle(&av);
        let rhs = alpha.abs().to_f64().unwrap_or(0.0) * oracle(&v);
        if (lhs - rhs).abs() > TOL * (1.0 + lhs.abs().max(rhs.abs())) {
            homogeneity.counterexample = Some(format!(
                "v = {}, α = {alpha}: N(αv) = {lhs}, |α|·N(v) = {rhs}",
                format_vec(&v)
            ));
            break;
        }
    }

    let mut triangle = AxiomReport {
        axiom: "triangle",
        trials,
        counterexample: None,
    };
    for _ in 0..trials {
        let u = random_vector(&mut rng, dim);
        let v = random_vector(&mut rng, dim);
        let sum: Vec<Rational> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        let lhs = oracle(&sum);
        let rhs = oracle(&u) + oracle(&v);
        if lhs > rhs + TOL * (1.0 + rhs.abs()) {
            triangle.counterexample = Some(format!(
                "u = {}, v = {}: N(u+v) = {lhs} > N(u) + N(v) = {rhs}",
                format_vec(&u),
                format_vec(&v)
            ));
            break;
        }
    }

    let mut convexity = AxiomReport {
        axiom: "convexity",
        trials,
        counterexample: None,
    };
    let half = Rational::new(1.into(), 2.into());
    for _ in 0..trials {
        let u = random_vector(&mut rng, dim);
        let v = random_vector(&mut rng, dim);
        let mid: Vec<Rational> = u.iter().zip(&v).map(|(a, b)| (a + b) * &half).collect();
        let lhs = oracle(&mid);
        let rhs = 0.5 * (oracle(&u) + oracle(&v));
        if lhs > rhs + TOL * (1.0 + rhs.abs()) {
            convexity.counterexample = Some(format!(
                "u = {}, v = {}: N((u+v)/2) = {lhs} > (N(u)+N(v))/2 = {rhs}",
                format_vec(&u),
                format_vec(&v)
            ));
            break;
        }
    }

    vec![homogeneity, triangle, convexity]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qi(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn pex(n: i64, d: i64) -> PExponent {
        PExponent::new(q(n, d)).unwrap()
    }

    #[test]
    fn conjugate_exponents() {
        assert_eq!(PExponent::one().conjugate(), PExponent::Infinity);
        assert_eq!(PExponent::Infinity.conjugate(), PExponent::one());
        assert_eq!(PExponent::two().conjugate(), PExponent::two());
        assert_eq!(pex(3, 1).conjugate(), pex(3, 2));
        assert_eq!(pex(3, 2).conjugate(), pex(3, 1));
        assert!(PExponent::new(q(1, 2)).is_err());
        assert!(pex(3, 2) < PExponent::Infinity);
        assert!(PExponent::one() < pex(3, 2));
    }

    #[test]
    fn lp_norm_examples() {
        let v = vec![qi(3), qi(4)];
        assert!((lp_norm(&v, &PExponent::two()) - 5.0).abs() <= 1e-12);
        assert!((lp_norm(&v, &PExponent::Infinity) - 4.0).abs() == 0.0);
        assert!((lp_norm(&v, &PExponent::one()) - 7.0).abs() == 0.0);
        assert_eq!(lp_norm(&[qi(0), qi(0)], &pex(3, 2)), 0.0);

        // Exact homogeneity at p ∈ {1, ∞} and at p = 2 through squares.
        let w: Vec<Rational> = vec![q(2, 3), qi(-7), q(1, 2)];
        let alpha = q(-5, 4);
        let aw: Vec<Rational> = w.iter().map(|x| x * &alpha).collect();
        assert_eq!(norm_l1_exact(&aw), alpha.abs() * norm_l1_exact(&w));
        assert_eq!(norm_linf_exact(&aw), alpha.abs() * norm_linf_exact(&w));
        assert_eq!(
            norm_l2_sq_exact(&aw),
            &alpha * &alpha * norm_l2_sq_exact(&w)
        );
    }

    #[test]
    fn comparison_constant_examples() {
        let one = PExponent::one();
        let two = PExponent::two();
        let inf = PExponent::Infinity;
        assert!((comparison_constant(4, &one, &two).unwrap() - 2.0).abs() <= 1e-12);
        assert!((comparison_constant(9, &two, &inf).unwrap() - 3.0).abs() <= 1e-12);
        assert_eq!(comparison_constant(7, &two, &two).unwrap(), 1.0);
        assert!(matches!(
            comparison_constant(4, &two, &one),
            Err(Error::OrderViolation { .. })
        ));
    }

    #[test]
    fn norm_monotonicity_and_comparison() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let exps = [
            PExponent::one(),
            pex(3, 2),
            PExponent::two(),
            pex(3, 1),
            PExponent::Infinity,
        ];
        for _ in 0..200 {
            let dim = rng.gen_range(1..=16);
            let v = random_vector(&mut rng, dim);
            for i in 0..exps.len() {
                for j in i..exps.len() {
                    let (p, q) = (&exps[i], &exps[j]);
                    let np = lp_norm(&v, p);
                    let nq = lp_norm(&v, q);
                    // ‖v‖_q ≤ ‖v‖_p ≤ n^{1/p−1/q}·‖v‖_q for p ≤ q.
                    assert!(nq <= np * (1.0 + 1e-10));
                    let c = comparison_constant(dim, p, q).unwrap();
                    assert!(np <= c * nq * (1.0 + 1e-10));
                }
            }
        }
    }

    #[test]
    fn holder_examples() {
        let r = holder_pairing(&[qi(1), qi(1)], &[qi(1), qi(1)], &PExponent::two()).unwrap();
        assert_eq!(r.pairing, qi(2));
        assert!((r.bound - 2.0).abs() <= 1e-12);
        assert!(r.young_termwise_ok);

        let r = holder_pairing(&[qi(1), qi(2)], &[qi(3), qi(1)], &PExponent::one()).unwrap();
        assert_eq!(r.pairing, qi(5));
        assert!((r.bound - 9.0).abs() <= 1e-12);

        assert!(matches!(
            holder_pairing(&[qi(1)], &[qi(1), qi(2)], &PExponent::two()),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        ));

        // The bound is never violated on random data.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let dim = rng.gen_range(1..=8);
            let a = random_vector(&mut rng, dim);
            let b = random_vector(&mut rng, dim);
            for p in [PExponent::one(), pex(3, 2), PExponent::two(), pex(4, 1)] {
                let r = holder_pairing(&a, &b, &p).unwrap();
                assert!(r.pairing_abs() <= r.bound * (1.0 + 1e-10) + 1e-12);
                assert!(r.young_termwise_ok);
            }
        }
    }

    #[test]
    fn dual_norm_examples() {
        let r = dual_norm(&[qi(1), qi(-2)], &PExponent::one());
        assert_eq!(r.value, 2.0);
        assert_eq!(r.witness, vec![0.0, -1.0]);
        assert!(!r.degenerate);

        let r = dual_norm(&[qi(3), qi(4)], &PExponent::two());
        assert!((r.value - 5.0).abs() <= 1e-12);
        assert!((r.witness[0] - 0.6).abs() <= 1e-12);
        assert!((r.witness[1] - 0.8).abs() <= 1e-12);

        let r = dual_norm(&[qi(0), qi(0)], &PExponent::two());
        assert_eq!(r.value, 0.0);
        assert!(r.degenerate);
        assert_eq!(r.witness, vec![1.0, 0.0]);
    }

    #[test]
    fn dual_norm_witness_is_extremal() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let exps = [
            PExponent::one(),
            pex(3, 2),
            PExponent::two(),
            pex(3, 1),
            PExponent::Infinity,
        ];
        for _ in 0..200 {
            let dim = rng.gen_range(1..=8);
            let w = random_vector(&mut rng, dim);
            for p in &exps {
                let r = dual_norm(&w, p);
                if r.degenerate {
                    continue;
                }
                let pairing: f64 = w
                    .iter()
                    .zip(&r.witness)
                    .map(|(x, v)| x.to_f64().unwrap() * v)
                    .sum();
                assert!(pairing.abs() >= (1.0 - 1e-10) * r.value);
                let wr: Vec<Rational> = r
                    .witness
                    .iter()
                    .map(|x| Rational::from_float(*x).unwrap())
                    .collect();
                assert!(lp_norm(&wr, p) <= 1.0 + 1e-10);
                // Double duality: the dual of the dual exponent gives
                // back ‖w‖_p.
                let rr = dual_norm(&w, &p.conjugate());
                assert!((rr.value - lp_norm(&w, p)).abs() <= 1e-9 * (1.0 + rr.value));
            }
        }
    }

    #[test]
    fn seminorm_axioms_on_l2() {
        let reports = seminorm_axioms_check(
            |v| norm_l2_sq_exact(v).to_f64().unwrap().sqrt(),
            3,
            300,
            7,
        );
        assert!(reports.iter().all(|r| r.passed()), "{reports:?}");
    }

    #[test]
    fn seminorm_axioms_on_squared_l2_fail() {
        let reports = seminorm_axioms_check(|v| norm_l2_sq_exact(v).to_f64().unwrap(), 2, 300, 7);
        let by_name = |n: &str| reports.iter().find(|r| r.axiom == n).unwrap();
        assert!(!by_name("homogeneity").passed());
        assert!(!by_name("triangle").passed());
    }

    #[test]
    fn degenerate_seminorm_passes_axioms_but_not_definiteness() {
        // N(v) = |v₁ − √2·v₂| is a seminorm-like functional on Q² that
        // vanishes on no rational line, yet continued-fraction
        // convergents of √2 make it arbitrarily small on large integer
        // vectors — it is not equivalent to any genuine norm on Q².
        let theta = std::f64::consts::SQRT_2;
        let oracle = move |v: &[Rational]| -> f64 {
            (v[0].to_f64().unwrap() - theta * v[1].to_f64().unwrap()).abs()
        };
        let reports = seminorm_axioms_check(oracle, 2, 300, 7);
        assert!(reports.iter().all(|r| r.passed()), "{reports:?}");

        // 99/70 is a convergent of √2: N((99, 70)) < 1/70.
        let v = vec![qi(99), qi(70)];
        assert!(oracle(&v) < 1.0 / 70.0);
        assert!(norm_linf_exact(&v) >= qi(70));
    }
}
