//! Linear operators on Qⁿ and Rⁿ: exact ℓ¹/ℓ∞ operator norms, the Schur
//! contraction certificate, a Jacobi eigensolver for symmetric input,
//! Schatten norms with the orthonormal-basis quadratic quantity, minimal
//! polynomials by exact elimination, inverses as polynomials in the
//! operator, and the unimodular / p-adic isometry group tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::norms::{dual_norm, lp_norm_f64, norm_l1_exact, PExponent};
use crate::scalars::{self, Prime, Valuation};
use crate::series::{poly_eval_in_algebra, AlgebraElement};
use crate::Rational;

/// A dense row-major matrix. Rectangular shapes are allowed; operations
/// that need squareness say so and fail with
/// [`Error::NonSquareMatrix`] otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Matrix<T>> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Matrix<T>> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::LengthMismatch {
                    expected: c,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row_slice(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero + One + std::ops::Mul<Output = T>,
{
    pub fn identity(n: usize) -> Matrix<T> {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn zero(rows: usize, cols: usize) -> Matrix<T> {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out: Matrix<T> = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.clone() * other.get(k, j).clone();
                    out.set(i, j, out.get(i, j).clone() + t);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix<T>) -> Result<Matrix<T>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: self.rows.max(self.cols),
                right: other.rows.max(other.cols),
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Matrix–vector application.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = T::zero();
            for j in 0..self.cols {
                acc = acc + self.get(i, j).clone() * v[j].clone();
            }
            out.push(acc);
        }
        Ok(out)
    }
}

impl AlgebraElement for Matrix<Rational> {
    fn one_like(&self) -> Self {
        Matrix::identity(self.rows)
    }
    fn add_alg(&self, other: &Self) -> Self {
        self.add(other).expect("algebra elements share a dimension")
    }
    fn mul_alg(&self, other: &Self) -> Self {
        self.mul(other).expect("algebra elements share a dimension")
    }
    fn scale_alg(&self, c: &Rational) -> Self {
        self.map(|x| x * c)
    }
}

/// Evaluate a rational polynomial (ascending coefficients) at a square
/// matrix, with x⁰ = I.
pub fn poly_eval_matrix(coeffs: &[Rational], t: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    t.require_square()?;
    Ok(poly_eval_in_algebra(coeffs, t))
}

/// Exact ℓ¹→ℓ¹ operator norm: the largest column sum of absolute
/// values (the norm of the image of the worst coordinate vector).
pub fn opnorm_l1_exact(t: &Matrix<Rational>) -> Rational {
    (0..t.cols())
        .map(|j| {
            (0..t.rows())
                .fold(Rational::zero(), |acc, i| acc + t.get(i, j).abs())
        })
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Exact ℓ∞→ℓ∞ operator norm: the largest row sum of absolute values
/// (each row functional's dual norm under ‖·‖_∞ is its ℓ¹ norm).
pub fn opnorm_linf_exact(t: &Matrix<Rational>) -> Rational {
    (0..t.rows())
        .map(|i| norm_l1_exact(t.row_slice(i)))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// The Schur test, exactly: true iff every row sum and every column sum
/// of |T_ij| is ≤ 1. When true, T is certified to be a contraction on
/// ℓp for every 1 ≤ p ≤ ∞ (interpolation between the exact ℓ¹ and ℓ∞
/// bounds).
pub fn schur_certificate(t: &Matrix<Rational>) -> bool {
    opnorm_l1_exact(t) <= Rational::one() && opnorm_linf_exact(t) <= Rational::one()
}

/// A certified lower bound for ‖T‖_{ℓp→ℓp}.
///
/// For p ∈ {1, ∞} this is the exact operator norm. For other exponents
/// no closed form exists; the bound is the best ratio ‖Tv‖_p/‖v‖_p over
/// coordinate vectors, per-row dual-norm witness directions, and
/// `trials` seeded random directions — a valid lower bound, never
/// claimed to be the supremum.
pub fn opnorm_estimate(
    t: &Matrix<Rational>,
    p: &PExponent,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::DomainError(
            "the operator-norm sampler needs at least one trial".into(),
        ));
    }
    match p {
        PExponent::Finite(pf) if pf.is_one() => {
            return Ok(opnorm_l1_exact(t).to_f64().unwrap_or(f64::INFINITY))
        }
        PExponent::Infinity => {
            return Ok(opnorm_linf_exact(t).to_f64().unwrap_or(f64::INFINITY))
        }
        PExponent::Finite(_) => {}
    }
    let tf = t.map(|x| x.to_f64().unwrap_or(f64::INFINITY));
    let ratio = |v: &[f64]| -> f64 {
        let nv = lp_norm_f64(v, p);
        if nv == 0.0 {
            return 0.0;
        }
        let tv = tf.apply(&v.to_vec()).expect("dimension checked");
        lp_norm_f64(&tv, p) / nv
    };
    let mut best = 0.0f64;
    for j in 0..t.cols() {
        let mut e = vec![0.0; t.cols()];
        e[j] = 1.0;
        best = best.max(ratio(&e));
    }
    for i in 0..t.rows() {
        let w = dual_norm(t.row_slice(i), p);
        if !w.degenerate {
            best = best.max(ratio(&w.witness));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let v: Vec<f64> = (0..t.cols()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        best = best.max(ratio(&v));
    }
    Ok(best)
}

/// A spectral decomposition of a real symmetric matrix: A = V·diag(α)·Vᵀ
/// with V's columns orthonormal and α sorted descending.
#[derive(Debug, Clone)]
pub struct EigenDecomp {
    pub eigenvalues: Vec<f64>,
    /// Columns are the eigenvectors, in eigenvalue order.
    pub basis: Matrix<f64>,
    /// max_j ‖A·v_j − α_j·v_j‖₂ against the original input.
    pub residual: f64,
}

const JACOBI_MAX_SWEEPS: usize = 50;

/// Diagonalize a symmetric matrix in an orthonormal basis by cyclic
/// Jacobi rotations, sweeping until the off-diagonal Frobenius mass
/// falls below `tol` (at most 50 sweeps). Symmetry is enforced up to
/// `tol` entrywise; the residual against the original input is reported.
pub fn symmetric_eigen(a: &Matrix<f64>, tol: f64) -> Result<EigenDecomp> {
    let n = a.require_square()?;
    let mut deviation = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            deviation = deviation.max((a.get(i, j) - a.get(j, i)).abs());
            if !a.get(i, j).is_finite() {
                return Err(Error::NonFiniteInput);
            }
        }
    }
    if deviation > tol {
        return Err(Error::NotSelfAdjoint { deviation });
    }

    // Work on the exactly symmetric average; report residuals against
    // the caller's matrix.
    let mut b = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            b[i][j] = 0.5 * (a.get(i, j) + a.get(j, i));
        }
    }
    let mut v = vec![vec![0.0f64; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off += b[i][j] * b[i][j];
                }
            }
        }
        if off.sqrt() <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = b[p][q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (b[q][q] - b[p][p]) / (2.0 * apq);
                let tq = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (tq * tq + 1.0).sqrt();
                let s = tq * c;
                for row in b.iter_mut() {
                    let (bp, bq) = (row[p], row[q]);
                    row[p] = c * bp - s * bq;
                    row[q] = s * bp + c * bq;
                }
                for k in 0..n {
                    let (bp, bq) = (b[p][k], b[q][k]);
                    b[p][k] = c * bp - s * bq;
                    b[q][k] = s * bp + c * bq;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| b[j][j].partial_cmp(&b[i][i]).expect("finite eigenvalues"));
    let eigenvalues: Vec<f64> = order.iter().map(|&j| b[j][j]).collect();
    let mut basis = Matrix::zero(n, n);
    for (col, &j) in order.iter().enumerate() {
        for i in 0..n {
            basis.set(i, col, v[i][j]);
        }
    }

    let mut residual = 0.0f64;
    for (col, alpha) in eigenvalues.iter().enumerate() {
        let vj: Vec<f64> = (0..n).map(|i| *basis.get(i, col)).collect();
        let av = a.apply(&vj).expect("dimension checked");
        let r2: f64 = av
            .iter()
            .zip(&vj)
            .map(|(x, y)| (x - alpha * y) * (x - alpha * y))
            .sum();
        residual = residual.max(r2.sqrt());
    }

    Ok(EigenDecomp {
        eigenvalues,
        basis,
        residual,
    })
}

/// The Schatten p-norm of a symmetric matrix: the ℓp norm of its
/// eigenvalue tuple. S_∞ is the ordinary ℓ²→ℓ² operator norm.
pub fn schatten_norm(a: &Matrix<f64>, p: &PExponent, tol: f64) -> Result<f64> {
    let decomp = symmetric_eigen(a, tol)?;
    Ok(lp_norm_f64(&decomp.eigenvalues, p))
}

/// The basis-quadratic quantity (Σ_l |⟨A·w_l, w_l⟩|^p)^{1/p} for an
/// orthonormal basis W (columns). It never exceeds the Schatten p-norm,
/// with equality when W is an eigenbasis of A.
pub fn basis_quadratic_lp(
    a: &Matrix<f64>,
    w: &Matrix<f64>,
    p: &PExponent,
    tol: f64,
) -> Result<f64> {
    let n = a.require_square()?;
    let m = w.require_square()?;
    if n != m {
        return Err(Error::DimensionMismatch { left: n, right: m });
    }
    let mut deviation = 0.0f64;
    for j in 0..n {
        for l in 0..n {
            let dot: f64 = (0..n).map(|i| w.get(i, j) * w.get(i, l)).sum();
            let target = if j == l { 1.0 } else { 0.0 };
            deviation = deviation.max((dot - target).abs());
        }
    }
    if deviation > tol {
        return Err(Error::NotOrthonormal { deviation });
    }
    let mut diag = Vec::with_capacity(n);
    for l in 0..n {
        let wl: Vec<f64> = (0..n).map(|i| *w.get(i, l)).collect();
        let awl = a.apply(&wl).expect("dimension checked");
        diag.push(awl.iter().zip(&wl).map(|(x, y)| x * y).sum::<f64>());
    }
    Ok(lp_norm_f64(&diag, p))
}

/// Gram–Schmidt with one re-orthogonalization pass, on the columns.
/// Fails with a domain error when the columns are numerically dependent.
pub fn orthonormalize(m: &Matrix<f64>) -> Result<Matrix<f64>> {
    let n = m.require_square()?;
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|j| (0..n).map(|i| *m.get(i, j)).collect())
        .collect();
    for j in 0..n {
        // Two projection passes keep the basis orthonormal to roundoff
        // even for ill-conditioned input.
        for _ in 0..2 {
            for k in 0..j {
                let dot: f64 = cols[j].iter().zip(&cols[k]).map(|(a, b)| a * b).sum();
                for i in 0..n {
                    cols[j][i] -= dot * cols[k][i];
                }
            }
        }
        let norm: f64 = cols[j].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-10 {
            return Err(Error::DomainError(
                "columns are numerically linearly dependent".into(),
            ));
        }
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let mut out = Matrix::zero(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col.iter().enumerate() {
            out.set(i, j, *x);
        }
    }
    Ok(out)
}

/// A random orthonormal basis, produced by orthonormalizing a matrix of
/// uniform entries (resampling in the measure-zero dependent case).
pub fn random_orthonormal<R: Rng>(n: usize, rng: &mut R) -> Matrix<f64> {
    loop {
        let data: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let m = Matrix::new(n, n, data).expect("sized to n²");
        if let Ok(q) = orthonormalize(&m) {
            return q;
        }
    }
}

/// A monic rational polynomial, ascending coefficients (the last one
/// is 1).
#[derive(Debug, Clone, PartialEq)]
pub struct MinPoly {
    pub coeffs: Vec<Rational>,
}

impl MinPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }
}

/// The minimal polynomial of a square rational matrix: the least-degree
/// monic polynomial with p(T) = 0, found by exact Gaussian elimination
/// on the flattened powers I, T, T², …
///
/// Each new power is reduced against the independent powers below it;
/// the first power that reduces to zero yields the dependence, and the
/// bookkeeping row is already monic in that power. Minimality is
/// structural: a lower-degree annihilator would have made an earlier
/// power dependent. Cayley–Hamilton caps the degree at n.
pub fn minimal_poly(t: &Matrix<Rational>) -> Result<MinPoly> {
    let n = t.require_square()?;
    if n == 0 {
        // The zero-dimensional algebra is trivial: the unit itself is 0.
        return Ok(MinPoly {
            coeffs: vec![Rational::one()],
        });
    }
    // (reduced flattened power, pivot column, combination over lower powers)
    let mut basis: Vec<(Vec<Rational>, usize, Vec<Rational>)> = Vec::new();
    let mut power = Matrix::<Rational>::identity(n);
    for k in 0..=(n * n) {
        let mut vec: Vec<Rational> = power.entries().to_vec();
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for (bvec, pivot, bcombo) in &basis {
            if vec[*pivot].is_zero() {
                continue;
            }
            let factor = &vec[*pivot] / &bvec[*pivot];
            for (x, bx) in vec.iter_mut().zip(bvec) {
                *x -= &factor * bx;
            }
            for (c, bc) in combo.iter_mut().zip(bcombo) {
                *c -= &factor * bc;
            }
        }
        match vec.iter().position(|x| !x.is_zero()) {
            None => {
                // T^k = −Σ_{i<k} combo_i·T^i, and combo_k is untouched 1.
                return Ok(MinPoly { coeffs: combo });
            }
            Some(pivot) => {
                basis.push((vec, pivot, combo));
            }
        }
        power = power.mul(t)?;
    }
    unreachable!("the powers of an n×n matrix span at most n² dimensions")
}

/// T⁻¹ as a polynomial in T, from the minimal polynomial: if
/// c₀ + c₁T + … + T^l = 0 with c₀ ≠ 0, then
/// T⁻¹ = −(c₁I + c₂T + … + T^{l−1})/c₀. Exact; fails with
/// [`Error::Singular`] exactly when c₀ = 0.
pub fn inverse_via_powers(t: &Matrix<Rational>) -> Result<Matrix<Rational>> {
    let n = t.require_square()?;
    let mp = minimal_poly(t)?;
    if mp.constant_term().is_zero() {
        return Err(Error::Singular);
    }
    let c0 = mp.constant_term().clone();
    let mut acc = Matrix::<Rational>::zero(n, n);
    let mut power = Matrix::<Rational>::identity(n);
    for c in mp.coeffs.iter().skip(1) {
        acc = acc.add(&power.map(|x| x * c))?;
        power = power.mul(t)?;
    }
    let inv = acc.map(|x| -(x / &c0));
    debug_assert_eq!(t.mul(&inv).unwrap(), Matrix::identity(n));
    Ok(inv)
}

const DET_DIMENSION_CAP: usize = 64;

/// Exact determinant by fraction-free (Bareiss) elimination after
/// clearing denominators row by row. Enforced at n ≤ 64.
pub fn det_exact(t: &Matrix<Rational>) -> Result<Rational> {
    let n = t.require_square()?;
    if n > DET_DIMENSION_CAP {
        return Err(Error::BudgetExceeded(format!(
            "exact determinants are capped at dimension {DET_DIMENSION_CAP}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    let mut denom = BigInt::one();
    for i in 0..n {
        let row = t.row_slice(i);
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        m.push(
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect(),
        );
        denom *= lcm;
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by the Bareiss identity
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det_int = &m[n - 1][n - 1] * BigInt::from(sign);
    Ok(Rational::new(det_int, denom))
}

/// Is α an eigenvalue of A? Decided exactly: det(A − αI) = 0.
pub fn eigenvalue_check(a: &Matrix<Rational>, alpha: &Rational) -> Result<bool> {
    let n = a.require_square()?;
    let mut shifted = a.clone();
    for i in 0..n {
        shifted.set(i, i, a.get(i, i) - alpha);
    }
    Ok(det_exact(&shifted)?.is_zero())
}

/// True iff T has integer entries and det T = ±1 — exactly the matrices
/// that map Zⁿ onto Zⁿ with an inverse of the same kind.
pub fn unimodular_check(t: &Matrix<Rational>) -> Result<bool> {
    if !t.entries().iter().all(|x| x.is_integer()) {
        return Ok(false);
    }
    Ok(det_exact(t)?.abs() == Rational::one())
}

/// True iff every entry is a p-adic integer (|T_ij|_p ≤ 1) and
/// |det T|_p = 1. Such matrices preserve the p-adic max-norm
/// max_i |v_i|_p, so they act as isometries.
pub fn padic_isometry_check(t: &Matrix<Rational>, p: Prime) -> Result<bool> {
    if !t
        .entries()
        .iter()
        .all(|x| scalars::vp(x, p) >= Valuation::Finite(0))
    {
        return Ok(false);
    }
    Ok(scalars::vp(&det_exact(t)?, p) == Valuation::Finite(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn qi(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    fn mq(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(qi).collect())
                .collect(),
        )
        .unwrap()
    }

    fn mf(rows: Vec<Vec<f64>>) -> Matrix<f64> {
        Matrix::from_rows(rows).unwrap()
    }

    fn random_rational_matrix(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
        let data: Vec<Rational> = (0..n * n)
            .map(|_| {
                Rational::new(
                    rng.gen_range(-9i64..=9).into(),
                    rng.gen_range(1i64..=4).into(),
                )
            })
            .collect();
        Matrix::new(n, n, data).unwrap()
    }

    #[test]
    fn opnorm_examples() {
        let t = mq(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(opnorm_l1_exact(&t), qi(6));
        assert_eq!(opnorm_linf_exact(&t), qi(7));
        let id = Matrix::<Rational>::identity(3);
        assert_eq!(opnorm_l1_exact(&id), qi(1));
        assert_eq!(opnorm_linf_exact(&id), qi(1));
        let z = Matrix::<Rational>::zero(2, 2);
        assert_eq!(opnorm_l1_exact(&z), qi(0));
        let perm = mq(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(opnorm_linf_exact(&perm), qi(1));
    }

    #[test]
    fn opnorm_submultiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let n = rng.gen_range(1..=5);
            let a = random_rational_matrix(&mut rng, n);
            let b = random_rational_matrix(&mut rng, n);
            let ab = a.mul(&b).unwrap();
            assert!(opnorm_l1_exact(&ab) <= opnorm_l1_exact(&a) * opnorm_l1_exact(&b));
            assert!(opnorm_linf_exact(&ab) <= opnorm_linf_exact(&a) * opnorm_linf_exact(&b));
        }
    }

    #[test]
    fn schur_examples() {
        let t = Matrix::from_rows(vec![
            vec![q(1, 2), q(1, 2)],
            vec![q(1, 2), q(1, 2)],
        ])
        .unwrap();
        assert!(schur_certificate(&t));
        assert!(schur_certificate(&Matrix::<Rational>::identity(4)));
        assert!(!schur_certificate(&mq(vec![vec![2, 0], vec![0, 0]])));
    }

    #[test]
    fn opnorm_estimate_examples() {
        let d = mq(vec![vec![3, 0], vec![0, -4]]);
        for p in [
            PExponent::one(),
            PExponent::new(q(3, 2)).unwrap(),
            PExponent::two(),
            PExponent::Infinity,
        ] {
            let est = opnorm_estimate(&d, &p, 16, 7).unwrap();
            assert!(est >= 4.0 - 1e-12, "p = {p}: {est}");
            assert!(est <= 4.0 + 1e-12, "p = {p}: {est}");
        }
        let id = Matrix::<Rational>::identity(3);
        assert_eq!(opnorm_estimate(&id, &PExponent::two(), 8, 1).unwrap(), 1.0);
        let nil = mq(vec![vec![0, 1], vec![0, 0]]);
        assert!(opnorm_estimate(&nil, &PExponent::two(), 8, 1).unwrap() >= 1.0 - 1e-12);
        assert!(matches!(
            opnorm_estimate(&id, &PExponent::two(), 0, 1),
            Err(Error::DomainError(_))
        ));
    }

    #[test]
    fn symmetric_eigen_examples() {
        let d = mf(vec![vec![3.0, 0.0], vec![0.0, -4.0]]);
        let e = symmetric_eigen(&d, 1e-12).unwrap();
        assert_eq!(e.eigenvalues, vec![3.0, -4.0]);
        assert!(e.residual <= 1e-10);

        let swap = mf(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let e = symmetric_eigen(&swap, 1e-12).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() <= 1e-12);
        assert!((e.eigenvalues[1] + 1.0).abs() <= 1e-12);

        let nil = mf(vec![vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(matches!(
            symmetric_eigen(&nil, 1e-12),
            Err(Error::NotSelfAdjoint { deviation }) if (deviation - 1.0).abs() <= 1e-15
        ));
    }

    #[test]
    fn symmetric_eigen_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let n = rng.gen_range(2..=6);
            let mut a = Matrix::<f64>::zero(n, n);
            for i in 0..n {
                for j in i..n {
                    let x = rng.gen_range(-3.0..=3.0);
                    a.set(i, j, x);
                    a.set(j, i, x);
                }
            }
            let e = symmetric_eigen(&a, 1e-12).unwrap();
            assert!(e.residual <= 1e-10);
            let trace: f64 = (0..n).map(|i| a.get(i, i)).sum();
            let frob2: f64 = a.entries().iter().map(|x| x * x).sum();
            let sum: f64 = e.eigenvalues.iter().sum();
            let sum2: f64 = e.eigenvalues.iter().map(|x| x * x).sum();
            let scale = 1.0 + trace.abs().max(frob2);
            assert!((sum - trace).abs() <= 1e-8 * scale);
            assert!((sum2 - frob2).abs() <= 1e-8 * scale);
            // Basis orthonormality.
            for j in 0..n {
                for l in 0..n {
                    let dot: f64 = (0..n).map(|i| e.basis.get(i, j) * e.basis.get(i, l)).sum();
                    let target = if j == l { 1.0 } else { 0.0 };
                    assert!((dot - target).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn schatten_examples() {
        let d = mf(vec![vec![3.0, 0.0], vec![0.0, -4.0]]);
        assert!((schatten_norm(&d, &PExponent::one(), 1e-12).unwrap() - 7.0).abs() <= 1e-12);
        assert!((schatten_norm(&d, &PExponent::two(), 1e-12).unwrap() - 5.0).abs() <= 1e-12);
        assert!((schatten_norm(&d, &PExponent::Infinity, 1e-12).unwrap() - 4.0).abs() <= 1e-12);

        let id = Matrix::<f64>::identity(2);
        let p3 = PExponent::new(qi(3)).unwrap();
        assert!(
            (schatten_norm(&id, &p3, 1e-12).unwrap() - 2.0f64.powf(1.0 / 3.0)).abs() <= 1e-12
        );
        let z = Matrix::<f64>::zero(2, 2);
        assert_eq!(schatten_norm(&z, &PExponent::one(), 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn basis_quadratic_examples() {
        let d = mf(vec![vec![3.0, 0.0], vec![0.0, -4.0]]);
        let eigenbasis = symmetric_eigen(&d, 1e-12).unwrap().basis;
        let v = basis_quadratic_lp(&d, &eigenbasis, &PExponent::one(), 1e-10).unwrap();
        assert!((v - 7.0).abs() <= 1e-10);

        let id = Matrix::<f64>::identity(2);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let w = random_orthonormal(2, &mut rng);
        let v = basis_quadratic_lp(&id, &w, &PExponent::one(), 1e-10).unwrap();
        assert!((v - 2.0).abs() <= 1e-10);

        let swap = mf(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        let std = Matrix::<f64>::identity(2);
        let v = basis_quadratic_lp(&swap, &std, &PExponent::one(), 1e-10).unwrap();
        assert_eq!(v, 0.0);

        let skew = mf(vec![vec![1.0, 1.0], vec![0.0, 1.0]]);
        assert!(matches!(
            basis_quadratic_lp(&swap, &skew, &PExponent::one(), 1e-10),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn basis_quadratic_below_schatten() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let exps = [
            PExponent::one(),
            PExponent::two(),
            PExponent::new(qi(3)).unwrap(),
            PExponent::Infinity,
        ];
        for _ in 0..10 {
            let n = rng.gen_range(2..=6);
            let mut a = Matrix::<f64>::zero(n, n);
            for i in 0..n {
                for j in i..n {
                    let x = rng.gen_range(-2.0..=2.0);
                    a.set(i, j, x);
                    a.set(j, i, x);
                }
            }
            for p in &exps {
                let s = schatten_norm(&a, p, 1e-12).unwrap();
                for _ in 0..10 {
                    let w = random_orthonormal(n, &mut rng);
                    let bq = basis_quadratic_lp(&a, &w, p, 1e-8).unwrap();
                    assert!(bq <= s + 1e-8, "n={n} p={p}: {bq} > {s}");
                }
            }
        }
    }

    #[test]
    fn minimal_poly_examples() {
        let id = Matrix::<Rational>::identity(2);
        assert_eq!(minimal_poly(&id).unwrap().coeffs, vec![qi(-1), qi(1)]);

        let nil = mq(vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(
            minimal_poly(&nil).unwrap().coeffs,
            vec![qi(0), qi(0), qi(1)]
        );

        let swap = mq(vec![vec![0, 1], vec![1, 0]]);
        let mp = minimal_poly(&swap).unwrap();
        assert_eq!(mp.coeffs, vec![qi(-1), qi(0), qi(1)]);

        // p(T) = 0 exactly, and the degree respects Cayley–Hamilton.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let n = rng.gen_range(1..=4);
            let t = random_rational_matrix(&mut rng, n);
            let mp = minimal_poly(&t).unwrap();
            assert!(mp.degree() <= n);
            assert_eq!(*mp.coeffs.last().unwrap(), qi(1));
            let evaluated = poly_eval_matrix(&mp.coeffs, &t).unwrap();
            assert_eq!(evaluated, Matrix::zero(n, n));
        }
    }

    #[test]
    fn inverse_via_powers_examples() {
        let swap = mq(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(inverse_via_powers(&swap).unwrap(), swap);

        let id = Matrix::<Rational>::identity(3);
        assert_eq!(inverse_via_powers(&id).unwrap(), id);

        let nil = mq(vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(inverse_via_powers(&nil).unwrap_err(), Error::Singular);

        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let mut tested = 0;
        while tested < 20 {
            let n = rng.gen_range(1..=4);
            let t = random_rational_matrix(&mut rng, n);
            match inverse_via_powers(&t) {
                Err(Error::Singular) => continue,
                Err(e) => panic!("unexpected error {e}"),
                Ok(inv) => {
                    assert_eq!(t.mul(&inv).unwrap(), Matrix::identity(n));
                    assert_eq!(inv.mul(&t).unwrap(), Matrix::identity(n));
                    // 1 = ‖I‖ ≤ ‖T‖·‖T⁻¹‖.
                    assert!(opnorm_l1_exact(&t) * opnorm_l1_exact(&inv) >= qi(1));
                    tested += 1;
                }
            }
        }
    }

    #[test]
    fn perturbed_invertible_stays_invertible() {
        // For invertible T and ‖A‖₁ < 1/‖T⁻¹‖₁, T + A is invertible.
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let mut tested = 0;
        while tested < 10 {
            let n = rng.gen_range(1..=4);
            let t = random_rational_matrix(&mut rng, n);
            let inv = match inverse_via_powers(&t) {
                Ok(inv) => inv,
                Err(_) => continue,
            };
            let c = opnorm_l1_exact(&inv).recip();
            let a = random_rational_matrix(&mut rng, n);
            let na = opnorm_l1_exact(&a);
            if na.is_zero() {
                continue;
            }
            // Scale A to norm c/2 < c.
            let scaled = a.map(|x| x * (&c / (&na * qi(2))));
            let perturbed = t.add(&scaled).unwrap();
            assert!(
                inverse_via_powers(&perturbed).is_ok(),
                "T + A became singular despite ‖A‖₁ < 1/‖T⁻¹‖₁"
            );
            tested += 1;
        }
    }

    #[test]
    fn eigenvalue_check_examples() {
        let swap = mq(vec![vec![0, 1], vec![1, 0]]);
        assert!(eigenvalue_check(&swap, &qi(1)).unwrap());
        assert!(eigenvalue_check(&swap, &qi(-1)).unwrap());
        assert!(!eigenvalue_check(&swap, &qi(2)).unwrap());
        let id = Matrix::<Rational>::identity(2);
        assert!(eigenvalue_check(&id, &qi(1)).unwrap());

        // |α| ≤ ‖A‖₁ for any rational eigenvalue.
        let a = mq(vec![vec![2, 1], vec![1, 2]]);
        for alpha in [qi(1), qi(3)] {
            assert!(eigenvalue_check(&a, &alpha).unwrap());
            assert!(alpha.abs() <= opnorm_l1_exact(&a));
        }
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_exact(&Matrix::<Rational>::identity(4)).unwrap(), qi(1));
        assert_eq!(det_exact(&mq(vec![vec![1, 2], vec![3, 4]])).unwrap(), qi(-2));
        assert_eq!(det_exact(&mq(vec![vec![0, 1], vec![0, 0]])).unwrap(), qi(0));
        let m = Matrix::from_rows(vec![
            vec![q(1, 2), q(1, 3)],
            vec![q(1, 5), q(1, 7)],
        ])
        .unwrap();
        assert_eq!(det_exact(&m).unwrap(), q(1, 14) - q(1, 15));
        // Pivoting path: leading zero needs a row swap.
        let m = mq(vec![vec![0, 2, 1], vec![1, 0, 0], vec![0, 0, 3]]);
        assert_eq!(det_exact(&m).unwrap(), qi(-6));
        assert!(matches!(
            det_exact(&mq(vec![vec![1, 2]])),
            Err(Error::NonSquareMatrix { rows: 1, cols: 2 })
        ));
    }

    #[test]
    fn unimodular_examples() {
        assert!(unimodular_check(&mq(vec![vec![1, 1], vec![0, 1]])).unwrap());
        assert!(!unimodular_check(&mq(vec![vec![2, 0], vec![0, 1]])).unwrap());
        assert!(unimodular_check(&Matrix::<Rational>::identity(3)).unwrap());
        let half = Matrix::from_rows(vec![vec![q(1, 2), qi(0)], vec![qi(0), qi(2)]]).unwrap();
        assert!(!unimodular_check(&half).unwrap());
    }

    #[test]
    fn padic_isometry_examples() {
        let two = Prime::new(2).unwrap();
        assert!(padic_isometry_check(&Matrix::<Rational>::identity(3), two).unwrap());
        assert!(!padic_isometry_check(&mq(vec![vec![2, 0], vec![0, 1]]), two).unwrap());
        let m = Matrix::from_rows(vec![vec![q(1, 2), qi(0)], vec![qi(0), qi(2)]]).unwrap();
        // det = 1 but the 1/2 entry is not a 2-adic integer.
        assert!(!padic_isometry_check(&m, two).unwrap());
        // An isometry that is not unimodular over Z: entries in Z₂ with
        // odd determinant.
        let m = mq(vec![vec![3, 0], vec![0, 1]]);
        assert!(padic_isometry_check(&m, two).unwrap());
        assert!(!unimodular_check(&m).unwrap());
    }

    #[test]
    fn matrix_shape_errors() {
        assert!(matches!(
            Matrix::new(2, 2, vec![qi(1); 3]),
            Err(Error::LengthMismatch {
                expected: 4,
                got: 3
            })
        ));
        let rect = Matrix::new(1, 2, vec![qi(1), qi(2)]).unwrap();
        assert!(matches!(
            rect.require_square(),
            Err(Error::NonSquareMatrix { rows: 1, cols: 2 })
        ));
        let a = Matrix::<Rational>::identity(2);
        let b = Matrix::<Rational>::identity(3);
        assert!(matches!(
            a.mul(&b),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }
}
