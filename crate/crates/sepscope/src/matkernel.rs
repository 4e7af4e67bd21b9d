//! Dense complex-matrix primitives: Hermitian eigendecomposition, singular
//! values, Kronecker products, trace and Hilbert-Schmidt norms, and partial
//! transposes over a fixed bipartite index convention.
//!
//! The composite index convention is row-major and A-major throughout: the
//! basis vector |m>|mu> of a dA x dB system sits at position m*dB + mu, with
//! all indices 0-based. Every operation in this crate assumes that mapping.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative accuracy target for the Jacobi eigensolver: iteration stops when
/// the off-diagonal Frobenius mass falls below this factor times the
/// Hilbert-Schmidt norm of the input.
pub const JACOBI_RELATIVE_TOL: f64 = 1e-14;

/// Sweep cap for the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Hermiticity acceptance: |M - M^dag|_max <= this factor * max(1, |M|_max).
/// Inputs inside the tolerance are symmetrized before eigensolving.
pub const HERMITICITY_RELATIVE_TOL: f64 = 1e-10;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of side `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from row-major data. Panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length mismatch");
        ComplexMatrix { rows, cols, data }
    }

    /// Builds a matrix entry by entry from a closure over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// Convenience constructor from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "row-major data length mismatch");
        ComplexMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entry slice.
    #[inline]
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn add_assign_at(&mut self, r: usize, c: usize, v: Complex64) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] += v;
    }

    /// True when every entry is finite.
    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        ComplexMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    /// Plain transpose (no conjugation).
    pub fn transpose(&self) -> Self {
        ComplexMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Matrix sum. Panics on shape mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Matrix difference. Panics on shape mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, s: Complex64) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Real scalar multiple.
    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    /// Matrix product. Panics on inner-dimension mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Largest entry magnitude (entrywise max norm).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Row-major flattening vec(M) = (m_11, ..., m_1c, m_21, ...).
    pub fn vec_row_major(&self) -> Vec<Complex64> {
        self.data.clone()
    }

    /// Largest deviation from Hermitian symmetry, max |M[i,j] - conj(M[j,i])|.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        dev
    }
}

/// Local dimensions of a bipartite system, with the fixed composite-index
/// mapping (m, mu) -> m*dB + mu (0-based, A-major).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteIndex {
    dim_a: usize,
    dim_b: usize,
}

impl BipartiteIndex {
    /// Panics unless both local dimensions are at least 1.
    pub fn new(dim_a: usize, dim_b: usize) -> Self {
        assert!(dim_a >= 1 && dim_b >= 1, "local dimensions must be >= 1");
        BipartiteIndex { dim_a, dim_b }
    }

    #[inline]
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    #[inline]
    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Total dimension dA*dB of the composite space.
    #[inline]
    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }

    /// Composite index of |m>|mu>.
    #[inline]
    pub fn composite(&self, m: usize, mu: usize) -> usize {
        debug_assert!(m < self.dim_a && mu < self.dim_b);
        m * self.dim_b + mu
    }

    /// Inverse of `composite`.
    #[inline]
    pub fn split(&self, idx: usize) -> (usize, usize) {
        debug_assert!(idx < self.total());
        (idx / self.dim_b, idx % self.dim_b)
    }

    fn check_square_side(&self, m: &ComplexMatrix) -> Result<()> {
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() != self.total() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "matrix side {} does not equal dA*dB = {}*{} = {}",
                    m.rows(),
                    self.dim_a,
                    self.dim_b,
                    self.total()
                ),
            });
        }
        Ok(())
    }
}

/// Nonnegative reals sorted descending; the carrier for singular spectra.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularValues {
    values: Vec<f64>,
}

impl SingularValues {
    /// Sorts descending. Panics on a negative or non-finite input value;
    /// callers clamp tiny negatives before constructing.
    pub fn new(mut values: Vec<f64>) -> Self {
        assert!(
            values.iter().all(|v| v.is_finite() && *v >= 0.0),
            "singular values must be finite and nonnegative"
        );
        values.sort_by(|a, b| b.partial_cmp(a).expect("finite values compare"));
        SingularValues { values }
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn sum_sq(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum()
    }
}

/// Validates squareness and Hermiticity, then returns the symmetrized copy
/// (M + M^dag)/2 that the eigensolver actually runs on.
fn checked_hermitian(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let tolerance = HERMITICITY_RELATIVE_TOL * f64::max(1.0, m.max_abs());
    let deviation = m.hermiticity_deviation();
    if deviation > tolerance {
        return Err(Error::NotHermitian {
            deviation,
            tolerance,
        });
    }
    Ok(m.add(&m.dagger()).scale_re(0.5))
}

/// Eigenvalues of a Hermitian matrix, descending.
///
/// Cyclic Jacobi iteration; accepts inputs within the Hermiticity tolerance
/// and symmetrizes them first. Fails with `NoConvergence` only if the sweep
/// cap is hit, which does not happen for matrices of desk-scale size.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let (vals, _) = jacobi_eigen(checked_hermitian(m)?, false)?;
    Ok(vals)
}

/// Full Hermitian eigendecomposition: eigenvalues descending and the unitary
/// whose k-th column is the k-th eigenvector, so M = V diag(vals) V^dag.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let (vals, vecs) = jacobi_eigen(checked_hermitian(m)?, true)?;
    Ok((vals, vecs.expect("eigenvectors requested")))
}

/// Cyclic Jacobi on a Hermitian matrix. Consumes its (already symmetrized)
/// input. Optionally accumulates the eigenvector matrix.
fn jacobi_eigen(
    mut a: ComplexMatrix,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = a.rows();
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    // Convergence is measured against the Hilbert-Schmidt norm of the input.
    let target = JACOBI_RELATIVE_TOL * hs_norm(&a);
    let mut converged = false;

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() <= target {
            if converged {
                return Ok(finish_jacobi(a, v));
            }
            // One sweep past the threshold. Convergence is quadratic, so the
            // extra sweep pushes residual off-diagonal mass near the rounding
            // floor; zero eigenvalues then survive the square root taken by
            // `singular_values` without a sqrt(tolerance)-sized error.
            converged = true;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a.get(p, q);
                let gn = g.norm();
                if gn == 0.0 {
                    continue;
                }
                // Unitary 2x2 rotation U = [[c, -s e^{i phi}], [s e^{-i phi}, c]]
                // with phi = arg g, chosen to zero the (p,q) entry of U^dag A U.
                let alpha = a.get(p, p).re;
                let beta = a.get(q, q).re;
                let phase = g / gn;
                let tau = (alpha - beta) / (2.0 * gn);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    let sign = if tau > 0.0 { 1.0 } else { -1.0 };
                    1.0 / (tau + sign * (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sp = phase.scale(s); // s e^{i phi}
                let spc = sp.conj(); // s e^{-i phi}

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    let new_kp = akp.scale(c) + akq * spc;
                    let new_kq = akq.scale(c) - akp * sp;
                    a.set(k, p, new_kp);
                    a.set(k, q, new_kq);
                    a.set(p, k, new_kp.conj());
                    a.set(q, k, new_kq.conj());
                }
                let app = c * c * alpha + 2.0 * c * s * gn + s * s * beta;
                let aqq = s * s * alpha - 2.0 * c * s * gn + c * c * beta;
                a.set(p, p, Complex64::new(app, 0.0));
                a.set(q, q, Complex64::new(aqq, 0.0));
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));

                if let Some(vm) = v.as_mut() {
                    // V <- V U, same column transform as A's.
                    for k in 0..n {
                        let vkp = vm.get(k, p);
                        let vkq = vm.get(k, q);
                        vm.set(k, p, vkp.scale(c) + vkq * spc);
                        vm.set(k, q, vkq.scale(c) - vkp * sp);
                    }
                }
            }
        }
    }

    // One final acceptance check: the cap may land exactly on convergence.
    let mut off = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            off += 2.0 * a.get(p, q).norm_sqr();
        }
    }
    if off.sqrt() <= target {
        return Ok(finish_jacobi(a, v));
    }
    Err(Error::NoConvergence {
        sweeps: JACOBI_MAX_SWEEPS,
    })
}

fn finish_jacobi(
    a: ComplexMatrix,
    v: Option<ComplexMatrix>,
) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = a.rows();
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));
    let vals = order.iter().map(|&i| diag[i]).collect();
    let vecs = v.map(|vm| ComplexMatrix::from_fn(n, n, |r, c| vm.get(r, order[c])));
    (vals, vecs)
}

/// Singular values of an arbitrary matrix, descending.
///
/// Computed as square roots of the eigenvalues of the smaller Gram matrix
/// (M^dag M or M M^dag). Forming the Gram squares the spectrum, so exact
/// zeros come back as noise of size up to ~n*eps*lambda_max, of either
/// sign. The whole band is flattened to zero before the square root:
/// clamping only its negative half would bias trace norms upward by
/// sqrt(noise) per zero.
pub fn singular_values(m: &ComplexMatrix) -> Result<SingularValues> {
    assert!(m.rows() > 0 && m.cols() > 0, "matrix must be non-empty");
    let gram = if m.rows() >= m.cols() {
        m.dagger().mul(m)
    } else {
        m.mul(&m.dagger())
    };
    let side = gram.rows() as f64;
    let (eigs, _) = jacobi_eigen(gram, false)?;
    let floor = side * f64::EPSILON * eigs.first().copied().unwrap_or(0.0).max(0.0);
    Ok(SingularValues::new(
        eigs.into_iter()
            .map(|e| if e <= floor { 0.0 } else { e.sqrt() })
            .collect(),
    ))
}

/// Trace norm: the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.sum())
}

/// Hilbert-Schmidt (Frobenius) norm.
pub fn hs_norm(m: &ComplexMatrix) -> f64 {
    m.data().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Kronecker product with (A kron B)[(m mu),(n nu)] = A[m,n] B[mu,nu],
/// matching the composite-index convention of `BipartiteIndex`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for m in 0..a.rows() {
        for n in 0..a.cols() {
            let amn = a.get(m, n);
            if amn.norm_sqr() == 0.0 {
                continue;
            }
            for mu in 0..b.rows() {
                for nu in 0..b.cols() {
                    out.set(m * b.rows() + mu, n * b.cols() + nu, amn * b.get(mu, nu));
                }
            }
        }
    }
    out
}

/// Partial transpose on subsystem B: result[(m mu),(n nu)] = M[(m nu),(n mu)].
pub fn partial_transpose_b(m: &ComplexMatrix, idx: BipartiteIndex) -> Result<ComplexMatrix> {
    idx.check_square_side(m)?;
    let (da, db) = (idx.dim_a(), idx.dim_b());
    let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
    for am in 0..da {
        for an in 0..da {
            for mu in 0..db {
                for nu in 0..db {
                    out.set(
                        idx.composite(am, mu),
                        idx.composite(an, nu),
                        m.get(idx.composite(am, nu), idx.composite(an, mu)),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Partial transpose on subsystem A: result[(m mu),(n nu)] = M[(n mu),(m nu)].
pub fn partial_transpose_a(m: &ComplexMatrix, idx: BipartiteIndex) -> Result<ComplexMatrix> {
    idx.check_square_side(m)?;
    let (da, db) = (idx.dim_a(), idx.dim_b());
    let mut out = ComplexMatrix::zeros(m.rows(), m.cols());
    for am in 0..da {
        for an in 0..da {
            for mu in 0..db {
                for nu in 0..db {
                    out.set(
                        idx.composite(am, mu),
                        idx.composite(an, nu),
                        m.get(idx.composite(an, mu), idx.composite(am, nu)),
                    );
                }
            }
        }
    }
    Ok(out)
}
