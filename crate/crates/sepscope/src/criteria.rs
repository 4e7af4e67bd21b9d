//! Separability verdicts: the realignment criterion, the computable cross
//! norm via the operator Schmidt spectrum, the positive-partial-transpose
//! test, pure-state shortcuts, and the flip-symmetric equivalence.
//!
//! Both criteria are necessary conditions for separability only, so the
//! verdict vocabulary is {entangled, inconclusive} and never "separable":
//! a norm at most 1 or a positive partial transpose proves nothing.

use crate::error::{Error, Result};
use crate::matkernel::{
    hermitian_eigenvalues, hs_norm, partial_transpose_a, partial_transpose_b, singular_values,
    BipartiteIndex, ComplexMatrix,
};
use crate::realign::{flip_operator, realign_row};

/// A norm excess beyond 1 + this tolerance certifies entanglement.
pub const RCCN_TOLERANCE: f64 = 1e-9;

/// A partial-transpose eigenvalue below minus this tolerance certifies
/// entanglement.
pub const PPT_TOLERANCE: f64 = 1e-9;

/// Acceptance window for density-matrix invariants (trace, positivity).
pub const DENSITY_TOL: f64 = 1e-10;

/// Entrywise tolerance for the flip-symmetry test, relative to
/// max(1, largest entry).
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Schmidt coefficients below this factor times the largest one count as
/// zero when reporting the Schmidt rank.
pub const SCHMIDT_RANK_CUTOFF: f64 = 1e-12;

/// A validated bipartite density matrix: Hermitian, unit trace, positive
/// semidefinite, with recorded local dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: BipartiteIndex,
}

impl DensityMatrix {
    /// Validates all invariants. The input is symmetrized to (M + M^dag)/2
    /// if it is within the Hermiticity tolerance, so file inputs with
    /// rounding noise are accepted and cleaned.
    pub fn new(matrix: ComplexMatrix, dims: BipartiteIndex) -> Result<Self> {
        if matrix.rows() != dims.total() || matrix.cols() != dims.total() {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "matrix is {}x{}, dims give dA*dB = {}",
                    matrix.rows(),
                    matrix.cols(),
                    dims.total()
                ),
            });
        }
        if !matrix.all_finite() {
            return Err(Error::Validation {
                invariant: "finite",
                detail: "matrix contains NaN or infinite entries".into(),
            });
        }
        // Eigensolving also enforces Hermiticity (within kernel tolerance).
        let eigs = hermitian_eigenvalues(&matrix)?;
        let min_eig = eigs.last().copied().unwrap_or(0.0);
        if min_eig < -DENSITY_TOL {
            return Err(Error::Validation {
                invariant: "positive-semidefinite",
                detail: format!("minimum eigenvalue {min_eig:.3e}"),
            });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(Error::Validation {
                invariant: "unit-trace",
                detail: format!("trace {:.12} + {:.3e}i", tr.re, tr.im),
            });
        }
        let matrix = matrix.add(&matrix.dagger()).scale_re(0.5);
        Ok(DensityMatrix { matrix, dims })
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    #[inline]
    pub fn dims(&self) -> BipartiteIndex {
        self.dims
    }

    /// Purity Tr(rho^2), which equals the squared Hilbert-Schmidt norm.
    pub fn purity(&self) -> f64 {
        let n = hs_norm(&self.matrix);
        n * n
    }
}

/// Criterion outcome. Both tests are one-sided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Entangled,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Entangled => write!(f, "entangled"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// Operator Schmidt coefficients delta_1 >= delta_2 >= ... of a state: the
/// singular values of its row realignment, with their sum (the trace norm of
/// rho^R, equal to the computable cross norm) and sum of squares (the purity).
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    deltas: Vec<f64>,
    sum: f64,
    sum_sq: f64,
}

impl SchmidtSpectrum {
    #[inline]
    pub fn deltas(&self) -> &[f64] {
        &self.deltas
    }

    #[inline]
    pub fn sum(&self) -> f64 {
        self.sum
    }

    #[inline]
    pub fn sum_sq(&self) -> f64 {
        self.sum_sq
    }

    /// Number of coefficients above the rank cutoff.
    pub fn schmidt_rank(&self) -> usize {
        let head = self.deltas.first().copied().unwrap_or(0.0);
        if head == 0.0 {
            return 0;
        }
        self.deltas
            .iter()
            .filter(|&&d| d > SCHMIDT_RANK_CUTOFF * head)
            .count()
    }
}

/// Tolerances a report was produced with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub rccn_tolerance: f64,
    pub ppt_tolerance: f64,
}

/// Everything the criteria say about one state.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    pub realignment_trace_norm: f64,
    pub ccn: f64,
    pub ppt_min_eigenvalue: f64,
    pub is_symmetric: bool,
    pub rccn_verdict: Verdict,
    pub ppt_verdict: Verdict,
    pub thresholds_used: Thresholds,
}

/// Operator Schmidt spectrum of a state: singular values of rho^R.
pub fn schmidt_spectrum(rho: &DensityMatrix) -> Result<SchmidtSpectrum> {
    let z = realign_row(rho.matrix(), rho.dims())?;
    let sv = singular_values(&z.matrix)?;
    Ok(SchmidtSpectrum {
        sum: sv.sum(),
        sum_sq: sv.sum_sq(),
        deltas: sv.values().to_vec(),
    })
}

/// Computable cross norm of a state: the sum of its operator Schmidt
/// coefficients, which equals the trace norm of the realignment.
pub fn ccn(rho: &DensityMatrix) -> Result<f64> {
    Ok(schmidt_spectrum(rho)?.sum())
}

/// Realignment criterion: separable states satisfy |rho^R|_Tr <= 1, so a
/// larger norm certifies entanglement. Returns the verdict and the norm.
pub fn rccn_test(rho: &DensityMatrix) -> Result<(Verdict, f64)> {
    let norm = ccn(rho)?;
    let verdict = if norm > 1.0 + RCCN_TOLERANCE {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok((verdict, norm))
}

/// Partial-transpose criterion: separable states have rho^{T_B} >= 0, so a
/// negative eigenvalue certifies entanglement. Returns the verdict and the
/// minimum eigenvalue of the partial transpose.
pub fn ppt_test(rho: &DensityMatrix) -> Result<(Verdict, f64)> {
    let tb = partial_transpose_b(rho.matrix(), rho.dims())?;
    let eigs = hermitian_eigenvalues(&tb)?;
    let min_eig = eigs.last().copied().unwrap_or(0.0);
    let verdict = if min_eig < -PPT_TOLERANCE {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok((verdict, min_eig))
}

/// Cross norm of a pure state from its vector Schmidt coefficients:
/// (sum_k lambda_k)^2. The coefficients must satisfy sum lambda_k^2 = 1.
pub fn pure_state_ccn_from_vector(lambdas: &[f64]) -> Result<f64> {
    let sum_sq: f64 = lambdas.iter().map(|l| l * l).sum();
    if (sum_sq - 1.0).abs() > DENSITY_TOL {
        return Err(Error::NotNormalized {
            norm: sum_sq.sqrt(),
            tolerance: DENSITY_TOL,
        });
    }
    let s: f64 = lambdas.iter().sum();
    Ok(s * s)
}

/// Flip symmetry test: true iff rho = F rho = rho F entrywise within
/// tolerance. Requires equal local dimensions.
pub fn is_symmetric(rho: &DensityMatrix) -> Result<bool> {
    let dims = rho.dims();
    if dims.dim_a() != dims.dim_b() {
        return Err(Error::DimensionMismatch {
            context: format!(
                "flip symmetry needs dA = dB, found {} and {}",
                dims.dim_a(),
                dims.dim_b()
            ),
        });
    }
    let f = flip_operator(dims.dim_a());
    let m = rho.matrix();
    let tol = SYMMETRY_TOL * f64::max(1.0, m.max_abs());
    let left = f.mul(m).sub(m).max_abs();
    let right = m.mul(&f).sub(m).max_abs();
    Ok(left <= tol && right <= tol)
}

/// For symmetric states the flipped realignment equals the partial transpose
/// on A: F rho^R = rho^{T_A}. Returns the Hilbert-Schmidt residual of that
/// identity, which is at most ~1e-10 for any state passing `is_symmetric`.
pub fn symmetric_identity_check(rho: &DensityMatrix) -> Result<f64> {
    if !is_symmetric(rho)? {
        let dims = rho.dims();
        let f = flip_operator(dims.dim_a());
        let m = rho.matrix();
        let deviation = f.mul(m).sub(m).max_abs().max(m.mul(&f).sub(m).max_abs());
        return Err(Error::NotSymmetric { deviation });
    }
    let dims = rho.dims();
    let f = flip_operator(dims.dim_a());
    let z = realign_row(rho.matrix(), dims)?;
    let ta = partial_transpose_a(rho.matrix(), dims)?;
    Ok(hs_norm(&f.mul(&z.matrix).sub(&ta)))
}

/// Runs every criterion once and aggregates the scalars and verdicts.
/// The symmetric flag is false for unequal local dimensions, where the flip
/// symmetry is undefined.
pub fn full_report(rho: &DensityMatrix) -> Result<CriterionReport> {
    let spectrum = schmidt_spectrum(rho)?;
    let norm = spectrum.sum();
    let (ppt_verdict, ppt_min_eigenvalue) = ppt_test(rho)?;
    let symmetric = if rho.dims().dim_a() == rho.dims().dim_b() {
        is_symmetric(rho)?
    } else {
        false
    };
    let rccn_verdict = if norm > 1.0 + RCCN_TOLERANCE {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(CriterionReport {
        realignment_trace_norm: norm,
        ccn: norm,
        ppt_min_eigenvalue,
        is_symmetric: symmetric,
        rccn_verdict,
        ppt_verdict,
        thresholds_used: Thresholds {
            rccn_tolerance: RCCN_TOLERANCE,
            ppt_tolerance: PPT_TOLERANCE,
        },
    })
}
