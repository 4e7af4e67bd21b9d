//! Realignment maps: the row variant rho -> rho^R, the column variant
//! rho -> rho^{R^c}, flip (swap) operators, the pure-state shortcut
//! rho_psi^R = D kron conj(D), and tensor-sum assembly.
//!
//! For a dA x dB system, the row realignment of a square matrix M of side
//! dA*dB is the dA^2 x dB^2 matrix Z with Z[(m n),(mu nu)] = M[(m mu),(n nu)],
//! composite indices as in `BipartiteIndex` ((m n) = m*dA + n on rows,
//! (mu nu) = mu*dB + nu on columns). It is a permutation of entries, so the
//! Hilbert-Schmidt norm is preserved exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matkernel::{hs_norm, kron, BipartiteIndex, ComplexMatrix};

/// Which realignment was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Row,
    Column,
}

/// A realigned operator together with its provenance.
///
/// Both variants have shape dA^2 x dB^2: the column variant permutes rows by
/// (m n) -> (n m) and columns by (mu nu) -> (nu mu) relative to the row
/// variant, which is exactly conjugation by flip operators, so the shape is
/// unchanged. The two variants share singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct RealignedOperator {
    pub matrix: ComplexMatrix,
    pub variant: Variant,
    pub source_dims: BipartiteIndex,
}

/// Coefficient matrix D of a pure state |psi> = sum d_{m mu} |m>|mu>, with
/// D[m, mu] = d_{m mu}; |psi> is vec(D) under the composite-index convention.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    matrix: ComplexMatrix,
}

/// Unit-norm acceptance window for coefficient matrices.
pub const NORMALIZATION_TOL: f64 = 1e-10;

impl CoefficientMatrix {
    /// Wraps a dA x dB amplitude matrix; requires unit Hilbert-Schmidt norm.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let norm = hs_norm(&matrix);
        if (norm - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized {
                norm,
                tolerance: NORMALIZATION_TOL,
            });
        }
        Ok(CoefficientMatrix { matrix })
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> BipartiteIndex {
        BipartiteIndex::new(self.matrix.rows(), self.matrix.cols())
    }

    /// The state vector vec(D) in the composite basis.
    pub fn state_vector(&self) -> Vec<Complex64> {
        self.matrix.vec_row_major()
    }
}

/// Row realignment Z[(m n),(mu nu)] = M[(m mu),(n nu)].
pub fn realign_row(m: &ComplexMatrix, idx: BipartiteIndex) -> Result<RealignedOperator> {
    check_input(m, idx)?;
    let (da, db) = (idx.dim_a(), idx.dim_b());
    let mut z = ComplexMatrix::zeros(da * da, db * db);
    for am in 0..da {
        for an in 0..da {
            for mu in 0..db {
                for nu in 0..db {
                    z.set(
                        am * da + an,
                        mu * db + nu,
                        m.get(idx.composite(am, mu), idx.composite(an, nu)),
                    );
                }
            }
        }
    }
    Ok(RealignedOperator {
        matrix: z,
        variant: Variant::Row,
        source_dims: idx,
    })
}

/// Column realignment, built literally as the transpose of the tilde matrix
/// with tilde[(nu mu),(n m)] = M[(m mu),(n nu)]. The flip identity
/// rho^R = F_A rho^{R^c} F_B is left to tests as an independent cross-check.
pub fn realign_column(m: &ComplexMatrix, idx: BipartiteIndex) -> Result<RealignedOperator> {
    check_input(m, idx)?;
    let (da, db) = (idx.dim_a(), idx.dim_b());
    let mut tilde = ComplexMatrix::zeros(db * db, da * da);
    for am in 0..da {
        for an in 0..da {
            for mu in 0..db {
                for nu in 0..db {
                    tilde.set(
                        nu * db + mu,
                        an * da + am,
                        m.get(idx.composite(am, mu), idx.composite(an, nu)),
                    );
                }
            }
        }
    }
    Ok(RealignedOperator {
        matrix: tilde.transpose(),
        variant: Variant::Column,
        source_dims: idx,
    })
}

/// Flip (swap) operator on a d x d bipartite space: F|x>|y> = |y>|x>.
/// Hermitian, unitary, and its own inverse.
pub fn flip_operator(d: usize) -> ComplexMatrix {
    assert!(d >= 1, "flip operator needs dimension >= 1");
    let mut f = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            f.set(b * d + a, a * d + b, Complex64::new(1.0, 0.0));
        }
    }
    f
}

/// Pure-state shortcut: the row realignment of |psi><psi| is D kron conj(D).
pub fn realign_pure(d: &CoefficientMatrix) -> RealignedOperator {
    RealignedOperator {
        matrix: kron(d.matrix(), &d.matrix().conj()),
        variant: Variant::Row,
        source_dims: d.dims(),
    }
}

/// Realignment of a tensor sum sum_k A_k kron B_k without assembling it:
/// the result is sum_k vec(A_k) vec(B_k)^T, with row-major vec and a plain
/// (unconjugated) transpose on the B factor.
pub fn realign_from_tensor_sum(
    terms: &[(ComplexMatrix, ComplexMatrix)],
) -> Result<RealignedOperator> {
    let (a0, b0) = terms.first().ok_or(Error::EmptyTermList)?;
    let (da, db) = (a0.rows(), b0.rows());
    for (a, b) in terms {
        if !a.is_square() || !b.is_square() || a.rows() != da || b.rows() != db {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "tensor-sum terms must share square shapes {da}x{da} and {db}x{db}, \
                     found {}x{} and {}x{}",
                    a.rows(),
                    a.cols(),
                    b.rows(),
                    b.cols()
                ),
            });
        }
    }
    let mut z = ComplexMatrix::zeros(da * da, db * db);
    for (a, b) in terms {
        let va = a.vec_row_major();
        let vb = b.vec_row_major();
        for (r, &ar) in va.iter().enumerate() {
            if ar.norm_sqr() == 0.0 {
                continue;
            }
            for (c, &bc) in vb.iter().enumerate() {
                z.add_assign_at(r, c, ar * bc);
            }
        }
    }
    Ok(RealignedOperator {
        matrix: z,
        variant: Variant::Row,
        source_dims: BipartiteIndex::new(da, db),
    })
}

fn check_input(m: &ComplexMatrix, idx: BipartiteIndex) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() != idx.total() {
        return Err(Error::DimensionMismatch {
            context: format!(
                "matrix side {} does not equal dA*dB = {}",
                m.rows(),
                idx.total()
            ),
        });
    }
    Ok(())
}
