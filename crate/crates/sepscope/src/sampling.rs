//! Seeded random ensembles: density matrices, pure states, symmetric
//! states, product mixtures, and unitaries. Everything is driven by an
//! explicit stream cipher seed, so verification runs and tests are
//! reproducible bit for bit.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::criteria::DensityMatrix;
use crate::error::Result;
use crate::matkernel::{hermitian_eigen, kron, BipartiteIndex, ComplexMatrix};
use crate::realign::CoefficientMatrix;

/// Deterministic sampler over a ChaCha stream.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn seeded(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw from [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        let u = 1.0 - self.uniform();
        let v = self.uniform();
        (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
    }

    pub fn complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal())
    }

    /// Matrix of independent standard complex normal entries.
    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows * cols {
            data.push(self.complex_normal());
        }
        ComplexMatrix::from_vec(rows, cols, data)
    }

    /// Nonnegative weights summing to 1.
    pub fn weights(&mut self, n: usize) -> Vec<f64> {
        let mut w: Vec<f64> = (0..n).map(|_| self.uniform() + 1e-3).collect();
        let total: f64 = w.iter().sum();
        for x in &mut w {
            *x /= total;
        }
        w
    }

    /// Full-rank random density matrix G G^dag / tr on dA x dB.
    pub fn density_matrix(&mut self, da: usize, db: usize) -> Result<DensityMatrix> {
        let n = da * db;
        let g = self.ginibre(n, n);
        let h = g.mul(&g.dagger());
        let rho = h.scale_re(1.0 / h.trace().re);
        DensityMatrix::new(rho, BipartiteIndex::new(da, db))
    }

    /// Random unit-norm coefficient matrix (a Haar-like pure state).
    pub fn pure_coefficients(&mut self, da: usize, db: usize) -> Result<CoefficientMatrix> {
        let g = self.ginibre(da, db);
        let norm = crate::matkernel::hs_norm(&g);
        CoefficientMatrix::new(g.scale_re(1.0 / norm))
    }

    /// Random state satisfying rho = F rho = rho F: a Ginibre density matrix
    /// compressed to the flip's +1 eigenspace by P = (I + F)/2.
    pub fn symmetric_density(&mut self, d: usize) -> Result<DensityMatrix> {
        let n = d * d;
        let f = crate::realign::flip_operator(d);
        let p = ComplexMatrix::identity(n).add(&f).scale_re(0.5);
        let g = self.ginibre(n, n);
        let h = p.mul(&g.mul(&g.dagger())).mul(&p);
        let rho = h.scale_re(1.0 / h.trace().re);
        DensityMatrix::new(rho, BipartiteIndex::new(d, d))
    }

    /// Convex mixture of k random product states, a separable state by
    /// construction.
    pub fn product_mixture(&mut self, da: usize, db: usize, k: usize) -> Result<DensityMatrix> {
        let w = self.weights(k);
        let n = da * db;
        let mut acc = ComplexMatrix::zeros(n, n);
        for weight in w {
            let ga = self.ginibre(da, da);
            let ha = ga.mul(&ga.dagger());
            let a = ha.scale_re(1.0 / ha.trace().re);
            let gb = self.ginibre(db, db);
            let hb = gb.mul(&gb.dagger());
            let b = hb.scale_re(1.0 / hb.trace().re);
            acc = acc.add(&kron(&a, &b).scale_re(weight));
        }
        DensityMatrix::new(acc, BipartiteIndex::new(da, db))
    }

    /// Random unitary: the eigenvector matrix of a random Hermitian draw.
    pub fn unitary(&mut self, n: usize) -> Result<ComplexMatrix> {
        let g = self.ginibre(n, n);
        let h = g.add(&g.dagger()).scale_re(0.5);
        let (_, v) = hermitian_eigen(&h)?;
        Ok(v)
    }
}
