//! Constructors for the state families the criteria are exercised on: the
//! 3x3 alpha mixture and its tail-padded PPT variant, the four-weight 4x4
//! mixtures, Werner states with and without diagonal tails, isotropic-like
//! states, plus generic pure-state and convex-mixture builders.
//!
//! Infinite diagonal tails are realized as geometric distributions
//! p_i proportional to r^(i - start), truncated at the local dimension and
//! renormalized to total weight 1. The renormalized tail keeps exact unit
//! realignment trace norm at every finite dimension, so truncation adds no
//! convergence error to the norms reported here.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::criteria::DensityMatrix;
use crate::error::{Error, Result};
use crate::matkernel::{BipartiteIndex, ComplexMatrix};
use crate::realign::CoefficientMatrix;

/// Mixture weights must sum to 1 within this tolerance.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Entries of a disjoint-support component may leak at most this much into
/// the protected block.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Tail ratio used when a spec does not set one.
pub const DEFAULT_TAIL_RATIO: f64 = 0.5;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Rank-1 projector |psi><psi| from a coefficient matrix, psi = vec(D).
pub fn pure_from_coefficients(coeffs: &CoefficientMatrix) -> Result<DensityMatrix> {
    let psi = coeffs.state_vector();
    let rho = ComplexMatrix::from_fn(psi.len(), psi.len(), |r, c| psi[r] * psi[c].conj());
    DensityMatrix::new(rho, coeffs.dims())
}

/// The alpha family on d x d: (2/7)|w><w| + (alpha/7) sigma_plus +
/// ((5 - alpha)/7) sigma_minus, supported on the 3 x 3 corner block.
/// |w> is the uniform superposition of |00>, |11>, |22|; sigma_plus and
/// sigma_minus are the uniform diagonal mixtures of |i, i+1> and |i+1, i>
/// (indices mod 3).
pub fn rho_alpha(alpha: f64, d: usize) -> Result<DensityMatrix> {
    if !(2.0..=5.0).contains(&alpha) {
        return Err(Error::ParamOutOfRange {
            name: "alpha",
            value: alpha,
            range: "[2, 5]",
        });
    }
    if d < 3 {
        return Err(Error::DimensionTooSmall { dim: d, min: 3 });
    }
    let idx = BipartiteIndex::new(d, d);
    let mut m = ComplexMatrix::zeros(idx.total(), idx.total());
    let w = 2.0 / 21.0;
    for i in 0..3 {
        for j in 0..3 {
            m.set(idx.composite(i, i), idx.composite(j, j), re(w));
        }
    }
    for i in 0..3 {
        let up = idx.composite(i, (i + 1) % 3);
        m.add_assign_at(up, up, re(alpha / 21.0));
        let down = idx.composite((i + 1) % 3, i);
        m.add_assign_at(down, down, re((5.0 - alpha) / 21.0));
    }
    DensityMatrix::new(m, idx)
}

/// Closed-form realignment trace norm of `rho_alpha`:
/// 19/21 + (2/21) sqrt(19 - 15 alpha + 3 alpha^2).
pub fn rho_alpha_trace_norm(alpha: f64) -> f64 {
    19.0 / 21.0 + (2.0 / 21.0) * (19.0 - 15.0 * alpha + 3.0 * alpha * alpha).sqrt()
}

/// Diagonal separable tail supported on {|ii> : start <= i < d} with
/// geometric weights of the given ratio, renormalized to trace 1. Its
/// realignment trace norm is exactly 1 at every truncation.
pub fn sigma_tail(d: usize, start: usize, ratio: f64) -> Result<DensityMatrix> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "r",
            value: ratio,
            range: "(0, 1)",
        });
    }
    if d <= start {
        return Err(Error::DimensionTooSmall {
            dim: d,
            min: start + 1,
        });
    }
    let idx = BipartiteIndex::new(d, d);
    let weights: Vec<f64> = (start..d).map(|i| ratio.powi((i - start) as i32)).collect();
    let total: f64 = weights.iter().sum();
    let mut m = ComplexMatrix::zeros(idx.total(), idx.total());
    for (k, i) in (start..d).enumerate() {
        let ii = idx.composite(i, i);
        m.set(ii, ii, re(weights[k] / total));
    }
    DensityMatrix::new(m, idx)
}

/// Diagonal tail starting at index m, the companion of `werner_mc` inside
/// `rho_eps_c`.
pub fn varrho_tail(d: usize, m: usize, ratio: f64) -> Result<DensityMatrix> {
    sigma_tail(d, m, ratio)
}

/// t rho_alpha + (1 - t) sigma. The two realignments have orthogonal
/// supports, so the trace norm splits as t * norm(rho_alpha) + (1 - t).
pub fn rho_t_alpha(t: f64, alpha: f64, d: usize, ratio: f64) -> Result<DensityMatrix> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::ParamOutOfRange {
            name: "t",
            value: t,
            range: "(0, 1]",
        });
    }
    if !(alpha > 3.0 && alpha <= 4.0) {
        return Err(Error::ParamOutOfRange {
            name: "alpha",
            value: alpha,
            range: "(3, 4]",
        });
    }
    if d < 4 {
        return Err(Error::DimensionTooSmall { dim: d, min: 4 });
    }
    mixture(&[
        (t, rho_alpha(alpha, d)?),
        (1.0 - t, sigma_tail(d, 3, ratio)?),
    ])
}

fn check_four_weights(q: &[f64; 4]) -> Result<()> {
    for (k, &w) in q.iter().enumerate() {
        if !(w >= 0.0) {
            return Err(Error::WeightsInvalid {
                reason: format!("q{} = {w} is negative or not a number", k + 1),
            });
        }
    }
    let sum: f64 = q.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::WeightsInvalid {
            reason: format!("weights sum to {sum}, expected 1"),
        });
    }
    Ok(())
}

/// Four-weight 4x4 mixture q1 rho_1 + ... + q4 rho_4 on d x d, where rho_1
/// projects onto the uniform superposition of |00>..|33> and rho_k for
/// k >= 2 is the uniform diagonal mixture of |i, i + k - 1 mod 4>.
pub fn example39_rho(q: [f64; 4], d: usize) -> Result<DensityMatrix> {
    check_four_weights(&q)?;
    if d < 4 {
        return Err(Error::DimensionTooSmall { dim: d, min: 4 });
    }
    let idx = BipartiteIndex::new(d, d);
    let mut m = ComplexMatrix::zeros(idx.total(), idx.total());
    for i in 0..4 {
        for j in 0..4 {
            m.set(idx.composite(i, i), idx.composite(j, j), re(q[0] / 4.0));
        }
    }
    for k in 1..4 {
        for i in 0..4 {
            let pos = idx.composite(i, (i + k) % 4);
            m.add_assign_at(pos, pos, re(q[k] / 4.0));
        }
    }
    DensityMatrix::new(m, idx)
}

/// Exact realignment trace norm of `example39_rho`. The realignment splits
/// into twelve isolated entries of size q1/4 (contributing 3 q1) and one
/// 4x4 circulant block circ(q1, q2, q3, q4)/4 whose singular values are the
/// discrete-Fourier moduli: with sum(q) = 1 they are 1/4,
/// |q1 - q2 + q3 - q4|/4, and sqrt((q1 - q3)^2 + (q2 - q4)^2)/4 twice.
pub fn example39_trace_norm(q: [f64; 4]) -> f64 {
    let alternating = q[0] - q[1] + q[2] - q[3];
    let paired = ((q[0] - q[2]).powi(2) + (q[1] - q[3]).powi(2)).sqrt();
    3.0 * q[0] + 0.25 * (1.0 + alternating.abs() + 2.0 * paired)
}

/// Pure product projector |4>|4'><4|<4'|, the default disjoint-support
/// component for `example39_rho_t`.
pub fn example39_default_rho0(d: usize) -> Result<DensityMatrix> {
    if d < 5 {
        return Err(Error::DimensionTooSmall { dim: d, min: 5 });
    }
    let idx = BipartiteIndex::new(d, d);
    let mut m = ComplexMatrix::zeros(idx.total(), idx.total());
    let pos = idx.composite(4, 4);
    m.set(pos, pos, re(1.0));
    DensityMatrix::new(m, idx)
}

/// (1 - t) example39_rho + t rho0 for a rho0 supported away from the
/// 4x4 corner block: every matrix element of rho0 on a row or column
/// (i, mu) with i < 4 and mu < 4 must vanish. Disjoint supports make the
/// norm split as (1 - t) norm(rho) + t norm(rho0).
pub fn example39_rho_t(
    q: [f64; 4],
    t: f64,
    rho0: &DensityMatrix,
    d: usize,
) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::ParamOutOfRange {
            name: "t",
            value: t,
            range: "[0, 1]",
        });
    }
    let idx = BipartiteIndex::new(d, d);
    if rho0.dims() != idx {
        return Err(Error::DimensionMismatch {
            context: format!(
                "rho0 has local dims {}x{}, mixture needs {d}x{d}",
                rho0.dims().dim_a(),
                rho0.dims().dim_b()
            ),
        });
    }
    let m0 = rho0.matrix();
    let mut leak: f64 = 0.0;
    for i in 0..4.min(d) {
        for mu in 0..4.min(d) {
            let line = idx.composite(i, mu);
            for c in 0..idx.total() {
                leak = leak.max(m0.get(line, c).norm());
                leak = leak.max(m0.get(c, line).norm());
            }
        }
    }
    if leak > SUPPORT_TOL {
        return Err(Error::SupportOverlap { norm: leak });
    }
    mixture(&[(1.0 - t, example39_rho(q, d)?), (t, rho0.clone())])
}

/// Werner-type state (1/(m^3 - m))((m - c) P_m + (mc - 1) F_m) on d x d,
/// supported on the m x m corner block. P_m is the block identity and F_m
/// the block flip.
pub fn werner_mc(m: usize, c: f64, d: usize) -> Result<DensityMatrix> {
    if m < 3 {
        return Err(Error::ParamOutOfRange {
            name: "m",
            value: m as f64,
            range: "integers >= 3",
        });
    }
    if !(-1.0..=1.0).contains(&c) {
        return Err(Error::ParamOutOfRange {
            name: "c",
            value: c,
            range: "[-1, 1]",
        });
    }
    if d < m {
        return Err(Error::DimensionTooSmall { dim: d, min: m });
    }
    let mf = m as f64;
    let denom = mf * mf * mf - mf;
    let p = (mf - c) / denom;
    let f = (mf * c - 1.0) / denom;
    let idx = BipartiteIndex::new(d, d);
    let mut mat = ComplexMatrix::zeros(idx.total(), idx.total());
    for i in 0..m {
        for j in 0..m {
            mat.add_assign_at(idx.composite(i, j), idx.composite(i, j), re(p));
            mat.add_assign_at(idx.composite(i, j), idx.composite(j, i), re(f));
        }
    }
    DensityMatrix::new(mat, idx)
}

/// Closed-form realignment trace norm of `werner_mc`:
/// 2/m - c for c <= 1/m, and c beyond the kink.
pub fn werner_trace_norm(m: usize, c: f64) -> f64 {
    let mf = m as f64;
    if c <= 1.0 / mf {
        2.0 / mf - c
    } else {
        c
    }
}

/// eps varrho + (1 - eps) werner_mc with the tail starting at index m.
/// For c in [2/m - 1, 0) the result stays non-PPT while the realignment
/// trace norm eps + (1 - eps)(2/m - c) never exceeds 1.
pub fn rho_eps_c(eps: f64, c: f64, m: usize, d: usize, ratio: f64) -> Result<DensityMatrix> {
    if m < 3 {
        return Err(Error::ParamOutOfRange {
            name: "m",
            value: m as f64,
            range: "integers >= 3",
        });
    }
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::ParamOutOfRange {
            name: "eps",
            value: eps,
            range: "[0, 1)",
        });
    }
    let low = 2.0 / (m as f64) - 1.0;
    if !(c >= low && c < 0.0) {
        return Err(Error::ParamOutOfRange {
            name: "c",
            value: c,
            range: "[2/m - 1, 0)",
        });
    }
    if d <= m {
        return Err(Error::DimensionTooSmall { dim: d, min: m + 1 });
    }
    mixture(&[
        (eps, varrho_tail(d, m, ratio)?),
        (1.0 - eps, werner_mc(m, c, d)?),
    ])
}

/// p |omega><omega| + (1 - p) I/d^2 with |omega> the maximally entangled
/// vector on d x d.
pub fn isotropic_like_custom(p: f64, d: usize) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParamOutOfRange {
            name: "p",
            value: p,
            range: "[0, 1]",
        });
    }
    if d < 2 {
        return Err(Error::DimensionTooSmall { dim: d, min: 2 });
    }
    let idx = BipartiteIndex::new(d, d);
    let side = idx.total();
    let mut m = ComplexMatrix::identity(side).scale_re((1.0 - p) / side as f64);
    for i in 0..d {
        for j in 0..d {
            m.add_assign_at(idx.composite(i, i), idx.composite(j, j), re(p / d as f64));
        }
    }
    DensityMatrix::new(m, idx)
}

/// Convex combination of same-shaped states.
pub fn mixture(components: &[(f64, DensityMatrix)]) -> Result<DensityMatrix> {
    if components.is_empty() {
        return Err(Error::WeightsInvalid {
            reason: "mixture has no components".into(),
        });
    }
    let mut sum = 0.0;
    for (w, _) in components {
        if !(*w >= 0.0) {
            return Err(Error::WeightsInvalid {
                reason: format!("weight {w} is negative or not a number"),
            });
        }
        sum += w;
    }
    if (sum - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::WeightsInvalid {
            reason: format!("weights sum to {sum}, expected 1"),
        });
    }
    let dims = components[0].1.dims();
    let mut acc = ComplexMatrix::zeros(dims.total(), dims.total());
    for (w, rho) in components {
        if rho.dims() != dims {
            return Err(Error::DimensionMismatch {
                context: format!(
                    "component has local dims {}x{}, mixture started with {}x{}",
                    rho.dims().dim_a(),
                    rho.dims().dim_b(),
                    dims.dim_a(),
                    dims.dim_b()
                ),
            });
        }
        acc = acc.add(&rho.matrix().scale_re(*w));
    }
    DensityMatrix::new(acc, dims)
}

/// Named state family, the unit of the serializable surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Pure,
    Mixture,
    RhoAlpha,
    SigmaTail,
    RhoTAlpha,
    Example39Rho,
    Example39RhoT,
    WernerMc,
    VarrhoTail,
    RhoEpsC,
    IsotropicLikeCustom,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Pure,
        Family::Mixture,
        Family::RhoAlpha,
        Family::SigmaTail,
        Family::RhoTAlpha,
        Family::Example39Rho,
        Family::Example39RhoT,
        Family::WernerMc,
        Family::VarrhoTail,
        Family::RhoEpsC,
        Family::IsotropicLikeCustom,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Pure => "pure",
            Family::Mixture => "mixture",
            Family::RhoAlpha => "rho_alpha",
            Family::SigmaTail => "sigma_tail",
            Family::RhoTAlpha => "rho_t_alpha",
            Family::Example39Rho => "example39_rho",
            Family::Example39RhoT => "example39_rho_t",
            Family::WernerMc => "werner_mc",
            Family::VarrhoTail => "varrho_tail",
            Family::RhoEpsC => "rho_eps_c",
            Family::IsotropicLikeCustom => "isotropic_like_custom",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| Error::Validation {
                invariant: "known-family",
                detail: format!("unknown family {s:?}"),
            })
    }
}

/// Shape of a truncated infinite tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailDistribution {
    Geometric { ratio: f64 },
}

impl Default for TailDistribution {
    fn default() -> Self {
        TailDistribution::Geometric {
            ratio: DEFAULT_TAIL_RATIO,
        }
    }
}

impl TailDistribution {
    pub fn ratio(&self) -> f64 {
        match self {
            TailDistribution::Geometric { ratio } => *ratio,
        }
    }
}

/// Serializable recipe for a state: a family plus named real parameters,
/// an optional truncation dimension, and the tail shape.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpec {
    pub family: Family,
    pub params: BTreeMap<String, f64>,
    pub truncation_dim: Option<usize>,
    pub tail: TailDistribution,
}

impl StateSpec {
    pub fn new(family: Family) -> Self {
        StateSpec {
            family,
            params: BTreeMap::new(),
            truncation_dim: None,
            tail: TailDistribution::default(),
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn with_dim(mut self, dim: usize) -> Self {
        self.truncation_dim = Some(dim);
        self
    }

    pub fn with_ratio(mut self, ratio: f64) -> Self {
        self.tail = TailDistribution::Geometric { ratio };
        self
    }

    /// Routes a named value to the right slot: "dim" to the truncation
    /// dimension, "r" to the tail ratio, anything else to the parameter map.
    pub fn assign(&mut self, key: &str, value: f64) -> Result<()> {
        match key {
            "dim" => {
                if value.fract() != 0.0 || value < 1.0 || value > usize::MAX as f64 {
                    return Err(Error::Validation {
                        invariant: "integer-parameter",
                        detail: format!("dim = {value} is not a positive integer"),
                    });
                }
                self.truncation_dim = Some(value as usize);
            }
            "r" => self.tail = TailDistribution::Geometric { ratio: value },
            _ => {
                self.params.insert(key.to_string(), value);
            }
        }
        Ok(())
    }

    fn require(&self, key: &str) -> Result<f64> {
        self.params.get(key).copied().ok_or_else(|| Error::Validation {
            invariant: "required-parameter",
            detail: format!("family {} needs parameter {key}", self.family),
        })
    }

    fn require_count(&self, key: &str) -> Result<usize> {
        let v = self.require(key)?;
        if v.fract() != 0.0 || v < 0.0 || v > usize::MAX as f64 {
            return Err(Error::Validation {
                invariant: "integer-parameter",
                detail: format!("parameter {key} = {v} is not a nonnegative integer"),
            });
        }
        Ok(v as usize)
    }

    /// Local dimension to build at: the explicit truncation dim if set,
    /// otherwise a per-family default with room for every support block.
    pub fn effective_dim(&self) -> Result<usize> {
        if let Some(d) = self.truncation_dim {
            return Ok(d);
        }
        Ok(match self.family {
            Family::Example39RhoT => 12,
            Family::IsotropicLikeCustom => 3,
            Family::WernerMc => self.require_count("m")?.max(8),
            Family::VarrhoTail | Family::RhoEpsC => (self.require_count("m")? + 1).max(8),
            _ => 8,
        })
    }

    /// Builds the state this spec names. The `pure` and `mixture` families
    /// carry whole matrices, not scalar parameters, so they are built
    /// through `pure_from_coefficients` and `mixture` instead.
    pub fn build(&self) -> Result<DensityMatrix> {
        let d = self.effective_dim()?;
        let ratio = self.tail.ratio();
        match self.family {
            Family::Pure | Family::Mixture => Err(Error::Validation {
                invariant: "scalar-parameter-family",
                detail: format!(
                    "family {} takes explicit matrices and cannot be built from scalars",
                    self.family
                ),
            }),
            Family::RhoAlpha => rho_alpha(self.require("alpha")?, d),
            Family::SigmaTail => {
                let start = match self.params.get("start") {
                    Some(_) => self.require_count("start")?,
                    None => 3,
                };
                sigma_tail(d, start, ratio)
            }
            Family::RhoTAlpha => rho_t_alpha(self.require("t")?, self.require("alpha")?, d, ratio),
            Family::Example39Rho => example39_rho(self.four_weights()?, d),
            Family::Example39RhoT => {
                let rho0 = example39_default_rho0(d)?;
                example39_rho_t(self.four_weights()?, self.require("t")?, &rho0, d)
            }
            Family::WernerMc => werner_mc(self.require_count("m")?, self.require("c")?, d),
            Family::VarrhoTail => varrho_tail(d, self.require_count("m")?, ratio),
            Family::RhoEpsC => rho_eps_c(
                self.require("eps")?,
                self.require("c")?,
                self.require_count("m")?,
                d,
                ratio,
            ),
            Family::IsotropicLikeCustom => isotropic_like_custom(self.require("p")?, d),
        }
    }

    fn four_weights(&self) -> Result<[f64; 4]> {
        Ok([
            self.require("q1")?,
            self.require("q2")?,
            self.require("q3")?,
            self.require("q4")?,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{ccn, full_report, ppt_test, rccn_test, Verdict};
    use approx::assert_relative_eq;

    #[test]
    fn rho_alpha_matches_closed_form() {
        for (alpha, expect) in [
            (2.0, 1.0),
            (3.0, 1.0),
            (2.5, 0.9523809523809523),
            (4.0, 19.0 / 21.0 + 2.0 * 7f64.sqrt() / 21.0),
            (5.0, 19.0 / 21.0 + 2.0 * 19f64.sqrt() / 21.0),
        ] {
            let rho = rho_alpha(alpha, 3).unwrap();
            let norm = ccn(&rho).unwrap();
            assert_relative_eq!(norm, expect, epsilon = 1e-12);
            assert_relative_eq!(norm, rho_alpha_trace_norm(alpha), epsilon = 1e-12);
        }
    }

    #[test]
    fn rho_alpha_embedding_is_norm_stable() {
        for d in [3usize, 4, 6] {
            let rho = rho_alpha(3.7, d).unwrap();
            assert_relative_eq!(
                ccn(&rho).unwrap(),
                rho_alpha_trace_norm(3.7),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn rho_alpha_gates() {
        assert!(matches!(
            rho_alpha(1.9, 3),
            Err(Error::ParamOutOfRange { name: "alpha", .. })
        ));
        assert!(matches!(
            rho_alpha(5.1, 3),
            Err(Error::ParamOutOfRange { .. })
        ));
        assert!(matches!(
            rho_alpha(3.0, 2),
            Err(Error::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn rho_alpha_ppt_window() {
        // PPT exactly for alpha <= 4.
        let (v, min_eig) = ppt_test(&rho_alpha(4.0, 3).unwrap()).unwrap();
        assert_eq!(v, Verdict::Inconclusive);
        assert!(min_eig > -1e-12);
        let (v, min_eig) = ppt_test(&rho_alpha(4.5, 3).unwrap()).unwrap();
        assert_eq!(v, Verdict::Entangled);
        assert!(min_eig < -1e-3);
    }

    #[test]
    fn sigma_tail_unit_norm() {
        // Single truncated term: |33><33|.
        let sigma = sigma_tail(4, 3, 0.5).unwrap();
        assert_relative_eq!(ccn(&sigma).unwrap(), 1.0, epsilon = 1e-12);
        // Longer tails keep unit norm after renormalization.
        for d in [6usize, 8, 12] {
            let sigma = sigma_tail(d, 3, 0.5).unwrap();
            assert_relative_eq!(ccn(&sigma).unwrap(), 1.0, epsilon = 1e-12);
            let (v, _) = ppt_test(&sigma).unwrap();
            assert_eq!(v, Verdict::Inconclusive);
        }
        assert!(matches!(
            sigma_tail(3, 3, 0.5),
            Err(Error::DimensionTooSmall { .. })
        ));
        assert!(matches!(
            sigma_tail(8, 3, 1.0),
            Err(Error::ParamOutOfRange { .. })
        ));
    }

    #[test]
    fn rho_t_alpha_norm_splits() {
        let rho = rho_t_alpha(0.5, 4.0, 8, 0.5).unwrap();
        let expect = 0.5 * rho_alpha_trace_norm(4.0) + 0.5;
        assert_relative_eq!(ccn(&rho).unwrap(), expect, epsilon = 1e-10);
        // PPT entangled: positive partial transpose, norm beyond 1.
        let (ppt, _) = ppt_test(&rho).unwrap();
        assert_eq!(ppt, Verdict::Inconclusive);
        let (rccn, norm) = rccn_test(&rho).unwrap();
        assert_eq!(rccn, Verdict::Entangled);
        assert!(norm > 1.0);
    }

    #[test]
    fn rho_t_alpha_reduces_to_rho_alpha_at_t_one() {
        let a = rho_t_alpha(1.0, 3.5, 8, 0.5).unwrap();
        let b = rho_alpha(3.5, 8).unwrap();
        assert!(a.matrix().sub(b.matrix()).max_abs() < 1e-15);
    }

    #[test]
    fn example39_norm_matches_circulant_form() {
        let schemes = [
            [0.25, 0.25, 0.25, 0.25],
            [1.0 / 7.0, 0.5 - 1.5 / 7.0, 0.5 / 7.0, 0.5],
            [0.125, 0.5 - 1.5 * 0.125, 0.0625, 0.5],
            [0.4, 0.3, 0.2, 0.1],
            [0.0, 0.5, 0.0, 0.5],
            [1.0, 0.0, 0.0, 0.0],
        ];
        for q in schemes {
            let rho = example39_rho(q, 4).unwrap();
            assert_relative_eq!(
                ccn(&rho).unwrap(),
                example39_trace_norm(q),
                epsilon = 1e-10
            );
        }
        // Uniform weights sit exactly on the boundary.
        assert_relative_eq!(
            example39_trace_norm([0.25; 4]),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn example39_weight_gates() {
        assert!(matches!(
            example39_rho([0.5, 0.5, 0.5, -0.5], 4),
            Err(Error::WeightsInvalid { .. })
        ));
        assert!(matches!(
            example39_rho([0.3, 0.3, 0.3, 0.3], 4),
            Err(Error::WeightsInvalid { .. })
        ));
        assert!(matches!(
            example39_rho([0.25; 4], 3),
            Err(Error::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn example39_rho_t_support_gate() {
        let q = [0.25, 0.25, 0.25, 0.25];
        // Overlapping component: |00><00| lives inside the corner block.
        let mut bad = ComplexMatrix::zeros(25, 25);
        bad.set(0, 0, re(1.0));
        let bad = DensityMatrix::new(bad, BipartiteIndex::new(5, 5)).unwrap();
        assert!(matches!(
            example39_rho_t(q, 0.3, &bad, 5),
            Err(Error::SupportOverlap { .. })
        ));
        // The default component is disjoint and pure product, norm 1.
        let rho0 = example39_default_rho0(5).unwrap();
        let mixed = example39_rho_t(q, 0.3, &rho0, 5).unwrap();
        let expect = 0.7 * example39_trace_norm(q) + 0.3;
        assert_relative_eq!(ccn(&mixed).unwrap(), expect, epsilon = 1e-10);
    }

    #[test]
    fn example39_rho_t_degenerate_endpoints() {
        let q = [0.125, 0.5 - 1.5 * 0.125, 0.0625, 0.5];
        let rho0 = example39_default_rho0(12).unwrap();
        let at_zero = example39_rho_t(q, 0.0, &rho0, 12).unwrap();
        let plain = example39_rho(q, 12).unwrap();
        assert!(at_zero.matrix().sub(plain.matrix()).max_abs() < 1e-15);
        let at_one = example39_rho_t(q, 1.0, &rho0, 12).unwrap();
        assert!(at_one.matrix().sub(rho0.matrix()).max_abs() < 1e-15);
    }

    #[test]
    fn werner_norm_piecewise() {
        for (m, c, expect) in [
            (3usize, -1.0, 5.0 / 3.0),
            (3, -0.2, 2.0 / 3.0 + 0.2),
            (3, 1.0 / 3.0, 1.0 / 3.0),
            (3, 1.0, 1.0),
            (4, 0.7, 0.7),
            (5, -0.5, 0.9),
        ] {
            let rho = werner_mc(m, c, m).unwrap();
            let norm = ccn(&rho).unwrap();
            assert_relative_eq!(norm, expect, epsilon = 1e-10);
            assert_relative_eq!(norm, werner_trace_norm(m, c), epsilon = 1e-10);
        }
    }

    #[test]
    fn werner_ppt_boundary_and_embedding() {
        // Non-PPT entangled but invisible to the norm test.
        let rho = werner_mc(3, -0.2, 3).unwrap();
        let (ppt, _) = ppt_test(&rho).unwrap();
        assert_eq!(ppt, Verdict::Entangled);
        let (rccn, norm) = rccn_test(&rho).unwrap();
        assert_eq!(rccn, Verdict::Inconclusive);
        assert!(norm <= 1.0);
        // PPT from c = 0 on.
        let (ppt, min_eig) = ppt_test(&werner_mc(3, 0.0, 3).unwrap()).unwrap();
        assert_eq!(ppt, Verdict::Inconclusive);
        assert!(min_eig > -1e-12);
        // Embedding does not change the norm.
        let rho = werner_mc(3, -0.4, 6).unwrap();
        assert_relative_eq!(
            ccn(&rho).unwrap(),
            werner_trace_norm(3, -0.4),
            epsilon = 1e-10
        );
    }

    #[test]
    fn rho_eps_c_norm_splits_and_stays_non_ppt() {
        let (eps, c, m) = (0.5, -0.3, 3usize);
        let rho = rho_eps_c(eps, c, m, 8, 0.5).unwrap();
        let expect = eps + (1.0 - eps) * werner_trace_norm(m, c);
        assert_relative_eq!(ccn(&rho).unwrap(), expect, epsilon = 1e-10);
        let report = full_report(&rho).unwrap();
        assert_eq!(report.ppt_verdict, Verdict::Entangled);
        assert_eq!(report.rccn_verdict, Verdict::Inconclusive);
        assert!(report.realignment_trace_norm <= 1.0);
        // eps = 0 collapses to the Werner state.
        let zero = rho_eps_c(0.0, -0.3, 3, 8, 0.5).unwrap();
        let werner = werner_mc(3, -0.3, 8).unwrap();
        assert!(zero.matrix().sub(werner.matrix()).max_abs() < 1e-15);
    }

    #[test]
    fn rho_eps_c_gates() {
        assert!(matches!(
            rho_eps_c(1.0, -0.3, 3, 8, 0.5),
            Err(Error::ParamOutOfRange { name: "eps", .. })
        ));
        assert!(matches!(
            rho_eps_c(0.5, 0.0, 3, 8, 0.5),
            Err(Error::ParamOutOfRange { name: "c", .. })
        ));
        assert!(matches!(
            rho_eps_c(0.5, -0.5, 3, 8, 0.5),
            Err(Error::ParamOutOfRange { name: "c", .. })
        ));
        assert!(matches!(
            rho_eps_c(0.5, -0.3, 3, 3, 0.5),
            Err(Error::DimensionTooSmall { .. })
        ));
    }

    #[test]
    fn isotropic_endpoints() {
        // p = 0: maximally mixed, norm 1/d.
        let rho = isotropic_like_custom(0.0, 3).unwrap();
        assert_relative_eq!(ccn(&rho).unwrap(), 1.0 / 3.0, epsilon = 1e-10);
        // p = 1: maximally entangled, norm d.
        let rho = isotropic_like_custom(1.0, 3).unwrap();
        assert_relative_eq!(ccn(&rho).unwrap(), 3.0, epsilon = 1e-10);
    }

    #[test]
    fn mixture_gates() {
        let a = isotropic_like_custom(0.0, 2).unwrap();
        let b = isotropic_like_custom(1.0, 2).unwrap();
        assert!(mixture(&[(0.5, a.clone()), (0.5, b.clone())]).is_ok());
        assert!(matches!(
            mixture(&[]),
            Err(Error::WeightsInvalid { .. })
        ));
        assert!(matches!(
            mixture(&[(0.7, a.clone()), (0.7, b.clone())]),
            Err(Error::WeightsInvalid { .. })
        ));
        assert!(matches!(
            mixture(&[(1.5, a.clone()), (-0.5, b)]),
            Err(Error::WeightsInvalid { .. })
        ));
        let c = isotropic_like_custom(0.5, 3).unwrap();
        assert!(matches!(
            mixture(&[(0.5, a), (0.5, c)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pure_from_coefficients_is_rank_one() {
        let d = ComplexMatrix::from_real(2, 2, &[0.6, 0.0, 0.0, 0.8]);
        let coeffs = CoefficientMatrix::new(d).unwrap();
        let rho = pure_from_coefficients(&coeffs).unwrap();
        assert_relative_eq!(rho.purity(), 1.0, epsilon = 1e-12);
        // Schmidt coefficients 0.6, 0.8 give norm (0.6 + 0.8)^2 = 1.96.
        assert_relative_eq!(ccn(&rho).unwrap(), 1.96, epsilon = 1e-10);
    }

    #[test]
    fn family_names_round_trip() {
        for fam in Family::ALL {
            assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
        }
        assert!("unknown_family".parse::<Family>().is_err());
    }

    #[test]
    fn state_spec_builds_and_gates() {
        let spec = StateSpec::new(Family::RhoAlpha).with_param("alpha", 3.5);
        assert_eq!(spec.effective_dim().unwrap(), 8);
        let built = spec.build().unwrap();
        let direct = rho_alpha(3.5, 8).unwrap();
        assert!(built.matrix().sub(direct.matrix()).max_abs() < 1e-15);

        // Missing parameter.
        assert!(StateSpec::new(Family::RhoAlpha).build().is_err());
        // Non-integer m.
        assert!(StateSpec::new(Family::WernerMc)
            .with_param("m", 3.5)
            .with_param("c", 0.0)
            .build()
            .is_err());
        // Matrix families need matrices.
        assert!(StateSpec::new(Family::Pure).build().is_err());
        assert!(StateSpec::new(Family::Mixture).build().is_err());

        // Tail ratio reaches the tail families.
        let spec = StateSpec::new(Family::SigmaTail).with_dim(6).with_ratio(0.25);
        let built = spec.build().unwrap();
        let direct = sigma_tail(6, 3, 0.25).unwrap();
        assert!(built.matrix().sub(direct.matrix()).max_abs() < 1e-15);

        // Werner default dimension leaves room for the block.
        let spec = StateSpec::new(Family::WernerMc)
            .with_param("m", 9.0)
            .with_param("c", 0.5);
        assert_eq!(spec.effective_dim().unwrap(), 9);
    }

    #[test]
    fn state_spec_example39_rho_t_defaults() {
        let spec = StateSpec::new(Family::Example39RhoT)
            .with_param("q1", 0.125)
            .with_param("q2", 0.5 - 1.5 * 0.125)
            .with_param("q3", 0.0625)
            .with_param("q4", 0.5)
            .with_param("t", 0.02);
        assert_eq!(spec.effective_dim().unwrap(), 12);
        let rho = spec.build().unwrap();
        let q = [0.125, 0.5 - 1.5 * 0.125, 0.0625, 0.5];
        let expect = 0.98 * example39_trace_norm(q) + 0.02;
        assert_relative_eq!(ccn(&rho).unwrap(), expect, epsilon = 1e-10);
    }
}
