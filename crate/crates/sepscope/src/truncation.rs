//! Sweep harness: evaluate the criteria over parameter grids and a list
//! of truncation dimensions, and check that reported norms do not move
//! when the truncation dimension does.
//!
//! Tail-bearing families renormalize their truncated tails, so their
//! criterion scalars are exactly dimension-independent; a drift beyond
//! rounding in `stability_report` means a construction bug, not a
//! convergence artifact.

use crate::criteria::{full_report, CriterionReport};
use crate::error::{Error, Result};
use crate::states::StateSpec;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A parameter grid crossed with a list of truncation dimensions.
#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub template: StateSpec,
    /// Parameter name and the grid of values it takes, one entry per
    /// varying parameter. The cartesian product of all grids is swept.
    pub varying: Vec<(String, Vec<f64>)>,
    pub dims: Vec<usize>,
}

impl SweepPlan {
    fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::Validation {
                invariant: "non-empty-dims",
                detail: "sweep needs at least one truncation dimension".into(),
            });
        }
        if !self.dims.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Validation {
                invariant: "dims-strictly-increasing",
                detail: format!("dims {:?} are not strictly increasing", self.dims),
            });
        }
        for (name, grid) in &self.varying {
            if grid.is_empty() {
                return Err(Error::Validation {
                    invariant: "non-empty-grid",
                    detail: format!("grid for {name} is empty"),
                });
            }
        }
        Ok(())
    }

    /// All grid points in odometer order (last grid varies fastest).
    fn grid_points(&self) -> Vec<Vec<(String, f64)>> {
        let mut points = vec![Vec::new()];
        for (name, grid) in &self.varying {
            let mut next = Vec::with_capacity(points.len() * grid.len());
            for point in &points {
                for &value in grid {
                    let mut extended = point.clone();
                    extended.push((name.clone(), value));
                    next.push(extended);
                }
            }
            points = next;
        }
        points
    }
}

/// One evaluated (grid point, dim) cell. Construction failures land in
/// `error` instead of aborting the sweep.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub params: Vec<(String, f64)>,
    pub dim: usize,
    pub report: Option<CriterionReport>,
    pub error: Option<String>,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// Largest norm spread across dims, per grid point and overall.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub per_point: Vec<(Vec<(String, f64)>, f64)>,
    pub max_drift: f64,
}

fn wall_clock<T>(f: impl FnOnce() -> T) -> (T, f64) {
    #[cfg(not(target_arch = "wasm32"))]
    {
        let start = std::time::Instant::now();
        let out = f();
        (out, start.elapsed().as_secs_f64())
    }
    #[cfg(target_arch = "wasm32")]
    {
        (f(), 0.0)
    }
}

fn evaluate_cell(template: &StateSpec, point: &[(String, f64)], dim: usize) -> SweepRow {
    let build = || -> Result<CriterionReport> {
        let mut spec = template.clone();
        for (name, value) in point {
            spec.assign(name, *value)?;
        }
        spec.truncation_dim = Some(dim);
        full_report(&spec.build()?)
    };
    let (outcome, wall_time_s) = wall_clock(build);
    match outcome {
        Ok(report) => SweepRow {
            params: point.to_vec(),
            dim,
            report: Some(report),
            error: None,
            wall_time_s,
        },
        Err(e) => SweepRow {
            params: point.to_vec(),
            dim,
            report: None,
            error: Some(e.to_string()),
            wall_time_s,
        },
    }
}

/// Evaluates every (grid point, dim) cell of the plan. Rows come back in
/// plan order (grid point major, dim minor) regardless of how they were
/// scheduled; the scalars are deterministic for a fixed plan.
pub fn run_sweep(plan: &SweepPlan) -> Result<SweepResult> {
    plan.validate()?;
    let mut cells = Vec::new();
    for point in plan.grid_points() {
        for &dim in &plan.dims {
            cells.push((point.clone(), dim));
        }
    }

    #[cfg(feature = "parallel")]
    let rows: Vec<SweepRow> = cells
        .par_iter()
        .map(|(point, dim)| evaluate_cell(&plan.template, point, *dim))
        .collect();

    #[cfg(not(feature = "parallel"))]
    let rows: Vec<SweepRow> = cells
        .iter()
        .map(|(point, dim)| evaluate_cell(&plan.template, point, *dim))
        .collect();

    Ok(SweepResult { rows })
}

/// Groups rows by grid point and reports the spread of the realignment
/// trace norm across truncation dimensions. Every grid point must have at
/// least two successfully evaluated dimensions.
pub fn stability_report(result: &SweepResult) -> Result<StabilityReport> {
    // Group in first-seen order; points are few, linear scan is fine.
    let mut groups: Vec<(Vec<(String, f64)>, Vec<f64>)> = Vec::new();
    for row in &result.rows {
        let norm = match &row.report {
            Some(r) => r.realignment_trace_norm,
            None => continue,
        };
        match groups.iter_mut().find(|(p, _)| *p == row.params) {
            Some((_, norms)) => norms.push(norm),
            None => groups.push((row.params.clone(), vec![norm])),
        }
    }
    if groups.is_empty() {
        return Err(Error::InsufficientDims);
    }
    let mut per_point = Vec::with_capacity(groups.len());
    let mut max_drift: f64 = 0.0;
    for (point, norms) in groups {
        if norms.len() < 2 {
            return Err(Error::InsufficientDims);
        }
        let lo = norms.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = norms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let drift = hi - lo;
        max_drift = max_drift.max(drift);
        per_point.push((point, drift));
    }
    Ok(StabilityReport {
        per_point,
        max_drift,
    })
}
