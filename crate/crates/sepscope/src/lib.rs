//! Separability screening for bipartite quantum states.
//!
//! The crate builds density matrices for a set of parameterized state
//! families, realigns them, and applies two one-sided entanglement tests:
//! the realignment criterion (trace norm of the realigned matrix beyond 1
//! certifies entanglement) and the partial-transpose criterion (a negative
//! eigenvalue of the partial transpose certifies entanglement). Families
//! with infinite diagonal tails are truncated and renormalized so their
//! norms are exact at every finite dimension, which makes truncation sweeps
//! a meaningful stability check.
//!
//! The main entry points are [`states::StateSpec`] for describing a state,
//! [`criteria::full_report`] for running every test at once, and
//! [`truncation::run_sweep`] for parameter grids.
//!
//! ```
//! use sepscope::criteria::{full_report, Verdict};
//! use sepscope::states::{Family, StateSpec};
//!
//! # fn main() -> sepscope::Result<()> {
//! let rho = StateSpec::new(Family::WernerMc)
//!     .with_param("m", 3.0)
//!     .with_param("c", -0.5)
//!     .with_dim(3)
//!     .build()?;
//! let report = full_report(&rho)?;
//! assert_eq!(report.rccn_verdict, Verdict::Entangled);
//! assert!(report.realignment_trace_norm > 1.0);
//! # Ok(())
//! # }
//! ```

pub mod criteria;
pub mod error;
pub mod io;
pub mod matkernel;
pub mod realign;
pub mod sampling;
pub mod states;
pub mod truncation;
pub mod verify;

pub use criteria::{
    ccn, full_report, ppt_test, rccn_test, schmidt_spectrum, CriterionReport, DensityMatrix,
    Verdict,
};
pub use error::{Error, Result};
pub use matkernel::{BipartiteIndex, ComplexMatrix};
pub use realign::{realign_column, realign_row, RealignedOperator};
pub use states::{Family, StateSpec};
