//! Robust two-group ANCOVA without straight-line assumptions.
//!
//! Each group's conditional location (a trimmed mean or a Harrell–Davis
//! quantile of the outcome) is estimated with a running-interval smoother
//! at a handful of covariate values chosen from the data. Two tests compare
//! the groups there:
//!
//! * [`global::anc_glob`] tests equality at all design points at once with
//!   a bootstrap depth p-value and a simulation-calibrated cutoff.
//! * [`pointwise::anc_w`] tests each point separately with Hochberg's
//!   familywise control.
//!
//! [`sim`] generates g-and-h data and estimates Type I error and power;
//! [`report`] holds the file formats and command implementations used by the
//! `ancova` binary.

pub mod error;
pub mod estimators;
pub mod global;
pub mod pointwise;
pub mod report;
pub mod rng;
pub mod sim;
pub mod smoother;
pub mod special;

pub use error::{Error, Result, Stage};
pub use estimators::EstimatorSpec;
pub use global::{anc_glob, GlobalConfig, GlobalTestResult};
pub use pointwise::{anc_w, MethodWResult};
pub use rng::RngStream;
pub use smoother::{DesignPoints, PairedSample, SmootherConfig};

/// Run `f` on a dedicated pool of `threads` workers, or the global pool
/// when `None`. Results never depend on the worker count.
pub fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}
