//! Critical p-values for a few sample sizes, each from A simulated normal
//! datasets.
//!
//!     cargo run --release --example calibrate -- [A] [B]

use robust_ancova::global::calibrate_critical_p;
use robust_ancova::{EstimatorSpec, RngStream, SmootherConfig};

fn main() -> robust_ancova::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let ncrit = args.next().unwrap_or(200);
    let nboot = args.next().unwrap_or(200);
    let cfg = SmootherConfig::default();
    for n in [30, 50, 80] {
        let c = calibrate_critical_p(
            n,
            n,
            0.05,
            ncrit,
            nboot,
            EstimatorSpec::trimmed(0.2)?,
            &cfg,
            false,
            RngStream::new(1).named("calibration"),
        )?;
        println!("n1 = n2 = {n:3}: critical p = {:.4} ({} redraws)", c.critical_p, c.failures);
    }
    Ok(())
}
