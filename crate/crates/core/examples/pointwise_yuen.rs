//! Pointwise Yuen tests at the five design points with Hochberg control.
//!
//!     cargo run --release --example pointwise_yuen

use robust_ancova::sim::{generate_scenario, Association, GhParams, ScenarioSpec};
use robust_ancova::smoother::select_design_points;
use robust_ancova::{anc_w, EstimatorSpec, RngStream, SmootherConfig};

fn main() -> robust_ancova::Result<()> {
    // a line against a parabola; they cross at x = 0 and x = 1
    let scenario = ScenarioSpec::alternative(
        Association::S2,
        Association::Shifted { slope: 1.0, degree: 2, shift: 0.0 },
        GhParams::NORMAL,
        100,
        100,
    );
    let (s1, s2) = generate_scenario(&scenario, RngStream::new(4));
    let cfg = SmootherConfig::default();
    let points = select_design_points(&s1, &s2, &cfg)?;
    let r = anc_w(&s1, &s2, &points, EstimatorSpec::trimmed(0.2)?, 0.05, 0, &cfg, RngStream::new(0))?;
    for p in &r.points {
        println!(
            "x = {:6.3}  delta = {:6.3}  ci = [{:6.3}, {:6.3}]  p = {:.4}  reject = {}",
            p.x, p.delta, p.ci_low, p.ci_high, p.p_value, p.reject_adjusted
        );
    }
    Ok(())
}
