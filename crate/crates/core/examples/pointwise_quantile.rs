//! Pointwise percentile-bootstrap comparison of conditional medians.
//!
//!     cargo run --release --example pointwise_quantile

use robust_ancova::sim::{generate_scenario, Association, GhParams, ScenarioSpec};
use robust_ancova::smoother::select_design_points;
use robust_ancova::{anc_w, EstimatorSpec, RngStream, SmootherConfig};

fn main() -> robust_ancova::Result<()> {
    let scenario = ScenarioSpec::alternative(
        Association::S1,
        Association::Shifted { slope: 1.0, degree: 1, shift: 0.7 },
        GhParams::SYMMETRIC_HEAVY,
        70,
        70,
    );
    let (s1, s2) = generate_scenario(&scenario, RngStream::new(8));
    let cfg = SmootherConfig::default();
    let points = select_design_points(&s1, &s2, &cfg)?;
    let r = anc_w(&s1, &s2, &points, EstimatorSpec::quantile(0.5)?, 0.05, 1000, &cfg, RngStream::new(21))?;
    for p in &r.points {
        println!("x = {:6.3}  median diff = {:6.3}  p = {:.3}  reject = {}", p.x, p.delta, p.p_value, p.reject_adjusted);
    }
    println!("any point rejected: {}", r.any_rejected());
    Ok(())
}
