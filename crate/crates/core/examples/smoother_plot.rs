//! Writes `smoothers.svg`: both running-interval smoothers with the design
//! points marked.
//!
//!     cargo run --example smoother_plot -- [out.svg]

use robust_ancova::report::render_smoother_svg;
use robust_ancova::sim::{generate_scenario, Association, GhParams, ScenarioSpec};
use robust_ancova::smoother::select_design_points;
use robust_ancova::{EstimatorSpec, RngStream, SmootherConfig};

fn main() -> robust_ancova::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "smoothers.svg".into());
    let scenario = ScenarioSpec::alternative(
        Association::S2,
        Association::S3,
        GhParams::NORMAL,
        120,
        120,
    );
    let (s1, s2) = generate_scenario(&scenario, RngStream::new(3));
    let cfg = SmootherConfig::default();
    let points = select_design_points(&s1, &s2, &cfg)?;
    let svg = render_smoother_svg(&s1, &s2, &points, EstimatorSpec::trimmed(0.2)?, &cfg);
    std::fs::write(&out, svg).expect("write svg");
    println!("design points {:?} -> {out}", points.values);
    Ok(())
}
