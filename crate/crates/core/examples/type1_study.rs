//! Type I error of the global test under one null configuration.
//!
//!     cargo run --release --example type1_study -- [reps] [g] [h]

use robust_ancova::sim::{run_type1_study, Association, GhParams, ScenarioSpec, StudyConfig};

fn main() -> robust_ancova::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, d: f64| args.get(i).map_or(d, |s| s.parse().expect("number"));
    let reps = arg(0, 200.0) as usize;
    let error = GhParams::new(arg(1, 0.0), arg(2, 0.0))?;
    let scenario = ScenarioSpec::null(Association::S1, error, 30, 30);
    let cfg = StudyConfig { replications: reps, seed: 2024, ..StudyConfig::default() };
    let start = std::time::Instant::now();
    let r = run_type1_study(&scenario, &cfg)?;
    println!(
        "g = {}, h = {}: rate {:.3} (se {:.3}) over {} replications, critical p {:.4}, {:.1?}",
        error.g,
        error.h,
        r.rejection_rate,
        r.standard_error,
        r.replications,
        r.critical_p.unwrap_or(f64::NAN),
        start.elapsed()
    );
    Ok(())
}
