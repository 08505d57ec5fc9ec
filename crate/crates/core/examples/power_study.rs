//! Power of the global and pointwise tests when group 2 is shifted up by .5
//! and has no slope.
//!
//!     cargo run --release --example power_study -- [reps]

use robust_ancova::sim::{run_power_study, Association, GhParams, ScenarioSpec, StudyConfig, TestMethod};

fn main() -> robust_ancova::Result<()> {
    let reps = std::env::args().nth(1).map_or(100, |s| s.parse().expect("integer"));
    let scenario = ScenarioSpec::alternative(
        Association::S1,
        Association::Shifted { slope: 0.5, degree: 0, shift: 0.5 },
        GhParams::NORMAL,
        50,
        50,
    );
    for method in [TestMethod::Global, TestMethod::Pointwise] {
        let cfg = StudyConfig { method, replications: reps, seed: 7, ..StudyConfig::default() };
        let r = run_power_study(&scenario, &cfg)?;
        println!("{method:?}: power {:.3} (se {:.3})", r.rejection_rate, r.standard_error);
    }
    Ok(())
}
