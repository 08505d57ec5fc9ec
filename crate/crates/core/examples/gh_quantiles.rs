//! Sample deciles of g-and-h draws next to the transformed normal deciles.
//!
//!     cargo run --release --example gh_quantiles

use robust_ancova::estimators::harrell_davis;
use robust_ancova::sim::{gh_sample, gh_transform, GhParams};
use robust_ancova::RngStream;

/// Standard normal quantiles at .1, .2, ..., .9.
const NORMAL_DECILES: [f64; 9] = [
    -1.2815515655446004,
    -0.8416212335729143,
    -0.5244005127080407,
    -0.2533471031357997,
    0.0,
    0.2533471031357997,
    0.5244005127080407,
    0.8416212335729143,
    1.2815515655446004,
];

fn main() -> robust_ancova::Result<()> {
    for params in [GhParams::NORMAL, GhParams::SYMMETRIC_HEAVY, GhParams::SKEWED_LIGHT, GhParams::SKEWED_HEAVY] {
        let draws = gh_sample(20_000, params, RngStream::new(1));
        println!("g = {}, h = {}", params.g, params.h);
        for (k, z) in NORMAL_DECILES.iter().enumerate() {
            let p = (k + 1) as f64 / 10.0;
            let est = harrell_davis(&draws, p)?;
            println!("  {p:.1}: sample {est:8.4}  exact {:8.4}", gh_transform(*z, params));
        }
    }
    Ok(())
}
