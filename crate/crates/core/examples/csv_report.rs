//! Reads two CSV files and prints the JSON report the `ancglob` command
//! would write.
//!
//!     cargo run --release --example csv_report -- group1.csv group2.csv

use robust_ancova::report::{cmd_ancglob, RunConfig};

fn main() -> robust_ancova::Result<()> {
    let mut args = std::env::args().skip(1);
    let (Some(a), Some(b)) = (args.next(), args.next()) else {
        eprintln!("usage: csv_report <group1.csv> <group2.csv>");
        std::process::exit(2);
    };
    let cfg = RunConfig {
        data1: Some(a.into()),
        data2: Some(b.into()),
        ncrit: 200,
        seed: 1,
        ..RunConfig::default()
    };
    print!("{}", cmd_ancglob(&cfg)?.to_json());
    Ok(())
}
