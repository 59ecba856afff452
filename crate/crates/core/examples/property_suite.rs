//! Runs a small property suite and prints the summary table.

use cb_lab::harness::{run_suite, SuiteConfig};

const SUITE: &str = r#"{
  "name": "example",
  "seed": 5,
  "properties": ["equivalence", "lower_bound", "bcd", "conjecture", "split_equiv", "skew_counts"],
  "conjecture_d": [1, 2, 3],
  "families": [
    {"family": "grid", "d": [1, 3], "e": [1, 3]},
    {"family": "collinear", "count": 4, "sizes": [2, 6], "ambient": [2, 3]},
    {"family": "split", "count": 4, "r": [1, 2], "lines": [1, 2], "grids": [0, 1], "extra": [0, 1]},
    {"family": "skew", "count": 3, "r": [1, 2], "lines": [2, 2]}
  ]
}"#;

fn main() -> cb_lab::Result<()> {
    let config = SuiteConfig::parse(SUITE)?;
    let report = run_suite(&config)?;
    println!("{report}");
    if let Some(first) = report.reports.first() {
        println!("first record: {}", serde_json::to_string(first)?);
    }
    Ok(())
}
