//! Randomized search for point sets with CBP(r) that lie on no plane
//! configuration of dimension at most d.

use cb_lab::harness::{counterexample_search, SearchRecord};

fn main() -> cb_lab::Result<()> {
    for (d, r) in [(2, 1), (3, 2), (4, 2)] {
        let report = counterexample_search(d, r, 200, 1)?;
        println!(
            "d={d} r={r}: {} trials, {} with CBP({r}) and enough points, {} counterexamples",
            report.trials,
            report.eligible,
            report.counterexamples().count()
        );
        for record in &report.records {
            if let SearchRecord::Inconclusive { .. } = record {
                println!("  inconclusive: {}", serde_json::to_string(record)?);
            }
        }
    }
    Ok(())
}
