//! Minimum-dimension plane configurations containing a point set.

use cb_lab::cover::{greedy_cover, matroid_flats, min_cover, CoverResult};
use cb_lab::harness::{gen_grid, gen_skew};
use cb_lab::projective::PointSet;

fn describe(name: &str, c: &CoverResult) {
    let dims: Vec<usize> = c.config.flats().iter().map(|f| f.proj_dim()).collect();
    println!(
        "{name:<24} total dim {} ({}) flats of dim {dims:?} blocks {:?}",
        c.total_dim,
        if c.optimal { "optimal" } else { "greedy" },
        c.blocks
    );
}

fn main() -> cb_lab::Result<()> {
    // Two skew lines in P^3 with three points each.
    let skew = gen_skew(3, &[3, 3], 11)?.point_set;
    if let Some(c) = min_cover(&skew, 3)? {
        describe("3+3 on skew lines", &c);
    }

    // The 3x3 grid placed in P^3 spans a plane.
    let grid = gen_grid(3, 3)?.point_set.embed(3)?;
    if let Some(c) = min_cover(&grid, 3)? {
        describe("grid in P^3", &c);
    }
    let lines = matroid_flats(&grid, 1)?
        .into_iter()
        .filter(|f| f.proj_dim == 1 && f.labels.len() >= 3)
        .count();
    println!("{lines} lines meet the grid in three points");

    // Six general points in P^3: no budget below 3 suffices.
    let general = PointSet::from_ints(
        3,
        &[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[1, 1, 1, 1],
            &[1, 2, 3, 4],
        ],
    )?;
    for budget in 1..=3 {
        match min_cover(&general, budget)? {
            Some(c) => describe(&format!("6 general, budget {budget}"), &c),
            None => println!("6 general, budget {budget}: none"),
        }
    }
    describe("6 general, greedy", &greedy_cover(&general)?);
    Ok(())
}
