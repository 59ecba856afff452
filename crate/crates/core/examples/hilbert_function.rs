//! Hilbert functions and minimal separators of a few small configurations.

use cb_lab::cbp::separator;
use cb_lab::hilbert::hf_full;
use cb_lab::io::format_rational;
use cb_lab::projective::PointSet;
use num_traits::Zero;

fn show(name: &str, x: &PointSet) -> cb_lab::Result<()> {
    let h = hf_full(x)?;
    println!(
        "{name:<18} HF {:?}  ΔHF {:?}  rX = {}",
        h.up_to_regularity(),
        &h.delta()[..=h.reg_index],
        h.reg_index
    );
    Ok(())
}

fn main() -> cb_lab::Result<()> {
    let mut grid = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            grid.push([1, i, j]);
        }
    }
    let rows: Vec<&[i64]> = grid.iter().map(|p| &p[..]).collect();
    let grid = PointSet::from_ints(2, &rows)?;
    show("3x3 grid", &grid)?;

    let collinear = PointSet::from_ints(2, &[&[1, 0, 0], &[1, 1, 0], &[1, 2, 0], &[1, 3, 0]])?;
    show("4 collinear", &collinear)?;

    let general = PointSet::from_ints(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])?;
    show("4 general", &general)?;

    // A minimal separator of the corner (1:0:0) takes the value 1 there and
    // vanishes on the other eight points.
    let sep = separator(&grid, 0)?;
    let values: Vec<String> = grid
        .points()
        .iter()
        .map(|q| format_rational(&sep.eval(q)))
        .collect();
    println!(
        "separator of (1:0:0): degree {}, {} terms, values [{}]",
        sep.alpha,
        sep.coeffs.iter().filter(|c| !c.is_zero()).count(),
        values.join(", ")
    );
    Ok(())
}
