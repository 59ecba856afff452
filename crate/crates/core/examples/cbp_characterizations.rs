//! The four characterizations of CBP(r) side by side, with witnesses.

use cb_lab::cbp::{cbp, max_cbp_degree, Witness};
use cb_lab::harness::gen_grid;
use cb_lab::projective::PointSet;

fn sweep(name: &str, x: &PointSet) -> cb_lab::Result<()> {
    println!("{name}");
    let reg = cb_lab::hilbert::hf_full(x)?.reg_index;
    for r in 0..=reg {
        let rep = cbp(x, r)?;
        let m = &rep.per_method;
        let witness = match &rep.witness {
            Witness::Dual(v) => format!("full-support dual vector, {} entries", v.entries.len()),
            Witness::FailingPoint { label } => format!("point {label} fails"),
            Witness::Vacuous => "vacuous".into(),
        };
        let show = |v: Option<bool>| v.map_or("-".to_string(), |b| b.to_string());
        println!(
            "  r={r}: {:<5} hf={} alpha={} div={} dual={} ({witness})",
            rep.verdict,
            m.hf,
            show(m.alpha),
            show(m.divisibility),
            show(m.dual)
        );
    }
    match max_cbp_degree(x)? {
        Some(m) => println!("  largest r: {} (CB scheme: {})", m.degree, m.is_cb_scheme),
        None => println!("  no degree qualifies"),
    }
    Ok(())
}

fn main() -> cb_lab::Result<()> {
    // A complete intersection of a cubic and a cubic: CBP(3).
    sweep("3x3 grid", &gen_grid(3, 3)?.point_set)?;
    sweep(
        "triangle",
        &PointSet::from_ints(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])?,
    )?;
    // Coordinate points of P^2 plus a point off all coordinate lines.
    sweep(
        "four general points",
        &PointSet::from_ints(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])?,
    )?;
    Ok(())
}
