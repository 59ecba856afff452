//! Generators and the point-set file format. Every instance replays from its
//! recorded generator spec.

use cb_lab::harness::{gen_random, gen_split, GeneratorSpec, Piece};
use cb_lab::io::PointSetFile;

fn main() -> cb_lab::Result<()> {
    let split = gen_split(
        5,
        &[
            Piece::Points { dim: 1, count: 4 },
            Piece::Grid { rows: 2, cols: 3 },
        ],
        1,
        3,
    )?;
    let file = split.to_file();
    print!("{}", file.to_json());

    let replayed = split.provenance.instantiate()?;
    assert_eq!(replayed.point_set, split.point_set);

    let back = PointSetFile::parse(&file.to_json())?.to_point_set()?;
    assert_eq!(back, split.point_set);

    let spec = GeneratorSpec::Random {
        n: 3,
        size: 5,
        height: 10,
        seed: 8,
    };
    let random = spec.instantiate()?;
    assert_eq!(random.point_set, gen_random(3, 5, 10, 8)?.point_set);
    println!(
        "random: {} points in P^{}",
        random.point_set.len(),
        random.point_set.ambient_n()
    );
    Ok(())
}
