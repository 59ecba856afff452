//! Seeded instance generators. Every instance records a [`GeneratorSpec`]
//! from which it can be rebuilt bit for bit.

use std::collections::HashSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cover::PlaneConfiguration;
use crate::error::{Error, Result};
use crate::io::PointSetFile;
use crate::projective::{are_skew, Flat, PointSet, ProjPoint};
use crate::qlinalg::{rat, QMatrix, Rational};

pub const DEFAULT_HEIGHT: u32 = 20;
const MAX_ATTEMPTS: usize = 10_000;

/// What gets placed on one piece of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Piece {
    /// `count` random points on a flat of dimension `dim`.
    Points { dim: usize, count: usize },
    /// A `rows × cols` grid inside a 2-plane.
    Grid { rows: usize, cols: usize },
}

impl Piece {
    pub fn dim(&self) -> usize {
        match self {
            Piece::Points { dim, .. } => *dim,
            Piece::Grid { .. } => 2,
        }
    }

    pub fn count(&self) -> usize {
        match self {
            Piece::Points { count, .. } => *count,
            Piece::Grid { rows, cols } => rows * cols,
        }
    }
}

/// Replayable description of a generated instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case")]
pub enum GeneratorSpec {
    Collinear {
        s: usize,
        n: usize,
        seed: u64,
    },
    Grid {
        d: usize,
        e: usize,
    },
    Random {
        n: usize,
        size: usize,
        height: u32,
        seed: u64,
    },
    OnFlats {
        flats: Vec<Flat>,
        counts: Vec<usize>,
        seed: u64,
    },
    /// Pieces on a split configuration, plus `extra` points off it.
    Split {
        n: usize,
        pieces: Vec<Piece>,
        extra: usize,
        seed: u64,
    },
    /// Points on pairwise skew random lines.
    Skew {
        n: usize,
        counts: Vec<usize>,
        seed: u64,
    },
    /// Points on two flats meeting in exactly one point.
    Meeting {
        n: usize,
        dims: [usize; 2],
        counts: [usize; 2],
        include_point: bool,
        seed: u64,
    },
    /// Trial `trial` of the counterexample search for `(d, r)`.
    Candidate {
        d: usize,
        r: usize,
        seed: u64,
        trial: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub point_set: PointSet,
    pub provenance: GeneratorSpec,
    pub known_config: Option<PlaneConfiguration>,
}

impl Instance {
    /// Point-set file carrying the provenance and known configuration.
    pub fn to_file(&self) -> PointSetFile {
        let mut meta = serde_json::Map::new();
        meta.insert(
            "spec".into(),
            serde_json::to_value(&self.provenance).expect("specs serialize"),
        );
        if let Some(c) = &self.known_config {
            meta.insert(
                "known_config".into(),
                serde_json::to_value(c).expect("configurations serialize"),
            );
        }
        PointSetFile::from_point_set(&self.point_set, Some(serde_json::Value::Object(meta)))
    }
}

impl GeneratorSpec {
    pub fn instantiate(&self) -> Result<Instance> {
        match self {
            GeneratorSpec::Collinear { s, n, seed } => gen_collinear(*s, *n, *seed),
            GeneratorSpec::Grid { d, e } => gen_grid(*d, *e),
            GeneratorSpec::Random {
                n,
                size,
                height,
                seed,
            } => gen_random(*n, *size, *height, *seed),
            GeneratorSpec::OnFlats {
                flats,
                counts,
                seed,
            } => gen_on_flats(flats, counts, *seed),
            GeneratorSpec::Split {
                n,
                pieces,
                extra,
                seed,
            } => gen_split(*n, pieces, *extra, *seed),
            GeneratorSpec::Skew { n, counts, seed } => gen_skew(*n, counts, *seed),
            GeneratorSpec::Meeting {
                n,
                dims,
                counts,
                include_point,
                seed,
            } => gen_meeting(*n, *dims, *counts, *include_point, *seed),
            GeneratorSpec::Candidate { d, r, seed, trial } => gen_candidate(*d, *r, *seed, *trial),
        }
    }
}

pub(crate) fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn random_coeffs(rng: &mut impl Rng, len: usize, height: u32) -> Vec<i64> {
    let h = height.max(1) as i64;
    loop {
        let v: Vec<i64> = (0..len).map(|_| rng.random_range(-h..=h)).collect();
        if v.iter().any(|&c| c != 0) {
            return v;
        }
    }
}

/// A random point on the flat spanned by the rows of `basis`.
fn point_on(rng: &mut impl Rng, basis: &QMatrix, height: u32) -> ProjPoint {
    let c = random_coeffs(rng, basis.rows(), height);
    let coords = (0..basis.cols())
        .map(|j| {
            c.iter()
                .enumerate()
                .filter(|&(_, &ci)| ci != 0)
                .map(|(i, &ci)| rat(ci) * basis.get(i, j))
                .sum::<Rational>()
        })
        .collect();
    ProjPoint::new(coords).expect("basis rows are independent")
}

/// Unit lower times unit upper triangular integer matrix; determinant 1.
fn random_unimodular(rng: &mut impl Rng, size: usize) -> QMatrix {
    let lower = QMatrix::from_fn(size, size, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => rat(1),
        std::cmp::Ordering::Greater => rat(rng.random_range(-2..=2)),
        std::cmp::Ordering::Less => rat(0),
    });
    let upper = QMatrix::from_fn(size, size, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => rat(1),
        std::cmp::Ordering::Less => rat(rng.random_range(-2..=2)),
        std::cmp::Ordering::Greater => rat(0),
    });
    lower.mul(&upper).expect("square factors")
}

/// Accumulates distinct points, redrawing on collisions.
struct Collector {
    points: Vec<ProjPoint>,
    seen: HashSet<ProjPoint>,
}

impl Collector {
    fn new() -> Self {
        Collector {
            points: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn insert(&mut self, p: ProjPoint) -> bool {
        if self.seen.insert(p.clone()) {
            self.points.push(p);
            true
        } else {
            false
        }
    }

    /// Draws `count` new points with `draw`, widening the height after
    /// repeated collisions.
    fn fill(&mut self, count: usize, mut draw: impl FnMut(u32) -> Option<ProjPoint>) -> Result<()> {
        let mut added = 0;
        let mut height = DEFAULT_HEIGHT;
        for attempt in 0..MAX_ATTEMPTS {
            if added == count {
                return Ok(());
            }
            if attempt > 0 && attempt % 64 == 0 {
                height += DEFAULT_HEIGHT;
            }
            if let Some(p) = draw(height) {
                if self.insert(p) {
                    added += 1;
                }
            }
        }
        if added == count {
            Ok(())
        } else {
            Err(Error::Generator(format!(
                "placed {added} of {count} points after {MAX_ATTEMPTS} draws"
            )))
        }
    }

    fn finish(self, n: usize) -> Result<PointSet> {
        PointSet::new(n, self.points)
    }
}

fn random_flat(rng: &mut impl Rng, n: usize, dim: usize) -> Result<Flat> {
    for _ in 0..MAX_ATTEMPTS {
        let rows = (0..=dim)
            .map(|_| {
                random_coeffs(rng, n + 1, DEFAULT_HEIGHT)
                    .into_iter()
                    .map(rat)
                    .collect()
            })
            .collect();
        let m = QMatrix::from_rows(n + 1, rows)?;
        if let Some(f) = Flat::from_rows(n, &m)? {
            if f.proj_dim() == dim {
                return Ok(f);
            }
        }
    }
    Err(Error::Generator(format!("no {dim}-flat found in P^{n}")))
}

fn fill_flat(c: &mut Collector, rng: &mut impl Rng, flat: &Flat, count: usize) -> Result<()> {
    c.fill(count, |h| Some(point_on(rng, flat.basis(), h)))
}

/// `s` distinct points on a random line of P^n.
pub fn gen_collinear(s: usize, n: usize, seed: u64) -> Result<Instance> {
    if s == 0 || n == 0 {
        return Err(Error::Generator(
            "collinear sets need s ≥ 1 and n ≥ 1".into(),
        ));
    }
    let mut rng = rng_for(seed, 0);
    let line = random_flat(&mut rng, n, 1)?;
    let mut c = Collector::new();
    fill_flat(&mut c, &mut rng, &line, s)?;
    Ok(Instance {
        point_set: c.finish(n)?,
        provenance: GeneratorSpec::Collinear { s, n, seed },
        known_config: Some(PlaneConfiguration::new(vec![line])?),
    })
}

/// The points `(1 : i : j)`, `0 ≤ i < d`, `0 ≤ j < e`: the intersection of
/// the lines `x1 = i·x0` with the lines `x2 = j·x0`. The known
/// configuration is the first family of lines.
pub fn gen_grid(d: usize, e: usize) -> Result<Instance> {
    if d == 0 || e == 0 {
        return Err(Error::Generator("grids need d, e ≥ 1".into()));
    }
    let mut pts = Vec::with_capacity(d * e);
    for i in 0..d as i64 {
        for j in 0..e as i64 {
            pts.push(ProjPoint::from_ints(&[1, i, j])?);
        }
    }
    let lines = (0..d as i64)
        .map(|i| {
            Flat::through_points(&[
                &ProjPoint::from_ints(&[1, i, 0])?,
                &ProjPoint::from_ints(&[0, 0, 1])?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Instance {
        point_set: PointSet::new(2, pts)?,
        provenance: GeneratorSpec::Grid { d, e },
        known_config: Some(PlaneConfiguration::new(lines)?),
    })
}

/// `size` distinct points with integer coordinates in `[-height, height]`.
pub fn gen_random(n: usize, size: usize, height: u32, seed: u64) -> Result<Instance> {
    if size == 0 || height == 0 {
        return Err(Error::Generator("random sets need size, height ≥ 1".into()));
    }
    let mut rng = rng_for(seed, 0);
    let mut c = Collector::new();
    c.fill(size, |_| {
        ProjPoint::from_ints(&random_coeffs(&mut rng, n + 1, height)).ok()
    })?;
    Ok(Instance {
        point_set: c.finish(n)?,
        provenance: GeneratorSpec::Random {
            n,
            size,
            height,
            seed,
        },
        known_config: None,
    })
}

/// `counts[i]` random points on `flats[i]`.
pub fn gen_on_flats(flats: &[Flat], counts: &[usize], seed: u64) -> Result<Instance> {
    if flats.len() != counts.len() || flats.is_empty() || counts.contains(&0) {
        return Err(Error::Generator("need one positive count per flat".into()));
    }
    let config = PlaneConfiguration::new(flats.to_vec())?;
    let n = flats[0].ambient_n();
    let mut rng = rng_for(seed, 0);
    let mut c = Collector::new();
    for (f, &k) in flats.iter().zip(counts) {
        fill_flat(&mut c, &mut rng, f, k)?;
    }
    Ok(Instance {
        point_set: c.finish(n)?,
        provenance: GeneratorSpec::OnFlats {
            flats: flats.to_vec(),
            counts: counts.to_vec(),
            seed,
        },
        known_config: Some(config),
    })
}

fn transformed_points(points: Vec<Vec<i64>>, m: &QMatrix) -> Result<Vec<ProjPoint>> {
    points
        .into_iter()
        .map(|v| ProjPoint::from_ints(&v)?.transform(m))
        .collect()
}

/// Pieces placed on coordinate flats with disjoint supports (a split
/// configuration), moved by a random unimodular change of coordinates.
pub fn gen_split(n: usize, pieces: &[Piece], extra: usize, seed: u64) -> Result<Instance> {
    let needed: usize = pieces.iter().map(|p| p.dim() + 1).sum();
    if pieces.is_empty() || needed > n + 1 || pieces.iter().any(|p| p.dim() == 0) {
        return Err(Error::Generator(format!(
            "pieces need {needed} coordinates, P^{n} has {}",
            n + 1
        )));
    }
    let mut rng = rng_for(seed, 0);
    let m = random_unimodular(&mut rng, n + 1);
    let mut flats = Vec::new();
    let mut c = Collector::new();
    let mut offset = 0;
    for piece in pieces {
        let block: Vec<usize> = (offset..=offset + piece.dim()).collect();
        offset += piece.dim() + 1;
        let flat = Flat::coordinate(n, &block)?.transform(&m)?;
        match piece {
            Piece::Points { count, .. } => fill_flat(&mut c, &mut rng, &flat, *count)?,
            Piece::Grid { rows, cols } => {
                let mut raw = Vec::new();
                for i in 0..*rows as i64 {
                    for j in 0..*cols as i64 {
                        let mut v = vec![0; n + 1];
                        v[block[0]] = 1;
                        v[block[1]] = i;
                        v[block[2]] = j;
                        raw.push(v);
                    }
                }
                for p in transformed_points(raw, &m)? {
                    c.insert(p);
                }
            }
        }
        flats.push(flat);
    }
    let config = PlaneConfiguration::new(flats)?;
    c.fill(extra, |h| {
        let p = ProjPoint::from_ints(&random_coeffs(&mut rng, n + 1, h)).ok()?;
        (!config.contains(&p)).then_some(p)
    })?;
    Ok(Instance {
        point_set: c.finish(n)?,
        provenance: GeneratorSpec::Split {
            n,
            pieces: pieces.to_vec(),
            extra,
            seed,
        },
        known_config: Some(config),
    })
}

/// `counts[i]` points on the i-th of several pairwise skew random lines.
pub fn gen_skew(n: usize, counts: &[usize], seed: u64) -> Result<Instance> {
    if counts.is_empty() || counts.contains(&0) || (counts.len() > 1 && n < 3) {
        return Err(Error::Generator(
            "skew lines need n ≥ 3 and positive counts".into(),
        ));
    }
    let mut rng = rng_for(seed, 0);
    let mut lines: Vec<Flat> = Vec::new();
    let mut attempts = 0;
    while lines.len() < counts.len() {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(Error::Generator("could not place skew lines".into()));
        }
        let l = random_flat(&mut rng, n, 1)?;
        let mut trial = lines.clone();
        trial.push(l);
        if are_skew(&trial)? {
            lines = trial;
        }
    }
    let mut c = Collector::new();
    for (l, &k) in lines.iter().zip(counts) {
        fill_flat(&mut c, &mut rng, l, k)?;
    }
    Ok(Instance {
        point_set: c.finish(n)?,
        provenance: GeneratorSpec::Skew {
            n,
            counts: counts.to_vec(),
            seed,
        },
        known_config: Some(PlaneConfiguration::new(lines)?),
    })
}

/// Two flats of dimensions `dims` meeting exactly in one point `p`, with
/// `counts[i]` points on the i-th flat away from `p`, and `p` itself when
/// `include_point` is set.
pub fn gen_meeting(
    n: usize,
    dims: [usize; 2],
    counts: [usize; 2],
    include_point: bool,
    seed: u64,
) -> Result<Instance> {
    let [a, b] = dims;
    if a == 0 || b == 0 || a + b > n {
        return Err(Error::Generator(format!(
            "flats of dimensions {a} and {b} cannot meet in a point of P^{n}"
        )));
    }
    let mut rng = rng_for(seed, 0);
    let m = random_unimodular(&mut rng, n + 1);
    let first: Vec<usize> = (0..=a).collect();
    let second: Vec<usize> = std::iter::once(0).chain(a + 1..=a + b).collect();
    let mut c = Collector::new();
    let mut flats = Vec::new();
    for (block, &count) in [&first, &second].into_iter().zip(&counts) {
        let flat = Flat::coordinate(n, block)?.transform(&m)?;
        c.fill(count, |h| {
            let coeffs = random_coeffs(&mut rng, block.len(), h);
            if coeffs[1..].iter().all(|&v| v == 0) {
                return None;
            }
            let mut v = vec![0; n + 1];
            for (&k, &x) in block.iter().zip(&coeffs) {
                v[k] = x;
            }
            ProjPoint::from_ints(&v).ok()?.transform(&m).ok()
        })?;
        flats.push(flat);
    }
    if include_point {
        let mut v = vec![0; n + 1];
        v[0] = 1;
        c.insert(ProjPoint::from_ints(&v)?.transform(&m)?);
    }
    Ok(Instance {
        point_set: c.finish(n)?,
        provenance: GeneratorSpec::Meeting {
            n,
            dims,
            counts,
            include_point,
            seed,
        },
        known_config: Some(PlaneConfiguration::new(flats)?),
    })
}

/// A candidate for the counterexample search: a set that plausibly has
/// CBP(r) with at most `(d+1)r + 1` points. The mix favours unions of
/// collinear groups and planar grids, which are where CBP sets live.
pub fn gen_candidate(d: usize, r: usize, seed: u64, trial: u64) -> Result<Instance> {
    let mut rng = rng_for(seed, trial);
    let bound = (d + 1) * r + 1;
    let provenance = GeneratorSpec::Candidate { d, r, seed, trial };
    let strategy = rng.random_range(0..4u8);
    let mut c = Collector::new();
    let mut flats: Vec<Flat> = Vec::new();
    let n;
    match strategy {
        // Random lines in general position, each carrying about r + 2 points.
        0 => {
            n = rng.random_range(2..=(d + 1).clamp(2, 5));
            let k = rng.random_range(2..=(d + 1).max(2));
            for _ in 0..k {
                let line = random_flat(&mut rng, n, 1)?;
                let want = r + 2 + rng.random_range(0..=1);
                fill_flat(&mut c, &mut rng, &line, want)?;
                flats.push(line);
            }
        }
        // Split pieces: lines and planar complete-intersection grids.
        1 => {
            let mut pieces = Vec::new();
            let mut dim_used = 0;
            while dim_used < d + 1 {
                let piece = if r >= 1 && rng.random_bool(0.3) {
                    let rows = rng.random_range(2..=r + 1);
                    Piece::Grid {
                        rows,
                        cols: r + 3 - rows,
                    }
                } else {
                    Piece::Points {
                        dim: 1,
                        count: r + 2,
                    }
                };
                dim_used += piece.dim();
                pieces.push(piece);
            }
            let needed: usize = pieces.iter().map(|p| p.dim() + 1).sum();
            let inst = gen_split(needed - 1, &pieces, 0, rng.random())?;
            n = inst.point_set.ambient_n();
            for p in inst.point_set.points() {
                c.insert(p.clone());
            }
            flats.extend(
                inst.known_config
                    .expect("split sets carry a config")
                    .flats()
                    .to_vec(),
            );
        }
        // Random flats of dimension 1..=3 with loosely sized groups.
        2 => {
            n = rng.random_range(2..=5);
            let k = rng.random_range(1..=3);
            for _ in 0..k {
                let dim = *[1, 1, 2, 3].choose(&mut rng).expect("nonempty").min(&n);
                let flat = random_flat(&mut rng, n, dim)?;
                let want = rng.random_range(r + 1..=2 * r + 3);
                fill_flat(&mut c, &mut rng, &flat, want)?;
                flats.push(flat);
            }
        }
        // Unstructured points.
        _ => {
            n = rng.random_range(2..=4);
            let size = rng.random_range((r + 2).min(bound)..=bound);
            c.fill(size, |h| {
                ProjPoint::from_ints(&random_coeffs(&mut rng, n + 1, h)).ok()
            })?;
        }
    }
    c.points.truncate(bound);
    flats.sort_by_key(|f| format!("{f:?}"));
    flats.dedup();
    let known_config = PlaneConfiguration::new(flats).ok();
    Ok(Instance {
        point_set: c.finish(n)?,
        provenance,
        known_config,
    })
}
