//! Plane configurations and minimum-dimension covers of point sets.
//!
//! A minimal cover can always be taken to consist of spans of matroid-closed
//! subsets of `X` (shrinking a flat to the span of the points it carries never
//! raises its dimension), so the search runs over closed sets only. Point
//! subsets are `u128` bitmasks, which caps covers at 128 points.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projective::{
    are_skew, integer_coords, is_split, span, Flat, PointSet, ProjPoint, Spanning,
};
use crate::qlinalg::{make_primitive, rat};

/// Default number of points up to which covers are searched exhaustively.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;
/// Environment variable overriding [`DEFAULT_EXHAUSTIVE_LIMIT`].
pub const LIMIT_ENV: &str = "CB_LAB_LIMIT";
const MAX_POINTS: usize = 128;

/// A union of distinct positive-dimensional flats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Flat>", into = "Vec<Flat>")]
pub struct PlaneConfiguration {
    flats: Vec<Flat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub skew: bool,
    pub split: bool,
}

impl PlaneConfiguration {
    pub fn new(flats: Vec<Flat>) -> Result<Self> {
        if let Some(first) = flats.first() {
            let n = first.ambient_n();
            if let Some(f) = flats.iter().find(|f| f.ambient_n() != n) {
                return Err(Error::AmbientMismatch {
                    expected: n,
                    found: f.ambient_n(),
                });
            }
        }
        if flats.iter().any(|f| f.proj_dim() == 0) {
            return Err(Error::InvalidConfiguration(
                "pieces must be positive-dimensional".into(),
            ));
        }
        for i in 0..flats.len() {
            if flats[i + 1..].contains(&flats[i]) {
                return Err(Error::InvalidConfiguration(
                    "pieces must be distinct".into(),
                ));
            }
        }
        Ok(PlaneConfiguration { flats })
    }

    pub fn empty() -> Self {
        PlaneConfiguration { flats: Vec::new() }
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    /// Sum of the projective dimensions of the pieces.
    pub fn dim(&self) -> usize {
        self.flats.iter().map(Flat::proj_dim).sum()
    }

    /// Number of pieces.
    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.flats.iter().any(|f| f.contains(p))
    }

    pub fn classify(&self) -> Result<Classification> {
        Ok(Classification {
            skew: are_skew(&self.flats)?,
            split: is_split(&self.flats)?,
        })
    }

    /// The configuration made of the pieces at `indices`.
    pub fn sub_configuration(&self, indices: &[usize]) -> PlaneConfiguration {
        PlaneConfiguration {
            flats: indices.iter().map(|&i| self.flats[i].clone()).collect(),
        }
    }
}

impl TryFrom<Vec<Flat>> for PlaneConfiguration {
    type Error = Error;

    fn try_from(flats: Vec<Flat>) -> Result<Self> {
        PlaneConfiguration::new(flats)
    }
}

impl From<PlaneConfiguration> for Vec<Flat> {
    fn from(p: PlaneConfiguration) -> Self {
        p.flats
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverResult {
    pub config: PlaneConfiguration,
    pub total_dim: usize,
    /// `blocks[i]` lists the labels that piece `i` is responsible for.
    pub blocks: Vec<Vec<usize>>,
    pub optimal: bool,
}

impl CoverResult {
    fn empty() -> Self {
        CoverResult {
            config: PlaneConfiguration::empty(),
            total_dim: 0,
            blocks: Vec::new(),
            optimal: true,
        }
    }

    pub fn covers(&self, x: &PointSet) -> bool {
        x.points().iter().all(|p| self.config.contains(p))
    }
}

/// A subset of `X` equal to `X ∩ span(S)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedSet {
    pub labels: Vec<usize>,
    pub proj_dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoverOptions {
    pub limit: usize,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            limit: DEFAULT_EXHAUSTIVE_LIMIT,
        }
    }
}

impl CoverOptions {
    /// Defaults, with the limit taken from `CB_LAB_LIMIT` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(LIMIT_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|limit| CoverOptions { limit })
                .map_err(|_| Error::InvalidConfiguration(format!("{LIMIT_ENV}={v:?}"))),
            Err(_) => Ok(CoverOptions::default()),
        }
    }
}

fn labels_of(mask: u128) -> Vec<usize> {
    (0..MAX_POINTS).filter(|&i| mask >> i & 1 == 1).collect()
}

fn full_mask(len: usize) -> u128 {
    if len == MAX_POINTS {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

struct Closed {
    mask: u128,
    /// Primitive integer normals cutting out the span (unused at the top level).
    normals: Vec<Vec<BigInt>>,
}

/// Closed sets of `X` grouped by the projective dimension of their span,
/// computed one level at a time.
struct Lattice<'a> {
    x: &'a PointSet,
    coords: Vec<Vec<BigInt>>,
    span_dim: usize,
    levels: Vec<Vec<Closed>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(u, _)| !u.is_zero())
        .map(|(u, v)| u * v)
        .sum()
}

/// Normals of the flat spanned by the one already cut out by `normals` and
/// the point `q`, assuming `q` lies off it.
fn add_point(normals: &[Vec<BigInt>], q: &[BigInt]) -> Vec<Vec<BigInt>> {
    let values: Vec<BigInt> = normals.iter().map(|nv| dot(nv, q)).collect();
    let pivot = values
        .iter()
        .position(|v| !v.is_zero())
        .expect("q lies off the flat");
    let (vp, np) = (&values[pivot], &normals[pivot]);
    normals
        .iter()
        .zip(&values)
        .enumerate()
        .filter(|&(j, _)| j != pivot)
        .map(|(_, (nj, vj))| {
            let mut row: Vec<BigInt> = nj.iter().zip(np).map(|(a, b)| vp * a - vj * b).collect();
            make_primitive(&mut row);
            row
        })
        .collect()
}

impl<'a> Lattice<'a> {
    fn new(x: &'a PointSet) -> Result<Self> {
        if x.len() > MAX_POINTS {
            return Err(Error::InvalidConfiguration(format!(
                "covers support at most {MAX_POINTS} points, got {}",
                x.len()
            )));
        }
        let span_dim = if x.is_empty() {
            0
        } else {
            x.span()?.proj_dim()
        };
        let coords: Vec<Vec<BigInt>> = x.points().iter().map(integer_coords).collect();
        let singletons = coords
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let a = p
                    .iter()
                    .position(|v| !v.is_zero())
                    .expect("points are nonzero");
                let normals = (0..p.len())
                    .filter(|&j| j != a)
                    .map(|j| {
                        let mut row = vec![BigInt::zero(); p.len()];
                        row[j] = p[a].clone();
                        row[a] = -&p[j];
                        make_primitive(&mut row);
                        row
                    })
                    .collect();
                Closed {
                    mask: 1 << i,
                    normals,
                }
            })
            .collect();
        Ok(Lattice {
            x,
            coords,
            span_dim,
            levels: vec![singletons],
        })
    }

    fn closure(&self, normals: &[Vec<BigInt>], known: u128) -> u128 {
        let mut mask = known;
        for (i, p) in self.coords.iter().enumerate() {
            if known >> i & 1 == 0 && normals.iter().all(|nv| dot(nv, p).is_zero()) {
                mask |= 1 << i;
            }
        }
        mask
    }

    fn flat(&self, d: usize, i: usize) -> Result<Flat> {
        let pts: Vec<&ProjPoint> = labels_of(self.levels[d][i].mask)
            .into_iter()
            .map(|l| self.x.point(l))
            .collect();
        Flat::through_points(&pts)
    }

    /// Makes levels `0..=k` available (capped at the span dimension).
    fn extend_to(&mut self, k: usize) -> Result<()> {
        let k = k.min(self.span_dim);
        while self.levels.len() <= k {
            let dim = self.levels.len();
            let next = if dim == self.span_dim {
                vec![Closed {
                    mask: full_mask(self.x.len()),
                    normals: Vec::new(),
                }]
            } else {
                let mut seen = HashSet::new();
                let mut out = Vec::new();
                for c in &self.levels[dim - 1] {
                    // Points already absorbed by an extension of `c` give the
                    // same closed set again.
                    let mut done = c.mask;
                    for q in 0..self.coords.len() {
                        if done >> q & 1 == 1 {
                            continue;
                        }
                        let normals = add_point(&c.normals, &self.coords[q]);
                        let mask = self.closure(&normals, c.mask | 1 << q);
                        done |= mask;
                        if seen.insert(mask) {
                            out.push(Closed { mask, normals });
                        }
                    }
                }
                out.sort_by_key(|c| labels_of(c.mask));
                out
            };
            self.levels.push(next);
        }
        Ok(())
    }
}

/// All closed subsets of `X` whose span has dimension at most `max_dim`,
/// by increasing dimension and then by label list.
pub fn matroid_flats(x: &PointSet, max_dim: usize) -> Result<Vec<ClosedSet>> {
    let mut lattice = Lattice::new(x)?;
    if x.is_empty() {
        return Ok(Vec::new());
    }
    lattice.extend_to(max_dim)?;
    Ok(lattice
        .levels
        .iter()
        .enumerate()
        .flat_map(|(d, level)| {
            level.iter().map(move |c| ClosedSet {
                labels: labels_of(c.mask),
                proj_dim: d,
            })
        })
        .collect())
}

/// A line through `p`: the span of `p` and the first coordinate point
/// different from it.
fn line_through(p: &ProjPoint) -> Result<Flat> {
    let n = p.ambient_n();
    if n == 0 {
        return Err(Error::NoLinesInAmbient);
    }
    let aux = (0..=n)
        .map(|j| {
            let coords = (0..=n).map(|i| rat((i == j) as i64)).collect();
            ProjPoint::new(coords).expect("coordinate point is nonzero")
        })
        .find(|e| e != p)
        .expect("P^n has at least two coordinate points");
    span(&[Spanning::Point(p), Spanning::Point(&aux)])
}

fn cost(dim: usize) -> usize {
    dim.max(1)
}

struct Search<'l, 'a> {
    lattice: &'l Lattice<'a>,
    /// Candidate blocks containing each point, as (level, index), cheapest first.
    by_point: Vec<Vec<(usize, usize)>>,
    /// `capacity[b]`: most points any collection of closed sets of total cost `b` covers.
    capacity: Vec<usize>,
    failed: HashSet<(u128, usize)>,
}

impl<'l, 'a> Search<'l, 'a> {
    fn new(lattice: &'l Lattice<'a>, budget: usize) -> Self {
        let len = lattice.x.len();
        let mut by_point = vec![Vec::new(); len];
        let first_level = if len == 1 { 0 } else { 1 };
        for (d, level) in lattice.levels.iter().enumerate().skip(first_level) {
            if cost(d) > budget {
                break;
            }
            for (i, c) in level.iter().enumerate() {
                for p in labels_of(c.mask) {
                    by_point[p].push((d, i));
                }
            }
        }
        let sizes = |d: usize, i: usize| lattice.levels[d][i].mask.count_ones();
        for cands in &mut by_point {
            cands.sort_by(|&(d1, i1), &(d2, i2)| {
                cost(d1)
                    .cmp(&cost(d2))
                    .then(sizes(d2, i2).cmp(&sizes(d1, i1)))
                    .then((d1, i1).cmp(&(d2, i2)))
            });
        }
        let largest: HashMap<usize, usize> = lattice
            .levels
            .iter()
            .enumerate()
            .map(|(d, level)| {
                let m = level.iter().map(|c| c.mask.count_ones() as usize).max();
                (cost(d), m.unwrap_or(0))
            })
            .fold(HashMap::new(), |mut acc, (c, m)| {
                let e = acc.entry(c).or_insert(0);
                *e = (*e).max(m);
                acc
            });
        let mut capacity = vec![0usize; budget + 1];
        for b in 1..=budget {
            capacity[b] = (1..=b)
                .map(|c| largest.get(&c).copied().unwrap_or(0) + capacity[b - c])
                .max()
                .unwrap_or(0);
        }
        Search {
            lattice,
            by_point,
            capacity,
            failed: HashSet::new(),
        }
    }

    fn run(&mut self, uncovered: u128, budget: usize, chosen: &mut Vec<(usize, usize)>) -> bool {
        if uncovered == 0 {
            return true;
        }
        if budget == 0
            || uncovered.count_ones() as usize > self.capacity[budget]
            || self.failed.contains(&(uncovered, budget))
        {
            return false;
        }
        let p = uncovered.trailing_zeros() as usize;
        for k in 0..self.by_point[p].len() {
            let (d, i) = self.by_point[p][k];
            let c = cost(d);
            if c > budget {
                break;
            }
            chosen.push((d, i));
            let rest = uncovered & !self.lattice.levels[d][i].mask;
            if self.run(rest, budget - c, chosen) {
                return true;
            }
            chosen.pop();
        }
        self.failed.insert((uncovered, budget));
        false
    }
}

fn assemble(lattice: &Lattice, chosen: &[(usize, usize)], optimal: bool) -> Result<CoverResult> {
    let mut uncovered = full_mask(lattice.x.len());
    let mut flats: Vec<Flat> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &(d, i) in chosen {
        let c = &lattice.levels[d][i];
        let block = labels_of(c.mask & uncovered);
        uncovered &= !c.mask;
        let flat = if d == 0 {
            line_through(lattice.x.point(block[0]))?
        } else {
            lattice.flat(d, i)?
        };
        match flats.iter().position(|f| *f == flat) {
            Some(j) => {
                blocks[j].extend(block);
                blocks[j].sort_unstable();
            }
            None => {
                flats.push(flat);
                blocks.push(block);
            }
        }
    }
    let config = PlaneConfiguration::new(flats)?;
    Ok(CoverResult {
        total_dim: config.dim(),
        config,
        blocks,
        optimal,
    })
}

/// Smallest-dimensional plane configuration containing `X`, provided its
/// dimension is at most `budget`.
pub fn min_cover(x: &PointSet, budget: usize) -> Result<Option<CoverResult>> {
    min_cover_with(x, budget, &CoverOptions::from_env()?)
}

pub fn min_cover_with(
    x: &PointSet,
    budget: usize,
    options: &CoverOptions,
) -> Result<Option<CoverResult>> {
    if x.is_empty() {
        return Ok(Some(CoverResult::empty()));
    }
    if x.ambient_n() == 0 {
        return Err(Error::NoLinesInAmbient);
    }
    if x.len() > options.limit {
        return Err(Error::Inexhaustive {
            size: x.len(),
            limit: options.limit,
            greedy: Box::new(greedy_cover(x)?),
        });
    }
    let mut lattice = Lattice::new(x)?;
    // Iterative deepening: the first feasible budget is the optimum.
    let ceiling = budget.min(cost(lattice.span_dim));
    for b in 1..=ceiling {
        lattice.extend_to(b)?;
        let mut search = Search::new(&lattice, b);
        let mut chosen = Vec::new();
        if search.run(full_mask(x.len()), b, &mut chosen) {
            return assemble(&lattice, &chosen, true).map(Some);
        }
    }
    Ok(None)
}

/// Dimension of a minimal cover (0 for the empty set).
pub fn min_cover_dim(x: &PointSet) -> Result<usize> {
    min_cover_dim_with(x, &CoverOptions::from_env()?)
}

pub fn min_cover_dim_with(x: &PointSet, options: &CoverOptions) -> Result<usize> {
    let budget = x.ambient_n().max(1);
    Ok(min_cover_with(x, budget, options)?
        .expect("the span of X, or a line, always covers X")
        .total_dim)
}

/// Whether `X` lies on a plane configuration of dimension at most `d`.
pub fn lies_on_config_dim(x: &PointSet, d: usize) -> Result<bool> {
    lies_on_config_dim_with(x, d, &CoverOptions::from_env()?)
}

pub fn lies_on_config_dim_with(x: &PointSet, d: usize, options: &CoverOptions) -> Result<bool> {
    Ok(min_cover_with(x, d, options)?.is_some())
}

/// Upper bound: repeatedly take the closed set (span dimension at most 2, or
/// all of `X`) covering the most new points per unit of dimension.
pub fn greedy_cover(x: &PointSet) -> Result<CoverResult> {
    if x.is_empty() {
        return Ok(CoverResult::empty());
    }
    if x.ambient_n() == 0 {
        return Err(Error::NoLinesInAmbient);
    }
    let mut lattice = Lattice::new(x)?;
    lattice.extend_to(2)?;
    lattice.extend_to(lattice.span_dim)?;
    let candidates: Vec<(usize, usize)> = lattice
        .levels
        .iter()
        .enumerate()
        .filter(|&(d, _)| d <= 2 || d == lattice.span_dim)
        .flat_map(|(d, level)| (0..level.len()).map(move |i| (d, i)))
        .collect();
    let mut uncovered = full_mask(x.len());
    let mut chosen = Vec::new();
    while uncovered != 0 {
        let best = candidates
            .iter()
            .copied()
            .filter(|&(d, _)| d > 0 || x.len() == 1)
            .max_by(|&(d1, i1), &(d2, i2)| {
                let gain1 = (lattice.levels[d1][i1].mask & uncovered).count_ones() as usize;
                let gain2 = (lattice.levels[d2][i2].mask & uncovered).count_ones() as usize;
                // gain1 / cost1 vs gain2 / cost2, ties to the cheaper and earlier one.
                (gain1 * cost(d2))
                    .cmp(&(gain2 * cost(d1)))
                    .then(cost(d2).cmp(&cost(d1)))
                    .then((d2, i2).cmp(&(d1, i1)))
            })
            .expect("closed sets cover every point");
        uncovered &= !lattice.levels[best.0][best.1].mask;
        chosen.push(best);
    }
    assemble(&lattice, &chosen, false)
}
