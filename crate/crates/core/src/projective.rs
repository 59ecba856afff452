//! Points, flats and finite point sets in projective space over the rationals.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{rat, QMatrix, Rational};

/// A point of P^n, normalized so its first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Rational>,
}

impl ProjPoint {
    pub fn new(mut coords: Vec<Rational>) -> Result<Self> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(Error::ZeroPoint)?;
        if !lead.is_one() {
            for c in coords.iter_mut() {
                if !c.is_zero() {
                    *c = &*c / &lead;
                }
            }
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// The n of P^n.
    pub fn ambient_n(&self) -> usize {
        self.coords.len() - 1
    }

    /// Coordinate vector in P^m (m ≥ n) obtained by appending zeros.
    pub fn embed(&self, m: usize) -> ProjPoint {
        let mut coords = self.coords.clone();
        coords.resize(m + 1, Rational::zero());
        ProjPoint { coords }
    }

    /// Image under the linear map `coords ↦ matrix · coords`.
    pub fn transform(&self, matrix: &QMatrix) -> Result<ProjPoint> {
        ProjPoint::new(matrix.mul_vec(&self.coords)?)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(":"))
    }
}

/// A linear subspace of P^n, stored as its reduced row-echelon basis so that
/// two flats are equal exactly when their bases are.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "FlatRecord", try_from = "FlatRecord")]
pub struct Flat {
    ambient_n: usize,
    basis: QMatrix,
}

/// Serialized form of a flat: the ambient dimension and a row basis.
#[derive(Serialize, Deserialize)]
struct FlatRecord {
    n: usize,
    proj_dim: usize,
    #[serde(with = "crate::io::rational_rows")]
    basis: Vec<Vec<Rational>>,
}

impl From<Flat> for FlatRecord {
    fn from(f: Flat) -> Self {
        FlatRecord {
            n: f.ambient_n,
            proj_dim: f.proj_dim(),
            basis: f.basis.row_vecs(),
        }
    }
}

impl TryFrom<FlatRecord> for Flat {
    type Error = Error;

    fn try_from(r: FlatRecord) -> Result<Flat> {
        let rows = QMatrix::from_rows(r.n + 1, r.basis)?;
        let flat = Flat::from_rows(r.n, &rows)?.ok_or(Error::EmptyInput("flat basis"))?;
        if flat.proj_dim() != r.proj_dim {
            return Err(Error::Parse(format!(
                "basis spans a {}-flat, record says {}",
                flat.proj_dim(),
                r.proj_dim
            )));
        }
        Ok(flat)
    }
}

/// Anything that can be fed to [`span`].
#[derive(Clone, Copy, Debug)]
pub enum Spanning<'a> {
    Point(&'a ProjPoint),
    Flat(&'a Flat),
}

impl<'a> From<&'a ProjPoint> for Spanning<'a> {
    fn from(p: &'a ProjPoint) -> Self {
        Spanning::Point(p)
    }
}

impl<'a> From<&'a Flat> for Spanning<'a> {
    fn from(f: &'a Flat) -> Self {
        Spanning::Flat(f)
    }
}

impl Flat {
    /// Flat spanned by the rows of `rows` (any spanning set, not necessarily
    /// independent). Returns `None` if all rows are zero.
    pub fn from_rows(ambient_n: usize, rows: &QMatrix) -> Result<Option<Flat>> {
        if rows.cols() != ambient_n + 1 {
            return Err(Error::AmbientMismatch {
                expected: ambient_n,
                found: rows.cols().saturating_sub(1),
            });
        }
        let r = rows.rref();
        if r.rank == 0 {
            return Ok(None);
        }
        let keep: Vec<usize> = (0..r.rank).collect();
        Ok(Some(Flat {
            ambient_n,
            basis: r.reduced.select_rows(&keep),
        }))
    }

    pub fn through_points(points: &[&ProjPoint]) -> Result<Flat> {
        let items: Vec<Spanning> = points.iter().map(|p| Spanning::Point(p)).collect();
        span(&items)
    }

    /// Coordinate flat spanned by the standard basis vectors `indices` of Q^{n+1}.
    pub fn coordinate(ambient_n: usize, indices: &[usize]) -> Result<Flat> {
        let rows = QMatrix::from_fn(indices.len(), ambient_n + 1, |i, j| {
            if indices[i] == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        Flat::from_rows(ambient_n, &rows)?.ok_or(Error::EmptyInput("coordinate flat"))
    }

    pub fn whole_space(ambient_n: usize) -> Flat {
        Flat {
            ambient_n,
            basis: QMatrix::identity(ambient_n + 1),
        }
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn proj_dim(&self) -> usize {
        self.basis.rows() - 1
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        contains(self, p)
    }

    pub fn transform(&self, matrix: &QMatrix) -> Result<Flat> {
        let image = self.basis.mul(&matrix.transpose())?;
        Ok(Flat::from_rows(self.ambient_n, &image)?.expect("invertible map keeps rank"))
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Flat(P^{} in P^{}: {:?})",
            self.proj_dim(),
            self.ambient_n,
            self.basis
        )
    }
}

fn item_ambient(item: &Spanning) -> usize {
    match item {
        Spanning::Point(p) => p.ambient_n(),
        Spanning::Flat(f) => f.ambient_n(),
    }
}

/// Smallest flat containing every input.
pub fn span(items: &[Spanning]) -> Result<Flat> {
    let first = items.first().ok_or(Error::EmptyInput("span of nothing"))?;
    let n = item_ambient(first);
    let mut rows = Vec::new();
    for item in items {
        let m = item_ambient(item);
        if m != n {
            return Err(Error::AmbientMismatch {
                expected: n,
                found: m,
            });
        }
        match item {
            Spanning::Point(p) => rows.push(p.coords().to_vec()),
            Spanning::Flat(f) => rows.extend(f.basis().row_vecs()),
        }
    }
    let stacked = QMatrix::from_rows(n + 1, rows)?;
    Ok(Flat::from_rows(n, &stacked)?.expect("points are nonzero"))
}

pub fn span_flats(flats: &[Flat]) -> Result<Flat> {
    let items: Vec<Spanning> = flats.iter().map(Spanning::Flat).collect();
    span(&items)
}

pub fn span_points(points: &[ProjPoint]) -> Result<Flat> {
    let items: Vec<Spanning> = points.iter().map(Spanning::Point).collect();
    span(&items)
}

/// The intersection `a ∩ b`, or `None` when it is empty as a projective set.
pub fn intersect(a: &Flat, b: &Flat) -> Result<Option<Flat>> {
    if a.ambient_n != b.ambient_n {
        return Err(Error::AmbientMismatch {
            expected: a.ambient_n,
            found: b.ambient_n,
        });
    }
    // λ·A = μ·B  ⇔  (λ, μ) ∈ ker [Aᵀ | -Bᵀ].
    let ra = a.basis.rows();
    let rb = b.basis.rows();
    let n1 = a.ambient_n + 1;
    let system = QMatrix::from_fn(n1, ra + rb, |i, j| {
        if j < ra {
            a.basis.get(j, i).clone()
        } else {
            -b.basis.get(j - ra, i).clone()
        }
    });
    let kernel = system.kernel();
    if kernel.is_empty() {
        return Ok(None);
    }
    let rows = kernel
        .iter()
        .map(|v| {
            (0..n1)
                .map(|c| {
                    let mut acc = Rational::zero();
                    for (k, lambda) in v[..ra].iter().enumerate() {
                        if !lambda.is_zero() {
                            acc += lambda * a.basis.get(k, c);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Flat::from_rows(a.ambient_n, &QMatrix::from_rows(n1, rows)?)
}

pub fn contains(f: &Flat, p: &ProjPoint) -> bool {
    if f.ambient_n != p.ambient_n() {
        return false;
    }
    // Reduce p against the echelon basis; a zero remainder means membership.
    let mut residual = p.coords().to_vec();
    for k in 0..f.basis.rows() {
        let row = f.basis.row(k);
        let pc = row
            .iter()
            .position(|v| !v.is_zero())
            .expect("basis row nonzero");
        let coef = residual[pc].clone();
        if coef.is_zero() {
            continue;
        }
        for (r, b) in residual.iter_mut().zip(row) {
            if !b.is_zero() {
                *r -= &coef * b;
            }
        }
    }
    residual.iter().all(Zero::is_zero)
}

/// Pairwise disjointness of the flats.
pub fn are_skew(flats: &[Flat]) -> Result<bool> {
    for i in 0..flats.len() {
        for j in i + 1..flats.len() {
            if intersect(&flats[i], &flats[j])?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Each flat is disjoint from the span of all the others.
pub fn is_split(flats: &[Flat]) -> Result<bool> {
    if flats.len() <= 1 {
        return Ok(true);
    }
    for i in 0..flats.len() {
        let others: Vec<Flat> = flats
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, f)| f.clone())
            .collect();
        let rest = span_flats(&others)?;
        if intersect(&flats[i], &rest)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finite set of distinct points in a common P^n. Labels are the indices
/// into [`PointSet::points`].
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    ambient_n: usize,
    points: Vec<ProjPoint>,
}

impl PointSet {
    pub fn new(ambient_n: usize, points: Vec<ProjPoint>) -> Result<Self> {
        let mut seen: HashMap<&ProjPoint, usize> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if p.ambient_n() != ambient_n {
                return Err(Error::AmbientMismatch {
                    expected: ambient_n,
                    found: p.ambient_n(),
                });
            }
            if let Some(&first) = seen.get(p) {
                return Err(Error::DuplicatePoint { first, second: i });
            }
            seen.insert(p, i);
        }
        Ok(PointSet { ambient_n, points })
    }

    pub fn empty(ambient_n: usize) -> Self {
        PointSet {
            ambient_n,
            points: Vec::new(),
        }
    }

    pub fn from_ints(ambient_n: usize, points: &[&[i64]]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|c| ProjPoint::from_ints(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ambient_n, pts)
    }

    pub fn ambient_n(&self) -> usize {
        self.ambient_n
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn point(&self, label: usize) -> &ProjPoint {
        &self.points[label]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn check_label(&self, label: usize) -> Result<()> {
        if label < self.len() {
            Ok(())
        } else {
            Err(Error::LabelOutOfRange {
                label,
                len: self.len(),
            })
        }
    }

    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// The set with `label` removed; remaining points keep their relative order.
    pub fn without(&self, label: usize) -> PointSet {
        let points = self
            .points
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != label)
            .map(|(_, p)| p.clone())
            .collect();
        PointSet {
            ambient_n: self.ambient_n,
            points,
        }
    }

    pub fn subset(&self, labels: &[usize]) -> PointSet {
        PointSet {
            ambient_n: self.ambient_n,
            points: labels.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&ProjPoint) -> bool) -> PointSet {
        PointSet {
            ambient_n: self.ambient_n,
            points: self.points.iter().filter(|p| keep(p)).cloned().collect(),
        }
    }

    /// Adds `p` unless it is already present.
    pub fn with_point(&self, p: ProjPoint) -> Result<PointSet> {
        if p.ambient_n() != self.ambient_n {
            return Err(Error::AmbientMismatch {
                expected: self.ambient_n,
                found: p.ambient_n(),
            });
        }
        let mut points = self.points.clone();
        if !points.contains(&p) {
            points.push(p);
        }
        Ok(PointSet {
            ambient_n: self.ambient_n,
            points,
        })
    }

    /// Zero-padded copy in P^m.
    pub fn embed(&self, m: usize) -> Result<PointSet> {
        if m < self.ambient_n {
            return Err(Error::AmbientMismatch {
                expected: self.ambient_n,
                found: m,
            });
        }
        Ok(PointSet {
            ambient_n: m,
            points: self.points.iter().map(|p| p.embed(m)).collect(),
        })
    }

    pub fn transform(&self, matrix: &QMatrix) -> Result<PointSet> {
        let points = self
            .points
            .iter()
            .map(|p| p.transform(matrix))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(self.ambient_n, points)
    }

    pub fn span(&self) -> Result<Flat> {
        span_points(&self.points)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet(P^{}, {:?})", self.ambient_n, self.points)
    }
}

/// An invertible linear change of coordinates `x ↦ matrix · x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordinateChange {
    pub matrix: QMatrix,
    pub inverse: QMatrix,
}

impl CoordinateChange {
    pub fn identity(n: usize) -> Self {
        CoordinateChange {
            matrix: QMatrix::identity(n + 1),
            inverse: QMatrix::identity(n + 1),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == QMatrix::identity(self.matrix.rows())
    }
}

/// Moves `x` into the affine chart x0 ≠ 0.
///
/// The new coordinate x0' = x0 + c1·x1 + … + cn·xn, other coordinates are
/// unchanged. The coefficients come from a SplitMix64 stream seeded with
/// `seed` and mapped into [-3, 3]; draws repeat until no point of `x` lies on
/// the new hyperplane x0' = 0.
pub fn ensure_x0_nonvanishing(x: &PointSet, seed: u64) -> Result<(PointSet, CoordinateChange)> {
    let n = x.ambient_n();
    if x.points().iter().all(|p| !p.coords()[0].is_zero()) {
        return Ok((x.clone(), CoordinateChange::identity(n)));
    }
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut spread = 3i64;
    loop {
        let coeffs: Vec<i64> = (0..n).map(|_| rng.random_range(-spread..=spread)).collect();
        let hits_point = x.points().iter().any(|p| {
            let c = p.coords();
            let mut value = c[0].clone();
            for (k, &a) in coeffs.iter().enumerate() {
                value += &c[k + 1] * rat(a);
            }
            value.is_zero()
        });
        if hits_point {
            // Only finitely many bad hyperplanes; widening the range guarantees progress.
            spread += 1;
            continue;
        }
        let mut matrix = QMatrix::identity(n + 1);
        let mut inverse = QMatrix::identity(n + 1);
        for (k, &a) in coeffs.iter().enumerate() {
            matrix.set(0, k + 1, rat(a));
            inverse.set(0, k + 1, rat(-a));
        }
        let image = x.transform(&matrix)?;
        return Ok((image, CoordinateChange { matrix, inverse }));
    }
}

/// Primitive integer representative of a point (content 1, leading entry positive).
pub fn integer_coords(p: &ProjPoint) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    let lcm = p
        .coords()
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<num_bigint::BigInt> = p
        .coords()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    crate::qlinalg::make_primitive(&mut ints);
    if ints
        .iter()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative())
    {
        ints.iter_mut().for_each(|v| *v = -&*v);
    }
    ints
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::ratio;
    use proptest::prelude::*;

    fn pt(c: &[i64]) -> ProjPoint {
        ProjPoint::from_ints(c).unwrap()
    }

    fn line(a: &[i64], b: &[i64]) -> Flat {
        Flat::through_points(&[&pt(a), &pt(b)]).unwrap()
    }

    #[test]
    fn normalization() {
        let p = pt(&[0, 2, 4]);
        assert_eq!(p.coords(), &[rat(0), rat(1), rat(2)]);
        assert_eq!(p, pt(&[0, -1, -2]));
        assert!(matches!(
            ProjPoint::from_ints(&[0, 0]),
            Err(Error::ZeroPoint)
        ));
    }

    #[test]
    fn span_examples() {
        assert_eq!(line(&[1, 0, 0], &[0, 1, 0]).proj_dim(), 1);
        let plane =
            Flat::through_points(&[&pt(&[1, 0, 0, 0]), &pt(&[0, 1, 0, 0]), &pt(&[0, 0, 1, 0])])
                .unwrap();
        assert_eq!(plane.proj_dim(), 2);
        let l1 = line(&[1, 0, 0, 0], &[0, 1, 0, 0]);
        let l2 = line(&[0, 0, 1, 0], &[0, 0, 0, 1]);
        assert_eq!(span_flats(&[l1, l2]).unwrap().proj_dim(), 3);
        assert!(matches!(span(&[]), Err(Error::EmptyInput(_))));
    }

    #[test]
    fn intersect_examples() {
        let l = line(&[1, 0, 0], &[0, 1, 0]);
        assert_eq!(intersect(&l, &l).unwrap(), Some(l.clone()));
        let m = line(&[1, 0, 1], &[0, 1, 1]);
        let meet = intersect(&l, &m).unwrap().unwrap();
        assert_eq!(meet.proj_dim(), 0);
        assert!(meet.contains(&pt(&[1, -1, 0])));
        let x_axis = line(&[1, 0, 0, 0], &[0, 1, 0, 0]);
        let other = line(&[0, 0, 1, 0], &[0, 0, 0, 1]);
        assert_eq!(intersect(&x_axis, &other).unwrap(), None);
    }

    #[test]
    fn contains_examples() {
        let p = pt(&[3, 1, 2]);
        assert!(Flat::through_points(&[&p]).unwrap().contains(&p));
        assert!(!line(&[1, 0, 0], &[0, 1, 0]).contains(&pt(&[0, 0, 1])));
        assert!(line(&[1, 0, 1], &[0, 1, 0]).contains(&pt(&[1, 1, 1])));
        assert!(!line(&[1, 0, 1], &[0, 1, 0]).contains(&pt(&[1, 1, 2])));
    }

    #[test]
    fn skew_and_split_examples() {
        let l1 = line(&[1, 0, 0, 0], &[0, 1, 0, 0]);
        let l2 = line(&[0, 0, 1, 0], &[0, 0, 0, 1]);
        assert!(are_skew(&[l1.clone(), l2.clone()]).unwrap());
        assert!(is_split(&[l1, l2]).unwrap());

        let a = line(&[1, 0, 0], &[0, 1, 0]);
        let b = line(&[1, 0, 1], &[0, 1, 1]);
        assert!(!are_skew(&[a, b]).unwrap());

        let blocks: Vec<Flat> = [[0, 1], [2, 3], [4, 5]]
            .iter()
            .map(|ix| Flat::coordinate(5, ix).unwrap())
            .collect();
        assert!(are_skew(&blocks).unwrap());
        assert!(is_split(&blocks).unwrap());

        // Three pairwise-skew lines in P^3.
        let m1 = line(&[1, 0, 0, 0], &[0, 1, 0, 0]);
        let m2 = line(&[0, 0, 1, 0], &[0, 0, 0, 1]);
        let m3 = line(&[1, 0, 1, 0], &[0, 1, 0, 1]);
        let three = [m1, m2, m3];
        assert!(are_skew(&three).unwrap());
        assert!(!is_split(&three).unwrap());
    }

    #[test]
    fn x0_chart() {
        let x = PointSet::from_ints(2, &[&[1, 2, 3], &[2, 0, 1]]).unwrap();
        let (y, change) = ensure_x0_nonvanishing(&x, 7).unwrap();
        assert!(change.is_identity());
        assert_eq!(y, x);

        let x = PointSet::from_ints(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let (y, change) = ensure_x0_nonvanishing(&x, 7).unwrap();
        assert!(y.points().iter().all(|p| !p.coords()[0].is_zero()));
        assert_eq!(
            change.matrix.mul(&change.inverse).unwrap(),
            QMatrix::identity(3)
        );
        assert_eq!(y.transform(&change.inverse).unwrap(), x);
        assert_eq!(ensure_x0_nonvanishing(&x, 7).unwrap().0, y);
    }

    #[test]
    fn duplicate_points_rejected() {
        let err = PointSet::from_ints(1, &[&[1, 2], &[2, 4]]).unwrap_err();
        assert!(matches!(
            err,
            Error::DuplicatePoint {
                first: 0,
                second: 1
            }
        ));
    }

    #[test]
    fn integer_representative() {
        let p = ProjPoint::new(vec![ratio(-1, 2), rat(0), ratio(3, 4)]).unwrap();
        let ints: Vec<i64> = integer_coords(&p)
            .iter()
            .map(|v| i64::try_from(v).unwrap())
            .collect();
        assert_eq!(ints, vec![2, 0, -3]);
    }

    fn flat_strategy(n: usize) -> impl Strategy<Value = Flat> {
        (1usize..=n).prop_flat_map(move |k| {
            proptest::collection::vec(-2i64..=2, k * (n + 1)).prop_filter_map(
                "degenerate basis",
                move |v| {
                    let m = QMatrix::from_fn(k, n + 1, |i, j| rat(v[i * (n + 1) + j]));
                    Flat::from_rows(n, &m).ok().flatten()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn split_identity(flats in proptest::collection::vec(flat_strategy(5), 1..4)) {
            let total: usize = flats.iter().map(Flat::proj_dim).sum();
            let spanned = span_flats(&flats).unwrap().proj_dim();
            let split = is_split(&flats).unwrap();
            prop_assert_eq!(split, spanned == total + flats.len() - 1);
            if split {
                prop_assert!(are_skew(&flats).unwrap());
            }
            if flats.len() == 2 {
                prop_assert_eq!(split, are_skew(&flats).unwrap());
            }
        }

        #[test]
        fn intersection_lies_in_both(a in flat_strategy(3), b in flat_strategy(3)) {
            if let Some(meet) = intersect(&a, &b).unwrap() {
                for row in meet.basis().row_vecs() {
                    let p = ProjPoint::new(row).unwrap();
                    prop_assert!(a.contains(&p) && b.contains(&p));
                }
                prop_assert!(meet.proj_dim() <= a.proj_dim().min(b.proj_dim()));
            }
            let joined = span_flats(&[a.clone(), b.clone()]).unwrap();
            prop_assert_eq!(span(&[Spanning::Flat(&joined), Spanning::Flat(&a)]).unwrap(), joined);
        }

        #[test]
        fn membership_ignores_scaling(f in flat_strategy(3), coeffs in proptest::collection::vec(-3i64..=3, 4), s in 1i64..5) {
            let combo: Vec<Rational> = (0..4).map(|c| {
                (0..f.basis().rows()).fold(Rational::zero(), |acc, k| acc + f.basis().get(k, c) * rat(coeffs[k]))
            }).collect();
            if let Ok(p) = ProjPoint::new(combo.clone()) {
                prop_assert!(f.contains(&p));
                let scaled = ProjPoint::new(combo.iter().map(|v| v * rat(-s)).collect()).unwrap();
                prop_assert_eq!(&scaled, &p);
            }
        }
    }
}
