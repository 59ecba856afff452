//! Hilbert functions of finite point sets.
//!
//! The degree-i piece of the coordinate ring is identified with the row space
//! of the evaluation matrix: one row per point, one column per monomial of
//! degree i. Its dimension, `HF_X(i)`, is the rank of that matrix.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projective::{integer_coords, PointSet, ProjPoint};
use crate::qlinalg::{self, QMatrix, Rational};

/// Exponent vector of a monomial in X0..Xn.
pub type Exponents = Vec<u32>;

/// Hilbert function values `HF(0), …, HF(r_X + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertFunction {
    pub values: Vec<usize>,
    pub reg_index: usize,
    pub cardinality: usize,
}

impl HilbertFunction {
    /// `HF_X(i)` for any integer degree.
    pub fn at(&self, i: i64) -> usize {
        if i < 0 {
            0
        } else {
            self.values
                .get(i as usize)
                .copied()
                .unwrap_or(self.cardinality)
        }
    }

    /// Values up to and including the regularity index.
    pub fn up_to_regularity(&self) -> &[usize] {
        &self.values[..=self.reg_index]
    }

    pub fn delta(&self) -> Vec<usize> {
        delta_hf(self)
    }
}

/// Degree-reverse-lexicographic comparison of two exponent vectors.
pub fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // Smaller power of the last differing variable wins.
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// All monomials of degree `i` in `n + 1` variables, largest first in degrevlex.
pub fn monomials(n: usize, i: usize) -> Vec<Exponents> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n + 1];
    fill(&mut current, 0, i as u32, &mut out);
    out.sort_by(|a, b| degrevlex(b, a));
    out
}

fn fill(current: &mut Vec<u32>, var: usize, left: u32, out: &mut Vec<Exponents>) {
    if var + 1 == current.len() {
        current[var] = left;
        out.push(current.clone());
        return;
    }
    for e in (0..=left).rev() {
        current[var] = e;
        fill(current, var + 1, left - e, out);
    }
    current[var] = 0;
}

pub fn eval_monomial(exps: &[u32], coords: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for (e, c) in exps.iter().zip(coords) {
        if *e > 0 {
            if c.is_zero() {
                return Rational::zero();
            }
            acc *= num_traits::pow(c.clone(), *e as usize);
        }
    }
    acc
}

/// Scales rationals to integers over their least common denominator.
pub(crate) fn over_common_denominator(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    use num_integer::Integer;
    let den = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let nums = values
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    (nums, den)
}

/// `table[k][e] = a_k^e` for `e ≤ max`.
pub(crate) fn power_table(a: &[BigInt], max: usize) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|c| {
            let mut row = Vec::with_capacity(max + 1);
            row.push(BigInt::one());
            for e in 0..max {
                let next = &row[e] * c;
                row.push(next);
            }
            row
        })
        .collect()
}

pub(crate) fn int_monomial(exps: &[u32], table: &[Vec<BigInt>]) -> BigInt {
    let mut acc = BigInt::one();
    for (e, row) in exps.iter().zip(table) {
        if *e > 0 {
            acc *= &row[*e as usize];
        }
    }
    acc
}

/// Evaluation of a form given by coefficients over `monomials(n, degree)`.
/// The sum runs over integers after clearing denominators.
pub fn eval_form(coeffs: &[Rational], degree: usize, coords: &[Rational]) -> Rational {
    let mons = monomials(coords.len() - 1, degree);
    let (c, dc) = over_common_denominator(coeffs);
    let (a, da) = over_common_denominator(coords);
    let table = power_table(&a, degree);
    let mut acc = BigInt::zero();
    for (c, m) in c.iter().zip(&mons) {
        if !c.is_zero() {
            acc += c * int_monomial(m, &table);
        }
    }
    Rational::new(acc, dc * num_traits::pow(da, degree))
}

/// Rows of monomial values for the given coordinate vectors.
pub(crate) fn eval_rows(points: &[&[Rational]], mons: &[Exponents]) -> QMatrix {
    QMatrix::from_fn(points.len(), mons.len(), |r, c| {
        eval_monomial(&mons[c], points[r])
    })
}

/// Evaluation matrix of `x` in degree `i` at the normalized coordinates.
pub fn eval_matrix(x: &PointSet, i: usize) -> QMatrix {
    let mons = monomials(x.ambient_n(), i);
    let coords: Vec<&[Rational]> = x.points().iter().map(ProjPoint::coords).collect();
    eval_rows(&coords, &mons)
}

/// Multinomial coefficient `|a|! / (a_0! ⋯ a_n!)`.
pub fn multinomial(exps: &[u32]) -> BigInt {
    let mut acc = BigInt::one();
    let mut total = 0u32;
    for &e in exps {
        for k in 1..=e {
            total += 1;
            acc = acc * BigInt::from(total) / BigInt::from(k);
        }
    }
    acc
}

fn dot_power(a: &[Rational], b: &[Rational], i: usize) -> Rational {
    num_traits::pow(qlinalg::dot(a, b), i)
}

/// Gram matrix `E·D·Eᵀ` of the degree-`i` evaluation matrix `E`, where `D`
/// is the diagonal of multinomial coefficients. Its `(p, q)` entry collapses
/// to `⟨p, q⟩^i` (normalized coordinates). Because `D` is positive definite,
/// it has the same rank, column space and left kernel as `E`.
pub fn gram_matrix(x: &PointSet, i: usize) -> QMatrix {
    let pts = x.points();
    let mut g = QMatrix::zeros(pts.len(), pts.len());
    for a in 0..pts.len() {
        for b in a..pts.len() {
            let v = dot_power(pts[a].coords(), pts[b].coords(), i);
            g.set(b, a, v.clone());
            g.set(a, b, v);
        }
    }
    g
}

/// Integer Gram matrix on primitive integer representatives: a congruent
/// rescaling of [`gram_matrix`], hence of equal rank.
pub(crate) struct IntegerGram {
    entries: Vec<Vec<BigInt>>,
}

impl IntegerGram {
    pub(crate) fn new(points: &[&ProjPoint], i: usize) -> Self {
        let reps: Vec<Vec<BigInt>> = points.iter().map(|p| integer_coords(p)).collect();
        let m = reps.len();
        let mut entries = vec![vec![BigInt::zero(); m]; m];
        for a in 0..m {
            for b in a..m {
                let d: BigInt = reps[a].iter().zip(&reps[b]).map(|(u, v)| u * v).sum();
                let v = num_traits::pow(d, i);
                entries[b][a] = v.clone();
                entries[a][b] = v;
            }
        }
        IntegerGram { entries }
    }

    pub(crate) fn rank(&self) -> usize {
        rank_of(self.entries.clone())
    }

    /// Rank with row and column `skip` deleted.
    pub(crate) fn rank_without(&self, skip: usize) -> usize {
        let rows = self
            .entries
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != skip)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != skip)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        rank_of(rows)
    }
}

fn rank_of(mut rows: Vec<Vec<BigInt>>) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    qlinalg::bareiss_rank(&mut rows, cols)
}

/// Rank of the evaluation matrix of an arbitrary list of points.
pub(crate) fn eval_rank(points: &[&ProjPoint], i: usize) -> usize {
    IntegerGram::new(points, i).rank()
}

/// `HF_X(i)`, the rank of [`eval_matrix`]; zero in negative degrees.
///
/// The rank is taken on the |X|×|X| Gram matrix, which is much smaller than
/// the evaluation matrix once `C(n+i, i)` exceeds |X|.
pub fn hf(x: &PointSet, i: i64) -> usize {
    if i < 0 || x.is_empty() {
        return 0;
    }
    let pts: Vec<&ProjPoint> = x.points().iter().collect();
    eval_rank(&pts, i as usize)
}

/// Hilbert function up to stabilization, together with the regularity index.
pub fn hf_full(x: &PointSet) -> Result<HilbertFunction> {
    if x.is_empty() {
        return Err(Error::EmptyInput("Hilbert function of the empty set"));
    }
    let size = x.len();
    let mut values = Vec::new();
    let mut i = 0i64;
    loop {
        let v = hf(x, i);
        values.push(v);
        if v == size {
            break;
        }
        i += 1;
    }
    let reg_index = values.len() - 1;
    values.push(size);
    Ok(HilbertFunction {
        values,
        reg_index,
        cardinality: size,
    })
}

/// First differences `ΔHF(i)` for `i = 0..=r_X + 1`.
pub fn delta_hf(h: &HilbertFunction) -> Vec<usize> {
    let mut prev = 0;
    h.values
        .iter()
        .map(|&v| {
            let d = v - prev;
            prev = v;
            d
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::rat;

    fn grid33() -> PointSet {
        let mut pts = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                pts.push(ProjPoint::from_ints(&[1, a, b]).unwrap());
            }
        }
        PointSet::new(2, pts).unwrap()
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(1, 1), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(monomials(2, 2).len(), 6);
        assert_eq!(monomials(3, 3).len(), 20);
        for n in 0..4 {
            for i in 0..6 {
                assert_eq!(monomials(n, i).len(), binomial(n + i, i));
            }
        }
    }

    #[test]
    fn degrevlex_order_in_three_variables() {
        let got = monomials(2, 2);
        let want = vec![
            vec![2, 0, 0],
            vec![1, 1, 0],
            vec![0, 2, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
            vec![0, 0, 2],
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn eval_matrix_examples() {
        let x = grid33();
        let m0 = eval_matrix(&x, 0);
        assert_eq!(m0.cols(), 1);
        assert!((0..9).all(|r| m0.get(r, 0) == &rat(1)));

        let line = PointSet::from_ints(1, &[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(
            eval_matrix(&line, 1),
            QMatrix::from_i64(&[&[1, 0], &[1, 1]])
        );
        assert_eq!(eval_matrix(&x, 3).rank(), 8);
    }

    #[test]
    fn hf_examples() {
        let x = grid33();
        let values: Vec<usize> = (0..5).map(|i| hf(&x, i)).collect();
        assert_eq!(values, vec![1, 3, 6, 8, 9]);
        assert_eq!(hf(&x, -1), 0);

        let collinear: Vec<ProjPoint> = (0..6)
            .map(|t| ProjPoint::from_ints(&[1, t, 2 * t]).unwrap())
            .collect();
        let c = PointSet::new(2, collinear).unwrap();
        for i in 0..8 {
            assert_eq!(hf(&c, i), (i as usize + 1).min(6));
        }
    }

    #[test]
    fn hf_full_examples() {
        let single = PointSet::from_ints(2, &[&[1, 2, 3]]).unwrap();
        let h = hf_full(&single).unwrap();
        assert_eq!(h.values, vec![1, 1]);
        assert_eq!(h.reg_index, 0);
        assert_eq!(delta_hf(&h), vec![1, 0]);

        let general =
            PointSet::from_ints(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let h = hf_full(&general).unwrap();
        assert_eq!(h.values, vec![1, 3, 4, 4]);
        assert_eq!(h.reg_index, 2);

        let h = hf_full(&grid33()).unwrap();
        assert_eq!(h.reg_index, 4);
        assert_eq!(h.up_to_regularity(), &[1, 3, 6, 8, 9]);
        assert_eq!(delta_hf(&h), vec![1, 2, 3, 2, 1, 0]);
        assert_eq!(h.at(17), 9);

        assert!(hf_full(&PointSet::empty(2)).is_err());
    }

    #[test]
    fn collinear_delta() {
        let pts: Vec<ProjPoint> = (0..4)
            .map(|t| ProjPoint::from_ints(&[1, t, 0, 3 - t]).unwrap())
            .collect();
        let h = hf_full(&PointSet::new(3, pts).unwrap()).unwrap();
        assert_eq!(delta_hf(&h), vec![1, 1, 1, 1, 0]);
    }

    #[test]
    fn integer_rows_match_rational_rank() {
        let x = PointSet::new(
            2,
            vec![
                ProjPoint::new(vec![rat(2), rat(1), rat(0)]).unwrap(),
                ProjPoint::new(vec![rat(0), rat(3), rat(5)]).unwrap(),
                ProjPoint::new(vec![rat(7), rat(-1), rat(2)]).unwrap(),
                ProjPoint::new(vec![rat(1), rat(1), rat(1)]).unwrap(),
            ],
        )
        .unwrap();
        for i in 0..4 {
            assert_eq!(hf(&x, i), eval_matrix(&x, i as usize).rank());
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
        assert_eq!(multinomial(&[0, 0, 3]), BigInt::from(1));
        // Σ_a multinomial(a) = (n+1)^i
        let total: BigInt = monomials(2, 4).iter().map(|m| multinomial(m)).sum();
        assert_eq!(total, BigInt::from(81));
    }

    #[test]
    fn gram_is_weighted_product_of_eval_matrices() {
        let x = grid33();
        for i in 0..4 {
            let e = eval_matrix(&x, i);
            let mons = monomials(2, i);
            let weights = QMatrix::from_fn(mons.len(), mons.len(), |a, b| {
                if a == b {
                    Rational::from_integer(multinomial(&mons[a]))
                } else {
                    Rational::zero()
                }
            });
            let product = e.mul(&weights).unwrap().mul(&e.transpose()).unwrap();
            assert_eq!(product, gram_matrix(&x, i));
        }
    }

    proptest::proptest! {
        #[test]
        fn hf_agrees_with_eval_matrix_rank(
            coords in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..9),
            i in 0usize..5,
        ) {
            let mut pts: Vec<ProjPoint> = coords
                .iter()
                .filter_map(|c| ProjPoint::from_ints(c).ok())
                .collect();
            pts.sort();
            pts.dedup();
            proptest::prop_assume!(!pts.is_empty());
            let x = PointSet::new(3, pts).unwrap();
            let rank = eval_matrix(&x, i).rank();
            proptest::prop_assert_eq!(hf(&x, i as i64), rank);
            proptest::prop_assert!(rank <= x.len());
            proptest::prop_assert_eq!(gram_matrix(&x, i).rank(), rank);
        }
    }
}
