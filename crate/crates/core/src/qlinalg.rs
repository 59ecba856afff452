//! Exact rational matrices.
//!
//! Every rank, kernel and solve in the crate runs through this module. Entries
//! are arbitrary-precision rationals; elimination itself is carried out on
//! integer rows cleared of denominators. Ranks use Bareiss elimination (exact
//! division by the previous pivot); echelon forms keep each row primitive and
//! are converted back to reduced rational form at the end.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact scalar. Always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row-echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: QMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows; an empty list gives the 0×`cols` matrix.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut data = Vec::with_capacity(n_rows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(QMatrix {
            rows: n_rows,
            cols,
            data,
        })
    }

    /// Convenience constructor for small integer matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        Self::from_rows(cols, rows).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &QMatrix) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut data = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            data.extend(self.row(i).iter().cloned());
        }
        QMatrix {
            rows: indices.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        Ok(QMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * other.get(k, j);
                }
            }
            acc
        }))
    }

    /// Unique reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut rows = integer_rows(self);
        let pivots = eliminate(&mut rows, self.cols);
        let rank = pivots.len();
        let mut reduced = QMatrix::zeros(self.rows, self.cols);
        for (k, &pc) in pivots.iter().enumerate() {
            let pivot = rows[k][pc].clone();
            for (j, v) in rows[k].iter().enumerate() {
                if !v.is_zero() {
                    reduced.set(k, j, Rational::new(v.clone(), pivot.clone()));
                }
            }
        }
        Rref {
            reduced,
            rank,
            pivot_cols: pivots,
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut rows = integer_rows(self);
        bareiss_rank(&mut rows, self.cols)
    }

    /// Basis of the right kernel. Each basis vector carries a 1 in its own
    /// free column and 0 in the other free columns.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &pc in &pivot_cols {
            is_pivot[pc] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (k, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -reduced.get(k, f).clone();
                }
                v
            })
            .collect()
    }

    /// Particular solution of `self · x = b` with every free variable set to
    /// zero, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let augmented = QMatrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let Rref {
            reduced,
            pivot_cols,
            ..
        } = augmented.rref();
        if pivot_cols.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (k, &pc) in pivot_cols.iter().enumerate() {
            x[pc] = reduced.get(k, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let augmented = QMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let r = augmented.rref();
        if r.pivot_cols.iter().take(n).copied().ne(0..n) || r.rank < n {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| {
            r.reduced.get(i, n + j).clone()
        }))
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Scales each row by the lcm of its denominators and divides out the content.
fn integer_rows(m: &QMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let mut ints: Vec<BigInt> =
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
            make_primitive(&mut ints);
            ints
        })
        .collect()
}

pub(crate) fn make_primitive(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in row.iter_mut() {
        if !v.is_zero() {
            *v /= &g;
        }
    }
}

/// Fraction-free Gauss-Jordan elimination on integer rows. The pivot of each
/// column is the first nonzero entry at or below the current row; every other
/// row is cleared in that column and divided by its content. Returns the pivot
/// columns; pivot rows end up at the top with positive pivots.
fn eliminate(rows: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let n_rows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n_rows {
            break;
        }
        let Some(found) = (r..n_rows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let (upper, lower) = rows.split_at_mut(r);
        let (pivot_row, below) = lower.split_first_mut().expect("pivot row");
        let pivot = pivot_row[c].clone();
        let reduce = |row: &mut Vec<BigInt>| {
            if row[c].is_zero() {
                return;
            }
            let g = pivot.gcd(&row[c]);
            let scale_row = &pivot / &g;
            let scale_pivot = &row[c] / &g;
            for j in c..cols {
                let p = &pivot_row[j];
                let v = &mut row[j];
                if p.is_zero() {
                    if !v.is_zero() && !scale_row.is_one() {
                        *v *= &scale_row;
                    }
                } else {
                    *v = &*v * &scale_row - p * &scale_pivot;
                }
            }
            for v in row[..c].iter_mut() {
                if !v.is_zero() {
                    *v *= &scale_row;
                }
            }
            make_primitive(row);
        };
        below.iter_mut().for_each(reduce);
        upper.iter_mut().for_each(reduce);
        pivots.push(c);
        r += 1;
    }
    for (k, &pc) in pivots.iter().enumerate() {
        if rows[k][pc].is_negative() {
            rows[k].iter_mut().for_each(|v| *v = -&*v);
        }
    }
    pivots
}

/// Bareiss fraction-free forward elimination; returns the rank.
pub(crate) fn bareiss_rank(rows: &mut [Vec<BigInt>], cols: usize) -> usize {
    let n_rows = rows.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == n_rows {
            break;
        }
        let Some(found) = (r..n_rows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, found);
        let (head, below) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in below.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = QMatrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c)
                .prop_map(move |v| QMatrix::from_fn(r, c, |i, j| rat(v[i * c + j])))
        })
    }

    #[test]
    fn identity_rref() {
        let r = QMatrix::identity(3).rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        assert_eq!(r.reduced, QMatrix::identity(3));
    }

    #[test]
    fn proportional_rows() {
        let r = QMatrix::from_i64(&[&[1, 1], &[2, 2]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(r.reduced, QMatrix::from_i64(&[&[1, 1], &[0, 0]]));
    }

    #[test]
    fn four_points_degree_one() {
        let m = QMatrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.rref().rank, 3);
    }

    #[test]
    fn rref_with_fractions() {
        let m = QMatrix::from_i64(&[&[2, 4, 1], &[3, 1, 0]]);
        let r = m.rref();
        assert_eq!(r.reduced.get(0, 2), &ratio(-1, 10));
        assert_eq!(r.reduced.get(1, 2), &ratio(3, 10));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            QMatrix::from_i64(&[&[1, 1]]).kernel(),
            vec![vec![rat(-1), rat(1)]]
        );
        assert!(QMatrix::from_i64(&[&[2, 1], &[1, 1]]).kernel().is_empty());
        let k = QMatrix::zeros(2, 3).kernel();
        assert_eq!(k.len(), 3);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, if i == j { rat(1) } else { rat(0) });
            }
        }
    }

    #[test]
    fn solve_examples() {
        let b = vec![rat(3), ratio(-1, 2)];
        assert_eq!(QMatrix::identity(2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(
            QMatrix::from_i64(&[&[1, 1]]).solve(&[rat(2)]).unwrap(),
            Some(vec![rat(2), rat(0)])
        );
        assert_eq!(
            QMatrix::from_i64(&[&[1], &[1]])
                .solve(&[rat(0), rat(1)])
                .unwrap(),
            None
        );
        assert!(matches!(
            QMatrix::identity(2).solve(&[rat(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 3], &[4, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(3));
        assert!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(QMatrix::zeros(0, 3).rank(), 0);
        assert_eq!(QMatrix::zeros(0, 3).kernel().len(), 3);
        assert_eq!(QMatrix::zeros(3, 0).rref().rank, 0);
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let once = m.rref().reduced;
            prop_assert_eq!(once.rref().reduced, once);
        }

        #[test]
        fn rank_matches_transpose(m in small_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.rank(), m.rref().rank);
        }

        #[test]
        fn kernel_is_exact(m in small_matrix()) {
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.len(), m.cols());
            for v in &k {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn solve_is_exact(m in small_matrix(), seed in proptest::collection::vec(-3i64..=3, 5)) {
            let x: Vec<Rational> = (0..m.cols()).map(|j| rat(seed[j])).collect();
            let b = m.mul_vec(&x).unwrap();
            let sol = m.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol).unwrap(), b);
        }
    }
}
