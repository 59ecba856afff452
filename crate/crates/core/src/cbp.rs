//! Separators and the Cayley–Bacharach property.
//!
//! `X` has CBP(r) when every degree-r hypersurface through all but one point
//! of `X` also passes through the remaining point. Four equivalent tests are
//! implemented and [`cbp`] runs all of them, refusing to answer if they
//! disagree:
//!
//! * **hf**: removing any single point leaves `HF(r)` unchanged.
//! * **alpha**: every minimal separator has degree at least `r + 1`.
//! * **divisibility**: in the chart `x0 ≠ 0`, no nonzero element of
//!   `(I_{Y/X})` in degree `D = max(r_X, r)` is divisible by `x0^(D - r)`.
//! * **dual**: some vector `c ∈ Q^X` orthogonal to all degree-r evaluations
//!   has every coordinate nonzero.
//!
//! The linear algebra for all four runs on the Gram matrix `⟨p, q⟩^i`, which
//! shares rank, column space and left kernel with the evaluation matrix.

use std::cell::OnceCell;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{
    eval_form, eval_matrix, gram_matrix, hf_full, int_monomial, monomials, multinomial,
    over_common_denominator, power_table, HilbertFunction, IntegerGram,
};
use crate::io::rational_strings;
use crate::projective::{ensure_x0_nonvanishing, PointSet, ProjPoint};
use crate::qlinalg::Rational;

/// Seed of the coordinate change used by the divisibility test.
pub const CHART_SEED: u64 = 0;

/// A minimal separator of `X ∖ {p}` in `X`: a form of degree `alpha`
/// vanishing on every other point and equal to 1 at `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separator {
    pub point_index: usize,
    pub alpha: usize,
    /// Coefficients over `monomials(n, alpha)`.
    #[serde(with = "rational_strings")]
    pub coeffs: Vec<Rational>,
}

impl Separator {
    pub fn eval(&self, p: &ProjPoint) -> Rational {
        eval_form(&self.coeffs, self.alpha, p.coords())
    }
}

/// A degree −r element of the canonical module, as a vector indexed by the
/// points of `X` and orthogonal to every degree-r evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualVector {
    #[serde(with = "rational_strings")]
    pub entries: Vec<Rational>,
    pub degree: usize,
}

impl DualVector {
    pub fn has_full_support(&self) -> bool {
        self.entries.iter().all(|c| !c.is_zero())
    }

    /// Checks `Σ_p c_p · m(p) = 0` for every monomial `m` of the vector's
    /// degree, directly on the evaluation matrix.
    pub fn is_orthogonal_on(&self, x: &PointSet) -> bool {
        if x.len() != self.entries.len() {
            return false;
        }
        if x.is_empty() {
            return true;
        }
        eval_matrix(x, self.degree)
            .transpose()
            .mul_vec(&self.entries)
            .map(|v| v.iter().all(Zero::is_zero))
            .unwrap_or(false)
    }
}

/// Per-method verdicts. In fast mode only `hf` is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MethodVerdicts {
    pub hf: bool,
    pub alpha: Option<bool>,
    pub divisibility: Option<bool>,
    pub dual: Option<bool>,
}

impl MethodVerdicts {
    pub fn agree(&self) -> bool {
        [self.alpha, self.divisibility, self.dual]
            .iter()
            .flatten()
            .all(|&v| v == self.hf)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Dual(DualVector),
    FailingPoint { label: usize },
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CbpReport {
    pub r: usize,
    pub verdict: bool,
    pub per_method: MethodVerdicts,
    pub witness: Witness,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CbpMode {
    /// All four characterizations, cross-checked.
    #[default]
    Full,
    /// Hilbert-function test only.
    Fast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxCbp {
    pub degree: usize,
    pub is_cb_scheme: bool,
}

fn unit(len: usize, p: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[p] = Rational::one();
    v
}

/// Initial degree of `I_{Y/X}` for `Y = X ∖ {p}`: the least degree in which
/// some form vanishes on `Y` but not at `p`.
pub fn alpha(x: &PointSet, p: usize) -> Result<usize> {
    x.check_label(p)?;
    let target = unit(x.len(), p);
    // α ≤ r_X ≤ |X| − 1.
    for k in 0..x.len() {
        if gram_matrix(x, k).solve(&target)?.is_some() {
            return Ok(k);
        }
    }
    unreachable!("the evaluation matrix has full row rank in degree |X| - 1")
}

/// Minimal separator of `X ∖ {p}` in `X`, normalized to take the value 1 at `p`.
///
/// The degree is located as the first drop of the Hilbert function when `p`
/// is removed. The form itself is `Σ_q y_q·⟨q, x⟩^α` where `G·y = e_p` for
/// the Gram matrix `G` of degree α, expanded over the monomial basis.
pub fn separator(x: &PointSet, p: usize) -> Result<Separator> {
    x.check_label(p)?;
    let h = hf_full(x)?;
    let pts: Vec<&ProjPoint> = x.points().iter().collect();
    let (alpha, without) = (0..=h.reg_index)
        .find_map(|i| {
            let without = IntegerGram::new(&pts, i).rank_without(p);
            (without < h.at(i as i64)).then_some((i, without))
        })
        .expect("removing a point drops HF at the regularity index");
    let defect = h.at(alpha as i64) - without;
    if defect != 1 {
        return Err(Error::SeparatorDefect {
            label: p,
            degree: alpha,
            defect,
        });
    }
    let weights =
        gram_matrix(x, alpha)
            .solve(&unit(x.len(), p))?
            .ok_or(Error::SeparatorDefect {
                label: p,
                degree: alpha,
                defect: 0,
            })?;
    // With q = a_q / d_q over integers, the coefficient of m is
    // multinomial(m)·Σ_q (y_q / d_q^α)·a_q^m.
    let mut tables = Vec::new();
    let mut scales = Vec::new();
    for (q, w) in x.points().iter().zip(&weights) {
        if !w.is_zero() {
            let (a, d) = over_common_denominator(q.coords());
            tables.push(power_table(&a, alpha));
            scales.push(w / Rational::from_integer(num_traits::pow(d, alpha)));
        }
    }
    let (nums, den) = over_common_denominator(&scales);
    let coeffs = monomials(x.ambient_n(), alpha)
        .iter()
        .map(|m| {
            let mut acc = BigInt::zero();
            for (n, t) in nums.iter().zip(&tables) {
                acc += n * int_monomial(m, t);
            }
            Rational::new(acc * multinomial(m), den.clone())
        })
        .collect();
    Ok(Separator {
        point_index: p,
        alpha,
        coeffs,
    })
}

/// Hilbert-function characterization.
pub fn cbp_hf(x: &PointSet, r: usize) -> bool {
    first_failing_point(x, r).is_none()
}

fn first_failing_point(x: &PointSet, r: usize) -> Option<usize> {
    if x.is_empty() {
        return None;
    }
    let pts: Vec<&ProjPoint> = x.points().iter().collect();
    let gram = IntegerGram::new(&pts, r);
    let full = gram.rank();
    (0..x.len()).find(|&p| gram.rank_without(p) < full)
}

/// Separator-degree characterization.
pub fn cbp_alpha(x: &PointSet, r: usize) -> Result<bool> {
    CbpAnalyzer::new(x)?.alpha_verdict(r)
}

/// Divisibility characterization. Every point of `x` must have a nonzero
/// 0-th coordinate (see [`ensure_x0_nonvanishing`]).
pub fn cbp_separator_div(x: &PointSet, r: usize) -> Result<bool> {
    check_chart(x)?;
    let h = if x.is_empty() {
        None
    } else {
        Some(hf_full(x)?)
    };
    let seps = (0..x.len())
        .map(|p| separator(x, p))
        .collect::<Result<Vec<_>>>()?;
    let values = separator_values(x, &seps);
    divisibility_verdict(x, h.as_ref(), &seps, &values, r)
}

fn separator_values(x: &PointSet, seps: &[Separator]) -> Vec<Vec<Rational>> {
    seps.iter()
        .map(|sep| x.points().iter().map(|q| sep.eval(q)).collect())
        .collect()
}

fn check_chart(x: &PointSet) -> Result<()> {
    match x.points().iter().position(|p| p.coords()[0].is_zero()) {
        Some(label) => Err(Error::X0Vanishes { label }),
        None => Ok(()),
    }
}

fn divisibility_verdict(
    x: &PointSet,
    h: Option<&HilbertFunction>,
    seps: &[Separator],
    values: &[Vec<Rational>],
    r: usize,
) -> Result<bool> {
    let Some(h) = h else {
        return Ok(true);
    };
    let top = h.reg_index.max(r);
    // The Gram matrix is symmetric, so its kernel cuts out its column space:
    // a value vector comes from a degree-r form iff it is orthogonal to it.
    let kernel = gram_matrix(x, r).kernel();
    for (sep, vals) in seps.iter().zip(values) {
        // f = x0^(top - α)·f*, spanning (I_{Y/X}) in degree `top`. Look for g of
        // degree r with x0^(top - r)·g = f on every point.
        let rhs: Vec<Rational> = x
            .points()
            .iter()
            .zip(vals)
            .map(|(q, v)| {
                let x0 = &q.coords()[0];
                let f = num_traits::pow(x0.clone(), top - sep.alpha) * v;
                f / num_traits::pow(x0.clone(), top - r)
            })
            .collect();
        let representable = kernel.iter().all(|k| {
            k.iter()
                .zip(&rhs)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                .is_zero()
        });
        if representable {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical-module characterization: a full-support vector in the left
/// kernel of the degree-r evaluation matrix, if one exists.
///
/// The witness is `Σ_j t^j·k_j` over the kernel basis `k_j`, for the least
/// positive integer `t` that makes every coordinate nonzero.
pub fn cbp_dual(x: &PointSet, r: usize) -> Option<DualVector> {
    if x.is_empty() {
        return Some(DualVector {
            entries: Vec::new(),
            degree: r,
        });
    }
    let kernel = gram_matrix(x, r).kernel();
    let coverable = (0..x.len()).all(|p| kernel.iter().any(|v| !v[p].is_zero()));
    if !coverable {
        return None;
    }
    // Each coordinate is a nonzero polynomial in t of degree < dim, so some
    // t ≤ |X|·dim + 1 avoids all roots.
    let mut t = BigInt::one();
    loop {
        let mut entries = vec![Rational::zero(); x.len()];
        let mut power = Rational::one();
        let step = Rational::from_integer(t.clone());
        for v in &kernel {
            for (e, c) in entries.iter_mut().zip(v) {
                if !c.is_zero() {
                    *e += &power * c;
                }
            }
            power *= &step;
        }
        if entries.iter().all(|e| !e.is_zero()) {
            return Some(DualVector { entries, degree: r });
        }
        t += 1;
    }
}

/// Runs all four characterizations of CBP(r) and cross-checks them.
pub fn cbp(x: &PointSet, r: usize) -> Result<CbpReport> {
    CbpAnalyzer::new(x)?.report(r)
}

/// Hilbert-function verdict only, in report form.
pub fn cbp_fast(x: &PointSet, r: usize) -> CbpReport {
    let failing = first_failing_point(x, r);
    CbpReport {
        r,
        verdict: failing.is_none(),
        per_method: MethodVerdicts {
            hf: failing.is_none(),
            alpha: None,
            divisibility: None,
            dual: None,
        },
        witness: match failing {
            Some(label) => Witness::FailingPoint { label },
            None => Witness::Vacuous,
        },
    }
}

/// Largest r with CBP(r), and whether that is `r_X − 1`. `None` when no
/// degree qualifies, i.e. for sets with fewer than two points.
pub fn max_cbp_degree(x: &PointSet) -> Result<Option<MaxCbp>> {
    CbpAnalyzer::new(x)?.max_degree(CbpMode::Full)
}

pub fn max_cbp_degree_with(x: &PointSet, mode: CbpMode) -> Result<Option<MaxCbp>> {
    CbpAnalyzer::new(x)?.max_degree(mode)
}

struct ChartData {
    chart: PointSet,
    hf: Option<HilbertFunction>,
    separators: Vec<Separator>,
    values: Vec<Vec<Rational>>,
}

/// Caches the per-point data (separator degrees, chart separators) that the
/// characterizations need, so sweeps over r reuse them.
pub struct CbpAnalyzer<'a> {
    x: &'a PointSet,
    hf: Option<HilbertFunction>,
    alphas: OnceCell<Vec<usize>>,
    chart: OnceCell<ChartData>,
}

impl<'a> CbpAnalyzer<'a> {
    pub fn new(x: &'a PointSet) -> Result<Self> {
        let hf = if x.is_empty() {
            None
        } else {
            Some(hf_full(x)?)
        };
        Ok(CbpAnalyzer {
            x,
            hf,
            alphas: OnceCell::new(),
            chart: OnceCell::new(),
        })
    }

    pub fn hilbert_function(&self) -> Option<&HilbertFunction> {
        self.hf.as_ref()
    }

    /// `α_{Y/X}` for every point, in label order.
    pub fn alphas(&self) -> Result<&[usize]> {
        if self.alphas.get().is_none() {
            let values = (0..self.x.len())
                .map(|p| alpha(self.x, p))
                .collect::<Result<Vec<_>>>()?;
            let _ = self.alphas.set(values);
        }
        Ok(self.alphas.get().expect("initialized above"))
    }

    fn chart(&self) -> Result<&ChartData> {
        if self.chart.get().is_none() {
            let (chart, _) = ensure_x0_nonvanishing(self.x, CHART_SEED)?;
            let hf = if chart.is_empty() {
                None
            } else {
                Some(hf_full(&chart)?)
            };
            let separators = (0..chart.len())
                .map(|p| separator(&chart, p))
                .collect::<Result<Vec<_>>>()?;
            let values = separator_values(&chart, &separators);
            let _ = self.chart.set(ChartData {
                chart,
                hf,
                separators,
                values,
            });
        }
        Ok(self.chart.get().expect("initialized above"))
    }

    pub fn alpha_verdict(&self, r: usize) -> Result<bool> {
        Ok(self.alphas()?.iter().all(|&a| a > r))
    }

    pub fn divisibility_verdict(&self, r: usize) -> Result<bool> {
        let data = self.chart()?;
        divisibility_verdict(
            &data.chart,
            data.hf.as_ref(),
            &data.separators,
            &data.values,
            r,
        )
    }

    pub fn report(&self, r: usize) -> Result<CbpReport> {
        let failing = first_failing_point(self.x, r);
        let dual = cbp_dual(self.x, r);
        let verdicts = MethodVerdicts {
            hf: failing.is_none(),
            alpha: Some(self.alpha_verdict(r)?),
            divisibility: Some(self.divisibility_verdict(r)?),
            dual: Some(dual.is_some()),
        };
        if !verdicts.agree() {
            return Err(Error::MethodDisagreement { r, verdicts });
        }
        let witness = match (failing, dual) {
            (Some(label), _) => Witness::FailingPoint { label },
            (None, Some(d)) => Witness::Dual(d),
            (None, None) => Witness::Vacuous,
        };
        Ok(CbpReport {
            r,
            verdict: verdicts.hf,
            per_method: verdicts,
            witness,
        })
    }

    pub fn report_with(&self, r: usize, mode: CbpMode) -> Result<CbpReport> {
        match mode {
            CbpMode::Full => self.report(r),
            CbpMode::Fast => Ok(cbp_fast(self.x, r)),
        }
    }

    pub fn holds(&self, r: usize, mode: CbpMode) -> Result<bool> {
        Ok(self.report_with(r, mode)?.verdict)
    }

    pub fn max_degree(&self, mode: CbpMode) -> Result<Option<MaxCbp>> {
        if self.x.len() < 2 {
            return Ok(None);
        }
        let reg = self.hf.as_ref().expect("non-empty").reg_index;
        for r in (0..reg).rev() {
            if self.holds(r, mode)? {
                return Ok(Some(MaxCbp {
                    degree: r,
                    is_cb_scheme: r + 1 == reg,
                }));
            }
        }
        unreachable!("every set of two or more points has CBP(0)")
    }
}

/// Dimension of the space of degree −r dual vectors, i.e. of the left kernel
/// of the degree-r evaluation matrix.
pub fn dual_dimension(x: &PointSet, r: usize) -> usize {
    if x.is_empty() {
        return 0;
    }
    gram_matrix(x, r).kernel().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::hf;
    use crate::qlinalg::rat;

    fn grid(d: i64, e: i64) -> PointSet {
        let mut pts = Vec::new();
        for a in 0..d {
            for b in 0..e {
                pts.push(ProjPoint::from_ints(&[1, a, b]).unwrap());
            }
        }
        PointSet::new(2, pts).unwrap()
    }

    fn collinear(s: i64) -> PointSet {
        let pts = (0..s)
            .map(|t| ProjPoint::from_ints(&[1, t, 3 - 2 * t]).unwrap())
            .collect();
        PointSet::new(2, pts).unwrap()
    }

    fn triangle() -> PointSet {
        PointSet::from_ints(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap()
    }

    fn general4() -> PointSet {
        PointSet::from_ints(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap()
    }

    #[test]
    fn alpha_examples() {
        let two = PointSet::from_ints(1, &[&[1, 0], &[1, 1]]).unwrap();
        assert_eq!(alpha(&two, 0).unwrap(), 1);
        assert_eq!(alpha(&two, 1).unwrap(), 1);
        let c = collinear(5);
        for p in 0..5 {
            assert_eq!(alpha(&c, p).unwrap(), 4);
        }
        for p in 0..3 {
            assert_eq!(alpha(&triangle(), p).unwrap(), 1);
        }
        assert!(alpha(&c, 9).is_err());
    }

    #[test]
    fn separator_vanishes_off_its_point() {
        for x in [grid(3, 3), collinear(4), general4(), triangle()] {
            for p in 0..x.len() {
                let s = separator(&x, p).unwrap();
                assert_eq!(s.alpha, alpha(&x, p).unwrap());
                for (q, pt) in x.points().iter().enumerate() {
                    let want = if q == p { rat(1) } else { rat(0) };
                    assert_eq!(s.eval(pt), want, "p={p} q={q}");
                }
            }
        }
    }

    #[test]
    fn separator_in_p1() {
        let two = PointSet::from_ints(1, &[&[1, 0], &[1, 1]]).unwrap();
        let s = separator(&two, 1).unwrap();
        assert_eq!(s.alpha, 1);
        // Over monomials [X0, X1]: the separator is X1.
        assert_eq!(s.coeffs, vec![rat(0), rat(1)]);
    }

    #[test]
    fn grid_corner_separator_matches_line_product() {
        let x = grid(3, 3);
        let s = separator(&x, 0).unwrap();
        assert_eq!(s.alpha, 4);
        // (X1 - X0)(X1 - 2X0)(X2 - X0)(X2 - 2X0) / 4 agrees with s on X.
        for pt in x.points() {
            let c = pt.coords();
            let lines = (&c[1] - &c[0])
                * (&c[1] - rat(2) * &c[0])
                * (&c[2] - &c[0])
                * (&c[2] - rat(2) * &c[0])
                / rat(4);
            assert_eq!(s.eval(pt), lines);
        }
    }

    #[test]
    fn general_four_separators_are_conics() {
        let x = general4();
        let y = x.without(3);
        assert_eq!(hf(&y, 1), 3);
        assert_eq!(hf(&x, 1), 3);
        assert_eq!(hf(&y, 2), 3);
        for p in 0..4 {
            assert_eq!(separator(&x, p).unwrap().alpha, 2);
        }
    }

    #[test]
    fn hf_method_examples() {
        assert!(cbp_hf(&general4(), 0));
        assert!(!cbp_hf(&triangle(), 1));
        assert!(cbp_hf(&grid(3, 3), 3));
    }

    #[test]
    fn alpha_method_examples() {
        let two = PointSet::from_ints(1, &[&[1, 0], &[1, 1]]).unwrap();
        assert!(cbp_alpha(&two, 0).unwrap());
        assert!(!cbp_alpha(&grid(3, 3), 4).unwrap());
        assert!(cbp_alpha(&collinear(6), 4).unwrap());
    }

    #[test]
    fn divisibility_method_examples() {
        assert!(cbp_separator_div(&grid(3, 3), 3).unwrap());
        assert!(!cbp_separator_div(&grid(3, 3), 4).unwrap());
        let (tri, _) = ensure_x0_nonvanishing(&triangle(), 3).unwrap();
        assert!(!cbp_separator_div(&tri, 1).unwrap());
        let two = PointSet::from_ints(1, &[&[1, 0], &[1, 1]]).unwrap();
        assert!(cbp_separator_div(&two, 0).unwrap());
        assert!(matches!(
            cbp_separator_div(&triangle(), 1),
            Err(Error::X0Vanishes { label: 1 })
        ));
    }

    #[test]
    fn dual_method_examples() {
        let two = PointSet::from_ints(1, &[&[1, 0], &[1, 1]]).unwrap();
        let w = cbp_dual(&two, 0).unwrap();
        assert_eq!(w.entries, vec![rat(-1), rat(1)]);
        assert!(w.is_orthogonal_on(&two));
        assert!(cbp_dual(&triangle(), 1).is_none());
        let g = grid(3, 3);
        assert_eq!(dual_dimension(&g, 3), 1);
        assert_eq!(eval_matrix(&g, 3).transpose().kernel().len(), 1);
        let w = cbp_dual(&g, 3).unwrap();
        assert!(w.has_full_support());
        assert!(w.is_orthogonal_on(&g));
    }

    #[test]
    fn full_reports() {
        let g = grid(3, 3);
        let rep = cbp(&g, 3).unwrap();
        assert!(rep.verdict);
        assert_eq!(
            rep.per_method,
            MethodVerdicts {
                hf: true,
                alpha: Some(true),
                divisibility: Some(true),
                dual: Some(true)
            }
        );
        assert!(matches!(rep.witness, Witness::Dual(_)));
        let rep = cbp(&g, 4).unwrap();
        assert!(!rep.verdict);
        assert!(matches!(rep.witness, Witness::FailingPoint { .. }));
        let rep = cbp(&triangle(), 1).unwrap();
        assert!(!rep.verdict);
        assert_eq!(rep.witness, Witness::FailingPoint { label: 0 });
    }

    #[test]
    fn singleton_and_empty() {
        let one = PointSet::from_ints(2, &[&[1, 2, 3]]).unwrap();
        for r in 0..3 {
            assert!(!cbp(&one, r).unwrap().verdict);
        }
        assert_eq!(max_cbp_degree(&one).unwrap(), None);
        let empty = PointSet::empty(2);
        assert!(cbp(&empty, 2).unwrap().verdict);
        assert_eq!(max_cbp_degree(&empty).unwrap(), None);
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(
            max_cbp_degree(&collinear(5)).unwrap(),
            Some(MaxCbp {
                degree: 3,
                is_cb_scheme: true
            })
        );
        assert_eq!(
            max_cbp_degree(&grid(3, 3)).unwrap(),
            Some(MaxCbp {
                degree: 3,
                is_cb_scheme: true
            })
        );
        assert_eq!(
            max_cbp_degree(&triangle()).unwrap(),
            Some(MaxCbp {
                degree: 0,
                is_cb_scheme: true
            })
        );
        assert_eq!(
            max_cbp_degree_with(&grid(3, 3), CbpMode::Fast).unwrap(),
            max_cbp_degree(&grid(3, 3)).unwrap()
        );
    }

    #[test]
    fn verdicts_survive_coordinate_change() {
        for x in [grid(3, 3), triangle(), general4(), collinear(4)] {
            let (moved, _) = ensure_x0_nonvanishing(&x.embed(3).unwrap(), 11).unwrap();
            let reg = hf_full(&x).unwrap().reg_index;
            for r in 0..=reg {
                assert_eq!(cbp(&x, r).unwrap().verdict, cbp(&moved, r).unwrap().verdict);
            }
        }
    }
}
