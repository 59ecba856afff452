//! Verifiers turning each theorem into a checkable property of an instance.
//!
//! A verifier never reports `pass` when the cover search it relied on gave
//! up; such cases come back as `inconclusive`.

use std::cell::OnceCell;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::gen::{GeneratorSpec, Instance};
use crate::cbp::{cbp, CbpAnalyzer, CbpMode};
use crate::cover::{min_cover_with, CoverOptions, PlaneConfiguration};
use crate::error::{Error, Result};
use crate::hilbert::{eval_matrix, hf_full};
use crate::io::PointSetFile;
use crate::projective::{intersect, PointSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// The four CBP characterizations agree for every `0 ≤ r ≤ r_X`.
    Equivalence,
    /// CBP(r) forces `|X| ≥ r + 2` and `HF(i) + HF(r − i) ≤ |X|`.
    LowerBound,
    /// The degree −r dual space has dimension `|X| − HF(r)`.
    DualDimension,
    /// CBP(r) and `|X| ≤ 2r + 1` put `X` on a line.
    Bcd,
    /// CBP(r) and `|X| ≤ (d+1)r + 1` put `X` on a configuration of dimension `d`.
    Conjecture,
    /// Removing a configuration of length `k` leaves CBP(r − k).
    Complement,
    /// On a split configuration, CBP(r) holds iff it holds on every piece.
    SplitEquiv,
    /// On a skew configuration, point counts per piece are bounded below.
    SkewCounts,
    /// On two flats meeting at `p`, one of `X_1` and `X_1 ∪ {p}` has CBP(r).
    Meeting,
    /// CBP(r), `|X| ≤ (d+1)r + 1` and no cover of dimension `d − 1` force `|X| ≥ dr + 2`.
    InductiveBound,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Equivalence,
        Property::LowerBound,
        Property::DualDimension,
        Property::Bcd,
        Property::Conjecture,
        Property::Complement,
        Property::SplitEquiv,
        Property::SkewCounts,
        Property::Meeting,
        Property::InductiveBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Equivalence => "equivalence",
            Property::LowerBound => "lower_bound",
            Property::DualDimension => "dual_dimension",
            Property::Bcd => "bcd",
            Property::Conjecture => "conjecture",
            Property::Complement => "complement",
            Property::SplitEquiv => "split_equiv",
            Property::SkewCounts => "skew_counts",
            Property::Meeting => "meeting",
            Property::InductiveBound => "inductive_bound",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub property: Property,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance_id: Option<usize>,
    pub provenance: GeneratorSpec,
    pub status: Status,
    pub details: Value,
    /// The point set itself, attached to failures so they replay without
    /// rerunning the generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<PointSetFile>,
}

/// Outcome of a cover search that may have hit the exhaustive limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CoverBound {
    Exact(usize),
    /// Only the greedy upper bound is known.
    AtMost(usize),
}

impl CoverBound {
    fn value(self) -> Value {
        match self {
            CoverBound::Exact(m) => json!(m),
            CoverBound::AtMost(m) => json!({ "at_most": m }),
        }
    }
}

/// Runs verifiers on one instance, sharing the CBP and cover computations.
pub struct Checker<'a> {
    inst: &'a Instance,
    options: CoverOptions,
    analyzer: CbpAnalyzer<'a>,
    max_r: OnceCell<Option<usize>>,
    cover: OnceCell<CoverBound>,
}

impl<'a> Checker<'a> {
    pub fn new(inst: &'a Instance, options: CoverOptions) -> Result<Self> {
        Ok(Checker {
            inst,
            options,
            analyzer: CbpAnalyzer::new(&inst.point_set)?,
            max_r: OnceCell::new(),
            cover: OnceCell::new(),
        })
    }

    fn x(&self) -> &'a PointSet {
        &self.inst.point_set
    }

    /// Largest r with CBP(r), by the Hilbert-function test.
    fn max_r(&self) -> Result<Option<usize>> {
        if let Some(v) = self.max_r.get() {
            return Ok(*v);
        }
        let v = self.analyzer.max_degree(CbpMode::Fast)?.map(|m| m.degree);
        Ok(*self.max_r.get_or_init(|| v))
    }

    fn cover(&self) -> Result<CoverBound> {
        if let Some(v) = self.cover.get() {
            return Ok(*v);
        }
        let budget = self.x().ambient_n().max(1);
        let v = match min_cover_with(self.x(), budget, &self.options) {
            Ok(c) => CoverBound::Exact(c.expect("a spanning flat always fits").total_dim),
            Err(Error::Inexhaustive { greedy, .. }) => CoverBound::AtMost(greedy.total_dim),
            Err(e) => return Err(e),
        };
        Ok(*self.cover.get_or_init(|| v))
    }

    /// Whether `X` lies on a configuration of dimension at most `d`; `None`
    /// when the search gave up and the greedy bound does not settle it.
    fn lies_on(&self, d: usize) -> Result<Option<bool>> {
        if self.x().is_empty() {
            return Ok(Some(true));
        }
        Ok(match self.cover()? {
            CoverBound::Exact(m) => Some(m <= d),
            CoverBound::AtMost(m) if m <= d => Some(true),
            CoverBound::AtMost(_) => None,
        })
    }

    fn report(
        &self,
        property: Property,
        d: Option<usize>,
        status: Status,
        details: Value,
    ) -> VerdictReport {
        VerdictReport {
            property,
            d,
            instance_id: None,
            provenance: self.inst.provenance.clone(),
            status,
            details,
            points: (status == Status::Fail).then(|| self.inst.to_file()),
        }
    }

    pub fn check(&self, property: Property, d: usize) -> Result<VerdictReport> {
        match property {
            Property::Equivalence => self.equivalence(),
            Property::LowerBound => self.lower_bound(),
            Property::DualDimension => self.dual_dimension(),
            Property::Bcd => self.bcd(),
            Property::Conjecture => self.conjecture(d),
            Property::Complement => self.complement(),
            Property::SplitEquiv => self.split_equiv(),
            Property::SkewCounts => self.skew_counts(),
            Property::Meeting => self.meeting(),
            Property::InductiveBound => self.inductive_bound(d),
        }
    }

    pub fn equivalence(&self) -> Result<VerdictReport> {
        let p = Property::Equivalence;
        let Some(h) = self.analyzer.hilbert_function() else {
            return Ok(self.report(p, None, Status::Pass, json!({ "vacuous": true })));
        };
        let mut verdicts = Vec::new();
        for r in 0..=h.reg_index {
            match self.analyzer.report(r) {
                Ok(rep) => {
                    let witness_ok = match &rep.witness {
                        crate::cbp::Witness::Dual(v) => {
                            v.has_full_support() && v.is_orthogonal_on(self.x())
                        }
                        _ => true,
                    };
                    if !witness_ok {
                        return Ok(self.report(
                            p,
                            None,
                            Status::Fail,
                            json!({ "r": r, "reason": "dual witness is not a full-support dual vector" }),
                        ));
                    }
                    verdicts.push(rep.verdict);
                }
                Err(Error::MethodDisagreement { r, verdicts }) => {
                    return Ok(self.report(
                        p,
                        None,
                        Status::Fail,
                        json!({ "r": r, "verdicts": verdicts }),
                    ));
                }
                Err(e) => return Err(e),
            }
        }
        Ok(self.report(p, None, Status::Pass, json!({ "verdicts": verdicts })))
    }

    pub fn lower_bound(&self) -> Result<VerdictReport> {
        let p = Property::LowerBound;
        let Some(max_r) = self.max_r()? else {
            return Ok(self.report(p, None, Status::Pass, json!({ "vacuous": true })));
        };
        let h = self.analyzer.hilbert_function().expect("CBP needs points");
        let size = self.x().len();
        for r in 0..=max_r {
            if size < r + 2 {
                return Ok(self.report(p, None, Status::Fail, json!({ "r": r, "size": size })));
            }
            for i in 0..=r as i64 {
                let total = h.at(i) + h.at(r as i64 - i);
                if total > size {
                    return Ok(self.report(
                        p,
                        None,
                        Status::Fail,
                        json!({ "r": r, "i": i, "sum": total, "size": size }),
                    ));
                }
            }
        }
        Ok(self.report(p, None, Status::Pass, json!({ "max_r": max_r })))
    }

    /// Kernel of the literal transposed evaluation matrix against the
    /// Hilbert function.
    pub fn dual_dimension(&self) -> Result<VerdictReport> {
        let p = Property::DualDimension;
        let Some(h) = self.analyzer.hilbert_function() else {
            return Ok(self.report(p, None, Status::Pass, json!({ "vacuous": true })));
        };
        let mut dims = Vec::new();
        for r in 0..=h.reg_index {
            let kernel = eval_matrix(self.x(), r).transpose().kernel().len();
            let expected = self.x().len() - h.at(r as i64);
            if kernel != expected {
                return Ok(self.report(
                    p,
                    None,
                    Status::Fail,
                    json!({ "r": r, "kernel": kernel, "expected": expected }),
                ));
            }
            dims.push(kernel);
        }
        Ok(self.report(p, None, Status::Pass, json!({ "dims": dims })))
    }

    /// Theorem: CBP(r) with `|X| ≤ 2r + 1` forces `X` onto a line. The
    /// hypothesis weakens as r grows, so the largest CBP degree suffices.
    pub fn bcd(&self) -> Result<VerdictReport> {
        self.on_config(Property::Bcd, 1)
    }

    pub fn conjecture(&self, d: usize) -> Result<VerdictReport> {
        self.on_config(Property::Conjecture, d)
    }

    fn on_config(&self, p: Property, d: usize) -> Result<VerdictReport> {
        let dd = (p == Property::Conjecture).then_some(d);
        let Some(r) = self.max_r()? else {
            return Ok(self.report(p, dd, Status::Pass, json!({ "vacuous": true })));
        };
        let size = self.x().len();
        if size > (d + 1) * r + 1 {
            return Ok(self.report(
                p,
                dd,
                Status::Pass,
                json!({ "vacuous": true, "r": r, "size": size }),
            ));
        }
        let details = |cover: Value| json!({ "r": r, "size": size, "min_cover_dim": cover });
        Ok(match self.lies_on(d)? {
            Some(true) => self.report(p, dd, Status::Pass, details(self.cover()?.value())),
            Some(false) => self.report(p, dd, Status::Fail, details(self.cover()?.value())),
            None => self.report(p, dd, Status::Inconclusive, details(self.cover()?.value())),
        })
    }

    fn config(&self) -> Option<&'a PlaneConfiguration> {
        self.inst.known_config.as_ref()
    }

    fn piece_sets(&self, config: &PlaneConfiguration) -> Vec<PointSet> {
        config
            .flats()
            .iter()
            .map(|f| self.x().filter(|q| f.contains(q)))
            .collect()
    }

    fn holds(x: &PointSet, r: usize) -> Result<bool> {
        CbpAnalyzer::new(x)?.holds(r, CbpMode::Fast)
    }

    /// Removing any `k ≤ r` pieces of the known configuration leaves CBP(r − k).
    pub fn complement(&self) -> Result<VerdictReport> {
        let p = Property::Complement;
        let Some(config) = self.config() else {
            return Ok(self.report(
                p,
                None,
                Status::Skipped,
                json!({ "reason": "no known configuration" }),
            ));
        };
        let Some(max_r) = self.max_r()? else {
            return Ok(self.report(p, None, Status::Pass, json!({ "vacuous": true })));
        };
        let k_total = config.len();
        let mut checked = 0;
        for r in 1..=max_r {
            for subset in 1u32..(1 << k_total) {
                let k = subset.count_ones() as usize;
                if k > r {
                    continue;
                }
                let chosen: Vec<usize> = (0..k_total).filter(|&i| subset >> i & 1 == 1).collect();
                let sub = config.sub_configuration(&chosen);
                let rest = self.x().filter(|q| !sub.contains(q));
                checked += 1;
                if !Self::holds(&rest, r - k)? {
                    return Ok(self.report(
                        p,
                        None,
                        Status::Fail,
                        json!({ "r": r, "pieces": chosen, "remaining": rest.len() }),
                    ));
                }
            }
        }
        Ok(self.report(
            p,
            None,
            Status::Pass,
            json!({ "max_r": max_r, "checked": checked }),
        ))
    }

    fn contained_in(&self, config: &PlaneConfiguration) -> bool {
        self.x().points().iter().all(|q| config.contains(q))
    }

    /// On a split configuration containing `X` whose pieces all meet `X`,
    /// `X` has CBP(r) iff every `X ∩ P_i` does.
    ///
    /// At r = 0 a piece carrying a single point has no CBP(0) even though a
    /// union of two or more points always does; the statement presumes the
    /// vacuous reading for one-point pieces, so those pairs are skipped and
    /// counted.
    pub fn split_equiv(&self) -> Result<VerdictReport> {
        let p = Property::SplitEquiv;
        let Some(config) = self.config() else {
            return Ok(self.report(
                p,
                None,
                Status::Skipped,
                json!({ "reason": "no known configuration" }),
            ));
        };
        let pieces = self.piece_sets(config);
        if !config.classify()?.split
            || !self.contained_in(config)
            || pieces.iter().any(PointSet::is_empty)
        {
            return Ok(self.report(
                p,
                None,
                Status::Skipped,
                json!({ "reason": "precondition" }),
            ));
        }
        let reg = self
            .analyzer
            .hilbert_function()
            .expect("pieces meet X")
            .reg_index;
        let mut rows = Vec::new();
        let mut skipped = 0;
        for r in 0..reg {
            if r == 0 && pieces.iter().any(|s| s.len() == 1) {
                skipped += 1;
                continue;
            }
            let whole = self.analyzer.holds(r, CbpMode::Fast)?;
            let each = pieces
                .iter()
                .map(|s| Self::holds(s, r))
                .collect::<Result<Vec<_>>>()?;
            if whole != each.iter().all(|&b| b) {
                return Ok(self.report(
                    p,
                    None,
                    Status::Fail,
                    json!({ "r": r, "union": whole, "pieces": each }),
                ));
            }
            rows.push(json!([r, whole]));
        }
        Ok(self.report(
            p,
            None,
            Status::Pass,
            json!({ "checked": rows, "singleton_r0_skipped": skipped }),
        ))
    }

    /// On a skew configuration of length `k` containing `X` whose pieces all
    /// meet `X`: either every piece carries at least `max(k, r + 2)` points,
    /// or some piece carries fewer than `k` and `k ≥ r + 2`.
    pub fn skew_counts(&self) -> Result<VerdictReport> {
        let p = Property::SkewCounts;
        let Some(config) = self.config() else {
            return Ok(self.report(
                p,
                None,
                Status::Skipped,
                json!({ "reason": "no known configuration" }),
            ));
        };
        let counts: Vec<usize> = self.piece_sets(config).iter().map(PointSet::len).collect();
        if !config.classify()?.skew || !self.contained_in(config) || counts.contains(&0) {
            return Ok(self.report(
                p,
                None,
                Status::Skipped,
                json!({ "reason": "precondition" }),
            ));
        }
        let Some(max_r) = self.max_r()? else {
            return Ok(self.report(
                p,
                None,
                Status::Pass,
                json!({ "vacuous": true, "counts": counts }),
            ));
        };
        let k = counts.len();
        for r in 0..=max_r {
            let all_large = counts.iter().all(|&c| c >= k.max(r + 2));
            let some_small = counts.iter().any(|&c| c < k) && k >= r + 2;
            if !(all_large || some_small) {
                return Ok(self.report(p, None, Status::Fail, json!({ "r": r, "counts": counts })));
            }
        }
        Ok(self.report(
            p,
            None,
            Status::Pass,
            json!({ "max_r": max_r, "counts": counts }),
        ))
    }

    /// Two flats meeting at one point `p`, with `X` on their union: CBP(r)
    /// passes to `X ∩ P_1` or to `(X ∩ P_1) ∪ {p}`. The same disjunction for
    /// `P_2` is recorded but not asserted.
    pub fn meeting(&self) -> Result<VerdictReport> {
        let prop = Property::Meeting;
        let Some(config) = self.config() else {
            return Ok(self.report(
                prop,
                None,
                Status::Skipped,
                json!({ "reason": "no known configuration" }),
            ));
        };
        if config.len() != 2 || !self.contained_in(config) {
            return Ok(self.report(
                prop,
                None,
                Status::Skipped,
                json!({ "reason": "precondition" }),
            ));
        }
        let Some(meet) = intersect(&config.flats()[0], &config.flats()[1])? else {
            return Ok(self.report(
                prop,
                None,
                Status::Skipped,
                json!({ "reason": "flats are skew" }),
            ));
        };
        if meet.proj_dim() != 0 {
            return Ok(self.report(
                prop,
                None,
                Status::Skipped,
                json!({ "reason": "flats meet in more than a point" }),
            ));
        }
        let point = crate::projective::ProjPoint::new(meet.basis().row(0).to_vec())?;
        let pieces = self.piece_sets(config);
        if pieces.iter().any(PointSet::is_empty) {
            return Ok(self.report(
                prop,
                None,
                Status::Skipped,
                json!({ "reason": "precondition" }),
            ));
        }
        let Some(max_r) = self.max_r()? else {
            return Ok(self.report(prop, None, Status::Pass, json!({ "vacuous": true })));
        };
        let with_point = |s: &PointSet| -> Result<PointSet> {
            if s.index_of(&point).is_some() {
                Ok(s.clone())
            } else {
                s.with_point(point.clone())
            }
        };
        let first = &pieces[0];
        let first_p = with_point(first)?;
        let second_p = with_point(&pieces[1])?;
        let mut rows = Vec::new();
        let mut skipped = 0;
        for r in 0..=max_r {
            if r == 0 && first_p.len() == 1 {
                skipped += 1;
                continue;
            }
            let a = Self::holds(first, r)?;
            let b = Self::holds(&first_p, r)?;
            let mirror = Self::holds(&pieces[1], r)? || Self::holds(&second_p, r)?;
            if !(a || b) {
                return Ok(self.report(
                    prop,
                    None,
                    Status::Fail,
                    json!({ "r": r, "piece": a, "piece_with_point": b }),
                ));
            }
            rows.push(json!({ "r": r, "piece": a, "piece_with_point": b, "second_flat": mirror }));
        }
        Ok(self.report(
            prop,
            None,
            Status::Pass,
            json!({ "point_in_x": first.index_of(&point).is_some(), "checked": rows, "singleton_r0_skipped": skipped }),
        ))
    }

    /// CBP(r), `|X| ≤ (d+1)r + 1` and no cover of dimension `d − 1` give
    /// `|X| ≥ dr + 2`. Only asserted where the conjecture for `(d − 1, r)`
    /// is a theorem: `d − 1 ≤ 4` or `r ≤ 2`.
    pub fn inductive_bound(&self, d: usize) -> Result<VerdictReport> {
        let p = Property::InductiveBound;
        if d == 0 {
            return Ok(self.report(
                p,
                Some(d),
                Status::Skipped,
                json!({ "reason": "d must be positive" }),
            ));
        }
        let Some(max_r) = self.max_r()? else {
            return Ok(self.report(p, Some(d), Status::Pass, json!({ "vacuous": true })));
        };
        let size = self.x().len();
        let mut checked = Vec::new();
        for r in 0..=max_r {
            if !(d - 1 <= 4 || r <= 2) || size > (d + 1) * r + 1 {
                continue;
            }
            match self.lies_on(d - 1)? {
                Some(true) => continue,
                Some(false) => {}
                None => {
                    return Ok(self.report(
                        p,
                        Some(d),
                        Status::Inconclusive,
                        json!({ "r": r, "min_cover_dim": self.cover()?.value() }),
                    ))
                }
            }
            if size < d * r + 2 {
                return Ok(self.report(
                    p,
                    Some(d),
                    Status::Fail,
                    json!({ "r": r, "size": size, "min_cover_dim": self.cover()?.value() }),
                ));
            }
            checked.push(r);
        }
        Ok(self.report(
            p,
            Some(d),
            Status::Pass,
            json!({ "max_r": max_r, "checked": checked }),
        ))
    }
}

fn single(inst: &Instance, property: Property, d: usize) -> Result<VerdictReport> {
    Checker::new(inst, CoverOptions::from_env()?)?.check(property, d)
}

pub fn verify_equivalence(inst: &Instance) -> Result<VerdictReport> {
    single(inst, Property::Equivalence, 0)
}

pub fn verify_lower_bound(inst: &Instance) -> Result<VerdictReport> {
    single(inst, Property::LowerBound, 0)
}

pub fn verify_dual_dimension(inst: &Instance) -> Result<VerdictReport> {
    single(inst, Property::DualDimension, 0)
}

pub fn verify_bcd(inst: &Instance) -> Result<VerdictReport> {
    single(inst, Property::Bcd, 1)
}

pub fn verify_conjecture(inst: &Instance, d: usize) -> Result<VerdictReport> {
    single(inst, Property::Conjecture, d)
}

pub fn verify_complement(inst: &Instance) -> Result<VerdictReport> {
    single(inst, Property::Complement, 0)
}

pub fn verify_split_equiv(inst: &Instance) -> Result<VerdictReport> {
    single(inst, Property::SplitEquiv, 0)
}

pub fn verify_skew_counts(inst: &Instance) -> Result<VerdictReport> {
    single(inst, Property::SkewCounts, 0)
}

pub fn verify_meeting(inst: &Instance) -> Result<VerdictReport> {
    single(inst, Property::Meeting, 0)
}

pub fn verify_inductive_bound(inst: &Instance, d: usize) -> Result<VerdictReport> {
    single(inst, Property::InductiveBound, d)
}

/// Full four-way CBP report, used to re-certify search hits.
pub(crate) fn certify(x: &PointSet, r: usize) -> Result<bool> {
    Ok(cbp(x, r)?.verdict)
}

/// The literal HF values, used by reports.
pub(crate) fn hf_values(x: &PointSet) -> Result<Vec<usize>> {
    Ok(hf_full(x)?.up_to_regularity().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::*;

    fn status(r: Result<VerdictReport>) -> Status {
        r.unwrap().status
    }

    #[test]
    fn bcd_examples() {
        let col = gen_collinear(5, 3, 1).unwrap();
        let rep = verify_bcd(&col).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.details["r"], 3);
        let grid = gen_grid(3, 3).unwrap();
        let rep = verify_bcd(&grid).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.details["vacuous"], true);
        for seed in 0..6 {
            let skew = gen_skew(3, &[3, 3], seed).unwrap();
            assert_eq!(status(verify_bcd(&skew)), Status::Pass);
        }
    }

    #[test]
    fn conjecture_examples() {
        for r in 1..=2 {
            let inst = gen_split(
                7,
                &[Piece::Points {
                    dim: 1,
                    count: r + 2,
                }; 4],
                0,
                r as u64,
            )
            .unwrap();
            assert_eq!(status(verify_conjecture(&inst, 4)), Status::Pass);
            assert_eq!(status(verify_conjecture(&inst, 2)), Status::Pass);
        }
        let col = gen_collinear(4, 2, 3).unwrap();
        assert_eq!(status(verify_conjecture(&col, 1)), Status::Pass);
    }

    #[test]
    fn complement_examples() {
        let inst = gen_split(3, &[Piece::Points { dim: 1, count: 4 }; 2], 0, 5).unwrap();
        let rep = verify_complement(&inst).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert!(rep.details["checked"].as_u64().unwrap() > 0);
        let grid = gen_grid(3, 3).unwrap();
        assert_eq!(status(verify_complement(&grid)), Status::Pass);
        let rest = grid
            .point_set
            .filter(|q| !grid.known_config.as_ref().unwrap().flats()[0].contains(q));
        assert_eq!(rest.len(), 6);
        assert!(crate::cbp::cbp(&rest, 2).unwrap().verdict);
        let bare = gen_random(2, 5, 4, 0).unwrap();
        assert_eq!(status(verify_complement(&bare)), Status::Skipped);
    }

    #[test]
    fn split_examples() {
        for r in 1..=3 {
            let even = gen_split(
                3,
                &[Piece::Points {
                    dim: 1,
                    count: r + 2,
                }; 2],
                0,
                1,
            )
            .unwrap();
            assert_eq!(status(verify_split_equiv(&even)), Status::Pass);
            let uneven = gen_split(
                3,
                &[
                    Piece::Points {
                        dim: 1,
                        count: r + 2,
                    },
                    Piece::Points {
                        dim: 1,
                        count: r + 1,
                    },
                ],
                0,
                2,
            )
            .unwrap();
            assert!(!crate::cbp::cbp(&uneven.point_set, r).unwrap().verdict);
            assert_eq!(status(verify_split_equiv(&uneven)), Status::Pass);
        }
        let single = gen_collinear(4, 2, 0).unwrap();
        assert_eq!(status(verify_split_equiv(&single)), Status::Pass);
    }

    #[test]
    fn one_point_pieces_are_skipped_at_degree_zero() {
        let inst = gen_split(3, &[Piece::Points { dim: 1, count: 1 }; 2], 0, 0).unwrap();
        let rep = verify_split_equiv(&inst).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.details["singleton_r0_skipped"], 1);
    }

    #[test]
    fn skew_examples() {
        for r in 1..=3usize {
            let two = gen_skew(3, &[r + 2, r + 2], r as u64).unwrap();
            let rep = verify_skew_counts(&two).unwrap();
            assert_eq!(rep.status, Status::Pass);
            assert!(rep.details["max_r"].as_u64().unwrap() >= r as u64);
            let three = gen_split(
                5,
                &[Piece::Points {
                    dim: 1,
                    count: r + 2,
                }; 3],
                0,
                r as u64,
            )
            .unwrap();
            assert_eq!(status(verify_skew_counts(&three)), Status::Pass);
        }
    }

    /// Without `X ⊆ P` the skew-count statement is false: a single grid
    /// line is a skew configuration of length 1 carrying 3 < r + 2 points of
    /// a CBP(3) set. The verifier must refuse the instance.
    #[test]
    fn skew_counts_require_containment() {
        let grid = gen_grid(3, 3).unwrap();
        let line = grid.known_config.as_ref().unwrap().sub_configuration(&[0]);
        let inst = Instance {
            known_config: Some(line),
            ..grid
        };
        assert_eq!(status(verify_skew_counts(&inst)), Status::Skipped);
    }

    #[test]
    fn meeting_examples() {
        for include_point in [false, true] {
            for seed in 0..4 {
                let inst = gen_meeting(2, [1, 1], [3, 3], include_point, seed).unwrap();
                let rep = verify_meeting(&inst).unwrap();
                assert_eq!(rep.status, Status::Pass, "{rep:?}");
                assert_eq!(rep.details["point_in_x"], include_point);
            }
        }
        let skew = gen_skew(3, &[2, 2], 0).unwrap();
        assert_eq!(status(verify_meeting(&skew)), Status::Skipped);
    }

    #[test]
    fn inductive_examples() {
        let col = gen_collinear(5, 2, 0).unwrap();
        let rep = verify_inductive_bound(&col, 2).unwrap();
        assert_eq!(rep.status, Status::Pass);
        let two = gen_split(3, &[Piece::Points { dim: 1, count: 5 }; 2], 0, 0).unwrap();
        let rep = verify_inductive_bound(&two, 2).unwrap();
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.details["checked"], json!([3]));
    }

    #[test]
    fn inexhaustive_covers_are_never_passed() {
        let x = PointSet::from_ints(
            3,
            &[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 0, 1],
                &[1, 1, 1, 1],
            ],
        )
        .unwrap();
        let inst = Instance {
            point_set: x,
            provenance: GeneratorSpec::Random {
                n: 3,
                size: 5,
                height: 1,
                seed: 0,
            },
            known_config: None,
        };
        let capped = Checker::new(&inst, CoverOptions { limit: 2 }).unwrap();
        // Greedy reaches dimension 3; nothing smaller can be certified.
        assert_eq!(capped.lies_on(2).unwrap(), None);
        assert_eq!(capped.lies_on(3).unwrap(), Some(true));
        let exact = Checker::new(&inst, CoverOptions::default()).unwrap();
        assert_eq!(exact.lies_on(2).unwrap(), Some(false));
        assert_eq!(exact.inductive_bound(3).unwrap().status, Status::Pass);
        let rep = capped.inductive_bound(3).unwrap();
        assert_eq!(rep.status, Status::Inconclusive, "{rep:?}");
    }

    #[test]
    fn failures_carry_points() {
        let inst = gen_collinear(3, 2, 0).unwrap();
        let checker = Checker::new(&inst, CoverOptions::default()).unwrap();
        let rep = checker.report(Property::Bcd, None, Status::Fail, json!({}));
        assert_eq!(rep.points.unwrap().to_point_set().unwrap(), inst.point_set);
    }
}
