//! Suite runner and counterexample search.
//!
//! Instances are checked in parallel, but results are collected in instance
//! order, so reports depend only on the configuration.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::gen::{rng_for, GeneratorSpec, Instance, Piece};
use super::verify::{certify, hf_values, Checker, Property, Status, VerdictReport};
use crate::cbp::cbp_hf;
use crate::cover::{min_cover_with, CoverOptions};
use crate::error::{Error, Result};
use crate::io::PointSetFile;

/// Inclusive integer range, written `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span(pub usize, pub usize);

impl Span {
    fn sample(self, rng: &mut impl Rng) -> usize {
        rng.random_range(self.0..=self.1.max(self.0))
    }

    fn iter(self) -> impl Iterator<Item = usize> {
        self.0..=self.1
    }
}

/// A family of instances; parameters are sampled per instance from the
/// family's own seeded stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Collinear {
        count: usize,
        sizes: Span,
        ambient: Span,
    },
    /// Every grid `d × e` with `d` and `e` in the given ranges, `d ≤ e`.
    Grid { d: Span, e: Span },
    Random {
        count: usize,
        ambient: Span,
        sizes: Span,
        height: u32,
    },
    /// Split unions of lines with about `r + 2` points each, planar grids
    /// with CBP(r), and `extra` points off the configuration.
    Split {
        count: usize,
        r: Span,
        lines: Span,
        grids: Span,
        extra: Span,
    },
    /// Points on pairwise skew lines in P^3 or P^4.
    Skew { count: usize, r: Span, lines: Span },
    /// Points on two flats meeting in one point.
    Meeting { count: usize, r: Span },
    /// Counterexample-search candidates.
    Candidates { count: usize, d: usize, r: usize },
}

fn near(rng: &mut impl Rng, r: usize) -> usize {
    // Mostly r + 2, sometimes one fewer or one more.
    match rng.random_range(0..6u8) {
        0 => (r + 1).max(1),
        1 => r + 3,
        _ => r + 2,
    }
}

impl Family {
    fn specs(&self, seed: u64, index: u64) -> Vec<GeneratorSpec> {
        let mut rng = rng_for(seed, index);
        let mut out = Vec::new();
        match self {
            Family::Collinear {
                count,
                sizes,
                ambient,
            } => {
                for _ in 0..*count {
                    out.push(GeneratorSpec::Collinear {
                        s: sizes.sample(&mut rng),
                        n: ambient.sample(&mut rng).max(1),
                        seed: rng.random(),
                    });
                }
            }
            Family::Grid { d, e } => {
                for dd in d.iter() {
                    for ee in e.iter().filter(|&ee| ee >= dd) {
                        out.push(GeneratorSpec::Grid { d: dd, e: ee });
                    }
                }
            }
            Family::Random {
                count,
                ambient,
                sizes,
                height,
            } => {
                for _ in 0..*count {
                    out.push(GeneratorSpec::Random {
                        n: ambient.sample(&mut rng).max(1),
                        size: sizes.sample(&mut rng).max(1),
                        height: *height,
                        seed: rng.random(),
                    });
                }
            }
            Family::Split {
                count,
                r,
                lines,
                grids,
                extra,
            } => {
                for _ in 0..*count {
                    let rr = r.sample(&mut rng);
                    let mut pieces = Vec::new();
                    for _ in 0..grids.sample(&mut rng) {
                        let rows = rng.random_range(2..=rr.max(1) + 1);
                        pieces.push(Piece::Grid {
                            rows,
                            cols: (rr + 3).saturating_sub(rows).max(2),
                        });
                    }
                    for _ in 0..lines.sample(&mut rng) {
                        pieces.push(Piece::Points {
                            dim: 1,
                            count: near(&mut rng, rr),
                        });
                    }
                    if pieces.is_empty() {
                        pieces.push(Piece::Points {
                            dim: 1,
                            count: rr + 2,
                        });
                    }
                    let needed: usize = pieces.iter().map(|p| p.dim() + 1).sum();
                    let extra = extra.sample(&mut rng);
                    let mut n = needed - 1 + rng.random_range(0..=1);
                    if extra > 0 {
                        // Off-configuration points need room outside the pieces.
                        n = n.max(needed);
                    }
                    out.push(GeneratorSpec::Split {
                        n,
                        pieces,
                        extra,
                        seed: rng.random(),
                    });
                }
            }
            Family::Skew { count, r, lines } => {
                for _ in 0..*count {
                    let rr = r.sample(&mut rng);
                    let k = lines.sample(&mut rng).max(1);
                    out.push(GeneratorSpec::Skew {
                        n: rng.random_range(3..=4),
                        counts: (0..k).map(|_| near(&mut rng, rr)).collect(),
                        seed: rng.random(),
                    });
                }
            }
            Family::Meeting { count, r } => {
                for _ in 0..*count {
                    let rr = r.sample(&mut rng);
                    let (n, dims) = match rng.random_range(0..4u8) {
                        0 => (2, [1, 1]),
                        1 => (3, [1, 1]),
                        2 => (3, [1, 2]),
                        _ => (3, [2, 1]),
                    };
                    out.push(GeneratorSpec::Meeting {
                        n,
                        dims,
                        counts: [near(&mut rng, rr), near(&mut rng, rr)],
                        include_point: rng.random_bool(0.5),
                        seed: rng.random(),
                    });
                }
            }
            Family::Candidates { count, d, r } => {
                let s = rng.random();
                for trial in 0..*count as u64 {
                    out.push(GeneratorSpec::Candidate {
                        d: *d,
                        r: *r,
                        seed: s,
                        trial,
                    });
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub name: String,
    pub seed: u64,
    /// Exhaustive cover limit; `CB_LAB_LIMIT`, then the default, otherwise.
    #[serde(default)]
    pub limit: Option<usize>,
    pub properties: Vec<Property>,
    /// Dimensions for the conjecture check.
    #[serde(default = "default_conjecture_d")]
    pub conjecture_d: Vec<usize>,
    /// Dimensions for the inductive bound.
    #[serde(default = "default_inductive_d")]
    pub inductive_d: Vec<usize>,
    pub families: Vec<Family>,
}

fn default_conjecture_d() -> Vec<usize> {
    vec![1, 2, 3, 4]
}

fn default_inductive_d() -> Vec<usize> {
    vec![2, 3, 4]
}

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("suite config: {e}")))
    }

    fn options(&self) -> Result<CoverOptions> {
        match self.limit {
            Some(limit) => Ok(CoverOptions { limit }),
            None => CoverOptions::from_env(),
        }
    }

    /// All instance specs, in id order.
    pub fn specs(&self) -> Vec<GeneratorSpec> {
        self.families
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.specs(self.seed, i as u64))
            .collect()
    }

    pub fn instances(&self) -> Result<Vec<Instance>> {
        self.specs()
            .iter()
            .map(GeneratorSpec::instantiate)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub skipped: usize,
}

impl Tally {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Inconclusive => self.inconclusive += 1,
            Status::Skipped => self.skipped += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub instances: usize,
    pub reports: Vec<VerdictReport>,
    /// Keyed by property name, with `:d` appended where relevant.
    pub summary: BTreeMap<String, Tally>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.summary.values().map(|t| t.fail).sum()
    }

    pub fn inconclusive(&self) -> usize {
        self.summary.values().map(|t| t.inconclusive).sum()
    }

    /// One JSON object per verdict, then a summary object.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&serde_json::to_string(r).expect("reports serialize"));
            out.push('\n');
        }
        let summary = json!({
            "suite": self.name,
            "instances": self.instances,
            "failures": self.failures(),
            "inconclusive": self.inconclusive(),
            "summary": self.summary,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} ({} instances)", self.name, self.instances)?;
        writeln!(
            f,
            "{:<20} {:>6} {:>6} {:>13} {:>8}",
            "property", "pass", "fail", "inconclusive", "skipped"
        )?;
        for (name, t) in &self.summary {
            writeln!(
                f,
                "{:<20} {:>6} {:>6} {:>13} {:>8}",
                name, t.pass, t.fail, t.inconclusive, t.skipped
            )?;
        }
        write!(
            f,
            "{} failures, {} inconclusive",
            self.failures(),
            self.inconclusive()
        )
    }
}

fn check_instance(
    id: usize,
    inst: &Instance,
    config: &SuiteConfig,
    options: CoverOptions,
) -> Result<Vec<VerdictReport>> {
    let checker = Checker::new(inst, options)?;
    let mut out = Vec::new();
    for &p in &config.properties {
        let ds: Vec<usize> = match p {
            Property::Conjecture => config.conjecture_d.clone(),
            Property::InductiveBound => config.inductive_d.clone(),
            _ => vec![0],
        };
        for d in ds {
            let mut rep = checker.check(p, d)?;
            rep.instance_id = Some(id);
            out.push(rep);
        }
    }
    Ok(out)
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let options = config.options()?;
    let instances = config.instances()?;
    let per_instance: Vec<Vec<VerdictReport>> = instances
        .par_iter()
        .enumerate()
        .map(|(id, inst)| check_instance(id, inst, config, options))
        .collect::<Result<_>>()?;
    let reports: Vec<VerdictReport> = per_instance.into_iter().flatten().collect();
    let mut summary: BTreeMap<String, Tally> = BTreeMap::new();
    for r in &reports {
        let key = match r.d {
            Some(d) => format!("{}:{d}", r.property.name()),
            None => r.property.name().to_string(),
        };
        summary.entry(key).or_default().add(r.status);
    }
    Ok(SuiteReport {
        name: config.name.clone(),
        instances: instances.len(),
        reports,
        summary,
    })
}

/// A search candidate that needs attention.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchRecord {
    /// CBP(r), at most `(d+1)r + 1` points, and no cover of dimension `d`.
    Counterexample {
        provenance: GeneratorSpec,
        min_cover_dim: usize,
        hf: Vec<usize>,
        certified: bool,
        points: PointSetFile,
    },
    /// CBP(r) and small enough, but the cover search gave up above `d`.
    Inconclusive {
        provenance: GeneratorSpec,
        size: usize,
        greedy_dim: usize,
        points: PointSetFile,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub d: usize,
    pub r: usize,
    pub trials: u64,
    pub seed: u64,
    /// Trials whose point set has CBP(r) and at most `(d+1)r + 1` points.
    pub eligible: usize,
    pub records: Vec<SearchRecord>,
}

impl SearchReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &SearchRecord> {
        self.records
            .iter()
            .filter(|r| matches!(r, SearchRecord::Counterexample { .. }))
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        let summary = json!({
            "d": self.d,
            "r": self.r,
            "trials": self.trials,
            "seed": self.seed,
            "eligible": self.eligible,
            "counterexamples": self.counterexamples().count(),
            "inconclusive": self.records.len() - self.counterexamples().count(),
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

enum Outcome {
    Ineligible,
    Covered,
    Record(SearchRecord),
}

fn examine(spec: GeneratorSpec, d: usize, r: usize, options: &CoverOptions) -> Result<Outcome> {
    let inst = spec.instantiate()?;
    let x = &inst.point_set;
    if x.len() > (d + 1) * r + 1 || !cbp_hf(x, r) {
        return Ok(Outcome::Ineligible);
    }
    Ok(match min_cover_with(x, d, options) {
        Ok(Some(_)) => Outcome::Covered,
        Ok(None) => {
            let full = min_cover_with(x, x.ambient_n().max(1), options)?
                .expect("the span always covers")
                .total_dim;
            Outcome::Record(SearchRecord::Counterexample {
                certified: certify(x, r)?,
                hf: hf_values(x)?,
                min_cover_dim: full,
                points: inst.to_file(),
                provenance: spec,
            })
        }
        Err(Error::Inexhaustive { greedy, .. }) if greedy.total_dim <= d => Outcome::Covered,
        Err(Error::Inexhaustive { size, greedy, .. }) => {
            Outcome::Record(SearchRecord::Inconclusive {
                size,
                greedy_dim: greedy.total_dim,
                points: inst.to_file(),
                provenance: spec,
            })
        }
        Err(e) => return Err(e),
    })
}

/// Looks for sets with CBP(r), at most `(d+1)r + 1` points and no plane
/// configuration of dimension `d`. Candidates are screened with the
/// Hilbert-function test; hits are re-checked with all four methods.
pub fn counterexample_search(d: usize, r: usize, trials: u64, seed: u64) -> Result<SearchReport> {
    counterexample_search_with(d, r, trials, seed, &CoverOptions::from_env()?)
}

pub fn counterexample_search_with(
    d: usize,
    r: usize,
    trials: u64,
    seed: u64,
    options: &CoverOptions,
) -> Result<SearchReport> {
    let outcomes: Vec<Outcome> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            examine(
                GeneratorSpec::Candidate { d, r, seed, trial },
                d,
                r,
                options,
            )
        })
        .collect::<Result<_>>()?;
    let eligible = outcomes
        .iter()
        .filter(|o| !matches!(o, Outcome::Ineligible))
        .count();
    let records = outcomes
        .into_iter()
        .filter_map(|o| match o {
            Outcome::Record(rec) => Some(rec),
            _ => None,
        })
        .collect();
    Ok(SearchReport {
        d,
        r,
        trials,
        seed,
        eligible,
        records,
    })
}

/// The suite shipped as `default-suite.json`.
pub fn default_suite() -> SuiteConfig {
    SuiteConfig::parse(include_str!("../../default-suite.json")).expect("the bundled suite parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> SuiteConfig {
        SuiteConfig {
            name: "tiny".into(),
            seed: 3,
            limit: None,
            properties: Property::ALL.to_vec(),
            conjecture_d: vec![1, 2],
            inductive_d: vec![2],
            families: vec![
                Family::Collinear {
                    count: 3,
                    sizes: Span(2, 6),
                    ambient: Span(2, 3),
                },
                Family::Grid {
                    d: Span(2, 3),
                    e: Span(2, 3),
                },
                Family::Split {
                    count: 2,
                    r: Span(1, 2),
                    lines: Span(1, 2),
                    grids: Span(0, 1),
                    extra: Span(0, 1),
                },
                Family::Meeting {
                    count: 2,
                    r: Span(1, 2),
                },
            ],
        }
    }

    #[test]
    fn suites_are_deterministic() {
        let config = tiny();
        let a = run_suite(&config).unwrap();
        let b = run_suite(&config).unwrap();
        assert_eq!(a.to_json_lines(), b.to_json_lines());
        assert_eq!(a.failures(), 0, "{}", a.to_json_lines());
        assert_eq!(a.instances, 3 + 3 + 2 + 2);
        let text = serde_json::to_string(&config).unwrap();
        assert_eq!(SuiteConfig::parse(&text).unwrap(), config);
    }

    #[test]
    fn search_is_deterministic() {
        let a = counterexample_search(2, 1, 40, 5).unwrap();
        let b = counterexample_search(2, 1, 40, 5).unwrap();
        assert_eq!(a.to_json_lines(), b.to_json_lines());
        assert_eq!(a.counterexamples().count(), 0);
        assert!(a.eligible > 0);
    }

    #[test]
    fn bundled_suite_parses() {
        let s = default_suite();
        assert!(!s.families.is_empty());
        assert!(!s.specs().is_empty());
    }
}
