//! Point-set files and exact rational serialization.
//!
//! Coordinates are written as strings, either integers (`"-3"`) or reduced
//! fractions (`"2/5"`); floating-point values are rejected on input.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::projective::{PointSet, ProjPoint};
use crate::qlinalg::Rational;

pub fn format_rational(v: &Rational) -> String {
    v.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    if let Some((_, den)) = t.split_once('/') {
        if den.trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
    }
    Rational::from_str(t).map_err(|_| bad())
}

/// Serde adapter writing `Vec<Rational>` as a list of strings.
pub mod rational_strings {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

/// Serde adapter writing a list of rational rows as nested string lists.
pub mod rational_rows {
    use super::*;
    use serde::de::Error as _;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        rows: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(
            rows.iter()
                .map(|r| r.iter().map(format_rational).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rational(s).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// A coordinate as it may appear in a file: a string, or a bare JSON integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawCoord {
    Text(String),
    Int(i64),
}

/// On-disk representation of a point set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSetFile {
    pub n: usize,
    pub points: Vec<Vec<RawCoord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

impl PointSetFile {
    pub fn from_point_set(x: &PointSet, provenance: Option<serde_json::Value>) -> Self {
        PointSetFile {
            n: x.ambient_n(),
            points: x
                .points()
                .iter()
                .map(|p| {
                    p.coords()
                        .iter()
                        .map(|c| RawCoord::Text(format_rational(c)))
                        .collect()
                })
                .collect(),
            labels: None,
            provenance,
        }
    }

    pub fn to_point_set(&self) -> Result<PointSet> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.points.len() {
                return Err(Error::Parse(format!(
                    "{} labels for {} points",
                    labels.len(),
                    self.points.len()
                )));
            }
        }
        let mut pts = Vec::with_capacity(self.points.len());
        for (i, raw) in self.points.iter().enumerate() {
            if raw.len() != self.n + 1 {
                return Err(Error::Parse(format!(
                    "point {i} has {} coordinates, expected {}",
                    raw.len(),
                    self.n + 1
                )));
            }
            let coords = raw
                .iter()
                .map(|c| match c {
                    RawCoord::Text(s) => parse_rational(s),
                    RawCoord::Int(v) => Ok(crate::qlinalg::rat(*v)),
                })
                .collect::<Result<Vec<_>>>()?;
            pts.push(ProjPoint::new(coords).map_err(|e| Error::Parse(format!("point {i}: {e}")))?);
        }
        PointSet::new(self.n, pts).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Indented JSON with one point per line.
    pub fn to_json(&self) -> String {
        let rows: Vec<String> = self.points.iter().map(compact).collect();
        let mut s = format!("{{\n  \"n\": {},\n  \"points\": [", self.n);
        if rows.is_empty() {
            s.push(']');
        } else {
            s.push_str("\n    ");
            s.push_str(&rows.join(",\n    "));
            s.push_str("\n  ]");
        }
        if let Some(labels) = &self.labels {
            s.push_str(",\n  \"labels\": ");
            s.push_str(&compact(labels));
        }
        if let Some(prov) = &self.provenance {
            let pretty = serde_json::to_string_pretty(prov).expect("values serialize");
            s.push_str(",\n  \"provenance\": ");
            s.push_str(&pretty.replace('\n', "\n  "));
        }
        s.push_str("\n}\n");
        s
    }
}

fn compact<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("point-set files always serialize")
}

pub fn read_point_set(path: &Path) -> Result<PointSet> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    PointSetFile::parse(&text)?.to_point_set()
}

pub fn write_point_set(
    path: &Path,
    x: &PointSet,
    provenance: Option<serde_json::Value>,
) -> Result<()> {
    fs::write(path, PointSetFile::from_point_set(x, provenance).to_json())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::{rat, ratio};
    use proptest::prelude::*;

    #[test]
    fn rational_strings_parse() {
        assert_eq!(parse_rational("-3").unwrap(), rat(-3));
        assert_eq!(parse_rational("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational(" 1/-2 ").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("3/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
    }

    #[test]
    fn file_parsing() {
        let text = r#"{"n": 2, "points": [["1","0","0"], [1, "1/2", -1]]}"#;
        let x = PointSetFile::parse(text).unwrap().to_point_set().unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.point(1).coords()[1], ratio(1, 2));

        let ragged = r#"{"n": 2, "points": [["1","0"]]}"#;
        assert!(PointSetFile::parse(ragged).unwrap().to_point_set().is_err());
        let floats = r#"{"n": 1, "points": [[1.5, 2]]}"#;
        assert!(PointSetFile::parse(floats).is_err());
        let dup = r#"{"n": 1, "points": [["1","2"], ["2","4"]]}"#;
        assert!(PointSetFile::parse(dup).unwrap().to_point_set().is_err());
        let zero = r#"{"n": 1, "points": [["0","0"]]}"#;
        assert!(PointSetFile::parse(zero).unwrap().to_point_set().is_err());
    }

    proptest! {
        #[test]
        fn round_trip(raw in proptest::collection::vec(
            proptest::collection::vec((-40i64..40, 1i64..9), 3), 1..8)) {
            let mut pts: Vec<ProjPoint> = raw
                .iter()
                .filter_map(|c| ProjPoint::new(c.iter().map(|&(a, b)| ratio(a, b)).collect()).ok())
                .collect();
            pts.sort();
            pts.dedup();
            let x = PointSet::new(2, pts).unwrap();
            let text = PointSetFile::from_point_set(&x, None).to_json();
            let back = PointSetFile::parse(&text).unwrap().to_point_set().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
