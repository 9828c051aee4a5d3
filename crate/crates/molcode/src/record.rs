//! Line-delimited JSON molecule records.
//!
//! One object per line:
//! `{"id":"m1","elements":["C","O"],"bonds":[[1,2,2]],"h":"auto"}`.
//! Elements list heavy atoms only, bond indices are 1-based and `h` is either
//! a per-atom hydrogen count list or the token `"auto"`. Optional fields are
//! `conformer` (text) and `props` (name to number). Blank lines and lines
//! starting with `#` carry no record.

use std::collections::BTreeMap;

use molcode_core::coverage::DatasetRecord;
use molcode_core::molgraph::{Bond, Element, HydrogenWarning, Hydrogens, MolError, MolGraph};
use molcode_core::HeavyGraph;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HSpec {
    Counts(Vec<i64>),
    Token(String),
}

/// Wire form of one record. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordLine {
    pub id: String,
    pub elements: Vec<String>,
    pub bonds: Vec<[i64; 3]>,
    pub h: HSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conformer: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub props: BTreeMap<String, f64>,
}

/// A parsed record with any hydrogen clamp events.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedRecord {
    pub mol: MolGraph,
    pub conformer: Option<String>,
    pub props: BTreeMap<String, f64>,
    pub warnings: Vec<HydrogenWarning>,
}

impl ParsedRecord {
    pub fn into_dataset_record(self) -> Result<DatasetRecord, MolError> {
        let graph = self.mol.heavy_graph()?;
        Ok(DatasetRecord {
            id: self.mol.id().to_string(),
            conformer: self.conformer,
            graph,
            props: self.props,
        })
    }
}

/// True for lines that hold no record.
pub fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

pub fn parse_record_line(text: &str) -> Result<ParsedRecord, MolError> {
    let line: RecordLine = serde_json::from_str(text.trim()).map_err(|e| MolError::Parse(e.to_string()))?;
    let elements = line
        .elements
        .iter()
        .map(|s| match Element::from_symbol(s) {
            Some(e) if e.is_heavy() => Ok(e),
            Some(_) => Err(MolError::Parse("hydrogen listed as a heavy atom".into())),
            None => Err(MolError::UnsupportedElement(s.clone())),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = elements.len() as i64;
    let mut bonds = Vec::with_capacity(line.bonds.len());
    for &[a, b, order] in &line.bonds {
        if a < 1 || b < 1 || a > n || b > n {
            return Err(MolError::Parse(format!(
                "bond [{a},{b},{order}] refers to a missing atom"
            )));
        }
        let order = u8::try_from(order).map_err(|_| MolError::UnsupportedBondOrder(u8::MAX))?;
        bonds.push(Bond::new(a as usize - 1, b as usize - 1, order));
    }
    let (h, warnings) = match &line.h {
        HSpec::Token(t) if t == "auto" => molcode_core::molgraph::infer_hydrogens(&elements, &bonds),
        HSpec::Token(t) => return Err(MolError::Parse(format!("unknown hydrogen token `{t}`"))),
        HSpec::Counts(c) => {
            let mut h = Vec::with_capacity(c.len());
            for (atom, &count) in c.iter().enumerate() {
                if !(0..=4).contains(&count) {
                    return Err(MolError::InvalidHydrogenCount { atom, count });
                }
                h.push(count as u8);
            }
            (h, Vec::new())
        }
    };
    let mol = MolGraph::new(line.id, elements, bonds, Hydrogens::Implicit(h))?;
    Ok(ParsedRecord {
        mol,
        conformer: line.conformer,
        props: line.props,
        warnings,
    })
}

/// Wire form of a heavy-atom graph with explicit hydrogen counts.
pub fn record_line(id: &str, g: &HeavyGraph) -> RecordLine {
    RecordLine {
        id: id.to_string(),
        elements: g.elements().iter().map(|e| e.symbol().to_string()).collect(),
        bonds: g
            .bonds()
            .iter()
            .map(|b| [b.a as i64 + 1, b.b as i64 + 1, i64::from(b.order)])
            .collect(),
        h: HSpec::Counts(g.h_counts().iter().map(|&h| i64::from(h)).collect()),
        conformer: None,
        props: BTreeMap::new(),
    }
}

pub fn serialize_record(r: &DatasetRecord) -> String {
    let mut line = record_line(&r.id, &r.graph);
    line.conformer = r.conformer.clone();
    line.props = r.props.clone();
    to_line(&line)
}

pub fn to_line(line: &RecordLine) -> String {
    serde_json::to_string(line).expect("records serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heavy(text: &str) -> (HeavyGraph, Vec<HydrogenWarning>) {
        let p = parse_record_line(text).unwrap();
        let w = p.warnings.clone();
        (p.mol.heavy_graph().unwrap(), w)
    }

    #[test]
    fn auto_hydrogens() {
        let (g, w) = heavy(r#"{"id":"ethane","elements":["C","C"],"bonds":[[1,2,1]],"h":"auto"}"#);
        assert_eq!(g.h_counts(), &[3, 3]);
        assert!(w.is_empty());
        let (g, _) = heavy(r#"{"id":"f","elements":["C","O"],"bonds":[[1,2,2]],"h":"auto"}"#);
        assert_eq!(g.h_counts(), &[2, 0]);
        let (g, w) = heavy(
            r#"{"id":"q","elements":["N","C","C","C","C"],"bonds":[[1,2,1],[1,3,1],[1,4,1],[1,5,1]],"h":"auto"}"#,
        );
        assert_eq!(g.h_counts(), &[0, 3, 3, 3, 3]);
        assert_eq!(w, vec![HydrogenWarning { atom: 0, excess: 1 }]);
    }

    #[test]
    fn rejects() {
        let bad = [
            r#"{"id":"x","elements":["C"],"bonds":[],"h":[-1]}"#,
            r#"{"id":"x","elements":["C","C"],"bonds":[[1,3,1]],"h":"auto"}"#,
            r#"{"id":"x","elements":["Cl"],"bonds":[],"h":"auto"}"#,
            r#"{"id":"x","elements":["C","C"],"bonds":[],"h":"auto"}"#,
            r#"{"id":"x","elements":["C"],"bonds":[],"h":"some"}"#,
            r#"{"id":"x","elements":["C"]"#,
        ];
        assert!(matches!(
            parse_record_line(bad[0]),
            Err(MolError::InvalidHydrogenCount { atom: 0, count: -1 })
        ));
        assert!(matches!(parse_record_line(bad[1]), Err(MolError::Parse(_))));
        assert!(matches!(
            parse_record_line(bad[2]),
            Err(MolError::UnsupportedElement(_))
        ));
        assert!(matches!(parse_record_line(bad[3]), Err(MolError::Disconnected(2))));
        assert!(parse_record_line(bad[4]).is_err());
        assert!(parse_record_line(bad[5]).is_err());
    }

    #[test]
    fn field_order_is_fixed() {
        let (g, _) = heavy(r#"{"h":"auto","bonds":[[1,2,1]],"elements":["C","N"],"id":"a"}"#);
        assert_eq!(
            to_line(&record_line("a", &g)),
            r#"{"id":"a","elements":["C","N"],"bonds":[[1,2,1]],"h":[3,2]}"#
        );
    }
}
