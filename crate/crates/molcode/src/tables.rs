//! Orbital tables and isolated-atom reference tables.
//!
//! Both are line-delimited; fields are separated by whitespace, commas or
//! tabs, and `#` starts a comment line.

use std::collections::BTreeMap;

use molcode_core::descriptors::{AtomRefTable, OrbitalRecord};
use molcode_core::molgraph::Element;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
}

fn fields(line: &str) -> Vec<&str> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number(s: &str, line: usize, what: &str) -> Result<f64, TableError> {
    s.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| TableError::Line {
            line,
            message: format!("bad {what} `{s}`"),
        })
}

/// Orbitals of one atom, in input order.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomOrbitals {
    pub atom: String,
    pub group: Option<String>,
    pub records: Vec<OrbitalRecord>,
}

/// Parses `atom orbital occupancy energy [group]` rows, grouped by atom in
/// order of first appearance.
pub fn parse_orbitals(text: &str) -> Result<Vec<AtomOrbitals>, TableError> {
    let mut out: Vec<AtomOrbitals> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (line, l) in content_lines(text) {
        let f = fields(l);
        if !(4..=5).contains(&f.len()) {
            return Err(TableError::Line {
                line,
                message: format!("expected 4 or 5 fields, found {}", f.len()),
            });
        }
        let rec = OrbitalRecord {
            occupancy: number(f[2], line, "occupancy")?,
            energy: number(f[3], line, "energy")?,
        };
        let group = f.get(4).map(|s| s.to_string());
        let slot = *index.entry(f[0].to_string()).or_insert_with(|| {
            out.push(AtomOrbitals {
                atom: f[0].to_string(),
                group: group.clone(),
                records: Vec::new(),
            });
            out.len() - 1
        });
        if out[slot].group != group {
            return Err(TableError::Line {
                line,
                message: format!("atom `{}` appears with two group labels", f[0]),
            });
        }
        out[slot].records.push(rec);
    }
    Ok(out)
}

/// Parses `element energy` rows.
pub fn parse_refs(text: &str) -> Result<AtomRefTable, TableError> {
    let mut refs = AtomRefTable::new();
    for (line, l) in content_lines(text) {
        let f = fields(l);
        if f.len() != 2 {
            return Err(TableError::Line {
                line,
                message: format!("expected 2 fields, found {}", f.len()),
            });
        }
        let e = Element::from_symbol(f[0]).ok_or_else(|| TableError::Line {
            line,
            message: format!("unsupported element `{}`", f[0]),
        })?;
        refs.insert(e, number(f[1], line, "energy")?);
    }
    Ok(refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbitals() {
        let t = parse_orbitals("# atom orb occ e\na1 1 2.0 -1.0 ring\na2,1,2.0,-0.5\na1 2 2.0 -3.0 ring\n").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[0].records.len(), 2);
        assert_eq!(t[0].group.as_deref(), Some("ring"));
        assert_eq!(t[1].group, None);
        assert!(parse_orbitals("a 1 x -1").is_err());
        assert!(parse_orbitals("a 1 2 -1 ring\na 2 2 -1 chain").is_err());
    }

    #[test]
    fn refs() {
        let r = parse_refs("C -37.8\nH,-0.5\n").unwrap();
        assert_eq!(r.get(Element::C), Some(-37.8));
        assert!(parse_refs("Cl -400").is_err());
    }
}
