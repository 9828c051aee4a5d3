//! V2000 connection tables (MOL) and multi-record SDF files.
//!
//! Coordinates, charges and stereo flags are read past and discarded; only
//! element symbols and the bond block matter.

use std::collections::BTreeMap;

use molcode_core::molgraph::{Bond, Element, Hydrogens, MolError, MolGraph};

fn parse_err(msg: impl Into<String>) -> MolError {
    MolError::Parse(msg.into())
}

/// Fixed-width integer field, with whitespace-split fallback for sloppy
/// writers.
fn field(line: &str, range: std::ops::Range<usize>, fallback: usize, what: &str) -> Result<usize, MolError> {
    let fixed = line.get(range).map(str::trim).filter(|s| !s.is_empty());
    let text = match fixed {
        Some(s) if s.parse::<usize>().is_ok() => s,
        _ => line
            .split_whitespace()
            .nth(fallback)
            .ok_or_else(|| parse_err(format!("missing {what}")))?,
    };
    text.parse().map_err(|_| parse_err(format!("bad {what} `{text}`")))
}

fn atom_symbol(line: &str) -> Result<&str, MolError> {
    match line.get(31..34).map(str::trim) {
        Some(s) if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphabetic()) => Ok(s),
        _ => line
            .split_whitespace()
            .nth(3)
            .ok_or_else(|| parse_err(format!("malformed atom line `{line}`"))),
    }
}

/// Parses one V2000 connection table. The title line becomes the id.
pub fn parse_molfile(text: &str) -> Result<MolGraph, MolError> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() < 4 {
        return Err(parse_err("header and counts line missing"));
    }
    let id = lines[0].trim().to_string();
    let counts = lines[3];
    if counts.contains("V3000") {
        return Err(parse_err("V3000 connection tables are not supported"));
    }
    let na = field(counts, 0..3, 0, "atom count")?;
    let nb = field(counts, 3..6, 1, "bond count")?;
    if lines.len() < 4 + na + nb {
        return Err(parse_err(format!(
            "truncated block: {} atom and {} bond lines expected",
            na, nb
        )));
    }
    let elements = lines[4..4 + na]
        .iter()
        .map(|l| {
            let s = atom_symbol(l)?;
            Element::from_symbol(s).ok_or_else(|| MolError::UnsupportedElement(s.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut bonds = Vec::with_capacity(nb);
    for l in &lines[4 + na..4 + na + nb] {
        let a = field(l, 0..3, 0, "bond atom")?;
        let b = field(l, 3..6, 1, "bond atom")?;
        let order = field(l, 6..9, 2, "bond type")?;
        if !(1..=3).contains(&order) {
            return Err(MolError::UnsupportedBondOrder(order.min(255) as u8));
        }
        if a == 0 || b == 0 || a > na || b > na {
            return Err(parse_err(format!("bond {a}-{b} refers to a missing atom")));
        }
        bonds.push(Bond::new(a - 1, b - 1, order as u8));
    }
    let has_h = elements.contains(&Element::H);
    let hydrogens = if has_h {
        Hydrogens::Explicit
    } else {
        Hydrogens::Implicit(molcode_core::molgraph::infer_hydrogens(&elements, &bonds).0)
    };
    MolGraph::new(id, elements, bonds, hydrogens)
}

/// One SDF entry: the connection table plus numeric data items.
#[derive(Clone, Debug, PartialEq)]
pub struct SdfEntry {
    pub mol: MolGraph,
    pub props: BTreeMap<String, f64>,
}

/// Text of each `$$$$`-terminated entry with its starting line number
/// (1-based).
pub fn split_sdf(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 1;
    for (i, line) in text.lines().enumerate() {
        if line.trim_end() == "$$$$" {
            out.push((start, std::mem::take(&mut cur)));
            start = i + 2;
        } else {
            cur.push_str(line);
            cur.push('\n');
        }
    }
    if !cur.trim().is_empty() {
        out.push((start, cur));
    }
    out
}

/// Parses one SDF entry. Data items whose first value line is numeric
/// become properties; others are ignored.
pub fn parse_sdf_entry(text: &str) -> Result<SdfEntry, MolError> {
    let (table, data) = match text.find("M  END") {
        Some(i) => text.split_at(i),
        None => (text, ""),
    };
    let mol = parse_molfile(table)?;
    let mut props = BTreeMap::new();
    let mut lines = data.lines();
    while let Some(l) = lines.next() {
        if !l.starts_with('>') {
            continue;
        }
        let name = match (l.find('<'), l.rfind('>')) {
            (Some(a), Some(b)) if b > a => &l[a + 1..b],
            _ => continue,
        };
        if let Some(v) = lines.next().and_then(|v| v.trim().parse::<f64>().ok()) {
            props.insert(name.to_string(), v);
        }
    }
    Ok(SdfEntry { mol, props })
}

#[cfg(test)]
mod tests {
    use super::*;

    const METHANE: &str = "methane
  test

  5  4  0  0  0  0  0  0  0  0999 V2000
    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0
    0.6300    0.6300    0.6300 H   0  0  0  0  0  0  0  0  0  0  0  0
   -0.6300   -0.6300    0.6300 H   0  0  0  0  0  0  0  0  0  0  0  0
   -0.6300    0.6300   -0.6300 H   0  0  0  0  0  0  0  0  0  0  0  0
    0.6300   -0.6300   -0.6300 H   0  0  0  0  0  0  0  0  0  0  0  0
  1  2  1  0
  1  3  1  0
  1  4  1  0
  1  5  1  0
M  END
";

    #[test]
    fn methane_block() {
        let m = parse_molfile(METHANE).unwrap();
        assert_eq!((m.elements().len(), m.bonds().len()), (5, 4));
        assert!(m.explicit_h());
        assert_eq!(m.id(), "methane");
        assert_eq!(m.heavy_graph().unwrap().h_counts(), &[4]);
    }

    #[test]
    fn errors() {
        let cl = METHANE.replacen(" H ", " Cl", 1);
        assert!(matches!(parse_molfile(&cl), Err(MolError::UnsupportedElement(s)) if s == "Cl"));
        let arom = METHANE.replace("  1  2  1  0", "  1  2  4  0");
        assert_eq!(parse_molfile(&arom), Err(MolError::UnsupportedBondOrder(4)));
        let truncated: String = METHANE.lines().take(8).map(|l| format!("{l}\n")).collect();
        assert!(matches!(parse_molfile(&truncated), Err(MolError::Parse(_))));
        let counts = METHANE.replace("  5  4  0", " xx  4  0");
        assert!(matches!(parse_molfile(&counts), Err(MolError::Parse(_))));
    }

    #[test]
    fn sdf_entries() {
        let sdf = format!("{METHANE}> <etot>\n-40.5\n\n> <name>\nmethane\n\n$$$$\n{METHANE}$$$$\n");
        let parts = split_sdf(&sdf);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1].0, 22);
        let e = parse_sdf_entry(&parts[0].1).unwrap();
        assert_eq!(e.props.len(), 1);
        assert_eq!(e.props["etot"], -40.5);
    }
}
