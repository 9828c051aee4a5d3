//! Text form of a fitted alignment model.
//!
//! ```text
//! # molcode alignment model
//! mode composition
//! ridge 0.00000001
//! c0 1.03
//! b0 0.42
//! coef C -37.9
//! mae 0
//! rmsd 0
//! records 48
//! ```
//!
//! Numbers are written in shortest round-trip form, so reading a written
//! model gives back the same values bit for bit.

use std::collections::BTreeMap;

use molcode_core::align::{AlignMode, AlignmentModel, FitDiagnostics};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ModelError {
    #[error("line {0}: {1}")]
    Line(usize, String),
    #[error("missing `{0}`")]
    Missing(&'static str),
}

pub fn write_model(m: &AlignmentModel) -> String {
    let mut s = String::from("# molcode alignment model\n");
    s += &format!("mode {}\n", m.mode.name());
    s += &format!("ridge {}\n", m.diagnostics.ridge);
    s += &format!("c0 {}\n", m.c0);
    s += &format!("b0 {}\n", m.b0);
    for (k, v) in &m.coefficients {
        s += &format!("coef {k} {v}\n");
    }
    s += &format!("mae {}\n", m.diagnostics.mae);
    s += &format!("rmsd {}\n", m.diagnostics.rmsd);
    s += &format!("records {}\n", m.diagnostics.records);
    s
}

pub fn read_model(text: &str) -> Result<AlignmentModel, ModelError> {
    let mut mode = None;
    let (mut c0, mut b0) = (None, None);
    let mut coefficients = BTreeMap::new();
    let mut diag = FitDiagnostics::default();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| ModelError::Line(i + 1, format!("{msg}: `{line}`"));
        let num = |s: Option<&str>| s.and_then(|s| s.parse::<f64>().ok()).ok_or_else(|| bad("bad number"));
        let mut f = line.split_whitespace();
        match f.next() {
            Some("mode") => {
                mode = Some(
                    f.next()
                        .and_then(AlignMode::from_name)
                        .ok_or_else(|| bad("unknown mode"))?,
                )
            }
            Some("ridge") => diag.ridge = num(f.next())?,
            Some("c0") => c0 = Some(num(f.next())?),
            Some("b0") => b0 = Some(num(f.next())?),
            Some("coef") => {
                let key = f.next().ok_or_else(|| bad("missing key"))?;
                coefficients.insert(key.to_string(), num(f.next())?);
            }
            Some("mae") => diag.mae = num(f.next())?,
            Some("rmsd") => diag.rmsd = num(f.next())?,
            Some("records") => diag.records = f.next().and_then(|s| s.parse().ok()).ok_or_else(|| bad("bad count"))?,
            _ => return Err(bad("unknown entry")),
        }
        if f.next().is_some() {
            return Err(bad("trailing fields"));
        }
    }
    Ok(AlignmentModel {
        mode: mode.ok_or(ModelError::Missing("mode"))?,
        c0: c0.ok_or(ModelError::Missing("c0"))?,
        coefficients,
        b0: b0.ok_or(ModelError::Missing("b0"))?,
        diagnostics: diag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut m = AlignmentModel::plain(1.0 / 3.0, -2.5e-17);
        m.mode = AlignMode::Gcn1;
        m.coefficients.insert("C31(C22,C21,C13)".into(), 0.1 + 0.2);
        m.diagnostics = FitDiagnostics {
            mae: 1e-300,
            rmsd: 2.0,
            records: 7,
            ridge: 1e-8,
        };
        assert_eq!(read_model(&write_model(&m)).unwrap(), m);
        assert!(read_model("mode plain\nc0 1\n").is_err());
        assert!(read_model("mode odd\nc0 1\nb0 0\n").is_err());
    }
}
