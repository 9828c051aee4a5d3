//! Linear alignment of a property computed under one protocol (`E0`) onto a
//! reference protocol (`E1`):
//!
//! * plain:        `E1 = c0*E0 + b0`
//! * composition:  `E1 = c0*E0 + sum_i c_i*N_i + b0`, `N_i` atom counts per
//!   element (hydrogens included)
//! * gcn1:         `E1 = c0*E0 + sum_i c_i*N_i + b0`, `N_i` counts of each
//!   level-1 code over heavy atoms
//!
//! Coefficients come from ridge-regularized normal equations with an
//! unpenalized intercept.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::coverage::DatasetTable;
use crate::gcn::{encode, GcnError};
use crate::molgraph::HeavyGraph;

/// Ridge strength used when the caller gives none.
pub const DEFAULT_RIDGE: f64 = 1e-8;
/// Default absolute-error threshold for outlier counting.
pub const DEFAULT_OUTLIER_THRESHOLD: f64 = 30.0;
/// Above this many unknowns the sparse conjugate-gradient solver is used.
pub const DENSE_LIMIT: usize = 2000;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum AlignError {
    #[error("record `{id}` has no property `{property}`")]
    MissingProperty { id: String, property: String },
    #[error("normal equations are singular; increase the ridge strength")]
    RankDeficient,
    #[error("feature `{0}` was not part of the fitted model")]
    UnseenFeature(String),
    #[error("no training pairs")]
    Empty,
    #[error("invalid ridge strength {0}")]
    InvalidRidge(f64),
    #[error(transparent)]
    Gcn(#[from] GcnError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlignMode {
    #[default]
    Plain,
    Composition,
    Gcn1,
}

impl AlignMode {
    pub fn name(self) -> &'static str {
        match self {
            AlignMode::Plain => "plain",
            AlignMode::Composition => "composition",
            AlignMode::Gcn1 => "gcn1",
        }
    }

    pub fn from_name(s: &str) -> Option<AlignMode> {
        Some(match s {
            "plain" => AlignMode::Plain,
            "composition" => AlignMode::Composition,
            "gcn1" => AlignMode::Gcn1,
            _ => return None,
        })
    }
}

/// Source value plus sparse count features.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FeatureVector {
    pub e0: f64,
    pub counts: BTreeMap<String, u32>,
}

/// Feature vector of one molecule.
pub fn features_of(g: &HeavyGraph, e0: f64, mode: AlignMode) -> Result<FeatureVector, AlignError> {
    let mut counts = BTreeMap::new();
    match mode {
        AlignMode::Plain => {}
        AlignMode::Composition => {
            for (e, n) in g.composition() {
                counts.insert(e.symbol().to_string(), n);
            }
        }
        AlignMode::Gcn1 => {
            for c in encode(g)? {
                *counts.entry(c.gcn1).or_insert(0) += 1;
            }
        }
    }
    Ok(FeatureVector { e0, counts })
}

/// Feature vectors of every record, paired with the target when
/// `target` names a property.
pub fn build_features(
    t: &DatasetTable,
    source: &str,
    target: Option<&str>,
    mode: AlignMode,
) -> Result<Vec<(FeatureVector, Option<f64>)>, AlignError> {
    let prop = |r: &crate::coverage::DatasetRecord, name: &str| {
        r.props.get(name).copied().ok_or_else(|| AlignError::MissingProperty {
            id: r.id.clone(),
            property: name.to_string(),
        })
    };
    t.records()
        .iter()
        .map(|r| {
            let v = features_of(&r.graph, prop(r, source)?, mode)?;
            let y = target.map(|name| prop(r, name)).transpose()?;
            Ok((v, y))
        })
        .collect()
}

/// Training-set fit quality.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FitDiagnostics {
    pub mae: f64,
    pub rmsd: f64,
    pub records: usize,
    pub ridge: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlignmentModel {
    pub mode: AlignMode,
    pub c0: f64,
    pub coefficients: BTreeMap<String, f64>,
    pub b0: f64,
    pub diagnostics: FitDiagnostics,
}

impl AlignmentModel {
    /// Model `E1 = c0*E0 + b0` with no count features.
    pub fn plain(c0: f64, b0: f64) -> Self {
        AlignmentModel {
            mode: AlignMode::Plain,
            c0,
            coefficients: BTreeMap::new(),
            b0,
            diagnostics: FitDiagnostics::default(),
        }
    }
}

pub fn apply(m: &AlignmentModel, v: &FeatureVector) -> Result<f64, AlignError> {
    let mut y = m.c0 * v.e0 + m.b0;
    for (k, &n) in &v.counts {
        let c = m
            .coefficients
            .get(k)
            .ok_or_else(|| AlignError::UnseenFeature(k.clone()))?;
        y += c * f64::from(n);
    }
    Ok(y)
}

/// Residual summary of a model on labelled pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualStats {
    pub mae: f64,
    pub rmsd: f64,
    pub outliers: usize,
    pub records: usize,
}

pub fn residual_stats(
    m: &AlignmentModel,
    pairs: &[(FeatureVector, f64)],
    threshold: f64,
) -> Result<ResidualStats, AlignError> {
    let mut abs = 0.0;
    let mut sq = 0.0;
    let mut outliers = 0;
    for (v, y) in pairs {
        let e = apply(m, v)? - y;
        abs += e.abs();
        sq += e * e;
        if e.abs() > threshold {
            outliers += 1;
        }
    }
    let n = pairs.len().max(1) as f64;
    Ok(ResidualStats {
        mae: abs / n,
        rmsd: libm::sqrt(sq / n),
        outliers,
        records: pairs.len(),
    })
}

fn cmp_pair(a: &(FeatureVector, f64), b: &(FeatureVector, f64)) -> Ordering {
    a.0.e0
        .to_bits()
        .cmp(&b.0.e0.to_bits())
        .then_with(|| a.0.counts.cmp(&b.0.counts))
        .then_with(|| a.1.to_bits().cmp(&b.1.to_bits()))
}

/// Symmetric system `A x = b` assembled from the design.
struct NormalEquations {
    dim: usize,
    /// Upper triangle, `(i, j)` with `i <= j`.
    entries: BTreeMap<(usize, usize), f64>,
    rhs: Vec<f64>,
}

impl NormalEquations {
    fn add(&mut self, i: usize, j: usize, v: f64) {
        let key = if i <= j { (i, j) } else { (j, i) };
        *self.entries.entry(key).or_insert(0.0) += v;
    }

    fn diag(&self, i: usize) -> f64 {
        self.entries.get(&(i, i)).copied().unwrap_or(0.0)
    }
}

/// Least-squares fit minimizing `sum (E1 - pred)^2 + ridge * |(c0, c_i)|^2`.
///
/// Pairs are sorted canonically before accumulation, so the result does not
/// depend on input order.
pub fn fit(pairs: &[(FeatureVector, f64)], mode: AlignMode, ridge: f64) -> Result<AlignmentModel, AlignError> {
    if !ridge.is_finite() || ridge < 0.0 {
        return Err(AlignError::InvalidRidge(ridge));
    }
    if pairs.is_empty() {
        return Err(AlignError::Empty);
    }
    let mut sorted: Vec<&(FeatureVector, f64)> = pairs.iter().collect();
    sorted.sort_by(|a, b| cmp_pair(a, b));

    let keys: Vec<String> = pairs
        .iter()
        .flat_map(|(v, _)| v.counts.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&str, usize> = keys.iter().enumerate().map(|(i, k)| (k.as_str(), i + 1)).collect();
    // Unknowns: c0, c_1..c_k, b0.
    let dim = keys.len() + 2;
    let intercept = dim - 1;
    let mut ne = NormalEquations {
        dim,
        entries: BTreeMap::new(),
        rhs: vec![0.0; dim],
    };
    let mut row: Vec<(usize, f64)> = Vec::new();
    for (v, y) in &sorted {
        row.clear();
        row.push((0, v.e0));
        for (k, &n) in &v.counts {
            if n != 0 {
                row.push((index[k.as_str()], f64::from(n)));
            }
        }
        row.push((intercept, 1.0));
        for (a, &(i, xi)) in row.iter().enumerate() {
            ne.rhs[i] += xi * y;
            for &(j, xj) in &row[a..] {
                ne.add(i, j, xi * xj);
            }
        }
    }
    for i in 0..intercept {
        ne.add(i, i, ridge);
    }
    let x = if dim <= DENSE_LIMIT {
        solve_dense(&ne)?
    } else {
        solve_cg(&ne)?
    };
    let mut model = AlignmentModel {
        mode,
        c0: x[0],
        coefficients: keys.into_iter().zip(x[1..intercept].iter().copied()).collect(),
        b0: x[intercept],
        diagnostics: FitDiagnostics::default(),
    };
    let ordered: Vec<(FeatureVector, f64)> = sorted.into_iter().cloned().collect();
    let stats = residual_stats(&model, &ordered, f64::INFINITY)?;
    model.diagnostics = FitDiagnostics {
        mae: stats.mae,
        rmsd: stats.rmsd,
        records: pairs.len(),
        ridge,
    };
    Ok(model)
}

/// Relative pivot below which the (unit-diagonal) system is declared
/// singular.
const PIVOT_TOLERANCE: f64 = 1e-13;

/// Cholesky on the Jacobi-scaled system.
fn solve_dense(ne: &NormalEquations) -> Result<Vec<f64>, AlignError> {
    let n = ne.dim;
    let scale: Vec<f64> = (0..n)
        .map(|i| {
            let d = ne.diag(i);
            if d > 0.0 {
                1.0 / libm::sqrt(d)
            } else {
                0.0
            }
        })
        .collect();
    if scale.contains(&0.0) {
        return Err(AlignError::RankDeficient);
    }
    let mut a = vec![0.0; n * n];
    for (&(i, j), &v) in &ne.entries {
        let s = v * scale[i] * scale[j];
        a[i * n + j] = s;
        a[j * n + i] = s;
    }
    // In-place lower-triangular factor.
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if d.is_nan() || d <= PIVOT_TOLERANCE {
            return Err(AlignError::RankDeficient);
        }
        let d = libm::sqrt(d);
        a[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
    }
    let mut y: Vec<f64> = (0..n).map(|i| ne.rhs[i] * scale[i]).collect();
    for i in 0..n {
        let mut s = y[i];
        for k in 0..i {
            s -= a[i * n + k] * y[k];
        }
        y[i] = s / a[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in i + 1..n {
            s -= a[k * n + i] * y[k];
        }
        y[i] = s / a[i * n + i];
    }
    Ok(y.iter().zip(&scale).map(|(v, s)| v * s).collect())
}

/// Jacobi-preconditioned conjugate gradients for large sparse systems.
fn solve_cg(ne: &NormalEquations) -> Result<Vec<f64>, AlignError> {
    let n = ne.dim;
    let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for (&(i, j), &v) in &ne.entries {
        rows[i].push((j, v));
        if i != j {
            rows[j].push((i, v));
        }
    }
    let diag: Vec<f64> = (0..n).map(|i| ne.diag(i)).collect();
    if diag.iter().any(|&d| d.is_nan() || d <= 0.0) {
        return Err(AlignError::RankDeficient);
    }
    let matvec = |x: &[f64], out: &mut [f64]| {
        for (i, r) in rows.iter().enumerate() {
            out[i] = r.iter().map(|&(j, v)| v * x[j]).sum();
        }
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let b = &ne.rhs;
    let bnorm = libm::sqrt(dot(b, b)).max(f64::MIN_POSITIVE);
    let mut x = vec![0.0; n];
    let mut r = b.clone();
    let mut z: Vec<f64> = r.iter().zip(&diag).map(|(r, d)| r / d).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    for _ in 0..(20 * n).max(100) {
        if libm::sqrt(dot(&r, &r)) <= 1e-12 * bnorm {
            return Ok(x);
        }
        matvec(&p, &mut ap);
        let pap = dot(&p, &ap);
        if pap.is_nan() || pap <= 0.0 {
            return Err(AlignError::RankDeficient);
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        for i in 0..n {
            z[i] = r[i] / diag[i];
        }
        let rz_next = dot(&r, &z);
        let beta = rz_next / rz;
        rz = rz_next;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(AlignError::RankDeficient)
}
