//! Dataset-level analytics over both structural axes: unique-type counts,
//! set overlaps, KL divergence between type distributions, histograms,
//! level-threshold subsets, structure-complement subsets and composition
//! uniformity.
//!
//! Every report type here is built from per-record contributions and has an
//! associative, commutative `merge`, so shards may be processed in any order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::CanonError;
use crate::gcn::{encode, gcn2_level, GcnError};
use crate::molgraph::HeavyGraph;
use crate::nbg::{nbg0_extract, nbg_plus_class, scaffold, ExtractMode, NbgTopology};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoverageError {
    #[error("duplicate record `{0}`")]
    DuplicateRecord(String),
    #[error("dataset `{0}` has no typed records")]
    EmptyDistribution(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error(transparent)]
    Gcn(#[from] GcnError),
    #[error(transparent)]
    Canon(#[from] CanonError),
}

/// One molecule (or one conformer of a molecule) of a dataset.
#[derive(Clone, Debug, PartialEq)]
pub struct DatasetRecord {
    pub id: String,
    /// Conformer identifier; records sharing `id` are conformers of one
    /// molecule and must differ here.
    pub conformer: Option<String>,
    pub graph: HeavyGraph,
    pub props: BTreeMap<String, f64>,
}

impl DatasetRecord {
    pub fn new(id: impl Into<String>, graph: HeavyGraph) -> Self {
        DatasetRecord {
            id: id.into(),
            conformer: None,
            graph,
            props: BTreeMap::new(),
        }
    }

    pub fn with_prop(mut self, name: &str, value: f64) -> Self {
        self.props.insert(name.to_string(), value);
        self
    }
}

/// A named collection of records with unique `(id, conformer)` keys.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DatasetTable {
    pub name: String,
    records: Vec<DatasetRecord>,
    keys: BTreeSet<(String, Option<String>)>,
}

impl DatasetTable {
    pub fn new(name: impl Into<String>) -> Self {
        DatasetTable {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, record: DatasetRecord) -> Result<(), CoverageError> {
        let key = (record.id.clone(), record.conformer.clone());
        if !self.keys.insert(key) {
            return Err(CoverageError::DuplicateRecord(record.id));
        }
        self.records.push(record);
        Ok(())
    }

    pub fn records(&self) -> &[DatasetRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn from_records(
        name: impl Into<String>,
        records: impl IntoIterator<Item = DatasetRecord>,
    ) -> Result<Self, CoverageError> {
        let mut t = DatasetTable::new(name);
        for r in records {
            t.push(r)?;
        }
        Ok(t)
    }
}

/// A structural axis along which records are typed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    Gcn0,
    Gcn1,
    Gcn2,
    Nbg0(ExtractMode),
    /// The whole heavy-atom graph with elements and bond orders.
    NbgPlus,
    Scaffold(ExtractMode),
}

impl Feature {
    /// Parses `gcn0|gcn1|gcn2|nbg0|nbg-plus|scaffold`; `mode` applies to the
    /// topological axes.
    pub fn parse(name: &str, mode: ExtractMode) -> Option<Feature> {
        Some(match name.to_ascii_lowercase().as_str() {
            "gcn0" => Feature::Gcn0,
            "gcn1" => Feature::Gcn1,
            "gcn2" => Feature::Gcn2,
            "nbg0" => Feature::Nbg0(mode),
            "nbg-plus" | "nbgplus" | "nbg_plus" => Feature::NbgPlus,
            "scaffold" => Feature::Scaffold(mode),
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Feature::Gcn0 => "gcn0",
            Feature::Gcn1 => "gcn1",
            Feature::Gcn2 => "gcn2",
            Feature::Nbg0(_) => "nbg0",
            Feature::NbgPlus => "nbg-plus",
            Feature::Scaffold(_) => "scaffold",
        }
    }
}

/// Types of one molecule along `feature`, one entry per occurrence (an atom
/// for the code axes, a ring unit for NBG0, the molecule otherwise).
pub fn record_types(g: &HeavyGraph, feature: Feature) -> Result<Vec<String>, CoverageError> {
    Ok(match feature {
        Feature::Gcn0 | Feature::Gcn1 | Feature::Gcn2 => encode(g)?
            .into_iter()
            .map(|c| match feature {
                Feature::Gcn0 => c.gcn0,
                Feature::Gcn1 => c.gcn1,
                _ => c.gcn2,
            })
            .collect(),
        Feature::Nbg0(mode) => nbg0_extract(g, mode)?.into_iter().map(|t| t.signature).collect(),
        Feature::NbgPlus => vec![whole_signature(g)?],
        Feature::Scaffold(mode) => scaffold(g, mode)?.into_iter().map(|t| t.signature).collect(),
    })
}

fn whole_signature(g: &HeavyGraph) -> Result<String, CanonError> {
    let lg = crate::canon::LabeledGraph::new(
        g.elements().to_vec(),
        g.bonds().iter().map(|b| (b.a, b.b, b.order)).collect(),
    );
    Ok(NbgTopology::from_graph(&lg)?.signature)
}

/// Occurrence counts of every type along `feature`.
pub fn type_counts(t: &DatasetTable, feature: Feature) -> Result<BTreeMap<String, u64>, CoverageError> {
    let mut out = BTreeMap::new();
    for r in t.records() {
        for ty in record_types(&r.graph, feature)? {
            *out.entry(ty).or_insert(0) += 1;
        }
    }
    Ok(out)
}

pub fn type_set(t: &DatasetTable, feature: Feature) -> Result<BTreeSet<String>, CoverageError> {
    Ok(type_counts(t, feature)?.into_keys().collect())
}

/// Per-axis unique-type statistics of a dataset.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverageReport {
    pub name: String,
    pub molecule_ids: BTreeSet<String>,
    pub conformations: usize,
    pub gcn0: BTreeSet<String>,
    pub gcn1: BTreeSet<String>,
    pub gcn2: BTreeSet<String>,
    pub nbg0_element_order: BTreeSet<String>,
    pub nbg0_skeleton: BTreeSet<String>,
    pub nbg0_skeleton_no_order: BTreeSet<String>,
    /// Molecules per NBG-Plus level.
    pub nbg_plus_levels: BTreeMap<usize, usize>,
    /// Molecules per level-2 code level.
    pub gcn2_levels: BTreeMap<usize, usize>,
    pub within_plus: usize,
    pub scaffold_mode: ExtractMode,
    pub scaffolds: BTreeSet<String>,
    /// Molecules (not conformers) per heavy-atom count.
    pub na_histogram: BTreeMap<usize, usize>,
}

impl CoverageReport {
    pub fn molecules(&self) -> usize {
        self.molecule_ids.len()
    }

    /// Union of two partial reports. The NA histogram counts each molecule
    /// id once only when both parts were built from disjoint id sets.
    pub fn merge(&mut self, other: CoverageReport) {
        let CoverageReport {
            name: _,
            molecule_ids,
            conformations,
            gcn0,
            gcn1,
            gcn2,
            nbg0_element_order,
            nbg0_skeleton,
            nbg0_skeleton_no_order,
            nbg_plus_levels,
            gcn2_levels,
            within_plus,
            scaffold_mode: _,
            scaffolds,
            na_histogram,
        } = other;
        self.molecule_ids.extend(molecule_ids);
        self.conformations += conformations;
        self.gcn0.extend(gcn0);
        self.gcn1.extend(gcn1);
        self.gcn2.extend(gcn2);
        self.nbg0_element_order.extend(nbg0_element_order);
        self.nbg0_skeleton.extend(nbg0_skeleton);
        self.nbg0_skeleton_no_order.extend(nbg0_skeleton_no_order);
        self.scaffolds.extend(scaffolds);
        self.within_plus += within_plus;
        for (k, v) in nbg_plus_levels {
            *self.nbg_plus_levels.entry(k).or_insert(0) += v;
        }
        for (k, v) in gcn2_levels {
            *self.gcn2_levels.entry(k).or_insert(0) += v;
        }
        for (k, v) in na_histogram {
            *self.na_histogram.entry(k).or_insert(0) += v;
        }
    }
}

/// Coverage contribution of a slice of records. Conformers after the first of
/// each id within the slice only add to the conformation count; shard by id
/// when conformers are present.
pub fn coverage_partial(
    name: &str,
    records: &[DatasetRecord],
    scaffold_mode: ExtractMode,
) -> Result<CoverageReport, CoverageError> {
    let mut rep = CoverageReport {
        name: name.to_string(),
        scaffold_mode,
        ..Default::default()
    };
    for r in records {
        rep.conformations += 1;
        if !rep.molecule_ids.insert(r.id.clone()) {
            continue;
        }
        let g = &r.graph;
        for c in encode(g)? {
            rep.gcn0.insert(c.gcn0);
            rep.gcn1.insert(c.gcn1);
            rep.gcn2.insert(c.gcn2);
        }
        for (mode, set) in [
            (ExtractMode::ElementOrder, &mut rep.nbg0_element_order),
            (ExtractMode::Skeleton, &mut rep.nbg0_skeleton),
            (ExtractMode::SkeletonNoOrder, &mut rep.nbg0_skeleton_no_order),
        ] {
            set.extend(nbg0_extract(g, mode)?.into_iter().map(|t| t.signature));
        }
        let class = nbg_plus_class(g);
        *rep.nbg_plus_levels.entry(class.level).or_insert(0) += 1;
        *rep.gcn2_levels.entry(gcn2_level(g)).or_insert(0) += 1;
        if class.within_plus {
            rep.within_plus += 1;
        }
        if let Some(s) = scaffold(g, scaffold_mode)? {
            rep.scaffolds.insert(s.signature);
        }
        *rep.na_histogram.entry(g.na()).or_insert(0) += 1;
    }
    Ok(rep)
}

pub fn coverage_report(t: &DatasetTable, scaffold_mode: ExtractMode) -> Result<CoverageReport, CoverageError> {
    coverage_partial(&t.name, t.records(), scaffold_mode)
}

/// Venn-region cardinalities of two or three type sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapReport {
    pub names: Vec<String>,
    /// Keyed by membership bitmask (bit `i` set = present in set `i`); every
    /// nonempty mask is listed, including empty regions.
    pub regions: BTreeMap<u8, usize>,
}

impl OverlapReport {
    pub fn region(&self, mask: u8) -> usize {
        self.regions.get(&mask).copied().unwrap_or(0)
    }

    pub fn union_size(&self) -> usize {
        self.regions.values().sum()
    }
}

pub fn overlap_sets(names: &[&str], sets: &[&BTreeSet<String>]) -> Result<OverlapReport, CoverageError> {
    if !(2..=3).contains(&sets.len()) || names.len() != sets.len() {
        return Err(CoverageError::InvalidArgument("overlap needs two or three sets"));
    }
    let mut regions: BTreeMap<u8, usize> = (1..(1u8 << sets.len())).map(|m| (m, 0)).collect();
    let union: BTreeSet<&String> = sets.iter().flat_map(|s| s.iter()).collect();
    for ty in union {
        let mask = sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(ty))
            .fold(0u8, |m, (i, _)| m | (1 << i));
        *regions.get_mut(&mask).expect("mask") += 1;
    }
    Ok(OverlapReport {
        names: names.iter().map(|s| s.to_string()).collect(),
        regions,
    })
}

pub fn overlap_report(tables: &[&DatasetTable], feature: Feature) -> Result<OverlapReport, CoverageError> {
    let sets = tables
        .iter()
        .map(|t| type_set(t, feature))
        .collect::<Result<Vec<_>, _>>()?;
    let names: Vec<&str> = tables.iter().map(|t| t.name.as_str()).collect();
    let refs: Vec<&BTreeSet<String>> = sets.iter().collect();
    overlap_sets(&names, &refs)
}

/// Default additive smoothing for [`kl_matrix`].
pub const DEFAULT_EPSILON: f64 = 1e-9;

/// `D_KL(P || Q)` in nats after adding `epsilon` to every probability and
/// renormalizing. `p` and `q` are probability vectors over the same support.
pub fn kl_smoothed(p: &[f64], q: &[f64], epsilon: f64) -> f64 {
    let k = p.len() as f64;
    let zp = 1.0 + epsilon * k;
    let zq = 1.0 + epsilon * k;
    let d: f64 = p
        .iter()
        .zip(q)
        .map(|(&pi, &qi)| {
            let (ps, qs) = ((pi + epsilon) / zp, (qi + epsilon) / zq);
            ps * libm::log(ps / qs)
        })
        .sum();
    d.max(0.0)
}

/// Pairwise KL divergences. `values[row][col] = D_KL(P_col || Q_row)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KlMatrix {
    pub names: Vec<String>,
    pub epsilon: f64,
    pub support: usize,
    pub values: Vec<Vec<f64>>,
}

pub fn kl_from_counts(
    names: &[&str],
    counts: &[BTreeMap<String, u64>],
    epsilon: f64,
) -> Result<KlMatrix, CoverageError> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(CoverageError::InvalidArgument("epsilon must be positive"));
    }
    for (name, c) in names.iter().zip(counts) {
        if c.values().sum::<u64>() == 0 {
            return Err(CoverageError::EmptyDistribution(name.to_string()));
        }
    }
    let support: BTreeSet<&String> = counts.iter().flat_map(|c| c.keys()).collect();
    let dists: Vec<Vec<f64>> = counts
        .iter()
        .map(|c| {
            let total = c.values().sum::<u64>() as f64;
            support
                .iter()
                .map(|k| c.get(*k).copied().unwrap_or(0) as f64 / total)
                .collect()
        })
        .collect();
    let values = dists
        .iter()
        .map(|q| dists.iter().map(|p| kl_smoothed(p, q, epsilon)).collect())
        .collect();
    Ok(KlMatrix {
        names: names.iter().map(|s| s.to_string()).collect(),
        epsilon,
        support: support.len(),
        values,
    })
}

pub fn kl_matrix(tables: &[&DatasetTable], feature: Feature, epsilon: f64) -> Result<KlMatrix, CoverageError> {
    let counts = tables
        .iter()
        .map(|t| type_counts(t, feature))
        .collect::<Result<Vec<_>, _>>()?;
    let names: Vec<&str> = tables.iter().map(|t| t.name.as_str()).collect();
    kl_from_counts(&names, &counts, epsilon)
}

/// A numeric per-record quantity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Property {
    /// Heavy-atom count.
    Na,
    Named(String),
}

impl Property {
    pub fn parse(s: &str) -> Property {
        match s {
            "na" | "Na" | "NA" => Property::Na,
            other => Property::Named(other.to_string()),
        }
    }

    pub fn value(&self, r: &DatasetRecord) -> Option<f64> {
        match self {
            Property::Na => Some(r.graph.na() as f64),
            Property::Named(n) => r.props.get(n).copied().filter(|v| v.is_finite()),
        }
    }
}

/// Fixed-width histogram. Bin `i` covers `[lo + i*width, lo + (i+1)*width)`;
/// the last bin also includes its upper edge.
#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub width: f64,
    pub counts: Vec<u64>,
    /// Records without the property.
    pub missing: usize,
    /// Values outside the binned range.
    pub out_of_range: usize,
}

impl Histogram {
    pub fn empty(lo: f64, width: f64, bins: usize) -> Histogram {
        Histogram {
            lo,
            width,
            counts: vec![0; bins],
            missing: 0,
            out_of_range: 0,
        }
    }

    pub fn add(&mut self, x: f64) {
        let bins = self.counts.len();
        let pos = (x - self.lo) / self.width;
        if pos.is_nan() || pos < 0.0 || bins == 0 {
            self.out_of_range += 1;
            return;
        }
        let mut i = libm::floor(pos) as usize;
        if i == bins && x <= self.hi() {
            i = bins - 1;
        }
        if i >= bins {
            self.out_of_range += 1;
        } else {
            self.counts[i] += 1;
        }
    }

    pub fn hi(&self) -> f64 {
        self.lo + self.width * self.counts.len() as f64
    }

    pub fn edges(&self) -> Vec<f64> {
        (0..=self.counts.len())
            .map(|i| self.lo + self.width * i as f64)
            .collect()
    }

    pub fn used(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Histogram with explicit range.
    pub fn build(values: &[f64], lo: f64, width: f64, bins: usize) -> Histogram {
        let mut h = Histogram::empty(lo, width, bins);
        values.iter().for_each(|&x| h.add(x));
        h
    }

    /// `bins` equal bins spanning `[min, max]` of the data; unit-width bins
    /// starting at `floor(min)` when `bins` is `None`.
    pub fn auto(values: &[f64], bins: Option<usize>) -> Histogram {
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if values.is_empty() {
            return Histogram::empty(0.0, 1.0, bins.unwrap_or(0));
        }
        match bins {
            None => {
                let lo = libm::floor(lo);
                let n = (libm::floor(hi) - lo) as usize + 1;
                Histogram::build(values, lo, 1.0, n)
            }
            Some(b) => {
                let width = if hi > lo { (hi - lo) / b as f64 } else { 1.0 };
                Histogram::build(values, lo, width, b)
            }
        }
    }

    pub fn merge(&mut self, other: &Histogram) {
        debug_assert_eq!(self.counts.len(), other.counts.len());
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.missing += other.missing;
        self.out_of_range += other.out_of_range;
    }
}

/// Property values of every record that has the property, plus the number of
/// records skipped.
pub fn property_values(t: &DatasetTable, property: &Property) -> (Vec<f64>, usize) {
    let mut skipped = 0;
    let values = t
        .records()
        .iter()
        .filter_map(|r| {
            let v = property.value(r);
            if v.is_none() {
                skipped += 1;
            }
            v
        })
        .collect();
    (values, skipped)
}

/// Histogram of a property over a table; see [`Histogram::auto`].
pub fn histogram(t: &DatasetTable, property: &Property, bins: Option<usize>) -> Histogram {
    let (values, skipped) = property_values(t, property);
    let mut h = Histogram::auto(&values, bins);
    h.missing = skipped;
    h
}

/// Ids of records with level-2 code level at most `gcn2_max` and NBG-Plus
/// level at most `nbg_max`.
pub fn expansion_subsets(t: &DatasetTable, gcn2_max: usize, nbg_max: usize) -> BTreeSet<String> {
    t.records()
        .iter()
        .filter(|r| gcn2_level(&r.graph) <= gcn2_max && nbg_plus_class(&r.graph).level <= nbg_max)
        .map(|r| r.id.clone())
        .collect()
}

/// Ids of `eval` records carrying at least one `feature` type absent from
/// `train`, optionally restricted to records with at most `na_cap` heavy
/// atoms.
pub fn structure_complement(
    train: &DatasetTable,
    eval: &DatasetTable,
    feature: Feature,
    na_cap: Option<usize>,
) -> Result<BTreeSet<String>, CoverageError> {
    let seen = type_set(train, feature)?;
    let mut out = BTreeSet::new();
    for r in eval.records() {
        if na_cap.is_some_and(|cap| r.graph.na() > cap) {
            continue;
        }
        if record_types(&r.graph, feature)?.iter().any(|t| !seen.contains(t)) {
            out.insert(r.id.clone());
        }
    }
    Ok(out)
}

/// Distinct structures per molecular formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompositionReport {
    /// Formula -> distinct canonical heavy-atom structures.
    pub structures: BTreeMap<String, BTreeSet<String>>,
}

impl CompositionReport {
    pub fn counts(&self) -> BTreeMap<String, usize> {
        self.structures.iter().map(|(k, v)| (k.clone(), v.len())).collect()
    }

    /// Formulas represented by fewer than two distinct structures.
    pub fn under_represented(&self) -> Vec<String> {
        self.structures
            .iter()
            .filter(|(_, v)| v.len() < 2)
            .map(|(k, _)| k.clone())
            .collect()
    }

    pub fn merge(&mut self, other: CompositionReport) {
        for (k, v) in other.structures {
            self.structures.entry(k).or_default().extend(v);
        }
    }
}

pub fn composition_uniformity(t: &DatasetTable) -> Result<CompositionReport, CoverageError> {
    let mut rep = CompositionReport::default();
    for r in t.records() {
        rep.structures
            .entry(r.graph.formula())
            .or_default()
            .insert(whole_signature(&r.graph)?);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::Element::*;

    fn rec(id: &str, g: HeavyGraph) -> DatasetRecord {
        DatasetRecord::new(id, g)
    }

    fn methane() -> HeavyGraph {
        HeavyGraph::from_triples(&[C], &[]).unwrap()
    }

    fn ethane() -> HeavyGraph {
        HeavyGraph::from_triples(&[C, C], &[(0, 1, 1)]).unwrap()
    }

    fn propane() -> HeavyGraph {
        HeavyGraph::from_triples(&[C, C, C], &[(0, 1, 1), (1, 2, 1)]).unwrap()
    }

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn duplicate_rejected() {
        let mut t = DatasetTable::new("t");
        t.push(rec("a", methane())).unwrap();
        assert_eq!(
            t.push(rec("a", ethane())),
            Err(CoverageError::DuplicateRecord("a".into()))
        );
        let mut conf = rec("a", methane());
        conf.conformer = Some("2".into());
        t.push(conf).unwrap();
        let rep = coverage_report(&t, ExtractMode::Skeleton).unwrap();
        assert_eq!((rep.molecules(), rep.conformations), (1, 2));
    }

    #[test]
    fn methane_report() {
        let t = DatasetTable::from_records("m", [rec("m", methane())]).unwrap();
        let r = coverage_report(&t, ExtractMode::Skeleton).unwrap();
        assert_eq!(r.gcn0, set(&["C04"]));
        assert_eq!(r.gcn1, set(&["C04"]));
        assert!(r.nbg0_skeleton.is_empty() && r.scaffolds.is_empty());
    }

    #[test]
    fn alkane_types() {
        let t = DatasetTable::from_records("a", [rec("e", ethane()), rec("p", propane())]).unwrap();
        let r = coverage_report(&t, ExtractMode::Skeleton).unwrap();
        assert_eq!(r.gcn0, set(&["C13", "C22"]));
        assert_eq!(r.gcn1, set(&["C13(C13)", "C13(C22)", "C22(C13,C13)"]));
    }

    #[test]
    fn overlap_two() {
        let a = set(&["a", "b"]);
        let b = set(&["b", "c"]);
        let r = overlap_sets(&["A", "B"], &[&a, &b]).unwrap();
        assert_eq!((r.region(0b11), r.region(0b01), r.region(0b10)), (1, 1, 1));
        assert_eq!(r.union_size(), 3);
        assert!(overlap_sets(&["A"], &[&a]).is_err());
    }

    #[test]
    fn kl_basics() {
        assert_eq!(kl_smoothed(&[0.3, 0.7], &[0.3, 0.7], 1e-9), 0.0);
        let d = kl_smoothed(&[1.0, 0.0], &[0.5, 0.5], 1e-12);
        assert!((d - core::f64::consts::LN_2).abs() < 1e-9);
        let mut c: BTreeMap<String, u64> = BTreeMap::new();
        c.insert("x".into(), 1);
        let empty = BTreeMap::new();
        assert_eq!(
            kl_from_counts(&["a", "b"], &[c.clone(), empty], 1e-9),
            Err(CoverageError::EmptyDistribution("b".into()))
        );
        assert!(kl_from_counts(&["a"], &[c], 0.0).is_err());
    }

    #[test]
    fn histogram_unit_bins() {
        let t = DatasetTable::from_records("h", [rec("m", methane()), rec("e", ethane())]).unwrap();
        let h = histogram(&t, &Property::Na, None);
        assert_eq!(h.counts, vec![1, 1]);
        assert_eq!(h.edges(), vec![1.0, 2.0, 3.0]);
        let h = Histogram::build(&[0.0, 0.5, 1.0, 2.0, -1.0], 0.0, 0.5, 2);
        assert_eq!(h.counts, vec![1, 2]);
        assert_eq!(h.out_of_range, 2);
        let empty = DatasetTable::new("e");
        let h = histogram(&empty, &Property::Named("x".into()), Some(4));
        assert_eq!(h.counts, vec![0; 4]);
    }

    #[test]
    fn composition() {
        let t = DatasetTable::from_records("c", [rec("m", methane()), rec("e", ethane())]).unwrap();
        let r = composition_uniformity(&t).unwrap();
        assert_eq!(
            r.counts(),
            [("CH4".to_string(), 1), ("C2H6".to_string(), 1)].into_iter().collect()
        );
        assert_eq!(r.under_represented().len(), 2);
        let ethanol = HeavyGraph::from_triples(&[C, C, O], &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let ether = HeavyGraph::from_triples(&[C, O, C], &[(0, 1, 1), (1, 2, 1)]).unwrap();
        let t = DatasetTable::from_records("i", [rec("a", ethanol), rec("b", ether)]).unwrap();
        let r = composition_uniformity(&t).unwrap();
        assert!(r.under_represented().is_empty());
        assert!(composition_uniformity(&DatasetTable::new("e"))
            .unwrap()
            .structures
            .is_empty());
    }
}
