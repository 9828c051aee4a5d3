//! Bridge-free topology units.
//!
//! Cut vertices and bridges of the heavy-atom graph, extraction of the
//! nontrivial 2-edge-connected components (the bridge-free ring/cage units),
//! a recursive generator of such units from cyclopropane, cut-count levels,
//! ring scaffolds and isovalent heteroatom substitution.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::canon::{canonical_signature, CanonError, LabeledGraph};
use crate::molgraph::{Element, HeavyGraph};

/// Cut vertices and bridges of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CutDecomposition {
    pub cut_vertices: BTreeSet<usize>,
    /// Indices into the graph's bond (edge) list.
    pub bridges: BTreeSet<usize>,
}

/// Cut vertices and bridges of an undirected simple graph on `0..n`, from one
/// iterative depth-first traversal per component using low-link values.
pub fn cut_decomposition_edges(n: usize, edges: &[(usize, usize)]) -> CutDecomposition {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    const UNSEEN: usize = usize::MAX;
    let mut tin = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut out = CutDecomposition::default();
    let mut timer = 0;
    // (vertex, edge used to enter it, next adjacency position)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if tin[root] != UNSEEN {
            continue;
        }
        tin[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        stack.push((root, UNSEEN, 0));
        while let Some(top) = stack.last_mut() {
            let (v, via, pos) = *top;
            if pos < adj[v].len() {
                top.2 += 1;
                let (w, k) = adj[v][pos];
                if k == via {
                    continue;
                }
                if tin[w] == UNSEEN {
                    tin[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, k, 0));
                } else {
                    low[v] = low[v].min(tin[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > tin[parent] {
                        out.bridges.insert(via);
                    }
                    if parent != root && low[v] >= tin[parent] {
                        out.cut_vertices.insert(parent);
                    }
                }
            }
        }
        if root_children > 1 {
            out.cut_vertices.insert(root);
        }
    }
    out
}

/// Cut vertices and bridges of the heavy-atom graph. Bond orders play no
/// role; a double bond is one edge.
pub fn cut_decomposition(g: &HeavyGraph) -> CutDecomposition {
    let edges: Vec<(usize, usize)> = g.bonds().iter().map(|b| (b.a, b.b)).collect();
    cut_decomposition_edges(g.na(), &edges)
}

/// How atoms and bonds are labelled before canonicalization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtractMode {
    /// Element symbols and bond orders.
    ElementOrder,
    /// Every atom relabelled as carbon, bond orders kept.
    #[default]
    Skeleton,
    /// Every atom relabelled as carbon, every bond order set to 1.
    SkeletonNoOrder,
}

impl ExtractMode {
    pub fn name(self) -> &'static str {
        match self {
            ExtractMode::ElementOrder => "element-order",
            ExtractMode::Skeleton => "skeleton",
            ExtractMode::SkeletonNoOrder => "skeleton-no-order",
        }
    }

    pub fn from_name(s: &str) -> Option<ExtractMode> {
        Some(match s {
            "element-order" | "element+order" => ExtractMode::ElementOrder,
            "skeleton" => ExtractMode::Skeleton,
            "skeleton-no-order" => ExtractMode::SkeletonNoOrder,
            _ => return None,
        })
    }

    fn label(self, e: Element) -> Element {
        match self {
            ExtractMode::ElementOrder => e,
            _ => Element::C,
        }
    }

    fn order(self, o: u8) -> u8 {
        match self {
            ExtractMode::SkeletonNoOrder => 1,
            _ => o,
        }
    }
}

/// Canonical signature of a labelled graph together with its vertex count.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NbgTopology {
    pub signature: String,
    pub na: usize,
}

impl NbgTopology {
    pub fn from_graph(g: &LabeledGraph) -> Result<NbgTopology, CanonError> {
        Ok(NbgTopology {
            signature: canonical_signature(g)?,
            na: g.len(),
        })
    }

    /// The graph in canonical vertex order.
    pub fn graph(&self) -> LabeledGraph {
        LabeledGraph::from_signature(&self.signature).expect("signature produced by canonical_signature")
    }

    pub fn parse(signature: &str) -> Result<NbgTopology, CanonError> {
        let g = LabeledGraph::from_signature(signature)?;
        // Re-canonicalize so that hand-written signatures are normalized.
        NbgTopology::from_graph(&g)
    }
}

fn labeled(g: &HeavyGraph, mode: ExtractMode) -> LabeledGraph {
    LabeledGraph::new(
        g.elements().iter().map(|&e| mode.label(e)).collect(),
        g.bonds().iter().map(|b| (b.a, b.b, mode.order(b.order))).collect(),
    )
}

fn induced(g: &LabeledGraph, keep: &[usize], edge_ok: impl Fn(usize) -> bool) -> LabeledGraph {
    let mut index = vec![usize::MAX; g.len()];
    for (new, &old) in keep.iter().enumerate() {
        index[old] = new;
    }
    LabeledGraph::new(
        keep.iter().map(|&v| g.labels[v]).collect(),
        g.edges
            .iter()
            .enumerate()
            .filter(|&(k, &(a, b, _))| index[a] != usize::MAX && index[b] != usize::MAX && edge_ok(k))
            .map(|(_, &(a, b, c))| (index[a], index[b], c))
            .collect(),
    )
}

fn plain_edges(g: &LabeledGraph) -> Vec<(usize, usize)> {
    g.edges.iter().map(|&(a, b, _)| (a, b)).collect()
}

/// True when `g` has no bridges.
pub fn is_bridgeless(g: &LabeledGraph) -> bool {
    cut_decomposition_edges(g.len(), &plain_edges(g)).bridges.is_empty()
}

/// Bridge-free units of a labelled graph: delete all bridges and keep every
/// component with at least three vertices and one cycle.
pub fn bridgeless_components(g: &LabeledGraph) -> Vec<LabeledGraph> {
    let edges = plain_edges(g);
    let cuts = cut_decomposition_edges(g.len(), &edges);
    let n = g.len();
    let mut comp = vec![usize::MAX; n];
    let mut adj = vec![Vec::new(); n];
    for (k, &(a, b)) in edges.iter().enumerate() {
        if !cuts.bridges.contains(&k) {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        comp[start] = start;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = start;
                    members.push(w);
                }
            }
        }
        let inner = members.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
        if members.len() >= 3 && inner >= members.len() {
            members.sort_unstable();
            out.push(induced(g, &members, |k| !cuts.bridges.contains(&k)));
        }
    }
    out
}

/// Bridge-free ring/cage units of a molecule, one entry per unit (so a
/// repeated ring appears once per occurrence), ordered by lowest atom index.
pub fn nbg0_extract(g: &HeavyGraph, mode: ExtractMode) -> Result<Vec<NbgTopology>, CanonError> {
    bridgeless_components(&labeled(g, mode))
        .iter()
        .map(NbgTopology::from_graph)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NbgError {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error(transparent)]
    Canon(#[from] CanonError),
}

/// Range of heavy-atom counts accepted by [`nbg0_generate`].
pub const GENERATE_RANGE: core::ops::RangeInclusive<usize> = 3..=13;

fn order_sums(g: &LabeledGraph) -> Vec<u32> {
    let mut s = vec![0u32; g.len()];
    for &(a, b, c) in &g.edges {
        s[a] += u32::from(c);
        s[b] += u32::from(c);
    }
    s
}

fn carbon_feasible(g: &LabeledGraph) -> bool {
    order_sums(g).iter().all(|&s| s <= 4)
}

/// One application of each of the five growth operations to a carbon
/// skeleton, returning every valence-feasible candidate with at most
/// `max_heavy` atoms. Candidates are not deduplicated.
///
/// 1. spiro-annulation at a carbon that still carries two hydrogens: two new
///    carbons form a triangle with it;
/// 2. a new carbon bonded to both ends of an existing bond;
/// 3. subdivision of a bond `a-b` into `a-w-b` with single bonds;
/// 4. promotion of a single bond to a double bond;
/// 5. promotion of a double bond to a triple bond.
pub fn expand(g: &LabeledGraph, max_heavy: usize) -> Vec<LabeledGraph> {
    let n = g.len();
    let sums = order_sums(g);
    let mut out = Vec::new();
    let mut push = |cand: LabeledGraph| {
        if carbon_feasible(&cand) {
            out.push(cand);
        }
    };
    if n + 2 <= max_heavy {
        for (v, &sum) in sums.iter().enumerate() {
            if sum <= 2 {
                let mut c = g.clone();
                c.labels.extend([Element::C, Element::C]);
                c.edges.extend([(v, n, 1), (v, n + 1, 1), (n, n + 1, 1)]);
                push(c);
            }
        }
    }
    if n < max_heavy {
        for &(a, b, _) in &g.edges {
            let mut c = g.clone();
            c.labels.push(Element::C);
            c.edges.extend([(a, n, 1), (b, n, 1)]);
            push(c);
        }
        for k in 0..g.edges.len() {
            let (a, b, _) = g.edges[k];
            let mut c = g.clone();
            c.labels.push(Element::C);
            c.edges[k] = (a, n, 1);
            c.edges.push((n, b, 1));
            push(c);
        }
    }
    for k in 0..g.edges.len() {
        let (a, b, o) = g.edges[k];
        if o == 1 || o == 2 {
            let mut c = g.clone();
            c.edges[k] = (a, b, o + 1);
            push(c);
        }
    }
    out
}

fn cyclopropane() -> LabeledGraph {
    LabeledGraph::new(vec![Element::C; 3], vec![(0, 1, 1), (1, 2, 1), (2, 0, 1)])
}

/// Breadth-first closure of the cyclopropane seed under [`expand`], with
/// canonical deduplication. Returns the topologies sorted by signature.
pub fn nbg0_generate(max_heavy: usize) -> Result<Vec<NbgTopology>, NbgError> {
    nbg0_generate_with(max_heavy, |frontier| {
        frontier.iter().map(|g| expand(g, max_heavy)).collect()
    })
}

/// [`nbg0_generate`] with a caller-supplied expansion step, so the candidate
/// expansion of a frontier can run on worker threads. `step` must return one
/// candidate list per frontier entry, in frontier order; the merge into the
/// seen-set is sequential and independent of how `step` computed them.
pub fn nbg0_generate_with<F>(max_heavy: usize, mut step: F) -> Result<Vec<NbgTopology>, NbgError>
where
    F: FnMut(&[LabeledGraph]) -> Vec<Vec<LabeledGraph>>,
{
    if !GENERATE_RANGE.contains(&max_heavy) {
        return Err(NbgError::InvalidArgument("max_heavy must lie in 3..=13"));
    }
    let seed = cyclopropane();
    let mut seen: BTreeMap<String, LabeledGraph> = BTreeMap::new();
    let seed_sig = canonical_signature(&seed)?;
    seen.insert(
        seed_sig.clone(),
        NbgTopology {
            signature: seed_sig,
            na: 3,
        }
        .graph(),
    );
    let mut frontier: Vec<LabeledGraph> = seen.values().cloned().collect();
    while !frontier.is_empty() {
        let candidates = step(&frontier);
        let mut fresh: BTreeMap<String, LabeledGraph> = BTreeMap::new();
        for cand in candidates.into_iter().flatten() {
            let sig = canonical_signature(&cand)?;
            if !seen.contains_key(&sig) && !fresh.contains_key(&sig) {
                let canon = LabeledGraph::from_signature(&sig)?;
                fresh.insert(sig, canon);
            }
        }
        frontier = fresh.values().cloned().collect();
        seen.extend(fresh);
    }
    Ok(seen
        .into_iter()
        .filter(|(_, g)| is_bridgeless(g))
        .map(|(signature, g)| NbgTopology { signature, na: g.len() })
        .collect())
}

/// Cut counts and the derived level of a molecule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NbgPlusClass {
    pub vc_count: usize,
    pub ec_count: usize,
    /// `max(vc_count, ec_count)`.
    pub level: usize,
    /// Both counts are at most three.
    pub within_plus: bool,
}

impl NbgPlusClass {
    pub fn from_counts(vc_count: usize, ec_count: usize) -> Self {
        NbgPlusClass {
            vc_count,
            ec_count,
            level: vc_count.max(ec_count),
            within_plus: vc_count <= 3 && ec_count <= 3,
        }
    }
}

pub fn nbg_plus_class(g: &HeavyGraph) -> NbgPlusClass {
    let cuts = cut_decomposition(g);
    NbgPlusClass::from_counts(cuts.cut_vertices.len(), cuts.bridges.len())
}

/// Fixed point of repeatedly deleting vertices of degree at most one.
/// `None` when nothing survives (acyclic input).
pub fn prune_to_scaffold(g: &LabeledGraph) -> Option<LabeledGraph> {
    let n = g.len();
    let mut deg = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for &(a, b, _) in &g.edges {
        deg[a] += 1;
        deg[b] += 1;
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut removed = vec![false; n];
    let mut queue: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = queue.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &w in &adj[v] {
            if !removed[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    queue.push(w);
                }
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !removed[v]).collect();
    if keep.is_empty() {
        None
    } else {
        Some(induced(g, &keep, |_| true))
    }
}

/// Ring scaffold of a molecule: all rings plus the linkers between them.
pub fn scaffold(g: &HeavyGraph, mode: ExtractMode) -> Result<Option<NbgTopology>, CanonError> {
    prune_to_scaffold(&labeled(g, mode))
        .map(|s| NbgTopology::from_graph(&s))
        .transpose()
}

/// Scaffold of an already canonical topology.
pub fn scaffold_of_topology(t: &NbgTopology) -> Result<Option<NbgTopology>, CanonError> {
    prune_to_scaffold(&t.graph())
        .map(|s| NbgTopology::from_graph(&s))
        .transpose()
}

/// Every topology obtained by replacing any subset of carbons by one of
/// `heteroatoms` (N and/or O) such that the atom's bond-order sum stays within
/// 3 for N and 2 for O. The input itself is always included.
pub fn isovalent_substitutions(t: &NbgTopology, heteroatoms: &[Element]) -> Result<Vec<NbgTopology>, CanonError> {
    let g = t.graph();
    let sums = order_sums(&g);
    let choices: Vec<Vec<Element>> = (0..g.len())
        .map(|v| {
            let mut c = vec![g.labels[v]];
            if g.labels[v] == Element::C {
                for &h in heteroatoms {
                    let cap = match h {
                        Element::N => 3,
                        Element::O => 2,
                        _ => continue,
                    };
                    if sums[v] <= cap && !c.contains(&h) {
                        c.push(h);
                    }
                }
            }
            c
        })
        .collect();
    let mut out = BTreeSet::new();
    let mut pick = vec![0usize; g.len()];
    loop {
        let cand = LabeledGraph::new(
            pick.iter().enumerate().map(|(v, &i)| choices[v][i]).collect(),
            g.edges.clone(),
        );
        out.insert(NbgTopology::from_graph(&cand)?);
        // Odometer increment.
        let mut v = 0;
        loop {
            if v == pick.len() {
                return Ok(out.into_iter().collect());
            }
            pick[v] += 1;
            if pick[v] < choices[v].len() {
                break;
            }
            pick[v] = 0;
            v += 1;
        }
    }
}
