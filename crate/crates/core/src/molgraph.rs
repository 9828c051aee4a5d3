//! Molecular graph model: atoms drawn from {H, C, N, O, F}, bonds with
//! integer orders 1..=3, and the hydrogen-suppressed heavy-atom view that
//! every encoding in this crate operates on.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Chemical element. Only the five elements of the supported chemical space
/// are representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    H,
    C,
    N,
    O,
    F,
}

impl Element {
    pub const HEAVY: [Element; 4] = [Element::C, Element::N, Element::O, Element::F];

    pub fn symbol(self) -> &'static str {
        match self {
            Element::H => "H",
            Element::C => "C",
            Element::N => "N",
            Element::O => "O",
            Element::F => "F",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Element> {
        Some(match s {
            "H" => Element::H,
            "C" => Element::C,
            "N" => Element::N,
            "O" => Element::O,
            "F" => Element::F,
            _ => return None,
        })
    }

    /// Neutral default valence used for implicit-hydrogen inference.
    pub fn default_valence(self) -> u8 {
        match self {
            Element::H | Element::F => 1,
            Element::C => 4,
            Element::N => 3,
            Element::O => 2,
        }
    }

    /// Upper bound on bond-order sum plus hydrogens accepted by [`validate`].
    ///
    /// Nitrogen is capped at 4 (connectivity-based) so that four-coordinate
    /// N environments are admitted.
    pub fn valence_cap(self) -> u8 {
        match self {
            Element::H | Element::F => 1,
            Element::C | Element::N => 4,
            Element::O => 2,
        }
    }

    pub fn is_heavy(self) -> bool {
        self != Element::H
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A bond between atoms `a` and `b` (0-based indices) of order 1, 2 or 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    pub order: u8,
}

impl Bond {
    pub fn new(a: usize, b: usize, order: u8) -> Self {
        Bond { a, b, order }
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    fn key(&self) -> (usize, usize) {
        if self.a < self.b {
            (self.a, self.b)
        } else {
            (self.b, self.a)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MolError {
    #[error("unsupported element symbol `{0}`")]
    UnsupportedElement(String),
    #[error("unsupported bond order {0}")]
    UnsupportedBondOrder(u8),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("atom {atom}: invalid hydrogen count {count}")]
    InvalidHydrogenCount { atom: usize, count: i64 },
    #[error("atom {atom}: hydrogen must have exactly one non-hydrogen neighbour")]
    InvalidHydrogenTopology { atom: usize },
    #[error("bond ({a}, {b}) references a missing atom or is a self-loop")]
    InvalidBond { a: usize, b: usize },
    #[error("duplicate bond between atoms {a} and {b}")]
    DuplicateBond { a: usize, b: usize },
    #[error("molecule has {0} disconnected fragments")]
    Disconnected(usize),
    #[error("hydrogen count list has {got} entries for {expected} atoms")]
    HydrogenLength { expected: usize, got: usize },
}

/// Where the hydrogens of a [`MolGraph`] live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hydrogens {
    /// Hydrogens are ordinary atoms of the graph.
    Explicit,
    /// Per-atom hydrogen counts, parallel to the element list.
    Implicit(Vec<u8>),
}

/// A whole molecule as read from an input record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MolGraph {
    id: String,
    elements: Vec<Element>,
    bonds: Vec<Bond>,
    hydrogens: Hydrogens,
}

impl MolGraph {
    /// Builds a molecule, checking bond indices, duplicate bonds, bond orders
    /// and connectivity. With implicit hydrogens the element list must not
    /// contain H.
    pub fn new(
        id: impl Into<String>,
        elements: Vec<Element>,
        bonds: Vec<Bond>,
        hydrogens: Hydrogens,
    ) -> Result<Self, MolError> {
        check_bonds(elements.len(), &bonds)?;
        if let Hydrogens::Implicit(h) = &hydrogens {
            if h.len() != elements.len() {
                return Err(MolError::HydrogenLength {
                    expected: elements.len(),
                    got: h.len(),
                });
            }
            if let Some(i) = elements.iter().position(|e| *e == Element::H) {
                return Err(MolError::InvalidHydrogenTopology { atom: i });
            }
        }
        let parts = count_components(elements.len(), &bonds);
        if parts > 1 {
            return Err(MolError::Disconnected(parts));
        }
        Ok(MolGraph {
            id: id.into(),
            elements,
            bonds,
            hydrogens,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn hydrogens(&self) -> &Hydrogens {
        &self.hydrogens
    }

    pub fn explicit_h(&self) -> bool {
        matches!(self.hydrogens, Hydrogens::Explicit)
    }

    /// Hydrogen-suppressed view of this molecule.
    pub fn heavy_graph(&self) -> Result<HeavyGraph, MolError> {
        heavy_graph(self)
    }
}

fn check_bonds(n: usize, bonds: &[Bond]) -> Result<(), MolError> {
    let mut seen = alloc::collections::BTreeSet::new();
    for b in bonds {
        if b.a >= n || b.b >= n || b.a == b.b {
            return Err(MolError::InvalidBond { a: b.a, b: b.b });
        }
        if !(1..=3).contains(&b.order) {
            return Err(MolError::UnsupportedBondOrder(b.order));
        }
        if !seen.insert(b.key()) {
            return Err(MolError::DuplicateBond { a: b.a, b: b.b });
        }
    }
    Ok(())
}

fn count_components(n: usize, bonds: &[Bond]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parts = n;
    for b in bonds {
        let (ra, rb) = (find(&mut parent, b.a), find(&mut parent, b.b));
        if ra != rb {
            parent[ra] = rb;
            parts -= 1;
        }
    }
    parts
}

/// Clamp event recorded by [`infer_hydrogens`] when an atom's bond-order sum
/// exceeds its default valence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HydrogenWarning {
    pub atom: usize,
    /// Bond-order sum minus default valence (always positive).
    pub excess: u8,
}

/// Infers per-atom hydrogen counts as default valence minus the sum of
/// incident bond orders, clamped at zero.
pub fn infer_hydrogens(elements: &[Element], bonds: &[Bond]) -> (Vec<u8>, Vec<HydrogenWarning>) {
    let mut used = vec![0u32; elements.len()];
    for b in bonds {
        if b.a < used.len() {
            used[b.a] += u32::from(b.order);
        }
        if b.b < used.len() {
            used[b.b] += u32::from(b.order);
        }
    }
    let mut warnings = Vec::new();
    let h = elements
        .iter()
        .zip(&used)
        .enumerate()
        .map(|(i, (e, &u))| {
            let valence = u32::from(e.default_valence());
            if u > valence {
                warnings.push(HydrogenWarning {
                    atom: i,
                    excess: (u - valence).min(255) as u8,
                });
                0
            } else {
                (valence - u) as u8
            }
        })
        .collect();
    (h, warnings)
}

/// A hydrogen-suppressed molecular graph. Every vertex is a heavy atom and
/// carries its hydrogen count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavyGraph {
    elements: Vec<Element>,
    bonds: Vec<Bond>,
    h_count: Vec<u8>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl HeavyGraph {
    /// Builds a heavy-atom graph. Connectivity is not required here;
    /// [`validate`] reports it.
    pub fn new(elements: Vec<Element>, bonds: Vec<Bond>, h_count: Vec<u8>) -> Result<Self, MolError> {
        if h_count.len() != elements.len() {
            return Err(MolError::HydrogenLength {
                expected: elements.len(),
                got: h_count.len(),
            });
        }
        if let Some(i) = elements.iter().position(|e| !e.is_heavy()) {
            return Err(MolError::InvalidHydrogenTopology { atom: i });
        }
        check_bonds(elements.len(), &bonds)?;
        Ok(Self::new_unchecked(elements, bonds, h_count))
    }

    pub(crate) fn new_unchecked(elements: Vec<Element>, bonds: Vec<Bond>, h_count: Vec<u8>) -> Self {
        let mut adj = vec![Vec::new(); elements.len()];
        for (k, b) in bonds.iter().enumerate() {
            adj[b.a].push((b.b, k));
            adj[b.b].push((b.a, k));
        }
        HeavyGraph {
            elements,
            bonds,
            h_count,
            adj,
        }
    }

    /// Builds a heavy-atom graph with hydrogens inferred from default
    /// valences (see [`infer_hydrogens`]).
    pub fn with_inferred_h(elements: Vec<Element>, bonds: Vec<Bond>) -> Result<(Self, Vec<HydrogenWarning>), MolError> {
        let (h, warnings) = infer_hydrogens(&elements, &bonds);
        Ok((Self::new(elements, bonds, h)?, warnings))
    }

    /// Convenience constructor from 0-based `(a, b, order)` triples with
    /// inferred hydrogens. Clamp warnings are dropped.
    pub fn from_triples(elements: &[Element], bonds: &[(usize, usize, u8)]) -> Result<Self, MolError> {
        let bonds = bonds.iter().map(|&(a, b, o)| Bond::new(a, b, o)).collect();
        Self::with_inferred_h(elements.to_vec(), bonds).map(|(g, _)| g)
    }

    /// Number of heavy atoms (Na).
    pub fn na(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, atom: usize) -> Element {
        self.elements[atom]
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn h_counts(&self) -> &[u8] {
        &self.h_count
    }

    pub fn h_count(&self, atom: usize) -> u8 {
        self.h_count[atom]
    }

    /// `(neighbour, bond index)` pairs of `atom`.
    pub fn incident(&self, atom: usize) -> &[(usize, usize)] {
        &self.adj[atom]
    }

    pub fn neighbors(&self, atom: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[atom].iter().map(|&(n, _)| n)
    }

    /// Number of distinct heavy neighbours.
    pub fn degree(&self, atom: usize) -> usize {
        self.adj[atom].len()
    }

    /// Sum of the orders of the bonds incident to `atom`.
    pub fn bond_order_sum(&self, atom: usize) -> u32 {
        self.adj[atom]
            .iter()
            .map(|&(_, k)| u32::from(self.bonds[k].order))
            .sum()
    }

    pub fn total_h(&self) -> u32 {
        self.h_count.iter().map(|&h| u32::from(h)).sum()
    }

    /// Element counts, hydrogens included.
    pub fn composition(&self) -> BTreeMap<Element, u32> {
        let mut m = BTreeMap::new();
        for &e in &self.elements {
            *m.entry(e).or_insert(0) += 1;
        }
        let h = self.total_h();
        if h > 0 {
            m.insert(Element::H, h);
        }
        m
    }

    /// Molecular formula in Hill order (C, H, then alphabetical).
    pub fn formula(&self) -> String {
        formula(&self.composition())
    }

    /// Number of connected components (0 for the empty graph).
    pub fn component_count(&self) -> usize {
        count_components(self.na(), &self.bonds)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Vertices within graph distance `radius` of `atom`, including `atom`.
    pub fn ball(&self, atom: usize, radius: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.na()];
        let mut queue = VecDeque::new();
        let mut out = Vec::new();
        dist[atom] = 0;
        queue.push_back(atom);
        while let Some(v) = queue.pop_front() {
            out.push(v);
            if dist[v] == radius {
                continue;
            }
            for w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Relabels atoms so that old atom `i` becomes new atom `perm[i]`.
    ///
    /// Panics if `perm` is not a permutation of `0..na`.
    pub fn permuted(&self, perm: &[usize]) -> HeavyGraph {
        assert_eq!(perm.len(), self.na(), "permutation length");
        let n = self.na();
        let mut elements = vec![Element::C; n];
        let mut h = vec![0u8; n];
        let mut hit = vec![false; n];
        for (old, &new) in perm.iter().enumerate() {
            assert!(!hit[new], "not a permutation");
            hit[new] = true;
            elements[new] = self.elements[old];
            h[new] = self.h_count[old];
        }
        let bonds = self
            .bonds
            .iter()
            .map(|b| Bond::new(perm[b.a], perm[b.b], b.order))
            .collect();
        HeavyGraph::new_unchecked(elements, bonds, h)
    }

    /// Induced subgraph on `keep` (in the given order) restricted to the
    /// bonds accepted by `bond_filter`. Hydrogen counts are copied.
    pub fn subgraph(&self, keep: &[usize], mut bond_filter: impl FnMut(usize) -> bool) -> HeavyGraph {
        let mut index = vec![usize::MAX; self.na()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let bonds = self
            .bonds
            .iter()
            .enumerate()
            .filter(|&(k, b)| index[b.a] != usize::MAX && index[b.b] != usize::MAX && bond_filter(k))
            .map(|(_, b)| Bond::new(index[b.a], index[b.b], b.order))
            .collect();
        HeavyGraph::new_unchecked(
            keep.iter().map(|&v| self.elements[v]).collect(),
            bonds,
            keep.iter().map(|&v| self.h_count[v]).collect(),
        )
    }
}

/// Formats an element-count map in Hill order.
pub fn formula(composition: &BTreeMap<Element, u32>) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    let order = [Element::C, Element::H, Element::F, Element::N, Element::O];
    for e in order {
        match composition.get(&e).copied().unwrap_or(0) {
            0 => {}
            1 => out.push_str(e.symbol()),
            n => {
                let _ = write!(out, "{}{}", e.symbol(), n);
            }
        }
    }
    out
}

/// Deletes hydrogen vertices, folding them into per-atom hydrogen counts.
pub fn heavy_graph(mol: &MolGraph) -> Result<HeavyGraph, MolError> {
    match &mol.hydrogens {
        Hydrogens::Implicit(h) => HeavyGraph::new(mol.elements.clone(), mol.bonds.clone(), h.clone()),
        Hydrogens::Explicit => {
            let n = mol.elements.len();
            let mut h_deg = vec![0usize; n];
            for b in &mol.bonds {
                h_deg[b.a] += 1;
                h_deg[b.b] += 1;
            }
            let mut index = vec![usize::MAX; n];
            let mut elements = Vec::new();
            for (i, &e) in mol.elements.iter().enumerate() {
                if e.is_heavy() {
                    index[i] = elements.len();
                    elements.push(e);
                } else if h_deg[i] != 1 && n > 1 {
                    return Err(MolError::InvalidHydrogenTopology { atom: i });
                }
            }
            let mut h = vec![0u8; elements.len()];
            let mut bonds = Vec::new();
            for b in &mol.bonds {
                let (ha, hb) = (mol.elements[b.a] == Element::H, mol.elements[b.b] == Element::H);
                match (ha, hb) {
                    (true, true) => return Err(MolError::InvalidHydrogenTopology { atom: b.a }),
                    (true, false) => h[index[b.b]] = h[index[b.b]].saturating_add(1),
                    (false, true) => h[index[b.a]] = h[index[b.a]].saturating_add(1),
                    (false, false) => bonds.push(Bond::new(index[b.a], index[b.b], b.order)),
                }
            }
            if elements.is_empty() {
                // H2 and bare H have no heavy atom to carry the hydrogens.
                return Err(MolError::InvalidHydrogenTopology { atom: 0 });
            }
            Ok(HeavyGraph::new_unchecked(elements, bonds, h))
        }
    }
}

/// A problem found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    OverValence {
        atom: usize,
        element: Element,
        used: u32,
        cap: u8,
    },
    Disconnected {
        components: usize,
    },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::OverValence {
                atom,
                element,
                used,
                cap,
            } => write!(f, "atom {atom} ({element}): valence {used} exceeds {cap}"),
            Diagnostic::Disconnected { components } => write!(f, "graph has {components} components"),
        }
    }
}

/// Valence and connectivity check. An empty result means the graph is valid.
pub fn validate(g: &HeavyGraph) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for atom in 0..g.na() {
        let used = g.bond_order_sum(atom) + u32::from(g.h_count(atom));
        let cap = g.element(atom).valence_cap();
        if used > u32::from(cap) {
            out.push(Diagnostic::OverValence {
                atom,
                element: g.element(atom),
                used,
                cap,
            });
        }
    }
    let components = g.component_count();
    if components > 1 {
        out.push(Diagnostic::Disconnected { components });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Element::*;

    fn explicit_methane() -> MolGraph {
        MolGraph::new(
            "methane",
            vec![C, H, H, H, H],
            (1..5).map(|i| Bond::new(0, i, 1)).collect(),
            Hydrogens::Explicit,
        )
        .unwrap()
    }

    #[test]
    fn methane_heavy_graph() {
        let g = explicit_methane().heavy_graph().unwrap();
        assert_eq!(g.elements(), &[C]);
        assert_eq!(g.h_counts(), &[4]);
        assert!(g.bonds().is_empty());
    }

    #[test]
    fn benzene_heavy_graph() {
        let mut elements = vec![C; 6];
        elements.extend([H; 6]);
        let mut bonds: Vec<Bond> = (0..6)
            .map(|i| Bond::new(i, (i + 1) % 6, if i % 2 == 0 { 2 } else { 1 }))
            .collect();
        bonds.extend((0..6).map(|i| Bond::new(i, 6 + i, 1)));
        let mol = MolGraph::new("benzene", elements, bonds, Hydrogens::Explicit).unwrap();
        let g = mol.heavy_graph().unwrap();
        assert_eq!(g.na(), 6);
        assert_eq!(g.h_counts(), &[1; 6]);
        assert_eq!(g.bonds().len(), 6);
        let orders: Vec<u8> = g.bonds().iter().map(|b| b.order).collect();
        assert_eq!(orders, [2, 1, 2, 1, 2, 1]);
    }

    #[test]
    fn water_heavy_graph() {
        let mol = MolGraph::new(
            "water",
            vec![O, H, H],
            vec![Bond::new(0, 1, 1), Bond::new(0, 2, 1)],
            Hydrogens::Explicit,
        )
        .unwrap();
        let g = mol.heavy_graph().unwrap();
        assert_eq!(g.elements(), &[O]);
        assert_eq!(g.h_counts(), &[2]);
    }

    #[test]
    fn h_bonded_to_h_rejected() {
        let mol = MolGraph::new(
            "x",
            vec![C, H, H],
            vec![Bond::new(0, 1, 1), Bond::new(1, 2, 1)],
            Hydrogens::Explicit,
        )
        .unwrap();
        assert!(matches!(
            mol.heavy_graph(),
            Err(MolError::InvalidHydrogenTopology { .. })
        ));
    }

    #[test]
    fn hydrogen_with_two_neighbours_rejected() {
        let mol = MolGraph::new(
            "x",
            vec![C, H, C],
            vec![Bond::new(0, 1, 1), Bond::new(1, 2, 1)],
            Hydrogens::Explicit,
        )
        .unwrap();
        assert!(matches!(
            mol.heavy_graph(),
            Err(MolError::InvalidHydrogenTopology { atom: 1 })
        ));
    }

    #[test]
    fn molgraph_invariants() {
        assert!(matches!(
            MolGraph::new("x", vec![C, C], vec![Bond::new(0, 0, 1)], Hydrogens::Explicit),
            Err(MolError::InvalidBond { .. })
        ));
        assert!(matches!(
            MolGraph::new("x", vec![C, C], vec![Bond::new(0, 2, 1)], Hydrogens::Explicit),
            Err(MolError::InvalidBond { .. })
        ));
        assert!(matches!(
            MolGraph::new(
                "x",
                vec![C, C],
                vec![Bond::new(0, 1, 1), Bond::new(1, 0, 2)],
                Hydrogens::Explicit
            ),
            Err(MolError::DuplicateBond { .. })
        ));
        assert!(matches!(
            MolGraph::new("x", vec![C, C], vec![], Hydrogens::Implicit(vec![4, 4])),
            Err(MolError::Disconnected(2))
        ));
        assert!(matches!(
            MolGraph::new("x", vec![C, C], vec![Bond::new(0, 1, 4)], Hydrogens::Explicit),
            Err(MolError::UnsupportedBondOrder(4))
        ));
    }

    #[test]
    fn inference_examples() {
        let (h, w) = infer_hydrogens(&[C, C], &[Bond::new(0, 1, 1)]);
        assert_eq!((h, w.len()), (vec![3, 3], 0));
        let (h, w) = infer_hydrogens(&[C, O], &[Bond::new(0, 1, 2)]);
        assert_eq!((h, w.len()), (vec![2, 0], 0));
        let bonds: Vec<Bond> = (1..5).map(|i| Bond::new(0, i, 1)).collect();
        let (h, w) = infer_hydrogens(&[N, C, C, C, C], &bonds);
        assert_eq!(h, vec![0, 3, 3, 3, 3]);
        assert_eq!(w, vec![HydrogenWarning { atom: 0, excess: 1 }]);
    }

    #[test]
    fn validate_examples() {
        let cyclopropane = HeavyGraph::from_triples(&[C, C, C], &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert!(validate(&cyclopropane).is_empty());

        let g = HeavyGraph::new(
            vec![C, C, C],
            vec![Bond::new(0, 1, 3), Bond::new(1, 2, 3)],
            vec![1, 0, 1],
        )
        .unwrap();
        let d = validate(&g);
        assert_eq!(d.len(), 1);
        assert!(matches!(d[0], Diagnostic::OverValence { atom: 1, used: 6, .. }));

        let two_methanes = HeavyGraph::new(vec![C, C], vec![], vec![4, 4]).unwrap();
        assert_eq!(
            validate(&two_methanes),
            vec![Diagnostic::Disconnected { components: 2 }]
        );
    }

    #[test]
    fn explicit_and_implicit_agree() {
        let implicit = MolGraph::new("m", vec![C], vec![], Hydrogens::Implicit(vec![4])).unwrap();
        assert_eq!(
            implicit.heavy_graph().unwrap(),
            explicit_methane().heavy_graph().unwrap()
        );
    }

    #[test]
    fn formula_hill_order() {
        let g = HeavyGraph::from_triples(&[C, C, O], &[(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(g.formula(), "C2H6O");
        let m = HeavyGraph::from_triples(&[C], &[]).unwrap();
        assert_eq!(m.formula(), "CH4");
    }

    #[test]
    fn ball_radius_two() {
        // 4-methylhex-2-ene: C1-C2=C3-C4(-C7)-C5-C6
        let g = HeavyGraph::from_triples(
            &[C; 7],
            &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 1), (4, 5, 1), (3, 6, 1)],
        )
        .unwrap();
        let mut ball = g.ball(3, 2);
        ball.sort();
        assert_eq!(ball, vec![1, 2, 3, 4, 5, 6]);
    }
}
