//! Canonical labeling of small vertex- and edge-coloured graphs.
//!
//! Colour refinement on (element, degree, incident edge colours) followed by
//! an exhaustive individualization-refinement search. The signature is the
//! lexicographically smallest serialization over all search-tree leaves, so
//! isomorphic graphs always share a signature and non-isomorphic graphs never
//! do. Automorphisms discovered at the leaves prune sibling branches of the
//! root cell.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::molgraph::Element;

/// Largest vertex count accepted by [`canonical_signature`].
pub const MAX_VERTICES: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CanonError {
    #[error("graph has {0} vertices, above the limit of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("malformed signature `{0}`")]
    BadSignature(String),
}

/// Vertex-labelled multigraph with edge colours (bond orders).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub labels: Vec<Element>,
    /// `(a, b, colour)`, `a != b`, at most one edge per pair.
    pub edges: Vec<(usize, usize, u8)>,
}

impl LabeledGraph {
    pub fn new(labels: Vec<Element>, edges: Vec<(usize, usize, u8)>) -> Self {
        LabeledGraph { labels, edges }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Rebuilds the graph encoded by a signature produced by
    /// [`canonical_signature`].
    pub fn from_signature(sig: &str) -> Result<LabeledGraph, CanonError> {
        let bad = || CanonError::BadSignature(String::from(sig));
        let (labels, upper) = sig.split_once('/').ok_or_else(bad)?;
        let labels = labels
            .chars()
            .map(|c| {
                let mut buf = [0u8; 4];
                Element::from_symbol(c.encode_utf8(&mut buf)).ok_or_else(bad)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let n = labels.len();
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(bad());
        }
        let mut edges = Vec::new();
        let mut digits = upper.bytes();
        for i in 0..n {
            for j in i + 1..n {
                let d = digits.next().ok_or_else(bad)?;
                if !d.is_ascii_digit() {
                    return Err(bad());
                }
                if d != b'0' {
                    edges.push((i, j, d - b'0'));
                }
            }
        }
        Ok(LabeledGraph { labels, edges })
    }
}

type Colors = Vec<u32>;

struct Search<'a> {
    n: usize,
    labels: &'a [Element],
    matrix: Vec<u8>,
    adj: Vec<Vec<(usize, u8)>>,
    best: Option<(Vec<u8>, Vec<usize>)>,
    /// Union-find over vertices; merged along discovered automorphisms.
    orbit: Vec<usize>,
}

fn rank<K: Ord + Clone>(keys: &[K]) -> (Colors, usize) {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    let colors = keys
        .iter()
        .map(|k| sorted.binary_search(k).expect("present") as u32)
        .collect();
    (colors, sorted.len())
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

impl<'a> Search<'a> {
    fn refine(&self, mut colors: Colors) -> Colors {
        let mut classes = {
            let mut c = colors.clone();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        loop {
            let keys: Vec<(u32, Vec<(u8, u32)>)> = (0..self.n)
                .map(|v| {
                    let mut nb: Vec<(u8, u32)> = self.adj[v].iter().map(|&(w, c)| (c, colors[w])).collect();
                    nb.sort_unstable();
                    (colors[v], nb)
                })
                .collect();
            let (next, count) = rank(&keys);
            colors = next;
            if count == classes {
                return colors;
            }
            classes = count;
        }
    }

    fn serialize(&self, colors: &[u32]) -> (Vec<u8>, Vec<usize>) {
        // Discrete partition: colour == position.
        let mut at = vec![0usize; self.n];
        for (v, &c) in colors.iter().enumerate() {
            at[c as usize] = v;
        }
        let mut out = Vec::with_capacity(self.n + self.n * self.n / 2);
        for &v in &at {
            out.push(self.labels[v].symbol().as_bytes()[0]);
        }
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(b'0' + self.matrix[at[i] * self.n + at[j]]);
            }
        }
        (out, at)
    }

    fn target_cell(colors: &[u32]) -> Option<Vec<usize>> {
        let mut count = vec![0usize; colors.len()];
        for &c in colors {
            count[c as usize] += 1;
        }
        let target = count.iter().position(|&k| k > 1)? as u32;
        Some((0..colors.len()).filter(|&v| colors[v] == target).collect())
    }

    fn individualize(colors: &[u32], v: usize) -> Colors {
        let keys: Vec<(u32, bool)> = colors.iter().enumerate().map(|(u, &c)| (c, u != v)).collect();
        rank(&keys).0
    }

    fn search(&mut self, colors: Colors, depth: usize) {
        let colors = self.refine(colors);
        let Some(cell) = Self::target_cell(&colors) else {
            let (ser, at) = self.serialize(&colors);
            match &self.best {
                Some((best, best_at)) if *best == ser => {
                    // Same serialization: at[i] <-> best_at[i] is an automorphism.
                    for i in 0..self.n {
                        let (a, b) = (find(&mut self.orbit, at[i]), find(&mut self.orbit, best_at[i]));
                        if a != b {
                            self.orbit[a] = b;
                        }
                    }
                }
                Some((best, _)) if *best < ser => {}
                _ => self.best = Some((ser, at)),
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for v in cell {
            if depth == 0 {
                let r = find(&mut self.orbit, v);
                if tried.iter().any(|&t| find(&mut self.orbit, t) == r) {
                    continue;
                }
                tried.push(v);
            }
            let next = Self::individualize(&colors, v);
            self.search(next, depth + 1);
        }
    }
}

/// Canonical text form of a labelled graph: the vertex label string and the
/// row-major upper-triangular edge-colour digits (0 = no edge), separated by
/// `/`.
pub fn canonical_signature(g: &LabeledGraph) -> Result<String, CanonError> {
    let n = g.len();
    if n > MAX_VERTICES {
        return Err(CanonError::TooLarge(n));
    }
    let mut matrix = vec![0u8; n * n];
    let mut adj = vec![Vec::new(); n];
    for &(a, b, c) in &g.edges {
        matrix[a * n + b] = c;
        matrix[b * n + a] = c;
        adj[a].push((b, c));
        adj[b].push((a, c));
    }
    let initial_keys: Vec<(Element, usize, Vec<u8>)> = (0..n)
        .map(|v| {
            let mut inc: Vec<u8> = adj[v].iter().map(|&(_, c)| c).collect();
            inc.sort_unstable();
            (g.labels[v], adj[v].len(), inc)
        })
        .collect();
    let (colors, _) = rank(&initial_keys);
    let mut s = Search {
        n,
        labels: &g.labels,
        matrix,
        adj,
        best: None,
        orbit: (0..n).collect(),
    };
    s.search(colors, 0);
    let ser = s.best.map(|(ser, _)| ser).unwrap_or_default();
    let mut out = String::with_capacity(ser.len() + 1);
    out.push_str(core::str::from_utf8(&ser[..n]).expect("ascii"));
    out.push('/');
    out.push_str(core::str::from_utf8(&ser[n..]).expect("ascii"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Element::*;

    fn cycle(n: usize, orders: &[u8]) -> LabeledGraph {
        LabeledGraph::new(
            vec![C; n],
            (0..n).map(|i| (i, (i + 1) % n, orders[i % orders.len()])).collect(),
        )
    }

    fn relabel(g: &LabeledGraph, perm: &[usize]) -> LabeledGraph {
        let mut labels = vec![C; g.len()];
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = g.labels[old];
        }
        LabeledGraph::new(labels, g.edges.iter().map(|&(a, b, c)| (perm[b], perm[a], c)).collect())
    }

    #[test]
    fn cyclohexane_relabelings() {
        let g = cycle(6, &[1]);
        let a = canonical_signature(&g).unwrap();
        let b = canonical_signature(&relabel(&g, &[3, 5, 0, 2, 4, 1])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6 + 1 + 15);
    }

    #[test]
    fn kekule_forms_coincide() {
        let a = canonical_signature(&cycle(6, &[2, 1])).unwrap();
        let b = canonical_signature(&cycle(6, &[1, 2])).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, canonical_signature(&cycle(6, &[1])).unwrap());
    }

    #[test]
    fn path_vs_star() {
        let path = LabeledGraph::new(vec![C; 4], vec![(0, 1, 1), (1, 2, 1), (2, 3, 1)]);
        let star = LabeledGraph::new(vec![C; 4], vec![(0, 1, 1), (0, 2, 1), (0, 3, 1)]);
        assert_ne!(canonical_signature(&path).unwrap(), canonical_signature(&star).unwrap());
    }

    #[test]
    fn signature_round_trip() {
        let g = LabeledGraph::new(vec![C, N, O], vec![(0, 1, 2), (1, 2, 1), (2, 0, 1)]);
        let s = canonical_signature(&g).unwrap();
        let back = LabeledGraph::from_signature(&s).unwrap();
        assert_eq!(canonical_signature(&back).unwrap(), s);
        assert!(LabeledGraph::from_signature("CC/9x").is_err());
        assert!(LabeledGraph::from_signature("CCC/1").is_err());
    }

    #[test]
    fn too_large() {
        let g = cycle(33, &[1]);
        assert_eq!(canonical_signature(&g), Err(CanonError::TooLarge(33)));
        assert!(canonical_signature(&cycle(32, &[1])).is_ok());
    }

    #[test]
    fn empty_graph() {
        assert_eq!(canonical_signature(&LabeledGraph::new(vec![], vec![])).unwrap(), "/");
    }
}
