#![allow(dead_code, clippy::needless_range_loop)]

use molcode_core::molgraph::Element::{self, *};
use molcode_core::HeavyGraph;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn mol(elements: &[Element], bonds: &[(usize, usize, u8)]) -> HeavyGraph {
    HeavyGraph::from_triples(elements, bonds).unwrap()
}

/// Ring bonds i-(i+1) for atoms `start..start+n` with the given orders.
pub fn ring(start: usize, n: usize, orders: &[u8]) -> Vec<(usize, usize, u8)> {
    (0..n)
        .map(|i| (start + i, start + (i + 1) % n, orders[i % orders.len()]))
        .collect()
}

pub fn methane() -> HeavyGraph {
    mol(&[C], &[])
}

pub fn ethane() -> HeavyGraph {
    mol(&[C, C], &[(0, 1, 1)])
}

pub fn propane() -> HeavyGraph {
    mol(&[C; 3], &[(0, 1, 1), (1, 2, 1)])
}

pub fn hexane() -> HeavyGraph {
    mol(&[C; 6], &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1)])
}

pub fn neopentane() -> HeavyGraph {
    mol(&[C; 5], &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)])
}

pub fn benzene() -> HeavyGraph {
    mol(&[C; 6], &ring(0, 6, &[2, 1]))
}

pub fn cyclohexane() -> HeavyGraph {
    mol(&[C; 6], &ring(0, 6, &[1]))
}

pub fn toluene() -> HeavyGraph {
    let mut b = ring(0, 6, &[2, 1]);
    b.push((0, 6, 1));
    mol(&[C; 7], &b)
}

pub fn biphenyl() -> HeavyGraph {
    let mut b = ring(0, 6, &[2, 1]);
    b.extend(ring(6, 6, &[2, 1]));
    b.push((0, 6, 1));
    mol(&[C; 12], &b)
}

pub fn benzoic_acid() -> HeavyGraph {
    let mut b = ring(0, 6, &[2, 1]);
    b.extend([(0, 6, 1), (6, 7, 2), (6, 8, 1)]);
    mol(&[C, C, C, C, C, C, C, O, O], &b)
}

/// 4-(1-phenylethyl)pyridine: pyridine 0..5 (N at 0, C4 at 3), CH 6, CH3 7,
/// phenyl 8..13.
pub fn phenylethylpyridine() -> HeavyGraph {
    let mut elements = vec![N, C, C, C, C, C, C, C];
    elements.extend([C; 6]);
    let mut b = ring(0, 6, &[2, 1]);
    b.extend(ring(8, 6, &[2, 1]));
    b.extend([(3, 6, 1), (6, 7, 1), (6, 8, 1)]);
    mol(&elements, &b)
}

/// 4-methylhex-2-ene, atom i is C(i+1), methyl is atom 6.
pub fn methylhexene() -> HeavyGraph {
    mol(
        &[C; 7],
        &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 1), (4, 5, 1), (3, 6, 1)],
    )
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random connected simple graph on `n` vertices: random spanning tree plus
/// extra edges with probability `p`.
pub fn random_connected_edges<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut present = vec![vec![false; n]; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
        present[u][v] = true;
        present[v][u] = true;
    }
    for a in 0..n {
        for b in a + 1..n {
            if !present[a][b] && rng.gen_bool(p) {
                edges.push((a, b));
                present[a][b] = true;
                present[b][a] = true;
            }
        }
    }
    edges.shuffle(rng);
    edges
}

/// Random valence-feasible heavy-atom molecule (degree <= 4, C/N/O/F by
/// capacity), built as a tree plus ring closures.
pub fn random_molecule<R: Rng>(n: usize, rng: &mut R) -> HeavyGraph {
    let mut cap = vec![4u8; n];
    let mut bonds: Vec<(usize, usize, u8)> = Vec::new();
    let mut adj = vec![vec![false; n]; n];
    for v in 1..n {
        let open: Vec<usize> = (0..v).filter(|&u| cap[u] > 0).collect();
        let u = open[rng.gen_range(0..open.len())];
        bonds.push((u, v, 1));
        adj[u][v] = true;
        adj[v][u] = true;
        cap[u] -= 1;
        cap[v] -= 1;
    }
    for _ in 0..rng.gen_range(0..=n / 3) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b && !adj[a][b] && cap[a] > 0 && cap[b] > 0 {
            bonds.push((a, b, 1));
            adj[a][b] = true;
            adj[b][a] = true;
            cap[a] -= 1;
            cap[b] -= 1;
        }
    }
    for b in bonds.iter_mut() {
        if cap[b.0] > 0 && cap[b.1] > 0 && rng.gen_bool(0.15) {
            b.2 += 1;
            cap[b.0] -= 1;
            cap[b.1] -= 1;
        }
    }
    let elements: Vec<Element> = (0..n)
        .map(|v| {
            let used = 4 - cap[v];
            let mut options = vec![C];
            if used <= 3 {
                options.push(N);
            }
            if used <= 2 {
                options.push(O);
            }
            if used <= 1 {
                options.push(F);
            }
            if rng.gen_bool(0.7) {
                C
            } else {
                options[rng.gen_range(0..options.len())]
            }
        })
        .collect();
    mol(&elements, &bonds)
}
