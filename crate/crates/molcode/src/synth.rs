//! Seeded random molecules for benchmarks and round-trip tests.
//!
//! Atoms are attached one at a time to a random atom with free valence,
//! then a few ring closures (ring sizes 3 to 8) and bond-order upgrades are
//! added. Hydrogens fill the remaining default valence, so every molecule
//! is connected and valence-feasible.

use std::collections::VecDeque;

use molcode_core::molgraph::{Bond, Element};
use molcode_core::HeavyGraph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pick_element<R: Rng>(rng: &mut R) -> Element {
    match rng.gen_range(0..100) {
        0..=69 => Element::C,
        70..=81 => Element::N,
        82..=93 => Element::O,
        _ => Element::F,
    }
}

fn distances(n: usize, adj: &[Vec<usize>], from: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; n];
    d[from] = 0;
    let mut q = VecDeque::from([from]);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if d[w] == usize::MAX {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// One random molecule with between 1 and `max_heavy` heavy atoms.
pub fn random_molecule<R: Rng>(max_heavy: usize, rng: &mut R) -> HeavyGraph {
    let target = rng.gen_range(1..=max_heavy.max(1));
    let mut elements = vec![if target == 1 { pick_element(rng) } else { Element::C }];
    let mut free = vec![u32::from(elements[0].default_valence())];
    let mut bonds: Vec<Bond> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
    while elements.len() < target {
        let open: Vec<usize> = (0..elements.len()).filter(|&i| free[i] > 0).collect();
        if open.is_empty() {
            break;
        }
        let parent = open[rng.gen_range(0..open.len())];
        // Terminal fluorine only when other atoms keep the tree growable.
        let mut e = pick_element(rng);
        if e == Element::F && open.len() == 1 && free[parent] == 1 {
            e = Element::C;
        }
        let v = elements.len();
        elements.push(e);
        free.push(u32::from(e.default_valence()) - 1);
        free[parent] -= 1;
        bonds.push(Bond::new(parent, v, 1));
        adj.push(vec![parent]);
        adj[parent].push(v);
    }
    let n = elements.len();
    for _ in 0..rng.gen_range(0..=n / 4 + 1) {
        let a = rng.gen_range(0..n);
        if free[a] == 0 {
            continue;
        }
        let d = distances(n, &adj, a);
        let partners: Vec<usize> = (0..n).filter(|&b| free[b] > 0 && (2..=7).contains(&d[b])).collect();
        if partners.is_empty() {
            continue;
        }
        let b = partners[rng.gen_range(0..partners.len())];
        free[a] -= 1;
        free[b] -= 1;
        bonds.push(Bond::new(a, b, 1));
        adj[a].push(b);
        adj[b].push(a);
    }
    for _ in 0..rng.gen_range(0..=n / 3 + 1) {
        if bonds.is_empty() {
            break;
        }
        let k = rng.gen_range(0..bonds.len());
        let b = bonds[k];
        if b.order < 3 && free[b.a] > 0 && free[b.b] > 0 {
            free[b.a] -= 1;
            free[b.b] -= 1;
            bonds[k].order += 1;
        }
    }
    let h = free.iter().map(|&f| f as u8).collect();
    HeavyGraph::new(elements, bonds, h).expect("generated graph is well formed")
}

/// `count` molecules from a seeded stream. Molecule `i` depends only on
/// `seed` and `i`.
pub fn molecules(count: usize, max_heavy: usize, seed: u64) -> impl Iterator<Item = HeavyGraph> {
    (0..count).map(move |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        random_molecule(max_heavy, &mut rng)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use molcode_core::molgraph::validate;

    #[test]
    fn valid_and_bounded() {
        for g in molecules(2000, 32, 7) {
            assert!(g.na() >= 1 && g.na() <= 32);
            assert!(validate(&g).is_empty());
        }
    }

    #[test]
    fn seeded() {
        let a: Vec<_> = molecules(50, 20, 1).collect();
        let b: Vec<_> = molecules(50, 20, 1).collect();
        assert_eq!(a, b);
        assert_ne!(a, molecules(50, 20, 2).collect::<Vec<_>>());
    }
}
