#![allow(dead_code, clippy::needless_range_loop)]

use std::path::Path;
use std::process::{Command, Stdio};

use molcode::core::molgraph::Element::{self, *};
use molcode::core::HeavyGraph;
use rand::seq::SliceRandom;
use rand::Rng;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    /// Output lines without the `#` report header.
    pub fn body(&self) -> Vec<&str> {
        self.stdout.lines().filter(|l| !l.starts_with('#')).collect()
    }
}

pub fn molcode(args: &[&str]) -> Run {
    molcode_env(args, &[])
}

pub fn molcode_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_molcode"));
    cmd.args(args).env_remove("MOLCODE_WORKERS").stdin(Stdio::null());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("spawn molcode");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn write(dir: &Path, name: &str, content: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, content).unwrap();
    p.to_str().unwrap().to_string()
}

pub const BENZOIC_ACID: &str = r#"{"id":"benzoic-acid","elements":["C","C","C","C","C","C","C","O","O"],"bonds":[[1,2,2],[2,3,1],[3,4,2],[4,5,1],[5,6,2],[6,1,1],[1,7,1],[7,8,2],[7,9,1]],"h":"auto"}"#;
pub const PHENYLETHYLPYRIDINE: &str = r#"{"id":"phenylethylpyridine","elements":["N","C","C","C","C","C","C","C","C","C","C","C","C","C"],"bonds":[[1,2,2],[2,3,1],[3,4,2],[4,5,1],[5,6,2],[6,1,1],[4,7,1],[7,8,1],[7,9,1],[9,10,2],[10,11,1],[11,12,2],[12,13,1],[13,14,2],[14,9,1]],"h":"auto"}"#;
pub const BENZENE: &str = r#"{"id":"benzene","elements":["C","C","C","C","C","C"],"bonds":[[1,2,2],[2,3,1],[3,4,2],[4,5,1],[5,6,2],[6,1,1]],"h":[1,1,1,1,1,1]}"#;
pub const METHANE: &str = r#"{"id":"methane","elements":["C"],"bonds":[],"h":[4]}"#;
pub const METHANOL: &str = r#"{"id":"methanol","elements":["C","O"],"bonds":[[1,2,1]],"h":"auto"}"#;

pub fn mol(elements: &[Element], bonds: &[(usize, usize, u8)]) -> HeavyGraph {
    HeavyGraph::from_triples(elements, bonds).unwrap()
}

pub fn ring(start: usize, n: usize, orders: &[u8]) -> Vec<(usize, usize, u8)> {
    (0..n)
        .map(|i| (start + i, start + (i + 1) % n, orders[i % orders.len()]))
        .collect()
}

pub fn benzoic_acid() -> HeavyGraph {
    let mut b = ring(0, 6, &[2, 1]);
    b.extend([(0, 6, 1), (6, 7, 2), (6, 8, 1)]);
    mol(&[C, C, C, C, C, C, C, O, O], &b)
}

/// Pyridine 0..5 with N at 0, methine 6, methyl 7, phenyl 8..13.
pub fn phenylethylpyridine() -> HeavyGraph {
    let mut elements = vec![N, C, C, C, C, C, C, C];
    elements.extend([C; 6]);
    let mut b = ring(0, 6, &[2, 1]);
    b.extend(ring(8, 6, &[2, 1]));
    b.extend([(3, 6, 1), (6, 7, 1), (6, 8, 1)]);
    mol(&elements, &b)
}

pub fn random_perm<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random connected simple graph: a random spanning tree plus each remaining
/// pair with probability `p`.
pub fn random_connected_edges<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<(usize, usize)> {
    let mut present = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
        present[u][v] = true;
    }
    for a in 0..n {
        for b in a + 1..n {
            if !present[a][b] && rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges.shuffle(rng);
    edges
}
