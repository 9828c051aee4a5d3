//! Topology set files: a header recording the extraction mode and the
//! generation bound, then one signature per line in sorted order.

use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopologySet {
    pub mode: String,
    pub max_heavy: Option<usize>,
    pub signatures: BTreeSet<String>,
}

pub fn write_topology_set(t: &TopologySet) -> String {
    let mut s = String::from("# molcode topology set\n");
    s += &format!("# mode {}\n", t.mode);
    if let Some(m) = t.max_heavy {
        s += &format!("# max_heavy {m}\n");
    }
    s += &format!("# count {}\n", t.signatures.len());
    for sig in &t.signatures {
        s.push_str(sig);
        s.push('\n');
    }
    s
}

pub fn read_topology_set(text: &str) -> TopologySet {
    let mut t = TopologySet {
        mode: String::new(),
        max_heavy: None,
        signatures: BTreeSet::new(),
    };
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix('#') {
            let mut f = rest.split_whitespace();
            match (f.next(), f.next()) {
                (Some("mode"), Some(m)) => t.mode = m.to_string(),
                (Some("max_heavy"), Some(m)) => t.max_heavy = m.parse().ok(),
                _ => {}
            }
        } else {
            t.signatures.insert(line.to_string());
        }
    }
    t
}
