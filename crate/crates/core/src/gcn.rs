//! Hierarchical atom-centred valence codes.
//!
//! * level 0: element, number of heavy neighbours, number of hydrogens
//!   (`"C31"`); bond orders are not part of the code.
//! * level 1: the level-0 code followed by the level-0 codes of all heavy
//!   neighbours in parentheses (`"C31(C22,C21,C13)"`).
//! * level 2: the level-0 code followed by the level-1 codes of all heavy
//!   neighbours in square brackets.
//!
//! Neighbour lists are sorted in descending byte order. An atom without heavy
//! neighbours has identical codes at every level.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::molgraph::{Element, HeavyGraph};
use crate::multiset::{multichoose, Multisets};

/// The 30 admissible level-0 environments, column by column (C, N, O, F).
pub const GCN0_TABLE: [&str; 30] = [
    "C40", "C30", "C31", "C20", "C21", "C22", "C10", "C11", "C12", "C13", "C04", "C02", //
    "N40", "N30", "N31", "N20", "N21", "N22", "N10", "N11", "N12", "N13", "N03", "N01", //
    "O20", "O10", "O11", "O02", //
    "F10", "F01",
];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GcnError {
    #[error("environment `{0}` is not an admissible level-0 code")]
    InvalidEnvironment(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("malformed code `{0}`")]
    Parse(String),
}

/// A level-0 environment: element, heavy-neighbour count, hydrogen count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gcn0 {
    pub element: Element,
    pub heavy: u8,
    pub hydrogens: u8,
}

impl Gcn0 {
    /// All entries of [`GCN0_TABLE`], in table order.
    pub fn table() -> impl Iterator<Item = Gcn0> {
        GCN0_TABLE.iter().map(|s| Gcn0::parse(s).expect("table entry"))
    }

    /// Table entries whose element is in `elements`, in table order.
    pub fn universe(elements: &[Element]) -> Result<Vec<Gcn0>, GcnError> {
        let out: Vec<Gcn0> = Gcn0::table().filter(|g| elements.contains(&g.element)).collect();
        if out.is_empty() {
            return Err(GcnError::InvalidArgument("element subset selects no level-0 codes"));
        }
        Ok(out)
    }

    /// Parses a three-character code and checks table membership.
    pub fn parse(s: &str) -> Result<Gcn0, GcnError> {
        let b = s.as_bytes();
        if b.len() != 3 || !b[1].is_ascii_digit() || !b[2].is_ascii_digit() {
            return Err(GcnError::Parse(s.to_string()));
        }
        let element = Element::from_symbol(&s[..1]).ok_or_else(|| GcnError::Parse(s.to_string()))?;
        if !GCN0_TABLE.contains(&s) {
            return Err(GcnError::InvalidEnvironment(s.to_string()));
        }
        Ok(Gcn0 {
            element,
            heavy: b[1] - b'0',
            hydrogens: b[2] - b'0',
        })
    }

    pub fn is_connectable(&self) -> bool {
        self.heavy > 0
    }
}

impl fmt::Display for Gcn0 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.element, self.heavy, self.hydrogens)
    }
}

/// A code at level 0, 1 or 2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GcnCode {
    pub level: u8,
    pub text: String,
}

impl fmt::Display for GcnCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn sort_desc<T: Ord>(v: &mut [T]) {
    v.sort_unstable_by(|a, b| b.cmp(a));
}

fn compose(center: &str, open: char, close: char, neighbors: &[&str]) -> String {
    if neighbors.is_empty() {
        return center.to_string();
    }
    let mut s = String::with_capacity(center.len() + 2 + neighbors.iter().map(|n| n.len() + 1).sum::<usize>());
    s.push_str(center);
    s.push(open);
    for (i, n) in neighbors.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(n);
    }
    s.push(close);
    s
}

fn gcn0_raw(g: &HeavyGraph, atom: usize) -> Result<Gcn0, GcnError> {
    let heavy = g.degree(atom);
    let h = g.h_count(atom);
    let text = alloc::format!("{}{}{}", g.element(atom), heavy, h);
    if heavy > 9 || h > 9 || !GCN0_TABLE.contains(&text.as_str()) {
        return Err(GcnError::InvalidEnvironment(text));
    }
    Ok(Gcn0 {
        element: g.element(atom),
        heavy: heavy as u8,
        hydrogens: h,
    })
}

pub fn gcn0_of_atom(g: &HeavyGraph, atom: usize) -> Result<GcnCode, GcnError> {
    Ok(GcnCode {
        level: 0,
        text: gcn0_raw(g, atom)?.to_string(),
    })
}

pub fn gcn1_of_atom(g: &HeavyGraph, atom: usize) -> Result<GcnCode, GcnError> {
    let center = gcn0_raw(g, atom)?.to_string();
    let mut nbrs = g
        .neighbors(atom)
        .map(|n| gcn0_raw(g, n).map(|c| c.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    sort_desc(&mut nbrs);
    let refs: Vec<&str> = nbrs.iter().map(String::as_str).collect();
    Ok(GcnCode {
        level: 1,
        text: compose(&center, '(', ')', &refs),
    })
}

pub fn gcn2_of_atom(g: &HeavyGraph, atom: usize) -> Result<GcnCode, GcnError> {
    let center = gcn0_raw(g, atom)?.to_string();
    let mut nbrs = g
        .neighbors(atom)
        .map(|n| gcn1_of_atom(g, n).map(|c| c.text))
        .collect::<Result<Vec<_>, _>>()?;
    sort_desc(&mut nbrs);
    let refs: Vec<&str> = nbrs.iter().map(String::as_str).collect();
    Ok(GcnCode {
        level: 2,
        text: compose(&center, '[', ']', &refs),
    })
}

/// All three codes of one atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomCodes {
    pub gcn0: String,
    pub gcn1: String,
    pub gcn2: String,
}

/// Codes of every atom of `g`, computed in one sweep per level.
pub fn encode(g: &HeavyGraph) -> Result<Vec<AtomCodes>, GcnError> {
    let g0: Vec<String> = (0..g.na())
        .map(|a| gcn0_raw(g, a).map(|c| c.to_string()))
        .collect::<Result<_, _>>()?;
    let level_up = |codes: &[String], open, close| -> Vec<String> {
        (0..g.na())
            .map(|a| {
                let mut nbrs: Vec<&str> = g.neighbors(a).map(|n| codes[n].as_str()).collect();
                sort_desc(&mut nbrs);
                compose(&g0[a], open, close, &nbrs)
            })
            .collect()
    };
    let g1 = level_up(&g0, '(', ')');
    let g2 = level_up(&g1, '[', ']');
    Ok(g0
        .into_iter()
        .zip(g1)
        .zip(g2)
        .map(|((gcn0, gcn1), gcn2)| AtomCodes { gcn0, gcn1, gcn2 })
        .collect())
}

/// Admissible level-0 codes for an element subset, in table order.
pub fn enumerate_gcn0(elements: &[Element]) -> Result<Vec<GcnCode>, GcnError> {
    Ok(Gcn0::universe(elements)?
        .into_iter()
        .map(|g| GcnCode {
            level: 0,
            text: g.to_string(),
        })
        .collect())
}

/// Every level-1 code over an element subset.
///
/// For each level-0 centre with `n >= 1` heavy neighbours, all size-`n`
/// multisets of connectable level-0 codes are emitted (joined in descending
/// order), followed by the zero-neighbour codes unchanged.
pub fn enumerate_gcn1(elements: &[Element]) -> Result<Vec<GcnCode>, GcnError> {
    let universe = Gcn0::universe(elements)?;
    Ok(gcn1_from_universe(&universe))
}

pub(crate) fn gcn1_from_universe(universe: &[Gcn0]) -> Vec<GcnCode> {
    let connectable: Vec<String> = universe
        .iter()
        .filter(|g| g.is_connectable())
        .map(|g| g.to_string())
        .collect();
    let mut out = Vec::new();
    for center in universe.iter().filter(|g| g.is_connectable()) {
        let c = center.to_string();
        for combo in Multisets::new(connectable.len(), usize::from(center.heavy)) {
            let mut parts: Vec<&str> = combo.iter().map(|&i| connectable[i].as_str()).collect();
            sort_desc(&mut parts);
            out.push(GcnCode {
                level: 1,
                text: compose(&c, '(', ')', &parts),
            });
        }
    }
    out.extend(universe.iter().filter(|g| !g.is_connectable()).map(|g| GcnCode {
        level: 1,
        text: g.to_string(),
    }));
    out
}

/// A code split into its centre and neighbour tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedCode {
    /// 0 for a bare level-0 code (including zero-neighbour codes at any
    /// level), 1 for parentheses, 2 for square brackets.
    pub level: u8,
    pub center: Gcn0,
    pub neighbors: Vec<String>,
}

impl ParsedCode {
    pub fn format(&self) -> String {
        let c = self.center.to_string();
        let refs: Vec<&str> = self.neighbors.iter().map(String::as_str).collect();
        match self.level {
            2 => compose(&c, '[', ']', &refs),
            1 => compose(&c, '(', ')', &refs),
            _ => c,
        }
    }
}

fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    out.push(&s[start..]);
    Some(out)
}

/// Parses a code of any level. Neighbour tokens are validated recursively
/// and their count must equal the centre's heavy-neighbour digit.
pub fn parse_code(text: &str) -> Result<ParsedCode, GcnError> {
    let bad = || GcnError::Parse(text.to_string());
    if text.len() < 3 || !text.is_char_boundary(3) {
        return Err(bad());
    }
    let center = Gcn0::parse(&text[..3])?;
    let rest = &text[3..];
    if rest.is_empty() {
        return Ok(ParsedCode {
            level: 0,
            center,
            neighbors: Vec::new(),
        });
    }
    let (level, inner) = if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        (1u8, inner)
    } else if let Some(inner) = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        (2u8, inner)
    } else {
        return Err(bad());
    };
    let tokens = split_top_level(inner).ok_or_else(bad)?;
    if tokens.len() != usize::from(center.heavy) {
        return Err(bad());
    }
    for t in &tokens {
        let p = parse_code(t).map_err(|_| bad())?;
        let ok = match level {
            1 => p.level == 0 && t.len() == 3 && p.center.is_connectable(),
            _ => p.level == 1,
        };
        if !ok {
            return Err(bad());
        }
    }
    Ok(ParsedCode {
        level,
        center,
        neighbors: tokens.into_iter().map(str::to_string).collect(),
    })
}

/// Distinct level-0 neighbour tokens of a level-1 code; empty for
/// zero-neighbour codes.
fn gcn1_neighbor_set(code: &str) -> Result<BTreeSet<String>, GcnError> {
    let p = parse_code(code)?;
    match p.level {
        1 => Ok(p.neighbors.into_iter().collect()),
        0 if !p.center.is_connectable() => Ok(BTreeSet::new()),
        _ => Err(GcnError::Parse(code.to_string())),
    }
}

/// Counts the level-2 code space spanned by a level-1 list.
///
/// For every centre of `universe` with `n >= 1` heavy neighbours the
/// contribution is `multichoose(|filtered|, n)`, where `filtered` are the
/// list entries whose neighbour list contains the centre; every
/// zero-neighbour centre of `universe` adds one. Duplicate list entries are
/// counted once.
pub fn count_gcn2<S: AsRef<str>>(universe: &[Gcn0], gcn1_list: &[S]) -> Result<BigUint, GcnError> {
    let unique: BTreeSet<&str> = gcn1_list.iter().map(AsRef::as_ref).collect();
    let mut containing: BTreeMap<String, u64> = BTreeMap::new();
    for code in unique {
        for n in gcn1_neighbor_set(code)? {
            *containing.entry(n).or_insert(0) += 1;
        }
    }
    let mut total = BigUint::from(0u32);
    for center in universe {
        if center.is_connectable() {
            let filtered = containing.get(&center.to_string()).copied().unwrap_or(0);
            total += multichoose(filtered, u64::from(center.heavy));
        } else {
            total += 1u32;
        }
    }
    Ok(total)
}

/// [`count_gcn2`] over the full 30-code universe.
pub fn count_gcn2_full<S: AsRef<str>>(gcn1_list: &[S]) -> Result<BigUint, GcnError> {
    let universe: Vec<Gcn0> = Gcn0::table().collect();
    count_gcn2(&universe, gcn1_list)
}

/// Lazy level-2 enumeration; see [`enumerate_gcn2_stream`].
#[derive(Clone, Debug)]
pub struct Gcn2Stream {
    /// Unique level-1 entries, sorted descending.
    pool: Vec<String>,
    /// Per connectable centre: code text, neighbour count, indices into `pool`.
    centers: Vec<(String, usize, Vec<usize>)>,
    zero: Vec<String>,
    center_pos: usize,
    combos: Option<Multisets>,
    zero_pos: usize,
    remaining: usize,
}

impl Iterator for Gcn2Stream {
    type Item = GcnCode;

    fn next(&mut self) -> Option<GcnCode> {
        if self.remaining == 0 {
            return None;
        }
        loop {
            if self.center_pos >= self.centers.len() {
                let z = self.zero.get(self.zero_pos)?.clone();
                self.zero_pos += 1;
                self.remaining -= 1;
                return Some(GcnCode { level: 2, text: z });
            }
            let (center, n, filtered) = &self.centers[self.center_pos];
            let combos = self.combos.get_or_insert_with(|| Multisets::new(filtered.len(), *n));
            match combos.next() {
                Some(idx) => {
                    let parts: Vec<&str> = idx.iter().map(|&i| self.pool[filtered[i]].as_str()).collect();
                    self.remaining -= 1;
                    return Some(GcnCode {
                        level: 2,
                        text: compose(center, '[', ']', &parts),
                    });
                }
                None => {
                    self.center_pos += 1;
                    self.combos = None;
                }
            }
        }
    }
}

/// Enumerates level-2 codes lazily, at most `limit` of them.
///
/// Centres follow table order; within a centre, multisets of the filtered
/// level-1 entries (sorted descending) come in lexicographic index order, so
/// every emitted neighbour list is already descending. Zero-neighbour centres
/// come last.
pub fn enumerate_gcn2_stream<S: AsRef<str>>(
    universe: &[Gcn0],
    gcn1_list: &[S],
    limit: usize,
) -> Result<Gcn2Stream, GcnError> {
    let mut pool: Vec<String> = gcn1_list
        .iter()
        .map(|s| s.as_ref().to_string())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    sort_desc(&mut pool);
    let neighbor_sets = pool
        .iter()
        .map(|c| gcn1_neighbor_set(c))
        .collect::<Result<Vec<_>, _>>()?;
    let centers = universe
        .iter()
        .filter(|c| c.is_connectable())
        .map(|c| {
            let text = c.to_string();
            let filtered = neighbor_sets
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(&text))
                .map(|(i, _)| i)
                .collect();
            (text, usize::from(c.heavy), filtered)
        })
        .collect();
    let zero = universe
        .iter()
        .filter(|c| !c.is_connectable())
        .map(|c| c.to_string())
        .collect();
    Ok(Gcn2Stream {
        pool,
        centers,
        zero,
        center_pos: 0,
        combos: None,
        zero_pos: 0,
        remaining: limit,
    })
}

/// Level of a molecule on the level-2 axis: the largest number of distinct
/// heavy atoms within two bonds of any atom (the atom included), minus one.
pub fn gcn2_level(g: &HeavyGraph) -> usize {
    (0..g.na())
        .map(|a| g.ball(a, 2).len())
        .max()
        .unwrap_or(1)
        .saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use Element::*;

    fn methylhexene() -> HeavyGraph {
        // C1-C2=C3-C4(-C7)-C5-C6, atom i is C(i+1)
        HeavyGraph::from_triples(
            &[C; 7],
            &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (3, 4, 1), (4, 5, 1), (3, 6, 1)],
        )
        .unwrap()
    }

    fn benzene() -> HeavyGraph {
        HeavyGraph::from_triples(
            &[C; 6],
            &[(0, 1, 2), (1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 5, 2), (5, 0, 1)],
        )
        .unwrap()
    }

    fn methane() -> HeavyGraph {
        HeavyGraph::from_triples(&[C], &[]).unwrap()
    }

    #[test]
    fn table_partition() {
        let count = |e| GCN0_TABLE.iter().filter(|s| s.starts_with(e)).count();
        assert_eq!((count("C"), count("N"), count("O"), count("F")), (12, 12, 4, 2));
        assert_eq!(Gcn0::table().filter(Gcn0::is_connectable).count(), 24);
    }

    #[test]
    fn atom_codes() {
        assert_eq!(gcn0_of_atom(&methane(), 0).unwrap().text, "C04");
        assert_eq!(gcn1_of_atom(&methane(), 0).unwrap().text, "C04");
        assert_eq!(gcn2_of_atom(&methane(), 0).unwrap().text, "C04");
        assert_eq!(gcn0_of_atom(&benzene(), 0).unwrap().text, "C21");
        assert_eq!(gcn1_of_atom(&benzene(), 0).unwrap().text, "C21(C21,C21)");
        assert_eq!(
            gcn2_of_atom(&benzene(), 0).unwrap().text,
            "C21[C21(C21,C21),C21(C21,C21)]"
        );
        let g = methylhexene();
        assert_eq!(gcn0_of_atom(&g, 3).unwrap().text, "C31");
        assert_eq!(gcn1_of_atom(&g, 3).unwrap().text, "C31(C22,C21,C13)");
        assert_eq!(
            gcn2_of_atom(&g, 3).unwrap().text,
            "C31[C22(C31,C13),C21(C31,C21),C13(C31)]"
        );
    }

    #[test]
    fn encode_matches_per_atom() {
        let g = methylhexene();
        for (a, codes) in encode(&g).unwrap().into_iter().enumerate() {
            assert_eq!(codes.gcn0, gcn0_of_atom(&g, a).unwrap().text);
            assert_eq!(codes.gcn1, gcn1_of_atom(&g, a).unwrap().text);
            assert_eq!(codes.gcn2, gcn2_of_atom(&g, a).unwrap().text);
        }
    }

    #[test]
    fn invalid_environment() {
        // Carbon with 5 hydrogens is not in the table.
        let g = HeavyGraph::new(vec![C], vec![], vec![5]).unwrap();
        assert_eq!(gcn0_of_atom(&g, 0), Err(GcnError::InvalidEnvironment("C05".into())));
    }

    #[test]
    fn enumerate_small() {
        let f: Vec<String> = enumerate_gcn0(&[F]).unwrap().into_iter().map(|c| c.text).collect();
        assert_eq!(f, ["F10", "F01"]);
        let o: Vec<String> = enumerate_gcn0(&[O]).unwrap().into_iter().map(|c| c.text).collect();
        assert_eq!(o, ["O20", "O10", "O11", "O02"]);
        assert_eq!(enumerate_gcn0(&[C, N, O, F]).unwrap().len(), 30);
        assert!(matches!(enumerate_gcn0(&[]), Err(GcnError::InvalidArgument(_))));
        let g1: Vec<String> = enumerate_gcn1(&[F]).unwrap().into_iter().map(|c| c.text).collect();
        assert_eq!(g1, ["F10(F10)", "F01"]);
        assert_eq!(enumerate_gcn1(&[O, F]).unwrap().len(), 24);
        assert!(enumerate_gcn1(&[]).is_err());
    }

    #[test]
    fn count_small_universes() {
        let all: Vec<Gcn0> = Gcn0::table().collect();
        let empty: [&str; 0] = [];
        assert_eq!(count_gcn2(&all, &empty).unwrap(), BigUint::from(6u32));
        let of = Gcn0::universe(&[O, F]).unwrap();
        let list: Vec<String> = enumerate_gcn1(&[O, F]).unwrap().into_iter().map(|c| c.text).collect();
        assert_eq!(count_gcn2(&of, &list).unwrap(), BigUint::from(51u32));
        assert!(matches!(count_gcn2(&of, &["O20(O20"]), Err(GcnError::Parse(_))));
    }

    #[test]
    fn stream_f_universe() {
        let u = Gcn0::universe(&[F]).unwrap();
        let list = ["F10(F10)", "F01"];
        let v: Vec<String> = enumerate_gcn2_stream(&u, &list, 10).unwrap().map(|c| c.text).collect();
        assert_eq!(v, ["F10[F10(F10)]", "F01"]);
        assert_eq!(enumerate_gcn2_stream(&u, &list, 0).unwrap().count(), 0);
        assert_eq!(enumerate_gcn2_stream(&u, &list, 1).unwrap().count(), 1);
    }

    #[test]
    fn levels() {
        assert_eq!(gcn2_level(&methane()), 0);
        assert_eq!(gcn2_level(&methylhexene()), 5);
        let neopentane = HeavyGraph::from_triples(&[C; 5], &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]).unwrap();
        assert_eq!(gcn2_level(&neopentane), 4);
        assert_eq!(gcn2_level(&benzene()), 4);
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in [
            "",
            "C3",
            "X31",
            "C31(C22)",
            "C31(C22,C21,C13",
            "C21(C04,C21)",
            "C21[C21,C21]",
            "C21(C21,C21)x",
        ] {
            assert!(parse_code(bad).is_err(), "{bad}");
        }
        let p = parse_code("C31[C22(C31,C13),C21(C31,C21),C13(C31)]").unwrap();
        assert_eq!(p.level, 2);
        assert_eq!(p.neighbors.len(), 3);
        assert_eq!(p.format(), "C31[C22(C31,C13),C21(C31,C21),C13(C31)]");
        assert_eq!(vec!["C13(C31)"], p.neighbors[2..].to_vec());
    }
}
