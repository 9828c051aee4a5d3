use molcode::core::molgraph::Element;
use molcode::core::HeavyGraph;
use molcode::molfile::parse_molfile;
use molcode::record::{parse_record_line, record_line, to_line};
use molcode::synth;
use proptest::prelude::*;

fn same(a: &HeavyGraph, b: &HeavyGraph) -> bool {
    a.elements() == b.elements() && a.bonds() == b.bonds() && a.h_counts() == b.h_counts()
}

/// V2000 block for `g`, with hydrogens as explicit atoms when `explicit_h`.
fn molfile(g: &HeavyGraph, explicit_h: bool) -> String {
    let mut atoms: Vec<Element> = g.elements().to_vec();
    let mut bonds: Vec<(usize, usize, u8)> = g.bonds().iter().map(|b| (b.a, b.b, b.order)).collect();
    if explicit_h {
        for v in 0..g.na() {
            for _ in 0..g.h_count(v) {
                atoms.push(Element::H);
                bonds.push((v, atoms.len() - 1, 1));
            }
        }
    }
    let mut s = format!(
        "mol\n  test\n\n{:>3}{:>3}  0  0  0  0  0  0  0  0999 V2000\n",
        atoms.len(),
        bonds.len()
    );
    for e in &atoms {
        s += &format!(
            "    0.0000    0.0000    0.0000 {:<3} 0  0  0  0  0  0  0  0  0  0  0  0\n",
            e.symbol()
        );
    }
    for (a, b, o) in &bonds {
        s += &format!("{:>3}{:>3}{:>3}  0  0  0  0\n", a + 1, b + 1, o);
    }
    s + "M  END\n"
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn record_lines_round_trip(seed in any::<u64>(), max_heavy in 1usize..=32) {
        let g = synth::molecules(1, max_heavy, seed).next().unwrap();
        let text = to_line(&record_line("x", &g));
        let back = parse_record_line(&text).unwrap().mol.heavy_graph().unwrap();
        prop_assert!(same(&g, &back), "{text}");
        prop_assert_eq!(to_line(&record_line("x", &back)), text);
    }

    #[test]
    fn molfiles_round_trip(seed in any::<u64>(), max_heavy in 1usize..=32) {
        let g = synth::molecules(1, max_heavy, seed).next().unwrap();
        for explicit in [false, true] {
            let back = parse_molfile(&molfile(&g, explicit)).unwrap().heavy_graph().unwrap();
            prop_assert!(same(&g, &back), "explicit={explicit}");
        }
    }
}
