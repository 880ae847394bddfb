//! Fixed values for the nine-split system on {1..8}, read from the shipped
//! split file. Vertex counts and cut vertices were frozen from an
//! exhaustive scan of all 512 side selections.

use std::path::Path;

use buneman_core::blocks::all_blocks;
use buneman_core::cut::{analyze_all, cut_vertices};
use buneman_core::io::load_split_file;
use buneman_core::trees::xtree_of;
use buneman_core::{fixtures, BunemanGraph, Side, SplitSystem, VertexMap};

fn sigma8() -> SplitSystem {
    load_split_file(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/sigma8.splits")).unwrap()
}

fn names(sys: &SplitSystem, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| sys.name(i).to_string()).collect()
}

#[test]
fn file_matches_fixture() {
    let sys = sigma8();
    assert_eq!((sys.n(), sys.len()), (8, 9));
    assert_eq!(sys, fixtures::sigma8());
    assert_eq!(
        sys.names(),
        ["S13", "S12", "S123", "S1235", "S45", "S1234", "S67", "S78", "S5"]
    );
}

#[test]
fn exhaustive_scan_agrees() {
    let sys = sigma8();
    let mut vertices = 0;
    for mask in 0u64..512 {
        let phi = VertexMap::from_fn(9, |i| Side::from_bit(mask >> i & 1 == 1));
        vertices += phi.is_vertex_of(&sys) as usize;
    }
    let g = BunemanGraph::new(sys).unwrap();
    assert_eq!((vertices, g.vertex_count(), g.edge_count()), (16, 16, 22));
}

#[test]
fn cut_vertices_and_marked_vertex() {
    let g = BunemanGraph::new(sigma8()).unwrap();
    let sys = g.system();
    let cuts = cut_vertices(&g).unwrap();
    let as_ints: Vec<u64> = cuts
        .iter()
        .map(|&v| g.vertex(v).sides().low_word())
        .collect();
    assert_eq!(as_ints, [3, 7, 47, 55]);
    assert!(cuts.iter().all(|&v| !g.is_labeled(v)));

    let marked = analyze_all(&g)
        .unwrap()
        .into_iter()
        .find(|a| {
            let mut s = names(sys, &a.sigma_phi);
            s.sort();
            s == ["S1234", "S1235", "S45", "S67", "S78"]
        })
        .unwrap();
    assert!(marked.is_cut && marked.verdicts.iter().all(|&b| b));
    assert_eq!(g.vertex(marked.vertex).sides().low_word(), 47);
    let w = marked.witnesses.unwrap();
    assert_eq!(names(sys, &w.sigma_min.rest), ["S67", "S78"]);
    assert_eq!(names(sys, &w.sigma_min.first), ["S1235", "S45", "S1234"]);
}

#[test]
fn five_blocks_and_trees() {
    let g = BunemanGraph::new(sigma8()).unwrap();
    let d = all_blocks(&g).unwrap();
    let mut sizes: Vec<usize> = d.blocks.iter().map(|b| b.len()).collect();
    sizes.sort();
    assert_eq!(sizes, [2, 2, 4, 4, 8]);
    let (_, t, x) = xtree_of(&g).unwrap();
    assert_eq!((t.node_count(), t.edges().len()), (21, 20));
    assert_eq!(
        x.canonical_form(g.system().ground()),
        "((((()6,()7,()8),()4,()5),()2,()3))1"
    );
}
