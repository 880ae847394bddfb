//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use buneman_core::blocks::{all_blocks, blocks_intersect, gate, inter_block_gate, BlockMeeting};
use buneman_core::buneman::enumerate_vertices;
use buneman_core::cut::{analyze_all, cut_vertices};
use buneman_core::graph::{bfs_distances, bfs_geodesic_counts, biconnected_components};
use buneman_core::io::parse_split_file;
use buneman_core::trees::xtree_of;
use buneman_core::{
    fixtures, random, BunemanGraph, Execution, Limits, Options, SplitSystem, Strategy, VertexMap,
};

const SIGMA8: &str = include_str!("data/sigma8.splits");

const GOLDEN_VERTICES: usize = 16;
const GOLDEN_EDGES: usize = 22;
const GOLDEN_CUTS: usize = 4;

const FAST: Duration = Duration::from_secs(1);
const SWEEP_LIMIT: Duration = Duration::from_secs(60);

struct Outcome {
    failures: Vec<String>,
    note: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            note: String::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }
}

fn report(id: u32, title: &str, o: &Outcome) -> bool {
    let ok = o.failures.is_empty();
    println!(
        "{} criterion {id}: {title}: {}",
        if ok { "PASS" } else { "FAIL" },
        o.note
    );
    for f in o.failures.iter().take(5) {
        println!("    {f}");
    }
    if o.failures.len() > 5 {
        println!("    ... {} more", o.failures.len() - 5);
    }
    ok
}

fn plain() -> Options {
    Options {
        verify: false,
        ..Options::default()
    }
}

fn name_set(sys: &SplitSystem, idx: &[usize]) -> BTreeSet<String> {
    idx.iter().map(|&i| sys.name(i).to_string()).collect()
}

fn set(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let sys = parse_split_file(SIGMA8).expect("fixture parses");
    let ig = sys.incompatibility_graph();
    let comps: BTreeSet<BTreeSet<String>> =
        ig.components().iter().map(|c| name_set(&sys, c)).collect();
    let expected: BTreeSet<BTreeSet<String>> = [
        set(&["S13", "S12"]),
        set(&["S123"]),
        set(&["S1234", "S1235", "S45"]),
        set(&["S67", "S78"]),
        set(&["S5"]),
    ]
    .into_iter()
    .collect();
    o.expect(comps == expected, || format!("components {comps:?}"));

    let g = BunemanGraph::new(sys.clone()).unwrap();
    o.expect(g.vertex_count() == GOLDEN_VERTICES, || {
        format!("|V| = {}", g.vertex_count())
    });
    o.expect(g.edge_count() == GOLDEN_EDGES, || {
        format!("|E| = {}", g.edge_count())
    });
    let blocks = all_blocks(&g).unwrap();
    o.expect(blocks.blocks.len() == 5, || {
        format!("{} blocks", blocks.blocks.len())
    });
    let cuts = cut_vertices(&g).unwrap();
    o.expect(cuts.len() == GOLDEN_CUTS, || {
        format!("{} cut vertices", cuts.len())
    });

    let want_min = set(&["S1235", "S1234", "S45", "S78", "S67"]);
    let found = analyze_all(&g).unwrap().into_iter().any(|a| {
        a.is_cut
            && name_set(&sys, &a.sigma_phi) == want_min
            && a.witnesses.as_ref().is_some_and(|w| {
                let parts = [
                    name_set(&sys, &w.sigma_min.first),
                    name_set(&sys, &w.sigma_min.rest),
                ];
                parts.contains(&set(&["S67", "S78"]))
                    && parts.contains(&set(&["S1235", "S1234", "S45"]))
            })
    });
    o.expect(found, || {
        "no cut vertex with the expected Σ^(φ) and bipartition".into()
    });
    let elapsed = start.elapsed();
    o.expect(elapsed < FAST, || format!("took {elapsed:?}"));
    o.note = format!(
        "|V|={} |E|={} cuts={} blocks={} in {elapsed:.1?}",
        g.vertex_count(),
        g.edge_count(),
        cuts.len(),
        blocks.blocks.len()
    );
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let a = BunemanGraph::new(fixtures::sigma8()).unwrap();
    let b = BunemanGraph::new(fixtures::sigma8_tree()).unwrap();
    let (_, _, xa) = xtree_of(&a).unwrap();
    let (_, _, xb) = xtree_of(&b).unwrap();
    let iso = xa.is_isomorphic(a.system().ground(), &xb, b.system().ground());
    o.expect(iso, || {
        format!(
            "{} vs {}",
            xa.canonical_form(a.system().ground()),
            xb.canonical_form(b.system().ground())
        )
    });
    let elapsed = start.elapsed();
    o.expect(elapsed < FAST, || format!("took {elapsed:?}"));
    o.note = format!("isomorphic={iso} in {elapsed:.1?}");
    o
}

fn has_four_cycle(g: &BunemanGraph) -> bool {
    let adj = g.adjacency_lists();
    (0..g.vertex_count()).any(|u| {
        adj[u].iter().enumerate().any(|(i, &a)| {
            adj[u][i + 1..]
                .iter()
                .any(|&b| adj[a].iter().any(|&w| w != u && adj[b].contains(&w)))
        })
    })
}

fn connected(g: &BunemanGraph) -> bool {
    bfs_distances(&g.adjacency_lists(), 0, None)
        .iter()
        .all(|&d| d != usize::MAX)
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = random::rng(3);
    for k in 0..200 {
        let (n, m) = random::random_shape(&mut rng, 2, 8, 7);
        let sys = random::random_compatible(&mut rng, n, m);
        let g = BunemanGraph::build(sys, &plain()).unwrap();
        o.expect(
            g.edge_count() + 1 == g.vertex_count() && connected(&g),
            || {
                format!(
                    "compatible #{k}: |V|={} |E|={}",
                    g.vertex_count(),
                    g.edge_count()
                )
            },
        );
    }
    for k in 0..200 {
        let (n, m) = (rng.random_range(4..=8), rng.random_range(2..=7));
        let sys = random::random_with_incompatible_pair(&mut rng, n, m);
        let g = BunemanGraph::build(sys, &plain()).unwrap();
        o.expect(
            has_four_cycle(&g) && g.edge_count() + 1 != g.vertex_count(),
            || format!("incompatible #{k}: no 4-cycle or a tree"),
        );
    }
    o.note = format!("400 systems, {} failures", o.failures.len());
    o
}

/// The shared n ≤ 7, m ≤ 6 sweep.
fn sweep() -> Vec<SplitSystem> {
    let mut rng = random::rng(4);
    (0..500)
        .map(|_| {
            let (n, m) = random::random_shape(&mut rng, 2, 7, 6);
            random::random_system(&mut rng, n, m)
        })
        .collect()
}

fn criterion_4(systems: &[SplitSystem]) -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let mut vertices = 0;
    for (k, sys) in systems.iter().enumerate() {
        let g = BunemanGraph::build(sys.clone(), &plain()).unwrap();
        let art = biconnected_components(&g.adjacency_lists()).articulation;
        match analyze_all(&g) {
            Ok(analyses) => {
                for a in analyses {
                    vertices += 1;
                    o.expect(a.verdicts.iter().all(|&v| v == art[a.vertex]), || {
                        format!(
                            "system {k} vertex {}: verdicts {:?}, DFS {}",
                            a.vertex, a.verdicts, art[a.vertex]
                        )
                    });
                }
            }
            Err(e) => o.failures.push(format!("system {k}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    o.expect(elapsed < SWEEP_LIMIT, || format!("took {elapsed:?}"));
    o.note = format!(
        "{} systems, {vertices} vertices, {} disagreements in {elapsed:.1?}",
        systems.len(),
        o.failures.len()
    );
    o
}

fn criterion_5(systems: &[SplitSystem]) -> Outcome {
    let mut o = Outcome::new();
    for (k, sys) in systems.iter().enumerate() {
        let g = BunemanGraph::build(sys.clone(), &plain()).unwrap();
        let d = all_blocks(&g).unwrap();
        let ours: BTreeSet<Vec<usize>> = d.blocks.iter().map(|b| b.vertices.clone()).collect();
        let dfs: BTreeSet<Vec<usize>> = biconnected_components(&g.adjacency_lists())
            .components
            .into_iter()
            .collect();
        o.expect(ours == dfs, || {
            format!("system {k}: blocks differ from DFS")
        });
        let comps = sys.incompatibility_graph().component_count();
        o.expect(d.blocks.len() == comps && ours.len() == comps, || {
            format!("system {k}: {} blocks, {comps} components", d.blocks.len())
        });
    }
    o.note = format!("{} systems, {} failures", systems.len(), o.failures.len());
    o
}

fn criterion_6(systems: &[SplitSystem]) -> Outcome {
    let mut o = Outcome::new();
    let (mut gates, mut meetings) = (0, 0);
    for (k, sys) in systems.iter().take(100).enumerate() {
        let g = BunemanGraph::build(sys.clone(), &plain()).unwrap();
        let d = all_blocks(&g).unwrap();
        for b in &d.blocks {
            for v in 0..g.vertex_count() {
                let gt = gate(&g, v, b.component).unwrap();
                gates += 1;
                let additive = b.contains(gt)
                    && b.vertices
                        .iter()
                        .all(|&w| g.distance(v, w) == g.distance(v, gt) + g.distance(gt, w));
                o.expect(additive, || {
                    format!("system {k}: gate {gt} of v{v} for block {}", b.component)
                });
            }
        }
        for (i, b0) in d.blocks.iter().enumerate() {
            for b1 in &d.blocks[i + 1..] {
                let shared: Vec<usize> = b0
                    .vertices
                    .iter()
                    .copied()
                    .filter(|&v| b1.contains(v))
                    .collect();
                match blocks_intersect(&g, b0.component, b1.component).unwrap() {
                    BlockMeeting::MeetAt(v) => {
                        meetings += 1;
                        let via_gate = inter_block_gate(&g, b0.component, b1.component).unwrap();
                        o.expect(shared == [v] && via_gate == v, || {
                            format!("system {k}: blocks share {shared:?}, condition gives {v}, gate {via_gate}")
                        });
                    }
                    BlockMeeting::Disjoint => o.expect(shared.is_empty(), || {
                        format!("system {k}: disjoint blocks share {shared:?}")
                    }),
                }
            }
        }
    }
    o.note = format!(
        "{gates} gates, {meetings} meeting pairs, {} failures",
        o.failures.len()
    );
    o
}

fn criterion_7(systems: &[SplitSystem]) -> Outcome {
    let mut o = Outcome::new();
    let (mut triples, mut paths) = (0u64, 0u64);
    for (k, sys) in systems.iter().enumerate() {
        let g = BunemanGraph::build(sys.clone(), &plain()).unwrap();
        let adj = g.adjacency_lists();
        let nv = g.vertex_count();
        let dist: Vec<Vec<usize>> = (0..nv).map(|s| bfs_distances(&adj, s, None)).collect();
        for (s, row) in dist.iter().enumerate() {
            let (_, counts) = bfs_geodesic_counts(&adj, s);
            for (t, &dst) in row.iter().enumerate() {
                let xor = g.vertex(s).sides().hamming(g.vertex(t).sides());
                o.expect(dst == xor, || {
                    format!("system {k}: d({s},{t}) = {dst} vs {xor}")
                });
                if xor <= 6 {
                    paths += 1;
                    let ext = g.shortest_path_count(s, t).unwrap();
                    o.expect(ext == counts[t], || {
                        format!(
                            "system {k}: {ext} extensions vs {} geodesics {s}-{t}",
                            counts[t]
                        )
                    });
                }
            }
        }
        for a in 0..nv {
            for b in a..nv {
                for c in b..nv {
                    triples += 1;
                    let med = VertexMap::median(g.vertex(a), g.vertex(b), g.vertex(c)).unwrap();
                    let Ok(m) = g.vertex_id(&med) else {
                        o.failures
                            .push(format!("system {k}: median of {a},{b},{c} is not a vertex"));
                        continue;
                    };
                    let between = [(a, b), (b, c), (a, c)]
                        .iter()
                        .all(|&(p, q)| dist[p][q] == dist[p][m] + dist[m][q]);
                    o.expect(between, || {
                        format!("system {k}: median {m} of {a},{b},{c} not between")
                    });
                }
            }
        }
    }
    o.note = format!(
        "{triples} triples, {paths} path counts, {} failures",
        o.failures.len()
    );
    o
}

fn criterion_8(systems: &[SplitSystem]) -> Outcome {
    let mut o = Outcome::new();
    let mut rng = random::rng(8);
    let mut all: Vec<SplitSystem> = systems.to_vec();
    for _ in 0..100 {
        let n = rng.random_range(5..=9);
        let m = rng.random_range(7..=12);
        all.push(random::random_system(&mut rng, n, m));
    }
    for (k, sys) in all.iter().enumerate() {
        let brute = enumerate_vertices(
            sys,
            Strategy::Brute,
            &Limits::default(),
            Execution::Sequential,
        )
        .unwrap();
        let inc = enumerate_vertices(
            sys,
            Strategy::Incremental,
            &Limits::default(),
            Execution::Sequential,
        )
        .unwrap();
        o.expect(brute == inc, || {
            format!("system {k}: {} vs {} vertices", brute.len(), inc.len())
        });
    }
    // Informational timing on a sparse m = 12 system.
    let sparse = random::sparse_system(&mut rng, 16, 12, 2);
    let time = |s: Strategy| {
        let start = Instant::now();
        for _ in 0..20 {
            enumerate_vertices(&sparse, s, &Limits::default(), Execution::Sequential).unwrap();
        }
        start.elapsed() / 20
    };
    let (tb, ti) = (time(Strategy::Brute), time(Strategy::Incremental));
    o.note = format!(
        "{} systems agree; sparse m=12: brute {tb:.1?}, incremental {ti:.1?} (informational)",
        all.len() - o.failures.len()
    );
    o
}

fn main() -> ExitCode {
    let systems = sweep();
    let results = [
        report(1, "nine-split golden values", &criterion_1()),
        report(
            2,
            "companion tree system gives the same X-tree",
            &criterion_2(),
        ),
        report(3, "tree iff pairwise compatible", &criterion_3()),
        report(4, "six-way cut-vertex agreement", &criterion_4(&systems)),
        report(5, "block bijection", &criterion_5(&systems)),
        report(6, "gate identities", &criterion_6(&systems)),
        report(7, "median and isometry suite", &criterion_7(&systems)),
        report(8, "enumeration equivalence", &criterion_8(&systems)),
    ];
    if results.iter().all(|&ok| ok) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
