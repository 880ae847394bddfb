//! The full invariant suite for one split system, used by `buneman check`
//! and the sweeps. Every check compares a library result against an
//! independent oracle; heavy checks sample with an explicit seed.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::BitSet;
use crate::blocks::{
    all_blocks, blocks_intersect, gate, inter_block_gate, separation_test, BlockMeeting,
};
use crate::buneman::{enumerate_vertices, BunemanGraph, Options, Strategy};
use crate::cut::{analyze_all, component_correspondences};
use crate::error::{ensure, Error, Result};
use crate::graph::{bfs_distances, bfs_geodesic_counts, biconnected_components, connected_without};
use crate::io::{format_split_file, parse_split_file, xtree_to_newick};
use crate::par::Execution;
use crate::random;
use crate::splits::{Side, SplitSystem};
use crate::trees::{
    block_cut_tree, buneman_tree_criterion, check_block_degrees, leaf_label_bijection_test,
    reduce_again, reduce_to_xtree, reduce_to_xtree_in_order, triple_degree_check,
};

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub seed: u64,
    /// Vertex or split triples examined per triple-based check.
    pub max_triples: usize,
    /// Vertex pairs examined per pair-based check.
    pub max_pairs: usize,
    /// Largest `|Δ|` whose path count is compared against BFS.
    pub path_delta: usize,
    /// Cycle-space check runs when `|E| − |V| + 1` is at most this.
    pub max_cycle_rank: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            max_triples: 4096,
            max_pairs: 20_000,
            path_delta: 6,
            max_cycle_rank: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct CheckReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub items: Vec<CheckItem>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    fn run(&mut self, name: &'static str, f: impl FnOnce() -> Result<String>) {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(Error::InternalInconsistency(msg)) => (false, msg),
            Err(e) => (false, e.to_string()),
        };
        self.items.push(CheckItem {
            name,
            passed,
            detail,
        });
    }
}

fn tuples(rng: &mut impl Rng, n: usize, arity: u32, cap: usize) -> Vec<Vec<usize>> {
    let total = n.checked_pow(arity).unwrap_or(usize::MAX);
    if total <= cap {
        (0..total)
            .map(|mut t| {
                (0..arity)
                    .map(|_| {
                        let d = t % n;
                        t /= n;
                        d
                    })
                    .collect()
            })
            .collect()
    } else {
        (0..cap)
            .map(|_| (0..arity).map(|_| rng.random_range(0..n)).collect())
            .collect()
    }
}

/// Runs every check on `system`. Verification is forced on. Only errors that
/// stop the graph from being built at all (caps) are returned as `Err`.
pub fn check_system(
    system: &SplitSystem,
    options: &Options,
    config: &CheckConfig,
) -> Result<CheckReport> {
    let opts = Options {
        verify: true,
        ..*options
    };
    let mut report = CheckReport::default();
    let g = match BunemanGraph::build(system.clone(), &opts) {
        Ok(g) => g,
        Err(e @ Error::InternalInconsistency(_)) => {
            report.run("build", || Err(e));
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.vertex_count = g.vertex_count();
    report.edge_count = g.edge_count();
    let rng = random::rng(config.seed);
    let nv = g.vertex_count();
    let m = system.len();
    let adj = g.adjacency_lists();

    report.run("split facts", || {
        split_facts(system, &mut rng.clone(), config)
    });
    report.run("enumeration", || {
        let cap = opts.limits.brute_max_splits.min(63);
        if m > cap {
            return Ok(format!("skipped: m={m} above brute cap {cap}"));
        }
        for exec in [Execution::Sequential, Execution::Parallel] {
            for strategy in [Strategy::Brute, Strategy::Incremental] {
                let vs = enumerate_vertices(system, strategy, &opts.limits, exec)?;
                ensure!(
                    vs == g.vertices(),
                    "{strategy:?}/{exec:?} gives {} vertices, graph has {nv}",
                    vs.len()
                );
            }
        }
        Ok(format!("{nv} vertices"))
    });
    report.run("adjacency", || {
        if nv <= 3000 {
            let mut scan = Vec::new();
            for u in 0..nv {
                for v in u + 1..nv {
                    if g.distance(u, v) == 1 {
                        scan.push((u, v));
                    }
                }
            }
            let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
            ensure!(
                scan == edges,
                "flip adjacency differs from the pairwise scan"
            );
        }
        for v in 0..nv {
            let min = g.min_image(v)?;
            let valid: Vec<usize> = (0..m)
                .filter(|&s| g.vertex(v).flip_one(s).is_vertex_of(system))
                .collect();
            ensure!(
                min.to_vec() == valid,
                "Σ^(φ) differs from the valid flips at {v}"
            );
            ensure!(
                g.degree(v) == min.len(),
                "degree differs from |Σ^(φ)| at {v}"
            );
        }
        Ok(format!("{} edges", g.edge_count()))
    });
    report.run("labels and connectivity", || {
        ensure!(nv >= 2, "fewer than two vertices");
        for x in 0..system.n() {
            let v = g.label_vertex(x);
            ensure!(
                g.vertex(v)
                    .sides()
                    .iter()
                    .eq((0..m).filter(|&s| system.split(s).side_of(x) == Side::B)),
                "φ_{x} is not the labeling map"
            );
        }
        let d = bfs_distances(&adj, 0, None);
        ensure!(d.iter().all(|&x| x != usize::MAX), "graph is disconnected");
        Ok(String::new())
    });
    report.run("isometry", || {
        let mut sources: Vec<usize> = (0..nv).collect();
        if nv * nv > config.max_pairs {
            sources.shuffle(&mut rng.clone());
            sources.truncate((config.max_pairs / nv).max(1));
        }
        for &s in &sources {
            let d = bfs_distances(&adj, s, None);
            for (t, &dt) in d.iter().enumerate() {
                ensure!(
                    dt == g.distance(s, t),
                    "BFS distance {s}-{t} is {dt} but |Δ| is {}",
                    g.distance(s, t)
                );
            }
        }
        Ok(format!("{} sources", sources.len()))
    });
    report.run("medians", || medians(&g, &mut rng.clone(), config));
    report.run("path counts", || {
        path_counts(&g, &adj, &mut rng.clone(), config)
    });
    report.run("ideal property", || {
        for pair in tuples(&mut rng.clone(), nv, 2, config.max_pairs) {
            let (p, q) = (pair[0], pair[1]);
            let delta = g.delta(p, q);
            for s in delta.iter() {
                for t in 0..m {
                    if g.image(p, t).is_subset(g.image(p, s)) {
                        ensure!(delta.contains(t), "image set of Δ({p},{q}) is not an ideal");
                    }
                }
            }
        }
        Ok(String::new())
    });
    report.run("separating pairs", || {
        for s in 0..m {
            for t in s + 1..m {
                let mut seen = [false; 4];
                for v in g.vertices() {
                    seen[((v.side(s).bit() as usize) << 1) | v.side(t).bit() as usize] = true;
                }
                ensure!(
                    (seen[0] && seen[3]) || (seen[1] && seen[2]),
                    "no two vertices differ on both {s} and {t}"
                );
            }
        }
        Ok(String::new())
    });
    report.run("cycle space", || cycle_space(&g, config.max_cycle_rank));
    report.run("kappa cutsets", || {
        for s in 0..m {
            g.kappa_cutset(s)?;
        }
        Ok(String::new())
    });
    report.run("restriction", || {
        let all: Vec<usize> = (0..m).collect();
        let id = g.restrict(&all)?;
        ensure!(
            id.map == (0..nv).collect::<Vec<_>>(),
            "restriction to Σ is not the identity"
        );
        let mut r = rng.clone();
        for _ in 0..3 {
            let mut kept: Vec<usize> = (0..m).filter(|_| r.random_bool(0.5)).collect();
            if kept.is_empty() {
                kept.push(r.random_range(0..m));
            }
            g.restrict(&kept)?;
        }
        Ok(String::new())
    });
    report.run("cut vertices", || {
        let analyses = analyze_all(&g)?;
        let mut cuts = 0;
        for a in &analyses {
            ensure!(
                a.verdicts.iter().all(|&b| b == a.is_cut),
                "verdicts disagree at {}",
                a.vertex
            );
            ensure!(
                a.is_cut == !connected_without(&adj, a.vertex),
                "deletion oracle disagrees at {}",
                a.vertex
            );
            cuts += a.is_cut as usize;
        }
        let bic = biconnected_components(&adj);
        ensure!(
            (0..nv).all(|v| bic.articulation[v] == analyses[v].is_cut),
            "articulation points disagree"
        );
        Ok(format!("{cuts} cut vertices"))
    });
    report.run("component correspondences", || {
        for v in 0..nv {
            component_correspondences(&g, v)?;
        }
        Ok(String::new())
    });
    report.run("blocks", || {
        let d = all_blocks(&g)?;
        ensure!(
            d.blocks.len() == system.incompatibility_graph().component_count(),
            "block count differs from component count"
        );
        let ours: BTreeSet<Vec<usize>> = d.blocks.iter().map(|b| b.vertices.clone()).collect();
        let theirs: BTreeSet<Vec<usize>> = biconnected_components(&adj)
            .components
            .into_iter()
            .collect();
        ensure!(
            ours == theirs,
            "blocks differ from the biconnected components"
        );
        Ok(format!("{} blocks", d.blocks.len()))
    });
    report.run("gates", || {
        let d = all_blocks(&g)?;
        for b in &d.blocks {
            for v in 0..nv {
                let gt = gate(&g, v, b.component)?;
                ensure!(
                    b.contains(gt),
                    "gate of {v} is outside block {}",
                    b.component
                );
                for &w in &b.vertices {
                    ensure!(
                        g.distance(v, w) == g.distance(v, gt) + g.distance(gt, w),
                        "gate {gt} of {v} not on a geodesic to {w}"
                    );
                }
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
                match blocks_intersect(&g, b0.component, b1.component)? {
                    BlockMeeting::MeetAt(v) => {
                        ensure!(shared == [v], "blocks meet at {shared:?}, reported {v}");
                        ensure!(
                            inter_block_gate(&g, b0.component, b1.component)? == v,
                            "inter-block gate is not {v}"
                        );
                    }
                    BlockMeeting::Disjoint => {
                        ensure!(shared.is_empty(), "disjoint blocks share {shared:?}")
                    }
                }
            }
        }
        Ok(String::new())
    });
    report.run("separation", || {
        for pair in tuples(&mut rng.clone(), nv, 2, config.max_pairs.min(2000)) {
            if pair[0] != pair[1] {
                separation_test(&g, pair[0], pair[1])?;
            }
        }
        Ok(String::new())
    });
    report.run("trees", || trees(&g, &mut rng.clone()));
    report.run("round trip", || {
        let text = format_split_file(system);
        let back =
            parse_split_file(&text).map_err(|e| Error::InternalInconsistency(e.to_string()))?;
        ensure!(&back == system, "split file does not round-trip");
        ensure!(format_split_file(&back) == text, "saved text is not stable");
        Ok(String::new())
    });
    Ok(report)
}

fn split_facts(system: &SplitSystem, rng: &mut impl Rng, config: &CheckConfig) -> Result<String> {
    let m = system.len();
    let sides = [Side::A, Side::B];
    for i in 0..m {
        for j in 0..m {
            if i == j {
                continue;
            }
            let (si, sj) = (system.split(i), system.split(j));
            let inclusion = sides
                .iter()
                .any(|&p| sides.iter().any(|&q| sj.part(q).is_subset(si.part(p))));
            ensure!(
                system.compatible(i, j) == inclusion,
                "compatibility of {i},{j} disagrees with inclusion"
            );
            if !inclusion {
                continue;
            }
            let (ai, aj) = (system.a_arrow(i, j)?, system.a_arrow(j, i)?);
            for &s in &sides {
                for &t in &sides {
                    let (a, b) = (si.part(s), sj.part(t));
                    let cases = [
                        a.union(b).is_full(),
                        b.is_proper_subset(a),
                        a.is_proper_subset(b),
                        !a.intersects(b),
                    ];
                    let expected = [
                        s == ai && t == aj,
                        s == ai && t != aj,
                        s != ai && t == aj,
                        s != ai && t != aj,
                    ];
                    ensure!(
                        cases == expected,
                        "part relations of {i},{j} disagree with A(S↘S')"
                    );
                }
            }
        }
    }
    if m >= 3 {
        for t in tuples(rng, m, 3, config.max_triples) {
            let (s, s1, s2) = (t[0], t[1], t[2]);
            if s == s1
                || s == s2
                || s1 == s2
                || !system.compatible(s, s1)
                || !system.compatible(s, s2)
            {
                continue;
            }
            let p1 = system.split(s1).part(system.a_arrow(s1, s)?);
            let p2 = system.split(s2).part(system.a_arrow(s2, s)?);
            ensure!(
                p1.intersects(p2),
                "A({s1}↘{s}) and A({s2}↘{s}) are disjoint"
            );
            if !system.compatible(s1, s2) {
                ensure!(
                    system.a_arrow(s, s1)? == system.a_arrow(s, s2)?,
                    "A({s}↘·) differs on incompatible {s1}, {s2}"
                );
            }
        }
    }
    Ok(String::new())
}

fn medians(g: &BunemanGraph, rng: &mut impl Rng, config: &CheckConfig) -> Result<String> {
    let nv = g.vertex_count();
    let triples = tuples(rng, nv, 3, config.max_triples);
    for t in &triples {
        let (a, b, c) = (t[0], t[1], t[2]);
        let med = g.median(a, b, c)?;
        ensure!(
            g.median(c, a, b)? == med && g.median(b, a, c)? == med,
            "median not symmetric"
        );
        for (p, q) in [(a, b), (b, c), (a, c)] {
            ensure!(
                g.distance(p, q) == g.distance(p, med) + g.distance(med, q),
                "median of {a},{b},{c} not between {p} and {q}"
            );
        }
        if nv <= 256 {
            let on_all: Vec<usize> = (0..nv)
                .filter(|&w| {
                    [(a, b), (b, c), (a, c)]
                        .iter()
                        .all(|&(p, q)| g.distance(p, q) == g.distance(p, w) + g.distance(w, q))
                })
                .collect();
            ensure!(
                on_all == [med],
                "intervals of {a},{b},{c} meet in {on_all:?}"
            );
        }
    }
    Ok(format!("{} triples", triples.len()))
}

fn path_counts(
    g: &BunemanGraph,
    adj: &[Vec<usize>],
    rng: &mut impl Rng,
    config: &CheckConfig,
) -> Result<String> {
    let nv = g.vertex_count();
    let cap = config.path_delta.min(g.options().limits.path_count_max);
    let mut cache: HashMap<usize, Vec<u128>> = HashMap::new();
    let mut counts = |s: usize| -> Vec<u128> {
        cache
            .entry(s)
            .or_insert_with(|| bfs_geodesic_counts(adj, s).1)
            .clone()
    };
    let mut pairs = 0;
    for t in tuples(rng, nv, 3, config.max_triples) {
        let (f, to, via) = (t[0], t[1], t[2]);
        if g.distance(f, to) > cap {
            continue;
        }
        let from_f = counts(f);
        ensure!(
            g.shortest_path_count(f, to)? == from_f[to],
            "path count {f}-{to} disagrees with BFS"
        );
        pairs += 1;
        let on_interval = g.distance(f, via) + g.distance(via, to) == g.distance(f, to);
        let oracle = on_interval && from_f[via] * counts(via)[to] == from_f[to];
        ensure!(
            g.mandatory_vertex(f, to, via)? == oracle,
            "mandatory_vertex({f},{to},{via}) disagrees with geodesic counts"
        );
    }
    Ok(format!("{pairs} pairs"))
}

fn cycle_space(g: &BunemanGraph, max_rank: usize) -> Result<String> {
    let (nv, ne) = (g.vertex_count(), g.edge_count());
    let rank = ne + 1 - nv;
    if rank > max_rank {
        return Ok(format!("skipped: cycle rank {rank}"));
    }
    let index: HashMap<(usize, usize), usize> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| ((e.u, e.v), i))
        .collect();
    let edge = |a: usize, b: usize| index[&(a.min(b), a.max(b))];
    let adj = g.adjacency_lists();
    // Echelon basis keyed by leading bit.
    let mut basis: Vec<BitSet> = Vec::new();
    for u in 0..nv {
        for (i, &a) in adj[u].iter().enumerate() {
            for &b in &adj[u][i + 1..] {
                for &w in &adj[a] {
                    if w <= u || !adj[b].contains(&w) {
                        continue;
                    }
                    let mut c =
                        BitSet::from_indices(ne, [edge(u, a), edge(u, b), edge(a, w), edge(b, w)]);
                    for row in &basis {
                        if c.contains(row.first().unwrap()) {
                            c = c.symmetric_difference(row);
                        }
                    }
                    if let Some(lead) = c.first() {
                        for row in basis.iter_mut() {
                            if row.contains(lead) {
                                *row = row.symmetric_difference(&c);
                            }
                        }
                        basis.push(c);
                    }
                }
            }
        }
    }
    ensure!(
        basis.len() == rank,
        "4-cycles span rank {} of cycle space rank {rank}",
        basis.len()
    );
    Ok(format!("rank {rank}"))
}

fn trees(g: &BunemanGraph, rng: &mut impl Rng) -> Result<String> {
    let d = all_blocks(g)?;
    let t = block_cut_tree(g, &d)?;
    let x = reduce_to_xtree(&t)?;
    check_block_degrees(g, &d, &x)?;
    let triples = triple_degree_check(&t)?;
    leaf_label_bijection_test(g, &t, &x)?;
    let compatible = buneman_tree_criterion(g)?;
    ensure!(reduce_again(&x)? == x, "reduction is not idempotent");
    let ground = g.system().ground();
    let mut order: Vec<usize> = (0..t.node_count()).rev().collect();
    for _ in 0..3 {
        let y = reduce_to_xtree_in_order(&t, &order)?;
        ensure!(
            x.is_isomorphic(ground, &y, ground),
            "reduction depends on node order"
        );
        order.shuffle(rng);
    }
    if compatible {
        let shown: HashSet<_> = x.displayed_splits()?.into_iter().collect();
        let given: HashSet<_> = g.system().splits().iter().cloned().collect();
        ensure!(
            shown == given,
            "X-tree of a compatible system does not display it"
        );
    }
    ensure!(
        xtree_to_newick(&x, ground) == xtree_to_newick(&reduce_to_xtree(&t)?, ground),
        "Newick output is not stable"
    );
    Ok(format!(
        "{} X-tree nodes, {} labelled degree-bound exceptions",
        x.node_count(),
        triples.violations.len()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn passes(sys: SplitSystem) -> CheckReport {
        let r = check_system(&sys, &Options::default(), &CheckConfig::default()).unwrap();
        let failed: Vec<_> = r.failures().collect();
        assert!(failed.is_empty(), "{failed:?}");
        r
    }

    #[test]
    fn fixtures_pass() {
        let r = passes(fixtures::sigma8());
        assert_eq!((r.vertex_count, r.edge_count), (16, 22));
        passes(fixtures::sigma8_tree());
        passes(fixtures::square());
        passes(fixtures::labeled_path());
    }

    #[test]
    fn random_systems_pass() {
        let mut r = random::rng(11);
        for _ in 0..20 {
            let (n, m) = random::random_shape(&mut r, 3, 7, 6);
            passes(random::random_system(&mut r, n, m));
        }
    }

    #[test]
    fn cycle_space_of_square() {
        let g = BunemanGraph::new(fixtures::square()).unwrap();
        assert_eq!(cycle_space(&g, 12).unwrap(), "rank 1");
    }

    #[test]
    fn caps_propagate() {
        let mut opts = Options::default();
        opts.limits.max_splits = 3;
        let e = check_system(&fixtures::sigma8(), &opts, &CheckConfig::default()).unwrap_err();
        assert!(matches!(e, Error::CapExceeded { .. }));
    }
}
