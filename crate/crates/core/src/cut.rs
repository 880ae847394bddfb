//! Cut vertices of the Buneman graph.
//!
//! For a vertex `φ` the splits, the elements `x` with `φ_x ≠ φ` and the
//! other vertices each carry a graph `Γ_φ(·)`, and `φ` is a cut vertex
//! exactly when any (hence every) one of them is disconnected. All six
//! characterizations are evaluated and must agree.

use std::collections::BTreeSet;

use crate::buneman::{BunemanGraph, DeltaSet, VertexMap};
use crate::error::{ensure, Error, Result};
use crate::graph::{bfs_distances, connected_without, Components, SimpleGraph, UnionFind};
use crate::par;
use crate::relations::BiRelation;
use crate::splits::SplitSystem;

/// A graph whose node `k` stands for the original index `nodes[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiGraph {
    pub nodes: Vec<usize>,
    pub graph: SimpleGraph,
}

impl PhiGraph {
    /// Edge list in original indices.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .iter()
            .map(|&(a, b)| (self.nodes[a], self.nodes[b]))
            .collect()
    }

    /// Components in original indices, ordered by their minimal member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut groups: Vec<Vec<usize>> = self
            .graph
            .components()
            .groups()
            .into_iter()
            .map(|g| {
                let mut g: Vec<usize> = g.into_iter().map(|k| self.nodes[k]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        groups.sort();
        groups
    }

    pub fn component_count(&self) -> usize {
        self.graph.components().count()
    }

    /// The component holding the minimal index against everything else.
    pub fn witness(&self) -> Option<Bipartition> {
        Bipartition::from_components(&self.components())
    }
}

/// Two non-empty blocks of index sets, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub first: Vec<usize>,
    pub rest: Vec<usize>,
}

impl Bipartition {
    /// `None` unless there are at least two components.
    fn from_components(groups: &[Vec<usize>]) -> Option<Bipartition> {
        if groups.len() < 2 {
            return None;
        }
        let mut rest: Vec<usize> = groups[1..].iter().flatten().copied().collect();
        rest.sort_unstable();
        Some(Bipartition {
            first: groups[0].clone(),
            rest,
        })
    }

    fn from_block(block: &[usize], all: &[usize]) -> Bipartition {
        let inside: BTreeSet<usize> = block.iter().copied().collect();
        Bipartition {
            first: inside.iter().copied().collect(),
            rest: all
                .iter()
                .copied()
                .filter(|x| !inside.contains(x))
                .collect(),
        }
    }
}

fn check_vertex(g: &BunemanGraph, v: usize) -> Result<()> {
    if v < g.vertex_count() {
        Ok(())
    } else {
        Err(Error::UnknownVertex(v))
    }
}

/// `X^(φ)`: elements whose labeling vertex differs from `φ`.
pub fn x_phi(g: &BunemanGraph, v: usize) -> Result<Vec<usize>> {
    check_vertex(g, v)?;
    Ok((0..g.system().n())
        .filter(|&x| g.label_vertex(x) != v)
        .collect())
}

/// `V^(φ)`: all vertices but `φ`.
pub fn v_phi(g: &BunemanGraph, v: usize) -> Result<Vec<usize>> {
    check_vertex(g, v)?;
    Ok((0..g.vertex_count()).filter(|&w| w != v).collect())
}

fn images_cover(g: &BunemanGraph, v: usize, s: usize, t: usize) -> bool {
    g.image(v, s).union(g.image(v, t)).is_full()
}

fn pairs_where(k: usize, pred: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .filter(|&(a, b)| pred(a, b))
        .collect()
}

/// `Γ_φ(Σ)`: splits `S, S'` adjacent iff `φ(S) ∪ φ(S') ≠ X`.
pub fn gamma_phi_sigma(g: &BunemanGraph, v: usize) -> Result<PhiGraph> {
    check_vertex(g, v)?;
    let m = g.system().len();
    let edges = pairs_where(m, |s, t| !images_cover(g, v, s, t));
    let graph = SimpleGraph::new(m, edges);
    if g.verify_enabled() {
        for &(s, t) in g.system().incompatibility_graph().edges() {
            ensure!(
                graph.has_edge(s, t),
                "Γ(Σ) edge {s}-{t} missing from Γ_φ(Σ)"
            );
        }
        // As the projection of R^(φ): both splits lie in Δ(φ,ψ) for some ψ ≠ φ.
        let projected = pairs_where(m, |s, t| {
            (0..g.vertex_count()).any(|w| {
                w != v && {
                    let d = g.delta(v, w);
                    d.contains(s) && d.contains(t)
                }
            })
        });
        ensure!(
            projected == graph.edges(),
            "Γ_φ(Σ) differs from the projection of R^(φ) at vertex {v}"
        );
    }
    Ok(PhiGraph {
        nodes: (0..m).collect(),
        graph,
    })
}

/// `Γ_φ(Σ^(φ))`, the same edge rule restricted to splits with minimal image.
pub fn gamma_phi_sigma_min(g: &BunemanGraph, v: usize) -> Result<PhiGraph> {
    let nodes = g.min_image(v)?.to_vec();
    let edges = pairs_where(nodes.len(), |a, b| !images_cover(g, v, nodes[a], nodes[b]));
    let graph = SimpleGraph::new(nodes.len(), edges);
    if g.verify_enabled() {
        let sys = g.system();
        let incompatible = pairs_where(nodes.len(), |a, b| !sys.compatible(nodes[a], nodes[b]));
        ensure!(
            incompatible == graph.edges(),
            "Γ_φ(Σ^(φ)) is not the induced incompatibility graph at vertex {v}"
        );
        // Splits of Σ^(φ) joined in Γ(Σ) are already joined inside Σ^(φ).
        let global = sys.incompatibility_graph();
        let local = graph.components();
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                if global.component_of(nodes[a]) == global.component_of(nodes[b]) {
                    ensure!(
                        local.same(a, b),
                        "splits {} and {} share a Γ(Σ) component but not a Γ_φ(Σ^(φ)) one",
                        nodes[a],
                        nodes[b]
                    );
                }
            }
        }
    }
    Ok(PhiGraph { nodes, graph })
}

/// `Γ_φ(X^(φ))`: elements adjacent iff some split has both outside its `φ`-image.
pub fn gamma_phi_x(g: &BunemanGraph, v: usize) -> Result<PhiGraph> {
    let nodes = x_phi(g, v)?;
    let m = g.system().len();
    let outside = |x: usize, y: usize, s: usize| {
        let img = g.image(v, s);
        !img.contains(x) && !img.contains(y)
    };
    let edges = pairs_where(nodes.len(), |a, b| {
        (0..m).any(|s| outside(nodes[a], nodes[b], s))
    });
    let graph = SimpleGraph::new(nodes.len(), edges);
    if g.verify_enabled() {
        let mins = g.min_image(v)?;
        let via_min = pairs_where(nodes.len(), |a, b| {
            mins.iter().any(|s| outside(nodes[a], nodes[b], s))
        });
        ensure!(
            via_min == graph.edges(),
            "Γ_φ(X^(φ)) changes when restricted to Σ^(φ) at vertex {v}"
        );
        let adj = g.adjacency_lists();
        let from_phi = bfs_distances(&adj, v, None);
        let by_distance = pairs_where(nodes.len(), |a, b| {
            let (pa, pb) = (g.label_vertex(nodes[a]), g.label_vertex(nodes[b]));
            let d = bfs_distances(&adj, pa, None)[pb];
            d < from_phi[pa] + from_phi[pb]
        });
        ensure!(
            by_distance == graph.edges(),
            "Γ_φ(X^(φ)) edge rule disagrees with its distance form at vertex {v}"
        );
    }
    Ok(PhiGraph { nodes, graph })
}

/// `Γ_φ(V^(φ))`: vertices adjacent iff their difference sets from `φ` meet.
///
/// Quadratic in the number of vertices.
pub fn gamma_phi_v(g: &BunemanGraph, v: usize) -> Result<PhiGraph> {
    let nodes = v_phi(g, v)?;
    let deltas: Vec<DeltaSet> = nodes.iter().map(|&w| g.delta(v, w)).collect();
    let edges = pairs_where(nodes.len(), |a, b| deltas[a].intersects(&deltas[b]));
    let graph = SimpleGraph::new(nodes.len(), edges);
    if g.verify_enabled() {
        let mins = g.min_image(v)?;
        let via_min = pairs_where(nodes.len(), |a, b| {
            mins.iter()
                .any(|s| deltas[a].contains(s) && deltas[b].contains(s))
        });
        ensure!(
            via_min == graph.edges(),
            "Γ_φ(V^(φ)) changes when restricted to Σ^(φ) at vertex {v}"
        );
        let adj = g.adjacency_lists();
        let dist: Vec<Vec<usize>> = (0..g.vertex_count())
            .map(|w| bfs_distances(&adj, w, None))
            .collect();
        let by_distance = pairs_where(nodes.len(), |a, b| {
            let (pa, pb) = (nodes[a], nodes[b]);
            dist[pa][pb] < dist[pa][v] + dist[v][pb]
        });
        ensure!(
            by_distance == graph.edges(),
            "Γ_φ(V^(φ)) edge rule disagrees with its distance form at vertex {v}"
        );
        let phi_graph = PhiGraph {
            nodes: nodes.clone(),
            graph: graph.clone(),
        };
        ensure!(
            phi_graph.components() == components_without(g, v),
            "Γ_φ(V^(φ)) components differ from those of B(Σ) minus vertex {v}"
        );
    }
    Ok(PhiGraph { nodes, graph })
}

/// Connected components of `B(Σ) − φ` by breadth-first search.
pub fn components_without(g: &BunemanGraph, v: usize) -> Vec<Vec<usize>> {
    let adj = g.adjacency_lists();
    let mut seen = vec![false; g.vertex_count()];
    seen[v] = true;
    let mut groups = Vec::new();
    for start in 0..g.vertex_count() {
        if seen[start] {
            continue;
        }
        let dist = bfs_distances(&adj, start, Some(v));
        let group: Vec<usize> = (0..g.vertex_count())
            .filter(|&w| w != v && dist[w] != usize::MAX)
            .collect();
        for &w in &group {
            seen[w] = true;
        }
        groups.push(group);
    }
    groups
}

/// Components of `Γ_φ(V^(φ))` through the split/vertex relation, in linear time.
fn vertex_components(g: &BunemanGraph, v: usize) -> Vec<Vec<usize>> {
    let m = g.system().len();
    let nv = g.vertex_count();
    // nodes 0..nv are vertices, nv..nv+m are splits
    let mut uf = UnionFind::new(nv + m);
    for w in 0..nv {
        if w != v {
            for s in g.delta(v, w).iter() {
                uf.union(w, nv + s);
            }
        }
    }
    let labels = uf.min_labels();
    let comps = Components {
        labels: labels[..nv].to_vec(),
    };
    let mut groups: Vec<Vec<usize>> = comps
        .groups()
        .into_iter()
        .filter(|grp| grp != &[v])
        .collect();
    groups.sort();
    groups
}

/// `Δ_min(ψ|φ)`: splits of `Δ(φ,ψ)` whose `ψ`-image is inclusion-minimal among `ψ[Δ(φ,ψ)]`.
pub fn delta_min(system: &SplitSystem, psi: &VertexMap, phi: &VertexMap) -> Result<DeltaSet> {
    if psi.len() != system.len() {
        return Err(Error::SystemMismatch);
    }
    let delta = phi.delta(psi)?;
    let members = delta.to_vec();
    Ok(DeltaSet::from_indices(
        system.len(),
        members.iter().copied().filter(|&s| {
            let img = psi.image(system, s);
            !members
                .iter()
                .any(|&t| t != s && psi.image(system, t).is_proper_subset(img))
        }),
    ))
}

/// Witness bipartitions of the four `Γ_φ` graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witnesses {
    pub sigma_min: Bipartition,
    pub sigma: Bipartition,
    pub elements: Bipartition,
    pub vertices: Bipartition,
}

/// The two simultaneous bipartition forms, matched through the component
/// of `Σ^(φ)` holding its minimal split.
///
/// Splits of `splits.first` keep their `φ`-side on every vertex of
/// `vertices.rest`, and vice versa. Every element of `elements.rest` lies in
/// `φ(S)` for every `S` in `min_splits.first`, and vice versa.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutBipartitions {
    pub splits: Bipartition,
    pub vertices: Bipartition,
    pub min_splits: Bipartition,
    pub elements: Bipartition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutAnalysis {
    pub vertex: usize,
    /// `Σ^(φ)`.
    pub sigma_phi: Vec<usize>,
    /// `X^(φ)`.
    pub x_phi: Vec<usize>,
    /// In order: `B(Σ) − φ` disconnected; `Γ_φ(Σ^(φ))` disconnected; `Σ^(φ)`
    /// meets several components of `Γ(Σ)`; `Γ_φ(Σ)`, `Γ_φ(X^(φ))` and
    /// `Γ_φ(V^(φ))` disconnected.
    pub verdicts: [bool; 6],
    pub is_cut: bool,
    /// Number of components of each `Γ_φ` graph, equivalently of `B(Σ) − φ`.
    pub component_count: usize,
    pub witnesses: Option<Witnesses>,
    pub bipartitions: Option<CutBipartitions>,
}

/// Evaluates all six cut-vertex characterizations at vertex `v`.
pub fn is_cut_vertex(g: &BunemanGraph, v: usize) -> Result<CutAnalysis> {
    check_vertex(g, v)?;
    let sys = g.system();
    let sigma_min = gamma_phi_sigma_min(g, v)?;
    let sigma = gamma_phi_sigma(g, v)?;
    let elements = gamma_phi_x(g, v)?;
    let vertex_groups = vertex_components(g, v);
    if g.verify_enabled() {
        ensure!(
            gamma_phi_v(g, v)?.components() == vertex_groups,
            "Γ_φ(V^(φ)) components differ between edge and relation forms at vertex {v}"
        );
    }

    let global = sys.incompatibility_graph();
    let touched: BTreeSet<usize> = sigma_min
        .nodes
        .iter()
        .map(|&s| global.component_of(s))
        .collect();

    let verdicts = [
        !connected_without(&g.adjacency_lists(), v),
        sigma_min.component_count() > 1,
        touched.len() > 1,
        sigma.component_count() > 1,
        elements.component_count() > 1,
        vertex_groups.len() > 1,
    ];
    ensure!(
        verdicts.iter().all(|&b| b == verdicts[0]),
        "cut-vertex characterizations disagree at vertex {v}: {verdicts:?}"
    );
    let counts = [
        sigma_min.component_count(),
        touched.len(),
        sigma.component_count(),
        elements.component_count(),
        vertex_groups.len(),
    ];
    ensure!(
        counts.iter().all(|&c| c == counts[0]),
        "Γ_φ component counts differ at vertex {v}: {counts:?}"
    );
    let is_cut = verdicts[0];

    let (witnesses, bipartitions) = if is_cut {
        let all_vertices = v_phi(g, v)?;
        let witnesses = Witnesses {
            sigma_min: sigma_min.witness().expect("disconnected"),
            sigma: sigma.witness().expect("disconnected"),
            elements: elements.witness().expect("disconnected"),
            vertices: Bipartition::from_components(&vertex_groups).expect("disconnected"),
        };
        let bip = matched_bipartitions(g, v, &sigma_min, &sigma, &all_vertices)?;
        (Some(witnesses), Some(bip))
    } else {
        (None, None)
    };

    Ok(CutAnalysis {
        vertex: v,
        sigma_phi: sigma_min.nodes.clone(),
        x_phi: elements.nodes.clone(),
        verdicts,
        is_cut,
        component_count: counts[0],
        witnesses,
        bipartitions,
    })
}

fn matched_bipartitions(
    g: &BunemanGraph,
    v: usize,
    sigma_min: &PhiGraph,
    sigma: &PhiGraph,
    all_vertices: &[usize],
) -> Result<CutBipartitions> {
    let sys = g.system();
    let m = sys.len();
    let block_min = sigma_min.components()[0].clone();
    let block = sigma
        .components()
        .into_iter()
        .find(|c| c.contains(&block_min[0]))
        .expect("every split lies in a component");
    let in_block = DeltaSet::from_indices(m, block.iter().copied());
    let in_block_min = DeltaSet::from_indices(m, block_min.iter().copied());
    let vertices_first: Vec<usize> = all_vertices
        .iter()
        .copied()
        .filter(|&w| g.delta(v, w).intersects(&in_block))
        .collect();
    let x_all = x_phi(g, v)?;
    let elements_first: Vec<usize> = x_all
        .iter()
        .copied()
        .filter(|&x| g.delta(v, g.label_vertex(x)).intersects(&in_block_min))
        .collect();

    let out = CutBipartitions {
        splits: Bipartition::from_block(&block, &(0..m).collect::<Vec<_>>()),
        vertices: Bipartition::from_block(&vertices_first, all_vertices),
        min_splits: Bipartition::from_block(&block_min, &sigma_min.nodes),
        elements: Bipartition::from_block(&elements_first, &x_all),
    };
    for b in [&out.splits, &out.vertices, &out.min_splits, &out.elements] {
        ensure!(
            !b.first.is_empty() && !b.rest.is_empty(),
            "matched bipartition at vertex {v} has an empty side"
        );
    }
    let phi = g.vertex(v);
    let keeps = |s: usize, w: usize| g.vertex(w).side(s) == phi.side(s);
    for (splits, verts) in [
        (&out.splits.first, &out.vertices.rest),
        (&out.splits.rest, &out.vertices.first),
    ] {
        for &s in splits {
            for &w in verts {
                ensure!(
                    keeps(s, w),
                    "split {s} flips between {v} and {w} across the bipartition"
                );
            }
        }
    }
    for (splits, elems) in [
        (&out.min_splits.first, &out.elements.rest),
        (&out.min_splits.rest, &out.elements.first),
    ] {
        for &s in splits {
            for &x in elems {
                ensure!(
                    g.image(v, s).contains(x),
                    "element {x} outside φ(S{s}) across the bipartition at vertex {v}"
                );
            }
        }
    }
    Ok(out)
}

/// Cut analysis of every vertex, checked against the lowpoint articulation points.
pub fn analyze_all(g: &BunemanGraph) -> Result<Vec<CutAnalysis>> {
    let ids: Vec<usize> = (0..g.vertex_count()).collect();
    let out: Vec<CutAnalysis> = par::map(g.options().execution, &ids, |&v| is_cut_vertex(g, v))
        .into_iter()
        .collect::<Result<_>>()?;
    let oracle = crate::graph::biconnected_components(&g.adjacency_lists());
    for a in &out {
        ensure!(
            a.is_cut == oracle.articulation[a.vertex],
            "vertex {} cut verdict disagrees with the lowpoint search",
            a.vertex
        );
        ensure!(
            a.sigma_phi.len() == g.degree(a.vertex),
            "deg({}) differs from |Σ^(φ)|",
            a.vertex
        );
    }
    Ok(out)
}

/// Indices of all cut vertices, ascending.
pub fn cut_vertices(g: &BunemanGraph) -> Result<Vec<usize>> {
    Ok(analyze_all(g)?
        .into_iter()
        .filter(|a| a.is_cut)
        .map(|a| a.vertex)
        .collect())
}

/// One matched row of component correspondences at `φ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    /// Component of `Γ_φ(Σ^(φ))`.
    pub sigma_min: Vec<usize>,
    /// Component of `Γ_φ(Σ)`.
    pub sigma: Vec<usize>,
    /// Component of `Γ_φ(X^(φ))`.
    pub elements: Vec<usize>,
    /// Component of `Γ_φ(V^(φ))`.
    pub vertices: Vec<usize>,
}

/// Matches the components of the four `Γ_φ` graphs through the relation
/// `R^(φ) = {(S, ψ) : S ∈ Δ(φ,ψ)}` and checks every description of the matched sets.
pub fn component_correspondences(g: &BunemanGraph, v: usize) -> Result<Vec<Correspondence>> {
    check_vertex(g, v)?;
    let sys = g.system();
    let m = sys.len();
    let verts = v_phi(g, v)?;
    let mut pos = vec![usize::MAX; g.vertex_count()];
    for (k, &w) in verts.iter().enumerate() {
        pos[w] = k;
    }
    let rel = BiRelation::new(
        m,
        verts.len(),
        verts
            .iter()
            .enumerate()
            .flat_map(|(k, &w)| g.delta(v, w).to_vec().into_iter().map(move |s| (s, k))),
    )?;
    let alpha = g.min_image(v)?.to_vec();
    let xs = x_phi(g, v)?;
    let beta: Vec<usize> = xs.iter().map(|&x| pos[g.label_vertex(x)]).collect();
    let lifted = rel.lifted_bijection(&alpha, &beta)?;

    let mut rows = Vec::new();
    for (&a_top, &x_top) in &lifted.top.u_to_v {
        let a_base = lifted.alpha_map[&a_top];
        let v_base = lifted.base.u_to_v[&a_base];
        let mut row = Correspondence {
            sigma_min: lifted
                .top
                .u_members(a_top)
                .iter()
                .map(|&k| alpha[k])
                .collect(),
            sigma: lifted.base.u_members(a_base),
            elements: lifted.top.v_members(x_top).iter().map(|&k| xs[k]).collect(),
            vertices: lifted
                .base
                .v_members(v_base)
                .iter()
                .map(|&k| verts[k])
                .collect(),
        };
        row.sigma_min.sort_unstable();
        row.elements.sort_unstable();
        rows.push(row);
    }
    rows.sort_by(|a, b| a.sigma_min.cmp(&b.sigma_min));

    let comps = |pg: PhiGraph| pg.components().into_iter().collect::<BTreeSet<_>>();
    let sets = |f: fn(&Correspondence) -> &Vec<usize>| {
        rows.iter().map(|r| f(r).clone()).collect::<BTreeSet<_>>()
    };
    ensure!(
        sets(|r| &r.sigma_min) == comps(gamma_phi_sigma_min(g, v)?)
            && sets(|r| &r.sigma) == comps(gamma_phi_sigma(g, v)?)
            && sets(|r| &r.elements) == comps(gamma_phi_x(g, v)?)
            && sets(|r| &r.vertices) == vertex_components(g, v).into_iter().collect(),
        "relation components differ from the Γ_φ graphs at vertex {v}"
    );
    for row in &rows {
        check_correspondence(g, v, row, &xs, &verts)?;
    }
    Ok(rows)
}

fn check_correspondence(
    g: &BunemanGraph,
    v: usize,
    row: &Correspondence,
    xs: &[usize],
    verts: &[usize],
) -> Result<()> {
    let sys = g.system();
    let m = sys.len();
    let phi = g.vertex(v);
    let mins = g.min_image(v)?;
    let s0p = DeltaSet::from_indices(m, row.sigma_min.iter().copied());
    let s0 = DeltaSet::from_indices(m, row.sigma.iter().copied());
    let v0: BTreeSet<usize> = row.vertices.iter().copied().collect();
    let dmin_to = |w: usize| delta_min(sys, phi, g.vertex(w));
    let union_of = |sets: Vec<DeltaSet>| {
        sets.into_iter()
            .fold(DeltaSet::empty(m), |acc, d| acc.union(&d))
    };
    let collect = |cands: &[usize], pred: &dyn Fn(usize) -> Result<bool>| -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for &c in cands {
            if pred(c)? {
                out.push(c);
            }
        }
        Ok(out)
    };

    // (i)
    ensure!(s0p.is_subset(&s0), "(i) Σ0' ⊄ Σ0 at vertex {v}");
    let meet = DeltaSet::from_indices(m, row.sigma.iter().copied().filter(|&s| mins.contains(s)));
    ensure!(meet == s0p, "(i) Σ0' ≠ Σ0 ∩ Σ^(φ) at vertex {v}");
    let reach = DeltaSet::from_indices(
        m,
        (0..m).filter(|&s| row.sigma_min.iter().any(|&t| !images_cover(g, v, s, t))),
    );
    ensure!(
        reach == s0,
        "(i) Σ0 is not the Γ_φ(Σ)-neighbourhood of Σ0' at vertex {v}"
    );

    // (ii)
    let label_dmin = |x: usize| dmin_to(g.label_vertex(x));
    let x_sub = collect(xs, &|x| Ok(label_dmin(x)?.is_subset(&s0p)))?;
    let x_meet = collect(xs, &|x| Ok(label_dmin(x)?.intersects(&s0p)))?;
    ensure!(
        x_sub == row.elements && x_meet == row.elements,
        "(ii) X0 descriptions fail at vertex {v}"
    );
    let u = union_of(
        row.elements
            .iter()
            .map(|&x| label_dmin(x))
            .collect::<Result<_>>()?,
    );
    ensure!(u == s0p, "(ii) Σ0' ≠ ∪ Δ_min(φ|φ_x) at vertex {v}");

    // (iii)
    let v_sub = collect(verts, &|w| Ok(dmin_to(w)?.is_subset(&s0p)))?;
    let v_meet = collect(verts, &|w| Ok(dmin_to(w)?.intersects(&s0p)))?;
    ensure!(
        v_sub == row.vertices && v_meet == row.vertices,
        "(iii) V0 descriptions via Δ_min fail at vertex {v}"
    );
    let flips: Vec<usize> = mins
        .iter()
        .map(|s| g.vertex_id(&phi.flip_one(s)))
        .collect::<Result<_>>()?;
    for (s, &w) in mins.iter().zip(&flips) {
        ensure!(
            s0p.contains(s) == v0.contains(&w),
            "(iii) φ^S membership disagrees with Σ0' for split {s} at vertex {v}"
        );
    }
    let u = union_of(
        row.vertices
            .iter()
            .map(|&w| dmin_to(w))
            .collect::<Result<_>>()?,
    );
    ensure!(u == s0p, "(iii) Σ0' ≠ ∪ Δ_min(φ|ψ) at vertex {v}");

    // (iv)
    let dx = |x: usize| g.delta(v, g.label_vertex(x));
    let x_sub: Vec<usize> = xs
        .iter()
        .copied()
        .filter(|&x| dx(x).is_subset(&s0))
        .collect();
    let x_meet: Vec<usize> = xs
        .iter()
        .copied()
        .filter(|&x| dx(x).intersects(&s0))
        .collect();
    ensure!(
        x_sub == row.elements && x_meet == row.elements,
        "(iv) X0 descriptions via Δ fail at vertex {v}"
    );
    ensure!(
        union_of(row.elements.iter().map(|&x| dx(x)).collect()) == s0,
        "(iv) Σ0 ≠ ∪ Δ(φ,φ_x) at vertex {v}"
    );

    // (v)
    let v_sub: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&w| g.delta(v, w).is_subset(&s0))
        .collect();
    let v_meet: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&w| g.delta(v, w).intersects(&s0))
        .collect();
    ensure!(
        v_sub == row.vertices && v_meet == row.vertices,
        "(v) V0 descriptions via Δ fail at vertex {v}"
    );
    ensure!(
        union_of(row.vertices.iter().map(|&w| g.delta(v, w)).collect()) == s0,
        "(v) Σ0 ≠ ∪ Δ(φ,ψ) at vertex {v}"
    );

    // (vi)
    let by_delta: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&w| {
            row.elements
                .iter()
                .any(|&x| dx(x).intersects(&g.delta(v, w)))
        })
        .collect();
    let by_distance: Vec<usize> = verts
        .iter()
        .copied()
        .filter(|&w| {
            row.elements.iter().any(|&x| {
                let px = g.label_vertex(x);
                g.distance(w, px) < g.distance(w, v) + g.distance(v, px)
            })
        })
        .collect();
    ensure!(
        by_delta == row.vertices && by_distance == row.vertices,
        "(vi) V0 descriptions via X0 fail at vertex {v}"
    );
    let back: Vec<usize> = xs
        .iter()
        .copied()
        .filter(|&x| v0.contains(&g.label_vertex(x)))
        .collect();
    ensure!(
        back == row.elements,
        "(vi) X0 ≠ {{x : φ_x ∈ V0}} at vertex {v}"
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sigma8() -> BunemanGraph {
        BunemanGraph::new(fixtures::sigma8()).unwrap()
    }

    fn named(g: &BunemanGraph, idx: &[usize]) -> Vec<String> {
        let mut v: Vec<String> = idx
            .iter()
            .map(|&s| g.system().name(s).to_string())
            .collect();
        v.sort();
        v
    }

    /// The cut vertex whose minimal-image splits are S1235, S45, S1234, S67, S78.
    fn marked(g: &BunemanGraph) -> usize {
        let want = named(g, &[3, 4, 5, 6, 7]);
        (0..g.vertex_count())
            .find(|&v| named(g, &g.min_image(v).unwrap().to_vec()) == want)
            .expect("marked vertex exists")
    }

    #[test]
    fn sigma8_cut_vertices() {
        let g = sigma8();
        let cuts = cut_vertices(&g).unwrap();
        // Frozen from the brute-force oracle: bit sequences read as integers.
        let ints: Vec<u64> = cuts
            .iter()
            .map(|&v| g.vertex(v).sides().low_word())
            .collect();
        assert_eq!(ints, vec![3, 7, 47, 55]);
        assert!(cuts.iter().all(|&v| !g.is_labeled(v)));
    }

    #[test]
    fn marked_vertex_bipartitions() {
        let g = sigma8();
        let v = marked(&g);
        assert_eq!(g.vertex(v).sides().low_word(), 47);
        let a = is_cut_vertex(&g, v).unwrap();
        assert!(a.is_cut);
        assert_eq!(a.verdicts, [true; 6]);
        assert_eq!(a.component_count, 2);

        let sigma = gamma_phi_sigma(&g, v).unwrap().components();
        let mut parts: Vec<Vec<String>> = sigma.iter().map(|c| named(&g, c)).collect();
        parts.sort_by_key(|p| p.len());
        assert_eq!(parts[0], ["S67", "S78"]);
        assert_eq!(parts[1].len(), 7);

        let mins = gamma_phi_sigma_min(&g, v).unwrap().components();
        let parts: Vec<Vec<String>> = mins.iter().map(|c| named(&g, c)).collect();
        assert_eq!(
            parts,
            vec![vec!["S1234", "S1235", "S45"], vec!["S67", "S78"]]
        );

        assert_eq!(gamma_phi_x(&g, v).unwrap().component_count(), 2);
        let vertex_side = gamma_phi_v(&g, v).unwrap().components();
        let with_678: Vec<&Vec<usize>> = vertex_side
            .iter()
            .filter(|c| (5..8).any(|x| c.contains(&g.label_vertex(x))))
            .collect();
        assert_eq!(with_678.len(), 1);
        assert!((5..8).all(|x| with_678[0].contains(&g.label_vertex(x))));

        let w = a.witnesses.unwrap();
        assert_eq!(named(&g, &w.sigma_min.first), ["S1234", "S1235", "S45"]);
        let b = a.bipartitions.unwrap();
        assert_eq!(named(&g, &b.min_splits.first), ["S1234", "S1235", "S45"]);
        assert_eq!(b.splits.rest, vec![6, 7]);
        assert_eq!(b.elements.rest, vec![5, 6, 7]);
    }

    #[test]
    fn square_has_no_cut_vertex() {
        let g = BunemanGraph::new(fixtures::square()).unwrap();
        for v in 0..4 {
            let a = is_cut_vertex(&g, v).unwrap();
            assert_eq!(a.verdicts, [false; 6]);
            assert_eq!(a.component_count, 1);
            assert!(a.witnesses.is_none());
        }
    }

    #[test]
    fn single_split_gamma_graphs() {
        let sys = SplitSystem::from_labels(&["a", "b"], &[&["a"]]).unwrap();
        let g = BunemanGraph::new(sys).unwrap();
        assert!(gamma_phi_sigma(&g, 0).unwrap().edges().is_empty());
        let x = gamma_phi_x(&g, 0).unwrap();
        assert_eq!(x.nodes.len(), 1);
        assert!(x.edges().is_empty());
    }

    #[test]
    fn compatible_system_min_graph_has_no_edges() {
        let g = BunemanGraph::new(fixtures::sigma8_tree()).unwrap();
        for v in 0..g.vertex_count() {
            let pg = gamma_phi_sigma_min(&g, v).unwrap();
            assert!(pg.edges().is_empty());
            assert_eq!(pg.component_count(), pg.nodes.len());
        }
    }

    #[test]
    fn correspondences_everywhere_on_sigma8() {
        let g = sigma8();
        for v in 0..g.vertex_count() {
            let rows = component_correspondences(&g, v).unwrap();
            let a = is_cut_vertex(&g, v).unwrap();
            assert_eq!(rows.len(), a.component_count);
            let total: usize = rows.iter().map(|r| r.vertices.len()).sum();
            assert_eq!(total, g.vertex_count() - 1);
        }
        let rows = component_correspondences(&g, marked(&g)).unwrap();
        assert_eq!(rows.len(), 2);
    }

    #[test]
    fn delta_min_cases() {
        let g = BunemanGraph::new(fixtures::square()).unwrap();
        let sys = g.system();
        let (a, b) = (g.vertex(0), g.vertex(3));
        assert_eq!(delta_min(sys, b, a).unwrap().len(), 2);
        let c = g.vertex(1);
        assert_eq!(delta_min(sys, c, a).unwrap(), a.delta(c).unwrap());
        assert_eq!(
            delta_min(sys, &VertexMap::from_fn(1, |_| crate::Side::A), a),
            Err(Error::SystemMismatch)
        );
    }
}
