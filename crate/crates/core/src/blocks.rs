//! Blocks of the Buneman graph and their gates.
//!
//! Every component `Σ0` of the incompatibility graph yields one block
//! `B(Σ0)`: the vertices of the Buneman graph of `Σ0`, each extended to the
//! remaining splits by the side `A(S↘Σ0)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::buneman::{BunemanGraph, DeltaSet, VertexMap};
use crate::cut;
use crate::error::{ensure, Error, Result};
use crate::graph::{bfs_distances, biconnected_components, connected_without, SimpleGraph};
use crate::splits::{IncompatibilityGraph, Side};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Component id: the minimal split index in `Σ0`.
    pub component: usize,
    /// `Σ0`, ascending.
    pub splits: Vec<usize>,
    /// `B(Σ0)` as ascending vertex indices.
    pub vertices: Vec<usize>,
    /// `frame[s]` is `A(S↘Σ0)` for `s ∉ Σ0` and `None` inside `Σ0`.
    pub frame: Vec<Option<Side>>,
}

impl Block {
    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

fn component_members(ig: &IncompatibilityGraph, id: usize) -> Result<Vec<usize>> {
    Ok(ig.members(id)?.to_vec())
}

/// `A(S↘Σ0)` for every split outside `members`.
fn frame_of(g: &BunemanGraph, members: &[usize]) -> Result<Vec<Option<Side>>> {
    let sys = g.system();
    (0..sys.len())
        .map(|s| {
            if members.contains(&s) {
                Ok(None)
            } else {
                sys.a_arrow_component(s, members).map(Some)
            }
        })
        .collect()
}

/// `B(Σ0)` for the incompatibility component with id `component`.
pub fn block_of(g: &BunemanGraph, component: usize) -> Result<Block> {
    let sys = g.system();
    let ig = sys.incompatibility_graph();
    let members = component_members(&ig, component)?;
    let frame = frame_of(g, &members)?;
    let sub = BunemanGraph::build(sys.subsystem(&members)?, g.options())?;
    let m = sys.len();
    let mut pos = vec![usize::MAX; m];
    for (k, &s) in members.iter().enumerate() {
        pos[s] = k;
    }
    let extend = |phi: &VertexMap| {
        VertexMap::from_fn(m, |s| match frame[s] {
            Some(side) => side,
            None => phi.side(pos[s]),
        })
    };
    let mut lifted = Vec::with_capacity(sub.vertex_count());
    for phi in sub.vertices() {
        let id = g.vertex_id(&extend(phi)).map_err(|_| {
            Error::InternalInconsistency(format!(
                "extension of {phi:?} from component {component} is not a vertex"
            ))
        })?;
        lifted.push(id);
    }
    let mut vertices = lifted.clone();
    vertices.sort_unstable();
    let block = Block {
        component,
        splits: members,
        vertices,
        frame,
    };

    if g.verify_enabled() {
        for a in 0..sub.vertex_count() {
            for b in a + 1..sub.vertex_count() {
                let inner: Vec<usize> = sub.delta(a, b).iter().map(|k| block.splits[k]).collect();
                ensure!(
                    g.delta(lifted[a], lifted[b]).to_vec() == inner,
                    "extension from component {component} is not an isometry"
                );
            }
        }
        verify_block(g, &block)?;
    }
    Ok(block)
}

fn verify_block(g: &BunemanGraph, block: &Block) -> Result<()> {
    let c = block.component;
    let m = g.system().len();
    let in_comp = DeltaSet::from_indices(m, block.splits.iter().copied());
    let all: Vec<usize> = (0..g.vertex_count()).collect();

    let by_frame: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&v| (0..m).all(|s| block.frame[s].is_none_or(|side| g.vertex(v).side(s) == side)))
        .collect();
    ensure!(
        by_frame == block.vertices,
        "block {c} differs from its frame filter"
    );
    let mut by_min = Vec::new();
    for &v in &all {
        if g.min_image(v)?.intersects(&in_comp) {
            by_min.push(v);
        }
    }
    ensure!(
        by_min == block.vertices,
        "block {c} differs from the Σ^(φ) ∩ Σ0 filter"
    );
    let phi0 = block.vertices[0];
    let by_delta: Vec<usize> = all
        .iter()
        .copied()
        .filter(|&v| g.delta(v, phi0).is_subset(&in_comp))
        .collect();
    ensure!(
        by_delta == block.vertices,
        "block {c} differs from the Δ ⊆ Σ0 filter"
    );

    ensure!(block.len() >= 2, "block {c} has fewer than two vertices");
    let induced = SimpleGraph::new(g.vertex_count(), g.edges().iter().map(|e| (e.u, e.v)))
        .induced(&block.vertices);
    let adj = induced.adjacency();
    let bic = biconnected_components(&adj);
    ensure!(
        bic.components.len() == 1 && bic.components[0].len() == block.len(),
        "block {c} is not 2-connected"
    );
    for (a, &va) in block.vertices.iter().enumerate() {
        let dist = bfs_distances(&adj, a, None);
        for (b, &vb) in block.vertices.iter().enumerate() {
            ensure!(
                dist[b] == g.distance(va, vb),
                "block {c} is not isometric between {va} and {vb}"
            );
        }
    }
    Ok(())
}

/// The gate of `v` in `B(Σ0)`: `φ` on `Σ0`, `A(S↘Σ0)` elsewhere.
pub fn gate(g: &BunemanGraph, v: usize, component: usize) -> Result<usize> {
    if v >= g.vertex_count() {
        return Err(Error::UnknownVertex(v));
    }
    let ig = g.system().incompatibility_graph();
    let members = component_members(&ig, component)?;
    let frame = frame_of(g, &members)?;
    let phi = g.vertex(v);
    let map = VertexMap::from_fn(g.system().len(), |s| frame[s].unwrap_or(phi.side(s)));
    let id = g.vertex_id(&map).map_err(|_| {
        Error::InternalInconsistency(format!(
            "gate of {v} into component {component} is not a vertex"
        ))
    })?;
    if g.verify_enabled() {
        let block = block_of(g, component)?;
        ensure!(
            block.contains(id),
            "gate {id} lies outside block {component}"
        );
        let additive = |w: usize| {
            block
                .vertices
                .iter()
                .all(|&psi| g.distance(v, psi) == g.distance(v, w) + g.distance(w, psi))
        };
        let gates: Vec<usize> = block
            .vertices
            .iter()
            .copied()
            .filter(|&w| additive(w))
            .collect();
        ensure!(
            gates == vec![id],
            "gate of {v} into block {component} is not unique: {gates:?}"
        );
        if !block.contains(v) {
            ensure!(
                !connected_without(&g.adjacency_lists(), id),
                "gate {id} separating {v} from block {component} is not a cut vertex"
            );
        }
    }
    Ok(id)
}

/// `φ_{Σ0|Σ1}`: `A(S↘Σ1)` on `Σ0`, `A(S↘Σ0)` elsewhere.
pub fn inter_block_gate(g: &BunemanGraph, c0: usize, c1: usize) -> Result<usize> {
    if c0 == c1 {
        return Err(Error::SameComponent(c0));
    }
    let ig = g.system().incompatibility_graph();
    let m0 = component_members(&ig, c0)?;
    let m1 = component_members(&ig, c1)?;
    let f0 = frame_of(g, &m0)?;
    let f1 = frame_of(g, &m1)?;
    let map = VertexMap::from_fn(g.system().len(), |s| match f0[s] {
        None => f1[s].expect("components are disjoint"),
        Some(side) => side,
    });
    let id = g
        .vertex_id(&map)
        .map_err(|_| Error::InternalInconsistency(format!("φ_{{{c0}|{c1}}} is not a vertex")))?;
    if g.verify_enabled() {
        let b1 = block_of(g, c1)?;
        for &w in &b1.vertices {
            ensure!(
                gate(g, w, c0)? == id,
                "φ_{{{c0}|{c1}}} is not the gate of {w} into block {c0}"
            );
        }
    }
    Ok(id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockMeeting {
    Disjoint,
    MeetAt(usize),
}

/// Whether `B(Σ0)` and `B(Σ1)` share a vertex, decided by agreement of
/// `A(S↘Σ0)` and `A(S↘Σ1)` on all splits outside both components.
pub fn blocks_intersect(g: &BunemanGraph, c0: usize, c1: usize) -> Result<BlockMeeting> {
    if c0 == c1 {
        return Err(Error::SameComponent(c0));
    }
    let sys = g.system();
    let ig = sys.incompatibility_graph();
    let m0 = component_members(&ig, c0)?;
    let m1 = component_members(&ig, c1)?;
    let f0 = frame_of(g, &m0)?;
    let f1 = frame_of(g, &m1)?;
    let outside: Vec<usize> = (0..sys.len())
        .filter(|s| !m0.contains(s) && !m1.contains(s))
        .collect();
    let agree = outside.iter().all(|&s| f0[s] == f1[s]);

    let result = if agree {
        BlockMeeting::MeetAt(inter_block_gate(g, c0, c1)?)
    } else {
        BlockMeeting::Disjoint
    };

    if g.verify_enabled() {
        // No outside split has one part missing a part of Σ0 and the other missing a part of Σ1.
        let misses = |part: &crate::splits::Subset, comp: &[usize]| {
            comp.iter().any(|&t| {
                let sp = sys.split(t);
                !part.intersects(sp.part_a()) || !part.intersects(sp.part_b())
            })
        };
        let crossing = outside.iter().any(|&s| {
            let sp = sys.split(s);
            (misses(sp.part_a(), &m0) && misses(sp.part_b(), &m1))
                || (misses(sp.part_b(), &m0) && misses(sp.part_a(), &m1))
        });
        ensure!(
            crossing != agree,
            "two forms of the block-meeting test disagree for {c0}, {c1}"
        );

        let b0 = block_of(g, c0)?;
        let b1 = block_of(g, c1)?;
        let shared: Vec<usize> = b0
            .vertices
            .iter()
            .copied()
            .filter(|&v| b1.contains(v))
            .collect();
        match result {
            BlockMeeting::Disjoint => {
                ensure!(
                    shared.is_empty(),
                    "blocks {c0} and {c1} meet although frames disagree"
                )
            }
            BlockMeeting::MeetAt(v) => {
                ensure!(
                    shared == vec![v],
                    "blocks {c0} and {c1} share {shared:?}, expected [{v}]"
                );
                ensure!(
                    inter_block_gate(g, c1, c0)? == v,
                    "φ_{{{c0}|{c1}}} and φ_{{{c1}|{c0}}} differ"
                );
                ensure!(
                    !connected_without(&g.adjacency_lists(), v),
                    "shared vertex {v} of blocks {c0}, {c1} is not a cut vertex"
                );
            }
        }
    }
    Ok(result)
}

/// All blocks with the component-to-block bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// One block per incompatibility component, ordered by component id.
    pub blocks: Vec<Block>,
    /// Cut vertices, ascending.
    pub cut_vertices: Vec<usize>,
}

impl BlockDecomposition {
    pub fn block(&self, component: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.component == component)
    }

    /// Component ids of the blocks containing `v`.
    pub fn blocks_at(&self, v: usize) -> Vec<usize> {
        self.blocks
            .iter()
            .filter(|b| b.contains(v))
            .map(|b| b.component)
            .collect()
    }
}

/// Computes every block and checks the result against a lowpoint search.
pub fn all_blocks(g: &BunemanGraph) -> Result<BlockDecomposition> {
    let ig = g.system().incompatibility_graph();
    let ids = ig.component_ids();
    let blocks: Vec<Block> = crate::par::map(g.options().execution, &ids, |&c| block_of(g, c))
        .into_iter()
        .collect::<Result<_>>()?;
    let bic = biconnected_components(&g.adjacency_lists());
    let ours: BTreeSet<Vec<usize>> = blocks.iter().map(|b| b.vertices.clone()).collect();
    let theirs: BTreeSet<Vec<usize>> = bic.components.iter().cloned().collect();
    ensure!(
        ours.len() == blocks.len() && ours == theirs,
        "blocks from components differ from the biconnected components"
    );
    let cut_vertices: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| bic.articulation[v])
        .collect();
    for &v in &cut_vertices {
        let count = blocks.iter().filter(|b| b.contains(v)).count();
        ensure!(count >= 2, "cut vertex {v} lies in {count} blocks");
    }
    if g.verify_enabled() {
        // Blocks at φ correspond to components of Γ_φ(Σ^(φ)).
        let mut at: BTreeMap<usize, usize> = BTreeMap::new();
        for b in &blocks {
            for &v in &b.vertices {
                *at.entry(v).or_default() += 1;
            }
        }
        for v in 0..g.vertex_count() {
            let comps = cut::gamma_phi_sigma_min(g, v)?.component_count();
            ensure!(
                at.get(&v).copied().unwrap_or(0) == comps,
                "vertex {v} lies in a number of blocks different from |π_φ(Σ^(φ))|"
            );
        }
    }
    Ok(BlockDecomposition {
        blocks,
        cut_vertices,
    })
}

/// Whether some cut vertex separates `a` from `b`: true iff `Δ(a,b)` meets
/// at least two incompatibility components.
pub fn separation_test(g: &BunemanGraph, a: usize, b: usize) -> Result<bool> {
    for v in [a, b] {
        if v >= g.vertex_count() {
            return Err(Error::UnknownVertex(v));
        }
    }
    if a == b {
        return Err(Error::IdenticalVertices(a));
    }
    let ig = g.system().incompatibility_graph();
    let touched: BTreeSet<usize> = g.delta(a, b).iter().map(|s| ig.component_of(s)).collect();
    let separated = touched.len() >= 2;
    if g.verify_enabled() {
        let adj = g.adjacency_lists();
        let bic = biconnected_components(&adj);
        let oracle = (0..g.vertex_count()).any(|c| {
            c != a
                && c != b
                && bic.articulation[c]
                && bfs_distances(&adj, a, Some(c))[b] == usize::MAX
        });
        ensure!(
            oracle == separated,
            "separation of {a} and {b} disagrees with the cut-vertex deletion search"
        );
    }
    Ok(separated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::splits::SplitSystem;

    fn sigma8() -> BunemanGraph {
        BunemanGraph::new(fixtures::sigma8()).unwrap()
    }

    fn comp(g: &BunemanGraph, name: &str) -> usize {
        let s = g.system().index_of_name(name).unwrap();
        g.system().incompatibility_graph().component_of(s)
    }

    #[test]
    fn sigma8_block_sizes() {
        let g = sigma8();
        let d = all_blocks(&g).unwrap();
        assert_eq!(d.blocks.len(), 5);
        let mut sizes: Vec<usize> = d.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 2, 4, 4, 8]);
        assert_eq!(d.block(comp(&g, "S67")).unwrap().len(), 4);
        assert_eq!(d.block(comp(&g, "S123")).unwrap().len(), 2);
        assert_eq!(d.cut_vertices.len(), 4);
    }

    #[test]
    fn compatible_system_has_edge_blocks() {
        let g = BunemanGraph::new(fixtures::sigma8_tree()).unwrap();
        let d = all_blocks(&g).unwrap();
        assert_eq!(d.blocks.len(), g.system().len());
        assert!(d.blocks.iter().all(|b| b.len() == 2));
    }

    #[test]
    fn connected_incompatibility_gives_one_block() {
        let g = BunemanGraph::new(fixtures::square()).unwrap();
        let d = all_blocks(&g).unwrap();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].vertices, vec![0, 1, 2, 3]);
        assert!(d.cut_vertices.is_empty());
    }

    #[test]
    fn gates_on_sigma8() {
        let g = sigma8();
        let c67 = comp(&g, "S67");
        let b = block_of(&g, c67).unwrap();
        for &v in &b.vertices {
            assert_eq!(gate(&g, v, c67).unwrap(), v);
        }
        let phi1 = g.label_vertex(0);
        let gt = gate(&g, phi1, c67).unwrap();
        assert!(!b.contains(phi1));
        assert!(cut::is_cut_vertex(&g, gt).unwrap().is_cut);
        assert!(matches!(gate(&g, 0, 1), Err(Error::UnknownComponent(1))));
    }

    #[test]
    fn inter_block_gate_hits_marked_vertex() {
        let g = sigma8();
        let (c67, c45) = (comp(&g, "S67"), comp(&g, "S45"));
        let v = inter_block_gate(&g, c67, c45).unwrap();
        assert_eq!(g.vertex(v).sides().low_word(), 47);
        assert_eq!(inter_block_gate(&g, c45, c67).unwrap(), v);
        assert_eq!(
            blocks_intersect(&g, c67, c45).unwrap(),
            BlockMeeting::MeetAt(v)
        );
        assert_eq!(
            inter_block_gate(&g, c67, c67),
            Err(Error::SameComponent(c67))
        );
    }

    #[test]
    fn block_meetings() {
        let g = sigma8();
        let (c13, c123, c67) = (comp(&g, "S13"), comp(&g, "S123"), comp(&g, "S67"));
        assert!(matches!(
            blocks_intersect(&g, c13, c123).unwrap(),
            BlockMeeting::MeetAt(_)
        ));
        assert_eq!(
            blocks_intersect(&g, c13, c67).unwrap(),
            BlockMeeting::Disjoint
        );

        let path = BunemanGraph::new(fixtures::labeled_path()).unwrap();
        assert_eq!(
            blocks_intersect(&path, 0, 1).unwrap(),
            BlockMeeting::MeetAt(path.label_vertex(1))
        );
    }

    #[test]
    fn separation_examples() {
        let g = sigma8();
        assert!(separation_test(&g, g.label_vertex(0), g.label_vertex(6)).unwrap());
        let b = block_of(&g, comp(&g, "S1234")).unwrap();
        assert!(!separation_test(&g, b.vertices[0], b.vertices[1]).unwrap());
        assert_eq!(separation_test(&g, 2, 2), Err(Error::IdenticalVertices(2)));
    }

    #[test]
    fn single_split_block_is_edge() {
        let sys = SplitSystem::from_labels(&["a", "b", "c"], &[&["a"]]).unwrap();
        let g = BunemanGraph::new(sys).unwrap();
        let b = block_of(&g, 0).unwrap();
        assert_eq!(b.vertices, vec![0, 1]);
    }
}
