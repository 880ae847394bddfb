//! The block-cut tree `T(Σ)` and the reduced X-tree `T_Σ`.

use std::collections::BTreeSet;

use crate::blocks::BlockDecomposition;
use crate::buneman::BunemanGraph;
use crate::cut;
use crate::error::{ensure, Error, Result};
use crate::graph::{bfs_distances, Components};
use crate::splits::{GroundSet, Split, SplitSystem, Subset};

/// A node of `T(Σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TreeNode {
    /// A block, by incompatibility component id.
    Block(usize),
    /// A vertex of the Buneman graph.
    Vertex(usize),
}

/// Bipartite incidence tree of blocks and vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCutTree {
    /// Block nodes (by component id) followed by vertex nodes `0..|V|`.
    pub nodes: Vec<TreeNode>,
    pub adjacency: Vec<Vec<usize>>,
    /// Elements labelling each node; only vertex nodes carry labels.
    pub labels: Vec<Vec<usize>>,
    /// Whether each node is a vertex node at a cut vertex.
    pub cut: Vec<bool>,
    pub element_count: usize,
}

impl BlockCutTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, nb) in self.adjacency.iter().enumerate() {
            for &b in nb {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn index_of(&self, node: TreeNode) -> Option<usize> {
        self.nodes.iter().position(|&n| n == node)
    }

    pub fn block_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, TreeNode::Block(_)))
            .count()
    }
}

/// Builds `T(Σ)` from the block decomposition and checks its tree shape,
/// degrees and the description of edges through minimal images.
pub fn block_cut_tree(g: &BunemanGraph, blocks: &BlockDecomposition) -> Result<BlockCutTree> {
    let nb = blocks.blocks.len();
    let nv = g.vertex_count();
    let mut nodes: Vec<TreeNode> = blocks
        .blocks
        .iter()
        .map(|b| TreeNode::Block(b.component))
        .collect();
    nodes.extend((0..nv).map(TreeNode::Vertex));
    let mut adjacency = vec![Vec::new(); nb + nv];
    let mut edges = BTreeSet::new();
    for (bi, b) in blocks.blocks.iter().enumerate() {
        for &v in &b.vertices {
            adjacency[bi].push(nb + v);
            adjacency[nb + v].push(bi);
            edges.insert((bi, nb + v));
        }
    }
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
    }
    let mut labels = vec![Vec::new(); nb + nv];
    let mut cut_flags = vec![false; nb + nv];
    for v in 0..nv {
        labels[nb + v] = g.labels_at(v).to_vec();
        cut_flags[nb + v] = blocks.cut_vertices.binary_search(&v).is_ok();
    }
    let tree = BlockCutTree {
        nodes,
        adjacency,
        labels,
        cut: cut_flags,
        element_count: g.system().n(),
    };

    let n = tree.node_count();
    ensure!(
        edges.len() + 1 == n,
        "T(Σ) has {} edges on {n} nodes",
        edges.len()
    );
    ensure!(
        bfs_distances(&tree.adjacency, 0, None)
            .iter()
            .all(|&d| d != usize::MAX),
        "T(Σ) is disconnected"
    );
    let mut alternate = BTreeSet::new();
    for (bi, b) in blocks.blocks.iter().enumerate() {
        for v in 0..nv {
            if g.min_image(v)?.iter().any(|s| b.splits.contains(&s)) {
                alternate.insert((bi, nb + v));
            }
        }
    }
    ensure!(
        alternate == edges,
        "T(Σ) edges differ from the minimal-image description"
    );
    for (bi, b) in blocks.blocks.iter().enumerate() {
        ensure!(
            tree.degree(bi) == b.len(),
            "block node {bi} degree differs from block size"
        );
    }
    if g.verify_enabled() {
        for v in 0..nv {
            let comps = cut::gamma_phi_sigma_min(g, v)?.component_count();
            ensure!(
                tree.degree(nb + v) == comps,
                "vertex node {v} degree differs from |π_φ(Σ^(φ))|"
            );
            ensure!(
                (tree.degree(nb + v) > 1) == tree.cut[nb + v],
                "vertex node {v}: degree above one does not match cut status"
            );
        }
    }
    Ok(tree)
}

/// A node of the reduced tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XNode {
    /// Elements mapped to this node, ascending; empty for interior nodes.
    pub labels: Vec<usize>,
    /// The `T(Σ)` node this node came from.
    pub origin: TreeNode,
}

/// A proper X-tree with provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XTree {
    /// Nodes ordered by origin.
    pub nodes: Vec<XNode>,
    /// Edges `(a, b)` with `a < b`, ascending.
    pub edges: Vec<(usize, usize)>,
    /// For each edge, the suppressed `T(Σ)` nodes along it, listed from `a` to `b`.
    pub chains: Vec<Vec<TreeNode>>,
    /// Deleted nodes that were not unlabeled non-cut vertex leaves of `T(Σ)`.
    pub unusual_deletions: Vec<TreeNode>,
    pub element_count: usize,
}

impl XTree {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in &mut adj {
            nb.sort_unstable();
        }
        adj
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == node || b == node)
            .count()
    }

    pub fn node_of_origin(&self, origin: TreeNode) -> Option<usize> {
        self.nodes.iter().position(|n| n.origin == origin)
    }

    /// Node carrying element `x`.
    pub fn node_of_element(&self, x: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.labels.contains(&x))
    }

    /// Splits displayed by the edges: the labels on either side of each edge.
    pub fn displayed_splits(&self) -> Result<Vec<Split>> {
        let adj = self.adjacency();
        let mut out = Vec::with_capacity(self.edges.len());
        for &(a, b) in &self.edges {
            let mut cut_adj = adj.clone();
            cut_adj[a].retain(|&w| w != b);
            cut_adj[b].retain(|&w| w != a);
            let dist = bfs_distances(&cut_adj, a, None);
            let side = Subset::from_indices(
                self.element_count,
                self.nodes
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| dist[k] != usize::MAX)
                    .flat_map(|(_, n)| n.labels.iter().copied()),
            );
            out.push(Split::new(side).map_err(|_| Error::DegenerateTree)?);
        }
        Ok(out)
    }

    /// Label-anchored canonical string: rooted at the node holding element 0,
    /// children sorted, each node written as `(children)labels`.
    pub fn canonical_form(&self, ground: &GroundSet) -> String {
        let adj = self.adjacency();
        let root = self.node_of_element(0).unwrap_or(0);
        self.canonical_at(&adj, ground, root, usize::MAX)
    }

    fn canonical_at(
        &self,
        adj: &[Vec<usize>],
        ground: &GroundSet,
        node: usize,
        parent: usize,
    ) -> String {
        let mut kids: Vec<String> = adj[node]
            .iter()
            .filter(|&&w| w != parent)
            .map(|&w| self.canonical_at(adj, ground, w, node))
            .collect();
        kids.sort();
        let label: Vec<&str> = self.nodes[node]
            .labels
            .iter()
            .map(|&x| ground.label(x))
            .collect();
        format!("({}){}", kids.join(","), label.join("+"))
    }

    /// Isomorphism as X-labelled trees over the same label names.
    pub fn is_isomorphic(
        &self,
        ground: &GroundSet,
        other: &XTree,
        other_ground: &GroundSet,
    ) -> bool {
        self.canonical_form(ground) == other.canonical_form(other_ground)
    }
}

/// Working copy of a labelled tree during reduction.
struct Reducer {
    origins: Vec<TreeNode>,
    labels: Vec<Vec<usize>>,
    expected_leaf: Vec<bool>,
    alive: Vec<bool>,
    /// Neighbour -> chain of suppressed origins from this node towards the neighbour.
    adj: Vec<Vec<(usize, Vec<TreeNode>)>>,
    unusual: Vec<TreeNode>,
}

impl Reducer {
    fn from_tree(t: &BlockCutTree) -> Self {
        let n = t.node_count();
        Reducer {
            origins: t.nodes.clone(),
            labels: t.labels.clone(),
            expected_leaf: (0..n)
                .map(|k| {
                    matches!(t.nodes[k], TreeNode::Vertex(_)) && !t.cut[k] && t.labels[k].is_empty()
                })
                .collect(),
            alive: vec![true; n],
            adj: t
                .adjacency
                .iter()
                .map(|nb| nb.iter().map(|&w| (w, Vec::new())).collect())
                .collect(),
            unusual: Vec::new(),
        }
    }

    fn from_xtree(t: &XTree) -> Self {
        let n = t.node_count();
        let mut adj: Vec<Vec<(usize, Vec<TreeNode>)>> = vec![Vec::new(); n];
        for (&(a, b), chain) in t.edges.iter().zip(&t.chains) {
            adj[a].push((b, chain.clone()));
            adj[b].push((a, chain.iter().rev().copied().collect()));
        }
        Reducer {
            origins: t.nodes.iter().map(|n| n.origin).collect(),
            labels: t.nodes.iter().map(|n| n.labels.clone()).collect(),
            expected_leaf: vec![false; n],
            alive: vec![true; n],
            adj,
            unusual: t.unusual_deletions.clone(),
        }
    }

    fn alive_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    fn step(&mut self, k: usize) -> bool {
        if !self.alive[k] || !self.labels[k].is_empty() {
            return false;
        }
        match self.adj[k].len() {
            0 | 1 if self.alive_count() > 1 => {
                if let Some((w, _)) = self.adj[k].pop() {
                    self.adj[w].retain(|(u, _)| *u != k);
                }
                self.alive[k] = false;
                if !self.expected_leaf[k] {
                    self.unusual.push(self.origins[k]);
                }
                true
            }
            2 => {
                let (b, to_b) = self.adj[k].pop().expect("degree two");
                let (a, _) = self.adj[k].pop().expect("degree two");
                let from_a = self.take_edge(a, k);
                self.take_edge(b, k);
                // chain from a to b: a→k, k, k→b
                let mut chain = from_a;
                chain.push(self.origins[k]);
                chain.extend(to_b);
                let back: Vec<TreeNode> = chain.iter().rev().copied().collect();
                self.adj[a].push((b, chain));
                self.adj[b].push((a, back));
                self.alive[k] = false;
                true
            }
            _ => false,
        }
    }

    fn take_edge(&mut self, from: usize, to: usize) -> Vec<TreeNode> {
        let pos = self.adj[from]
            .iter()
            .position(|(w, _)| *w == to)
            .expect("edge present");
        self.adj[from].swap_remove(pos).1
    }

    fn run(&mut self, order: &[usize]) {
        loop {
            let mut changed = false;
            for &k in order {
                changed |= self.step(k);
            }
            if !changed {
                break;
            }
        }
    }

    fn finish(self, element_count: usize) -> Result<XTree> {
        let mut keep: Vec<usize> = (0..self.origins.len()).filter(|&k| self.alive[k]).collect();
        if keep.is_empty() {
            return Err(Error::DegenerateTree);
        }
        keep.sort_by_key(|&k| self.origins[k]);
        let mut pos = vec![usize::MAX; self.origins.len()];
        for (i, &k) in keep.iter().enumerate() {
            pos[k] = i;
        }
        let nodes = keep
            .iter()
            .map(|&k| XNode {
                labels: self.labels[k].clone(),
                origin: self.origins[k],
            })
            .collect();
        let mut edges: Vec<((usize, usize), Vec<TreeNode>)> = Vec::new();
        for &k in &keep {
            for (w, chain) in &self.adj[k] {
                let (a, b) = (pos[k], pos[*w]);
                if a < b {
                    edges.push(((a, b), chain.clone()));
                }
            }
        }
        edges.sort();
        let mut unusual = self.unusual;
        unusual.sort();
        Ok(XTree {
            nodes,
            edges: edges.iter().map(|(e, _)| *e).collect(),
            chains: edges.into_iter().map(|(_, c)| c).collect(),
            unusual_deletions: unusual,
            element_count,
        })
    }
}

/// Deletes unlabelled leaves and suppresses unlabelled degree-2 nodes until
/// neither applies.
pub fn reduce_to_xtree(t: &BlockCutTree) -> Result<XTree> {
    let order: Vec<usize> = (0..t.node_count()).collect();
    reduce_to_xtree_in_order(t, &order)
}

/// As [`reduce_to_xtree`], visiting nodes in the given order on every pass.
pub fn reduce_to_xtree_in_order(t: &BlockCutTree, order: &[usize]) -> Result<XTree> {
    let mut r = Reducer::from_tree(t);
    // Unlabelled non-cut vertex nodes go first; they are leaves of T(Σ).
    for k in 0..t.node_count() {
        if r.expected_leaf[k] {
            ensure!(
                t.degree(k) == 1,
                "unlabelled non-cut vertex node {k} is not a leaf"
            );
        }
    }
    for k in 0..t.node_count() {
        if r.expected_leaf[k] {
            r.step(k);
        }
    }
    r.run(order);
    let x = r.finish(t.element_count)?;
    check_xtree(&x)?;
    Ok(x)
}

/// Applies the reduction to an existing X-tree; a proper X-tree is returned unchanged.
pub fn reduce_again(x: &XTree) -> Result<XTree> {
    let mut r = Reducer::from_xtree(x);
    let order: Vec<usize> = (0..x.node_count()).collect();
    r.run(&order);
    r.finish(x.element_count)
}

fn check_xtree(x: &XTree) -> Result<()> {
    ensure!(
        x.edges.len() + 1 == x.node_count(),
        "reduced tree has {} edges on {} nodes",
        x.edges.len(),
        x.node_count()
    );
    let comps = Components::from_edges(x.node_count(), x.edges.iter().copied());
    ensure!(comps.count() == 1, "reduced tree is disconnected");
    for (k, node) in x.nodes.iter().enumerate() {
        if node.labels.is_empty() {
            ensure!(
                x.degree(k) >= 3,
                "unlabelled node {k} of the X-tree has degree {}",
                x.degree(k)
            );
        }
    }
    let mut seen = vec![false; x.element_count];
    for node in &x.nodes {
        for &e in &node.labels {
            ensure!(!seen[e], "element {e} labels two X-tree nodes");
            seen[e] = true;
        }
    }
    ensure!(
        seen.iter().all(|&s| s),
        "some element labels no X-tree node"
    );
    Ok(())
}

/// Classes of `x ~ y ⇔ S(x) = S(y)` for every `S` in `members`, ordered by minimal element.
pub fn sim_classes(system: &SplitSystem, members: &[usize]) -> Vec<Vec<usize>> {
    let mut classes: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    for x in 0..system.n() {
        let key: Vec<bool> = members
            .iter()
            .map(|&s| system.split(s).side_of(x).bit())
            .collect();
        match classes.iter_mut().find(|(k, _)| *k == key) {
            Some((_, c)) => c.push(x),
            None => classes.push((key, vec![x])),
        }
    }
    classes.into_iter().map(|(_, c)| c).collect()
}

/// Checks that each block of at least two splits has X-tree degree equal to
/// its number of `~Σ0` classes and that single-split blocks were suppressed.
pub fn check_block_degrees(g: &BunemanGraph, blocks: &BlockDecomposition, x: &XTree) -> Result<()> {
    for b in &blocks.blocks {
        let node = x.node_of_origin(TreeNode::Block(b.component));
        if b.splits.len() == 1 {
            ensure!(
                node.is_none(),
                "single-split block {} survived reduction",
                b.component
            );
        } else {
            let node = node.ok_or_else(|| {
                Error::InternalInconsistency(format!("block {} vanished in reduction", b.component))
            })?;
            let classes = sim_classes(g.system(), &b.splits).len();
            ensure!(
                x.degree(node) == classes,
                "block {} has X-tree degree {} but {classes} classes",
                b.component,
                x.degree(node)
            );
        }
    }
    Ok(())
}

/// Whether `x ↦ φ_x` is a bijection onto the leaves of the reduced tree:
/// no `φ_x` is a cut vertex and every element is separated from every other.
///
/// Confirmed by inspecting the leaves of `x`. Leaves of `T(Σ)` itself also
/// include unlabelled non-cut vertices, see [`labels_biject_onto_leaves`].
pub fn leaf_label_bijection_test(g: &BunemanGraph, t: &BlockCutTree, x: &XTree) -> Result<bool> {
    let n = g.system().n();
    let nb = t.block_count();
    let labeled_cut = (0..n).any(|e| t.cut[nb + g.label_vertex(e)]);
    let separated = sim_classes(g.system(), &(0..g.system().len()).collect::<Vec<_>>()).len() == n;
    let formula = !labeled_cut && separated;

    let leaves: Vec<usize> = (0..x.node_count()).filter(|&k| x.degree(k) <= 1).collect();
    let direct = leaves.len() == n
        && leaves.iter().all(|&k| x.nodes[k].labels.len() == 1)
        && x.nodes
            .iter()
            .all(|node| node.labels.is_empty() || leaves.iter().any(|&k| x.nodes[k] == *node));
    ensure!(
        formula == direct,
        "leaf bijection formula disagrees with the reduced tree"
    );
    Ok(formula)
}

/// Whether the labelling is a bijection onto the leaves of `T(Σ)` itself.
pub fn labels_biject_onto_leaves(g: &BunemanGraph, t: &BlockCutTree) -> bool {
    let n = g.system().n();
    let nb = t.block_count();
    let leaves: BTreeSet<usize> = (0..t.node_count()).filter(|&k| t.degree(k) == 1).collect();
    let images: BTreeSet<usize> = (0..n).map(|x| nb + g.label_vertex(x)).collect();
    images.len() == n && images == leaves
}

/// The Buneman graph is a tree iff all splits are pairwise compatible.
pub fn buneman_tree_criterion(g: &BunemanGraph) -> Result<bool> {
    let compatible = g.system().pairwise_compatible();
    let acyclic = g.edge_count() + 1 == g.vertex_count();
    ensure!(
        compatible == acyclic,
        "compatibility disagrees with acyclicity of B(Σ)"
    );
    Ok(compatible)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleViolation {
    /// Vertex index of the shared cut vertex.
    pub vertex: usize,
    /// Component ids of the two blocks.
    pub blocks: (usize, usize),
    /// Whether the cut vertex carries a label, so that it survives in `T_Σ` anyway.
    pub labeled: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TripleReport {
    pub checked: usize,
    pub violations: Vec<TripleViolation>,
}

/// For every cut vertex `φ` and distinct blocks `B1, B2 ∋ φ`, checks that one
/// of the three has degree at least 3 in `T(Σ)`.
///
/// The bound can fail when `φ` is labelled; such triples are reported. A
/// failure at an unlabelled cut vertex is an error.
pub fn triple_degree_check(t: &BlockCutTree) -> Result<TripleReport> {
    let mut report = TripleReport::default();
    for (k, node) in t.nodes.iter().enumerate() {
        let TreeNode::Vertex(v) = *node else { continue };
        if !t.cut[k] {
            continue;
        }
        let nbrs = &t.adjacency[k];
        for (i, &b1) in nbrs.iter().enumerate() {
            for &b2 in &nbrs[i + 1..] {
                report.checked += 1;
                if t.degree(b1).max(t.degree(b2)).max(t.degree(k)) < 3 {
                    let (TreeNode::Block(c1), TreeNode::Block(c2)) = (t.nodes[b1], t.nodes[b2])
                    else {
                        return Err(Error::InternalInconsistency(
                            "vertex node adjacent to vertex node".into(),
                        ));
                    };
                    report.violations.push(TripleViolation {
                        vertex: v,
                        blocks: (c1, c2),
                        labeled: !t.labels[k].is_empty(),
                    });
                }
            }
        }
    }
    ensure!(
        report.violations.iter().all(|v| v.labeled),
        "degree bound fails at an unlabelled cut vertex: {:?}",
        report.violations
    );
    Ok(report)
}

/// Builds `T(Σ)` and `T_Σ` in one go.
pub fn xtree_of(g: &BunemanGraph) -> Result<(BlockDecomposition, BlockCutTree, XTree)> {
    let blocks = crate::blocks::all_blocks(g)?;
    let tree = block_cut_tree(g, &blocks)?;
    let x = reduce_to_xtree(&tree)?;
    check_block_degrees(g, &blocks, &x)?;
    Ok((blocks, tree, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn build(sys: SplitSystem) -> (BunemanGraph, BlockCutTree, XTree) {
        let g = BunemanGraph::new(sys).unwrap();
        let (_, t, x) = xtree_of(&g).unwrap();
        (g, t, x)
    }

    #[test]
    fn sigma8_trees() {
        let (g, t, x) = build(fixtures::sigma8());
        assert_eq!(t.block_count(), 5);
        assert_eq!(t.node_count(), 21);
        assert_eq!(t.edges().len(), 20);
        assert_eq!(
            x.canonical_form(g.system().ground()),
            "((((()6,()7,()8),()4,()5),()2,()3))1"
        );
        assert!(x.unusual_deletions.is_empty());
        assert!(triple_degree_check(&t).unwrap().violations.is_empty());
    }

    #[test]
    fn companion_systems_share_the_xtree() {
        let (g1, _, x1) = build(fixtures::sigma8());
        let (g2, _, x2) = build(fixtures::sigma8_tree());
        assert!(x1.is_isomorphic(g1.system().ground(), &x2, g2.system().ground()));
    }

    #[test]
    fn single_split_xtree_is_an_edge() {
        let sys = SplitSystem::from_labels(&["a", "b", "c"], &[&["a"]]).unwrap();
        let (g, t, x) = build(sys);
        assert_eq!(t.node_count(), 3);
        assert_eq!(x.node_count(), 2);
        assert_eq!(x.edges, vec![(0, 1)]);
        assert_eq!(x.chains[0], vec![TreeNode::Block(0)]);
        assert_eq!(x.canonical_form(g.system().ground()), "(()b+c)a");
    }

    #[test]
    fn square_is_a_star() {
        let (_, t, x) = build(fixtures::square());
        assert_eq!(t.block_count(), 1);
        assert_eq!(t.degree(0), 4);
        assert_eq!(x.node_count(), 5);
    }

    #[test]
    fn sim_class_examples() {
        let sys = fixtures::sigma8();
        let idx = |n: &str| sys.index_of_name(n).unwrap();
        assert_eq!(
            sim_classes(&sys, &[idx("S67"), idx("S78")]),
            vec![vec![0, 1, 2, 3, 4], vec![5], vec![6], vec![7]]
        );
        assert_eq!(
            sim_classes(&sys, &[idx("S1235"), idx("S45"), idx("S1234")]),
            vec![vec![0, 1, 2], vec![3], vec![4], vec![5, 6, 7]]
        );
        assert_eq!(
            sim_classes(&sys, &[idx("S5")]),
            vec![vec![0, 1, 2, 3, 5, 6, 7], vec![4]]
        );
    }

    #[test]
    fn leaf_bijection_examples() {
        let star = SplitSystem::from_labels(&["a", "b", "c"], &[&["a"], &["b"], &["c"]]).unwrap();
        let (g, t, x) = build(star);
        assert!(leaf_label_bijection_test(&g, &t, &x).unwrap());
        assert!(labels_biject_onto_leaves(&g, &t));
        let merged = SplitSystem::from_labels(&["a", "b", "c"], &[&["a"]]).unwrap();
        let (g, t, x) = build(merged);
        assert!(!leaf_label_bijection_test(&g, &t, &x).unwrap());
        let (g, t, x) = build(fixtures::sigma8());
        assert!(leaf_label_bijection_test(&g, &t, &x).unwrap());
        // four unlabelled non-cut vertices are leaves of T(Σ8)
        assert!(!labels_biject_onto_leaves(&g, &t));
    }

    #[test]
    fn tree_criterion() {
        let (g, _, _) = build(fixtures::sigma8_tree());
        assert!(buneman_tree_criterion(&g).unwrap());
        let (g, _, _) = build(fixtures::square());
        assert!(!buneman_tree_criterion(&g).unwrap());
    }

    #[test]
    fn labeled_cut_vertex_breaks_degree_bound() {
        let (g, t, _) = build(fixtures::labeled_path());
        let r = triple_degree_check(&t).unwrap();
        assert_eq!(r.checked, 1);
        assert_eq!(r.violations.len(), 1);
        assert!(r.violations[0].labeled);
        assert_eq!(r.violations[0].vertex, g.label_vertex(1));
    }

    #[test]
    fn reduction_is_idempotent_and_order_free() {
        let (_, t, x) = build(fixtures::sigma8());
        assert_eq!(reduce_again(&x).unwrap(), x);
        let rev: Vec<usize> = (0..t.node_count()).rev().collect();
        assert_eq!(reduce_to_xtree_in_order(&t, &rev).unwrap(), x);
    }

    #[test]
    fn compatible_xtree_displays_the_splits() {
        let (g, _, x) = build(fixtures::sigma8_tree());
        let got: BTreeSet<String> = x
            .displayed_splits()
            .unwrap()
            .iter()
            .map(|s| format!("{s:?}"))
            .collect();
        let want: BTreeSet<String> = g
            .system()
            .splits()
            .iter()
            .map(|s| format!("{s:?}"))
            .collect();
        assert_eq!(got, want);
    }
}
