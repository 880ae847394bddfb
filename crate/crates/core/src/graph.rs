//! Small undirected-graph toolkit: union-find, connected components,
//! breadth-first distances and Hopcroft–Tarjan lowpoint search for
//! articulation points and biconnected components.

use std::collections::VecDeque;

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Component labels where each component is named by its minimal member.
    pub fn min_labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut min_of_root = vec![usize::MAX; n];
        for x in 0..n {
            let r = self.find(x);
            min_of_root[r] = min_of_root[r].min(x);
        }
        (0..n).map(|x| min_of_root[self.find(x)]).collect()
    }
}

/// Connected components, each named by its minimal member index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub labels: Vec<usize>,
}

impl Components {
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut uf = UnionFind::new(n);
        for (a, b) in edges {
            uf.union(a, b);
        }
        Components {
            labels: uf.min_labels(),
        }
    }

    pub fn count(&self) -> usize {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(i, &l)| i == l)
            .count()
    }

    /// Component ids in ascending order.
    pub fn ids(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(i, &l)| i == l)
            .map(|(i, _)| i)
            .collect()
    }

    /// Members grouped per component, components ordered by id.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut slot = vec![usize::MAX; self.labels.len()];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in self.labels.iter().enumerate() {
            if slot[l] == usize::MAX {
                slot[l] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[l]].push(i);
        }
        groups
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }
}

/// An undirected simple graph on vertices `0..n` with an explicit edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Edges are normalized to `(min, max)`, sorted and deduplicated.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| {
                assert!(a < n && b < n && a != b, "bad edge ({a}, {b}) for n={n}");
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        SimpleGraph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn components(&self) -> Components {
        Components::from_edges(self.n, self.edges.iter().copied())
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().count() == 1
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Subgraph induced on `keep`, relabelled to `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            pos[v] = i;
        }
        SimpleGraph::new(
            keep.len(),
            self.edges
                .iter()
                .filter(|&&(a, b)| pos[a] != usize::MAX && pos[b] != usize::MAX)
                .map(|&(a, b)| (pos[a], pos[b])),
        )
    }
}

/// Breadth-first distances from `source`; `usize::MAX` marks unreachable vertices.
/// Vertices flagged in `blocked` are never entered.
pub fn bfs_distances(adj: &[Vec<usize>], source: usize, blocked: Option<usize>) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if Some(w) == blocked || dist[w] != usize::MAX {
                continue;
            }
            dist[w] = dist[u] + 1;
            queue.push_back(w);
        }
    }
    dist
}

/// Number of shortest paths from `source` to every vertex.
pub fn bfs_geodesic_counts(adj: &[Vec<usize>], source: usize) -> (Vec<usize>, Vec<u128>) {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut count = vec![0u128; adj.len()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    count[source] = 1;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[u] + 1 {
                count[w] += count[u];
            }
        }
    }
    (dist, count)
}

/// Whether the graph minus `removed` is still connected.
pub fn connected_without(adj: &[Vec<usize>], removed: usize) -> bool {
    let n = adj.len();
    if n <= 2 {
        return true;
    }
    let start = if removed == 0 { 1 } else { 0 };
    let dist = bfs_distances(adj, start, Some(removed));
    (0..n).all(|v| v == removed || dist[v] != usize::MAX)
}

/// Articulation points and biconnected components of a connected graph.
#[derive(Debug, Clone)]
pub struct Biconnected {
    /// `true` at index `v` iff `v` is an articulation point.
    pub articulation: Vec<bool>,
    /// Vertex sets of the biconnected components, each sorted, list sorted.
    pub components: Vec<Vec<usize>>,
}

/// Hopcroft–Tarjan lowpoint DFS (iterative).
///
/// Isolated vertices form singleton components.
pub fn biconnected_components(adj: &[Vec<usize>]) -> Biconnected {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut articulation = vec![false; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut time = 0usize;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        if adj[root].is_empty() {
            disc[root] = time;
            time += 1;
            components.push(vec![root]);
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0usize;
        // (vertex, parent, next neighbour position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(frame) = stack.last_mut() {
            let (u, parent, pos) = *frame;
            if pos < adj[u].len() {
                frame.2 += 1;
                let w = adj[u][pos];
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    edge_stack.push((u, w));
                    if u == root {
                        root_children += 1;
                    }
                    stack.push((w, u, 0));
                } else if disc[w] < disc[u] {
                    low[u] = low[u].min(disc[w]);
                    edge_stack.push((u, w));
                }
            } else {
                stack.pop();
                if parent == usize::MAX {
                    continue;
                }
                low[parent] = low[parent].min(low[u]);
                if low[u] >= disc[parent] {
                    if parent != root {
                        articulation[parent] = true;
                    }
                    let mut comp = Vec::new();
                    while let Some((a, b)) = edge_stack.pop() {
                        comp.push(a);
                        comp.push(b);
                        if (a, b) == (parent, u) {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comp.dedup();
                    components.push(comp);
                }
            }
        }
        if root_children > 1 {
            articulation[root] = true;
        }
    }
    components.sort();
    Biconnected {
        articulation,
        components,
    }
}
