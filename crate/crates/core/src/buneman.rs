//! The Buneman graph of a split system.
//!
//! A vertex is a side selection choosing one part of every split such that
//! any two chosen parts intersect. Two vertices are adjacent when they differ
//! on exactly one split, the edge's type. Side selections are bit sequences
//! over split indices (bit `i` set iff split `i` maps to its `B` part), and
//! vertices are ordered by that bit sequence read as an integer.

use std::collections::HashMap;

use crate::bits::BitSet;
use crate::error::{ensure, Error, Result};
use crate::graph::{bfs_distances, Components};
use crate::par::{self, Execution};
use crate::splits::{Side, SplitSystem, Subset};

/// How `V(Σ)` is enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Test every one of the `2^m` side selections.
    Brute,
    /// Extend partial selections split by split, keeping only valid extensions.
    #[default]
    Incremental,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "brute" => Ok(Strategy::Brute),
            "incremental" => Ok(Strategy::Incremental),
            other => Err(format!("unknown strategy {other:?} (brute|incremental)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest split count accepted by brute-force enumeration.
    pub brute_max_splits: usize,
    /// Largest split count accepted by any enumeration.
    pub max_splits: usize,
    /// Largest difference set for which geodesics are counted.
    pub path_count_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            brute_max_splits: 24,
            max_splits: 4096,
            path_count_max: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub strategy: Strategy,
    pub limits: Limits,
    /// Run the cross-checks attached to each operation.
    pub verify: bool,
    pub execution: Execution,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            strategy: Strategy::default(),
            limits: Limits::default(),
            verify: cfg!(debug_assertions),
            execution: Execution::default(),
        }
    }
}

/// A set of split indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaSet(BitSet);

impl DeltaSet {
    pub fn empty(m: usize) -> Self {
        DeltaSet(BitSet::new(m))
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(m: usize, indices: I) -> Self {
        DeltaSet(BitSet::from_indices(m, indices))
    }

    pub fn bits(&self) -> &BitSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.to_vec()
    }

    pub fn union(&self, other: &DeltaSet) -> DeltaSet {
        DeltaSet(self.0.union(&other.0))
    }

    pub fn intersects(&self, other: &DeltaSet) -> bool {
        self.0.intersects(&other.0)
    }

    pub fn is_subset(&self, other: &DeltaSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl std::fmt::Debug for DeltaSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A side selection over all splits; a vertex when chosen parts pairwise meet.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexMap(BitSet);

impl VertexMap {
    pub fn from_sides(sides: BitSet) -> Self {
        VertexMap(sides)
    }

    pub fn from_fn(m: usize, f: impl Fn(usize) -> Side) -> Self {
        VertexMap(BitSet::from_indices(m, (0..m).filter(|&i| f(i).bit())))
    }

    /// The map `x ↦ S(x)` sending each split to the part containing `x`.
    pub fn labeling(system: &SplitSystem, x: usize) -> Self {
        VertexMap::from_fn(system.len(), |i| system.split(i).side_of(x))
    }

    pub fn sides(&self) -> &BitSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() == 0
    }

    pub fn side(&self, i: usize) -> Side {
        Side::from_bit(self.0.contains(i))
    }

    pub fn image<'a>(&self, system: &'a SplitSystem, i: usize) -> &'a Subset {
        system.split(i).part(self.side(i))
    }

    /// Flips the side of every split in `xi`.
    pub fn flip(&self, xi: &DeltaSet) -> VertexMap {
        VertexMap(self.0.symmetric_difference(xi.bits()))
    }

    pub fn flip_one(&self, i: usize) -> VertexMap {
        let mut out = self.clone();
        out.0.toggle(i);
        out
    }

    pub fn delta(&self, other: &VertexMap) -> Result<DeltaSet> {
        if self.len() != other.len() {
            return Err(Error::SystemMismatch);
        }
        Ok(DeltaSet(self.0.symmetric_difference(&other.0)))
    }

    pub fn distance(&self, other: &VertexMap) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::SystemMismatch);
        }
        Ok(self.0.hamming(&other.0))
    }

    /// Per-split majority vote.
    pub fn median(a: &VertexMap, b: &VertexMap, c: &VertexMap) -> Result<VertexMap> {
        if a.len() != b.len() || b.len() != c.len() {
            return Err(Error::SystemMismatch);
        }
        let ab = a.0.intersection(&b.0);
        let ac = a.0.intersection(&c.0);
        let bc = b.0.intersection(&c.0);
        Ok(VertexMap(ab.union(&ac).union(&bc)))
    }

    /// Direct pairwise test that all chosen parts intersect.
    pub fn is_vertex_of(&self, system: &SplitSystem) -> bool {
        let m = system.len();
        self.len() == m
            && (0..m).all(|i| {
                let a = self.image(system, i);
                (i + 1..m).all(|j| a.intersects(self.image(system, j)))
            })
    }

    /// Splits whose image is inclusion-minimal among all images.
    pub fn min_image(&self, system: &SplitSystem) -> Result<DeltaSet> {
        if self.len() != system.len() {
            return Err(Error::SystemMismatch);
        }
        if !self.is_vertex_of(system) {
            return Err(Error::NotAVertex);
        }
        Ok(min_image_unchecked(system, self))
    }
}

impl std::fmt::Debug for VertexMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "φ[{}]", self.0.to_bit_string())
    }
}

fn min_image_unchecked(system: &SplitSystem, map: &VertexMap) -> DeltaSet {
    let m = system.len();
    let images: Vec<&Subset> = (0..m).map(|i| map.image(system, i)).collect();
    DeltaSet::from_indices(
        m,
        (0..m).filter(|&i| !(0..m).any(|j| j != i && images[j].is_proper_subset(images[i]))),
    )
}

/// Per split and side, the earlier splits whose `A` (resp. `B`) part is disjoint from it.
struct ClashTable {
    lower: Vec<[(BitSet, BitSet); 2]>,
}

impl ClashTable {
    fn new(system: &SplitSystem) -> Self {
        let m = system.len();
        let lower = (0..m)
            .map(|k| {
                let make = |side: Side| {
                    let part = system.split(k).part(side);
                    let a = BitSet::from_indices(
                        m,
                        (0..k).filter(|&j| !part.intersects(system.split(j).part_a())),
                    );
                    let b = BitSet::from_indices(
                        m,
                        (0..k).filter(|&j| !part.intersects(system.split(j).part_b())),
                    );
                    (a, b)
                };
                [make(Side::A), make(Side::B)]
            })
            .collect();
        ClashTable { lower }
    }

    /// Whether choosing `side` for split `k` clashes with the choices in `sides` below `k`.
    #[inline]
    fn extends(&self, sides: &BitSet, k: usize, side: Side) -> bool {
        let (clash_a, clash_b) = &self.lower[k][side.bit() as usize];
        clash_a.is_subset(sides) && !clash_b.intersects(sides)
    }

    fn is_vertex(&self, sides: &BitSet) -> bool {
        (0..sides.len()).all(|k| self.extends(sides, k, Side::from_bit(sides.contains(k))))
    }
}

/// Enumerates `V(Σ)` in canonical order.
pub fn enumerate_vertices(
    system: &SplitSystem,
    strategy: Strategy,
    limits: &Limits,
    exec: Execution,
) -> Result<Vec<VertexMap>> {
    let m = system.len();
    if m > limits.max_splits {
        return Err(Error::CapExceeded {
            what: "split count",
            limit: limits.max_splits,
            actual: m,
        });
    }
    let table = ClashTable::new(system);
    let mut out = match strategy {
        Strategy::Brute => {
            let cap = limits.brute_max_splits.min(63);
            if m > cap {
                return Err(Error::CapExceeded {
                    what: "split count for brute-force enumeration",
                    limit: cap,
                    actual: m,
                });
            }
            par::filter_map_range(exec, 1u64 << m, |bits| {
                let sides = BitSet::from_u64(m, bits);
                table.is_vertex(&sides).then(|| VertexMap(sides))
            })
        }
        Strategy::Incremental => {
            let mut partial = vec![BitSet::new(m)];
            for k in 0..m {
                partial = par::flat_map(exec, &partial, |p| {
                    let mut next = Vec::with_capacity(2);
                    if table.extends(p, k, Side::A) {
                        next.push(p.clone());
                    }
                    if table.extends(p, k, Side::B) {
                        let mut q = p.clone();
                        q.insert(k);
                        next.push(q);
                    }
                    next
                });
            }
            partial.into_iter().map(VertexMap).collect()
        }
    };
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Index of the split on which the endpoints differ.
    pub split: usize,
}

/// `B(Σ)` with its vertex set, typed edges and element labeling.
#[derive(Debug, Clone)]
pub struct BunemanGraph {
    system: SplitSystem,
    vertices: Vec<VertexMap>,
    index: HashMap<VertexMap, usize>,
    adjacency: Vec<Vec<(usize, usize)>>,
    edges: Vec<Edge>,
    labeling: Vec<usize>,
    labels_at: Vec<Vec<usize>>,
    options: Options,
}

impl BunemanGraph {
    pub fn build(system: SplitSystem, options: &Options) -> Result<Self> {
        let vertices = enumerate_vertices(
            &system,
            options.strategy,
            &options.limits,
            options.execution,
        )?;
        let m = system.len();
        let index: HashMap<VertexMap, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let adjacency: Vec<Vec<(usize, usize)>> = par::map(options.execution, &vertices, |v| {
            (0..m)
                .filter_map(|i| index.get(&v.flip_one(i)).map(|&w| (i, w)))
                .collect()
        });
        let mut edges: Vec<Edge> = adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| {
                nb.iter()
                    .filter(move |&&(_, w)| u < w)
                    .map(move |&(split, v)| Edge { u, v, split })
            })
            .collect();
        edges.sort();

        let n = system.n();
        let mut labeling = Vec::with_capacity(n);
        let mut labels_at = vec![Vec::new(); vertices.len()];
        for x in 0..n {
            let v = *index
                .get(&VertexMap::labeling(&system, x))
                .ok_or_else(|| Error::InternalInconsistency(format!("φ_{x} missing from V(Σ)")))?;
            labeling.push(v);
            labels_at[v].push(x);
        }
        let g = BunemanGraph {
            system,
            vertices,
            index,
            adjacency,
            edges,
            labeling,
            labels_at,
            options: *options,
        };
        if options.verify {
            g.verify_structure()?;
        }
        Ok(g)
    }

    /// Builds with default options.
    pub fn new(system: SplitSystem) -> Result<Self> {
        BunemanGraph::build(system, &Options::default())
    }

    fn verify_structure(&self) -> Result<()> {
        ensure!(self.vertices.len() >= 2, "|V(Σ)| < 2");
        let dist = bfs_distances(&self.adjacency_lists(), 0, None);
        ensure!(
            dist.iter().all(|&d| d != usize::MAX),
            "Buneman graph is disconnected"
        );
        for v in &self.vertices {
            ensure!(v.is_vertex_of(&self.system), "{v:?} violates BG2");
        }
        Ok(())
    }

    pub fn system(&self) -> &SplitSystem {
        &self.system
    }

    pub fn options(&self) -> &Options {
        &self.options
    }

    pub fn verify_enabled(&self) -> bool {
        self.options.verify
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexMap] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &VertexMap {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Index of `map` in `V(Σ)`, or `NotAVertex`.
    pub fn vertex_id(&self, map: &VertexMap) -> Result<usize> {
        if map.len() != self.system.len() {
            return Err(Error::SystemMismatch);
        }
        self.index.get(map).copied().ok_or(Error::NotAVertex)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// `(split, neighbour)` pairs of `v`, ordered by split.
    pub fn adjacency(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    /// Plain neighbour lists, for graph algorithms.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        self.adjacency
            .iter()
            .map(|nb| nb.iter().map(|&(_, w)| w).collect())
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Vertex index of `φ_x`.
    pub fn label_vertex(&self, x: usize) -> usize {
        self.labeling[x]
    }

    pub fn labeling(&self) -> &[usize] {
        &self.labeling
    }

    /// Elements `x` with `φ_x = v`.
    pub fn labels_at(&self, v: usize) -> &[usize] {
        &self.labels_at[v]
    }

    pub fn is_labeled(&self, v: usize) -> bool {
        !self.labels_at[v].is_empty()
    }

    pub fn image(&self, v: usize, split: usize) -> &Subset {
        self.vertices[v].image(&self.system, split)
    }

    pub fn delta(&self, a: usize, b: usize) -> DeltaSet {
        DeltaSet(self.vertices[a].0.symmetric_difference(&self.vertices[b].0))
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.vertices[a].0.hamming(&self.vertices[b].0)
    }

    /// `Σ^(φ)`: splits with inclusion-minimal `φ`-image.
    pub fn min_image(&self, v: usize) -> Result<DeltaSet> {
        self.check_vertex(v)?;
        let mins = min_image_unchecked(&self.system, &self.vertices[v]);
        if self.options.verify {
            // Minimal images are exactly the flips that stay inside V(Σ).
            let m = self.system.len();
            let flips = DeltaSet::from_indices(
                m,
                (0..m).filter(|&i| self.vertices[v].flip_one(i).is_vertex_of(&self.system)),
            );
            ensure!(
                flips == mins,
                "Σ^(φ) {mins:?} differs from valid flips {flips:?}"
            );
        }
        Ok(mins)
    }

    /// Neighbours as `{φ^S : S ∈ Σ^(φ)}`, paired with the edge type.
    pub fn neighbors(&self, v: usize) -> Result<Vec<(usize, usize)>> {
        let mins = self.min_image(v)?;
        let mut out = Vec::with_capacity(mins.len());
        for s in mins.iter() {
            let w = self
                .index
                .get(&self.vertices[v].flip_one(s))
                .copied()
                .ok_or_else(|| {
                    Error::InternalInconsistency(format!("flip of {v} along {s} is not a vertex"))
                })?;
            out.push((s, w));
        }
        if self.options.verify {
            ensure!(
                out == self.adjacency[v],
                "neighbours of {v} from Σ^(φ) differ from the |Δ|=1 scan"
            );
        }
        Ok(out)
    }

    /// Vertex index of the median of three vertices.
    pub fn median(&self, a: usize, b: usize, c: usize) -> Result<usize> {
        for v in [a, b, c] {
            self.check_vertex(v)?;
        }
        let med = VertexMap::median(&self.vertices[a], &self.vertices[b], &self.vertices[c])?;
        let id = self.index.get(&med).copied().ok_or_else(|| {
            Error::InternalInconsistency(format!("median of {a},{b},{c} is not a vertex"))
        })?;
        if self.options.verify {
            for (x, y) in [(a, b), (a, c), (b, c)] {
                ensure!(
                    self.distance(x, y) == self.distance(x, id) + self.distance(id, y),
                    "median {id} is not between {x} and {y}"
                );
            }
        }
        Ok(id)
    }

    /// Number of geodesics from `from` to `to`, counted as linear extensions
    /// of the inclusion order on `from`'s images of `Δ(from, to)`.
    pub fn shortest_path_count(&self, from: usize, to: usize) -> Result<u128> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        let delta: Vec<usize> = self.delta(from, to).to_vec();
        let k = delta.len();
        if k > self.options.limits.path_count_max {
            return Err(Error::CapExceeded {
                what: "difference set size for path counting",
                limit: self.options.limits.path_count_max,
                actual: k,
            });
        }
        let images: Vec<&Subset> = delta.iter().map(|&s| self.image(from, s)).collect();
        Ok(count_linear_extensions(&images))
    }

    /// Whether every geodesic from `from` to `to` passes through `via`.
    pub fn mandatory_vertex(&self, from: usize, to: usize, via: usize) -> Result<bool> {
        for v in [from, to, via] {
            self.check_vertex(v)?;
        }
        let d_fv = self.delta(from, via);
        let d_vt = self.delta(via, to);
        let on_interval =
            self.distance(from, to) == self.distance(from, via) + self.distance(via, to);
        let ordered = d_fv.iter().all(|s| {
            d_vt.iter()
                .all(|t| self.image(from, s).is_proper_subset(self.image(from, t)))
        });
        let mandatory = on_interval && ordered;
        if self.options.verify {
            // A geodesic avoiding `via` exists iff `via` is off the interval or
            // two splits on either side have images not covering X.
            let d_tv = self.delta(to, via);
            let escape = d_fv.iter().any(|s| {
                d_tv.iter()
                    .any(|t| !self.image(via, s).union(self.image(via, t)).is_full())
            });
            let avoidable = !on_interval || escape;
            ensure!(
                mandatory != avoidable,
                "mandatory-vertex criteria disagree for ({from},{to},{via})"
            );
        }
        Ok(mandatory)
    }

    /// The two components left after deleting all edges of type `split`.
    pub fn kappa_cutset(&self, split: usize) -> Result<Cutset> {
        if split >= self.system.len() {
            return Err(Error::UnknownSplit(split));
        }
        let comps = Components::from_edges(
            self.vertices.len(),
            self.edges
                .iter()
                .filter(|e| e.split != split)
                .map(|e| (e.u, e.v)),
        );
        let groups = comps.groups();
        ensure!(
            groups.len() == 2,
            "removing edges of type {split} leaves {} components",
            groups.len()
        );
        let on_a = |v: usize| self.vertices[v].side(split) == Side::A;
        let (side_a, side_b) = if on_a(groups[0][0]) {
            (groups[0].clone(), groups[1].clone())
        } else {
            (groups[1].clone(), groups[0].clone())
        };
        ensure!(
            side_a.iter().all(|&v| on_a(v)) && side_b.iter().all(|&v| !on_a(v)),
            "cutset components of {split} do not follow the split sides"
        );
        let sp = self.system.split(split);
        for x in 0..self.system.n() {
            let expected = if sp.side_of(x) == Side::A {
                &side_a
            } else {
                &side_b
            };
            ensure!(
                expected.binary_search(&self.labeling[x]).is_ok(),
                "φ_{x} on the wrong side of the {split}-cutset"
            );
        }
        Ok(Cutset { side_a, side_b })
    }

    /// The restriction morphism onto `B(Σ')` for the splits `kept`.
    pub fn restrict(&self, kept: &[usize]) -> Result<Restriction> {
        let sub_system = self.system.subsystem(kept)?;
        let target = BunemanGraph::build(sub_system, &self.options)?;
        let mut map = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let r = VertexMap::from_fn(kept.len(), |j| v.side(kept[j]));
            let id = target.index.get(&r).copied().ok_or_else(|| {
                Error::InternalInconsistency(format!("restriction of {v:?} is not a vertex"))
            })?;
            map.push(id);
        }
        let mut hit = vec![false; target.vertex_count()];
        for &t in &map {
            hit[t] = true;
        }
        ensure!(hit.iter().all(|&h| h), "restriction is not surjective");
        for e in &self.edges {
            let (a, b) = (map[e.u], map[e.v]);
            match kept.iter().position(|&s| s == e.split) {
                None => ensure!(a == b, "edge of dropped type {} not contracted", e.split),
                Some(j) => ensure!(
                    target.adjacency[a].contains(&(j, b)),
                    "edge of kept type {} not mapped to a same-type edge",
                    e.split
                ),
            }
        }
        Ok(Restriction {
            kept: kept.to_vec(),
            target,
            map,
        })
    }
}

/// Counts linear extensions of the strict inclusion order on `images`.
pub(crate) fn count_linear_extensions(images: &[&Subset]) -> u128 {
    let k = images.len();
    let below: Vec<u32> = (0..k)
        .map(|e| {
            (0..k)
                .filter(|&f| f != e && images[f].is_proper_subset(images[e]))
                .fold(0u32, |acc, f| acc | (1 << f))
        })
        .collect();
    let mut ways = vec![0u128; 1 << k];
    ways[0] = 1;
    for mask in 0..(1usize << k) {
        let w = ways[mask];
        if w == 0 {
            continue;
        }
        for e in 0..k {
            if mask & (1 << e) == 0 && (below[e] as usize) & !mask == 0 {
                ways[mask | (1 << e)] += w;
            }
        }
    }
    ways[(1 << k) - 1]
}

/// Vertex sets on the two sides of a `κ`-cutset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cutset {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

/// `res_{Σ→Σ'}` as a vertex map into the Buneman graph of the kept splits.
#[derive(Debug, Clone)]
pub struct Restriction {
    /// Original split indices, in the order of the target system.
    pub kept: Vec<usize>,
    pub target: BunemanGraph,
    /// `map[v]` is the target vertex of source vertex `v`.
    pub map: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn graph(elements: &[&str], parts: &[&[&str]]) -> BunemanGraph {
        BunemanGraph::new(SplitSystem::from_labels(elements, parts).unwrap()).unwrap()
    }

    #[test]
    fn single_split_is_k2() {
        let g = graph(&["a", "b", "c"], &[&["a"]]);
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
        for v in 0..2 {
            assert_eq!(g.neighbors(v).unwrap().len(), 1);
            assert_eq!(g.min_image(v).unwrap().to_vec(), vec![0]);
        }
        let cut = g.kappa_cutset(0).unwrap();
        assert_eq!((cut.side_a.len(), cut.side_b.len()), (1, 1));
    }

    #[test]
    fn incompatible_pair_is_square() {
        let g = graph(&["a", "b", "c", "d"], &[&["a", "b"], &["a", "c"]]);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        for v in 0..4 {
            assert_eq!(g.degree(v), 2);
        }
        // antipodes
        assert_eq!(g.distance(0, 3), 2);
        assert_eq!(g.shortest_path_count(0, 3).unwrap(), 2);
        for s in 0..2 {
            let cut = g.kappa_cutset(s).unwrap();
            assert_eq!((cut.side_a.len(), cut.side_b.len()), (2, 2));
        }
    }

    #[test]
    fn compatible_pair_is_path() {
        // {a} ∩ {c} = ∅ excludes one side selection.
        let g = graph(&["a", "b", "c"], &[&["a"], &["c"]]);
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
    }

    #[test]
    fn sigma8_golden_counts() {
        // Frozen from a brute-force scan of all 512 side selections.
        let g = BunemanGraph::new(fixtures::sigma8()).unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.edge_count(), 22);
    }

    #[test]
    fn strategies_agree_on_sigma8() {
        let sys = fixtures::sigma8();
        let lim = Limits::default();
        let a = enumerate_vertices(&sys, Strategy::Brute, &lim, Execution::Sequential).unwrap();
        let b = enumerate_vertices(&sys, Strategy::Incremental, &lim, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn brute_cap() {
        let sys = fixtures::sigma8();
        let lim = Limits {
            brute_max_splits: 8,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_vertices(&sys, Strategy::Brute, &lim, Execution::Sequential),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn flips_and_deltas() {
        let g = BunemanGraph::new(fixtures::sigma8()).unwrap();
        let (a, b) = (g.vertex(0), g.vertex(7));
        assert!(a.delta(a).unwrap().is_empty());
        assert_eq!(a.flip(&DeltaSet::empty(9)), *a);
        let xi = DeltaSet::from_indices(9, [1, 4, 8]);
        assert_eq!(a.flip(&xi).flip(&xi), *a);
        assert_eq!(a.flip(&a.delta(b).unwrap()), *b);
        assert_eq!(
            a.delta(&VertexMap::from_fn(3, |_| Side::A)),
            Err(Error::SystemMismatch)
        );
    }

    #[test]
    fn median_basics() {
        let g = BunemanGraph::new(fixtures::sigma8()).unwrap();
        assert_eq!(g.median(3, 3, 9).unwrap(), 3);
        let m = g.median(1, 5, 12).unwrap();
        for (a, b, c) in [(1, 12, 5), (5, 1, 12), (12, 5, 1)] {
            assert_eq!(g.median(a, b, c).unwrap(), m);
        }
    }

    #[test]
    fn not_a_vertex() {
        let sys = SplitSystem::from_labels(&["a", "b", "c"], &[&["a"], &["c"]]).unwrap();
        // choose {a} and {c}: disjoint
        let bad = VertexMap::from_fn(2, |i| if i == 0 { Side::A } else { Side::B });
        assert_eq!(sys.split(1).part(Side::B).to_vec(), vec![2]);
        assert_eq!(bad.min_image(&sys), Err(Error::NotAVertex));
        let g = BunemanGraph::new(sys).unwrap();
        assert_eq!(g.vertex_id(&bad), Err(Error::NotAVertex));
    }

    #[test]
    fn mandatory_endpoints() {
        let g = BunemanGraph::new(fixtures::sigma8()).unwrap();
        for a in 0..g.vertex_count() {
            for b in 0..g.vertex_count() {
                assert!(g.mandatory_vertex(a, b, a).unwrap());
                assert!(g.mandatory_vertex(a, b, b).unwrap());
            }
        }
    }

    #[test]
    fn restriction_to_incompatible_pair_is_square() {
        let sys = fixtures::sigma8();
        let (s67, s78) = (
            sys.index_of_name("S67").unwrap(),
            sys.index_of_name("S78").unwrap(),
        );
        let g = BunemanGraph::new(sys).unwrap();
        let r = g.restrict(&[s67, s78]).unwrap();
        assert_eq!(r.target.vertex_count(), 4);
        assert_eq!(r.target.edge_count(), 4);
        let id = g.restrict(&(0..9).collect::<Vec<_>>()).unwrap();
        assert_eq!(id.map, (0..g.vertex_count()).collect::<Vec<_>>());
        assert!(matches!(g.restrict(&[]), Err(Error::EmptySubset)));
    }
}
