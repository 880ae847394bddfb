//! Ground sets, splits and split systems.
//!
//! Elements are addressed by their position in the sorted label order and
//! subsets are bit sequences over that order. A split is stored with its
//! part containing the smallest element first (`Side::A`).

use std::collections::HashMap;
use std::fmt;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::graph::{Components, SimpleGraph};

/// The finite set `X`, labels sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        labels.sort();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateElement(w[0].clone()));
        }
        if labels.len() < 2 {
            return Err(Error::EmptyGroundSet(labels.len()));
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Ok(GroundSet { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn subset<'a, I>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = BitSet::new(self.len());
        for l in labels {
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::UnknownElement(l.to_string()))?;
            bits.insert(i);
        }
        Ok(Subset(bits))
    }

    /// Labels of the members of `s`, in element order.
    pub fn names_of(&self, s: &Subset) -> Vec<&str> {
        s.iter().map(|i| self.label(i)).collect()
    }

    pub fn empty_subset(&self) -> Subset {
        Subset(BitSet::new(self.len()))
    }

    pub fn full_subset(&self) -> Subset {
        Subset(BitSet::full(self.len()))
    }
}

/// A subset of the ground set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(BitSet);

impl Subset {
    pub fn from_bits(bits: BitSet) -> Self {
        Subset(bits)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        Subset(BitSet::from_indices(n, indices))
    }

    pub fn bits(&self) -> &BitSet {
        &self.0
    }

    pub fn universe_size(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.count()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.0.is_full()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn complement(&self) -> Subset {
        Subset(self.0.complement())
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset(self.0.union(&other.0))
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset(self.0.intersection(&other.0))
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        self.0.intersects(&other.0)
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_proper_subset(&self, other: &Subset) -> bool {
        self.0.is_proper_subset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.to_vec()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which part of a split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// The part containing the smallest element.
    A,
    B,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    /// `false` is `A`, `true` is `B`.
    pub fn from_bit(bit: bool) -> Side {
        if bit {
            Side::B
        } else {
            Side::A
        }
    }

    pub fn bit(self) -> bool {
        self == Side::B
    }
}

/// A bipartition of `X` into two proper non-empty parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Split {
    a: Subset,
    b: Subset,
}

impl Split {
    /// Pairs `part` with its complement and orients the result.
    pub fn new(part: Subset) -> Result<Split> {
        if part.is_empty() || part.is_full() {
            return Err(Error::ImproperSplit(0));
        }
        let other = part.complement();
        Ok(if part.contains(0) {
            Split { a: part, b: other }
        } else {
            Split { a: other, b: part }
        })
    }

    pub fn part(&self, side: Side) -> &Subset {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    pub fn part_a(&self) -> &Subset {
        &self.a
    }

    pub fn part_b(&self) -> &Subset {
        &self.b
    }

    pub fn universe_size(&self) -> usize {
        self.a.universe_size()
    }

    /// The side containing element `x`.
    pub fn side_of(&self, x: usize) -> Side {
        if self.a.contains(x) {
            Side::A
        } else {
            Side::B
        }
    }

    /// True iff one of the four part intersections is empty.
    pub fn is_compatible(&self, other: &Split) -> Result<bool> {
        if self.universe_size() != other.universe_size() {
            return Err(Error::GroundSetMismatch);
        }
        Ok(!(self.a.intersects(&other.a)
            && self.a.intersects(&other.b)
            && self.b.intersects(&other.a)
            && self.b.intersects(&other.b)))
    }

    /// The part of `self` meeting both parts of `other`, for compatible distinct splits.
    pub fn a_arrow(&self, other: &Split) -> Result<Side> {
        if self == other {
            return Err(Error::IdenticalSplits(0));
        }
        if !self.is_compatible(other)? {
            return Err(Error::IncompatiblePair(0, 1));
        }
        let meets_both = |p: &Subset| p.intersects(&other.a) && p.intersects(&other.b);
        if meets_both(&self.a) {
            Ok(Side::A)
        } else {
            debug_assert!(meets_both(&self.b));
            Ok(Side::B)
        }
    }
}

impl fmt::Debug for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}|{:?}", self.a, self.b)
    }
}

/// A ground set with an indexed, duplicate-free list of splits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSystem {
    ground: GroundSet,
    splits: Vec<Split>,
    names: Vec<String>,
}

/// Default display name of a split given as `part`: `S` followed by its labels.
pub fn default_split_name(ground: &GroundSet, part: &Subset) -> String {
    let names = ground.names_of(part);
    let sep = if names.iter().all(|n| n.chars().count() == 1) {
        ""
    } else {
        ","
    };
    format!("S{}", names.join(sep))
}

impl SplitSystem {
    pub fn new(ground: GroundSet, raw: Vec<Subset>) -> Result<SplitSystem> {
        let named = raw
            .into_iter()
            .map(|s| (default_split_name(&ground, &s), s))
            .collect();
        SplitSystem::with_names(ground, named)
    }

    /// Builds a system from `(name, part)` pairs; the part is paired with its complement.
    pub fn with_names(ground: GroundSet, raw: Vec<(String, Subset)>) -> Result<SplitSystem> {
        if raw.is_empty() {
            return Err(Error::NoSplits);
        }
        let mut seen: HashMap<Split, usize> = HashMap::new();
        let mut splits = Vec::with_capacity(raw.len());
        let mut names = Vec::with_capacity(raw.len());
        for (index, (name, part)) in raw.into_iter().enumerate() {
            if part.universe_size() != ground.len() {
                return Err(Error::GroundSetMismatch);
            }
            let split = Split::new(part).map_err(|_| Error::ImproperSplit(index))?;
            if let Some(&previous) = seen.get(&split) {
                return Err(Error::DuplicateSplit { index, previous });
            }
            seen.insert(split.clone(), index);
            splits.push(split);
            names.push(name);
        }
        Ok(SplitSystem {
            ground,
            splits,
            names,
        })
    }

    /// Convenience constructor from string labels.
    pub fn from_labels(elements: &[&str], parts: &[&[&str]]) -> Result<SplitSystem> {
        let ground = GroundSet::new(elements.iter().copied())?;
        let raw = parts
            .iter()
            .map(|p| ground.subset(p.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        SplitSystem::new(ground, raw)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn len(&self) -> usize {
        self.splits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.splits.is_empty()
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    pub fn split(&self, i: usize) -> &Split {
        &self.splits[i]
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.splits.len() {
            Ok(())
        } else {
            Err(Error::UnknownSplit(i))
        }
    }

    pub fn compatible(&self, i: usize, j: usize) -> bool {
        self.splits[i]
            .is_compatible(&self.splits[j])
            .expect("splits of one system share the ground set")
    }

    pub fn pairwise_compatible(&self) -> bool {
        (0..self.len()).all(|i| (i + 1..self.len()).all(|j| self.compatible(i, j)))
    }

    /// `A(S_i ↘ S_j)` as a side of split `i`.
    pub fn a_arrow(&self, i: usize, j: usize) -> Result<Side> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::IdenticalSplits(i));
        }
        self.splits[i]
            .a_arrow(&self.splits[j])
            .map_err(|e| match e {
                Error::IncompatiblePair(..) => Error::IncompatiblePair(i, j),
                other => other,
            })
    }

    /// `A(S_i ↘ Σ0)` for a set of splits `component` not containing `i`.
    ///
    /// All members must be compatible with split `i`. In debug builds the
    /// value is checked to agree for every member.
    pub fn a_arrow_component(&self, i: usize, component: &[usize]) -> Result<Side> {
        self.check_index(i)?;
        let (&first, rest) = component
            .split_first()
            .ok_or(Error::UnknownComponent(usize::MAX))?;
        if component.contains(&i) {
            return Err(Error::SplitInComponent {
                split: i,
                component: *component.iter().min().unwrap(),
            });
        }
        let side = self.a_arrow(i, first)?;
        if cfg!(debug_assertions) {
            for &j in rest {
                let other = self.a_arrow(i, j)?;
                crate::error::ensure!(
                    other == side,
                    "A(S{i}↘S{first}) differs from A(S{i}↘S{j}) inside one component"
                );
            }
        }
        Ok(side)
    }

    /// A new system on the same ground set keeping the listed splits in the given order.
    pub fn subsystem(&self, indices: &[usize]) -> Result<SplitSystem> {
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        for &i in indices {
            self.check_index(i)?;
        }
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSplit {
                index: w[1],
                previous: w[0],
            });
        }
        Ok(SplitSystem {
            ground: self.ground.clone(),
            splits: indices.iter().map(|&i| self.splits[i].clone()).collect(),
            names: indices.iter().map(|&i| self.names[i].clone()).collect(),
        })
    }

    pub fn incompatibility_graph(&self) -> IncompatibilityGraph {
        let m = self.len();
        let graph = SimpleGraph::new(
            m,
            (0..m).flat_map(|i| {
                (i + 1..m)
                    .filter(move |&j| !self.compatible(i, j))
                    .map(move |j| (i, j))
            }),
        );
        let components = graph.components();
        IncompatibilityGraph {
            groups: components.groups(),
            graph,
            components,
        }
    }

    /// Human-readable form `{a,b}|{c,d}` of split `i`.
    pub fn describe(&self, i: usize) -> String {
        let s = &self.splits[i];
        format!(
            "{{{}}}|{{{}}}",
            self.ground.names_of(s.part_a()).join(","),
            self.ground.names_of(s.part_b()).join(",")
        )
    }
}

/// Graph on split indices whose edges are the incompatible pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncompatibilityGraph {
    graph: SimpleGraph,
    components: Components,
    groups: Vec<Vec<usize>>,
}

impl IncompatibilityGraph {
    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        self.graph.edges()
    }

    pub fn component_count(&self) -> usize {
        self.groups.len()
    }

    /// Component id (its minimal split index) of split `i`.
    pub fn component_of(&self, i: usize) -> usize {
        self.components.labels[i]
    }

    /// Member lists, ordered by component id.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn component_ids(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g[0]).collect()
    }

    pub fn members(&self, id: usize) -> Result<&[usize]> {
        self.groups
            .iter()
            .find(|g| g[0] == id)
            .map(|g| g.as_slice())
            .ok_or(Error::UnknownComponent(id))
    }

    pub fn is_connected(&self) -> bool {
        self.groups.len() == 1
    }
}
