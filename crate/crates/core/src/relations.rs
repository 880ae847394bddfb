//! Component correspondences of a bipartite relation `R ⊆ U × V`.
//!
//! `Γ(R)` is the bipartite graph on `U ⊔ V`, `Γ(R|U)` joins two members of
//! `U` sharing a partner in `V`, and `Γ(R|V)` is the mirror image. Without
//! isolated vertices the three graphs have matching component sets, and a
//! pair of maps `α: U' → U`, `β: V' → V` satisfying (M1)/(M2) lifts this
//! matching to the pulled-back relations.

use std::collections::BTreeMap;

use crate::error::{ensure, Error, RelationSide, Result};
use crate::graph::{Components, SimpleGraph, UnionFind};

/// A relation between `0..u_size` and `0..v_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiRelation {
    u_size: usize,
    v_size: usize,
    pairs: Vec<(usize, usize)>,
    by_u: Vec<Vec<usize>>,
    by_v: Vec<Vec<usize>>,
}

impl BiRelation {
    pub fn new(
        u_size: usize,
        v_size: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        for &(u, v) in &pairs {
            if u >= u_size {
                return Err(Error::RelationIndex {
                    side: RelationSide::U,
                    index: u,
                });
            }
            if v >= v_size {
                return Err(Error::RelationIndex {
                    side: RelationSide::V,
                    index: v,
                });
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        let mut by_u = vec![Vec::new(); u_size];
        let mut by_v = vec![Vec::new(); v_size];
        for &(u, v) in &pairs {
            by_u[u].push(v);
            by_v[v].push(u);
        }
        Ok(BiRelation {
            u_size,
            v_size,
            pairs,
            by_u,
            by_v,
        })
    }

    pub fn u_size(&self) -> usize {
        self.u_size
    }

    pub fn v_size(&self) -> usize {
        self.v_size
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.by_u[u].binary_search(&v).is_ok()
    }

    pub fn partners_of_u(&self, u: usize) -> &[usize] {
        &self.by_u[u]
    }

    pub fn partners_of_v(&self, v: usize) -> &[usize] {
        &self.by_v[v]
    }

    /// `Γ(R|U)`: `u1 ~ u2` iff they share a partner.
    pub fn project_u(&self) -> SimpleGraph {
        SimpleGraph::new(self.u_size, clique_edges(&self.by_v))
    }

    /// `Γ(R|V)`: `v1 ~ v2` iff they share a partner.
    pub fn project_v(&self) -> SimpleGraph {
        SimpleGraph::new(self.v_size, clique_edges(&self.by_u))
    }

    fn first_isolated(&self) -> Option<Error> {
        if let Some(u) = (0..self.u_size).find(|&u| self.by_u[u].is_empty()) {
            return Some(Error::IsolatedVertex {
                side: RelationSide::U,
                index: u,
            });
        }
        (0..self.v_size)
            .find(|&v| self.by_v[v].is_empty())
            .map(|v| Error::IsolatedVertex {
                side: RelationSide::V,
                index: v,
            })
    }

    /// Components of `Γ(R)`, `Γ(R|U)`, `Γ(R|V)` and the matching between them.
    pub fn component_bijection(&self) -> Result<ComponentMap> {
        if let Some(e) = self.first_isolated() {
            return Err(e);
        }
        let u_comp = self.project_u().components();
        let v_comp = self.project_v().components();

        // Γ(R) itself, on U ⊔ V with V offset by |U|.
        let mut uf = UnionFind::new(self.u_size + self.v_size);
        for &(u, v) in &self.pairs {
            uf.union(u, self.u_size + v);
        }
        let joint = uf.min_labels();
        let pair_labels: Vec<usize> = self.pairs.iter().map(|&(u, _)| joint[u]).collect();

        let u_to_v: BTreeMap<usize, usize> = self
            .pairs
            .iter()
            .map(|&(u, v)| (u_comp.labels[u], v_comp.labels[v]))
            .collect();
        let map = ComponentMap {
            u_labels: u_comp.labels,
            v_labels: v_comp.labels,
            pair_labels,
            u_to_v,
        };
        map.verify(self, &joint)?;
        Ok(map)
    }

    /// Component correspondences lifted along `alpha: U' → U` and `beta: V' → V`.
    ///
    /// `alpha[i]` is the image of `i ∈ U'`, `beta[j]` the image of `j ∈ V'`.
    pub fn lifted_bijection(&self, alpha: &[usize], beta: &[usize]) -> Result<LiftedComponents> {
        for &a in alpha {
            if a >= self.u_size {
                return Err(Error::RelationIndex {
                    side: RelationSide::U,
                    index: a,
                });
            }
        }
        for &b in beta {
            if b >= self.v_size {
                return Err(Error::RelationIndex {
                    side: RelationSide::V,
                    index: b,
                });
            }
        }
        self.check_m1(beta)?;
        self.check_m2(alpha)?;

        let lifted = BiRelation::new(
            alpha.len(),
            beta.len(),
            alpha.iter().enumerate().flat_map(|(i, &a)| {
                beta.iter()
                    .enumerate()
                    .filter(move |&(_, &b)| self.contains(a, b))
                    .map(move |(j, _)| (i, j))
            }),
        )?;
        let r_alpha = BiRelation::new(
            alpha.len(),
            self.v_size,
            alpha
                .iter()
                .enumerate()
                .flat_map(|(i, &a)| self.by_u[a].iter().map(move |&v| (i, v))),
        )?;
        let r_beta = BiRelation::new(
            self.u_size,
            beta.len(),
            beta.iter()
                .enumerate()
                .flat_map(|(j, &b)| self.by_v[b].iter().map(move |&u| (u, j))),
        )?;

        let base = self.component_bijection()?;
        let top = lifted.component_bijection()?;
        let left = r_alpha.component_bijection()?;
        let right = r_beta.component_bijection()?;

        // Graph coincidences.
        ensure!(
            r_alpha.project_v() == self.project_v(),
            "Γ(R_α|V) differs from Γ(R|V)"
        );
        ensure!(
            r_beta.project_u() == self.project_u(),
            "Γ(R_β|U) differs from Γ(R|U)"
        );
        let pulled_u = pull_back(&self.project_u(), alpha);
        ensure!(
            r_alpha.project_u() == lifted.project_u() && lifted.project_u() == pulled_u,
            "Γ(R_α|U'), Γ(R'|U') and the α-pullback of Γ(R|U) disagree"
        );
        let pulled_v = pull_back(&self.project_v(), beta);
        ensure!(
            r_beta.project_v() == lifted.project_v() && lifted.project_v() == pulled_v,
            "Γ(R_β|V'), Γ(R'|V') and the β-pullback of Γ(R|V) disagree"
        );

        let counts = [
            top.count(),
            left.count(),
            right.count(),
            top.u_component_count(),
            top.v_component_count(),
            base.count(),
        ];
        ensure!(
            counts.iter().all(|&c| c == counts[0]),
            "component counts differ across the lifted diagram: {counts:?}"
        );

        // α and β induce maps on components; both must be bijections.
        let alpha_map = induced_map(&top.u_labels, &base.u_labels, alpha)?;
        let beta_map = induced_map(&top.v_labels, &base.v_labels, beta)?;
        ensure!(
            alpha_map.len() == counts[0] && beta_map.len() == counts[0],
            "induced component maps are not bijections"
        );
        let alpha_image: std::collections::BTreeSet<_> = alpha_map.values().collect();
        let beta_image: std::collections::BTreeSet<_> = beta_map.values().collect();
        ensure!(
            alpha_image.len() == counts[0] && beta_image.len() == counts[0],
            "induced component maps are not injective"
        );

        // The square commutes: going across then down equals down then across.
        for (&a_top, &b_top) in &top.u_to_v {
            let via_u = base.u_to_v[&alpha_map[&a_top]];
            let via_v = beta_map[&b_top];
            ensure!(
                via_u == via_v,
                "lifted diagram does not commute at U'-component {a_top}"
            );
        }

        let lc = LiftedComponents {
            base,
            top,
            alpha_map,
            beta_map,
        };
        lc.verify_statements(self, &lifted, alpha, beta)?;
        Ok(lc)
    }

    /// (M1): every pair `u1, u2` sharing a partner also shares one in `β(V')`.
    fn check_m1(&self, beta: &[usize]) -> Result<()> {
        for v in 0..self.v_size {
            let us = &self.by_v[v];
            for (i, &u1) in us.iter().enumerate() {
                for &u2 in &us[i..] {
                    let ok = beta
                        .iter()
                        .any(|&b| self.contains(u1, b) && self.contains(u2, b));
                    if !ok {
                        return Err(Error::M1Violation { u1, u2, v });
                    }
                }
            }
        }
        Ok(())
    }

    /// (M2): every pair `v1, v2` sharing a partner also shares one in `α(U')`.
    fn check_m2(&self, alpha: &[usize]) -> Result<()> {
        for u in 0..self.u_size {
            let vs = &self.by_u[u];
            for (i, &v1) in vs.iter().enumerate() {
                for &v2 in &vs[i..] {
                    let ok = alpha
                        .iter()
                        .any(|&a| self.contains(a, v1) && self.contains(a, v2));
                    if !ok {
                        return Err(Error::M2Violation { v1, v2, u });
                    }
                }
            }
        }
        Ok(())
    }
}

fn clique_edges(groups: &[Vec<usize>]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for g in groups {
        for (i, &a) in g.iter().enumerate() {
            for &b in &g[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Graph on the domain of `map` with `i ~ j` iff `map[i] ~ map[j]` or `map[i] = map[j]`.
fn pull_back(graph: &SimpleGraph, map: &[usize]) -> SimpleGraph {
    let mut edges = Vec::new();
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            if map[i] == map[j] || graph.has_edge(map[i], map[j]) {
                edges.push((i, j));
            }
        }
    }
    SimpleGraph::new(map.len(), edges)
}

/// Component map induced by `f: domain → codomain`, checked to be well defined.
fn induced_map(
    domain_labels: &[usize],
    codomain_labels: &[usize],
    f: &[usize],
) -> Result<BTreeMap<usize, usize>> {
    let mut out = BTreeMap::new();
    for (x, &fx) in f.iter().enumerate() {
        let image = codomain_labels[fx];
        if let Some(prev) = out.insert(domain_labels[x], image) {
            ensure!(
                prev == image,
                "component {} maps to both {prev} and {image}",
                domain_labels[x]
            );
        }
    }
    Ok(out)
}

/// Component labels on both sides of a relation and the matching between them.
///
/// Labels are minimal member indices within `Γ(R|U)` and `Γ(R|V)`.
/// `pair_labels[k]` names the `Γ(R)` component of `pairs()[k]` by its minimal `U` member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentMap {
    pub u_labels: Vec<usize>,
    pub v_labels: Vec<usize>,
    pub pair_labels: Vec<usize>,
    pub u_to_v: BTreeMap<usize, usize>,
}

impl ComponentMap {
    pub fn count(&self) -> usize {
        self.u_to_v.len()
    }

    pub fn u_component_count(&self) -> usize {
        Components {
            labels: self.u_labels.clone(),
        }
        .count()
    }

    pub fn v_component_count(&self) -> usize {
        Components {
            labels: self.v_labels.clone(),
        }
        .count()
    }

    pub fn u_members(&self, label: usize) -> Vec<usize> {
        members(&self.u_labels, label)
    }

    pub fn v_members(&self, label: usize) -> Vec<usize> {
        members(&self.v_labels, label)
    }

    /// The `V`-side component matched to the `U`-side component `label`.
    pub fn partner(&self, u_label: usize) -> Option<usize> {
        self.u_to_v.get(&u_label).copied()
    }

    fn verify(&self, rel: &BiRelation, joint: &[usize]) -> Result<()> {
        let nu = self.u_component_count();
        let nv = self.v_component_count();
        let nj = Components {
            labels: joint.to_vec(),
        }
        .count();
        ensure!(
            nu == nv && nv == nj && self.u_to_v.len() == nu,
            "component counts differ: |π0(R|U)|={nu}, |π0(R|V)|={nv}, |π0(R)|={nj}"
        );
        let v_image: std::collections::BTreeSet<_> = self.u_to_v.values().collect();
        ensure!(
            v_image.len() == nv,
            "U→V component matching is not injective"
        );
        // ι_U and ι_V land in the same Γ(R) component for matched pairs.
        for &(u, v) in &rel.pairs {
            ensure!(
                joint[u] == joint[rel.u_size + v],
                "pair ({u}, {v}) splits across Γ(R) components"
            );
        }
        // Matched iff (A×B)∩R ≠ ∅, and each side is the partner set of the other.
        for (&a, &b) in &self.u_to_v {
            let a_set = self.u_members(a);
            let b_set = self.v_members(b);
            let mut reach_v: Vec<usize> = a_set
                .iter()
                .flat_map(|&u| rel.by_u[u].iter().copied())
                .collect();
            reach_v.sort_unstable();
            reach_v.dedup();
            ensure!(
                reach_v == b_set,
                "partner set of U-component {a} is not its match"
            );
            let mut reach_u: Vec<usize> = b_set
                .iter()
                .flat_map(|&v| rel.by_v[v].iter().copied())
                .collect();
            reach_u.sort_unstable();
            reach_u.dedup();
            ensure!(
                reach_u == a_set,
                "partner set of V-component {b} is not its match"
            );
        }
        Ok(())
    }
}

fn members(labels: &[usize], label: usize) -> Vec<usize> {
    labels
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l == label)
        .map(|(i, _)| i)
        .collect()
}

/// The lifted diagram: components of `R'` over `U' × V'` and of `R` over
/// `U × V`, with the component maps induced by `α` and `β`.
#[derive(Debug, Clone)]
pub struct LiftedComponents {
    pub base: ComponentMap,
    pub top: ComponentMap,
    /// `U'`-component label to `U`-component label.
    pub alpha_map: BTreeMap<usize, usize>,
    /// `V'`-component label to `V`-component label.
    pub beta_map: BTreeMap<usize, usize>,
}

impl LiftedComponents {
    pub fn count(&self) -> usize {
        self.base.count()
    }

    fn verify_statements(
        &self,
        rel: &BiRelation,
        lifted: &BiRelation,
        alpha: &[usize],
        beta: &[usize],
    ) -> Result<()> {
        for (&a_top, &b_top) in &self.top.u_to_v {
            let a_prime = self.top.u_members(a_top);
            let b_prime = self.top.v_members(b_top);
            // (A'×B')∩R' ≠ ∅ and B' is the R'-partner set of A'.
            ensure!(
                a_prime
                    .iter()
                    .any(|&u| b_prime.iter().any(|&v| lifted.contains(u, v))),
                "(A'×B') misses R'"
            );
            // α(A') ⊆ A.
            let a = self.alpha_map[&a_top];
            let a_set = self.base.u_members(a);
            ensure!(
                a_prime.iter().all(|&u| a_set.contains(&alpha[u])),
                "α(A') not contained in its image component"
            );
            // Reachability form: A = {u : ∃a'∈A', v: (u,v)∈R, (α(a'),v)∈R}.
            let mut reach: Vec<usize> = a_prime
                .iter()
                .flat_map(|&ap| rel.by_u[alpha[ap]].iter())
                .flat_map(|&v| rel.by_v[v].iter().copied())
                .collect();
            reach.sort_unstable();
            reach.dedup();
            ensure!(reach == a_set, "reachability form of A disagrees");
            // B = {v : ∃a'∈A' (α(a'),v)∈R} and B = β-image of the matched B'.
            let b = self.base.u_to_v[&a];
            let b_set = self.base.v_members(b);
            let mut reach_v: Vec<usize> = a_prime
                .iter()
                .flat_map(|&ap| rel.by_u[alpha[ap]].iter().copied())
                .collect();
            reach_v.sort_unstable();
            reach_v.dedup();
            ensure!(reach_v == b_set, "partner form of B disagrees");
            ensure!(
                b_prime.iter().all(|&v| b_set.contains(&beta[v])),
                "β(B') not contained in B"
            );
        }
        Ok(())
    }
}
