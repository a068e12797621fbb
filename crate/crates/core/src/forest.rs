//! Labeled forests: the game board of the on-line ranking game.
//!
//! A [`LabeledForest`] is a simple acyclic graph on the dense vertex set
//! `0..n` together with a partial labeling. Label value `0` is reserved for
//! "unlabeled" in the raw representation; the public API speaks in
//! `Option<Label>`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index, `0..n` within a forest.
pub type VertexId = usize;

/// A ranking label. Always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Label(u32);

impl Label {
    pub const ONE: Label = Label(1);

    pub const fn new(value: u32) -> Option<Label> {
        if value == 0 {
            None
        } else {
            Some(Label(value))
        }
    }

    pub const fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for Label {
    type Error = String;

    fn try_from(value: u32) -> Result<Self, Self::Error> {
        Label::new(value).ok_or_else(|| "labels must be at least 1".to_string())
    }
}

impl From<Label> for u32 {
    fn from(l: Label) -> u32 {
        l.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("attachments {0} and {1} lie in the same component")]
    Cycle(VertexId, VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} is still unlabeled")]
    PendingVertex(VertexId),
    #[error("vertex {0} is unlabeled")]
    UnlabeledVertex(VertexId),
    #[error("vertex count {count} exceeds the cap of {cap}")]
    SizeLimit { count: u128, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// What a pending vertex sees of its component: the labels reachable through
/// strictly smaller labels, and the largest label visible from two different
/// branches.
///
/// Setting the vertex to `l` keeps a valid ranking iff `l > floor` and `l` is
/// not in `visible`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelConstraint {
    pub visible: Vec<u32>,
    pub floor: u32,
}

impl LabelConstraint {
    pub fn admits(&self, l: u32) -> bool {
        l > self.floor && self.visible.binary_search(&l).is_err()
    }

    /// Smallest admissible label.
    pub fn smallest(&self) -> u32 {
        let mut l = self.floor + 1;
        while !self.admits(l) {
            l += 1;
        }
        l
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct LabeledForest {
    adj: Vec<Vec<VertexId>>,
    labels: Vec<u32>,
}

impl LabeledForest {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` isolated unlabeled vertices.
    pub fn isolated(n: usize) -> Self {
        LabeledForest {
            adj: vec![Vec::new(); n],
            labels: vec![0; n],
        }
    }

    /// Builds an unlabeled forest, rejecting cycles, loops and duplicate edges.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, ForestError> {
        let mut f = Self::isolated(n);
        let mut uf = UnionFind::new(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(ForestError::UnknownVertex(u));
            }
            if v >= n {
                return Err(ForestError::UnknownVertex(v));
            }
            if !uf.union(u, v) {
                return Err(ForestError::Cycle(u, v));
            }
            f.adj[u].push(v);
            f.adj[v].push(u);
        }
        Ok(f)
    }

    /// Path on `n` vertices, `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("paths are forests")
    }

    /// Star `K_{1,leaves}` centered at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges).expect("stars are forests")
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as ascending pairs, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out: Vec<_> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&w| u < w).map(move |&w| (u, w)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn label(&self, v: VertexId) -> Option<Label> {
        Label::new(self.labels[v])
    }

    /// Raw label value, `0` when unlabeled.
    pub fn label_value(&self, v: VertexId) -> u32 {
        self.labels[v]
    }

    pub fn raw_labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn set_label(&mut self, v: VertexId, label: Option<Label>) {
        self.labels[v] = label.map_or(0, Label::get);
    }

    pub fn with_label(&self, v: VertexId, label: Label) -> Self {
        let mut f = self.clone();
        f.labels[v] = label.get();
        f
    }

    /// The same structure with every label erased.
    pub fn unlabeled(&self) -> Self {
        LabeledForest {
            adj: self.adj.clone(),
            labels: vec![0; self.len()],
        }
    }

    pub fn unlabeled_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.len()).filter(|&v| self.labels[v] == 0)
    }

    pub fn max_label(&self) -> Option<Label> {
        Label::new(self.labels.iter().copied().max().unwrap_or(0))
    }

    fn check(&self, v: VertexId) -> Result<(), ForestError> {
        if v < self.len() {
            Ok(())
        } else {
            Err(ForestError::UnknownVertex(v))
        }
    }

    /// Returns a new forest with one more unlabeled vertex adjacent to exactly
    /// `attachments`. Fails if a vertex is already waiting for its label.
    pub fn add_vertex(&self, attachments: &[VertexId]) -> Result<Self, ForestError> {
        if let Some(p) = self.unlabeled_vertices().next() {
            return Err(ForestError::PendingVertex(p));
        }
        let mut f = self.clone();
        f.push_vertex(attachments)?;
        Ok(f)
    }

    /// In-place growth without the pending-vertex rule; used by builders.
    pub fn push_vertex(&mut self, attachments: &[VertexId]) -> Result<VertexId, ForestError> {
        for &a in attachments {
            self.check(a)?;
        }
        if attachments.len() > 1 {
            let (comp, _) = self.component_ids();
            for (i, &a) in attachments.iter().enumerate() {
                for &b in &attachments[..i] {
                    if comp[a] == comp[b] {
                        return Err(ForestError::Cycle(b, a));
                    }
                }
            }
        }
        let v = self.len();
        self.adj.push(attachments.to_vec());
        self.labels.push(0);
        for &a in attachments {
            self.adj[a].push(v);
        }
        Ok(v)
    }

    /// Component index per vertex and the number of components.
    pub fn component_ids(&self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Vertex lists of all components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let (comp, count) = self.component_ids();
        let mut out = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.component_ids().1
    }

    /// Sorted vertex set of the component containing `v`.
    pub fn component_of(&self, v: VertexId) -> Vec<VertexId> {
        let mut seen = vec![false; self.len()];
        let mut out = vec![v];
        seen[v] = true;
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            i += 1;
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Subforest induced by `vertices`; local id `i` is `vertices[i]`.
    pub fn induced(&self, vertices: &[VertexId]) -> Self {
        let mut local = vec![usize::MAX; self.len()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect()
            })
            .collect();
        let labels = vertices.iter().map(|&v| self.labels[v]).collect();
        LabeledForest { adj, labels }
    }

    /// Disjoint union, `other`'s vertices shifted past ours.
    pub fn disjoint_union(&self, other: &LabeledForest) -> Self {
        let off = self.len();
        let mut f = self.clone();
        f.adj
            .extend(other.adj.iter().map(|ns| ns.iter().map(|&w| w + off).collect()));
        f.labels.extend_from_slice(&other.labels);
        f
    }

    /// BFS distances from `v`; `None` outside its component.
    pub fn distances_from(&self, v: VertexId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[v] = Some(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest distance from `v` within its component.
    pub fn eccentricity(&self, v: VertexId) -> Result<usize, ForestError> {
        self.check(v)?;
        Ok(self.distances_from(v).into_iter().flatten().max().unwrap_or(0))
    }

    /// Diameter of the component containing `component_of`, by two BFS sweeps.
    pub fn diameter(&self, component_of: VertexId) -> Result<usize, ForestError> {
        self.check(component_of)?;
        let dist = self.distances_from(component_of);
        let far = (0..self.len())
            .filter(|&u| dist[u].is_some())
            .max_by_key(|&u| dist[u])
            .unwrap_or(component_of);
        self.eccentricity(far)
    }

    /// Maximal connected vertex set containing `v` in which every vertex other
    /// than `v` carries a label accepted by `allowed`. Sorted.
    pub fn subtree_region(
        &self,
        v: VertexId,
        allowed: impl Fn(Label) -> bool,
    ) -> Result<Vec<VertexId>, ForestError> {
        self.check(v)?;
        let mut seen = vec![false; self.len()];
        seen[v] = true;
        let mut out = vec![v];
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            i += 1;
            for &w in &self.adj[u] {
                if !seen[w] && self.label(w).is_some_and(&allowed) {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Checks the ranking property over the whole forest.
    pub fn is_valid_ranking(&self) -> Result<bool, ForestError> {
        if let Some(v) = self.unlabeled_vertices().next() {
            return Err(ForestError::UnlabeledVertex(v));
        }
        Ok(self.is_ranking_on(|_| true))
    }

    /// Ranking check restricted to the labeled vertices; unlabeled vertices
    /// are treated as absent.
    pub fn is_partial_ranking(&self) -> bool {
        self.is_ranking_on(|_| true)
    }

    /// Ranking check on the subgraph induced by labeled vertices accepted by
    /// `include`.
    ///
    /// Sweeps labels upward with a union-find over vertices of label at most
    /// the current threshold: a labeling is a ranking iff the vertices of each
    /// label `l` fall into distinct components of the subgraph induced by
    /// labels `<= l`.
    pub fn is_ranking_on(&self, include: impl Fn(VertexId) -> bool) -> bool {
        let mut order: Vec<VertexId> = (0..self.len())
            .filter(|&v| self.labels[v] != 0 && include(v))
            .collect();
        order.sort_unstable_by_key(|&v| self.labels[v]);
        let mut active = vec![false; self.len()];
        let mut uf = UnionFind::new(self.len());
        let mut roots = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let l = self.labels[order[i]];
            let mut j = i;
            while j < order.len() && self.labels[order[j]] == l {
                active[order[j]] = true;
                j += 1;
            }
            for &u in &order[i..j] {
                for &w in &self.adj[u] {
                    if active[w] {
                        uf.union(u, w);
                    }
                }
            }
            if j - i > 1 {
                roots.clear();
                roots.extend(order[i..j].iter().map(|&u| uf.find(u)));
                roots.sort_unstable();
                if roots.windows(2).any(|w| w[0] == w[1]) {
                    return false;
                }
            }
            i = j;
        }
        true
    }

    /// Label constraint on `v` from the labeled vertices of its component
    /// accepted by `include`. Assumes those vertices already form a ranking.
    pub fn label_constraint(&self, v: VertexId, include: impl Fn(VertexId) -> bool) -> LabelConstraint {
        let mut all: Vec<u32> = Vec::new();
        let mut doubled = 0;
        let mut branch: Vec<u32> = Vec::new();
        let mut stack: Vec<(VertexId, VertexId, u32)> = Vec::new();
        for &start in &self.adj[v] {
            if self.labels[start] == 0 || !include(start) {
                continue;
            }
            branch.clear();
            stack.push((start, v, 0));
            while let Some((u, parent, mx)) = stack.pop() {
                let l = self.labels[u];
                if l > mx {
                    branch.push(l);
                }
                let next = mx.max(l);
                for &w in &self.adj[u] {
                    if w != parent && self.labels[w] != 0 && include(w) {
                        stack.push((w, u, next));
                    }
                }
            }
            branch.sort_unstable();
            branch.dedup();
            for &l in &branch {
                match all.binary_search(&l) {
                    Ok(_) => doubled = doubled.max(l),
                    Err(pos) => all.insert(pos, l),
                }
            }
        }
        LabelConstraint {
            visible: all,
            floor: doubled,
        }
    }

    /// Ascending labels `<= max_label` that make `v`'s component a valid
    /// ranking when assigned to the unlabeled vertex `v`.
    pub fn candidate_labels(&self, v: VertexId, max_label: Label) -> Vec<Label> {
        if v >= self.len() {
            return Vec::new();
        }
        let comp = self.component_of(v);
        let mut in_comp = vec![false; self.len()];
        for &u in &comp {
            in_comp[u] = true;
        }
        if comp.iter().any(|&u| u != v && self.labels[u] == 0)
            || !self.is_ranking_on(|u| in_comp[u] && u != v)
        {
            return Vec::new();
        }
        let c = self.label_constraint(v, |_| true);
        (c.floor + 1..=max_label.get())
            .filter(|&l| c.admits(l))
            .filter_map(Label::new)
            .collect()
    }
}

/// Path-compressing, union-by-size disjoint sets.
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

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}
