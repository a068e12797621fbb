//! Subtree embedding tests.

use crate::forest::{LabeledForest, VertexId};

/// Whether the connected forest `t` is isomorphic to a subtree of `T*_{k,r}`:
/// some root of `t` has degree at most `k`, every other vertex degree at most
/// `k + 1`, and no vertex lies deeper than `r` below that root.
pub fn embeds_in_star_tree(t: &LabeledForest, k: usize, r: usize) -> bool {
    if t.is_empty() {
        return true;
    }
    if t.component_count() != 1 {
        return false;
    }
    if (0..t.len()).any(|v| t.degree(v) > k + 1) {
        return false;
    }
    (0..t.len())
        .filter(|&v| t.degree(v) <= k)
        .any(|v| t.eccentricity(v).is_ok_and(|e| e <= r))
}

/// Dense adjacency for the host side of embedding searches.
struct AdjMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl AdjMatrix {
    fn new(f: &LabeledForest) -> Self {
        let n = f.len();
        let mut bits = vec![false; n * n];
        for (u, v) in f.edges() {
            bits[u * n + v] = true;
            bits[v * n + u] = true;
        }
        AdjMatrix { n, bits }
    }

    fn has(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }
}

/// An injective map from `pattern` into `host` preserving adjacency and
/// non-adjacency (labels are ignored), if one exists. `result[p]` is the host
/// vertex of pattern vertex `p`.
pub fn find_induced_embedding(pattern: &LabeledForest, host: &LabeledForest) -> Option<Vec<VertexId>> {
    if pattern.len() > host.len() || pattern.edge_count() > host.edge_count() {
        return None;
    }
    // pattern order: largest components first, BFS inside each component
    let mut comps = pattern.components();
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut order = Vec::with_capacity(pattern.len());
    let mut parent = vec![None; pattern.len()];
    for comp in &comps {
        let root = *comp
            .iter()
            .max_by_key(|&&v| (pattern.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let start = order.len();
        order.push(root);
        let mut seen = vec![false; pattern.len()];
        seen[root] = true;
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in pattern.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    order.push(w);
                }
            }
        }
    }
    let adj = AdjMatrix::new(host);
    let mut image = vec![usize::MAX; pattern.len()];
    let mut used = vec![false; host.len()];
    let mut search = Search {
        pattern,
        host,
        adj: &adj,
        order: &order,
        parent: &parent,
        image: &mut image,
        used: &mut used,
    };
    if search.extend(0) {
        Some(image)
    } else {
        None
    }
}

struct Search<'a> {
    pattern: &'a LabeledForest,
    host: &'a LabeledForest,
    adj: &'a AdjMatrix,
    order: &'a [VertexId],
    parent: &'a [Option<VertexId>],
    image: &'a mut Vec<VertexId>,
    used: &'a mut Vec<bool>,
}

impl Search<'_> {
    fn fits(&self, i: usize, h: VertexId) -> bool {
        let p = self.order[i];
        if self.used[h] || self.host.degree(h) < self.pattern.degree(p) {
            return false;
        }
        self.order[..i].iter().all(|&q| {
            let hq = self.image[q];
            self.adj.has(h, hq) == self.pattern.has_edge(p, q)
        })
    }

    fn extend(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let p = self.order[i];
        let candidates: Vec<VertexId> = match self.parent[p] {
            Some(q) => self.host.neighbors(self.image[q]).to_vec(),
            None => (0..self.host.len()).collect(),
        };
        for h in candidates {
            if self.fits(i, h) {
                self.image[p] = h;
                self.used[h] = true;
                if self.extend(i + 1) {
                    return true;
                }
                self.used[h] = false;
            }
        }
        self.image[p] = usize::MAX;
        false
    }
}

pub fn is_induced_subforest(pattern: &LabeledForest, host: &LabeledForest) -> bool {
    find_induced_embedding(pattern, host).is_some()
}

/// An isomorphism `a -> b` ignoring labels, if the two forests are isomorphic.
pub fn find_isomorphism(a: &LabeledForest, b: &LabeledForest) -> Option<Vec<VertexId>> {
    if a.len() != b.len() || a.edge_count() != b.edge_count() {
        return None;
    }
    find_induced_embedding(a, b)
}
