//! Enumeration and brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use ranklab::canon::canonical_key;
use ranklab::forest::{Label, LabeledForest, VertexId};

/// Unlabeled forests on exactly `n` vertices, one per isomorphism class, for
/// every `n <= n_max`. Every forest on `n` vertices is one on `n - 1` plus a
/// leaf or an isolated vertex.
pub fn forests_by_size(n_max: usize) -> Vec<Vec<LabeledForest>> {
    let mut out = vec![vec![LabeledForest::new()]];
    for _ in 1..=n_max {
        let mut seen = HashSet::new();
        let mut level = Vec::new();
        for f in out.last().unwrap() {
            let mut grow = |g: LabeledForest| {
                if seen.insert(canonical_key(&g)) {
                    level.push(g);
                }
            };
            for att in std::iter::once(None).chain((0..f.len()).map(Some)) {
                let mut g = f.clone();
                g.push_vertex(att.as_slice()).unwrap();
                grow(g);
            }
        }
        out.push(level);
    }
    out
}

pub fn trees_by_size(n_max: usize) -> Vec<Vec<LabeledForest>> {
    forests_by_size(n_max)
        .into_iter()
        .map(|l| l.into_iter().filter(|f| f.component_count() == 1).collect())
        .collect()
}

/// Interior vertices of the path between each connected pair `u < v`.
pub fn pair_paths(f: &LabeledForest) -> Vec<(VertexId, VertexId, Vec<VertexId>)> {
    let n = f.len();
    let mut out = Vec::new();
    for u in 0..n {
        let mut parent = vec![usize::MAX; n];
        parent[u] = u;
        let mut queue = vec![u];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for &w in f.neighbors(x) {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    queue.push(w);
                }
            }
        }
        for v in u + 1..n {
            if parent[v] == usize::MAX {
                continue;
            }
            let mut inner = Vec::new();
            let mut x = parent[v];
            while x != u {
                inner.push(x);
                x = parent[x];
            }
            out.push((u, v, inner));
        }
    }
    out
}

/// Every pair of equal labels must see a larger label strictly between them.
pub fn brute_ranking(labels: &[u32], paths: &[(VertexId, VertexId, Vec<VertexId>)]) -> bool {
    paths.iter().all(|(u, v, inner)| labels[*u] != labels[*v] || inner.iter().any(|&w| labels[w] > labels[*u]))
}

pub fn brute_ranking_of(f: &LabeledForest) -> bool {
    brute_ranking(f.raw_labels(), &pair_paths(f))
}

pub fn with_labels(f: &LabeledForest, labels: &[u32]) -> LabeledForest {
    let mut g = f.clone();
    for (v, &l) in labels.iter().enumerate() {
        g.set_label(v, Label::new(l));
    }
    g
}

/// Steps `digits` through `lo..=hi` in odometer order; false once it wraps.
pub fn next_labels(digits: &mut [u32], lo: u32, hi: u32) -> bool {
    for d in digits.iter_mut() {
        if *d < hi {
            *d += 1;
            return true;
        }
        *d = lo;
    }
    false
}

/// `f` with vertex `v` renamed `perm[v]`.
pub fn permuted(f: &LabeledForest, perm: &[VertexId]) -> LabeledForest {
    let edges: Vec<_> = f.edges().into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    let mut g = LabeledForest::from_edges(f.len(), &edges).unwrap();
    for (v, &p) in perm.iter().enumerate() {
        g.set_label(p, f.label(v));
    }
    g
}

pub fn shuffled(f: &LabeledForest, rng: &mut impl Rng) -> LabeledForest {
    let mut perm: Vec<VertexId> = (0..f.len()).collect();
    perm.shuffle(rng);
    permuted(f, &perm)
}

/// Label-preserving isomorphism by backtracking over bijections.
pub fn brute_isomorphic(a: &LabeledForest, b: &LabeledForest) -> bool {
    if a.len() != b.len() || a.edge_count() != b.edge_count() {
        return false;
    }
    fn extend(a: &LabeledForest, b: &LabeledForest, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let u = map.len();
        if u == a.len() {
            return true;
        }
        for w in 0..b.len() {
            if used[w] || a.label_value(u) != b.label_value(w) || a.degree(u) != b.degree(w) {
                continue;
            }
            if (0..u).any(|x| a.has_edge(x, u) != b.has_edge(map[x], w)) {
                continue;
            }
            used[w] = true;
            map.push(w);
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    extend(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

/// Injective map of `pattern` into `host` preserving adjacency and
/// non-adjacency, by plain backtracking.
pub fn brute_induced(pattern: &LabeledForest, host: &LabeledForest) -> bool {
    fn extend(p: &LabeledForest, h: &LabeledForest, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let u = map.len();
        if u == p.len() {
            return true;
        }
        for w in 0..h.len() {
            if used[w] || h.degree(w) < p.degree(u) {
                continue;
            }
            if (0..u).any(|x| p.has_edge(x, u) != h.has_edge(map[x], w)) {
                continue;
            }
            used[w] = true;
            map.push(w);
            if extend(p, h, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    pattern.len() <= host.len() && extend(pattern, host, &mut Vec::new(), &mut vec![false; host.len()])
}

/// Subtree isomorphism of a tree into a tree host: grow the image along the
/// pattern's BFS order, every new vertex next to its parent's image.
pub fn brute_subtree(pattern: &LabeledForest, host: &LabeledForest) -> bool {
    if pattern.is_empty() {
        return true;
    }
    let mut order = vec![0];
    let mut parent = vec![usize::MAX; pattern.len()];
    parent[0] = 0;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &w in pattern.neighbors(x) {
            if parent[w] == usize::MAX {
                parent[w] = x;
                order.push(w);
            }
        }
    }
    fn extend(
        p: &LabeledForest,
        h: &LabeledForest,
        order: &[usize],
        parent: &[usize],
        img: &mut [usize],
        used: &mut [bool],
        i: usize,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let u = order[i];
        let cands: Vec<usize> = if i == 0 { (0..h.len()).collect() } else { h.neighbors(img[parent[u]]).to_vec() };
        for w in cands {
            if used[w] || h.degree(w) < p.degree(u) {
                continue;
            }
            used[w] = true;
            img[u] = w;
            if extend(p, h, order, parent, img, used, i + 1) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    let mut img = vec![0; pattern.len()];
    extend(pattern, host, &order, &parent, &mut img, &mut vec![false; host.len()], 0)
}

/// Vertices of degree at least two.
pub fn internal_count(f: &LabeledForest) -> usize {
    (0..f.len()).filter(|&v| f.degree(v) >= 2).count()
}

pub fn tree_diameter(f: &LabeledForest) -> usize {
    if f.is_empty() {
        0
    } else {
        f.diameter(0).unwrap()
    }
}

/// Random tree on `n` vertices: each new vertex hangs off a uniform earlier one.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> LabeledForest {
    let mut f = LabeledForest::new();
    for v in 0..n {
        if v == 0 {
            f.push_vertex(&[]).unwrap();
        } else {
            let p = rng.gen_range(0..v);
            f.push_vertex(&[p]).unwrap();
        }
    }
    f
}
