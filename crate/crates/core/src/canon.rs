//! Isomorphism-invariant keys for labeled forests.
//!
//! Each component is encoded AHU-style: a node is its label token followed by
//! the sorted encodings of its children and an end marker. Components are
//! rooted at their centroid (the smaller encoding wins when there are two),
//! and the forest key is the sorted concatenation of component encodings.
//! Label `0` stands for the pending vertex.

use std::fmt;

use crate::forest::{LabeledForest, VertexId};

const END: u8 = 0xFF;
const WIDE: u8 = 0xFE;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

pub fn canonical_key(forest: &LabeledForest) -> CanonicalKey {
    let mut comps: Vec<Vec<u8>> = forest
        .components()
        .iter()
        .map(|c| component_encoding(forest, c))
        .collect();
    comps.sort_unstable();
    CanonicalKey(comps.concat())
}

/// Encoding of the component with vertex set `comp` (any order).
pub fn component_encoding(forest: &LabeledForest, comp: &[VertexId]) -> Vec<u8> {
    centroids(forest, comp)
        .into_iter()
        .map(|c| rooted_encoding(forest, c))
        .min()
        .expect("components are nonempty")
}

/// Encoding of `root`'s component rooted at `root`. Two vertices of the
/// same forest get equal encodings iff some label-preserving automorphism of
/// the component maps one onto the other.
pub fn rooted_encoding(forest: &LabeledForest, root: VertexId) -> Vec<u8> {
    // iterative post-order: parents appear before children in `order`
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; forest.len()];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in forest.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut enc: Vec<Option<Vec<u8>>> = vec![None; forest.len()];
    let mut kids: Vec<Vec<Vec<u8>>> = vec![Vec::new(); forest.len()];
    for &u in order.iter().rev() {
        let mut children = std::mem::take(&mut kids[u]);
        children.sort_unstable();
        let mut e = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
        push_label(&mut e, forest.label_value(u));
        for c in children {
            e.extend_from_slice(&c);
        }
        e.push(END);
        if u == root {
            enc[u] = Some(e);
        } else {
            kids[parent[u]].push(e);
        }
    }
    enc[root].take().unwrap()
}

fn push_label(out: &mut Vec<u8>, l: u32) {
    if l < u32::from(WIDE) {
        out.push(l as u8);
    } else {
        out.push(WIDE);
        out.extend_from_slice(&l.to_be_bytes());
    }
}

/// One or two centroids of the tree spanned by `comp`.
pub fn centroids(forest: &LabeledForest, comp: &[VertexId]) -> Vec<VertexId> {
    let n = comp.len();
    if n <= 2 {
        return comp.to_vec();
    }
    let root = comp[0];
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; forest.len()];
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in forest.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut size = vec![1usize; forest.len()];
    let mut heaviest = vec![0usize; forest.len()];
    for &u in order.iter().rev() {
        if u != root {
            let p = parent[u];
            size[p] += size[u];
            heaviest[p] = heaviest[p].max(size[u]);
        }
    }
    order
        .iter()
        .copied()
        .filter(|&u| heaviest[u].max(n - size[u]) <= n / 2)
        .collect()
}
