//! Complete k-ary trees `T*_{k,r}` and the extremal trees `T_{k,d}`.

use crate::forest::{ForestError, LabeledForest, VertexId};

/// Default vertex cap for generated trees.
pub const DEFAULT_SIZE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub root: VertexId,
    pub children: Vec<Vec<VertexId>>,
}

impl RootedTree {
    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    /// Depth of every vertex below the root.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            for &c in &self.children[u] {
                depth[c] = depth[u] + 1;
                stack.push(c);
            }
        }
        depth
    }

    pub fn to_forest(&self) -> LabeledForest {
        let mut edges = Vec::with_capacity(self.len().saturating_sub(1));
        for (u, cs) in self.children.iter().enumerate() {
            edges.extend(cs.iter().map(|&c| (u, c)));
        }
        LabeledForest::from_edges(self.len(), &edges).expect("rooted trees are acyclic")
    }
}

/// `|V(T*_{k,r})| = sum_{i=0..r} k^i`, or `None` on overflow.
pub fn star_tree_size(k: usize, r: usize) -> Option<u128> {
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=r {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(k as u128)?;
    }
    Some(total)
}

/// Vertex count of `T_{k,d}`, or `None` on overflow.
pub fn tkd_size(k: usize, d: usize) -> Option<u128> {
    match d {
        0 => Some(1),
        _ if d.is_multiple_of(2) => {
            let r = d / 2;
            star_tree_size(k - 1, r)?.checked_add(star_tree_size(k - 1, r - 1)?)
        }
        _ => star_tree_size(k - 1, d / 2)?.checked_mul(2),
    }
}

/// Number of leaves (degree at most one) of `T_{k,d}`.
pub fn tkd_leaf_count(k: usize, d: usize) -> u128 {
    let km = (k - 1) as u128;
    match d {
        0 => 1,
        1 => 2,
        _ if d.is_multiple_of(2) => {
            let r = (d / 2) as u32;
            km.pow(r) + km.pow(r - 1)
        }
        _ => 2 * km.pow((d / 2) as u32),
    }
}

fn check_cap(count: Option<u128>, cap: usize) -> Result<usize, ForestError> {
    match count {
        Some(c) if c <= cap as u128 => Ok(c as usize),
        Some(c) => Err(ForestError::SizeLimit { count: c, cap }),
        None => Err(ForestError::SizeLimit {
            count: u128::MAX,
            cap,
        }),
    }
}

pub fn build_star_tree(k: usize, r: usize) -> Result<RootedTree, ForestError> {
    build_star_tree_capped(k, r, DEFAULT_SIZE_CAP)
}

/// `T*_{k,r}` in BFS order: the root is 0 and each layer is contiguous.
pub fn build_star_tree_capped(k: usize, r: usize, cap: usize) -> Result<RootedTree, ForestError> {
    if k == 0 {
        return Err(ForestError::InvalidParameter("k must be at least 1".into()));
    }
    let n = check_cap(star_tree_size(k, r), cap)?;
    let mut children = vec![Vec::new(); n];
    let internal = n - k.pow(r as u32);
    for (u, cs) in children.iter_mut().enumerate().take(internal) {
        *cs = (1..=k).map(|i| u * k + i).collect();
    }
    Ok(RootedTree { root: 0, children })
}

pub fn build_tkd(k: usize, d: usize) -> Result<LabeledForest, ForestError> {
    build_tkd_capped(k, d, DEFAULT_SIZE_CAP)
}

/// `T_{k,d}`: `T*_{k-1,r}` and `T*_{k-1,r-1}` with joined roots when `d = 2r`,
/// two copies of `T*_{k-1,r}` when `d = 2r + 1`.
pub fn build_tkd_capped(k: usize, d: usize, cap: usize) -> Result<LabeledForest, ForestError> {
    if d <= 1 {
        return Ok(if d == 0 {
            LabeledForest::isolated(1)
        } else {
            LabeledForest::path(2)
        });
    }
    if k < 2 {
        return Err(ForestError::InvalidParameter(
            "T_{k,d} with d >= 2 needs k >= 2".into(),
        ));
    }
    check_cap(tkd_size(k, d), cap)?;
    let r = d / 2;
    let left = build_star_tree_capped(k - 1, r, cap)?.to_forest();
    let right = build_star_tree_capped(k - 1, if d.is_multiple_of(2) { r - 1 } else { r }, cap)?.to_forest();
    let off = left.len();
    let mut t = left.disjoint_union(&right);
    let mut edges = t.edges();
    edges.push((0, off));
    t = LabeledForest::from_edges(t.len(), &edges).expect("joining two trees keeps a tree");
    Ok(t)
}
