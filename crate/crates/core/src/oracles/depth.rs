use std::collections::HashMap;

use crate::canon::{canonical_key, CanonicalKey};
use crate::forest::LabeledForest;

/// Minimum number of labels in a ranking of `t` (its tree-depth). Labels on
/// `t` are ignored.
pub fn tree_depth(t: &LabeledForest) -> u32 {
    let mut memo = HashMap::new();
    let t = t.unlabeled();
    t.components()
        .iter()
        .map(|c| connected_depth(&t.induced(c), &mut memo))
        .max()
        .unwrap_or(0)
}

fn connected_depth(t: &LabeledForest, memo: &mut HashMap<CanonicalKey, u32>) -> u32 {
    if t.len() <= 1 {
        return t.len() as u32;
    }
    let key = canonical_key(t);
    if let Some(&d) = memo.get(&key) {
        return d;
    }
    // a path on diam+1 vertices sits inside t
    let diam = t.diameter(0).expect("nonempty");
    let lower = usize::BITS - (diam + 1).leading_zeros();
    let mut best = u32::MAX;
    let mut order: Vec<usize> = (0..t.len()).collect();
    order.sort_by_key(|&v| t.eccentricity(v).unwrap_or(usize::MAX));
    for v in order {
        let rest: Vec<usize> = (0..t.len()).filter(|&u| u != v).collect();
        let g = t.induced(&rest);
        let mut worst = 0;
        for c in g.components() {
            worst = worst.max(connected_depth(&g.induced(&c), memo));
            if 1 + worst >= best {
                break;
            }
        }
        best = best.min(1 + worst);
        if best == lower {
            break;
        }
    }
    memo.insert(key, best);
    best
}

/// Tree-depth of `T_{k,d}` in closed form: `ceil(d/2) + 1`.
pub fn rho_tkd_formula(_k: usize, d: usize) -> u32 {
    d.div_ceil(2) as u32 + 1
}
