use std::collections::HashMap;

use thiserror::Error;

use crate::forest::LabeledForest;

pub const PSI_SIZE_LIMIT: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0} vertices exceeds the limit of {PSI_SIZE_LIMIT}")]
pub struct SizeLimit(pub usize);

/// Largest label the greedy Ranker uses over all orders in which the
/// vertices of `t` can be revealed.
pub fn psi_exact(t: &LabeledForest) -> Result<u32, SizeLimit> {
    if t.len() > PSI_SIZE_LIMIT {
        return Err(SizeLimit(t.len()));
    }
    let mut board = t.unlabeled();
    let mut memo = HashMap::new();
    Ok(worst_order(&mut board, 0, &mut memo))
}

/// Unpresented vertices carry label 0, which the constraint ignores.
fn worst_order(board: &mut LabeledForest, mask: u32, memo: &mut HashMap<(u32, Vec<u32>), u32>) -> u32 {
    let n = board.len();
    if mask.count_ones() as usize == n {
        return board.max_label().map_or(0, |l| l.get());
    }
    let key = (mask, board.raw_labels().to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut best = 0;
    for v in (0..n).filter(|&v| mask & (1 << v) == 0) {
        let l = board.label_constraint(v, |_| true).smallest();
        board.set_label(v, crate::forest::Label::new(l));
        best = best.max(worst_order(board, mask | (1 << v), memo));
        board.set_label(v, None);
    }
    memo.insert(key, best);
    best
}

/// `floor(log2(n+1)) + floor(log2(n + 1 - 2^(floor(log2 n) - 1)))`, with
/// the second term doubled inside the logarithm to stay in integers.
pub fn psi_path_formula(n: u64) -> u32 {
    assert!(n >= 1, "paths have at least one vertex");
    let x = 2 * (n + 1) - (1u64 << n.ilog2());
    (n + 1).ilog2() + x.ilog2() - 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_examples() {
        assert_eq!(psi_exact(&LabeledForest::isolated(1)), Ok(1));
        assert_eq!(psi_exact(&LabeledForest::path(3)), Ok(3));
        assert_eq!(psi_exact(&LabeledForest::path(4)), Ok(3));
        assert_eq!(psi_exact(&LabeledForest::path(10)), Err(SizeLimit(10)));
    }

    #[test]
    fn formula_examples() {
        assert_eq!(psi_path_formula(1), 1);
        assert_eq!(psi_path_formula(2), 2);
        assert_eq!(psi_path_formula(4), 3);
        assert_eq!(psi_path_formula(7), 5);
    }
}
