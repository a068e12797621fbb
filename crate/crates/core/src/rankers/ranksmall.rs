use crate::forest::Label;
use crate::game::{GameError, GameState, RankerStrategy, StrategyError};

/// Labels an isolated vertex `q + 1`. Otherwise, with `m` the largest label
/// on the rest of its component, takes the largest valid label below `m`,
/// falling back to `m + 1`.
pub fn ranksmall_label(state: &GameState, q: usize) -> Result<Label, GameError> {
    let v = state.pending().ok_or(GameError::NoPendingVertex)?;
    let f = state.forest();
    let comp = f.component_of(v);
    let m = comp.iter().map(|&u| f.label_value(u)).max().unwrap_or(0);
    let value = if comp.len() == 1 {
        q as u32 + 1
    } else {
        let c = f.label_constraint(v, |_| true);
        (1..m).rev().find(|&l| c.admits(l)).unwrap_or(m + 1)
    };
    Ok(Label::new(value).expect("labels start at 1"))
}

#[derive(Debug, Clone)]
pub struct RanksmallRanker {
    pub p: usize,
    pub q: usize,
}

impl RanksmallRanker {
    pub fn new(p: usize, q: usize) -> Self {
        RanksmallRanker { p, q }
    }
}

impl RankerStrategy for RanksmallRanker {
    fn label(&mut self, state: &GameState) -> Result<Label, StrategyError> {
        Ok(ranksmall_label(state, self.q)?)
    }

    fn box_clone(&self) -> Box<dyn RankerStrategy> {
        Box::new(self.clone())
    }

    fn descriptor(&self) -> String {
        format!("ranksmall:p={},q={}", self.p, self.q)
    }
}
