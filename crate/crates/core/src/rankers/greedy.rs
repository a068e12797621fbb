use crate::forest::Label;
use crate::game::{GameError, GameState, RankerStrategy, StrategyError};

/// Smallest label keeping the labeling a ranking.
pub fn greedy_label(state: &GameState) -> Result<Label, GameError> {
    let v = state.pending().ok_or(GameError::NoPendingVertex)?;
    let c = state.forest().label_constraint(v, |_| true);
    Ok(Label::new(c.smallest()).expect("smallest admissible label is positive"))
}

#[derive(Debug, Clone, Default)]
pub struct GreedyRanker;

impl RankerStrategy for GreedyRanker {
    fn label(&mut self, state: &GameState) -> Result<Label, StrategyError> {
        Ok(greedy_label(state)?)
    }

    fn box_clone(&self) -> Box<dyn RankerStrategy> {
        Box::new(self.clone())
    }

    fn descriptor(&self) -> String {
        "greedy".into()
    }
}
