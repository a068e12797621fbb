use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::forest::Label;
use crate::game::{GameError, GameState, RankerStrategy, StrategyError};

/// Picks uniformly among the valid labels up to one above the current
/// maximum. Used to probe Presenter guarantees, not as a serious opponent.
#[derive(Debug, Clone)]
pub struct RandomRanker {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomRanker {
    pub fn new(seed: u64) -> Self {
        RandomRanker {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl RankerStrategy for RandomRanker {
    fn label(&mut self, state: &GameState) -> Result<Label, StrategyError> {
        let v = state.pending().ok_or(GameError::NoPendingVertex)?;
        let top = state.max_label().map_or(0, Label::get) + 1;
        let c = state.forest().label_constraint(v, |_| true);
        let options: Vec<u32> = (1..=top).filter(|&l| c.admits(l)).collect();
        let l = *options.choose(&mut self.rng).expect("one above the maximum is always valid");
        Ok(Label::new(l).expect("labels start at 1"))
    }

    fn box_clone(&self) -> Box<dyn RankerStrategy> {
        Box::new(self.clone())
    }

    fn descriptor(&self) -> String {
        format!("random:seed={}", self.seed)
    }
}
