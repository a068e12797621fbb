use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::{GameState, Move, PresenterStrategy, StrategyError};

/// Moves enumerated per round before sampling. Boards with many small
/// components can have far more distinct moves than this; the sample is then
/// uniform over the first `MOVE_SAMPLE_LIMIT` in enumeration order.
pub const MOVE_SAMPLE_LIMIT: usize = 4096;

/// Plays a uniformly random legal move (up to isomorphism) each round and
/// stops after `n_max` vertices or when no move is legal.
#[derive(Debug, Clone)]
pub struct RandomPresenter {
    seed: u64,
    n_max: usize,
    rng: ChaCha8Rng,
}

impl RandomPresenter {
    pub fn new(seed: u64, n_max: usize) -> Self {
        RandomPresenter {
            seed,
            n_max,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl PresenterStrategy for RandomPresenter {
    fn next_move(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        if state.forest().len() >= self.n_max {
            return Ok(Move::Stop);
        }
        let legal = state.legal_moves(MOVE_SAMPLE_LIMIT);
        if legal.moves.is_empty() {
            return Ok(Move::Stop);
        }
        let i = self.rng.gen_range(0..legal.moves.len());
        Ok(legal.moves[i].clone())
    }

    fn box_clone(&self) -> Box<dyn PresenterStrategy> {
        Box::new(self.clone())
    }

    fn descriptor(&self) -> String {
        format!("random:seed={},n_max={}", self.seed, self.n_max)
    }

    fn seed(&self) -> Option<u64> {
        Some(self.seed)
    }
}
