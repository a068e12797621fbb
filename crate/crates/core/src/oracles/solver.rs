//! Exact on-line ranking numbers of vertex-capped classes by minimax.

use std::collections::HashMap;

use serde_json::json;
use thiserror::Error;

use crate::canon::{canonical_key, CanonicalKey};
use crate::forest::Label;
use crate::game::moves::successors;
use crate::game::{ClassSpec, GameError, GameState};

/// Node budget when the caller gives none.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("node budget of {budget} exhausted at bound {b}")]
    Budget { budget: u64, b: u32, nodes: u64 },
    #[error("n_cap and b must be at least 1")]
    Precondition,
    #[error(transparent)]
    Game(#[from] GameError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    /// `None` when even `b_max` cannot be held.
    pub value: Option<u32>,
    pub n_cap: usize,
    pub b_max: u32,
    pub nodes: u64,
    pub memo_hits: u64,
}

impl SolveResult {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "value": self.value.map_or(json!("exceeds"), |v| json!(v)),
            "n_cap": self.n_cap,
            "b_max": self.b_max,
            "nodes": self.nodes,
            "memo_hits": self.memo_hits,
        })
    }
}

/// One decision search at a fixed bound. Keys include the pending vertex, so
/// Presenter and Ranker nodes share the table.
#[derive(Debug)]
pub struct Solver {
    b: u32,
    budget: u64,
    memo: HashMap<CanonicalKey, bool>,
    pub nodes: u64,
    pub memo_hits: u64,
}

impl Solver {
    pub fn new(b: u32, budget: u64) -> Self {
        Solver { b, budget, memo: HashMap::new(), nodes: 0, memo_hits: 0 }
    }

    fn tick(&mut self) -> Result<(), SolveError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(SolveError::Budget { budget: self.budget, b: self.b, nodes: self.nodes });
        }
        Ok(())
    }

    /// Whether the Ranker, to move or not, can keep every label `<= b`.
    pub fn ranker_holds(&mut self, state: &GameState) -> Result<bool, SolveError> {
        self.holds_keyed(state, canonical_key(state.forest()))
    }

    fn holds_keyed(&mut self, state: &GameState, key: CanonicalKey) -> Result<bool, SolveError> {
        if let Some(&v) = self.memo.get(&key) {
            self.memo_hits += 1;
            return Ok(v);
        }
        self.tick()?;
        let holds = match state.pending() {
            None => {
                let (succ, _) = successors(state, usize::MAX);
                let mut all = true;
                for s in succ {
                    if !self.holds_keyed(&state.present_unchecked(s.forest), s.key)? {
                        all = false;
                        break;
                    }
                }
                all
            }
            Some(v) => {
                let c = state.forest().label_constraint(v, |_| true);
                let mut any = false;
                for l in (1..=self.b).filter(|&l| c.admits(l)) {
                    let next = state.assign(Label::new(l).expect("positive"))?;
                    if self.ranker_holds(&next)? {
                        any = true;
                        break;
                    }
                }
                any
            }
        };
        self.memo.insert(key, holds);
        Ok(holds)
    }
}

/// True iff the Ranker can keep all labels `<= b` against every Presenter
/// confined to the class with at most `n_cap` vertices.
pub fn online_rank_decision(class: &ClassSpec, n_cap: usize, b: u32, budget: u64) -> Result<bool, SolveError> {
    decide(class, n_cap, b, budget).map(|s| s.0)
}

fn decide(class: &ClassSpec, n_cap: usize, b: u32, budget: u64) -> Result<(bool, Solver), SolveError> {
    if n_cap == 0 || b == 0 {
        return Err(SolveError::Precondition);
    }
    let start = GameState::new(class.capped(n_cap))?;
    let mut s = Solver::new(b, budget);
    let holds = s.ranker_holds(&start)?;
    Ok((holds, s))
}

/// Smallest `b <= b_max` the Ranker can hold. `budget` bounds the nodes of
/// the whole run.
pub fn online_rank_value(class: &ClassSpec, n_cap: usize, b_max: u32, budget: u64) -> Result<SolveResult, SolveError> {
    let mut out = SolveResult { value: None, n_cap, b_max, nodes: 0, memo_hits: 0 };
    for b in 1..=b_max {
        let left = budget.saturating_sub(out.nodes);
        let (holds, s) = decide(class, n_cap, b, left).map_err(|e| match e {
            SolveError::Budget { b, nodes, .. } => SolveError::Budget { budget, b, nodes: out.nodes + nodes },
            other => other,
        })?;
        out.nodes += s.nodes;
        out.memo_hits += s.memo_hits;
        if holds {
            out.value = Some(b);
            break;
        }
    }
    Ok(out)
}
