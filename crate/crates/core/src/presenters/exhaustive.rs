//! Full game-tree search against one fixed, deterministic Ranker.

use std::collections::HashMap;

use thiserror::Error;

use crate::canon::CanonicalKey;
use crate::game::moves::successors;
use crate::game::{
    ClassKind, ClassSpec, Event, GameState, MemoryTag, Move, PresenterStrategy, RankerStrategy,
    StrategyError, Transcript,
};

/// Round check run on every explored step: `(round, presented, labeled)`.
pub type StepCheck<'a> = dyn FnMut(usize, &GameState, &GameState) -> Result<(), String> + 'a;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreReport {
    /// Largest label the Presenter can force against the Ranker.
    pub max_label: u32,
    pub nodes: u64,
    pub memo_hits: u64,
}

/// A failure somewhere in the tree, with the moves leading to it.
#[derive(Debug, Clone, Error)]
pub enum ExploreError {
    #[error("strategy failed after {} rounds: {source}", transcript.rounds())]
    Strategy { transcript: Box<Transcript>, source: StrategyError },
    #[error("check failed after {} rounds: {message}", transcript.rounds())]
    Check { transcript: Box<Transcript>, message: String },
    #[error("node budget of {0} exhausted")]
    Budget(u64),
    #[error("class {0} is unbounded; give it an n_cap")]
    Unbounded(String),
}

/// Whether every board of the class has bounded size.
pub fn is_finite(class: &ClassSpec) -> bool {
    class.n_cap.is_some() || !matches!(class.kind, ClassKind::FewInternal { .. })
}

/// Memoized search state. The memo key pairs the board with the Ranker's
/// memory tag, so it is only sound for Rankers whose label depends on the
/// board up to isomorphism and on that tag.
#[derive(Debug, Clone, Default)]
pub struct Explorer {
    memo: HashMap<(CanonicalKey, MemoryTag), u32>,
    pub nodes: u64,
    pub memo_hits: u64,
    pub budget: Option<u64>,
}

impl Explorer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: u64) -> Self {
        Explorer { budget: Some(budget), ..Self::default() }
    }

    /// Largest final label reachable from `state` (no pending vertex) with
    /// `ranker` in its current memory state.
    pub fn value(
        &mut self,
        state: &GameState,
        ranker: &dyn RankerStrategy,
        path: &mut Vec<Event>,
        check: &mut StepCheck<'_>,
    ) -> Result<u32, ExploreError> {
        let key = (crate::canon::canonical_key(state.forest()), ranker.memo_tag());
        if let Some(&v) = self.memo.get(&key) {
            self.memo_hits += 1;
            return Ok(v);
        }
        let mut best = state.max_label().map_or(0, |l| l.get());
        let (succ, _) = successors(state, usize::MAX);
        for s in succ {
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return Err(ExploreError::Budget(self.budget.unwrap_or_default()));
            }
            let presented = state.present_unchecked(s.forest);
            let mut r = ranker.box_clone();
            path.push(Event { attach: s.mv.clone(), label: None });
            let fail = |path: &Vec<Event>, source| ExploreError::Strategy {
                transcript: Box::new(partial(state.class(), path)),
                source,
            };
            let label = r.label(&presented).map_err(|e| fail(path, e))?;
            path.last_mut().expect("just pushed").label = Some(label);
            let labeled = presented
                .assign(label)
                .map_err(|e| fail(path, StrategyError::Game(e)))?;
            check(state.round(), &presented, &labeled).map_err(|message| ExploreError::Check {
                transcript: Box::new(partial(state.class(), path)),
                message,
            })?;
            best = best.max(self.value(&labeled, r.as_ref(), path, check)?);
            path.pop();
        }
        self.memo.insert(key, best);
        Ok(best)
    }
}

fn partial(class: &ClassSpec, path: &[Event]) -> Transcript {
    let mut t = Transcript::new(class.clone());
    t.events = path.to_vec();
    t
}

/// Explores every Presenter line against `ranker` from the empty board.
pub fn explore(
    class: &ClassSpec,
    ranker: &dyn RankerStrategy,
    budget: Option<u64>,
    check: &mut StepCheck<'_>,
) -> Result<ExploreReport, ExploreError> {
    if !is_finite(class) {
        return Err(ExploreError::Unbounded(class.to_string()));
    }
    let state = GameState::new(class.clone()).map_err(|e| ExploreError::Strategy {
        transcript: Box::new(Transcript::new(class.clone())),
        source: e.into(),
    })?;
    let mut ex = Explorer { budget, ..Explorer::default() };
    let max_label = ex.value(&state, ranker, &mut Vec::new(), check)?;
    Ok(ExploreReport { max_label, nodes: ex.nodes, memo_hits: ex.memo_hits })
}

/// Plays optimally against a known deterministic Ranker, tracking that
/// Ranker's memory with a private copy. Stops once no continuation can push
/// the maximum label higher.
#[derive(Clone)]
pub struct ExhaustivePresenter {
    shadow: Box<dyn RankerStrategy>,
    explorer: Explorer,
    last_presented: Option<GameState>,
}

impl ExhaustivePresenter {
    pub fn new(ranker: Box<dyn RankerStrategy>) -> Self {
        ExhaustivePresenter { shadow: ranker, explorer: Explorer::new(), last_presented: None }
    }
}

impl PresenterStrategy for ExhaustivePresenter {
    fn next_move(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        if !is_finite(state.class()) {
            return Err(StrategyError::Unsupported(format!(
                "exhaustive search needs a bounded class, got {}",
                state.class()
            )));
        }
        if let Some(p) = self.last_presented.take() {
            self.shadow.label(&p)?;
        }
        let current = state.max_label().map_or(0, |l| l.get());
        let mut best: Option<(u32, Move, GameState)> = None;
        let (succ, _) = successors(state, usize::MAX);
        for s in succ {
            let presented = state.present_unchecked(s.forest);
            let mut r = self.shadow.box_clone();
            let label = r.label(&presented)?;
            let labeled = presented.assign(label).map_err(StrategyError::Game)?;
            let v = self
                .explorer
                .value(&labeled, r.as_ref(), &mut Vec::new(), &mut |_, _, _| Ok(()))
                .map_err(|e| match e {
                    ExploreError::Strategy { source, .. } => source,
                    other => StrategyError::Unsupported(other.to_string()),
                })?;
            if best.as_ref().is_none_or(|b| v > b.0) {
                best = Some((v, s.mv, presented));
            }
        }
        match best {
            Some((v, mv, presented)) if v > current => {
                self.last_presented = Some(presented);
                Ok(mv)
            }
            _ => Ok(Move::Stop),
        }
    }

    fn box_clone(&self) -> Box<dyn PresenterStrategy> {
        Box::new(self.clone())
    }

    fn descriptor(&self) -> String {
        "exhaustive".into()
    }
}
