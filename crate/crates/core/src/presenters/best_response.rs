//! The Ranker's best reply to a fixed Presenter strategy, by searching every
//! sequence of valid labels.
//!
//! No transposition table: a history-dependent Presenter's next move is a
//! function of the whole label sequence, which never repeats along distinct
//! branches.

use crate::forest::Label;
use crate::game::{ClassSpec, Event, GameState, Move, PresenterStrategy, StrategyError, Transcript};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelRange {
    /// Every valid label up to the bound under test.
    Exact,
    /// Valid labels up to one above the current maximum.
    Restricted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponse {
    /// Smallest maximum label the Ranker can hold the Presenter to.
    pub value: u32,
    /// A game in which the Ranker achieves `value`.
    pub witness: Transcript,
    pub nodes: u64,
}

struct Search {
    range: LabelRange,
    bound: u32,
    max_rounds: usize,
    nodes: u64,
}

impl Search {
    /// Whether the Ranker keeps every label `<= bound` from here on.
    fn holds(
        &mut self,
        state: &GameState,
        presenter: &dyn PresenterStrategy,
        path: &mut Vec<Event>,
    ) -> Result<bool, StrategyError> {
        if state.round() >= self.max_rounds {
            return Ok(true);
        }
        let mut p = presenter.box_clone();
        let mv = p.next_move(state)?;
        if mv == Move::Stop {
            path.push(Event { attach: Move::Stop, label: None });
            return Ok(true);
        }
        let presented = state.present(&mv)?;
        let v = presented.pending().expect("just presented");
        let current = state.max_label().map_or(0, |l| l.get());
        let top = match self.range {
            LabelRange::Exact => self.bound,
            LabelRange::Restricted => self.bound.min(current + 1),
        };
        let c = presented.forest().label_constraint(v, |_| true);
        for l in (1..=top).filter(|&l| c.admits(l)) {
            self.nodes += 1;
            let label = Label::new(l).expect("labels start at 1");
            let labeled = presented.assign(label)?;
            path.push(Event { attach: mv.clone(), label: Some(label) });
            if self.holds(&labeled, p.as_ref(), path)? {
                return Ok(true);
            }
            path.truncate(labeled.round() - 1);
        }
        Ok(false)
    }
}

/// Searches Ranker replies to `presenter` for bounds `1, 2, ...` and returns
/// the first that the Ranker can keep. Games are cut after `max_rounds`
/// labeled rounds.
pub fn best_response(
    class: &ClassSpec,
    presenter: &dyn PresenterStrategy,
    range: LabelRange,
    max_rounds: usize,
) -> Result<BestResponse, StrategyError> {
    let start = GameState::new(class.clone())?;
    let mut nodes = 0;
    for bound in 1.. {
        let mut s = Search { range, bound, max_rounds, nodes: 0 };
        let mut path = Vec::new();
        let held = s.holds(&start, presenter, &mut path)?;
        nodes += s.nodes;
        if held {
            let mut witness = Transcript::new(class.clone());
            witness.events = path;
            witness.presenter = Some(presenter.descriptor());
            witness.ranker = Some(format!("best-response:b={bound}"));
            return Ok(BestResponse { value: bound, witness, nodes });
        }
    }
    unreachable!("a label above every other is always valid, so some bound holds")
}
