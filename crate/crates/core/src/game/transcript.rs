use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_key;
use crate::forest::{Label, LabeledForest};

use super::{ClassSpec, GameError, GameState, Move};

/// One round: the presented move and the label it received. A trailing
/// `stop` event carries no label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub attach: Move,
    pub label: Option<Label>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub class: ClassSpec,
    pub seed: Option<u64>,
    pub events: Vec<Event>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presenter: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ranker: Option<String>,
    /// Hex canonical key of the final board, checked on replay when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_key: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("round {round}: {source}")]
    Game { round: usize, source: GameError },
    #[error("round {round}: labeling is not a ranking")]
    NotRanking { round: usize },
    #[error("round {round}: event after stop")]
    AfterStop { round: usize },
    #[error("round {round}: missing label")]
    MissingLabel { round: usize },
    #[error("round {round}: stop carries a label")]
    LabeledStop { round: usize },
    #[error("final board differs from the recorded key")]
    KeyMismatch,
    #[error("round {round}: {message}")]
    Check { round: usize, message: String },
}

impl ReplayError {
    pub fn round(&self) -> Option<usize> {
        match self {
            ReplayError::Game { round, .. }
            | ReplayError::NotRanking { round }
            | ReplayError::AfterStop { round }
            | ReplayError::MissingLabel { round }
            | ReplayError::LabeledStop { round }
            | ReplayError::Check { round, .. } => Some(*round),
            ReplayError::KeyMismatch => None,
        }
    }
}

pub fn key_hex(f: &LabeledForest) -> String {
    canonical_key(f).as_bytes().iter().map(|b| format!("{b:02x}")).collect()
}

impl Transcript {
    pub fn new(class: ClassSpec) -> Self {
        Transcript {
            class,
            seed: None,
            events: Vec::new(),
            presenter: None,
            ranker: None,
            final_key: None,
        }
    }

    /// Number of labeled rounds.
    pub fn rounds(&self) -> usize {
        self.events.iter().filter(|e| e.label.is_some()).count()
    }

    pub fn max_label(&self) -> Result<Label, GameError> {
        self.events
            .iter()
            .filter_map(|e| e.label)
            .max()
            .ok_or(GameError::EmptyTranscript)
    }

    pub fn stopped(&self) -> bool {
        self.events.last().is_some_and(|e| e.attach == Move::Stop)
    }

    pub fn replay(&self) -> Result<GameState, ReplayError> {
        self.replay_with(|_, _, _| Ok(()))
    }

    /// Replays from the empty board. `check(round, presented, labeled)` runs
    /// after every labeled round with the state holding the pending vertex
    /// and the state after its label.
    pub fn replay_with(
        &self,
        mut check: impl FnMut(usize, &GameState, &GameState) -> Result<(), String>,
    ) -> Result<GameState, ReplayError> {
        let game = |round| move |source| ReplayError::Game { round, source };
        let mut state = GameState::from_forest(LabeledForest::new(), Arc::new(self.class.clone()))
            .map_err(game(0))?;
        self.class.validate().map_err(game(0))?;
        for (round, ev) in self.events.iter().enumerate() {
            if ev.attach == Move::Stop {
                if ev.label.is_some() {
                    return Err(ReplayError::LabeledStop { round });
                }
                if round + 1 != self.events.len() {
                    return Err(ReplayError::AfterStop { round: round + 1 });
                }
                break;
            }
            let label = ev.label.ok_or(ReplayError::MissingLabel { round })?;
            let presented = state.present(&ev.attach).map_err(game(round))?;
            let labeled = presented.assign(label).map_err(game(round))?;
            if !labeled.forest().is_partial_ranking() {
                return Err(ReplayError::NotRanking { round });
            }
            check(round, &presented, &labeled).map_err(|message| ReplayError::Check { round, message })?;
            state = labeled;
        }
        if let Some(k) = &self.final_key {
            if *k != key_hex(state.forest()) {
                return Err(ReplayError::KeyMismatch);
            }
        }
        Ok(state)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcripts always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}
