use thiserror::Error;

use crate::forest::{Label, VertexId};

use super::transcript::key_hex;
use super::{ClassSpec, Event, GameError, GameState, Move, Transcript};

/// Round limit when neither the caller nor the class sets one.
pub const DEFAULT_MAX_ROUNDS: usize = 10_000;

/// Compact summary of a strategy's private memory. Two instances with equal
/// tags behave identically from equal boards on.
pub type MemoryTag = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("no case applies to vertex {0}")]
    NoCase(VertexId),
    #[error("cases {cases} all apply to vertex {vertex}")]
    MultiCase { vertex: VertexId, cases: String },
    #[error("no label of segment {segment} completes a ranking at vertex {vertex}")]
    Existence { vertex: VertexId, segment: &'static str },
    #[error("board leaves the class: {0}")]
    ClassViolation(String),
    #[error("strategy is not applicable: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Game(#[from] GameError),
}

pub trait PresenterStrategy: Send {
    /// Next move from a board with no pending vertex.
    fn next_move(&mut self, state: &GameState) -> Result<Move, StrategyError>;

    fn box_clone(&self) -> Box<dyn PresenterStrategy>;

    /// Registry-style name with parameters, recorded in transcripts.
    fn descriptor(&self) -> String;

    fn seed(&self) -> Option<u64> {
        None
    }
}

pub trait RankerStrategy: Send {
    /// Label for the pending vertex. May update private memory.
    fn label(&mut self, state: &GameState) -> Result<Label, StrategyError>;

    fn box_clone(&self) -> Box<dyn RankerStrategy>;

    fn descriptor(&self) -> String;

    fn memo_tag(&self) -> MemoryTag {
        Vec::new()
    }
}

impl Clone for Box<dyn PresenterStrategy> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

impl Clone for Box<dyn RankerStrategy> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

/// An aborted game. `transcript` holds every completed round; `offender` is
/// the rejected move, with the rejected label when the Ranker was at fault.
#[derive(Debug, Clone, Error)]
#[error("round {round}: {source}")]
pub struct PlayError {
    pub round: usize,
    pub offender: Option<Event>,
    pub transcript: Box<Transcript>,
    pub source: StrategyError,
}

/// Alternates the two strategies until the Presenter stops or `max_rounds`
/// labeled rounds have been played. `max_rounds` defaults to the class cap,
/// else [`DEFAULT_MAX_ROUNDS`].
pub fn play(
    class: &ClassSpec,
    presenter: &mut dyn PresenterStrategy,
    ranker: &mut dyn RankerStrategy,
    max_rounds: Option<usize>,
) -> Result<Transcript, PlayError> {
    let limit = max_rounds
        .or(class.n_cap)
        .unwrap_or(DEFAULT_MAX_ROUNDS);
    let mut transcript = Transcript::new(class.clone());
    transcript.seed = presenter.seed();
    transcript.presenter = Some(presenter.descriptor());
    transcript.ranker = Some(ranker.descriptor());
    let fail = |t: &Transcript, round, offender, source| PlayError {
        round,
        offender,
        transcript: Box::new(t.clone()),
        source,
    };
    let mut state = GameState::new(class.clone()).map_err(|e| fail(&transcript, 0, None, e.into()))?;
    for round in 0..limit {
        let mv = presenter
            .next_move(&state)
            .map_err(|e| fail(&transcript, round, None, e))?;
        if mv == Move::Stop {
            transcript.events.push(Event { attach: Move::Stop, label: None });
            break;
        }
        let offending = Event { attach: mv.clone(), label: None };
        let presented = state
            .present(&mv)
            .map_err(|e| fail(&transcript, round, Some(offending.clone()), e.into()))?;
        let label = ranker
            .label(&presented)
            .map_err(|e| fail(&transcript, round, Some(offending.clone()), e))?;
        let offending = Event { attach: mv.clone(), label: Some(label) };
        state = presented
            .assign(label)
            .map_err(|e| fail(&transcript, round, Some(offending.clone()), e.into()))?;
        transcript.events.push(offending);
    }
    transcript.final_key = Some(key_hex(state.forest()));
    Ok(transcript)
}
