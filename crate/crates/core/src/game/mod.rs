//! The Presenter/Ranker protocol: classes, legal moves, turns and transcripts.

mod class;
pub(crate) mod moves;
mod play;
mod state;
mod transcript;

use thiserror::Error;

use crate::forest::{ForestError, Label, VertexId};

pub use class::{few_internal_admits, host_text, ClassKind, ClassSpec, EXACT_PACKING_LIMIT};
pub use moves::LegalMoves;
pub use play::{
    play, MemoryTag, PlayError, PresenterStrategy, RankerStrategy, StrategyError,
    DEFAULT_MAX_ROUNDS,
};
pub use state::{GameState, Move};
pub use transcript::{Event, ReplayError, Transcript};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("label {label} is not a valid ranking extension at vertex {vertex}")]
    InvalidLabel { vertex: VertexId, label: Label },
    #[error("no vertex is waiting for a label")]
    NoPendingVertex,
    #[error("vertex {0} is still waiting for a label")]
    PendingVertex(VertexId),
    #[error("transcript has no labeled rounds")]
    EmptyTranscript,
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error(transparent)]
    Forest(#[from] ForestError),
}
