use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::forest::{Label, LabeledForest, VertexId};

use super::moves::{legal_moves, LegalMoves};
use super::{ClassSpec, GameError};

/// A Presenter action: reveal a vertex adjacent to exactly `attachments`, or
/// end the game.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Move {
    Attach(Vec<VertexId>),
    #[serde(with = "stop_marker")]
    Stop,
}

impl Move {
    pub fn isolated() -> Move {
        Move::Attach(Vec::new())
    }

    pub fn attach(mut ids: Vec<VertexId>) -> Move {
        ids.sort_unstable();
        Move::Attach(ids)
    }
}

mod stop_marker {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("stop")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "stop" {
            Ok(())
        } else {
            Err(serde::de::Error::custom(format!("expected \"stop\", found {s:?}")))
        }
    }
}

/// A position of the game. The forest's only unlabeled vertex, if any, is
/// the pending vertex and it is the Ranker's turn.
#[derive(Debug, Clone)]
pub struct GameState {
    forest: LabeledForest,
    class: Arc<ClassSpec>,
    pending: Option<VertexId>,
    round: usize,
}

impl GameState {
    pub fn new(class: ClassSpec) -> Result<Self, GameError> {
        class.validate()?;
        Ok(GameState {
            forest: LabeledForest::new(),
            class: Arc::new(class),
            pending: None,
            round: 0,
        })
    }

    /// Wraps an existing board. At most one vertex may be unlabeled.
    pub fn from_forest(forest: LabeledForest, class: Arc<ClassSpec>) -> Result<Self, GameError> {
        let unlabeled: Vec<VertexId> = forest.unlabeled_vertices().take(2).collect();
        if let Some(&second) = unlabeled.get(1) {
            return Err(GameError::PendingVertex(second));
        }
        let pending = unlabeled.first().copied();
        let round = forest.len() - usize::from(pending.is_some());
        Ok(GameState {
            forest,
            class,
            pending,
            round,
        })
    }

    pub fn forest(&self) -> &LabeledForest {
        &self.forest
    }

    pub fn class(&self) -> &ClassSpec {
        &self.class
    }

    pub fn class_arc(&self) -> &Arc<ClassSpec> {
        &self.class
    }

    pub fn pending(&self) -> Option<VertexId> {
        self.pending
    }

    /// Number of completed rounds (labeled vertices).
    pub fn round(&self) -> usize {
        self.round
    }

    pub fn max_label(&self) -> Option<Label> {
        self.forest.max_label()
    }

    pub fn is_legal_extension(&self, mv: &Move) -> bool {
        if self.pending.is_some() {
            return false;
        }
        match mv {
            Move::Stop => true,
            Move::Attach(att) => match self.forest.add_vertex(att) {
                Ok(next) => self.class.admits(&next),
                Err(_) => false,
            },
        }
    }

    /// Legal moves up to isomorphism of the successor, at most `limit` of them.
    pub fn legal_moves(&self, limit: usize) -> LegalMoves {
        legal_moves(self, limit)
    }

    pub fn present(&self, mv: &Move) -> Result<GameState, GameError> {
        if let Some(p) = self.pending {
            return Err(GameError::PendingVertex(p));
        }
        let Move::Attach(att) = mv else {
            return Err(GameError::IllegalMove("stop presents no vertex".into()));
        };
        let forest = self.forest.add_vertex(att)?;
        if !self.class.admits(&forest) {
            return Err(GameError::IllegalMove(format!(
                "attaching to {att:?} leaves the class {}",
                self.class
            )));
        }
        let v = forest.len() - 1;
        Ok(GameState {
            forest,
            class: Arc::clone(&self.class),
            pending: Some(v),
            round: self.round,
        })
    }

    /// Presents without the class check; for callers that already verified it.
    pub(crate) fn present_unchecked(&self, forest: LabeledForest) -> GameState {
        let v = forest.len() - 1;
        GameState {
            forest,
            class: Arc::clone(&self.class),
            pending: Some(v),
            round: self.round,
        }
    }

    pub fn assign(&self, label: Label) -> Result<GameState, GameError> {
        let v = self.pending.ok_or(GameError::NoPendingVertex)?;
        if !self.forest.label_constraint(v, |_| true).admits(label.get()) {
            return Err(GameError::InvalidLabel { vertex: v, label });
        }
        Ok(GameState {
            forest: self.forest.with_label(v, label),
            class: Arc::clone(&self.class),
            pending: None,
            round: self.round + 1,
        })
    }
}
