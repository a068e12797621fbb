//! Four labels suffice on trees of diameter 3.
//!
//! The first vertex gets 3 and every other vertex shown before the first
//! edge gets 2. The vertex `v` that brings the first edge(s) is the center of
//! a star; how it sits relative to the 3 fixes a [`Mode`], which decides the
//! labels of `v`, of `v'` (the first vertex to complete a path on four
//! vertices) and of the vertices in between. Vertices that must end up as
//! leaves get 1.

use crate::forest::{Label, VertexId};
use crate::game::{GameError, GameState, MemoryTag, RankerStrategy, StrategyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Phase {
    #[default]
    Empty,
    /// Only isolated vertices so far.
    BeforeCenter,
    /// `v` has been seen, `v'` has not.
    BeforeCompletion,
    Completed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// The board at `v` was a single edge.
    A,
    /// `v` touched the 3 and at least one more vertex.
    B,
    /// `v` touched only the 3, with isolated vertices left over.
    C,
    /// `v` avoided the 3.
    D,
}

impl Mode {
    fn center_label(self) -> u32 {
        match self {
            Mode::A | Mode::B => 4,
            Mode::C => 2,
            Mode::D => 3,
        }
    }

    fn undetermined_label(self) -> u32 {
        match self {
            Mode::A => 2,
            Mode::B => 3,
            Mode::C | Mode::D => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexRole {
    First,
    /// Isolated, before `v`.
    Early,
    ForcedLeaf,
    Undetermined,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DoubleStarMemory {
    pub phase: Phase,
    pub mode: Option<Mode>,
    pub first: Option<VertexId>,
    pub v_seen: Option<VertexId>,
    pub v_prime_seen: Option<VertexId>,
    /// Role of every labeled vertex, by id.
    pub roles: Vec<VertexRole>,
}

impl DoubleStarMemory {
    pub fn tag(&self) -> MemoryTag {
        vec![self.phase as u32, self.mode.map_or(0, |m| m as u32 + 1)]
    }
}

fn violation(msg: impl Into<String>) -> StrategyError {
    StrategyError::ClassViolation(msg.into())
}

pub fn doublestar_label(
    state: &GameState,
    memory: &DoubleStarMemory,
) -> Result<(Label, DoubleStarMemory), StrategyError> {
    let u = state.pending().ok_or(GameError::NoPendingVertex)?;
    let f = state.forest();
    let mut mem = memory.clone();
    let deg = f.degree(u);
    let connected = f.component_count() == 1;
    let (value, role) = match memory.phase {
        Phase::Empty => {
            mem.phase = Phase::BeforeCenter;
            mem.first = Some(u);
            (3, VertexRole::First)
        }
        Phase::BeforeCenter if deg == 0 => (2, VertexRole::Early),
        Phase::BeforeCenter => {
            let three = memory.first.expect("first vertex recorded");
            let on_three = f.has_edge(u, three);
            let mode = match (f.edge_count(), on_three) {
                (1, true) if f.len() == 2 => Mode::A,
                (1, true) => Mode::C,
                (_, true) => Mode::B,
                // a connected board with one edge would be exactly P_2, and
                // a connected board with more edges puts `v` on the 3, so the
                // remaining case is always disconnected
                (_, false) => Mode::D,
            };
            mem.phase = Phase::BeforeCompletion;
            mem.mode = Some(mode);
            mem.v_seen = Some(u);
            (mode.center_label(), VertexRole::Undetermined)
        }
        Phase::BeforeCompletion => {
            let mode = memory.mode.expect("mode fixed with v");
            let diam = f.diameter(u).map_err(GameError::from)?;
            if diam >= 3 {
                if !connected {
                    return Err(violation("a path on four vertices appeared on a disconnected board"));
                }
                mem.phase = Phase::Completed;
                mem.v_prime_seen = Some(u);
                if deg == 1 {
                    (1, VertexRole::ForcedLeaf)
                } else {
                    (mode.undetermined_label(), VertexRole::Undetermined)
                }
            } else if !connected {
                (1, VertexRole::ForcedLeaf)
            } else if matches!(mode, Mode::C | Mode::D) {
                return Err(violation(format!(
                    "vertex {u} connects the board before a path on four vertices exists"
                )));
            } else {
                (mode.undetermined_label(), VertexRole::Undetermined)
            }
        }
        Phase::Completed => {
            if !connected || deg != 1 {
                return Err(violation(format!("vertex {u} cannot be a leaf of the final tree")));
            }
            (1, VertexRole::ForcedLeaf)
        }
    };
    if mem.roles.len() <= u {
        mem.roles.resize(u + 1, VertexRole::ForcedLeaf);
    }
    mem.roles[u] = role;
    Ok((Label::new(value).expect("labels start at 1"), mem))
}

#[derive(Debug, Clone, Default)]
pub struct DoubleStarRanker {
    pub memory: DoubleStarMemory,
}

impl DoubleStarRanker {
    pub fn new() -> Self {
        Self::default()
    }
}

impl RankerStrategy for DoubleStarRanker {
    fn label(&mut self, state: &GameState) -> Result<Label, StrategyError> {
        let (l, mem) = doublestar_label(state, &self.memory)?;
        self.memory = mem;
        Ok(l)
    }

    fn box_clone(&self) -> Box<dyn RankerStrategy> {
        Box::new(self.clone())
    }

    fn descriptor(&self) -> String {
        "doublestar".into()
    }

    fn memo_tag(&self) -> MemoryTag {
        self.memory.tag()
    }
}
