use std::collections::{BTreeMap, HashSet};

use crate::canon::{canonical_key, component_encoding, rooted_encoding, CanonicalKey};
use crate::forest::{LabeledForest, VertexId};

use super::{GameState, Move};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegalMoves {
    pub moves: Vec<Move>,
    /// Set when enumeration stopped at the limit with more moves remaining.
    pub truncated: bool,
}

/// A legal move together with the board it produces.
#[derive(Debug, Clone)]
pub(crate) struct Successor {
    pub mv: Move,
    pub forest: LabeledForest,
    pub key: CanonicalKey,
}

/// Identical components, with the attachment orbits of each copy listed in a
/// shared order: `orbits[c][o]` is the vertex of copy `c` in orbit `o`.
struct ComponentClass {
    orbits: Vec<Vec<VertexId>>,
}

pub(super) fn legal_moves(state: &GameState, limit: usize) -> LegalMoves {
    let (succ, truncated) = successors(state, limit);
    LegalMoves {
        moves: succ.into_iter().map(|s| s.mv).collect(),
        truncated,
    }
}

pub(crate) fn successors(state: &GameState, limit: usize) -> (Vec<Successor>, bool) {
    if state.pending().is_some() {
        return (Vec::new(), false);
    }
    let forest = state.forest();
    let class = state.class();
    if class.n_cap.is_some_and(|cap| forest.len() >= cap) {
        return (Vec::new(), false);
    }
    let max_deg = class.max_degree();
    let max_diam = class.max_diameter();
    let usable = |v: VertexId| {
        max_deg.is_none_or(|k| forest.degree(v) < k)
            && max_diam.is_none_or(|d| forest.eccentricity(v).is_ok_and(|e| e < d))
    };

    let mut grouped: BTreeMap<Vec<u8>, Vec<Vec<VertexId>>> = BTreeMap::new();
    for comp in forest.components() {
        grouped.entry(component_encoding(forest, &comp)).or_default().push(comp);
    }
    let mut classes = Vec::new();
    for comps in grouped.into_values() {
        let orbits: Vec<Vec<VertexId>> = comps
            .iter()
            .map(|comp| {
                let mut by_enc: BTreeMap<Vec<u8>, VertexId> = BTreeMap::new();
                for &v in comp {
                    if usable(v) {
                        by_enc.entry(rooted_encoding(forest, v)).or_insert(v);
                    }
                }
                by_enc.into_values().collect()
            })
            .collect();
        if !orbits[0].is_empty() {
            classes.push(ComponentClass { orbits });
        }
    }

    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut truncated = false;
    let mut chosen = Vec::new();
    let budget = max_deg.unwrap_or(usize::MAX);
    let mut emit = |attach: &[VertexId]| -> bool {
        let Ok(next) = forest.add_vertex(attach) else {
            return true;
        };
        if !class.admits(&next) {
            return true;
        }
        let key = canonical_key(&next);
        if !seen.insert(key.clone()) {
            return true;
        }
        if out.len() == limit {
            truncated = true;
            return false;
        }
        out.push(Successor {
            mv: Move::attach(attach.to_vec()),
            forest: next,
            key,
        });
        true
    };
    enumerate(&classes, 0, budget, &mut chosen, &mut emit);
    (out, truncated)
}

/// Walks every multiset of orbits per class, within the attachment budget.
/// Returns false once `emit` asks to stop.
fn enumerate(
    classes: &[ComponentClass],
    idx: usize,
    budget: usize,
    chosen: &mut Vec<VertexId>,
    emit: &mut impl FnMut(&[VertexId]) -> bool,
) -> bool {
    let Some(class) = classes.get(idx) else {
        return emit(chosen);
    };
    let copies = class.orbits.len();
    let mut picks = Vec::new();
    multisets(class, copies.min(budget), 0, &mut picks, &mut |picks| {
        let base = chosen.len();
        for (copy, &o) in picks.iter().enumerate() {
            chosen.push(class.orbits[copy][o]);
        }
        let go_on = enumerate(classes, idx + 1, budget - picks.len(), chosen, emit);
        chosen.truncate(base);
        go_on
    })
}

/// Nondecreasing orbit sequences of length at most `room`.
fn multisets(
    class: &ComponentClass,
    room: usize,
    from: usize,
    picks: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if !visit(picks) {
        return false;
    }
    if room == 0 {
        return true;
    }
    for o in from..class.orbits[0].len() {
        picks.push(o);
        let go_on = multisets(class, room - 1, o, picks, visit);
        picks.pop();
        if !go_on {
            return false;
        }
    }
    true
}
