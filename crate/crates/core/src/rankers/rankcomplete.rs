use std::fmt;

use crate::embed::embeds_in_star_tree;
use crate::forest::{Label, LabeledForest, VertexId};
use crate::game::{GameError, GameState, RankerStrategy, StrategyError};
use crate::generators::{star_tree_size, tkd_size};

use super::ranksmall::ranksmall_label;

/// Inclusive label interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub lo: u32,
    pub hi: u32,
}

impl Segment {
    pub fn contains(&self, l: u32) -> bool {
        (self.lo..=self.hi).contains(&l)
    }

    pub fn len(&self) -> u32 {
        self.hi + 1 - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    /// `1..=self.hi`, the union of this segment with all lower ones.
    pub fn prefix(&self) -> Segment {
        Segment { lo: 1, hi: self.hi }
    }
}

/// The X/Y/Z split of `1..=3|T*_{k-1,j}|` with `j = floor(d/3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabelSegments {
    pub j: usize,
    pub x: Segment,
    pub y: Segment,
    pub z: Segment,
}

impl LabelSegments {
    pub fn new(k: usize, d: usize) -> Result<Self, GameError> {
        let j = d / 3;
        if k < 3 || j == 0 {
            return Err(GameError::InvalidClass(format!("segments need k >= 3 and d >= 3, got k={k}, d={d}")));
        }
        let size = |r| {
            star_tree_size(k - 1, r)
                .filter(|&s| s <= u128::from(u32::MAX / 3))
                .map(|s| s as u32)
                .ok_or_else(|| GameError::InvalidClass(format!("label range too large for k={k}, d={d}")))
        };
        let sx = size(j - 1)?;
        let sy = size(j)?;
        Ok(LabelSegments {
            j,
            x: Segment { lo: 1, hi: sx },
            y: Segment { lo: sx + 1, hi: sy },
            z: Segment { lo: sy + 1, hi: 3 * sy },
        })
    }

    pub fn max_label(&self) -> u32 {
        self.z.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    I,
    II,
    III,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
        })
    }
}

/// Smallest label of `a` that completes a ranking of `T_B(v)`, the region
/// around `v` whose other vertices carry labels from `b`.
pub fn f_ab(forest: &LabeledForest, v: VertexId, a: Segment, b: Segment) -> Option<Label> {
    let region = forest.subtree_region(v, |l| b.contains(l.get())).ok()?;
    let mut inside = vec![false; forest.len()];
    for &u in &region {
        inside[u] = true;
    }
    let c = forest.label_constraint(v, |u| inside[u]);
    (a.lo..=a.hi).find(|&l| c.admits(l)).and_then(Label::new)
}

/// Whether `T_X(v)` is cut off from the rest of `T(v)` by a single vertex
/// labeled from `Y`.
fn y_separated(forest: &LabeledForest, region: &[VertexId], seg: &LabelSegments) -> bool {
    let mut inside = vec![false; forest.len()];
    for &u in region {
        inside[u] = true;
    }
    let mut outside: Vec<VertexId> = region
        .iter()
        .flat_map(|&u| forest.neighbors(u).iter().copied())
        .filter(|&w| !inside[w])
        .collect();
    outside.sort_unstable();
    outside.dedup();
    matches!(outside.as_slice(), [u] if seg.y.contains(forest.label_value(*u)))
}

/// The unique case of the table that applies to the pending vertex.
pub fn rankcomplete_case(state: &GameState, k: usize, d: usize) -> Result<CaseTag, StrategyError> {
    let seg = LabelSegments::new(k, d)?;
    let v = state.pending().ok_or(GameError::NoPendingVertex)?;
    case_of(state.forest(), v, k, d, &seg)
}

fn case_of(
    forest: &LabeledForest,
    v: VertexId,
    k: usize,
    d: usize,
    seg: &LabelSegments,
) -> Result<CaseTag, StrategyError> {
    let j = seg.j;
    let far = forest.eccentricity(v).map_err(GameError::from)? >= d - j;
    let region = forest
        .subtree_region(v, |l| seg.x.contains(l.get()))
        .map_err(GameError::from)?;
    let fits = embeds_in_star_tree(&forest.induced(&region), k - 1, j - 1);
    let whole = region.len() == forest.component_of(v).len();
    let ysep = !whole && y_separated(forest, &region, seg);

    let mut cases = Vec::new();
    if fits && (whole || ysep) {
        cases.push(CaseTag::I);
    }
    if far && !ysep {
        cases.push(CaseTag::II);
    }
    if !far && (!fits || !whole) {
        cases.push(CaseTag::III);
    }
    match cases.as_slice() {
        [] => Err(StrategyError::NoCase(v)),
        [c] => Ok(*c),
        many => Err(StrategyError::MultiCase {
            vertex: v,
            cases: many.iter().map(CaseTag::to_string).collect::<Vec<_>>().join(","),
        }),
    }
}

/// The label chosen for the pending vertex on `T_{k,d}`. Diameters below 6
/// are handed to the few-internal-vertices strategy.
pub fn rankcomplete_label(state: &GameState, k: usize, d: usize) -> Result<Label, StrategyError> {
    if k < 3 {
        return Err(StrategyError::Unsupported(format!("rankcomplete needs k >= 3, got {k}")));
    }
    if d <= 5 {
        return Ok(ranksmall_label(state, d)?);
    }
    let seg = LabelSegments::new(k, d)?;
    let v = state.pending().ok_or(GameError::NoPendingVertex)?;
    let forest = state.forest();
    let (a, b, name) = match case_of(forest, v, k, d, &seg)? {
        CaseTag::I => (seg.x, seg.x, "X"),
        CaseTag::II => (seg.y, seg.y.prefix(), "Y"),
        CaseTag::III => (seg.z, seg.z.prefix(), "Z"),
    };
    f_ab(forest, v, a, b).ok_or(StrategyError::Existence { vertex: v, segment: name })
}

/// Internal-vertex count of `T_{k,d}`, the `p` of the small-diameter dispatch.
pub fn tkd_internal_count(k: usize, d: usize) -> u128 {
    if d < 2 {
        0
    } else {
        tkd_size(k, d - 2).unwrap_or(u128::MAX)
    }
}

#[derive(Debug, Clone)]
pub struct RankcompleteRanker {
    pub k: usize,
    pub d: usize,
}

impl RankcompleteRanker {
    pub fn new(k: usize, d: usize) -> Self {
        RankcompleteRanker { k, d }
    }
}

impl RankerStrategy for RankcompleteRanker {
    fn label(&mut self, state: &GameState) -> Result<Label, StrategyError> {
        rankcomplete_label(state, self.k, self.d)
    }

    fn box_clone(&self) -> Box<dyn RankerStrategy> {
        Box::new(self.clone())
    }

    fn descriptor(&self) -> String {
        format!("rankcomplete:k={},d={}", self.k, self.d)
    }
}
