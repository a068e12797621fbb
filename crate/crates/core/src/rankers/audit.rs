//! Post-hoc checks of the structural facts a Rankcomplete or Ranksmall game
//! must satisfy, run round by round over a replayed transcript.

use thiserror::Error;

use crate::forest::{LabeledForest, VertexId};
use crate::game::{GameError, GameState, Transcript};

use super::rankcomplete::LabelSegments;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("round {round}: lemma {lemma} fails at vertex {vertex}: {detail}")]
pub struct LemmaViolation {
    pub round: usize,
    pub lemma: &'static str,
    pub vertex: VertexId,
    pub detail: String,
}

/// Round-by-round checker for Rankcomplete games on `T_{k,d}`, `d >= 6`.
///
/// Lemma tags: `separate`, `yyy`, `zyy`, `z` and `bound`.
#[derive(Debug, Clone)]
pub struct RankcompleteAudit {
    seg: LabelSegments,
    /// Y-labeled vertices with the neighbour leading into their widest branch
    /// at the time they were labeled.
    anchors: Vec<(VertexId, VertexId)>,
}

impl RankcompleteAudit {
    pub fn new(k: usize, d: usize) -> Result<Self, GameError> {
        Ok(RankcompleteAudit {
            seg: LabelSegments::new(k, d)?,
            anchors: Vec::new(),
        })
    }

    /// Checks the round in which the pending vertex of `presented` received
    /// its label, giving `labeled`.
    pub fn check_round(
        &mut self,
        round: usize,
        presented: &GameState,
        labeled: &GameState,
    ) -> Result<(), LemmaViolation> {
        let seg = self.seg;
        let before = presented.forest();
        let after = labeled.forest();
        let v = presented.pending().expect("presented state has a pending vertex");
        let l = after.label_value(v);
        let fail = |lemma, detail: String| LemmaViolation { round, lemma, vertex: v, detail };

        if l > seg.max_label() {
            return Err(fail("bound", format!("label {l} exceeds {}", seg.max_label())));
        }

        let comp = before.component_of(v);
        if seg.z.contains(l) && l > seg.z.lo && !comp.iter().any(|&u| before.label_value(u) == l) {
            let region = before
                .subtree_region(v, |x| !seg.y.contains(x.get()))
                .expect("pending vertex exists");
            let mut inside = vec![false; before.len()];
            for &u in &region {
                inside[u] = true;
            }
            inside[v] = false;
            let covered = before.neighbors(v).iter().filter(|&&w| inside[w]).any(|&w| {
                let branch = reach(before, w, |u| inside[u]);
                (seg.z.lo..l).all(|m| branch.iter().any(|&u| before.label_value(u) == m))
            });
            if !covered {
                return Err(fail("z", format!("new label {l} without all smaller Z labels on one side")));
            }
        }

        if seg.y.contains(l) {
            let anchor = before
                .neighbors(v)
                .iter()
                .copied()
                .max_by_key(|&w| {
                    let branch = reach(before, w, |u| u != v);
                    (branch_diameter(before, &branch), std::cmp::Reverse(w))
                })
                .ok_or_else(|| fail("separate", "Y label on an isolated vertex".into()))?;
            self.anchors.push((v, anchor));
        }

        let mut in_comp = vec![false; after.len()];
        for &u in &comp {
            in_comp[u] = true;
        }
        for &(y, anchor) in &self.anchors {
            if !in_comp[y] {
                continue;
            }
            for &w in after.neighbors(y) {
                if w == anchor {
                    continue;
                }
                let cut_off = reach(after, w, |u| u != y);
                if let Some(&bad) = cut_off.iter().find(|&&u| !seg.x.contains(after.label_value(u))) {
                    return Err(fail(
                        "separate",
                        format!("vertex {bad} is cut off by Y-labeled {y} but labeled {}", after.label_value(bad)),
                    ));
                }
            }
        }

        let xy = after
            .subtree_region(v, |x| x.get() <= seg.y.hi)
            .expect("labeled vertex exists");
        let ys: Vec<VertexId> = xy.iter().copied().filter(|&u| seg.y.contains(after.label_value(u))).collect();
        let dist: Vec<Vec<Option<usize>>> = ys.iter().map(|&y| after.distances_from(y)).collect();
        for a in 0..ys.len() {
            for b in a + 1..ys.len() {
                for c in b + 1..ys.len() {
                    let d = |i: usize, j: usize| dist[i][ys[j]].expect("same component");
                    if collinear(d(a, b), d(a, c), d(b, c)) {
                        return Err(fail(
                            "yyy",
                            format!("Y-labeled {}, {}, {} lie on one path", ys[a], ys[b], ys[c]),
                        ));
                    }
                }
            }
        }

        let has_y = comp.iter().any(|&u| seg.y.contains(after.label_value(u)));
        let zs: Vec<VertexId> = comp.iter().copied().filter(|&u| seg.z.contains(after.label_value(u))).collect();
        if has_y && zs.is_empty() {
            return Err(fail("zyy", "component has a Y label but no Z label".into()));
        }
        for &z in &zs {
            let dz = after.distances_from(z);
            for a in 0..ys.len() {
                for b in a + 1..ys.len() {
                    let dab = dist[a][ys[b]].expect("same component");
                    let da = dz[ys[a]].expect("same component");
                    let db = dz[ys[b]].expect("same component");
                    if collinear(dab, da, db) {
                        return Err(fail(
                            "zyy",
                            format!("Z-labeled {z} and Y-labeled {}, {} lie on one path", ys[a], ys[b]),
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Distances `ab`, `ac`, `bc` of three tree vertices; true when one lies on
/// the path between the other two.
fn collinear(ab: usize, ac: usize, bc: usize) -> bool {
    ab == ac + bc || ac == ab + bc || bc == ab + ac
}

/// Vertices reachable from `start` through vertices accepted by `keep`.
fn reach(f: &LabeledForest, start: VertexId, keep: impl Fn(VertexId) -> bool) -> Vec<VertexId> {
    let mut seen = vec![false; f.len()];
    seen[start] = true;
    let mut out = vec![start];
    let mut i = 0;
    while i < out.len() {
        let u = out[i];
        i += 1;
        for &w in f.neighbors(u) {
            if !seen[w] && keep(w) {
                seen[w] = true;
                out.push(w);
            }
        }
    }
    out
}

fn branch_diameter(f: &LabeledForest, branch: &[VertexId]) -> usize {
    f.induced(branch).diameter(0).unwrap_or(0)
}

/// Replays a transcript and runs [`RankcompleteAudit`] on every round.
pub fn audit_rankcomplete(t: &Transcript, k: usize, d: usize) -> Result<(), AuditError> {
    let mut audit = RankcompleteAudit::new(k, d).map_err(AuditError::Setup)?;
    let mut violation = None;
    let replay = t.replay_with(|round, presented, labeled| {
        audit.check_round(round, presented, labeled).map_err(|e| {
            let msg = e.to_string();
            violation = Some(e);
            msg
        })
    });
    match (replay, violation) {
        (_, Some(v)) => Err(AuditError::Lemma(v)),
        (Err(e), None) => Err(AuditError::Replay(e.to_string())),
        (Ok(_), None) => Ok(()),
    }
}

/// A vertex arriving as a leaf of a nontrivial component must get a label
/// below the largest label already on that component.
pub fn leaf_lemma_holds(round: usize, presented: &GameState, labeled: &GameState) -> Result<(), LemmaViolation> {
    let v = presented.pending().expect("presented state has a pending vertex");
    let f = presented.forest();
    if f.degree(v) != 1 {
        return Ok(());
    }
    let m = f.component_of(v).iter().map(|&u| f.label_value(u)).max().unwrap_or(0);
    let l = labeled.forest().label_value(v);
    if l < m {
        Ok(())
    } else {
        Err(LemmaViolation {
            round,
            lemma: "leaf",
            vertex: v,
            detail: format!("leaf got {l}, component maximum was {m}"),
        })
    }
}

pub fn audit_leaf_lemma(t: &Transcript) -> Result<(), AuditError> {
    let mut violation = None;
    let replay = t.replay_with(|round, presented, labeled| {
        leaf_lemma_holds(round, presented, labeled).map_err(|e| {
            let msg = e.to_string();
            violation = Some(e);
            msg
        })
    });
    match (replay, violation) {
        (_, Some(v)) => Err(AuditError::Lemma(v)),
        (Err(e), None) => Err(AuditError::Replay(e.to_string())),
        (Ok(_), None) => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error(transparent)]
    Lemma(LemmaViolation),
    #[error("replay failed: {0}")]
    Replay(String),
    #[error("audit setup: {0}")]
    Setup(GameError),
}

impl AuditError {
    pub fn lemma(&self) -> Option<&'static str> {
        match self {
            AuditError::Lemma(v) => Some(v.lemma),
            _ => None,
        }
    }
}
