//! Ranker strategies.

mod audit;
mod doublestar;
mod greedy;
mod random;
mod rankcomplete;
mod ranksmall;

pub use audit::{
    audit_leaf_lemma, audit_rankcomplete, leaf_lemma_holds, AuditError, LemmaViolation, RankcompleteAudit,
};
pub use doublestar::{doublestar_label, DoubleStarMemory, DoubleStarRanker, Mode, Phase, VertexRole};
pub use greedy::{greedy_label, GreedyRanker};
pub use random::RandomRanker;
pub use rankcomplete::{
    f_ab, rankcomplete_case, rankcomplete_label, CaseTag, LabelSegments, RankcompleteRanker, Segment,
    tkd_internal_count,
};
pub use ranksmall::{ranksmall_label, RanksmallRanker};
