//! Presenter strategies: lower-bound constructions, random play, and full
//! search against a known Ranker.

mod best_response;
mod exhaustive;
mod forcing;
mod random;

pub use best_response::{best_response, BestResponse, LabelRange};
pub use exhaustive::{explore, is_finite, ExhaustivePresenter, ExploreError, ExploreReport, Explorer, StepCheck};
pub use forcing::{
    spider_presenter, star_tree_presenter, CompletionPresenter, ForcedValueCertificate, ForcingPresenter,
    LowerBoundPlan, LowerBoundPresenter, SinglePresenter,
};
pub use random::{RandomPresenter, MOVE_SAMPLE_LIMIT};
