//! Presenters that build a fixed tree while forcing a large label.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::embed::{find_induced_embedding, find_isomorphism};
use crate::forest::{Label, LabeledForest, VertexId};
use crate::game::{ClassSpec, GameState, Move, PresenterStrategy, StrategyError, Transcript};
use crate::generators::build_star_tree;

/// A Presenter that always finishes with a board isomorphic to
/// [`blueprint`](ForcingPresenter::blueprint), forcing some label of at
/// least [`guarantee`](ForcingPresenter::guarantee) along the way.
///
/// The strategy only ever looks at the vertices it presented itself, so it
/// can run on a private view of a larger board.
pub trait ForcingPresenter: PresenterStrategy {
    fn blueprint(&self) -> LabeledForest;

    fn guarantee(&self) -> u32;

    /// The same strategy in its initial state.
    fn fresh(&self) -> Box<dyn ForcingPresenter>;

    fn clone_forcing(&self) -> Box<dyn ForcingPresenter>;
}

impl Clone for Box<dyn ForcingPresenter> {
    fn clone(&self) -> Self {
        self.clone_forcing()
    }
}

/// Presents one vertex.
#[derive(Debug, Clone, Default)]
pub struct SinglePresenter {
    done: bool,
}

impl PresenterStrategy for SinglePresenter {
    fn next_move(&mut self, _: &GameState) -> Result<Move, StrategyError> {
        if self.done {
            return Ok(Move::Stop);
        }
        self.done = true;
        Ok(Move::isolated())
    }

    fn box_clone(&self) -> Box<dyn PresenterStrategy> {
        Box::new(self.clone())
    }

    fn descriptor(&self) -> String {
        "single".into()
    }
}

impl ForcingPresenter for SinglePresenter {
    fn blueprint(&self) -> LabeledForest {
        LabeledForest::isolated(1)
    }

    fn guarantee(&self) -> u32 {
        1
    }

    fn fresh(&self) -> Box<dyn ForcingPresenter> {
        Box::new(SinglePresenter::default())
    }

    fn clone_forcing(&self) -> Box<dyn ForcingPresenter> {
        Box::new(self.clone())
    }
}

/// Runs `inner`, then presents whatever vertices of `target` are still
/// missing, in breadth-first order from the part already built.
#[derive(Clone)]
pub struct CompletionPresenter {
    inner: Box<dyn ForcingPresenter>,
    target: LabeledForest,
    inner_done: bool,
    /// Remaining target vertices, and the board id of each presented one.
    queue: VecDeque<VertexId>,
    board_of: Vec<Option<VertexId>>,
}

impl CompletionPresenter {
    /// Fails unless the inner blueprint is an induced subforest of `target`.
    pub fn new(inner: Box<dyn ForcingPresenter>, target: LabeledForest) -> Result<Self, StrategyError> {
        if find_induced_embedding(&inner.blueprint(), &target).is_none() {
            return Err(StrategyError::Unsupported(
                "inner blueprint does not fit inside the completion target".into(),
            ));
        }
        let n = target.len();
        Ok(CompletionPresenter {
            inner,
            target: target.unlabeled(),
            inner_done: false,
            queue: VecDeque::new(),
            board_of: vec![None; n],
        })
    }

    fn plan_rest(&mut self, board: &LabeledForest) -> Result<(), StrategyError> {
        let emb = find_induced_embedding(board, &self.target)
            .ok_or_else(|| StrategyError::Unsupported("inner presenter left its blueprint".into()))?;
        for (b, &t) in emb.iter().enumerate() {
            self.board_of[t] = Some(b);
        }
        let mut seen: Vec<bool> = self.board_of.iter().map(Option::is_some).collect();
        let mut frontier: VecDeque<VertexId> = emb.iter().copied().collect();
        for s in 0..self.target.len() {
            if frontier.is_empty() && !seen[s] {
                seen[s] = true;
                self.queue.push_back(s);
                frontier.push_back(s);
            }
            while let Some(u) = frontier.pop_front() {
                for &w in self.target.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        self.queue.push_back(w);
                        frontier.push_back(w);
                    }
                }
            }
        }
        Ok(())
    }
}

impl PresenterStrategy for CompletionPresenter {
    fn next_move(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        if !self.inner_done {
            match self.inner.next_move(state)? {
                Move::Stop => {
                    self.inner_done = true;
                    self.plan_rest(state.forest())?;
                }
                mv => return Ok(mv),
            }
        }
        let Some(t) = self.queue.pop_front() else {
            return Ok(Move::Stop);
        };
        let attach: Vec<VertexId> = self
            .target
            .neighbors(t)
            .iter()
            .filter_map(|&w| self.board_of[w])
            .collect();
        self.board_of[t] = Some(state.forest().len());
        Ok(Move::attach(attach))
    }

    fn box_clone(&self) -> Box<dyn PresenterStrategy> {
        Box::new(self.clone())
    }

    fn descriptor(&self) -> String {
        format!("complete({})", self.inner.descriptor())
    }
}

impl ForcingPresenter for CompletionPresenter {
    fn blueprint(&self) -> LabeledForest {
        self.target.clone()
    }

    fn guarantee(&self) -> u32 {
        self.inner.guarantee()
    }

    fn fresh(&self) -> Box<dyn ForcingPresenter> {
        Box::new(
            CompletionPresenter::new(self.inner.fresh(), self.target.clone())
                .expect("validated at construction"),
        )
    }

    fn clone_forcing(&self) -> Box<dyn ForcingPresenter> {
        Box::new(self.clone())
    }
}

/// `a + 1` copies of a forced tree `F`, then connector paths from one copy
/// `G^0` to each other copy `G^i`.
#[derive(Clone)]
pub struct LowerBoundPlan {
    pub sub_presenter: Box<dyn ForcingPresenter>,
    pub a: usize,
    /// Internal vertex count of the path to `G^i`, for `i = 1..=a`.
    pub connector_paths: Vec<usize>,
    /// Vertex of `F` (blueprint ids) in `G^0` where path `i` starts.
    pub g0_ends: Vec<VertexId>,
    /// Vertex of `F` (blueprint ids) in `G^i` where path `i` ends.
    pub gi_end: VertexId,
}

impl LowerBoundPlan {
    pub fn validate(&self) -> Result<(), StrategyError> {
        let bad = |m: String| Err(StrategyError::Unsupported(m));
        let f = self.sub_presenter.blueprint().len();
        if self.a == 0 {
            return bad("a must be at least 1".into());
        }
        if self.connector_paths.len() != self.a || self.g0_ends.len() != self.a {
            return bad(format!("need {} connector paths and start points", self.a));
        }
        if self.connector_paths.contains(&0) {
            return bad("connector paths need at least one internal vertex".into());
        }
        if self.gi_end >= f || self.g0_ends.iter().any(|&v| v >= f) {
            return bad("connector endpoint outside F".into());
        }
        if self.sub_presenter.blueprint().component_count() != 1 {
            return bad("F must be connected".into());
        }
        Ok(())
    }

    /// The finished tree: copy `i` of `F` occupies ids `i*|F|..(i+1)*|F|`,
    /// connector vertices follow in path order.
    pub fn base_graph_blueprint(&self) -> LabeledForest {
        let f = self.sub_presenter.blueprint();
        let n = f.len();
        let mut g = LabeledForest::new();
        for _ in 0..=self.a {
            g = g.disjoint_union(&f);
        }
        for i in 0..self.a {
            let end = (i + 1) * n + self.gi_end;
            let mut prev = self.g0_ends[i];
            for step in 0..self.connector_paths[i] {
                let attach = if step + 1 == self.connector_paths[i] { vec![prev, end] } else { vec![prev] };
                prev = g.push_vertex(&attach).expect("connectors join two components");
            }
        }
        g
    }
}

#[derive(Clone)]
enum Stage {
    /// Building copy `i`.
    Copies(usize),
    /// Presenting connector vertex `step` of path `path`.
    Connect { path: usize, step: usize },
    Done,
}

/// Lower-bound construction: forces `guarantee(F) + a`.
#[derive(Clone)]
pub struct LowerBoundPresenter {
    plan: LowerBoundPlan,
    class: Arc<ClassSpec>,
    current: Box<dyn ForcingPresenter>,
    copies: Vec<Vec<VertexId>>,
    stage: Stage,
    /// Copy indices in `G^0, G^1, ..` order once chosen, with each copy's
    /// map from blueprint ids to board ids.
    order: Vec<usize>,
    maps: Vec<Vec<VertexId>>,
    last: Option<VertexId>,
    name: String,
}

impl LowerBoundPresenter {
    pub fn new(plan: LowerBoundPlan) -> Result<Self, StrategyError> {
        plan.validate()?;
        let class = Arc::new(ClassSpec::induced_of(plan.sub_presenter.blueprint()));
        let current = plan.sub_presenter.fresh();
        let name = format!("lowerbound:a={}", plan.a);
        Ok(LowerBoundPresenter {
            copies: vec![Vec::new(); plan.a + 1],
            plan,
            class,
            current,
            stage: Stage::Copies(0),
            order: Vec::new(),
            maps: Vec::new(),
            last: None,
            name,
        })
    }

    pub fn with_name(mut self, name: String) -> Self {
        self.name = name;
        self
    }

    /// Copy indices in `G^0, G^1, ..., G^a` order, once all copies exist.
    pub fn copy_order(&self) -> &[usize] {
        &self.order
    }

    fn local_view(&self, board: &LabeledForest, copy: usize) -> GameState {
        GameState::from_forest(board.induced(&self.copies[copy]), Arc::clone(&self.class))
            .expect("copies hold only labeled vertices between moves")
    }

    fn choose_copies(&mut self, board: &LabeledForest) -> Result<(), StrategyError> {
        let top = |c: &Vec<VertexId>| c.iter().map(|&v| board.label_value(v)).max().unwrap_or(0);
        let g0 = (0..self.copies.len())
            .min_by_key(|&i| (top(&self.copies[i]), i))
            .expect("at least two copies");
        self.order = std::iter::once(g0)
            .chain((0..self.copies.len()).filter(|&i| i != g0))
            .collect();
        let f = self.plan.sub_presenter.blueprint();
        self.maps = Vec::new();
        for &c in &self.order {
            let realized = board.induced(&self.copies[c]);
            let iso = find_isomorphism(&f, &realized)
                .ok_or_else(|| StrategyError::Unsupported("copy does not match its blueprint".into()))?;
            self.maps.push(iso.into_iter().map(|local| self.copies[c][local]).collect());
        }
        Ok(())
    }
}

impl PresenterStrategy for LowerBoundPresenter {
    fn next_move(&mut self, state: &GameState) -> Result<Move, StrategyError> {
        let board = state.forest();
        loop {
            match self.stage {
                Stage::Copies(i) => {
                    let view = self.local_view(board, i);
                    match self.current.next_move(&view)? {
                        Move::Stop => {
                            if i == self.plan.a {
                                self.choose_copies(board)?;
                                self.stage = Stage::Connect { path: 0, step: 0 };
                            } else {
                                self.current = self.plan.sub_presenter.fresh();
                                self.stage = Stage::Copies(i + 1);
                            }
                        }
                        Move::Attach(local) => {
                            let global = local.iter().map(|&u| self.copies[i][u]).collect();
                            self.copies[i].push(board.len());
                            return Ok(Move::attach(global));
                        }
                    }
                }
                Stage::Connect { path, step } => {
                    if path == self.plan.a {
                        self.stage = Stage::Done;
                        continue;
                    }
                    let len = self.plan.connector_paths[path];
                    let mut attach = vec![if step == 0 {
                        self.maps[0][self.plan.g0_ends[path]]
                    } else {
                        self.last.expect("previous connector vertex")
                    }];
                    if step + 1 == len {
                        attach.push(self.maps[path + 1][self.plan.gi_end]);
                        self.stage = Stage::Connect { path: path + 1, step: 0 };
                    } else {
                        self.stage = Stage::Connect { path, step: step + 1 };
                    }
                    self.last = Some(board.len());
                    return Ok(Move::attach(attach));
                }
                Stage::Done => return Ok(Move::Stop),
            }
        }
    }

    fn box_clone(&self) -> Box<dyn PresenterStrategy> {
        Box::new(self.clone())
    }

    fn descriptor(&self) -> String {
        self.name.clone()
    }
}

impl ForcingPresenter for LowerBoundPresenter {
    fn blueprint(&self) -> LabeledForest {
        self.plan.base_graph_blueprint()
    }

    fn guarantee(&self) -> u32 {
        self.plan.sub_presenter.guarantee() + self.plan.a as u32
    }

    fn fresh(&self) -> Box<dyn ForcingPresenter> {
        Box::new(
            LowerBoundPresenter::new(self.plan.clone())
                .expect("validated at construction")
                .with_name(self.name.clone()),
        )
    }

    fn clone_forcing(&self) -> Box<dyn ForcingPresenter> {
        Box::new(self.clone())
    }
}

/// The `T*_{k,r}` construction for even `r`: `a = k^{r/2}` copies of
/// `T*_{k,r/2-1}` below `G^0`, each hung from its own leaf child.
pub fn star_tree_presenter(k: usize, r: usize) -> Result<Box<dyn ForcingPresenter>, StrategyError> {
    if k < 2 || r % 2 == 1 {
        return Err(StrategyError::Unsupported(format!("startree needs k >= 2 and even r, got k={k}, r={r}")));
    }
    if r == 0 {
        return Ok(Box::new(SinglePresenter::default()));
    }
    let half = r / 2 - 1;
    let f = build_star_tree(k, half).map_err(|e| StrategyError::Unsupported(e.to_string()))?;
    let inner = star_tree_presenter(k, 2 * (half / 2))?;
    let sub: Box<dyn ForcingPresenter> = if half == 0 {
        inner
    } else {
        Box::new(CompletionPresenter::new(inner, f.to_forest())?)
    };
    let depth = f.depths();
    let leaves: Vec<VertexId> = (0..f.len()).filter(|&v| depth[v] == half).collect();
    let a = k.checked_pow((r / 2) as u32).ok_or_else(|| StrategyError::Unsupported("k^(r/2) overflows".into()))?;
    let plan = LowerBoundPlan {
        sub_presenter: sub,
        a,
        connector_paths: vec![1; a],
        g0_ends: (0..a).map(|i| leaves[i / k]).collect(),
        gi_end: f.root,
    };
    Ok(Box::new(LowerBoundPresenter::new(plan)?.with_name(format!("startree:k={k},r={r}"))))
}

/// The subdivided star `K_{1,a}`: forces `a + 1` on `2a + 1` vertices.
pub fn spider_presenter(a: usize) -> Result<Box<dyn ForcingPresenter>, StrategyError> {
    let plan = LowerBoundPlan {
        sub_presenter: Box::new(SinglePresenter::default()),
        a,
        connector_paths: vec![1; a],
        g0_ends: vec![0; a],
        gi_end: 0,
    };
    Ok(Box::new(LowerBoundPresenter::new(plan)?.with_name(format!("spider:a={a}"))))
}

/// A finished game together with the label its Presenter promised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedValueCertificate {
    pub transcript: Transcript,
    pub claimed_minimum: Label,
}

impl ForcedValueCertificate {
    pub fn holds(&self) -> bool {
        self.transcript.replay().is_ok()
            && self.transcript.max_label().is_ok_and(|m| m >= self.claimed_minimum)
    }
}
