//! Graph classes the Presenter plays in, and the legality of partial boards.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::embed::{find_induced_embedding, is_induced_subforest};
use crate::forest::LabeledForest;
use crate::generators::{build_tkd, tkd_leaf_count, tkd_size};
use crate::textfmt::{parse_forest, write_forest};

use super::GameError;

/// Largest `T_{k,d}` for which the exact packing check is attempted.
pub const EXACT_PACKING_LIMIT: u128 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassKind {
    /// Trees of maximum degree `k` and diameter at most `d`, i.e. induced
    /// subgraphs of `T_{k,d}`.
    MaxDegDiam { k: usize, d: usize },
    /// Trees with at most `p` internal vertices and diameter at most `q`.
    FewInternal { p: usize, q: usize },
    /// Induced subgraphs of one fixed forest.
    InducedOf(LabeledForest),
    /// Induced subgraphs of the path `P_{n_max}`.
    PathFamily { n_max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ClassRepr", into = "ClassRepr")]
pub struct ClassSpec {
    pub kind: ClassKind,
    pub n_cap: Option<usize>,
}

impl ClassSpec {
    pub fn new(kind: ClassKind) -> Self {
        ClassSpec { kind, n_cap: None }
    }

    pub fn max_deg_diam(k: usize, d: usize) -> Self {
        Self::new(ClassKind::MaxDegDiam { k, d })
    }

    pub fn few_internal(p: usize, q: usize) -> Self {
        Self::new(ClassKind::FewInternal { p, q })
    }

    pub fn induced_of(host: LabeledForest) -> Self {
        Self::new(ClassKind::InducedOf(host.unlabeled()))
    }

    pub fn path_family(n_max: usize) -> Self {
        Self::new(ClassKind::PathFamily { n_max })
    }

    pub fn with_cap(mut self, n_cap: usize) -> Self {
        self.n_cap = Some(n_cap);
        self
    }

    /// The tighter of the current cap and `n_cap`.
    pub fn capped(&self, n_cap: usize) -> Self {
        let mut c = self.clone();
        c.n_cap = Some(self.n_cap.map_or(n_cap, |old| old.min(n_cap)));
        c
    }

    pub fn validate(&self) -> Result<(), GameError> {
        let bad = |m: &str| Err(GameError::InvalidClass(m.to_string()));
        match &self.kind {
            ClassKind::MaxDegDiam { k, .. } if *k < 2 => return bad("maxdegdiam needs k >= 2"),
            ClassKind::PathFamily { n_max: 0 } => return bad("path family needs n >= 1"),
            _ => {}
        }
        if self.n_cap == Some(0) {
            return bad("n_cap must be at least 1");
        }
        Ok(())
    }

    /// Largest degree any member can have, when bounded.
    pub fn max_degree(&self) -> Option<usize> {
        match &self.kind {
            ClassKind::MaxDegDiam { k, d } => Some(if *d <= 1 { *d } else { *k }),
            ClassKind::FewInternal { .. } => None,
            ClassKind::InducedOf(h) => Some((0..h.len()).map(|v| h.degree(v)).max().unwrap_or(0)),
            ClassKind::PathFamily { n_max } => Some(if *n_max <= 2 { n_max - 1 } else { 2 }),
        }
    }

    /// Largest diameter of any member, when bounded.
    pub fn max_diameter(&self) -> Option<usize> {
        match &self.kind {
            ClassKind::MaxDegDiam { d, .. } => Some(*d),
            ClassKind::FewInternal { q, .. } => Some(*q),
            ClassKind::InducedOf(h) => (0..h.len()).map(|v| h.eccentricity(v).unwrap_or(0)).max(),
            ClassKind::PathFamily { n_max } => Some(n_max - 1),
        }
    }

    /// Whether the structure of `f` (labels ignored) is an induced subgraph
    /// of some member of the class and respects the vertex cap.
    pub fn admits(&self, f: &LabeledForest) -> bool {
        if self.n_cap.is_some_and(|cap| f.len() > cap) {
            return false;
        }
        if f.is_empty() {
            return true;
        }
        match &self.kind {
            ClassKind::MaxDegDiam { k, d } => max_deg_diam_admits(f, *k, *d),
            ClassKind::FewInternal { p, q } => few_internal_admits(f, *p, *q),
            ClassKind::InducedOf(host) => is_induced_subforest(f, host),
            ClassKind::PathFamily { n_max } => path_family_admits(f, *n_max),
        }
    }

    /// Exact membership for `MaxDegDiam` via induced embedding into `T_{k,d}`,
    /// available while `|V(T_{k,d})| <= 64`; other kinds defer to `admits`,
    /// which is already exact for them.
    pub fn admits_exact(&self, f: &LabeledForest) -> Option<bool> {
        match &self.kind {
            ClassKind::MaxDegDiam { k, d } => {
                if tkd_size(*k, *d)? > EXACT_PACKING_LIMIT {
                    return None;
                }
                if self.n_cap.is_some_and(|cap| f.len() > cap) {
                    return Some(false);
                }
                let host = build_tkd(*k, *d).ok()?;
                Some(find_induced_embedding(f, &host).is_some())
            }
            _ => Some(self.admits(f)),
        }
    }

    /// Parses the flag grammar: `induced:P<n>`, `induced:@<file>`,
    /// `maxdegdiam:k=..,d=..`, `fewinternal:p=..,q=..` or `paths:n=..`, each
    /// optionally followed by `,n_cap=..`.
    pub fn parse(s: &str) -> Result<Self, GameError> {
        let err = |m: String| GameError::InvalidClass(m);
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| err(format!("missing ':' in class {s:?}")))?;
        let spec = if kind == "induced" {
            let (host, params) = match rest.split_once(',') {
                Some((h, p)) => (h, p),
                None => (rest, ""),
            };
            let host = if let Some(n) = host.strip_prefix('P') {
                let n: usize = n.parse().map_err(|_| err(format!("bad path size {n:?}")))?;
                if n == 0 {
                    return Err(err("P0 is empty".into()));
                }
                LabeledForest::path(n)
            } else if let Some(file) = host.strip_prefix('@') {
                let text = std::fs::read_to_string(Path::new(file))
                    .map_err(|e| err(format!("{file}: {e}")))?;
                parse_forest(&text).map_err(|e| err(format!("{file}: {e}")))?
            } else {
                return Err(err(format!("induced host must be P<n> or @file, got {host:?}")));
            };
            let mut spec = ClassSpec::induced_of(host);
            for (key, value) in parse_params(params)? {
                match key {
                    "n_cap" => spec.n_cap = Some(value),
                    _ => return Err(err(format!("unknown parameter {key:?}"))),
                }
            }
            spec
        } else {
            let params = parse_params(rest)?;
            let mut spec_params = Vec::new();
            let mut n_cap = None;
            for (key, value) in params {
                if key == "n_cap" {
                    n_cap = Some(value);
                } else {
                    spec_params.push((key, value));
                }
            }
            let take = |names: &[&str]| -> Result<Vec<usize>, GameError> {
                if spec_params.len() != names.len()
                    || spec_params.iter().any(|(k, _)| !names.contains(k))
                {
                    return Err(err(format!("{kind} expects exactly {}", names.join(","))));
                }
                Ok(names
                    .iter()
                    .map(|n| spec_params.iter().find(|(k, _)| k == n).unwrap().1)
                    .collect())
            };
            let mut spec = match kind {
                "maxdegdiam" => {
                    let v = take(&["k", "d"])?;
                    ClassSpec::max_deg_diam(v[0], v[1])
                }
                "fewinternal" => {
                    let v = take(&["p", "q"])?;
                    ClassSpec::few_internal(v[0], v[1])
                }
                "paths" => {
                    let v = take(&["n"])?;
                    ClassSpec::path_family(v[0])
                }
                _ => return Err(err(format!("unknown class kind {kind:?}"))),
            };
            spec.n_cap = n_cap;
            spec
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_params(s: &str) -> Result<Vec<(&str, usize)>, GameError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out: Vec<(&str, usize)> = Vec::new();
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| GameError::InvalidClass(format!("expected key=value, got {part:?}")))?;
        let v: usize = v
            .parse()
            .map_err(|_| GameError::InvalidClass(format!("bad value for {k}: {v:?}")))?;
        if out.iter().any(|(seen, _)| *seen == k) {
            return Err(GameError::InvalidClass(format!("duplicate parameter {k:?}")));
        }
        out.push((k, v));
    }
    Ok(out)
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ClassKind::MaxDegDiam { k, d } => write!(f, "maxdegdiam:k={k},d={d}")?,
            ClassKind::FewInternal { p, q } => write!(f, "fewinternal:p={p},q={q}")?,
            ClassKind::PathFamily { n_max } => write!(f, "paths:n={n_max}")?,
            ClassKind::InducedOf(h) => {
                if *h == LabeledForest::path(h.len()) {
                    write!(f, "induced:P{}", h.len())?
                } else {
                    write!(f, "induced:n={},edges={:?}", h.len(), h.edges())?
                }
            }
        }
        if let Some(cap) = self.n_cap {
            write!(f, ",n_cap={cap}")?;
        }
        Ok(())
    }
}

fn max_deg_diam_admits(f: &LabeledForest, k: usize, d: usize) -> bool {
    let comps = f.components();
    if d <= 1 {
        // T_{k,0} = K_1 and T_{k,1} = K_2 hold a single component
        return comps.len() == 1 && f.len() <= d + 1;
    }
    let Some(total) = tkd_size(k, d) else {
        return false;
    };
    if f.len() as u128 > total || comps.len() as u128 > tkd_leaf_count(k, d) {
        return false;
    }
    if (0..f.len()).any(|v| f.degree(v) > k) {
        return false;
    }
    comps.iter().all(|c| f.diameter(c[0]).is_ok_and(|diam| diam <= d))
}

fn path_family_admits(f: &LabeledForest, n_max: usize) -> bool {
    if (0..f.len()).any(|v| f.degree(v) > 2) {
        return false;
    }
    // acyclic with max degree 2: every component is a path
    f.len() + f.component_count() - 1 <= n_max
}

/// Exact test for "induced subgraph of a tree with at most `p` internal
/// vertices and diameter at most `q`".
///
/// The internal vertices of any host tree form a subtree `I`, and the host's
/// diameter is `diam(I) + 2`. Every component with three or more vertices
/// forces its own internal vertices into `I`; a `K_2` forces one endpoint.
/// These pieces are pairwise non-adjacent, so whenever there is more than one
/// piece, or an isolated vertex that has to hang off a non-forest vertex, one
/// extra hub vertex joined to the piece centers is needed. The hub placement
/// attains the lower bound `rad_i + rad_j + 2` on every inter-piece distance.
pub fn few_internal_admits(f: &LabeledForest, p: usize, q: usize) -> bool {
    let comps = f.components();
    if comps.len() == 1 && comps[0].len() <= 2 {
        return comps[0].len() == 1 || q >= 1;
    }
    let mut isolated = 0usize;
    // (internal count, radius, diameter) of each forced piece of I
    let mut pieces: Vec<(usize, usize, usize)> = Vec::new();
    for c in &comps {
        match c.len() {
            1 => isolated += 1,
            2 => pieces.push((1, 0, 0)),
            _ => {
                let internal = c.iter().filter(|&&v| f.degree(v) >= 2).count();
                let diam = f.diameter(c[0]).unwrap() - 2;
                pieces.push((internal, diam.div_ceil(2), diam));
            }
        }
    }
    let hub = pieces.len() >= 2 || (!pieces.is_empty() && isolated >= 1) || (pieces.is_empty() && isolated >= 2);
    let internal: usize = pieces.iter().map(|p| p.0).sum::<usize>() + usize::from(hub);
    let inner_diam = if hub {
        let mut radii: Vec<usize> = pieces.iter().map(|p| p.1).collect();
        radii.sort_unstable_by(|a, b| b.cmp(a));
        let mut diam = pieces.iter().map(|p| p.2).max().unwrap_or(0);
        if let Some(&r0) = radii.first() {
            diam = diam.max(r0 + 1);
        }
        if radii.len() >= 2 {
            diam = diam.max(radii[0] + radii[1] + 2);
        }
        diam
    } else {
        pieces[0].2
    };
    internal <= p && inner_diam + 2 <= q
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ClassRepr {
    Maxdegdiam {
        k: usize,
        d: usize,
        #[serde(default)]
        n_cap: Option<usize>,
    },
    Fewinternal {
        p: usize,
        q: usize,
        #[serde(default)]
        n_cap: Option<usize>,
    },
    Induced {
        n: usize,
        edges: Vec<[usize; 2]>,
        #[serde(default)]
        n_cap: Option<usize>,
    },
    Paths {
        n_max: usize,
        #[serde(default)]
        n_cap: Option<usize>,
    },
}

impl From<ClassSpec> for ClassRepr {
    fn from(c: ClassSpec) -> Self {
        let n_cap = c.n_cap;
        match c.kind {
            ClassKind::MaxDegDiam { k, d } => ClassRepr::Maxdegdiam { k, d, n_cap },
            ClassKind::FewInternal { p, q } => ClassRepr::Fewinternal { p, q, n_cap },
            ClassKind::PathFamily { n_max } => ClassRepr::Paths { n_max, n_cap },
            ClassKind::InducedOf(h) => ClassRepr::Induced {
                n: h.len(),
                edges: h.edges().into_iter().map(|(u, v)| [u, v]).collect(),
                n_cap,
            },
        }
    }
}

impl TryFrom<ClassRepr> for ClassSpec {
    type Error = String;

    fn try_from(r: ClassRepr) -> Result<Self, String> {
        let spec = match r {
            ClassRepr::Maxdegdiam { k, d, n_cap } => ClassSpec {
                kind: ClassKind::MaxDegDiam { k, d },
                n_cap,
            },
            ClassRepr::Fewinternal { p, q, n_cap } => ClassSpec {
                kind: ClassKind::FewInternal { p, q },
                n_cap,
            },
            ClassRepr::Paths { n_max, n_cap } => ClassSpec {
                kind: ClassKind::PathFamily { n_max },
                n_cap,
            },
            ClassRepr::Induced { n, edges, n_cap } => {
                let edges: Vec<_> = edges.into_iter().map(|[u, v]| (u, v)).collect();
                let host = LabeledForest::from_edges(n, &edges).map_err(|e| e.to_string())?;
                ClassSpec {
                    kind: ClassKind::InducedOf(host),
                    n_cap,
                }
            }
        };
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }
}

/// Text form of an `InducedOf` host, for `induced:@file` round trips.
pub fn host_text(spec: &ClassSpec) -> Option<String> {
    match &spec.kind {
        ClassKind::InducedOf(h) => Some(write_forest(h)),
        _ => None,
    }
}
