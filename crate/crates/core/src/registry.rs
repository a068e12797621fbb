//! Strategies by name: `name` or `name:key=value,...`, the same strings the
//! strategies report as their descriptors.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::game::{PresenterStrategy, RankerStrategy, StrategyError};
use crate::presenters::{
    spider_presenter, star_tree_presenter, ExhaustivePresenter, LowerBoundPlan, LowerBoundPresenter,
    RandomPresenter, SinglePresenter,
};
use crate::rankers::{DoubleStarRanker, GreedyRanker, RandomRanker, RankcompleteRanker, RanksmallRanker};

pub const RANKERS: &[&str] = &["greedy", "rankcomplete", "ranksmall", "doublestar", "random"];
pub const PRESENTERS: &[&str] = &["lowerbound", "startree", "spider", "random", "exhaustive", "single"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown strategy {0:?}")]
    Unknown(String),
    #[error("{name}: {msg}")]
    Params { name: String, msg: String },
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

struct Params<'a> {
    name: &'a str,
    values: BTreeMap<&'a str, u64>,
}

impl<'a> Params<'a> {
    fn parse(spec: &'a str) -> Result<Self, RegistryError> {
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let bad = |msg: String| RegistryError::Params { name: name.to_string(), msg };
        let mut values = BTreeMap::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
            let v = v.parse().map_err(|_| bad(format!("bad value for {k}: {v:?}")))?;
            if values.insert(k, v).is_some() {
                return Err(bad(format!("duplicate parameter {k:?}")));
            }
        }
        Ok(Params { name, values })
    }

    fn err(&self, msg: String) -> RegistryError {
        RegistryError::Params { name: self.name.to_string(), msg }
    }

    /// Rejects keys outside `allowed`.
    fn only(&self, allowed: &[&str]) -> Result<(), RegistryError> {
        match self.values.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(self.err(format!("unknown parameter {k:?}"))),
            None => Ok(()),
        }
    }

    fn get(&self, key: &str) -> Option<u64> {
        self.values.get(key).copied()
    }

    fn need(&self, key: &str) -> Result<usize, RegistryError> {
        let v = self.get(key).ok_or_else(|| self.err(format!("missing parameter {key:?}")))?;
        usize::try_from(v).map_err(|_| self.err(format!("{key} is too large")))
    }
}

pub fn ranker_from_spec(spec: &str) -> Result<Box<dyn RankerStrategy>, RegistryError> {
    let p = Params::parse(spec)?;
    Ok(match p.name {
        "greedy" => {
            p.only(&[])?;
            Box::new(GreedyRanker)
        }
        "rankcomplete" => {
            p.only(&["k", "d"])?;
            Box::new(RankcompleteRanker::new(p.need("k")?, p.need("d")?))
        }
        "ranksmall" => {
            p.only(&["p", "q"])?;
            Box::new(RanksmallRanker::new(p.need("p")?, p.need("q")?))
        }
        "doublestar" => {
            p.only(&[])?;
            Box::new(DoubleStarRanker::new())
        }
        "random" => {
            p.only(&["seed"])?;
            Box::new(RandomRanker::new(p.get("seed").unwrap_or(0)))
        }
        other => return Err(RegistryError::Unknown(other.to_string())),
    })
}

/// Defaults for parameters a presenter spec leaves out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresenterDefaults {
    pub seed: u64,
    pub n_max: usize,
}

impl Default for PresenterDefaults {
    fn default() -> Self {
        PresenterDefaults { seed: 0, n_max: 64 }
    }
}

/// Builds a Presenter. `exhaustive` plays against a private copy of
/// `opponent`, which must be the Ranker it will face.
pub fn presenter_from_spec(
    spec: &str,
    opponent: &dyn RankerStrategy,
    defaults: PresenterDefaults,
) -> Result<Box<dyn PresenterStrategy>, RegistryError> {
    let p = Params::parse(spec)?;
    Ok(match p.name {
        "single" => {
            p.only(&[])?;
            Box::new(SinglePresenter::default())
        }
        "spider" => {
            p.only(&["a"])?;
            spider_presenter(p.need("a")?)?.box_clone()
        }
        "startree" => {
            p.only(&["k", "r"])?;
            star_tree_presenter(p.need("k")?, p.need("r")?)?.box_clone()
        }
        "lowerbound" => {
            p.only(&["a", "len"])?;
            let a = p.need("a")?;
            let len = p.need("len")?;
            let plan = LowerBoundPlan {
                sub_presenter: Box::new(SinglePresenter::default()),
                a,
                connector_paths: vec![len; a],
                g0_ends: vec![0; a],
                gi_end: 0,
            };
            Box::new(LowerBoundPresenter::new(plan)?.with_name(format!("lowerbound:a={a},len={len}")))
        }
        "random" => {
            p.only(&["seed", "n_max"])?;
            let n_max = p.get("n_max").map_or(Ok(defaults.n_max), |_| p.need("n_max"))?;
            if n_max == 0 {
                return Err(p.err("n_max must be at least 1".into()));
            }
            Box::new(RandomPresenter::new(p.get("seed").unwrap_or(defaults.seed), n_max))
        }
        "exhaustive" => {
            p.only(&[])?;
            Box::new(ExhaustivePresenter::new(opponent.box_clone()))
        }
        other => return Err(RegistryError::Unknown(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for s in ["greedy", "rankcomplete:k=3,d=6", "ranksmall:p=2,q=3", "doublestar", "random:seed=4"] {
            assert_eq!(ranker_from_spec(s).unwrap().descriptor(), s);
        }
        let g = GreedyRanker;
        let d = PresenterDefaults::default();
        for s in ["single", "spider:a=3", "startree:k=2,r=2", "lowerbound:a=2,len=3", "random:seed=1,n_max=22", "exhaustive"] {
            assert_eq!(presenter_from_spec(s, &g, d).unwrap().descriptor(), s);
        }
        let p = presenter_from_spec("random", &g, PresenterDefaults { seed: 9, n_max: 5 }).unwrap();
        assert_eq!(p.descriptor(), "random:seed=9,n_max=5");
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(ranker_from_spec("nope"), Err(RegistryError::Unknown(_))));
        assert!(ranker_from_spec("rankcomplete:k=3").is_err());
        assert!(ranker_from_spec("greedy:x=1").is_err());
        assert!(ranker_from_spec("ranksmall:p=1,p=2").is_err());
        let g = GreedyRanker;
        let d = PresenterDefaults::default();
        assert!(presenter_from_spec("startree:k=2,r=3", &g, d).is_err());
        assert!(presenter_from_spec("lowerbound:a=0,len=1", &g, d).is_err());
        assert!(presenter_from_spec("random:n_max=0", &g, d).is_err());
    }
}
