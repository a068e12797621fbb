//! Independent checks of a recorded game.

use thiserror::Error;

use crate::game::{play, Transcript};
use crate::registry::{presenter_from_spec, ranker_from_spec, PresenterDefaults};
use crate::rankers::{audit_leaf_lemma, audit_rankcomplete, AuditError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub rounds: usize,
    pub max_label: Option<u32>,
    /// Whether replaying the recorded strategies gave the same game; `None`
    /// when the transcript names no registered strategies.
    pub reproduced: Option<bool>,
    /// Lemma audits that ran, by name.
    pub audits: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{}{message}", round.map(|r| format!("round {r}: ")).unwrap_or_default(), lemma.map(|l| format!("lemma {l}: ")).unwrap_or_default())]
pub struct VerifyFailure {
    pub round: Option<usize>,
    pub lemma: Option<&'static str>,
    pub message: String,
}

impl VerifyFailure {
    fn at(round: Option<usize>, message: String) -> Self {
        VerifyFailure { round, lemma: None, message }
    }
}

fn audit_failure(e: AuditError) -> VerifyFailure {
    match e {
        AuditError::Lemma(v) => VerifyFailure { round: Some(v.round), lemma: Some(v.lemma), message: v.detail },
        other => VerifyFailure::at(None, other.to_string()),
    }
}

/// Replays `t`, checks every prefix is a class-legal ranking, re-runs the
/// named strategies when they resolve, and runs the lemma audits that apply
/// to the named Ranker.
pub fn verify_transcript(t: &Transcript) -> Result<VerifyReport, VerifyFailure> {
    t.replay().map_err(|e| VerifyFailure::at(e.round(), e.to_string()))?;
    let mut report = VerifyReport {
        rounds: t.rounds(),
        max_label: t.max_label().ok().map(|l| l.get()),
        reproduced: None,
        audits: Vec::new(),
    };

    if let (Some(ps), Some(rs)) = (&t.presenter, &t.ranker) {
        if let Ok(mut ranker) = ranker_from_spec(rs) {
            let defaults = PresenterDefaults { seed: t.seed.unwrap_or(0), n_max: usize::MAX };
            if let Ok(mut presenter) = presenter_from_spec(ps, ranker.as_ref(), defaults) {
                let limit = t.rounds() + usize::from(t.stopped());
                let again = play(&t.class, presenter.as_mut(), ranker.as_mut(), Some(limit))
                    .map_err(|e| VerifyFailure::at(Some(e.round), format!("strategies do not replay: {}", e.source)))?;
                if let Some(r) = (0..t.events.len().max(again.events.len()))
                    .find(|&i| t.events.get(i) != again.events.get(i))
                {
                    return Err(VerifyFailure::at(Some(r), "recorded strategies choose differently here".into()));
                }
                report.reproduced = Some(true);
            }
        }
    }

    if let Some(rs) = &t.ranker {
        let param = |key: &str| {
            rs.split_once(':')
                .into_iter()
                .flat_map(|(_, p)| p.split(','))
                .find_map(|kv| kv.strip_prefix(key)?.strip_prefix('=')?.parse::<usize>().ok())
        };
        let name = rs.split(':').next().unwrap_or("");
        match (name, param("k"), param("d")) {
            ("rankcomplete", Some(k), Some(d)) if d >= 6 => {
                audit_rankcomplete(t, k, d).map_err(audit_failure)?;
                report.audits.extend(["bound", "z", "separate", "yyy", "zyy"]);
            }
            ("rankcomplete", _, _) | ("ranksmall", _, _) => {
                audit_leaf_lemma(t).map_err(audit_failure)?;
                report.audits.push("leaf");
            }
            _ => {}
        }
    }
    Ok(report)
}
