//! Plain-text forest files.
//!
//! ```text
//! 4
//! 0 1
//! 1 2
//! 2 3
//! labels: 1 2 0 3
//! ```
//!
//! First line is the vertex count, then one ascending edge pair per line in
//! sorted order, then an optional label line where `0` means unlabeled.

use thiserror::Error;

use crate::forest::{ForestError, Label, LabeledForest};

#[derive(Debug, Error)]
pub enum TextFormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Forest(#[from] ForestError),
}

fn syntax(line: usize, message: impl Into<String>) -> TextFormatError {
    TextFormatError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn write_forest(f: &LabeledForest) -> String {
    let mut out = format!("{}\n", f.len());
    for (u, v) in f.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    if f.raw_labels().iter().any(|&l| l != 0) {
        let labels: Vec<String> = f.raw_labels().iter().map(u32::to_string).collect();
        out.push_str(&format!("labels: {}\n", labels.join(" ")));
    }
    out
}

pub fn parse_forest(text: &str) -> Result<LabeledForest, TextFormatError> {
    let mut lines = text.split('\n').enumerate().peekable();
    let (_, first) = lines.next().ok_or_else(|| syntax(1, "missing vertex count"))?;
    let n: usize = first
        .parse()
        .map_err(|_| syntax(1, format!("bad vertex count {first:?}")))?;
    let mut edges = Vec::new();
    let mut labels: Option<Vec<u32>> = None;
    for (i, line) in lines {
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        if labels.is_some() {
            return Err(syntax(lineno, "content after the label line"));
        }
        if let Some(rest) = line.strip_prefix("labels: ") {
            let ls = rest
                .split(' ')
                .map(|t| t.parse::<u32>().map_err(|_| syntax(lineno, format!("bad label {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if ls.len() != n {
                return Err(syntax(lineno, format!("expected {n} labels, found {}", ls.len())));
            }
            labels = Some(ls);
            continue;
        }
        let mut toks = line.split(' ');
        let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(syntax(lineno, format!("expected `u v`, found {line:?}")));
        };
        let u: usize = a.parse().map_err(|_| syntax(lineno, format!("bad vertex {a:?}")))?;
        let v: usize = b.parse().map_err(|_| syntax(lineno, format!("bad vertex {b:?}")))?;
        if u >= v {
            return Err(syntax(lineno, "edge pairs must be ascending"));
        }
        if edges.last().is_some_and(|&last| last >= (u, v)) {
            return Err(syntax(lineno, "edges must be sorted and distinct"));
        }
        edges.push((u, v));
    }
    let mut f = LabeledForest::from_edges(n, &edges)?;
    if let Some(ls) = labels {
        for (v, l) in ls.into_iter().enumerate() {
            f.set_label(v, Label::new(l));
        }
    }
    Ok(f)
}
