//! JSON files for hypergraphs and edge colorings, with validation that
//! reports every problem by its location in the document.
//!
//! Hypergraph files look like
//! `{"k": 2, "n": 4, "edges": [[0, 1], ...], "parts": [[0, 1], [2, 3]]}`;
//! `parts` is optional, and `partite_proper` (default `true` when `parts` is
//! present) promises that no edge meets a part twice. Coloring files look
//! like `{"N": 5, "k": 2, "q": 2, "colors": [...]}` with one color per
//! `k`-subset in lexicographic order.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coloring::EdgeColoring;
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, PartiteLayout, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergraphFile {
    pub k: usize,
    pub n: usize,
    pub edges: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<Vertex>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partite_proper: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    pub q: usize,
    pub colors: Vec<usize>,
}

/// One validation problem. `path` is a JSON-pointer-like location such as
/// `edges[3]` or `parts[1][0]`, or empty for the whole document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FileKind {
    Hypergraph,
    Coloring,
}

impl From<&Hypergraph> for HypergraphFile {
    fn from(h: &Hypergraph) -> Self {
        Self {
            k: h.k(),
            n: h.n(),
            edges: h.edges().to_vec(),
            parts: h.layout().map(|l| l.parts().to_vec()),
            partite_proper: None,
        }
    }
}

impl Serialize for Hypergraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        HypergraphFile::from(self).serialize(s)
    }
}

impl From<&EdgeColoring> for ColoringFile {
    fn from(f: &EdgeColoring) -> Self {
        Self {
            n: f.num_vertices(),
            k: f.k(),
            q: f.q(),
            colors: f.colors().to_vec(),
        }
    }
}

fn diag(path: impl Into<String>, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        path: path.into(),
        message: message.into(),
    }
}

fn uint(doc: &Value, key: &str, out: &mut Vec<Diagnostic>) -> Option<usize> {
    match doc.get(key) {
        None => {
            out.push(diag(key, "missing"));
            None
        }
        Some(v) => match v.as_u64() {
            Some(x) => Some(x as usize),
            None => {
                out.push(diag(
                    key,
                    format!("expected a non-negative integer, found {v}"),
                ));
                None
            }
        },
    }
}

/// Arrays of non-negative integers under `key`, with per-entry diagnostics.
fn int_rows(doc: &Value, key: &str, out: &mut Vec<Diagnostic>) -> Option<Vec<Option<Vec<usize>>>> {
    let rows = match doc.get(key) {
        None => return None,
        Some(Value::Array(rows)) => rows,
        Some(v) => {
            out.push(diag(key, format!("expected an array, found {v}")));
            return None;
        }
    };
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let Value::Array(xs) = row else {
                out.push(diag(
                    format!("{key}[{i}]"),
                    format!("expected an array, found {row}"),
                ));
                return None;
            };
            let mut r = Vec::with_capacity(xs.len());
            for (j, x) in xs.iter().enumerate() {
                match x.as_u64() {
                    Some(v) => r.push(v as usize),
                    None => {
                        out.push(diag(
                            format!("{key}[{i}][{j}]"),
                            format!("expected a vertex id, found {x}"),
                        ));
                        return None;
                    }
                }
            }
            Some(r)
        })
        .collect();
    Some(parsed)
}

/// Every invariant violation of a hypergraph document, in document order.
pub fn validate_hypergraph_value(doc: &Value) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if !doc.is_object() {
        return vec![diag("", "expected a JSON object")];
    }
    let k = uint(doc, "k", &mut out);
    if k == Some(0) {
        out.push(diag("k", "uniformity must be at least 1"));
    }
    let n = uint(doc, "n", &mut out);
    if doc.get("edges").is_none() {
        out.push(diag("edges", "missing"));
    }
    let edges = int_rows(doc, "edges", &mut out).unwrap_or_default();
    let mut first_seen: HashMap<Vec<usize>, usize> = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        let Some(e) = e else { continue };
        let at = format!("edges[{i}]");
        if let Some(k) = k.filter(|&k| k != e.len()) {
            out.push(diag(
                &at,
                format!("has {} vertices, expected k = {k}", e.len()),
            ));
        }
        if let Some((j, v)) = n.and_then(|n| {
            e.iter()
                .enumerate()
                .find(|&(_, &v)| v >= n)
                .map(|(j, &v)| (j, v))
        }) {
            out.push(diag(
                format!("{at}[{j}]"),
                format!("vertex {v} is not below n = {}", n.unwrap()),
            ));
        }
        let mut sorted = e.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            out.push(diag(&at, "repeats a vertex"));
        }
        if let Some(&j) = first_seen.get(&sorted) {
            out.push(diag(&at, format!("duplicates edges[{j}]")));
        } else {
            first_seen.insert(sorted, i);
        }
    }
    let proper = match doc.get("partite_proper") {
        None | Some(Value::Null) => true,
        Some(Value::Bool(b)) => *b,
        Some(v) => {
            out.push(diag(
                "partite_proper",
                format!("expected a boolean, found {v}"),
            ));
            true
        }
    };
    if let Some(parts) = int_rows(doc, "parts", &mut out) {
        let mut owner: HashMap<usize, usize> = HashMap::new();
        for (p, part) in parts.iter().enumerate() {
            for (j, &v) in part.iter().flatten().enumerate() {
                if n.is_some_and(|n| v >= n) {
                    out.push(diag(
                        format!("parts[{p}][{j}]"),
                        format!("vertex {v} is not below n = {}", n.unwrap()),
                    ));
                } else if let Some(q) = owner.insert(v, p) {
                    out.push(diag(
                        format!("parts[{p}][{j}]"),
                        format!("vertex {v} already belongs to parts[{q}]"),
                    ));
                }
            }
        }
        if let Some(n) = n {
            if let Some(v) = (0..n).find(|v| !owner.contains_key(v)) {
                out.push(diag("parts", format!("vertex {v} is in no part")));
            }
        }
        if proper {
            for (i, e) in edges.iter().enumerate() {
                let Some(e) = e else { continue };
                let mut hit: HashMap<usize, Vertex> = HashMap::new();
                for &v in e {
                    if let Some(&p) = owner.get(&v) {
                        if let Some(u) = hit.insert(p, v) {
                            if u != v {
                                out.push(diag(
                                    format!("edges[{i}]"),
                                    format!("meets parts[{p}] twice (vertices {u} and {v}) under a partite-proper declaration"),
                                ));
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every invariant violation of a coloring document, in document order.
pub fn validate_coloring_value(doc: &Value) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if !doc.is_object() {
        return vec![diag("", "expected a JSON object")];
    }
    let n = uint(doc, "N", &mut out);
    let k = uint(doc, "k", &mut out);
    if k == Some(0) {
        out.push(diag("k", "uniformity must be at least 1"));
    }
    let q = uint(doc, "q", &mut out);
    if q == Some(0) {
        out.push(diag("q", "need at least one color"));
    }
    let colors = match doc.get("colors") {
        Some(Value::Array(c)) => c,
        Some(v) => {
            out.push(diag("colors", format!("expected an array, found {v}")));
            return out;
        }
        None => {
            out.push(diag("colors", "missing"));
            return out;
        }
    };
    if let (Some(n), Some(k)) = (n, k) {
        let m = binomial(n as u64, k as u64);
        if colors.len() as u128 != m {
            out.push(diag(
                "colors",
                format!("has {} entries, C({n}, {k}) = {m} required", colors.len()),
            ));
        }
    }
    for (i, c) in colors.iter().enumerate() {
        match c.as_u64() {
            None => out.push(diag(
                format!("colors[{i}]"),
                format!("expected a color, found {c}"),
            )),
            Some(c) if q.is_some_and(|q| c as usize >= q) => out.push(diag(
                format!("colors[{i}]"),
                format!("color {c} is not below q = {}", q.unwrap()),
            )),
            _ => {}
        }
    }
    out
}

/// A document with a `colors` field is a coloring; anything else is read as
/// a hypergraph.
pub fn detect_kind(doc: &Value) -> FileKind {
    if doc.get("colors").is_some() {
        FileKind::Coloring
    } else {
        FileKind::Hypergraph
    }
}

pub fn validate_str(text: &str) -> (FileKind, Vec<Diagnostic>) {
    match serde_json::from_str::<Value>(text) {
        Err(e) => (
            FileKind::Hypergraph,
            vec![diag(
                "",
                format!(
                    "malformed JSON at line {} column {}: {e}",
                    e.line(),
                    e.column()
                ),
            )],
        ),
        Ok(doc) => match detect_kind(&doc) {
            FileKind::Coloring => (FileKind::Coloring, validate_coloring_value(&doc)),
            FileKind::Hypergraph => (FileKind::Hypergraph, validate_hypergraph_value(&doc)),
        },
    }
}

/// Validates a hypergraph or coloring file. The first diagnostic locates
/// the first error; an empty list means the file is well formed.
pub fn validate_file(path: impl AsRef<Path>) -> (FileKind, Vec<Diagnostic>) {
    match std::fs::read_to_string(path.as_ref()) {
        Ok(text) => validate_str(&text),
        Err(e) => (
            FileKind::Hypergraph,
            vec![diag(
                "",
                format!("cannot read {}: {e}", path.as_ref().display()),
            )],
        ),
    }
}

fn first_error(diags: Vec<Diagnostic>) -> Result<()> {
    match diags.into_iter().next() {
        Some(d) => Err(Error::InvalidHypergraph(d.to_string())),
        None => Ok(()),
    }
}

pub fn hypergraph_from_str(text: &str) -> Result<Hypergraph> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidHypergraph(format!("malformed JSON: {e}")))?;
    first_error(validate_hypergraph_value(&doc))?;
    let file: HypergraphFile =
        serde_json::from_value(doc).map_err(|e| Error::InvalidHypergraph(e.to_string()))?;
    let h = Hypergraph::new(file.k, file.n, file.edges)?;
    match file.parts {
        Some(parts) if file.partite_proper.unwrap_or(true) => {
            h.with_layout(PartiteLayout::new(file.n, parts)?)
        }
        _ => Ok(h),
    }
}

pub fn coloring_from_str(text: &str) -> Result<EdgeColoring> {
    let doc: Value =
        serde_json::from_str(text).map_err(|e| Error::Coloring(format!("malformed JSON: {e}")))?;
    if let Some(d) = validate_coloring_value(&doc).into_iter().next() {
        return Err(Error::Coloring(d.to_string()));
    }
    let file: ColoringFile =
        serde_json::from_value(doc).map_err(|e| Error::Coloring(e.to_string()))?;
    EdgeColoring::new(file.n, file.k, file.q, file.colors)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Argument(format!("cannot read {}: {e}", path.display())))
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<Hypergraph> {
    hypergraph_from_str(&read(path.as_ref())?)
}

pub fn read_coloring(path: impl AsRef<Path>) -> Result<EdgeColoring> {
    coloring_from_str(&read(path.as_ref())?)
}

pub fn hypergraph_to_json(h: &Hypergraph) -> String {
    serde_json::to_string(&HypergraphFile::from(h)).expect("plain data serializes")
}
