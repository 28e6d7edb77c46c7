//! The `tri/1` text format.
//!
//! ```text
//! {
//!   "schema": "tri/1",
//!   "vertices": 4,
//!   "faces": [
//!     [0, 1, 2],
//!     ...
//!   ],
//!   "holes": [[0, 1, 3]],
//!   "marks": {"fundamental_edges": [[0, 1]], "expandable_cycles": [[0, 1, 3]]},
//!   "labels": {"x": 0},
//!   "comment": "free text"
//! }
//! ```
//!
//! `holes`, `marks`, `labels` and `comment` are optional. Mark names ending
//! in `_edges` hold vertex pairs, names ending in `_cycles` vertex triples.
//! The writer sorts faces and emits a fixed layout, so writing is a pure
//! function of the complex.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::complex::{build_complex, ComplexError, Edge, Marks, SurfaceComplex, Triple, Vertex};

pub const TRI_SCHEMA: &str = "tri/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("expected schema `{TRI_SCHEMA}`, found `{0}`")]
    Schema(String),
    #[error("mark `{name}`: {reason}")]
    Mark { name: String, reason: String },
    #[error("invalid complex: {0}")]
    Complex(#[from] ComplexError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTri {
    schema: String,
    vertices: usize,
    faces: Vec<[Vertex; 3]>,
    #[serde(default)]
    holes: Vec<[Vertex; 3]>,
    #[serde(default)]
    marks: BTreeMap<String, Vec<Vec<Vertex>>>,
    #[serde(default)]
    labels: BTreeMap<String, Vertex>,
    #[serde(default)]
    comment: String,
}

pub fn parse_tri(text: &str) -> Result<SurfaceComplex, FormatError> {
    let raw: RawTri = serde_json::from_str(text)?;
    if raw.schema != TRI_SCHEMA {
        return Err(FormatError::Schema(raw.schema));
    }
    let mut marks = Marks::default();
    for (name, items) in raw.marks {
        let arity = if name.ends_with("_edges") {
            2
        } else if name.ends_with("_cycles") {
            3
        } else {
            return Err(FormatError::Mark {
                name,
                reason: "name must end in `_edges` or `_cycles`".into(),
            });
        };
        if let Some(bad) = items.iter().find(|it| it.len() != arity) {
            return Err(FormatError::Mark {
                reason: format!("entry {bad:?} should have {arity} vertices"),
                name,
            });
        }
        if arity == 2 {
            marks.set_edges(
                &name,
                items.iter().map(|it| Edge::new(it[0], it[1])).collect(),
            );
        } else {
            marks.set_cycles(
                &name,
                items
                    .iter()
                    .map(|it| Triple::new(it[0], it[1], it[2]))
                    .collect(),
            );
        }
    }
    let c = build_complex(raw.vertices, raw.faces, raw.holes)?
        .with_marks(marks)?
        .with_labels(raw.labels)?
        .with_comment(raw.comment);
    Ok(c)
}

pub fn read_tri(path: impl AsRef<Path>) -> Result<SurfaceComplex, FormatError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_tri(&text)
}

pub fn write_tri(path: impl AsRef<Path>, c: &SurfaceComplex) -> Result<(), FormatError> {
    let path = path.as_ref();
    fs::write(path, to_tri_string(c)).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn triple_text(t: Triple) -> String {
    let [a, b, c] = t.vertices();
    format!("[{a}, {b}, {c}]")
}

fn edge_text(e: Edge) -> String {
    let (a, b) = e.ends();
    format!("[{a}, {b}]")
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

pub fn to_tri_string(c: &SurfaceComplex) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"schema\": \"{TRI_SCHEMA}\",\n"));
    out.push_str(&format!("  \"vertices\": {},\n", c.vertex_count()));
    out.push_str("  \"faces\": [\n");
    let faces: Vec<String> = c
        .faces()
        .iter()
        .map(|&t| format!("    {}", triple_text(t)))
        .collect();
    out.push_str(&faces.join(",\n"));
    out.push_str("\n  ]");
    if !c.holes().is_empty() {
        let holes: Vec<String> = c.holes().iter().map(|&t| triple_text(t)).collect();
        out.push_str(&format!(",\n  \"holes\": [{}]", holes.join(", ")));
    }
    let marks = c.marks();
    if !marks.is_empty() {
        let mut entries: BTreeMap<&str, String> = BTreeMap::new();
        for (name, list) in &marks.edges {
            let items: Vec<String> = list.iter().map(|&e| edge_text(e)).collect();
            entries.insert(name, items.join(", "));
        }
        for (name, list) in &marks.cycles {
            let items: Vec<String> = list.iter().map(|&t| triple_text(t)).collect();
            entries.insert(name, items.join(", "));
        }
        let lines: Vec<String> = entries
            .iter()
            .map(|(name, items)| format!("    {}: [{}]", json_string(name), items))
            .collect();
        out.push_str(&format!(",\n  \"marks\": {{\n{}\n  }}", lines.join(",\n")));
    }
    if !c.labels().is_empty() {
        let items: Vec<String> = c
            .labels()
            .iter()
            .map(|(k, v)| format!("{}: {}", json_string(k), v))
            .collect();
        out.push_str(&format!(",\n  \"labels\": {{{}}}", items.join(", ")));
    }
    if !c.comment().is_empty() {
        out.push_str(&format!(",\n  \"comment\": {}", json_string(c.comment())));
    }
    out.push_str("\n}\n");
    out
}
