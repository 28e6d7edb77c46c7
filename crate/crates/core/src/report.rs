//! JSON reports: `isingreport/1` for counts and groundstates,
//! `supportreport/1` for catalog scans.
//!
//! Object keys come out sorted, so a report is a pure function of its input.

use serde_json::{json, Map, Value};

use crate::catalog::SupportReport;
use crate::complex::{euler_genus, Edge, SurfaceComplex, Triple};
use crate::ground::{GroundstateReport, Method};
use crate::solve::SolveReport;

pub const ISING_REPORT_SCHEMA: &str = "isingreport/1";
pub const SUPPORT_REPORT_SCHEMA: &str = "supportreport/1";

fn edge_json(e: Edge) -> Value {
    let (a, b) = e.ends();
    json!([a, b])
}

fn triple_json(t: Triple) -> Value {
    json!(t.vertices())
}

pub fn method_name(m: Method) -> &'static str {
    match m {
        Method::Exhaustive => "exhaustive",
        Method::BranchAndBound => "bnb",
        Method::Auto => "auto",
    }
}

pub fn complex_summary(c: &SurfaceComplex) -> Value {
    json!({
        "vertices": c.vertex_count(),
        "edges": c.edges().len(),
        "faces": c.faces().len(),
        "holes": c.holes().iter().map(|&t| triple_json(t)).collect::<Vec<_>>(),
        "genus": euler_genus(c).ok(),
        "closed": c.is_closed(),
    })
}

pub fn solve_json(r: &SolveReport) -> Value {
    json!({
        "satisfying_count": r.satisfying_count,
        "pair_count": r.pair_count,
        "representatives": r.representatives.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "truncated": r.truncated,
        "serious_edges": r.serious_edges.as_ref().map(|v| v.iter().map(|&e| edge_json(e)).collect::<Vec<_>>()),
    })
}

pub fn groundstate_json(r: &GroundstateReport) -> Value {
    json!({
        "min_energy": r.min_energy,
        "degeneracy": r.degeneracy,
        "representatives": r.representatives.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "truncated": r.truncated,
        "method": method_name(r.method),
    })
}

/// An `isingreport/1` document. Absent sections are omitted.
pub fn ising_report(
    c: &SurfaceComplex,
    solve: Option<&SolveReport>,
    ground: Option<&GroundstateReport>,
    extra: Map<String, Value>,
) -> Value {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(ISING_REPORT_SCHEMA));
    doc.insert("complex".into(), complex_summary(c));
    if let Some(s) = solve {
        doc.insert("satisfying".into(), solve_json(s));
    }
    if let Some(g) = ground {
        doc.insert("groundstate".into(), groundstate_json(g));
    }
    doc.extend(extra);
    Value::Object(doc)
}

pub fn support_report_json(r: &SupportReport) -> Value {
    let sets: Vec<Value> = r
        .removable_sets
        .iter()
        .map(|s| {
            json!({
                "faces": s.faces,
                "cycles": s.cycles.iter().map(|&t| triple_json(t)).collect::<Vec<_>>(),
                "punctured_count": s.punctured_count,
                "fundamental_edges": s.fundamental_edges.iter().map(|&e| edge_json(e)).collect::<Vec<_>>(),
                "connector": s.connector,
            })
        })
        .collect();
    json!({
        "name": r.name,
        "base_satisfying_count": r.base_satisfying_count,
        "witness": r.witness.as_ref().map(|s| s.to_string()),
        "max_removal_size": r.max_removal_size,
        "subsets_scanned": r.subsets_scanned,
        "removable_sets": sets,
        "supporting": r.supporting,
        "connector": r.is_connector(),
    })
}

/// A `supportreport/1` document over several entries.
pub fn support_report(reports: &[SupportReport]) -> Value {
    json!({
        "schema": SUPPORT_REPORT_SCHEMA,
        "entries": reports.iter().map(support_report_json).collect::<Vec<_>>(),
        "supporting": reports.iter().filter(|r| r.supporting).map(|r| r.name.clone()).collect::<Vec<_>>(),
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}
