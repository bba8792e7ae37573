//! Text and JSON rendering of explanation reports.

use serde_json::{json, Value};

use crate::explain::ExplanationReport;
use crate::logic::json::{clause_to_json, formula_to_json, term_to_json};
use crate::logic::{VarTable, World};

fn instance_json(table: &VarTable, w: &World) -> Value {
    let mut map = serde_json::Map::new();
    for v in table.var_ids() {
        map.insert(
            table.name(v).to_string(),
            Value::String(table.state_name(v, w.state(v)).to_string()),
        );
    }
    Value::Object(map)
}

/// The report as a JSON document following the term/clause/formula
/// schemas of the library.
pub fn report_to_json(report: &ExplanationReport) -> Value {
    let arena = report.arena();
    let table = arena.table();
    json!({
        "decision": report.decision,
        "instance": instance_json(table, &report.instance),
        "sufficient_reasons": report.srs.iter().map(|t| term_to_json(table, t)).collect::<Vec<_>>(),
        "necessary_reasons": report.nrs.iter().map(|c| clause_to_json(table, c)).collect::<Vec<_>>(),
        "general_sufficient_reasons": report.gsrs.iter().map(|t| term_to_json(table, t)).collect::<Vec<_>>(),
        "general_necessary_reasons": report.gnrs.iter().map(|c| clause_to_json(table, c)).collect::<Vec<_>>(),
        "general_reason": formula_to_json(arena, report.general_reason),
        "complete_reason": formula_to_json(arena, report.complete_reason),
        "fast_path": report.fast_path,
    })
}

/// The report as human-readable text. Literals print as `Var = s` or
/// `Var ∈ {s1, s2}`, using interval labels when the table carries them.
pub fn report_to_text(report: &ExplanationReport) -> String {
    let arena = report.arena();
    let table = arena.table();
    let mut out = String::new();
    if let Some(d) = &report.decision {
        out.push_str(&format!("decision: {d}\n"));
    }
    out.push_str(&format!(
        "instance: {}\n",
        report.instance.render(table)
    ));
    out.push_str("sufficient reasons (SR):\n");
    for t in &report.srs {
        out.push_str(&format!("  {}\n", t.render(table)));
    }
    out.push_str("necessary reasons (NR):\n");
    for c in &report.nrs {
        out.push_str(&format!("  {}\n", c.render(table)));
    }
    out.push_str("general sufficient reasons (GSR):\n");
    for t in report.gsrs.iter() {
        out.push_str(&format!("  {}\n", t.render(table)));
    }
    out.push_str("general necessary reasons (GNR):\n");
    for c in report.gnrs.iter() {
        out.push_str(&format!("  {}\n", c.render(table)));
    }
    out.push_str(&format!(
        "general reason: {}\n",
        arena.render(report.general_reason)
    ));
    out.push_str(&format!(
        "complete reason: {}\n",
        arena.render(report.complete_reason)
    ));
    out
}
