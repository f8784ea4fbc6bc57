//! Rendering: one canonical JSON shape and a plain-text view of the same
//! data. The JSON serializer emits object keys in sorted order, so identical
//! inputs produce byte-identical reports.

use serde_json::{json, Value};
use solq_core::solenoid::{ClcReport, DegreeTable};
use solq_core::tower::OracleOutcome;
use solq_core::trace::TraceStep;
use solq_core::verdict::ClassificationVerdict;

pub const SCHEMA_VERSION: u64 = 1;

pub fn trace_json(steps: &[TraceStep]) -> Value {
    Value::Array(
        steps
            .iter()
            .map(|s| {
                json!({
                    "rule": s.rule,
                    "site": s.site,
                    "conclusion": s.conclusion,
                })
            })
            .collect(),
    )
}

pub fn push_trace_text(lines: &mut Vec<String>, steps: &[TraceStep], indent: &str) {
    for step in steps {
        lines.push(format!("{indent}{step}"));
    }
}

pub fn table_json(table: &DegreeTable, with_trace: bool) -> Value {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            let mut row = json!({
                "degree": r.degree,
                "value": r.value.to_string(),
                "provenance": r.provenance.code(),
                "leans_on": r.leans_on,
                "notes": r.notes,
            });
            if with_trace {
                row.as_object_mut()
                    .expect("row is an object")
                    .insert("trace".to_string(), trace_json(&r.trace));
            }
            row
        })
        .collect();
    json!({
        "family": table.family,
        "ring": table.ring.to_string(),
        "rows": rows,
    })
}

pub fn push_table_text(lines: &mut Vec<String>, table: &DegreeTable, with_trace: bool) {
    for row in &table.rows {
        lines.push(format!(
            "  degree {}: {}  [{}]",
            row.degree,
            row.value,
            row.provenance.code()
        ));
        for note in &row.notes {
            lines.push(format!("      note: {note}"));
        }
        if with_trace {
            push_trace_text(lines, &row.trace, "      ");
        }
    }
}

pub fn clc_json(report: &ClcReport) -> Value {
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|r| {
            json!({
                "degree": r.degree,
                "status": r.status.word(),
                "provenance": r.provenance.code(),
                "witness": r.witness.as_ref().map(|w| w.to_string()),
                "leans_on": r.leans_on,
                "notes": r.notes,
            })
        })
        .collect();
    json!({
        "ring": report.ring.to_string(),
        "rows": rows,
        "all_hold": report.all_hold(),
        "failing_degrees": report.failing_degrees(),
    })
}

pub fn push_clc_text(lines: &mut Vec<String>, report: &ClcReport) {
    for row in &report.rows {
        let witness = row
            .witness
            .as_ref()
            .map(|w| format!("  witness {w}"))
            .unwrap_or_default();
        lines.push(format!(
            "  degree {}: {}  [{}]{}",
            row.degree,
            row.status.word(),
            row.provenance.code(),
            witness
        ));
        for note in &row.notes {
            lines.push(format!("      note: {note}"));
        }
    }
    if report.all_hold() {
        lines.push("  overall: holds in every degree".to_string());
    } else {
        let degrees: Vec<String> = report
            .failing_degrees()
            .iter()
            .map(|d| d.to_string())
            .collect();
        lines.push(format!("  overall: fails in degrees {}", degrees.join(", ")));
    }
}

pub fn verdict_json(verdict: &ClassificationVerdict, with_trace: bool) -> Value {
    let conditions: Vec<Value> = verdict
        .conditions
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "status": c.status.word(),
                "provenance": c.provenance.code(),
                "details": c.details,
            })
        })
        .collect();
    json!({
        "primes": verdict.primes.to_string(),
        "ring": verdict.ring.to_string(),
        "conditions": conditions,
        "cohomology_manifold": verdict.cohomology_manifold.word(),
        "homology_manifold": verdict.homology_manifold.word(),
        "homology_via": verdict.homology_via,
        "failure_flavor": verdict.failure_flavor.map(|f| f.code()),
        "extrapolated": verdict.extrapolated,
        "local_table": table_json(&verdict.local_table, with_trace),
        "pair_table": table_json(&verdict.pair_table, with_trace),
        "clc": clc_json(&verdict.clc),
    })
}

pub fn push_verdict_text(lines: &mut Vec<String>, verdict: &ClassificationVerdict) {
    for condition in &verdict.conditions {
        lines.push(format!(
            "  {}: {}  [{}]",
            condition.id,
            condition.status.word(),
            condition.provenance.code()
        ));
        for detail in &condition.details {
            lines.push(format!("      {detail}"));
        }
    }
    lines.push(format!(
        "  cohomology manifold: {}",
        verdict.cohomology_manifold.word()
    ));
    let flavor = verdict
        .failure_flavor
        .map(|f| format!("  ({})", f.code()))
        .unwrap_or_default();
    lines.push(format!(
        "  homology manifold: {}{}",
        verdict.homology_manifold.word(),
        flavor
    ));
    if let Some(via) = verdict.homology_via {
        lines.push(format!("      via {via}"));
    }
    if verdict.extrapolated {
        lines.push(
            "  note: the modulus is composite, outside the cases the adopted results \
             speak about; every computed cell stands on its own"
                .to_string(),
        );
    }
}

pub fn oracle_json(probe: &OracleOutcome, agrees: Option<bool>) -> Value {
    json!({
        "depth": probe.depth,
        "stabilized": probe.stabilized,
        "value": probe.value.to_string(),
        "defect": probe.defect.to_string(),
        "notes": probe.notes,
        "agrees": agrees,
    })
}

pub fn push_oracle_text(lines: &mut Vec<String>, probe: &OracleOutcome, agrees: Option<bool>) {
    if probe.stabilized {
        let verdict = match agrees {
            Some(true) => ", agrees with the symbolic value",
            Some(false) => ", DISAGREES with the symbolic value",
            None => "",
        };
        lines.push(format!(
            "  probe at depth {}: stabilized to {}{}",
            probe.depth, probe.value, verdict
        ));
    } else {
        lines.push(format!(
            "  probe at depth {}: not stabilized; end-to-end kernel {}, cokernel {}",
            probe.depth, probe.value, probe.defect
        ));
    }
    for note in &probe.notes {
        lines.push(format!("      note: {note}"));
    }
}
