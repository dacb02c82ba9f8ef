//! Canonical JSON for every report: sorted keys (serde_json's default map is
//! ordered), integers only, two-space indentation and a trailing newline.

use std::fs;
use std::io;
use std::path::Path;

use serde_json::{json, Value};

use crate::classify::{IsoClassTable, Skipped, XReport};
use crate::forms::{self, BimoduleShape, FormSpec, NullVector, SpeciesVerdict};
use crate::presentation::AlgebraPresentation;
use crate::repcat::CompositionSeries;
use crate::separated::SeparatedReport;

pub fn seed_hex(seed: u64) -> String {
    format!("{seed:#x}")
}

pub fn canonical_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
    s.push('\n');
    s
}

/// Writes the canonical form of `value`; errors carry the path.
pub fn emit_report(value: &Value, path: &Path) -> io::Result<()> {
    fs::write(path, canonical_string(value)).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))
}

fn skipped_json(skipped: &[Skipped]) -> Value {
    skipped
        .iter()
        .map(|s| json!({"dimvec": s.dimvec, "entries": s.entries}))
        .collect()
}

pub fn x_report_json(alg: &AlgebraPresentation, r: &XReport) -> Value {
    json!({
        "bound": r.bound,
        "field": r.p,
        "seed": seed_hex(r.seed),
        "verdict": r.verdict.as_str(),
        "probabilistic": r.probabilistic,
        "total_classes": r.total_classes(),
        "violations": r.violations.iter().map(|v| json!({
            "dimvec": v.dimvec,
            "certain": v.certain,
            "reps": v.reps.iter().map(|m| m.to_json(alg)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "counts": r.counts.iter().map(|c| json!({"dimvec": c.dimvec, "count": c.count})).collect::<Vec<_>>(),
        "skipped": skipped_json(&r.skipped),
    })
}

pub fn count_table_json(r: &XReport) -> Value {
    json!({
        "bound": r.bound,
        "field": r.p,
        "seed": seed_hex(r.seed),
        "probabilistic": r.probabilistic,
        "counts": r.counts.iter().map(|c| json!({"dimvec": c.dimvec, "count": c.count})).collect::<Vec<_>>(),
        "skipped": skipped_json(&r.skipped),
    })
}

pub fn class_table_json(alg: &AlgebraPresentation, t: &IsoClassTable, seed: u64) -> Value {
    json!({
        "dimvec": t.dimvec,
        "field": alg.field().modulus(),
        "seed": seed_hex(seed),
        "certain": t.certain,
        "enumerated": t.enumerated,
        "count": t.count(),
        "class_sizes": t.class_sizes,
        "representatives": t.representatives.iter().map(|m| m.to_json(alg)).collect::<Vec<_>>(),
    })
}

pub fn series_json(alg: &AlgebraPresentation, s: &CompositionSeries) -> Value {
    let names = alg.quiver().vertices();
    json!({
        "length": s.length(),
        "factors": s.factors.iter().map(|&v| names[v].clone()).collect::<Vec<_>>(),
        "multiplicities": s.multiplicities(names.len()),
        "chain_dims": s.chain.iter()
            .map(|link| link.iter().map(|sp| sp.dim()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

fn null_json(n: Option<NullVector>) -> Value {
    match n {
        Some(n) => json!({"vector": [n.vector.0, n.vector.1], "swapped": n.swapped, "value": n.value}),
        None => Value::Null,
    }
}

/// Shape data, optional consistent form, null vector and its defect.
pub fn form_json(shape: &BimoduleShape, spec: Option<&FormSpec>) -> Value {
    let null = forms::find_null_vector(shape);
    let defect = null.and_then(|n| forms::defect(shape, (n.vector.0 as i64, n.vector.1 as i64)).ok());
    let mut v = json!({
        "a": shape.a,
        "b": shape.b,
        "tilde_matrix": forms::tilde_matrix(shape),
        "finite_type": forms::is_finite_type(shape),
        "null_vector": null_json(null),
        "defect": defect,
    });
    if let Some(s) = spec {
        v["form"] = json!({
            "f1": s.f1,
            "f2": s.f2,
            "m": s.m,
            "positive_definite": forms::is_positive_definite(s),
            "null_vector": null_json(forms::find_null_vector_spec(s)),
        });
    }
    v
}

pub fn species_json(pairs: &[(u64, u64)], verdict: SpeciesVerdict) -> Value {
    let (pass, failing) = match verdict {
        SpeciesVerdict::Pass => (true, None),
        SpeciesVerdict::Fail(i) => (false, Some(i)),
    };
    json!({
        "pairs": pairs.iter().map(|&(l, r)| [l, r]).collect::<Vec<_>>(),
        "pass": pass,
        "failing_pair": failing,
    })
}

pub fn separated_report_json(r: &SeparatedReport) -> Value {
    json!({
        "bound": r.bound,
        "field": r.p,
        "seed": seed_hex(r.seed),
        "verdict": r.verdict.as_str(),
        "probabilistic": r.probabilistic,
        "lambda_classes": r.lambda_classes,
        "gamma_classes": r.gamma_classes,
        "lambda_skipped": skipped_json(&r.lambda_skipped),
        "gamma_skipped": skipped_json(&r.gamma_skipped),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "pass": c.pass,
            "bounded": c.bounded,
            "checked": c.checked,
            "witnesses": c.witnesses,
        })).collect::<Vec<_>>(),
    })
}
