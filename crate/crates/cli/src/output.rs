//! JSON (`schema: qkgr/1`) and CSV renderings of series and reports.
//!
//! - keys are sorted (serde_json's default map is ordered)
//! - rationals render as `p/q` strings, factors as `{m, mono, inv}` with
//!   multiplicity as repeated entries
//! - wall time is left out unless asked for, so reports are byte-stable

use serde_json::{json, Map, Value};

use qkgr_core::arith::rat_to_pq;
use qkgr_core::report::Report;
use qkgr_core::{FactoredCoeff, Monomial, NovikovSeries};

pub const SCHEMA: &str = "qkgr/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub fn exps_json(m: &Monomial) -> Value {
    let mut o = Map::new();
    for (v, e) in m.pairs() {
        o.insert(v.to_string(), json!(e));
    }
    Value::Object(o)
}

pub fn coeff_json(c: &FactoredCoeff) -> Value {
    let pre = c.prefactor();
    let factors: Vec<Value> = c
        .qfactors()
        .into_iter()
        .map(|f| json!({ "m": f.m, "mono": exps_json(&f.mono), "inv": f.sign_exponent < 0 }))
        .collect();
    json!({
        "prefactor": { "coeff": rat_to_pq(&pre.coeff), "exps": exps_json(&pre.mon) },
        "factors": factors,
    })
}

pub fn series_json(command: &Value, s: &NovikovSeries) -> Value {
    let coeffs: Vec<Value> = s.iter().map(|(d, c)| json!({ "d": d, "coeff": coeff_json(c) })).collect();
    json!({
        "schema": SCHEMA,
        "version": VERSION,
        "command": command,
        "count": coeffs.len(),
        "coefficients": coeffs,
    })
}

pub fn report_json(command: &Value, r: &Report, wall_seconds: Option<f64>) -> Value {
    let results: Vec<Value> =
        r.entries.iter().map(|e| json!({ "instance": e.instance, "pass": e.pass, "detail": e.detail })).collect();
    let failed = r.failures().count();
    let mut v = json!({
        "schema": SCHEMA,
        "version": VERSION,
        "command": command,
        "summary": { "total": r.len(), "passed": r.len() - failed, "failed": failed, "all_pass": failed == 0 },
        "results": results,
    });
    if let Some(t) = wall_seconds {
        v["wall_time_s"] = json!(format!("{t:.3}"));
    }
    v
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// One row per degree: `d`, prefactor, `numerator`/`denominator` factor lists.
pub fn series_csv(s: &NovikovSeries) -> String {
    let mut out = String::from("d,prefactor,numerator,denominator\n");
    for (d, c) in s.iter() {
        let ds: Vec<String> = d.iter().map(|x| x.to_string()).collect();
        let (mut num, mut den) = (Vec::new(), Vec::new());
        for f in c.qfactors() {
            let text = format!("(1-q^{}*{})", f.m, f.mono);
            if f.sign_exponent < 0 {
                den.push(text);
            } else {
                num.push(text);
            }
        }
        let row = [ds.join(" "), c.prefactor().to_string(), num.join(""), den.join("")];
        out.push_str(&row.iter().map(|x| csv_field(x)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}

pub fn report_csv(r: &Report) -> String {
    let mut out = String::from("instance,pass,detail\n");
    for e in &r.entries {
        out.push_str(&format!("{},{},{}\n", csv_field(&e.instance), e.pass, csv_field(&e.detail)));
    }
    out
}
