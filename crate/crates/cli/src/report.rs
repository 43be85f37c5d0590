//! Reports printed by every command, either as one JSON line or as
//! `key: value` text.

use serde::Serialize;
use serde_json::{json, Value};

use qpa_core::prob::to_f64;
use qpa_core::supportgraph::Border;
use qpa_core::{Automaton, Budgets, Prob, Witness};

#[derive(Serialize)]
pub struct Report {
    pub query: Value,
    pub answer: Value,
    pub witness: Value,
    pub budget: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(b: &Budgets) -> Report {
        Report {
            query: Value::Null,
            answer: Value::Null,
            witness: Value::Null,
            budget: json!({
                "monoid": b.monoid,
                "subsets": b.subsets,
                "path_cap": b.extended,
                "pump_rounds": b.pump_rounds,
            }),
            diagnostics: None,
            error: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let fields = [("answer", &self.answer), ("witness", &self.witness)];
        for (key, v) in fields {
            match v {
                Value::Null => {}
                Value::Object(m) => {
                    for (k, x) in m {
                        out.push_str(&format!("{key}.{k}: {}\n", plain(x)));
                    }
                }
                _ => out.push_str(&format!("{key}: {}\n", plain(v))),
            }
        }
        if let Some(d) = &self.diagnostics {
            out.push_str(&format!("diagnostics: {d}\n"));
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `num/den`, plus a decimal rendering when asked for.
pub fn render_prob(p: &Prob, approx: bool) -> Value {
    if approx {
        json!({ "exact": p.to_string(), "approx": to_f64(p) })
    } else {
        json!(p.to_string())
    }
}

fn render_borders(bs: &[Border]) -> String {
    bs.iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_witness(a: &Automaton, w: &Witness, approx: bool) -> Value {
    match w {
        Witness::Lasso { word, probability } => json!({
            "kind": "lasso",
            "prefix": a.render_word(&word.prefix),
            "period": a.render_word(&word.period),
            "probability": render_prob(probability, approx),
        }),
        Witness::SharpPath {
            word,
            borders,
            dest,
        } => json!({
            "kind": "sharp_path",
            "from": a.render_set(a.initial_support()),
            "word": a.render_word(word),
            "borders": render_borders(borders),
            "dest": a.render_set(*dest),
        }),
        Witness::Limit {
            prefix,
            period,
            target,
            reach_probability,
            acceptance_probability,
        } => json!({
            "kind": "limit",
            "prefix": a.render_word(prefix),
            "period": period.as_ref().map(|p| a.render_word(p)),
            "target": a.render_set(*target),
            "reach_probability": render_prob(reach_probability, approx),
            "acceptance_probability": acceptance_probability.as_ref().map(|p| render_prob(p, approx)),
        }),
        Witness::Rank(rk) => json!({ "kind": "rank", "rank": rk }),
        Witness::NotSimple {
            minimal,
            path,
            source,
            word,
            borders,
            raw_support,
        } => json!({
            "kind": "not_simple",
            "minimal": a.render_set(*minimal),
            "path": a.render_word(path),
            "source": a.render_set(*source),
            "word": a.render_word(word),
            "borders": render_borders(borders),
            "raw_support": a.render_set(*raw_support),
        }),
    }
}
