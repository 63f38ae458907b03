//! Line-oriented text rendering of traces and reports.

use biratlab::cremona::{FactorizationTrace, LinkState, Step};
use biratlab::lattice::{ModelKind, SurfaceModel};
use biratlab::mmp::{numerics, MmpTrace, Terminal};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "trace")]
pub enum Trace {
    Mmp(MmpTrace),
    Factorization(FactorizationTrace),
}

fn subscript(n: u32) -> String {
    n.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

pub fn model_symbol(m: &SurfaceModel) -> String {
    match m.kind {
        ModelKind::Plane => "P²".into(),
        ModelKind::BlowupPlane { r } => format!("Bl{}", subscript(r)),
        ModelKind::Hirzebruch { k } => format!("F{}", subscript(k)),
    }
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}s")
    }
}

fn terminal_text(t: &Terminal) -> String {
    match t {
        Terminal::PlaneOutput => "Plane".into(),
        Terminal::RuledOutput {
            base_genus,
            fiber,
            rank,
        } => {
            format!("Ruled (base genus {base_genus}, fiber {fiber}, rank {rank})")
        }
        Terminal::MinimalOutput => "Minimal".into(),
    }
}

fn render_mmp(t: &MmpTrace) -> String {
    let mut s = String::new();
    for (i, step) in t.steps.iter().enumerate() {
        let (c2, kc) =
            numerics(&step.model_before, &step.ray.generator).unwrap_or((i64::MAX, i64::MAX));
        writeln!(
            s,
            "{}. {} → {}  contract {}  C² = {c2}, K·C = {kc}  rank {} → {}",
            i + 1,
            model_symbol(&step.model_before),
            model_symbol(&step.model_after),
            step.ray.generator,
            step.model_before.rank(),
            step.model_after.rank()
        )
        .unwrap();
    }
    writeln!(
        s,
        "{}; terminal: {}",
        plural(t.steps.len(), "step"),
        terminal_text(&t.terminal)
    )
    .unwrap();
    s
}

fn certificates(st: &LinkState) -> String {
    format!(
        "D = {}, D² - Σm² = {}, K·D + Σm = {}, rank {}",
        st.class,
        st.self_intersection_certificate,
        st.canonical_certificate,
        st.model.rank()
    )
}

fn render_factorization(t: &FactorizationTrace) -> String {
    let mut s = String::new();
    if let Some(ty) = &t.start {
        writeln!(s, "type {ty}").unwrap();
    }
    let mut here = SurfaceModel::plane();
    for step in &t.steps {
        match step {
            Step::QuadraticCremona {
                points,
                mults,
                degree_before,
                degree_after,
                ..
            } => {
                let m: Vec<String> = mults.iter().map(|m| m.to_string()).collect();
                writeln!(
                    s,
                    "quadratic {degree_before} → {degree_after} at {} with multiplicities {}",
                    points.join(", "),
                    m.join(",")
                )
                .unwrap();
                here = SurfaceModel::plane();
            }
            Step::BlowUpMaxMult {
                point,
                mult,
                certificate,
                state,
            } => {
                writeln!(
                    s,
                    "  {} ← {}  blow up {point} (m = {mult}, 3m - n = {certificate}); {}",
                    model_symbol(&here),
                    model_symbol(&state.model),
                    certificates(state)
                )
                .unwrap();
                here = state.model;
            }
            Step::ElementaryTransform {
                point,
                mult,
                from,
                to,
                exceeds_half_fiber_degree,
                new_point,
                new_mult,
                state,
            } => {
                let flag = if *exceeds_half_fiber_degree {
                    ", m > n'/2"
                } else {
                    ""
                };
                writeln!(
                    s,
                    "  {} ⇢ {}  elementary transform at {point} (m = {mult}{flag}), new point {new_point} (m = {new_mult}); {}",
                    model_symbol(from),
                    model_symbol(to),
                    certificates(state)
                )
                .unwrap();
                here = state.model;
            }
            Step::BlowDown {
                new_point,
                new_mult,
                state,
            } => {
                writeln!(
                    s,
                    "  {} → {}  blow down to {new_point} (m = {new_mult}); {}",
                    model_symbol(&here),
                    model_symbol(&state.model),
                    certificates(state)
                )
                .unwrap();
                here = state.model;
            }
            Step::Linear => writeln!(s, "linear").unwrap(),
        }
    }
    let degrees: Vec<String> = t.degrees.iter().map(|d| d.to_string()).collect();
    writeln!(
        s,
        "{}; degrees {}",
        plural(t.quadratic_steps(), "quadratic step"),
        degrees.join(" → ")
    )
    .unwrap();
    s
}

/// Deterministic text form of a trace, one line per step.
pub fn render_trace(t: &Trace) -> String {
    match t {
        Trace::Mmp(m) => render_mmp(m),
        Trace::Factorization(f) => render_factorization(f),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `key: value` lines for a JSON document; nested values stay compact JSON.
pub fn render_document(doc: &Value) -> String {
    let mut s = String::new();
    if let Value::Object(map) = doc {
        for (k, v) in map {
            if k == "format" || k == "command" {
                continue;
            }
            writeln!(s, "{k}: {}", scalar(v)).unwrap();
        }
    } else {
        writeln!(s, "{}", scalar(doc)).unwrap();
    }
    s
}
