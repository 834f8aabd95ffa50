//! JSON payload helpers. Integers are emitted as decimal strings and object
//! keys are sorted, so identical inputs give byte-identical output.

use num_rational::BigRational;
use quadsec_core::flipcalc::format_rational;
use quadsec_core::groebner::HilbertData;
use quadsec_core::{BettiTable, FieldElement, Ideal, Polynomial, SyzygyElement};
use serde_json::{Map, Value};

pub fn int<T: ToString>(v: T) -> Value {
    Value::String(v.to_string())
}

pub fn ints<T: ToString>(vs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(vs.into_iter().map(int).collect())
}

pub fn rational(q: &BigRational) -> Value {
    Value::String(format_rational(q))
}

pub fn poly(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

pub fn polys<'a>(ps: impl IntoIterator<Item = &'a Polynomial>) -> Value {
    Value::Array(ps.into_iter().map(poly).collect())
}

pub fn point(p: &[FieldElement]) -> Value {
    Value::Array(p.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn ideal(i: &Ideal) -> Value {
    polys(i.gens())
}

pub fn hilbert(h: &HilbertData) -> Value {
    obj([("numerator", ints(h.numerator.iter())), ("dimension", int(h.dimension)), ("degree", int(h.degree))])
}

pub fn betti(b: &BettiTable) -> Value {
    let mut m = Map::new();
    for ((i, j), v) in b.entries() {
        m.insert(format!("{i},{j}"), int(v));
    }
    let totals = (0..b.length()).map(|i| b.total(i));
    obj([("entries", Value::Object(m)), ("totals", ints(totals))])
}

pub fn syzygy(s: &SyzygyElement) -> Value {
    obj([("entries", polys(&s.entries)), ("degree", int(s.degree))])
}

pub fn obj<const N: usize>(pairs: [(&str, Value); N]) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

/// Human-readable rendering: one `path: value` line per leaf.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    walk(v, "", &mut out);
    out
}

fn walk(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(x, &p, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                walk(x, &format!("{path}[{i}]"), out);
            }
        }
        Value::Array(a) => {
            let parts: Vec<String> = a.iter().map(scalar).collect();
            out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
        }
        other => out.push_str(&format!("{path}: {}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}
