//! JSON formats for complexes, morphisms and simplicial sets.
//!
//! A complex is stored as
//! `{"name", "max_degree", "basis": [[ids per degree]], "d": {id: [[coef, id], …]}, "e": {id: int}}`
//! and a morphism as `{"source", "target", "action": {id: [[coef, id], …]}}`
//! with both endpoints embedded. Maps of nonzero degree carry an extra
//! `"shift"`. Object keys are written in sorted order, so serializing the same
//! value twice gives the same bytes.
//!
//! Identifiers must be unique across all degrees, since `d`, `e` and `action`
//! are keyed by identifier alone. Coefficients are JSON integers, or decimal
//! strings when they do not fit in 64 bits.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::chain::{BasisRef, ChainElement};
use crate::complex::AdcComplex;
use crate::error::{AdcError, Result};
use crate::morphism::{AdcMorphism, GradedMap};
use crate::scalar::Coefficient;
use crate::simplicial::{BisimplicialSet, TruncatedSimplicialSet};

fn format_err(path: &str, msg: impl std::fmt::Display) -> AdcError {
    AdcError::Format(format!("{path}: {msg}"))
}

fn coeff_to_json<C: Coefficient>(c: &C) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn coeff_from_json<C: Coefficient>(v: &Value, path: &str) -> Result<C> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .and_then(C::from_i64)
            .ok_or_else(|| format_err(path, format!("{n} is not an integer that fits the coefficient type"))),
        Value::String(s) => C::from_str_radix(s, 10).map_err(|_| format_err(path, format!("{s:?} is not an integer"))),
        _ => Err(format_err(path, "expected an integer")),
    }
}

fn chain_to_json<C: Coefficient>(k: &AdcComplex<C>, x: &ChainElement<C>) -> Value {
    Value::Array(
        x.terms()
            .map(|(i, c)| json!([coeff_to_json(c), k.id(BasisRef::new(x.degree(), i))]))
            .collect(),
    )
}

fn chain_from_json<C: Coefficient>(
    v: &Value,
    degree: usize,
    lookup: &dyn Fn(usize, &str) -> Option<usize>,
    path: &str,
) -> Result<ChainElement<C>> {
    let terms = v
        .as_array()
        .ok_or_else(|| format_err(path, "expected a list of [coef, id] pairs"))?;
    let mut out = ChainElement::zero(degree);
    for (t, term) in terms.iter().enumerate() {
        let p = format!("{path}[{t}]");
        let pair = term
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| format_err(&p, "expected [coef, id]"))?;
        let c: C = coeff_from_json(&pair[0], &format!("{p}[0]"))?;
        let id = pair[1]
            .as_str()
            .ok_or_else(|| format_err(&format!("{p}[1]"), "expected a string identifier"))?;
        let i = lookup(degree, id).ok_or_else(|| {
            format_err(
                &format!("{p}[1]"),
                format!("{id:?} is not a basis element of degree {degree}"),
            )
        })?;
        out.add_term(i, &c)?;
    }
    Ok(out)
}

pub fn adc_to_json<C: Coefficient>(k: &AdcComplex<C>) -> Value {
    let mut d = Map::new();
    let mut e = Map::new();
    for b in k.basis_refs() {
        if b.degree == 0 {
            e.insert(k.id(b).to_string(), coeff_to_json(k.augmentation_of(b.index)));
        } else {
            d.insert(k.id(b).to_string(), chain_to_json(k, k.d_basis(b)));
        }
    }
    json!({
        "name": k.name(),
        "max_degree": k.max_degree(),
        "basis": (0..=k.max_degree()).map(|deg| k.basis_ids(deg).to_vec()).collect::<Vec<_>>(),
        "d": d,
        "e": e,
    })
}

fn global_ids(basis: &[Vec<String>]) -> Result<HashMap<&str, (usize, usize)>> {
    let mut ids = HashMap::new();
    for (deg, row) in basis.iter().enumerate() {
        for (i, id) in row.iter().enumerate() {
            if ids.insert(id.as_str(), (deg, i)).is_some() {
                return Err(format_err(
                    &format!("basis[{deg}][{i}]"),
                    format!("identifier {id:?} occurs twice"),
                ));
            }
        }
    }
    Ok(ids)
}

pub fn adc_from_json<C: Coefficient>(v: &Value) -> Result<AdcComplex<C>> {
    let obj = v.as_object().ok_or_else(|| format_err("$", "expected an object"))?;
    for key in obj.keys() {
        if !["name", "max_degree", "basis", "d", "e"].contains(&key.as_str()) {
            return Err(format_err(key, "unknown field"));
        }
    }
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| format_err("name", "expected a string"))?;
    let basis_v = obj
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| format_err("basis", "expected a list of lists"))?;
    let mut basis = Vec::new();
    for (deg, row) in basis_v.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| format_err(&format!("basis[{deg}]"), "expected a list"))?;
        basis.push(
            row.iter()
                .enumerate()
                .map(|(i, id)| {
                    id.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| format_err(&format!("basis[{deg}][{i}]"), "expected a string"))
                })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    if basis.is_empty() {
        basis.push(Vec::new());
    }
    let max_degree = basis.len() - 1;
    if let Some(m) = obj.get("max_degree") {
        if m.as_u64() != Some(max_degree as u64) {
            return Err(format_err(
                "max_degree",
                format!("{m} disagrees with the {} degrees listed in basis", basis.len()),
            ));
        }
    }
    let ids = global_ids(&basis)?;
    let lookup = |deg: usize, id: &str| ids.get(id).filter(|(d, _)| *d == deg).map(|&(_, i)| i);
    let empty = Map::new();
    let d = match obj.get("d") {
        Some(x) => x.as_object().ok_or_else(|| format_err("d", "expected an object"))?,
        None => &empty,
    };
    let e = match obj.get("e") {
        Some(x) => x.as_object().ok_or_else(|| format_err("e", "expected an object"))?,
        None => &empty,
    };
    let mut differential: Vec<Vec<ChainElement<C>>> = vec![Vec::new()];
    for (deg, row) in basis.iter().enumerate().skip(1) {
        differential.push(
            row.iter()
                .map(|id| {
                    let p = format!("d.{id}");
                    let v = d.get(id).ok_or_else(|| format_err(&p, "missing differential"))?;
                    chain_from_json(v, deg - 1, &lookup, &p)
                })
                .collect::<Result<Vec<_>>>()?,
        );
    }
    for id in d.keys() {
        match ids.get(id.as_str()) {
            Some((deg, _)) if *deg > 0 => {}
            Some(_) => {
                return Err(format_err(
                    &format!("d.{id}"),
                    "0-dimensional generators have no differential",
                ))
            }
            None => return Err(format_err(&format!("d.{id}"), "dangling basis reference")),
        }
    }
    let augmentation = basis[0]
        .iter()
        .map(|id| match e.get(id) {
            Some(v) => coeff_from_json(v, &format!("e.{id}")),
            None => Err(format_err(&format!("e.{id}"), "missing augmentation")),
        })
        .collect::<Result<Vec<C>>>()?;
    for id in e.keys() {
        if lookup(0, id).is_none() {
            return Err(format_err(&format!("e.{id}"), "dangling basis reference"));
        }
    }
    AdcComplex::from_parts(name, basis, differential, augmentation)
}

pub fn morphism_to_json<C: Coefficient>(f: &AdcMorphism<C>) -> Value {
    let mut action = Map::new();
    for b in f.source().basis_refs() {
        action.insert(f.source().id(b).to_string(), chain_to_json(f.target(), f.image(b)));
    }
    let mut out = json!({
        "source": adc_to_json(f.source()),
        "target": adc_to_json(f.target()),
        "action": action,
    });
    if f.shift() != 0 {
        out["shift"] = json!(f.shift());
    }
    out
}

pub fn morphism_from_json<C: Coefficient>(v: &Value) -> Result<AdcMorphism<C>> {
    let obj = v.as_object().ok_or_else(|| format_err("$", "expected an object"))?;
    let source = Arc::new(
        adc_from_json::<C>(obj.get("source").ok_or_else(|| format_err("source", "missing"))?)
            .map_err(|e| nest("source", e))?,
    );
    let target = Arc::new(
        adc_from_json::<C>(obj.get("target").ok_or_else(|| format_err("target", "missing"))?)
            .map_err(|e| nest("target", e))?,
    );
    morphism_between(obj, source, target)
}

/// Reads a morphism file whose endpoints must equal the given complexes.
pub fn morphism_from_json_between<C: Coefficient>(
    v: &Value,
    source: Arc<AdcComplex<C>>,
    target: Arc<AdcComplex<C>>,
) -> Result<AdcMorphism<C>> {
    let f = morphism_from_json::<C>(v)?;
    if **f.source() != *source || **f.target() != *target {
        return Err(format_err(
            "$",
            "the morphism's endpoints differ from the given complexes",
        ));
    }
    f.with_endpoints(source, target)
}

fn nest(prefix: &str, e: AdcError) -> AdcError {
    match e {
        AdcError::Format(m) => AdcError::Format(format!("{prefix}.{m}")),
        other => other,
    }
}

fn morphism_between<C: Coefficient>(
    obj: &Map<String, Value>,
    source: Arc<AdcComplex<C>>,
    target: Arc<AdcComplex<C>>,
) -> Result<AdcMorphism<C>> {
    let shift = match obj.get("shift") {
        None => 0,
        Some(s) => s
            .as_u64()
            .ok_or_else(|| format_err("shift", "expected a non-negative integer"))? as usize,
    };
    let action = obj
        .get("action")
        .and_then(Value::as_object)
        .ok_or_else(|| format_err("action", "expected an object"))?;
    for id in action.keys() {
        if source.find(id).is_none() {
            return Err(format_err(&format!("action.{id}"), "dangling basis reference"));
        }
    }
    let lookup = |deg: usize, id: &str| target.lookup(deg, id).map(|b| b.index);
    GradedMap::from_fn(source.clone(), target.clone(), shift, |b| {
        let id = source.id(b);
        let p = format!("action.{id}");
        match action.get(id) {
            Some(v) => chain_from_json(v, b.degree + shift, &lookup, &p),
            None => Err(format_err(&p, "missing image")),
        }
    })
}

pub fn simplicial_set_to_json(x: &TruncatedSimplicialSet) -> Value {
    serde_json::to_value(x).expect("plain data")
}

pub fn simplicial_set_from_json(v: &Value) -> Result<TruncatedSimplicialSet> {
    serde_json::from_value(v.clone()).map_err(|e| format_err("$", e))
}

pub fn bisimplicial_set_to_json(x: &BisimplicialSet) -> Value {
    serde_json::to_value(x).expect("plain data")
}

/// Parses JSON text, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| AdcError::Format(format!("line {}, column {}: {e}", e.line(), e.column())))
}

pub fn parse_adc<C: Coefficient>(text: &str) -> Result<AdcComplex<C>> {
    adc_from_json(&parse_json(text)?)
}

pub fn parse_morphism<C: Coefficient>(text: &str) -> Result<AdcMorphism<C>> {
    morphism_from_json(&parse_json(text)?)
}

/// Canonical text: sorted keys, compact or indented, with a trailing newline.
pub fn to_text(v: &Value, pretty: bool) -> String {
    let sorted = sort_keys(v);
    let mut s = if pretty {
        serde_json::to_string_pretty(&sorted)
    } else {
        serde_json::to_string(&sorted)
    }
    .expect("plain data");
    s.push('\n');
    s
}

fn sort_keys(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let sorted: BTreeMap<&String, Value> = m.iter().map(|(k, v)| (k, sort_keys(v))).collect();
            Value::Object(sorted.into_iter().map(|(k, v)| (k.clone(), v)).collect())
        }
        Value::Array(a) => Value::Array(a.iter().map(sort_keys).collect()),
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientals::oriental;

    #[test]
    fn triangle_file() {
        let o = oriental::<i64>(2).unwrap();
        let text = to_text(&adc_to_json(&o.complex), false);
        assert_eq!(
            text,
            "{\"basis\":[[\"0\",\"1\",\"2\"],[\"0.1\",\"0.2\",\"1.2\"],[\"0.1.2\"]],\"d\":{\"0.1\":[[-1,\"0\"],[1,\"1\"]],\"0.1.2\":[[1,\"0.1\"],[-1,\"0.2\"],[1,\"1.2\"]],\"0.2\":[[-1,\"0\"],[1,\"2\"]],\"1.2\":[[-1,\"1\"],[1,\"2\"]]},\"e\":{\"0\":1,\"1\":1,\"2\":1},\"max_degree\":2,\"name\":\"c(Δ2)\"}\n"
        );
    }

    #[test]
    fn dangling_reference_names_the_field() {
        let bad = r#"{"name":"x","basis":[["a"],["f"]],"d":{"f":[[1,"a"],[-1,"b"]]},"e":{"a":1}}"#;
        let err = parse_adc::<i64>(bad).unwrap_err().to_string();
        assert!(err.contains("d.f[1][1]"), "{err}");
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_adc::<i64>("{\n  \"name\": }").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }
}
