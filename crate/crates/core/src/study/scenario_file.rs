//! JSON scenario documents.
//!
//! Keys mirror the serialized [`Scenario`]. Missing keys take reference
//! values, with load statistics derived from `loads.D_n`/`loads.L_n` and
//! `costs.n_reinf_s` from `geometry.n_s`. Unknown keys are rejected.

use std::path::Path;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::model::{validate, FrameGeometry, LoadModel, Scenario};

fn parse_error(path: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        message: message.into(),
    }
}

/// Rejects keys absent from `schema`, reporting the dotted path.
fn check_keys(doc: &Value, schema: &Value, prefix: &str, source: &str) -> Result<()> {
    let (Value::Object(doc), Value::Object(schema)) = (doc, schema) else {
        return Ok(());
    };
    for (key, value) in doc {
        let path = if prefix.is_empty() {
            key.clone()
        } else {
            format!("{prefix}.{key}")
        };
        match schema.get(key) {
            None => return Err(parse_error(source, format!("unknown key `{path}`"))),
            Some(sub) if sub.is_object() => {
                if !value.is_object() {
                    return Err(parse_error(source, format!("`{path}` must be an object")));
                }
                check_keys(value, sub, &path, source)?;
            }
            Some(_) => {}
        }
    }
    Ok(())
}

fn merge(base: &mut Value, over: &Value) {
    match (base, over) {
        (Value::Object(b), Value::Object(o)) => {
            for (k, v) in o {
                match b.get_mut(k) {
                    Some(slot) if slot.is_object() => merge(slot, v),
                    _ => {
                        b.insert(k.clone(), v.clone());
                    }
                }
            }
        }
        (b, o) => *b = o.clone(),
    }
}

fn lookup<'a>(doc: &'a Value, path: &[&str]) -> Option<&'a Value> {
    path.iter().try_fold(doc, |v, k| v.get(*k))
}

fn number(doc: &Value, path: &[&str], default: f64, source: &str) -> Result<f64> {
    match lookup(doc, path) {
        None => Ok(default),
        Some(v) => v
            .as_f64()
            .ok_or_else(|| parse_error(source, format!("`{}` must be a number", path.join(".")))),
    }
}

/// Reference scenario serialized as JSON; its key set is the schema.
pub fn scenario_schema() -> Value {
    serde_json::to_value(Scenario::reference()).expect("scenario serializes")
}

/// Scenario from an in-memory JSON value. `source` names the document in
/// error messages.
pub fn scenario_from_value(doc: &Value, source: &str) -> Result<Scenario> {
    if !doc.is_object() {
        return Err(parse_error(source, "top level must be a JSON object"));
    }
    check_keys(doc, &scenario_schema(), "", source)?;

    let reference = Scenario::reference();
    let n_s = number(doc, &["geometry", "n_s"], f64::from(reference.geometry.n_s), source)?;
    let mut base = reference;
    if n_s >= 1.0 && n_s.fract() == 0.0 && n_s <= f64::from(u32::MAX) {
        base = Scenario::for_geometry(FrameGeometry {
            n_s: n_s as u32,
            ..reference.geometry
        });
    }
    let d_n = number(doc, &["loads", "D_n"], reference.loads.dead_nominal, source)?;
    let l_n = number(doc, &["loads", "L_n"], reference.loads.live_nominal, source)?;
    base.loads = LoadModel::from_nominal(d_n, l_n);

    let mut merged = serde_json::to_value(base).expect("scenario serializes");
    merge(&mut merged, doc);
    let scenario: Scenario =
        serde_json::from_value(merged).map_err(|e| parse_error(source, e.to_string()))?;
    validate(&scenario)
}

pub fn parse_scenario_str(text: &str, source: &str) -> Result<Scenario> {
    let doc: Value = serde_json::from_str(text).map_err(|e| parse_error(source, e.to_string()))?;
    scenario_from_value(&doc, source)
}

pub fn parse_scenario(path: &Path) -> Result<Scenario> {
    let source = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| parse_error(&source, e.to_string()))?;
    parse_scenario_str(&text, &source)
}

/// Sets a dotted key path inside a JSON object, creating objects on the way.
pub fn set_path(doc: &mut Value, path: &str, value: Value) -> Result<()> {
    let mut cur = doc;
    let keys: Vec<&str> = path.split('.').collect();
    for (i, key) in keys.iter().enumerate() {
        let obj: &mut Map<String, Value> = cur
            .as_object_mut()
            .ok_or_else(|| parse_error(path, "path crosses a non-object value"))?;
        if i + 1 == keys.len() {
            obj.insert((*key).to_string(), value);
            return Ok(());
        }
        cur = obj
            .entry((*key).to_string())
            .or_insert_with(|| Value::Object(Map::new()));
    }
    Ok(())
}

/// Whether a dotted path names a leaf of the scenario schema.
pub fn is_scenario_leaf(path: &str) -> bool {
    let schema = scenario_schema();
    let keys: Vec<&str> = path.split('.').collect();
    matches!(lookup(&schema, &keys), Some(v) if !v.is_object())
}
