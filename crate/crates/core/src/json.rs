//! JSON forms of the domain values.
//!
//! ```text
//! Deriv   {"vars": [..], "params": [..], "coeffs": {"x": "expr", ..}}
//! Auto    {"vars": [..], "params": [..], "images": {"x": "expr", ..}, "inverse": {..}?}
//! Family  {"vars": [..], "params": [..], "generators": [Deriv | coeffs, ..]}
//! WeightFn {"base": {"x": 1, ..}, "cylinder": [["y", 2], ..]}
//! ```
//!
//! Omitted derivation coefficients are 0 and omitted images are the
//! identity. `vars` may or may not repeat the parameters. Output always
//! lists every variable in order.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::automorphism::Auto;
use crate::degrees::WeightFn;
use crate::derivation::Deriv;
use crate::djlike::{CylPres, Expansion, Family, MembershipReport, SliceSys, Witness};
use crate::error::{Error, Result};
use crate::poly::{parse_poly, Canonical, Poly, VarSet};

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| schema(format!("{what} must be a JSON object")))
}

fn string_list(v: Option<&Value>, field: &str) -> Result<Vec<String>> {
    match v {
        None => Ok(Vec::new()),
        Some(Value::Array(items)) => items
            .iter()
            .map(|s| {
                s.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| schema(format!("`{field}` must list strings")))
            })
            .collect(),
        Some(_) => Err(schema(format!("`{field}` must be an array"))),
    }
}

/// Expression text from a string or a JSON number.
fn expr_text(v: &Value, ctx: &str) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(schema(format!("{ctx} must be an expression string"))),
    }
}

pub fn varset_from_json(v: &Value) -> Result<VarSet> {
    let obj = object(v, "value")?;
    let vars = string_list(obj.get("vars"), "vars")?;
    if obj.get("vars").is_none() {
        return Err(schema("missing `vars`"));
    }
    let params = string_list(obj.get("params"), "params")?;
    VarSet::with_params(&vars, &params)
}

pub fn varset_to_json(vars: &VarSet) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("vars".into(), json!(vars.names()));
    m.insert("params".into(), json!(vars.param_names()));
    m
}

fn polys_by_name(
    v: &Value,
    vars: &VarSet,
    field: &str,
    default: impl Fn(usize) -> Poly,
) -> Result<Vec<Poly>> {
    let obj = object(v, field)?;
    let mut out: Vec<Option<Poly>> = vec![None; vars.len()];
    for (name, e) in obj {
        let i = vars
            .index_of(name)
            .ok_or_else(|| schema(format!("`{field}` names unknown variable `{name}`")))?;
        out[i] = Some(parse_poly(
            &expr_text(e, &format!("`{field}.{name}`"))?,
            vars,
        )?);
    }
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.unwrap_or_else(|| default(i)))
        .collect())
}

fn polys_to_json(polys: &[Poly], vars: &VarSet, skip: impl Fn(usize, &Poly) -> bool) -> Value {
    let mut m = Map::new();
    for (i, p) in polys.iter().enumerate() {
        if !skip(i, p) {
            m.insert(vars.name(i).to_string(), Value::String(p.canonical(vars)));
        }
    }
    Value::Object(m)
}

fn deriv_coeffs(v: &Value, vars: &VarSet) -> Result<Deriv> {
    let n = vars.len();
    let coeffs = polys_by_name(v, vars, "coeffs", |_| Poly::zero(n))?;
    Deriv::new(vars.clone(), coeffs)
}

pub fn deriv_from_json(v: &Value) -> Result<Deriv> {
    let vars = varset_from_json(v)?;
    let coeffs = object(v, "derivation")?
        .get("coeffs")
        .ok_or_else(|| schema("missing `coeffs`"))?;
    deriv_coeffs(coeffs, &vars)
}

pub fn deriv_to_json(d: &Deriv) -> Value {
    let mut m = varset_to_json(d.vars());
    let vars = d.vars();
    m.insert(
        "coeffs".into(),
        polys_to_json(d.coeffs(), vars, |i, _| vars.is_param(i)),
    );
    Value::Object(m)
}

/// The automorphism and, when present, its declared inverse. Invertibility
/// is proved as in [`Auto::from_images`].
pub fn auto_from_json(v: &Value, cap: usize) -> Result<(Auto, Option<Auto>)> {
    let vars = varset_from_json(v)?;
    let obj = object(v, "automorphism")?;
    let n = vars.len();
    let images = obj
        .get("images")
        .ok_or_else(|| schema("missing `images`"))?;
    let images = polys_by_name(images, &vars, "images", |i| Poly::var(n, i))?;
    let inverse = match obj.get("inverse") {
        None | Some(Value::Null) => None,
        Some(inv) => Some(polys_by_name(inv, &vars, "inverse", |i| Poly::var(n, i))?),
    };
    let a = Auto::from_images(&vars, images, inverse.clone(), cap)?;
    let inv = inverse
        .map(|imgs| Auto::from_images(&vars, imgs, Some(a.images().to_vec()), cap))
        .transpose()?;
    Ok((a, inv))
}

pub fn auto_to_json(a: &Auto, inverse: Option<&Auto>) -> Value {
    let vars = a.vars();
    let mut m = varset_to_json(vars);
    m.insert(
        "images".into(),
        polys_to_json(a.images(), vars, |i, _| vars.is_param(i)),
    );
    if let Some(inv) = inverse {
        m.insert(
            "inverse".into(),
            polys_to_json(inv.images(), vars, |i, _| vars.is_param(i)),
        );
    }
    Value::Object(m)
}

/// The generator list of a family object, without validating it as a
/// family. Generators may be full derivation objects or bare `coeffs` maps.
pub fn derivations_from_json(v: &Value) -> Result<Vec<Deriv>> {
    let vars = varset_from_json(v)?;
    let gens = object(v, "family")?
        .get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("`generators` must be an array"))?;
    gens.iter()
        .map(|g| {
            let obj = object(g, "generator")?;
            if obj.contains_key("vars") {
                let d = deriv_from_json(g)?;
                vars.ensure_same(d.vars())?;
                Ok(d)
            } else if let Some(c) = obj.get("coeffs") {
                deriv_coeffs(c, &vars)
            } else {
                deriv_coeffs(g, &vars)
            }
        })
        .collect()
}

pub fn family_from_json(v: &Value, cap: usize) -> Result<Family> {
    Family::new(derivations_from_json(v)?, cap)
}

pub fn derivations_to_json(ds: &[Deriv], vars: &VarSet) -> Value {
    let mut m = varset_to_json(vars);
    let gens: Vec<Value> = ds
        .iter()
        .map(|d| polys_to_json(d.coeffs(), vars, |_, p| p.is_zero()))
        .map(|c| json!({ "coeffs": c }))
        .collect();
    m.insert("generators".into(), Value::Array(gens));
    Value::Object(m)
}

pub fn family_to_json(f: &Family) -> Value {
    derivations_to_json(f.gens(), f.vars())
}

pub fn weights_from_json(v: &Value, vars: &VarSet) -> Result<WeightFn> {
    let obj = object(v, "weights")?;
    let index = |name: &str| {
        vars.index_of(name)
            .ok_or_else(|| schema(format!("unknown variable `{name}` in weights")))
    };
    let weight = |w: &Value| w.as_i64().ok_or_else(|| schema("weights must be integers"));
    let mut base = BTreeMap::new();
    if let Some(b) = obj.get("base") {
        for (name, w) in object(b, "`base`")? {
            base.insert(index(name)?, weight(w)?);
        }
    }
    let mut cyl = Vec::new();
    for entry in obj
        .get("cylinder")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("`cylinder` must be an array"))?
    {
        match entry.as_array().map(Vec::as_slice) {
            Some([Value::String(name), w]) => cyl.push((index(name.as_str())?, weight(w)?)),
            _ => return Err(schema("cylinder entries are [\"var\", d]")),
        }
    }
    WeightFn::new(vars, &base, &cyl)
}

pub fn weights_to_json(w: &WeightFn) -> Value {
    let vars = w.vars();
    let base: Map<String, Value> = w
        .base()
        .into_iter()
        .map(|v| (vars.name(v).to_string(), json!(w.weight(v))))
        .collect();
    let cyl: Vec<Value> = w
        .cylinder_weights()
        .into_iter()
        .map(|(v, d)| json!([vars.name(v), d]))
        .collect();
    json!({ "base": base, "cylinder": cyl })
}

pub fn witness_to_json(w: &Witness, vars: &VarSet) -> Value {
    match w {
        Witness::NotInSpan => json!({ "kind": "not-in-span" }),
        Witness::Kernel { j, l, value } => {
            json!({ "kind": "kernel", "j": j, "l": l, "value": value.canonical(vars) })
        }
        Witness::Denominator { j, l, den } => {
            json!({ "kind": "denominator", "j": j, "l": l, "denominator": den.canonical(vars) })
        }
    }
}

pub fn report_to_json(r: &MembershipReport, vars: &VarSet) -> Value {
    let coeffs: Vec<String> = r.coeffs.iter().map(|c| c.canonical(vars)).collect();
    json!({
        "member": r.member,
        "level": r.level,
        "coeffs": coeffs,
        "witness": r.witness.as_ref().map(|w| witness_to_json(w, vars)),
    })
}

fn multi_index(alpha: &[u32]) -> String {
    let parts: Vec<String> = alpha.iter().map(u32::to_string).collect();
    parts.join(",")
}

pub fn expansion_to_json(e: &Expansion, vars: &VarSet) -> Value {
    let m: Map<String, Value> = e
        .iter()
        .map(|(alpha, c)| (multi_index(alpha), Value::String(c.canonical(vars))))
        .collect();
    Value::Object(m)
}

pub fn slices_to_json(s: &SliceSys) -> Value {
    let vars = s.family.vars();
    json!({
        "y": s.y.iter().map(|p| p.canonical(vars)).collect::<Vec<_>>(),
        "x": s.x.iter().map(|p| p.canonical(vars)).collect::<Vec<_>>(),
        "h": s.h.canonical(vars),
    })
}

pub fn cylinder_to_json(c: &CylPres) -> Value {
    let vars = c.slices.family.vars();
    let table: Map<String, Value> = c
        .table
        .iter()
        .map(|(v, e)| (vars.name(*v).to_string(), expansion_to_json(e, vars)))
        .collect();
    json!({
        "slices": slices_to_json(&c.slices),
        "f": c.f.canonical(vars),
        "table": table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deriv_round_trip() {
        let v = json!({"vars": ["x", "y", "t"], "params": ["t"], "coeffs": {"y": "t*x^2"}});
        let d = deriv_from_json(&v).unwrap();
        let out = deriv_to_json(&d);
        assert_eq!(
            out,
            json!({"vars": ["x", "y", "t"], "params": ["t"], "coeffs": {"x": "0", "y": "x^2*t"}})
        );
        assert_eq!(deriv_from_json(&out).unwrap(), d);
    }

    #[test]
    fn schema_errors() {
        assert!(matches!(
            deriv_from_json(&json!({"coeffs": {}})),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            deriv_from_json(&json!({"vars": ["x"], "coeffs": {"w": "1"}})),
            Err(Error::Schema(_))
        ));
        assert!(matches!(
            deriv_from_json(&json!({"vars": ["x"], "coeffs": {"x": "x +"}})),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            deriv_from_json(&json!([1])),
            Err(Error::Schema(_))
        ));
    }

    #[test]
    fn auto_round_trip() {
        let v = json!({"vars": ["x", "y"], "images": {"y": "y + x^2"}});
        let (a, inv) = auto_from_json(&v, 64).unwrap();
        assert!(inv.is_none());
        let out = auto_to_json(&a, None);
        assert_eq!(out["images"], json!({"x": "x", "y": "x^2 + y"}));
        assert_eq!(auto_from_json(&out, 64).unwrap().0, a);

        let bad = json!({"vars": ["x", "y"], "images": {"x": "y", "y": "x"}, "inverse": {"x": "x", "y": "y"}});
        assert_eq!(auto_from_json(&bad, 64), Err(Error::NotInverse));
        let swap = json!({"vars": ["x", "y"], "images": {"x": "y", "y": "x"}, "inverse": {"x": "y", "y": "x"}});
        assert!(auto_from_json(&swap, 64).unwrap().1.is_some());
    }

    #[test]
    fn family_and_weights() {
        let v = json!({"vars": ["x", "y", "z"], "generators": [{"coeffs": {"z": "1", "y": "x"}}, {"z": 1}]});
        let f = family_from_json(&v, 64).unwrap();
        assert_eq!(f.len(), 2);
        let out = family_to_json(&f);
        assert_eq!(family_from_json(&out, 64).unwrap(), f);

        let w = json!({"base": {"x": 1}, "cylinder": [["y", 2], ["z", 3]]});
        let wf = weights_from_json(&w, f.vars()).unwrap();
        assert_eq!(weights_to_json(&wf), w);
    }
}
