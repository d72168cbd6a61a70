//! JSON form of engine objects, and ingestion of the same documents.
//!
//! Rationals are strings (`"3/2"`), exponents are numbers, and integer
//! matrix entries and point coefficients are numbers when they fit in 64
//! bits and decimal strings otherwise.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use cag_core::{
    BrickBlock, BrickId, Decomposition, FormalPointExpr, GroupPoint, GroupPresentation, IntMatrix, LaurentPoly,
    Monomial, PointCombo, PointRegistry, Rat, Unit, VarietyMorphism,
};

use crate::diag::{DiagKind, Diagnostic, Span};
use crate::elab::{NamedMorphism, Program};
use crate::print::symbols_used;

fn int_json(k: &BigInt) -> Value {
    i64::try_from(k).map_or_else(|_| Value::String(k.to_string()), Value::from)
}

pub fn group_json(g: &GroupPresentation) -> Value {
    let bricks: Map<String, Value> = g.bricks().iter().map(|(b, &k)| (b.to_string(), Value::from(k))).collect();
    json!({ "n": g.n, "m": g.m, "bricks": bricks })
}

pub fn poly_json(f: &LaurentPoly) -> Value {
    Value::Array(
        f.terms()
            .rev()
            .map(|(mono, c)| json!({ "coeff": c.to_string(), "x": mono.x_exps, "y": mono.y_exps }))
            .collect(),
    )
}

pub fn unit_json(u: &Unit) -> Value {
    json!({ "coeff": u.coeff().to_string(), "y": u.exps() })
}

pub fn combo_json(c: &PointCombo) -> Value {
    Value::Object(c.terms().map(|(s, k)| (s.clone(), int_json(k))).collect())
}

fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(int_json).collect())).collect())
}

pub fn morphism_json(f: &VarietyMorphism) -> Value {
    let blocks: Map<String, Value> = f
        .brick_blocks()
        .iter()
        .map(|(b, blk)| {
            let translation: Vec<Value> = blk.translation.coords.iter().map(combo_json).collect();
            (b.to_string(), json!({ "matrix": matrix_json(&blk.matrix), "translation": translation }))
        })
        .collect();
    json!({
        "domain": group_json(f.domain()),
        "codomain": group_json(f.codomain()),
        "u_coords": f.u_coords().iter().map(poly_json).collect::<Vec<_>>(),
        "t_coords": f.t_coords().iter().map(unit_json).collect::<Vec<_>>(),
        "brick_blocks": blocks,
    })
}

pub fn decomposition_json(d: &Decomposition) -> Value {
    json!({
        "tau": morphism_json(&d.tau),
        "psi": morphism_json(d.psi.as_morphism()),
        "chi": morphism_json(&d.chi),
    })
}

pub fn point_json(p: &GroupPoint) -> Value {
    let bricks: Map<String, Value> =
        p.bricks.iter().map(|e| (e.brick.to_string(), Value::Array(e.coords.iter().map(combo_json).collect()))).collect();
    json!({
        "u": p.u.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "t": p.t.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "bricks": bricks,
    })
}

pub fn program_json(p: &Program) -> Value {
    json!({
        "groups": p.groups.iter().map(|(n, g)| json!({ "name": n, "group": group_json(g) })).collect::<Vec<_>>(),
        "points": p.points.iter().map(|(n, b)| json!({ "name": n, "brick": b.to_string() })).collect::<Vec<_>>(),
        "morphisms": p.morphisms.iter().map(|m| json!({ "name": m.name, "morphism": morphism_json(&m.morphism) })).collect::<Vec<_>>(),
    })
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

type R<T> = Result<T, String>;

fn field<'a>(v: &'a Value, key: &str) -> R<&'a Value> {
    v.get(key).ok_or_else(|| format!("missing key `{key}`"))
}

fn array<'a>(v: &'a Value, what: &str) -> R<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| format!("{what} must be an array"))
}

fn object<'a>(v: &'a Value, what: &str) -> R<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| format!("{what} must be an object"))
}

fn read_usize(v: &Value, what: &str) -> R<usize> {
    v.as_u64().and_then(|k| usize::try_from(k).ok()).ok_or_else(|| format!("{what} must be a non-negative integer"))
}

fn read_int(v: &Value) -> R<BigInt> {
    match v {
        Value::Number(k) if k.is_i64() || k.is_u64() => Ok(BigInt::from_str(&k.to_string()).expect("integer")),
        Value::String(s) => BigInt::from_str(s).map_err(|_| format!("`{s}` is not an integer")),
        other => Err(format!("expected an integer, found {other}")),
    }
}

fn read_rat(v: &Value) -> R<Rat> {
    match v {
        Value::String(s) => Rat::from_str(s).map_err(|_| format!("`{s}` is not a rational p/q")),
        Value::Number(_) => read_int(v).map(Rat::from),
        other => Err(format!("expected a rational, found {other}")),
    }
}

fn read_exps<T: TryFrom<i64>>(v: &Value, len: usize, what: &str) -> R<Vec<T>> {
    let a = array(v, what)?;
    if a.len() != len {
        return Err(format!("{what} must have {len} entries"));
    }
    a.iter()
        .map(|e| e.as_i64().and_then(|k| T::try_from(k).ok()).ok_or_else(|| format!("bad exponent {e} in {what}")))
        .collect()
}

pub fn read_group(v: &Value) -> R<GroupPresentation> {
    let n = read_usize(field(v, "n")?, "n")?;
    let m = read_usize(field(v, "m")?, "m")?;
    let bricks = match v.get("bricks") {
        None => Vec::new(),
        Some(b) => object(b, "bricks")?
            .iter()
            .map(|(name, k)| Ok((BrickId::new(name.as_str()), read_usize(k, "brick power")?)))
            .collect::<R<Vec<_>>>()?,
    };
    Ok(GroupPresentation::new(n, m, bricks))
}

fn read_poly(v: &Value, n: usize, m: usize) -> R<LaurentPoly> {
    let terms = array(v, "polynomial")?
        .iter()
        .map(|t| {
            let coeff = read_rat(field(t, "coeff")?)?;
            let x_exps = read_exps::<u32>(field(t, "x")?, n, "x exponents")?;
            let y_exps = read_exps::<i32>(field(t, "y")?, m, "y exponents")?;
            Ok((Monomial { x_exps, y_exps }, coeff))
        })
        .collect::<R<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(n, m, terms))
}

fn read_unit(v: &Value, m: usize) -> R<Unit> {
    let coeff = read_rat(field(v, "coeff")?)?;
    let exps = read_exps::<i32>(field(v, "y")?, m, "unit exponents")?;
    Unit::new(coeff, exps).map_err(|e| e.to_string())
}

fn read_combo(v: &Value) -> R<PointCombo> {
    let terms = object(v, "point combination")?
        .iter()
        .map(|(s, k)| Ok((s.clone(), read_int(k)?)))
        .collect::<R<Vec<_>>>()?;
    Ok(PointCombo::from_terms(terms))
}

pub fn read_morphism(v: &Value) -> R<VarietyMorphism> {
    let g = read_group(field(v, "domain")?)?;
    let h = read_group(field(v, "codomain")?)?;
    let u = array(field(v, "u_coords")?, "u_coords")?.iter().map(|p| read_poly(p, g.n, g.m)).collect::<R<Vec<_>>>()?;
    let t = array(field(v, "t_coords")?, "t_coords")?.iter().map(|p| read_unit(p, g.m)).collect::<R<Vec<_>>>()?;
    let mut blocks = BTreeMap::new();
    for (b, blk) in object(field(v, "brick_blocks")?, "brick_blocks")? {
        let id = BrickId::new(b.as_str());
        let rows = array(field(blk, "matrix")?, "matrix")?
            .iter()
            .map(|r| array(r, "matrix row")?.iter().map(read_int).collect::<R<Vec<_>>>())
            .collect::<R<Vec<_>>>()?;
        let (l, k) = (h.brick_power(&id), g.brick_power(&id));
        if rows.len() != l || rows.iter().any(|r| r.len() != k) {
            return Err(format!("`{b}` matrix must be {l}x{k}"));
        }
        let matrix = IntMatrix::new(l, k, rows.into_iter().flatten().collect()).map_err(|e| e.to_string())?;
        let coords = array(field(blk, "translation")?, "translation")?.iter().map(read_combo).collect::<R<Vec<_>>>()?;
        blocks.insert(id.clone(), BrickBlock { matrix, translation: FormalPointExpr { brick: id, coords } });
    }
    VarietyMorphism::new(g, h, u, t, blocks).map_err(|e| e.to_string())
}

fn whole(src: &str) -> Span {
    Span { start: 0, end: src.len(), line: 1, col: 1 }
}

/// Reads JSON produced by this module: a document, a single morphism, or a
/// decomposition record. Point symbols of bare morphisms are declared on
/// the fly.
pub fn ingest(src: &str) -> Result<Program, Vec<Diagnostic>> {
    let v: Value = serde_json::from_str(src).map_err(|e| {
        let line = e.line().max(1);
        let col = e.column().max(1);
        let start = src.split_inclusive('\n').take(line - 1).map(str::len).sum::<usize>() + col - 1;
        let start = start.min(src.len());
        vec![Diagnostic::new(DiagKind::SyntaxError, Span { start, end: start, line, col }, format!("invalid JSON: {e}"))]
    })?;
    let schema = |msg: String| vec![Diagnostic::new(DiagKind::InvalidExpression, whole(src), msg)];
    let named = |pairs: Vec<(&str, &Value)>| -> R<Vec<NamedMorphism>> {
        pairs
            .into_iter()
            .map(|(name, m)| {
                read_morphism(m)
                    .map(|morphism| NamedMorphism { name: name.to_string(), morphism, span: whole(src) })
                    .map_err(|e| format!("morphism `{name}`: {e}"))
            })
            .collect()
    };
    let mut program = Program::default();
    if v.get("domain").is_some() {
        program.morphisms = named(vec![("f", &v)]).map_err(schema)?;
    } else if v.get("tau").is_some() {
        let parts = ["tau", "psi", "chi"].map(|k| (k, v.get(k)));
        let parts = parts
            .into_iter()
            .map(|(k, m)| m.map(|m| (k, m)).ok_or_else(|| format!("missing key `{k}`")))
            .collect::<R<Vec<_>>>()
            .map_err(schema)?;
        program.morphisms = named(parts).map_err(schema)?;
    } else if v.is_object() && ["groups", "points", "morphisms"].iter().any(|k| v.get(k).is_some()) {
        return read_document(&v, src).map_err(schema);
    } else {
        return Err(schema("expected a document, a morphism or a decomposition".into()));
    }
    let used = symbols_used(program.morphisms.iter().map(|m| &m.morphism));
    for (b, symbols) in used {
        for s in symbols {
            program.registry.declare(b.clone(), s.as_str());
            program.points.push((s, b.clone()));
        }
    }
    Ok(program)
}

fn read_document(v: &Value, src: &str) -> R<Program> {
    let list = |key: &str| -> R<Vec<Value>> { v.get(key).map_or(Ok(Vec::new()), |a| array(a, key).cloned()) };
    let name = |e: &Value| -> R<String> { field(e, "name")?.as_str().map(str::to_string).ok_or_else(|| "name must be a string".into()) };
    let mut p = Program::default();
    for g in list("groups")? {
        p.groups.push((name(&g)?, read_group(field(&g, "group")?)?));
    }
    let mut registry = PointRegistry::new();
    for pt in list("points")? {
        let brick = field(&pt, "brick")?.as_str().ok_or("brick must be a string")?;
        let id = BrickId::new(brick);
        registry.declare(id.clone(), name(&pt)?);
        p.points.push((name(&pt)?, id));
    }
    for m in list("morphisms")? {
        let n = name(&m)?;
        let f = read_morphism(field(&m, "morphism")?).map_err(|e| format!("morphism `{n}`: {e}"))?;
        let f = f.to_raw().validate(Some(&registry)).map_err(|e| format!("morphism `{n}`: {e}"))?;
        p.morphisms.push(NamedMorphism { name: n, morphism: f, span: whole(src) });
    }
    p.registry = registry;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elab::check;

    #[test]
    fn morphism_shape() {
        let p = check("point P on E;\nmorphism f : Ga * Gm -> Ga * Gm * E { x1 = 3/2*x1^2*y1^-1 - 7; y1 = -y1^2; E = [P]; }").unwrap();
        let v = morphism_json(&p.morphisms[0].morphism);
        assert_eq!(v["domain"], json!({ "n": 1, "m": 1, "bricks": {} }));
        assert_eq!(v["u_coords"][0][0], json!({ "coeff": "3/2", "x": [2], "y": [-1] }));
        assert_eq!(v["u_coords"][0][1], json!({ "coeff": "-7", "x": [0], "y": [0] }));
        assert_eq!(v["t_coords"][0], json!({ "coeff": "-1", "y": [2] }));
        assert_eq!(v["brick_blocks"]["E"], json!({ "matrix": [[]], "translation": [{ "P": 1 }] }));
        assert_eq!(read_morphism(&v).unwrap(), p.morphisms[0].morphism);
    }

    #[test]
    fn documents_round_trip() {
        let src = "group G = Ga^2 * E;\npoint P on E;\nmorphism f : G -> G { x1 = x1 + x2^2; x2 = x2; E = [[1]] + [P]; }";
        let p = check(src).unwrap();
        let q = ingest(&pretty(&program_json(&p))).unwrap();
        assert_eq!(q.groups, p.groups);
        assert_eq!(q.points, p.points);
        assert_eq!(q.morphisms[0].morphism, p.morphisms[0].morphism);
        let single = ingest(&pretty(&morphism_json(&p.morphisms[0].morphism))).unwrap();
        assert_eq!(single.morphisms[0].morphism, p.morphisms[0].morphism);
        assert!(single.registry.contains(&BrickId::new("E"), "P"));
    }

    #[test]
    fn bad_json_is_a_diagnostic() {
        let e = ingest("{\n  \"domain\": }").unwrap_err();
        assert_eq!((e[0].kind, e[0].span.line), (DiagKind::SyntaxError, 2));
        let e = ingest("{\"domain\": {\"n\": 1}}").unwrap_err();
        assert!(e[0].message.contains("missing key `m`"), "{}", e[0].message);
        let e = ingest("{\"morphisms\": [{\"name\": \"f\", \"morphism\": {\"domain\": {\"n\":0,\"m\":0}, \"codomain\": {\"n\":0,\"m\":0,\"bricks\":{\"E\":1}}, \"u_coords\": [], \"t_coords\": [], \"brick_blocks\": {\"E\": {\"matrix\": [[]], \"translation\": [{\"P\": 1}]}}}}]}").unwrap_err();
        assert!(e[0].message.contains("P"), "{}", e[0].message);
    }
}
