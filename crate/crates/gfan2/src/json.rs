//! The pinned JSON formats.
//!
//! Fans: `{"rays": [[x,y],…], "complete": bool}` with exact integer
//! coordinates (arbitrary precision).
//!
//! Algebras: `{"p": int, "basis": [labels], "mult": [[[k-coeffs]]],
//! "e1": […], "e2": […], "radical": [[…]]}` where `mult[i][j]` is the
//! coordinate vector of the product of the i-th and j-th basis elements.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::algebra::{algebra_from_table, table_of, validate_algebra, BasedAlgebra, Vector};
use crate::fan::{fan_from_rays, Fan2, PartialWalk, Ray};
use crate::Error;

fn bigint_number(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

fn bigint_from_value(v: &Value) -> Result<BigInt, Error> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| Error::Json(format!("{n} is not an integer"))),
        other => Err(Error::Json(format!("expected integer, found {other}"))),
    }
}

pub fn fan_to_json(fan: &Fan2) -> Value {
    json!({
        "rays": fan.rays().iter().map(|r| json!([bigint_number(&r.x), bigint_number(&r.y)])).collect::<Vec<_>>(),
        "complete": fan.is_complete(),
    })
}

pub fn fan_from_json(v: &Value) -> Result<Fan2, Error> {
    let obj = v.as_object().ok_or_else(|| Error::Json("expected an object".into()))?;
    let complete = obj
        .get("complete")
        .and_then(Value::as_bool)
        .ok_or_else(|| Error::Json("missing boolean \"complete\"".into()))?;
    if !complete {
        return Err(Error::NotComplete);
    }
    let rays_v = obj
        .get("rays")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Json("missing array \"rays\"".into()))?;
    let mut rays = Vec::with_capacity(rays_v.len());
    for rv in rays_v {
        let pair = rv.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
            Error::Json("each ray must be a two-element array".into())
        })?;
        rays.push(Ray::new(bigint_from_value(&pair[0])?, bigint_from_value(&pair[1])?)?);
    }
    fan_from_rays(rays)
}

pub fn walk_to_json(walk: &PartialWalk) -> Value {
    json!({
        "entries": walk.entries,
        "rays": walk.rays.iter().map(|r| json!([bigint_number(&r.x), bigint_number(&r.y)])).collect::<Vec<_>>(),
        "exhausted_budget": walk.exhausted_budget,
    })
}

fn vector_json(v: &[u32]) -> Value {
    json!(v)
}

pub fn algebra_to_json(la: &BasedAlgebra) -> Value {
    let table = table_of(&la.alg);
    let mult: Vec<Value> = table
        .iter()
        .map(|row| Value::Array(row.iter().map(|v| vector_json(v)).collect()))
        .collect();
    json!({
        "p": la.p(),
        "basis": la.alg.labels,
        "mult": mult,
        "e1": la.e1,
        "e2": la.e2,
        "radical": la.alg.radical.iter().map(|v| vector_json(v)).collect::<Vec<_>>(),
    })
}

fn parse_vector(v: &Value, dim: usize, what: &str) -> Result<Vector, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Json(format!("{what}: expected an array")))?;
    if arr.len() != dim {
        return Err(Error::Json(format!("{what}: expected {dim} coordinates, found {}", arr.len())));
    }
    arr.iter()
        .map(|x| {
            x.as_u64()
                .map(|n| n as u32)
                .ok_or_else(|| Error::Json(format!("{what}: coordinates must be nonnegative integers")))
        })
        .collect()
}

pub fn algebra_from_json(v: &Value) -> Result<BasedAlgebra, Error> {
    let obj: &Map<String, Value> =
        v.as_object().ok_or_else(|| Error::Json("expected an object".into()))?;
    let field = |name: &str| -> Result<&Value, Error> {
        obj.get(name).ok_or_else(|| Error::Json(format!("missing field {name:?}")))
    };
    let p = field("p")?
        .as_u64()
        .ok_or_else(|| Error::Json("p must be a small prime".into()))? as u32;
    let basis = field("basis")?
        .as_array()
        .ok_or_else(|| Error::Json("basis must be an array of labels".into()))?
        .iter()
        .map(|l| l.as_str().map(str::to_owned).ok_or_else(|| Error::Json("labels must be strings".into())))
        .collect::<Result<Vec<_>, _>>()?;
    let dim = basis.len();
    let mult_v = field("mult")?
        .as_array()
        .filter(|rows| rows.len() == dim)
        .ok_or_else(|| Error::Json(format!("mult must be a {dim}×{dim} table")))?;
    let mut table = Vec::with_capacity(dim);
    for (i, row_v) in mult_v.iter().enumerate() {
        let row = row_v
            .as_array()
            .filter(|r| r.len() == dim)
            .ok_or_else(|| Error::Json(format!("mult[{i}] must have {dim} entries")))?;
        let mut out = Vec::with_capacity(dim);
        for (j, cell) in row.iter().enumerate() {
            out.push(parse_vector(cell, dim, &format!("mult[{i}][{j}]"))?);
        }
        table.push(out);
    }
    let e1 = parse_vector(field("e1")?, dim, "e1")?;
    let e2 = parse_vector(field("e2")?, dim, "e2")?;
    let radical = field("radical")?
        .as_array()
        .ok_or_else(|| Error::Json("radical must be an array of vectors".into()))?
        .iter()
        .enumerate()
        .map(|(k, rv)| parse_vector(rv, dim, &format!("radical[{k}]")))
        .collect::<Result<Vec<_>, _>>()?;
    // the unit is determined by the idempotent pair
    let unit: Vector = e1.iter().zip(&e2).map(|(&a, &b)| (a + b) % p.max(1)).collect();
    let alg = algebra_from_table(p, basis, table, unit, radical)?;
    let la = BasedAlgebra { alg, e1, e2 };
    let report = validate_algebra(&la);
    if !report.is_valid() {
        return Err(Error::InvalidAlgebra(format!("{report:?}")));
    }
    Ok(la)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{quiddity_to_fan, Quiddity};
    use crate::quiver;

    #[test]
    fn fan_json_round_trip() {
        let fan = quiddity_to_fan(&"21312;00".parse::<Quiddity>().unwrap()).unwrap();
        let v = fan_to_json(&fan);
        assert_eq!(v["complete"], Value::Bool(true));
        let back = fan_from_json(&v).unwrap();
        assert_eq!(back, fan);
    }

    #[test]
    fn fan_json_rejects_garbage() {
        assert!(fan_from_json(&json!({"rays": [[0,1],[1,0]], "complete": true})).is_err());
        assert!(fan_from_json(&json!({"rays": [[0,1],[1,0],[0,-1],[-1,0]]})).is_err());
        assert!(fan_from_json(&json!({"rays": [[0,1],[1,0],[2,-1],[0,-1],[-1,0]], "complete": true})).is_err());
    }

    #[test]
    fn algebra_json_round_trip() {
        let la = quiver::parse("p 2\nvertices 1 2\narrow a: 1 -> 2\narrow c: 2 -> 2\nrelation c*c\n")
            .unwrap();
        let v = algebra_to_json(&la);
        let back = algebra_from_json(&v).unwrap();
        assert_eq!(back.dim(), la.dim());
        assert_eq!(back.alg.labels, la.alg.labels);
        assert_eq!(table_of(&back.alg), table_of(&la.alg));
    }

    #[test]
    fn algebra_json_rejects_invalid() {
        let la = quiver::parse("p 2\nvertices 1 2\narrow a: 1 -> 2\n").unwrap();
        let mut v = algebra_to_json(&la);
        v["radical"] = json!([]);
        assert!(algebra_from_json(&v).is_err());
        v = algebra_to_json(&la);
        v["mult"][2][2] = json!([1, 0, 0]);
        assert!(algebra_from_json(&v).is_err());
    }
}
