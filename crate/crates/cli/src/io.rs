//! JSON schemas for algebras, fields, modules, specs and varieties.
//!
//! Scalars serialize as a plain integer when the field is prime and as a
//! length-e coefficient array otherwise; matrices as row-major nested arrays
//! acting on column vectors. Algebra elements are maps from a monomial key
//! (comma-joined exponents, with the sigma exponent last for the families
//! that have one) to a scalar. All emitted objects have sorted keys.

use serde_json::{json, Map, Value};
use superpoint_core::{
    AlgebraElement, AlgebraPresentation, Family, FiniteField, GradedModule, Mat, Monomial,
    Resolution, Scalar,
};

use crate::CliError;

pub fn algebra_to_value(alg: &AlgebraPresentation) -> Value {
    let mut m = Map::new();
    m.insert("p".into(), json!(alg.p()));
    match alg.family() {
        Family::Witt { n, m: wm } => {
            m.insert("family".into(), json!("witt"));
            m.insert("n".into(), json!(n));
            m.insert("m".into(), json!(wm));
        }
        Family::ExteriorLike { n } => {
            m.insert("family".into(), json!("exterior"));
            m.insert("n".into(), json!(n));
        }
        Family::ElemAbelian { n } => {
            m.insert("family".into(), json!("elem_abelian"));
            m.insert("n".into(), json!(n));
        }
    }
    Value::Object(m)
}

pub fn algebra_from_value(v: &Value) -> Result<AlgebraPresentation, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::usage("algebra must be an object"))?;
    let p = obj
        .get("p")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::usage("algebra.p missing"))?;
    let family = obj
        .get("family")
        .and_then(Value::as_str)
        .ok_or_else(|| CliError::usage("algebra.family missing"))?;
    let n = obj
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::usage("algebra.n missing"))? as u32;
    let fam = match family {
        "witt" => {
            let m = obj
                .get("m")
                .and_then(Value::as_u64)
                .ok_or_else(|| CliError::usage("algebra.m required for the witt family"))?;
            Family::Witt { n, m: m as u32 }
        }
        "exterior" => Family::ExteriorLike { n },
        "elem_abelian" => Family::ElemAbelian { n },
        other => return Err(CliError::usage(format!("unknown family {other:?}"))),
    };
    AlgebraPresentation::new(p, fam).map_err(CliError::domain)
}

pub fn build_algebra(p: u64, family: &str, n: u32, m: Option<u32>) -> Result<AlgebraPresentation, CliError> {
    let fam = match family {
        "witt" => Family::Witt {
            n,
            m: m.ok_or_else(|| CliError::usage("--m is required for the witt family"))?,
        },
        "exterior" => Family::ExteriorLike { n },
        "elem_abelian" | "elem-abelian" => Family::ElemAbelian { n },
        other => return Err(CliError::usage(format!("unknown family {other:?}"))),
    };
    AlgebraPresentation::new(p, fam).map_err(CliError::domain)
}

/// Field object inside module files: {"degree": e, "modulus": [..]} with the
/// modulus omitted for prime fields; p is carried by the algebra.
pub fn field_to_value(field: &FiniteField, include_p: bool) -> Value {
    let mut m = Map::new();
    m.insert("degree".into(), json!(field.degree()));
    if field.degree() > 1 {
        m.insert("modulus".into(), json!(field.modulus()));
    }
    if include_p {
        m.insert("p".into(), json!(field.p()));
    }
    Value::Object(m)
}

pub fn field_from_value(p: u64, v: &Value) -> Result<FiniteField, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::usage("field must be an object"))?;
    let degree = obj
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::usage("field.degree missing"))? as u32;
    let modulus: Option<Vec<u32>> = match obj.get("modulus") {
        Some(Value::Array(arr)) => Some(
            arr.iter()
                .map(|x| {
                    x.as_u64()
                        .map(|v| v as u32)
                        .ok_or_else(|| CliError::usage("field.modulus entries must be integers"))
                })
                .collect::<Result<_, _>>()?,
        ),
        None => None,
        _ => return Err(CliError::usage("field.modulus must be an array")),
    };
    FiniteField::new(p, degree, modulus.as_deref()).map_err(CliError::domain)
}

pub fn scalar_to_value(field: &FiniteField, s: Scalar) -> Value {
    if field.degree() == 1 {
        json!(s.encoding())
    } else {
        json!(field.coords(s))
    }
}

pub fn scalar_from_value(field: &FiniteField, v: &Value) -> Result<Scalar, CliError> {
    match v {
        Value::Number(n) => {
            let enc = n
                .as_u64()
                .ok_or_else(|| CliError::usage("scalar must be a non-negative integer"))?;
            if enc >= field.order() as u64 {
                return Err(CliError::usage(format!("scalar encoding {enc} out of range")));
            }
            Ok(field.scalar(enc as u32))
        }
        Value::Array(arr) => {
            if arr.len() != field.degree() as usize {
                return Err(CliError::usage("scalar coordinate array has wrong length"));
            }
            let coords: Vec<u32> = arr
                .iter()
                .map(|x| {
                    x.as_u64()
                        .filter(|&c| c < field.p() as u64)
                        .map(|c| c as u32)
                        .ok_or_else(|| CliError::usage("scalar coordinates must be in [0, p)"))
                })
                .collect::<Result<_, _>>()?;
            Ok(field.from_coords(&coords))
        }
        _ => Err(CliError::usage("scalar must be an integer or coordinate array")),
    }
}

pub fn matrix_to_value(field: &FiniteField, m: &Mat) -> Value {
    let rows: Vec<Value> = (0..m.rows)
        .map(|i| Value::Array(m.row(i).iter().map(|&s| scalar_to_value(field, s)).collect()))
        .collect();
    Value::Array(rows)
}

pub fn matrix_from_value(field: &FiniteField, v: &Value, rows: usize, cols: usize) -> Result<Mat, CliError> {
    let arr = v.as_array().ok_or_else(|| CliError::usage("matrix must be an array of rows"))?;
    if arr.len() != rows {
        return Err(CliError::usage("matrix has wrong number of rows"));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for row in arr {
        let row = row.as_array().ok_or_else(|| CliError::usage("matrix row must be an array"))?;
        if row.len() != cols {
            return Err(CliError::usage("matrix row has wrong length"));
        }
        for entry in row {
            data.push(scalar_from_value(field, entry)?);
        }
    }
    Ok(Mat::from_rows(
        data.chunks(cols).map(|c| c.to_vec()).collect(),
    ))
}

fn monomial_key(alg: &AlgebraPresentation, m: &Monomial) -> String {
    let mut digits: Vec<String> = m.exps.iter().map(|e| e.to_string()).collect();
    if alg.has_sigma() {
        digits.push(m.eps.to_string());
    }
    digits.join(",")
}

fn monomial_from_key(alg: &AlgebraPresentation, key: &str) -> Result<Monomial, CliError> {
    let digits: Vec<u32> = key
        .split(',')
        .map(|d| d.trim().parse::<u32>().map_err(|_| CliError::usage("bad monomial key")))
        .collect::<Result<_, _>>()?;
    let n = alg.num_even_gens();
    let expected = n + usize::from(alg.has_sigma());
    if digits.len() != expected {
        return Err(CliError::usage(format!(
            "monomial key {key:?} must have {expected} comma-separated exponents"
        )));
    }
    let mono = Monomial {
        exps: digits[..n].to_vec(),
        eps: if alg.has_sigma() { digits[n] as u8 } else { 0 },
    };
    if !alg.monomial_in_bounds(&mono) {
        return Err(CliError::usage(format!("monomial key {key:?} out of bounds")));
    }
    Ok(mono)
}

pub fn element_to_value(alg: &AlgebraPresentation, field: &FiniteField, el: &AlgebraElement) -> Value {
    let mut m = Map::new();
    for (mono, &c) in &el.terms {
        m.insert(monomial_key(alg, mono), scalar_to_value(field, c));
    }
    Value::Object(m)
}

pub fn element_from_value(
    alg: &AlgebraPresentation,
    field: &FiniteField,
    v: &Value,
) -> Result<AlgebraElement, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::usage("algebra element must be an object"))?;
    let mut el = AlgebraElement::zero();
    for (key, val) in obj {
        let mono = monomial_from_key(alg, key)?;
        let c = scalar_from_value(field, val)?;
        el.add_term(mono, c, field);
    }
    Ok(el)
}

pub fn module_to_value(m: &GradedModule) -> Value {
    let field = m.field();
    let alg = m.algebra();
    let mut actions = Map::new();
    for i in 0..alg.num_even_gens() {
        actions.insert(format!("s{}", i + 1), matrix_to_value(field, m.s_action(i)));
    }
    if let Some(sigma) = m.sigma() {
        actions.insert("sigma".into(), matrix_to_value(field, sigma));
    }
    json!({
        "algebra": algebra_to_value(alg),
        "field": field_to_value(field, false),
        "dim": m.dim(),
        "parity": m.parity(),
        "actions": Value::Object(actions),
    })
}

pub fn module_from_value(v: &Value) -> Result<GradedModule, CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::usage("module must be an object"))?;
    let alg = algebra_from_value(obj.get("algebra").ok_or_else(|| CliError::usage("module.algebra missing"))?)?;
    let field = field_from_value(
        alg.p() as u64,
        obj.get("field").ok_or_else(|| CliError::usage("module.field missing"))?,
    )?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::usage("module.dim missing"))? as usize;
    let parity: Vec<u8> = obj
        .get("parity")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::usage("module.parity missing"))?
        .iter()
        .map(|x| {
            x.as_u64()
                .filter(|&p| p <= 1)
                .map(|p| p as u8)
                .ok_or_else(|| CliError::usage("parity entries must be 0 or 1"))
        })
        .collect::<Result<_, _>>()?;
    if parity.len() != dim {
        return Err(CliError::usage("module.parity length must equal dim"));
    }
    let actions = obj
        .get("actions")
        .and_then(Value::as_object)
        .ok_or_else(|| CliError::usage("module.actions missing"))?;
    let mut s_actions = Vec::new();
    for i in 0..alg.num_even_gens() {
        let key = format!("s{}", i + 1);
        let mat = actions
            .get(&key)
            .ok_or_else(|| CliError::usage(format!("module.actions.{key} missing")))?;
        s_actions.push(matrix_from_value(&field, mat, dim, dim)?);
    }
    let sigma = match (alg.has_sigma(), actions.get("sigma")) {
        (true, Some(v)) => Some(matrix_from_value(&field, v, dim, dim)?),
        (true, None) => return Err(CliError::usage("module.actions.sigma missing")),
        (false, Some(_)) => {
            return Err(CliError::usage("sigma is forbidden for the elem_abelian family"))
        }
        (false, None) => None,
    };
    let expected_keys = alg.num_even_gens() + usize::from(alg.has_sigma());
    if actions.len() != expected_keys {
        return Err(CliError::usage("module.actions has unexpected keys"));
    }
    GradedModule::new(field, alg, parity, s_actions, sigma).map_err(CliError::domain)
}

/// Spec file: {"algebra": {..}, "field": {..}, "f": {key: scalar}, "g": {..}}.
pub fn spec_from_value(v: &Value) -> Result<(AlgebraPresentation, FiniteField, superpoint_core::AlgebraMapSpec), CliError> {
    let obj = v.as_object().ok_or_else(|| CliError::usage("spec must be an object"))?;
    let alg = algebra_from_value(obj.get("algebra").ok_or_else(|| CliError::usage("spec.algebra missing"))?)?;
    let field = field_from_value(
        alg.p() as u64,
        obj.get("field").unwrap_or(&json!({"degree": 1})),
    )?;
    let f = element_from_value(&alg, &field, obj.get("f").unwrap_or(&json!({})))?;
    let g = element_from_value(&alg, &field, obj.get("g").unwrap_or(&json!({})))?;
    Ok((alg, field, superpoint_core::AlgebraMapSpec { f, g }))
}

pub fn point_to_value(field: &FiniteField, coords: &[Scalar]) -> Value {
    Value::Array(coords.iter().map(|&c| scalar_to_value(field, c)).collect())
}

/// Parse a point literal like `"[0,1]"` (or `[[..],[..]]` over extension fields).
pub fn point_from_str(field: &FiniteField, s: &str, expected_len: usize) -> Result<Vec<Scalar>, CliError> {
    let v: Value = serde_json::from_str(s).map_err(|e| CliError::usage(format!("bad point literal: {e}")))?;
    let arr = v.as_array().ok_or_else(|| CliError::usage("point must be a JSON array"))?;
    if arr.len() != expected_len {
        return Err(CliError::usage(format!("point must have {expected_len} coordinates")));
    }
    arr.iter().map(|x| scalar_from_value(field, x)).collect()
}

pub fn resolution_to_value(res: &Resolution) -> Value {
    let field = res.module().field();
    let alg = res.module().algebra();
    let mut diffs = Vec::new();
    for j in 1..=res.length() {
        let d = res.differential(j);
        let rows: Vec<Value> = (0..d.rows)
            .map(|r| {
                Value::Array(
                    (0..d.cols)
                        .map(|c| element_to_value(alg, field, d.get(r, c)))
                        .collect(),
                )
            })
            .collect();
        diffs.push(Value::Array(rows));
    }
    let parities: Vec<Value> = (0..=res.length())
        .map(|i| json!(res.generator_parities(i)))
        .collect();
    json!({
        "ranks": res.ranks(),
        "parities": parities,
        "differentials": diffs,
    })
}
