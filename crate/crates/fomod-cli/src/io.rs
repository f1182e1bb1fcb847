//! Input files and JSON rendering.
//!
//! Map file: `{"schema": 1, "field": "Q", "degree": 3, "F0": [...], "F1": [...]}`
//! with coefficients of `X0^n, X0^(n-1) X1, ..., X1^n` as strings (`"p/q"`,
//! `"a+b*sqrt(D)"`) or integers.
//!
//! Point file: `{"schema": 1, "field": "Q", "weights": [2,2,3,3,4,6],
//! "coords": [...]}`; `degree` is optional and inferred from the number of
//! coordinates (six for degree 3, four for degree 2).

use std::path::Path;

use fomod::conic::{Certificate, Conic, PointSearchResult};
use fomod::field::{FieldDescriptor, FieldElement};
use fomod::forms::{merge, FormPair, RationalMap};
use fomod::inv2::{InvariantTuple2, WEIGHTS2};
use fomod::inv3::{InvariantTuple3, WEIGHTS3};
use fomod::poly::BinaryForm;
use serde::Deserialize;
use serde_json::{json, Value};

/// Failure of a command: domain errors exit with 1, input errors with 2.
#[derive(Debug)]
pub enum CliError {
    Domain(fomod::Error),
    Input { code: &'static str, detail: String },
}

impl From<fomod::Error> for CliError {
    fn from(e: fomod::Error) -> Self {
        CliError::Domain(e)
    }
}

impl CliError {
    pub fn schema(detail: impl Into<String>) -> Self {
        CliError::Input { code: "Schema", detail: detail.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input { .. } => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Domain(e) => json!({"error": e.code(), "detail": e.to_string()}),
            CliError::Input { code, detail } => json!({"error": code, "detail": detail}),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Deserialize)]
struct MapFile {
    schema: Option<u64>,
    field: String,
    degree: usize,
    #[serde(rename = "F0")]
    f0: Vec<Value>,
    #[serde(rename = "F1")]
    f1: Vec<Value>,
}

#[derive(Deserialize)]
struct PointFile {
    schema: Option<u64>,
    field: String,
    degree: Option<usize>,
    weights: Option<Vec<u32>>,
    coords: Vec<Value>,
}

/// A parsed moduli point of either degree.
#[derive(Clone, Debug)]
pub enum Point {
    Degree3(InvariantTuple3),
    Degree2(InvariantTuple2),
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input { code: "Io", detail: format!("{}: {e}", path.display()) })?;
    serde_json::from_str(&text).map_err(|e| CliError::schema(format!("{}: {e}", path.display())))
}

fn check_schema(schema: Option<u64>) -> CliResult<()> {
    match schema {
        None | Some(1) => Ok(()),
        Some(v) => Err(CliError::schema(format!("unsupported schema version {v}"))),
    }
}

fn parse_field(s: &str) -> CliResult<FieldDescriptor> {
    s.parse().map_err(|e: fomod::Error| CliError::schema(e.to_string()))
}

fn parse_element(v: &Value, field: FieldDescriptor) -> CliResult<FieldElement> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => return Err(CliError::schema(format!("coefficient must be a string or an integer, got {other}"))),
    };
    FieldElement::parse(&text, field).map_err(|e| CliError::schema(e.to_string()))
}

fn parse_elements(vs: &[Value], field: FieldDescriptor) -> CliResult<Vec<FieldElement>> {
    vs.iter().map(|v| parse_element(v, field)).collect()
}

pub fn read_map(path: &Path) -> CliResult<(RationalMap, FieldDescriptor)> {
    let file: MapFile = read_json(path)?;
    check_schema(file.schema)?;
    let field = parse_field(&file.field)?;
    if file.f0.len() != file.degree + 1 || file.f1.len() != file.degree + 1 {
        return Err(CliError::schema(format!("a degree-{} map needs {} coefficients per form", file.degree, file.degree + 1)));
    }
    let f0 = BinaryForm::new(parse_elements(&file.f0, field)?);
    let f1 = BinaryForm::new(parse_elements(&file.f1, field)?);
    Ok((RationalMap::new(f0, f1)?, field))
}

pub fn read_point(path: &Path) -> CliResult<(Point, FieldDescriptor)> {
    let file: PointFile = read_json(path)?;
    check_schema(file.schema)?;
    let field = parse_field(&file.field)?;
    let coords = parse_elements(&file.coords, field)?;
    let degree = match (file.degree, coords.len()) {
        (Some(d), _) => d,
        (None, 6) => 3,
        (None, 4) => 2,
        (None, n) => return Err(CliError::schema(format!("cannot infer the degree from {n} coordinates"))),
    };
    let (expected_len, weights): (usize, &[u32]) = match degree {
        3 => (6, &WEIGHTS3),
        2 => (4, &WEIGHTS2),
        d => return Err(CliError::schema(format!("points are supported in degrees 2 and 3, not {d}"))),
    };
    if coords.len() != expected_len {
        return Err(CliError::schema(format!("a degree-{degree} point has {expected_len} coordinates")));
    }
    if let Some(w) = &file.weights {
        if w.as_slice() != weights {
            return Err(CliError::schema(format!("weights {w:?} do not match degree {degree}: expected {weights:?}")));
        }
    }
    let point = if degree == 3 {
        Point::Degree3(InvariantTuple3::from_array(std::array::from_fn(|k| coords[k].clone())))
    } else {
        Point::Degree2(InvariantTuple2::from_array(std::array::from_fn(|k| coords[k].clone())))
    };
    Ok((point, field))
}

pub fn elements(xs: &[FieldElement]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn map_json(map: &RationalMap, field: FieldDescriptor) -> Value {
    json!({
        "schema": 1,
        "field": field.to_string(),
        "degree": map.degree(),
        "F0": elements(map.f0().coeffs()),
        "F1": elements(map.f1().coeffs()),
    })
}

pub fn point3_json(t: &InvariantTuple3, field: FieldDescriptor) -> Value {
    let names = ["d", "i", "j", "a", "b", "c"];
    let coords = t.to_array();
    let mut out = json!({
        "schema": 1,
        "field": field.to_string(),
        "degree": 3,
        "weights": WEIGHTS3,
        "coords": elements(&coords),
    });
    for (n, x) in names.iter().zip(&coords) {
        out[*n] = Value::String(x.to_string());
    }
    out
}

pub fn point2_json(t: &InvariantTuple2, field: FieldDescriptor) -> Value {
    let names = ["s1", "s2", "s3", "r"];
    let coords = t.to_array();
    let mut out = json!({
        "schema": 1,
        "field": field.to_string(),
        "degree": 2,
        "weights": WEIGHTS2,
        "coords": elements(&coords),
    });
    for (n, x) in names.iter().zip(&coords) {
        out[*n] = Value::String(x.to_string());
    }
    out
}

/// The model as the forms `(f, g)` and, when the map is non-degenerate, as
/// a map file.
pub fn model_json(pair: &FormPair) -> Value {
    let field = pair.field().unwrap_or(FieldDescriptor::Rationals);
    let map = merge(pair).ok().map(|m| map_json(&m, field)).unwrap_or(Value::Null);
    json!({
        "field": field.to_string(),
        "f": elements(pair.f.coeffs()),
        "g": elements(pair.g.coeffs()),
        "map": map,
    })
}

pub fn conic_json(c: &Conic) -> Value {
    let m = c.matrix();
    json!({
        "matrix": m.iter().map(|r| elements(r)).collect::<Vec<_>>(),
        "equation": c.to_string(),
    })
}

pub fn certificate_json(cert: &Certificate) -> Value {
    match cert {
        Certificate::RealDefinite { positive } => json!({"kind": cert.kind(), "sign": if *positive { "positive" } else { "negative" }}),
        Certificate::PAdic { prime, form, checked_modulus } => json!({
            "kind": cert.kind(),
            "prime": prime.to_string(),
            "reduced_form": form.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "checked_modulus": checked_modulus.as_ref().map(|m| m.to_string()),
        }),
    }
}

pub fn search_json(r: &PointSearchResult) -> Value {
    match r {
        PointSearchResult::Point(p) => json!({"outcome": "point", "point": p.iter().map(|x| x.to_string()).collect::<Vec<_>>()}),
        PointSearchResult::Impossible(cert) => json!({"outcome": "impossible", "certificate": certificate_json(cert)}),
        PointSearchResult::Exhausted { height_bound, diagnostic } => {
            json!({"outcome": "exhausted", "height_bound": height_bound, "diagnostic": diagnostic})
        }
    }
}
