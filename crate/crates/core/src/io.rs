//! JSON file formats for algebras, extension data, cotangent data,
//! bimodules and cochains.
//!
//! Scalars are written as `"p"` or `"p/q"` strings in lowest terms. Readers
//! also accept JSON integers and non-reduced fractions.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, FaslaTriple, SymplecticForm, Tensor3};
use crate::cohomology::{tuples, Bimodule, Cochain};
use crate::cotangent::CotangentData;
use crate::error::{Error, Result};
use crate::extension::ExtensionParams;
use crate::linalg::{Matrix, Vector};
use crate::scalar::{format_scalar, parse_scalar, Scalar};

/// An algebra file: product, optional form and optional basis labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraFile {
    pub algebra: Algebra,
    pub omega: Option<SymplecticForm>,
    pub labels: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn from_triple(t: &FaslaTriple) -> Self {
        Self {
            algebra: t.algebra.clone(),
            omega: Some(t.omega.clone()),
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// The triple, if a form is present.
    pub fn triple(&self) -> Result<FaslaTriple> {
        let omega = self
            .omega
            .clone()
            .ok_or_else(|| Error::Parse("algebra file has no \"omega\"".into()))?;
        FaslaTriple::new(self.algebra.clone(), omega)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("dim".into(), json!(self.algebra.dim()));
        m.insert("field".into(), json!("rational"));
        m.insert("product".into(), tensor_json(self.algebra.tensor()));
        m.insert(
            "omega".into(),
            self.omega.as_ref().map_or(Value::Null, |w| matrix_json(w.gram())),
        );
        m.insert(
            "labels".into(),
            self.labels.as_ref().map_or(Value::Null, |l| json!(l)),
        );
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = object(v, "algebra")?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("algebra: \"dim\" must be a nonnegative integer".into()))?
            as usize;
        if let Some(f) = obj.get("field") {
            if f != "rational" {
                return Err(Error::Parse(format!("algebra: unsupported field {f}")));
            }
        }
        let product = tensor_from(field(obj, "product", "algebra")?, dim, "product")?;
        let omega = match obj.get("omega") {
            None | Some(Value::Null) => None,
            Some(g) => Some(SymplecticForm::new(matrix_from(g, dim, dim, "omega")?)?),
        };
        let labels = match obj.get("labels") {
            None | Some(Value::Null) => None,
            Some(Value::Array(items)) => {
                let l: Option<Vec<String>> = items.iter().map(|s| s.as_str().map(str::to_string)).collect();
                let l = l.ok_or_else(|| Error::Parse("labels: expected strings".into()))?;
                if l.len() != dim {
                    return Err(Error::Parse(format!("labels: expected {dim} entries, found {}", l.len())));
                }
                Some(l)
            }
            Some(_) => return Err(Error::Parse("labels: expected an array or null".into())),
        };
        Ok(Self {
            algebra: Algebra::new(product),
            omega,
            labels,
        })
    }
}

/// Serializes any value in the canonical text form: pretty-printed with a
/// trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// Parses JSON text; syntax errors carry their line and column.
pub fn parse_text(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_text(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    std::fs::write(path, to_text(v)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_algebra(path: &Path) -> Result<AlgebraFile> {
    AlgebraFile::from_json(&read_json(path)?)
}

pub fn scalar_json(s: &Scalar) -> Value {
    Value::String(format_scalar(s))
}

pub fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_json(m.row(i))).collect())
}

pub fn tensor_json(t: &Tensor3) -> Value {
    let n = t.dim();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| vector_json(t.slot(i, j))).collect()))
            .collect(),
    )
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse(format!("{what}: expected a JSON object")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("{what}: missing \"{key}\"")))
}

pub fn scalar_from(v: &Value, path: &str) -> Result<Scalar> {
    match v {
        Value::String(s) => parse_scalar(s).map_err(|e| Error::Parse(format!("{path}: {e}"))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Scalar::from_integer(i.into())),
            None => Err(Error::Parse(format!("{path}: {n} is not an integer; use \"p/q\""))),
        },
        other => Err(Error::Parse(format!("{path}: expected a scalar, found {other}"))),
    }
}

fn array<'a>(v: &'a Value, len: usize, path: &str) -> Result<&'a Vec<Value>> {
    let a = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{path}: expected an array")))?;
    if a.len() != len {
        return Err(Error::Parse(format!("{path}: expected {len} entries, found {}", a.len())));
    }
    Ok(a)
}

pub fn vector_from(v: &Value, len: usize, path: &str) -> Result<Vector> {
    array(v, len, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_from(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn matrix_from(v: &Value, rows: usize, cols: usize, path: &str) -> Result<Matrix> {
    let r: Result<Vec<Vector>> = array(v, rows, path)?
        .iter()
        .enumerate()
        .map(|(i, row)| vector_from(row, cols, &format!("{path}[{i}]")))
        .collect();
    Ok(Matrix::from_rows(r?, cols))
}

pub fn tensor_from(v: &Value, n: usize, path: &str) -> Result<Tensor3> {
    let mut t = Tensor3::zeros(n);
    for (i, plane) in array(v, n, path)?.iter().enumerate() {
        for (j, row) in array(plane, n, &format!("{path}[{i}]"))?.iter().enumerate() {
            let vals = vector_from(row, n, &format!("{path}[{i}][{j}]"))?;
            t.slot_mut(i, j).clone_from_slice(&vals);
        }
    }
    Ok(t)
}

/// Width of a square matrix-valued field, read from its outer array.
fn square_dim(v: &Value, path: &str) -> Result<usize> {
    v.as_array()
        .map(Vec::len)
        .ok_or_else(|| Error::Parse(format!("{path}: expected an array")))
}

pub fn params_to_json(p: &ExtensionParams) -> Value {
    let mut m = Map::new();
    m.insert("u".into(), matrix_json(&p.u));
    m.insert("D".into(), matrix_json(&p.d));
    m.insert("x0".into(), vector_json(&p.x0));
    m.insert("z0".into(), vector_json(&p.z0));
    m.insert("beta".into(), scalar_json(&p.beta));
    m.insert("lambda".into(), scalar_json(&p.lambda));
    m.insert("mu".into(), scalar_json(&p.mu));
    Value::Object(m)
}

pub fn params_from_json(v: &Value) -> Result<ExtensionParams> {
    let obj = object(v, "params")?;
    let n = square_dim(field(obj, "x0", "params")?, "x0")?;
    Ok(ExtensionParams {
        u: matrix_from(field(obj, "u", "params")?, n, n, "u")?,
        d: matrix_from(field(obj, "D", "params")?, n, n, "D")?,
        x0: vector_from(field(obj, "x0", "params")?, n, "x0")?,
        z0: vector_from(field(obj, "z0", "params")?, n, "z0")?,
        beta: scalar_from(field(obj, "beta", "params")?, "beta")?,
        lambda: scalar_from(field(obj, "lambda", "params")?, "lambda")?,
        mu: scalar_from(field(obj, "mu", "params")?, "mu")?,
    })
}

pub fn cotangent_to_json(d: &CotangentData) -> Value {
    let base = AlgebraFile {
        algebra: d.base.clone(),
        omega: None,
        labels: None,
    };
    let mut m = Map::new();
    m.insert("base".into(), base.to_json());
    m.insert("circ".into(), tensor_json(&d.circ));
    m.insert("f".into(), tensor_json(&d.f));
    Value::Object(m)
}

pub fn cotangent_from_json(v: &Value) -> Result<CotangentData> {
    let obj = object(v, "cotangent data")?;
    let base = AlgebraFile::from_json(field(obj, "base", "cotangent data")?)?.algebra;
    let n = base.dim();
    Ok(CotangentData {
        circ: tensor_from(field(obj, "circ", "cotangent data")?, n, "circ")?,
        f: tensor_from(field(obj, "f", "cotangent data")?, n, "f")?,
        base,
    })
}

pub fn bimodule_to_json(b: &Bimodule) -> Value {
    let base = AlgebraFile {
        algebra: b.base.clone(),
        omega: None,
        labels: None,
    };
    let mut m = Map::new();
    m.insert("base".into(), base.to_json());
    m.insert("module_dim".into(), json!(b.module_dim));
    m.insert("left".into(), Value::Array(b.left_action.iter().map(matrix_json).collect()));
    m.insert("right".into(), Value::Array(b.right_action.iter().map(matrix_json).collect()));
    Value::Object(m)
}

/// Reads a bimodule. If `base` is given the file may omit its own `"base"`.
pub fn bimodule_from_json(v: &Value, base: Option<&Algebra>) -> Result<Bimodule> {
    let obj = object(v, "bimodule")?;
    let base = match (obj.get("base"), base) {
        (Some(b), _) => AlgebraFile::from_json(b)?.algebra,
        (None, Some(b)) => b.clone(),
        (None, None) => return Err(Error::Parse("bimodule: missing \"base\"".into())),
    };
    let n = base.dim();
    let m = field(obj, "module_dim", "bimodule")?
        .as_u64()
        .ok_or_else(|| Error::Parse("bimodule: \"module_dim\" must be a nonnegative integer".into()))?
        as usize;
    let actions = |key: &str| -> Result<Vec<Matrix>> {
        array(field(obj, key, "bimodule")?, n, key)?
            .iter()
            .enumerate()
            .map(|(i, a)| matrix_from(a, m, m, &format!("{key}[{i}]")))
            .collect()
    };
    Bimodule::new(base, m, actions("left")?, actions("right")?)
}

fn nest(c: &Cochain, prefix: &mut Vec<usize>) -> Value {
    if prefix.len() == c.degree() {
        return vector_json(c.value(prefix));
    }
    let items = (0..c.base_dim())
        .map(|i| {
            prefix.push(i);
            let v = nest(c, prefix);
            prefix.pop();
            v
        })
        .collect();
    Value::Array(items)
}

/// `{"degree", "base_dim", "module_dim", "values"}` with `values` nested
/// `degree` deep, innermost arrays holding the value vector.
pub fn cochain_to_json(c: &Cochain) -> Value {
    let mut m = Map::new();
    m.insert("degree".into(), json!(c.degree()));
    m.insert("base_dim".into(), json!(c.base_dim()));
    m.insert("module_dim".into(), json!(c.module_dim()));
    m.insert("values".into(), nest(c, &mut Vec::new()));
    Value::Object(m)
}

pub fn cochain_from_json(v: &Value) -> Result<Cochain> {
    let obj = object(v, "cochain")?;
    let int_field = |k: &str| -> Result<usize> {
        field(obj, k, "cochain")?
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| Error::Parse(format!("cochain: \"{k}\" must be a nonnegative integer")))
    };
    let (p, n, m) = (int_field("degree")?, int_field("base_dim")?, int_field("module_dim")?);
    let values = field(obj, "values", "cochain")?;
    let mut c = Cochain::zeros(p, n, m);
    for t in tuples(n, p).collect::<Vec<_>>() {
        let mut node = values;
        let mut path = "values".to_string();
        for &i in &t {
            node = &array(node, n, &path)?[i];
            path.push_str(&format!("[{i}]"));
        }
        c.set_value(&t, &vector_from(node, m, &path)?);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vec_from_i64;
    use crate::scalar::{frac, int};

    fn sample() -> AlgebraFile {
        let a = Algebra::from_fn(2, |i, j| vec![frac(i as i64 + 1, 3), int(j as i64 - 1)]);
        AlgebraFile {
            algebra: a,
            omega: Some(SymplecticForm::standard(2)),
            labels: Some(vec!["e".into(), "d".into()]),
        }
    }

    #[test]
    fn algebra_round_trip_is_byte_identical() {
        let f = sample();
        let text = to_text(&f.to_json());
        let back = AlgebraFile::from_json(&parse_text(&text).unwrap()).unwrap();
        assert_eq!(back, f);
        assert_eq!(to_text(&back.to_json()), text);
        assert!(text.starts_with("{\n  \"dim\": 2,\n  \"field\": \"rational\""));
        assert!(text.contains("\"1/3\""));
    }

    #[test]
    fn readers_normalize_and_accept_integers() {
        let text = r#"{"dim": 1, "field": "rational", "product": [[[ "2/4" ]]], "omega": null, "labels": null}"#;
        let f = AlgebraFile::from_json(&parse_text(text).unwrap()).unwrap();
        assert_eq!(f.algebra.basis_product(0, 0), &[frac(1, 2)]);
        let text = r#"{"dim": 1, "product": [[[ 3 ]]]}"#;
        let f = AlgebraFile::from_json(&parse_text(text).unwrap()).unwrap();
        assert_eq!(f.algebra.basis_product(0, 0), &[int(3)]);
        assert!(f.triple().is_err());
    }

    #[test]
    fn syntax_errors_have_positions() {
        let err = parse_text("{\n  \"dim\": 2,\n  oops\n}").unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
        assert!(err.contains("column"), "{err}");
        let bad = r#"{"dim": 1, "product": [[[ "1/0" ]]]}"#;
        let err = AlgebraFile::from_json(&parse_text(bad).unwrap()).unwrap_err().to_string();
        assert!(err.contains("product[0][0][0]"), "{err}");
        let short = r#"{"dim": 2, "product": [[[ "1" ]]]}"#;
        assert!(AlgebraFile::from_json(&parse_text(short).unwrap()).is_err());
    }

    #[test]
    fn params_round_trip() {
        let mut p = ExtensionParams::zero(2);
        p.d = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        p.x0 = vec_from_i64(&[1, -2]);
        p.mu = frac(-3, 2);
        let text = to_text(&params_to_json(&p));
        assert_eq!(params_from_json(&parse_text(&text).unwrap()).unwrap(), p);
        let empty = ExtensionParams::scalars(int(1), int(0), int(0));
        assert_eq!(params_from_json(&params_to_json(&empty)).unwrap(), empty);
    }

    #[test]
    fn cotangent_and_bimodule_round_trip() {
        let d = crate::catalog::twisted_line_data();
        assert_eq!(cotangent_from_json(&cotangent_to_json(&d)).unwrap(), d);
        let b = Bimodule::canonical_dual(&crate::catalog::aff_line());
        assert_eq!(bimodule_from_json(&bimodule_to_json(&b), None).unwrap(), b);
    }

    #[test]
    fn cochain_round_trip() {
        let c = Cochain::from_fn(2, 2, 3, |t| vec_from_i64(&[t[0] as i64, t[1] as i64, 7]));
        let v = cochain_to_json(&c);
        assert_eq!(v["values"][1][0], json!(["1", "0", "7"]));
        assert_eq!(cochain_from_json(&v).unwrap(), c);
        let c0 = Cochain::from_fn(0, 2, 1, |_| vec_from_i64(&[5]));
        assert_eq!(cochain_from_json(&cochain_to_json(&c0)).unwrap(), c0);
    }
}
