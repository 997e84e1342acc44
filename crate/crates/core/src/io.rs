//! JSON formats. Scalars are strings (`"3"`, `"-4/7"`); tensors are
//! `{"dims": [...], "entries": [...]}` with `i_0` outermost; bundle files add
//! `"n"` and `"k"`; hyperplane lists are arrays of scalar-string vectors.

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::steiner::Hyperplane;
use crate::tensor::{BoundaryFormat, BoundaryTensor};

fn parse_err(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{path}: {msg}"))
}

fn scalar_at<F: Field>(v: &Value, path: &str) -> Result<F> {
    match v {
        Value::String(s) => F::parse_scalar(s).map_err(|e| parse_err(path, e)),
        Value::Number(n) if n.is_i64() => Ok(F::from_i64(n.as_i64().expect("checked"))),
        other => Err(parse_err(path, format!("expected a scalar string, found {other}"))),
    }
}

fn array_at<'a>(v: &'a Value, path: &str, len: Option<usize>) -> Result<&'a Vec<Value>> {
    let arr = v.as_array().ok_or_else(|| parse_err(path, "expected an array"))?;
    if let Some(l) = len {
        if arr.len() != l {
            return Err(parse_err(path, format!("expected {l} elements, found {}", arr.len())));
        }
    }
    Ok(arr)
}

fn read_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn usize_field(obj: &Value, key: &str) -> Result<Option<usize>> {
    match obj.get(key) {
        None => Ok(None),
        Some(v) => {
            v.as_u64().map(|x| Some(x as usize)).ok_or_else(|| parse_err(key, "expected a non-negative integer"))
        }
    }
}

fn tensor_from_value<F: Field>(obj: &Value) -> Result<BoundaryTensor<F>> {
    let dims: Vec<usize> = array_at(obj.get("dims").ok_or_else(|| parse_err("dims", "missing"))?, "dims", None)?
        .iter()
        .enumerate()
        .map(|(j, d)| {
            d.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(&format!("dims[{j}]"), "expected an integer"))
        })
        .collect::<Result<_>>()?;
    let format = BoundaryFormat::new(&dims)?;
    let entries = obj.get("entries").ok_or_else(|| parse_err("entries", "missing"))?;
    let mut flat = Vec::with_capacity(format.len());
    fn walk<F: Field>(v: &Value, dims: &[usize], path: String, out: &mut Vec<F>) -> Result<()> {
        match dims.split_first() {
            None => {
                out.push(scalar_at(v, &path)?);
                Ok(())
            }
            Some((&d, rest)) => {
                for (j, child) in array_at(v, &path, Some(d))?.iter().enumerate() {
                    walk(child, rest, format!("{path}[{j}]"), out)?;
                }
                Ok(())
            }
        }
    }
    walk(entries, &dims, "entries".to_string(), &mut flat)?;
    BoundaryTensor::from_flat(format, flat)
}

/// Reads a tensor or bundle file; the second component is `(n, k)` when given.
pub fn parse_tensor<F: Field>(text: &str) -> Result<(BoundaryTensor<F>, Option<(usize, usize)>)> {
    let v = read_json(text)?;
    let tensor = tensor_from_value(&v)?;
    let params = match (usize_field(&v, "n")?, usize_field(&v, "k")?) {
        (Some(n), Some(k)) => Some((n, k)),
        (None, None) => None,
        _ => return Err(parse_err("n/k", "both or neither of n and k must be given")),
    };
    Ok((tensor, params))
}

fn entries_value<F: Field>(a: &BoundaryTensor<F>) -> Value {
    fn build<F: Field>(flat: &[F], dims: &[usize]) -> Value {
        match dims.split_first() {
            None => Value::String(flat[0].to_string()),
            Some((&d, rest)) => {
                let stride: usize = rest.iter().product();
                Value::Array((0..d).map(|j| build(&flat[j * stride..(j + 1) * stride], rest)).collect())
            }
        }
    }
    build(a.flat(), a.dims())
}

#[derive(Serialize)]
struct TensorFile<'a> {
    dims: &'a [usize],
    entries: Value,
}

#[derive(Serialize)]
struct BundleFile<'a> {
    n: usize,
    k: usize,
    dims: &'a [usize],
    entries: Value,
}

/// Canonical one-line JSON, with `n` and `k` first when given.
pub fn tensor_to_json<F: Field>(a: &BoundaryTensor<F>, params: Option<(usize, usize)>) -> String {
    let entries = entries_value(a);
    match params {
        None => serde_json::to_string(&TensorFile { dims: a.dims(), entries }),
        Some((n, k)) => serde_json::to_string(&BundleFile { n, k, dims: a.dims(), entries }),
    }
    .expect("tensor serializes")
}

pub fn tensor_value<F: Field>(a: &BoundaryTensor<F>) -> Value {
    serde_json::to_value(TensorFile { dims: a.dims(), entries: entries_value(a) }).expect("tensor serializes")
}

pub fn hyperplane_from_value<F: Field>(v: &Value, path: &str) -> Result<Hyperplane<F>> {
    let coeffs = array_at(v, path, None)?
        .iter()
        .enumerate()
        .map(|(j, c)| scalar_at(c, &format!("{path}[{j}]")))
        .collect::<Result<Vec<F>>>()?;
    Hyperplane::new(coeffs)
}

/// A JSON array of coefficient vectors.
pub fn parse_hyperplanes<F: Field>(text: &str) -> Result<Vec<Hyperplane<F>>> {
    let v = read_json(text)?;
    array_at(&v, "hyperplanes", None)?
        .iter()
        .enumerate()
        .map(|(j, h)| hyperplane_from_value(h, &format!("hyperplanes[{j}]")))
        .collect()
}

/// Comma-separated coefficients, e.g. `"1,1,0"` or `"1/2,0,-3"`.
pub fn parse_hyperplane_arg<F: Field>(text: &str) -> Result<Hyperplane<F>> {
    let coeffs = text.split(',').map(F::parse_scalar).collect::<Result<Vec<F>>>()?;
    Hyperplane::new(coeffs)
}

pub fn hyperplanes_to_json<F: Field>(hs: &[Hyperplane<F>]) -> String {
    let v: Vec<Vec<String>> = hs.iter().map(Hyperplane::to_strings).collect();
    serde_json::to_string(&v).expect("strings serialize")
}

pub fn matrix_from_value<F: Field>(v: &Value, path: &str) -> Result<Matrix<F>> {
    let rows = array_at(v, path, None)?
        .iter()
        .enumerate()
        .map(|(r, row)| {
            array_at(row, &format!("{path}[{r}]"), None)?
                .iter()
                .enumerate()
                .map(|(c, x)| scalar_at(x, &format!("{path}[{r}][{c}]")))
                .collect::<Result<Vec<F>>>()
        })
        .collect::<Result<Vec<Vec<F>>>>()?;
    Matrix::from_rows(rows).map_err(|e| parse_err(path, e))
}

/// A JSON array of square matrices, one per tensor factor.
pub fn parse_group_element<F: Field>(text: &str) -> Result<Vec<Matrix<F>>> {
    let v = read_json(text)?;
    array_at(&v, "group", None)?.iter().enumerate().map(|(j, m)| matrix_from_value(m, &format!("group[{j}]"))).collect()
}

pub fn matrix_to_strings<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}
