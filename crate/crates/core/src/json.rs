//! The `tencode/1` JSON schema for fields, tensors, subspaces and codes.
//!
//! Field elements are plain integers over prime fields and coefficient lists
//! `[c_0, …, c_{m-1}]` over extension fields; an integer `v` is also accepted
//! for extension fields and read as `Σ c_i p^i`. Integers that do not fit in
//! 53 bits are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::code::TensorCode;
use crate::error::{Error, Result};
use crate::gfq::Field;
use crate::subspace::Subspace;
use crate::tensor::{Shape, Tensor};

pub const SCHEMA: &str = "tencode/1";

const SAFE_INTEGER: u64 = 1 << 53;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub p: u32,
    #[serde(default = "one")]
    pub m: u32,
    /// Defaults to the first irreducible polynomial in lexicographic order.
    #[serde(default)]
    pub modulus: Option<Vec<u32>>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElementDoc {
    Int(u64),
    Coeffs(Vec<u32>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TensorDoc {
    Entries {
        #[serde(default)]
        dims: Option<Vec<usize>>,
        entries: Vec<ElementDoc>,
    },
    /// Bar-separated layout of a 3-tensor, rows separated by newlines or `/`.
    Matrix { matrix: String },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeDoc {
    pub schema: String,
    pub field: FieldDoc,
    pub dims: Vec<usize>,
    pub basis: Vec<TensorDoc>,
    #[serde(default)]
    pub name: Option<String>,
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Json {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e),
    })
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

impl FieldDoc {
    pub fn build(&self) -> Result<Field> {
        match &self.modulus {
            Some(m) => Field::new(self.p, self.m, m.clone()),
            None => Field::with_order(self.p, self.m),
        }
    }
}

impl ElementDoc {
    pub fn build(&self, field: &Field) -> Result<u8> {
        match self {
            ElementDoc::Int(v) => field.check(*v),
            ElementDoc::Coeffs(c) => field.from_coeffs(c),
        }
    }
}

impl TensorDoc {
    pub fn build(&self, field: &Field, dims: Option<&[usize]>) -> Result<Tensor> {
        let t = match self {
            TensorDoc::Entries { dims: own, entries } => {
                let d = match (own, dims) {
                    (Some(a), Some(b)) if a.as_slice() != b => {
                        return Err(Error::Schema(format!(
                            "tensor dims {a:?} differ from code dims {b:?}"
                        )));
                    }
                    (Some(a), _) => a.clone(),
                    (None, Some(b)) => b.to_vec(),
                    (None, None) => return Err(Error::Schema("tensor without dims".into())),
                };
                let e = entries
                    .iter()
                    .map(|x| x.build(field))
                    .collect::<Result<Vec<u8>>>()?;
                Tensor::new(field, &d, e)?
            }
            TensorDoc::Matrix { matrix } => {
                Tensor::from_matrix_repr(field, &matrix.replace('/', "\n"))?
            }
        };
        if let Some(d) = dims {
            if t.dims() != d {
                return Err(Error::Schema(format!(
                    "tensor dims {:?} differ from code dims {d:?}",
                    t.dims()
                )));
            }
        }
        Ok(t)
    }
}

impl CodeDoc {
    pub fn build(&self) -> Result<TensorCode> {
        if self.schema != SCHEMA {
            return Err(Error::Schema(format!(
                "unsupported schema {:?}",
                self.schema
            )));
        }
        let field = self.field.build()?;
        let shape = Shape::new(&field, &self.dims)?;
        if self.basis.is_empty() {
            return Ok(TensorCode::zero(&shape));
        }
        let tensors = self
            .basis
            .iter()
            .map(|t| t.build(&field, Some(&self.dims)))
            .collect::<Result<Vec<_>>>()?;
        TensorCode::from_basis(&tensors)
    }
}

pub fn parse_code_doc(text: &str) -> Result<CodeDoc> {
    parse_json(text)
}

/// Reads a code document.
pub fn parse_code(text: &str) -> Result<TensorCode> {
    parse_code_doc(text)?.build()
}

pub fn parse_field(text: &str) -> Result<Field> {
    parse_json::<FieldDoc>(text)?.build()
}

pub fn field_json(field: &Field) -> Value {
    json!({"p": field.p(), "m": field.m(), "modulus": field.modulus()})
}

pub fn element_json(field: &Field, v: u8) -> Value {
    if field.is_prime_field() {
        json!(v)
    } else {
        json!(field.coeffs(v))
    }
}

pub fn vector_json(field: &Field, v: &[u8]) -> Value {
    Value::Array(v.iter().map(|&x| element_json(field, x)).collect())
}

pub fn tensor_json(t: &Tensor) -> Value {
    json!({"dims": t.dims(), "entries": vector_json(t.field(), t.entries())})
}

pub fn subspace_json(s: &Subspace) -> Value {
    Value::Array(
        s.basis()
            .iter()
            .map(|r| vector_json(s.field(), r))
            .collect(),
    )
}

/// A full code document; the basis is the canonical one.
pub fn code_json(code: &TensorCode) -> Value {
    json!({
        "schema": SCHEMA,
        "field": field_json(code.field()),
        "dims": code.dims(),
        "basis": code.basis().iter().map(tensor_json).collect::<Vec<_>>(),
    })
}

pub fn big_json(x: &BigInt) -> Value {
    match x.abs().to_u64() {
        Some(v) if v <= SAFE_INTEGER => match x.to_i64() {
            Some(i) => json!(i),
            None => json!(x.to_string()),
        },
        _ => json!(x.to_string()),
    }
}

pub fn rational_json(x: &BigRational) -> Value {
    if x.denom().is_one() {
        big_json(x.numer())
    } else {
        json!(x.to_string())
    }
}

pub fn big_table_json(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(big_json).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const CODE: &str = r#"{
        "schema": "tencode/1",
        "field": {"p": 3, "m": 1, "modulus": [0, 1]},
        "dims": [2, 2],
        "basis": [{"dims": [2, 2], "entries": [1, 0, 0, 1]}, {"entries": [0, 1, 2, 0]}]
    }"#;

    #[test]
    fn round_trip() {
        let c = parse_code(CODE).unwrap();
        assert_eq!(c.k(), 2);
        let back = parse_code(&code_json(&c).to_string()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn matrix_form() {
        let doc = r#"{"schema":"tencode/1","field":{"p":2},"dims":[2,2,2],
            "basis":[{"matrix":"1 0|1 1 / 0 1|1 0"}]}"#;
        let c = parse_code(doc).unwrap();
        assert_eq!(c.basis()[0].to_matrix_repr().unwrap(), "1 0|1 1\n0 1|1 0");
    }

    #[test]
    fn extension_elements() {
        let f = Field::gf4();
        let doc = r#"{"schema":"tencode/1","field":{"p":2,"m":2,"modulus":[1,1,1]},"dims":[1,2],
            "basis":[{"entries":[[0,1],3]}]}"#;
        let doc: CodeDoc = parse_code_doc(doc).unwrap();
        let t = doc.basis[0].build(&f, Some(&doc.dims)).unwrap();
        assert_eq!(t.entries(), &[2, 3]);
        assert_eq!(element_json(&f, 2), json!([0, 1]));
    }

    #[test]
    fn errors_carry_positions_and_codes() {
        let e = parse_code("{\n  \"schema\": \"tencode/1\",\n  oops }").unwrap_err();
        match &e {
            Error::Json { line, .. } => assert_eq!(*line, 3),
            other => panic!("{other:?}"),
        }
        assert_eq!(e.code(), "malformed_json");
        let bad = CODE.replace("tencode/1", "tencode/0");
        assert_eq!(parse_code(&bad).unwrap_err().code(), "schema_mismatch");
        let wrong = CODE.replace("[0, 1, 2, 0]", "[0, 1, 2]");
        assert!(parse_code(&wrong).is_err());
        let outside = CODE.replace("[0, 1, 2, 0]", "[0, 1, 3, 0]");
        assert_eq!(parse_code(&outside).unwrap_err().code(), "invalid_argument");
    }

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(
            big_json(&BigInt::from(1u64 << 53)),
            json!(9007199254740992u64)
        );
        assert_eq!(
            big_json(&(BigInt::from(1u64 << 53) + 1)),
            json!("9007199254740993")
        );
        assert_eq!(big_json(&BigInt::from(-7)), json!(-7));
        assert_eq!(
            rational_json(&BigRational::new(3.into(), 6.into())),
            json!("1/2")
        );
    }
}
