//! Versioned JSON documents for fields, algebras, modules and reports.
//!
//! Scalars are exact strings: over a degree-1 field a single string
//! (`"3/4"`, `"2"`); over a number field a little-endian list of rational
//! strings; over a finite extension a little-endian list of integers.
//! Unknown keys are rejected everywhere.

use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::AlgebraDesc;
use crate::error::{Error, Result};
use crate::field::{Coords, Field, FieldElement, FieldEmbedding, FieldKind};
use crate::linalg::Matrix;
use crate::module::ModuleDesc;
use crate::split::{SplitReport, SplittingFieldResult};
use crate::structure::SimpleList;

pub const FORMAT_VERSION: &str = "1";

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Field,
    Algebra,
    Module,
    Report,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub format_version: String,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub payload: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    /// `rationals`, `number_field`, `prime_field` or `finite_field`.
    pub kind: String,
    pub characteristic: String,
    /// Monic modulus, little-endian; absent for prime fields and ℚ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub field: FieldDoc,
    pub labels: Vec<String>,
    /// `c[i][j][l]` flattened at `(i * dim + j) * dim + l`.
    pub constants: Vec<Value>,
    pub unit: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub algebra: AlgebraDoc,
    pub dim: usize,
    /// One row-major matrix (list of rows) per algebra basis element.
    pub actions: Vec<Vec<Vec<Value>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDoc {
    pub report: String,
    pub body: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDoc {
    pub source: FieldDoc,
    pub target: FieldDoc,
    pub generator_image: Value,
}

// ---------------------------------------------------------------------------
// fields and scalars

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|_| doc_err(format!("not an exact rational: {s:?}")))
}

fn parse_int(s: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|_| doc_err(format!("not a non-negative integer: {s:?}")))
}

pub fn field_to_doc(f: &Field) -> FieldDoc {
    let kind = match f.kind() {
        FieldKind::Rationals => "rationals",
        FieldKind::NumberField => "number_field",
        FieldKind::PrimeField => "prime_field",
        FieldKind::FiniteField => "finite_field",
    };
    let modulus = match (f.kind(), f.modulus_coords()) {
        (FieldKind::Rationals | FieldKind::PrimeField, _) => None,
        (_, Coords::Rational(m)) => Some(m.iter().map(|c| c.to_string()).collect()),
        (_, Coords::Modular(m)) => Some(m.iter().map(|c| c.to_string()).collect()),
    };
    FieldDoc { kind: kind.into(), characteristic: f.characteristic().to_string(), modulus }
}

pub fn field_from_doc(d: &FieldDoc) -> Result<Field> {
    let p = parse_int(&d.characteristic)?;
    let need_modulus = || d.modulus.as_ref().ok_or_else(|| doc_err(format!("{} requires a modulus", d.kind)));
    let forbid_modulus = || match d.modulus {
        Some(_) => Err(doc_err(format!("{} takes no modulus", d.kind))),
        None => Ok(()),
    };
    match d.kind.as_str() {
        "rationals" => {
            forbid_modulus()?;
            if p != 0 {
                return Err(doc_err("rationals have characteristic 0"));
            }
            Ok(Field::rationals())
        }
        "number_field" => {
            if p != 0 {
                return Err(doc_err("number fields have characteristic 0"));
            }
            let m = need_modulus()?.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
            if m.len() < 3 {
                return Err(doc_err("number field modulus must have degree at least 2"));
            }
            Field::number_field(m)
        }
        "prime_field" => {
            forbid_modulus()?;
            Field::prime(p)
        }
        "finite_field" => {
            let m = need_modulus()?.iter().map(|c| parse_int(c)).collect::<Result<Vec<_>>>()?;
            if m.len() < 3 {
                return Err(doc_err("finite field modulus must have degree at least 2"));
            }
            Field::finite_with_modulus(p, m)
        }
        other => Err(doc_err(format!("unknown field kind {other:?}"))),
    }
}

pub fn scalar_to_json(a: &FieldElement) -> Value {
    let f = a.field();
    match a.coords() {
        Coords::Rational(c) if f.degree() == 1 => Value::String(c[0].to_string()),
        Coords::Modular(c) if f.degree() == 1 => Value::String(c[0].to_string()),
        Coords::Rational(c) => Value::Array(c.iter().map(|x| Value::String(x.to_string())).collect()),
        Coords::Modular(c) => Value::Array(c.iter().map(|&x| Value::from(x)).collect()),
    }
}

pub fn scalar_from_json(f: &Field, v: &Value) -> Result<FieldElement> {
    let d = f.degree();
    let coords = match (f.is_finite(), v) {
        (false, Value::String(s)) if d == 1 => Coords::Rational(vec![parse_rational(s)?]),
        (true, Value::String(s)) if d == 1 => {
            let x = parse_int(s)?;
            if x >= f.characteristic() {
                return Err(doc_err(format!("{x} is not reduced modulo {}", f.characteristic())));
            }
            Coords::Modular(vec![x])
        }
        (false, Value::Array(xs)) if d > 1 => Coords::Rational(
            xs.iter()
                .map(|x| x.as_str().ok_or_else(|| doc_err("number field coordinates must be strings")).and_then(parse_rational))
                .collect::<Result<_>>()?,
        ),
        (true, Value::Array(xs)) if d > 1 => Coords::Modular(
            xs.iter()
                .map(|x| x.as_u64().ok_or_else(|| doc_err("finite field coordinates must be integers")))
                .collect::<Result<_>>()?,
        ),
        _ => return Err(doc_err(format!("malformed scalar {v} for {}", f.name()))),
    };
    f.element(coords).map_err(|e| doc_err(format!("scalar {v}: {e}")))
}

// ---------------------------------------------------------------------------
// algebras, modules, embeddings

pub fn algebra_to_doc(a: &AlgebraDesc) -> AlgebraDoc {
    AlgebraDoc {
        field: field_to_doc(a.field()),
        labels: a.labels().to_vec(),
        constants: a.constants().iter().map(scalar_to_json).collect(),
        unit: a.unit().iter().map(scalar_to_json).collect(),
    }
}

/// Decodes an algebra; shape is checked, axioms are not (see
/// [`crate::algebra::algebra_validate`]).
pub fn algebra_from_doc(d: &AlgebraDoc) -> Result<AlgebraDesc> {
    let f = field_from_doc(&d.field)?;
    let constants = d.constants.iter().map(|v| scalar_from_json(&f, v)).collect::<Result<Vec<_>>>()?;
    let unit = d.unit.iter().map(|v| scalar_from_json(&f, v)).collect::<Result<Vec<_>>>()?;
    AlgebraDesc::new(&f, d.labels.clone(), constants, unit)
}

pub fn matrix_to_json(m: &Matrix) -> Vec<Vec<Value>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| scalar_to_json(m.get(i, j))).collect()).collect()
}

pub fn matrix_from_json(f: &Field, rows: &[Vec<Value>], cols: usize) -> Result<Matrix> {
    let mut data = Vec::with_capacity(rows.len() * cols);
    for r in rows {
        if r.len() != cols {
            return Err(doc_err(format!("matrix row of length {} where {cols} expected", r.len())));
        }
        for v in r {
            data.push(scalar_from_json(f, v)?);
        }
    }
    Matrix::new(f, rows.len(), cols, data)
}

pub fn module_to_doc(m: &ModuleDesc) -> ModuleDoc {
    ModuleDoc {
        algebra: algebra_to_doc(m.algebra()),
        dim: m.dim(),
        actions: m.actions().iter().map(matrix_to_json).collect(),
    }
}

/// Decodes a module; shape is checked, the relations are not (see
/// [`crate::module::module_validate`]).
pub fn module_from_doc(d: &ModuleDoc) -> Result<ModuleDesc> {
    let a = Arc::new(algebra_from_doc(&d.algebra)?);
    let f = a.field().clone();
    let actions = d.actions.iter().map(|m| matrix_from_json(&f, m, d.dim)).collect::<Result<Vec<_>>>()?;
    ModuleDesc::new(a, d.dim, actions)
}

pub fn embedding_to_doc(e: &FieldEmbedding) -> EmbeddingDoc {
    EmbeddingDoc {
        source: field_to_doc(e.source()),
        target: field_to_doc(e.target()),
        generator_image: scalar_to_json(e.generator_image()),
    }
}

pub fn embedding_from_doc(d: &EmbeddingDoc) -> Result<FieldEmbedding> {
    let source = field_from_doc(&d.source)?;
    let target = field_from_doc(&d.target)?;
    let image = scalar_from_json(&target, &d.generator_image)?;
    FieldEmbedding::new(&source, &target, image)
}

// ---------------------------------------------------------------------------
// reports

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

pub fn simple_list_body(list: &SimpleList) -> Value {
    serde_json::json!({
        "algebra_dim": list.algebra.dim(),
        "radical_dim": list.radical_dim(),
        "simples": list.entries.iter().map(|(s, k)| serde_json::json!({
            "multiplicity": k,
            "module": to_value(&module_to_doc(s)),
        })).collect::<Vec<_>>(),
    })
}

pub fn split_report_body(r: &SplitReport) -> Value {
    to_value(r)
}

pub fn splitting_field_body(r: &SplittingFieldResult) -> Value {
    serde_json::json!({
        "field": to_value(&field_to_doc(&r.field)),
        "degree": r.degree,
        "iterations": r.iterations,
        "tower": r.tower.iter().map(|e| to_value(&embedding_to_doc(e))).collect::<Vec<_>>(),
        "certificate": to_value(&r.certificate),
    })
}

// ---------------------------------------------------------------------------
// documents

impl Document {
    fn wrap(kind: Kind, name: Option<String>, payload: Value) -> Document {
        Document { format_version: FORMAT_VERSION.into(), kind, name, payload }
    }

    pub fn field(name: Option<String>, f: &Field) -> Document {
        Document::wrap(Kind::Field, name, to_value(&field_to_doc(f)))
    }

    pub fn algebra(name: Option<String>, a: &AlgebraDesc) -> Document {
        Document::wrap(Kind::Algebra, name, to_value(&algebra_to_doc(a)))
    }

    pub fn module(name: Option<String>, m: &ModuleDesc) -> Document {
        Document::wrap(Kind::Module, name, to_value(&module_to_doc(m)))
    }

    pub fn report(name: Option<String>, report: &str, body: Value) -> Document {
        Document::wrap(Kind::Report, name, to_value(&ReportDoc { report: report.into(), body }))
    }

    pub fn parse(text: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(text).map_err(|e| doc_err(e.to_string()))?;
        if doc.format_version != FORMAT_VERSION {
            return Err(doc_err(format!("unsupported format_version {:?}", doc.format_version)));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    fn payload_as<T: for<'de> Deserialize<'de>>(&self, kind: Kind) -> Result<T> {
        if self.kind != kind {
            return Err(doc_err(format!("expected a {kind:?} document, found {:?}", self.kind).to_lowercase()));
        }
        serde_json::from_value(self.payload.clone()).map_err(|e| doc_err(e.to_string()))
    }

    pub fn to_field(&self) -> Result<Field> {
        field_from_doc(&self.payload_as(Kind::Field)?)
    }

    pub fn to_algebra(&self) -> Result<AlgebraDesc> {
        algebra_from_doc(&self.payload_as(Kind::Algebra)?)
    }

    pub fn to_module(&self) -> Result<ModuleDesc> {
        module_from_doc(&self.payload_as(Kind::Module)?)
    }

    pub fn to_report(&self) -> Result<ReportDoc> {
        self.payload_as(Kind::Report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{cyclic_group_table, group_algebra, matrix_algebra, quaternion_algebra};
    use crate::module::{column_module, regular_module};

    fn round_trip(d: &Document) -> Document {
        let text = d.to_json();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back.to_json(), text);
        back
    }

    #[test]
    fn fields_round_trip() {
        for f in [
            Field::rationals(),
            Field::prime(7).unwrap(),
            Field::finite(2, 4).unwrap(),
            Field::finite(3, 2).unwrap(),
            Field::number_field_int(&[1, 0, 1]).unwrap(),
            Field::number_field(vec![
                "-1/2".parse().unwrap(),
                "0".parse().unwrap(),
                "1".parse().unwrap(),
            ])
            .unwrap(),
        ] {
            let d = round_trip(&Document::field(None, &f));
            assert_eq!(d.to_field().unwrap(), f);
        }
    }

    #[test]
    fn scalar_encodings() {
        let q = Field::rationals();
        let x = &q.from_int(3) * &q.from_int(4).inv().unwrap();
        assert_eq!(scalar_to_json(&x), Value::String("3/4".into()));
        let f4 = Field::finite(2, 2).unwrap();
        assert_eq!(scalar_to_json(&f4.generator()), serde_json::json!([0, 1]));
        let qi = Field::number_field_int(&[1, 0, 1]).unwrap();
        assert_eq!(scalar_to_json(&qi.generator()), serde_json::json!(["0", "1"]));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(scalar_from_json(&f5, &Value::String("3".into())).unwrap(), f5.from_int(3));
        assert!(scalar_from_json(&f5, &Value::String("7".into())).is_err());
        assert!(scalar_from_json(&f4, &serde_json::json!([0, 1, 1])).is_err());
        assert!(scalar_from_json(&q, &Value::String("1/0".into())).is_err());
    }

    #[test]
    fn algebras_and_modules_round_trip() {
        let q = Field::rationals();
        let h = quaternion_algebra(&q.from_int(-1), &q.from_int(-1), &q).unwrap();
        let d = round_trip(&Document::algebra(Some("quaternions".into()), &h));
        assert_eq!(d.to_algebra().unwrap(), h);
        let f3 = Field::finite(3, 2).unwrap();
        let c3 = Arc::new(group_algebra(&cyclic_group_table(3), &f3).unwrap());
        let reg = regular_module(&c3);
        let d = round_trip(&Document::module(None, &reg));
        assert_eq!(d.to_module().unwrap(), reg);
        let col = column_module(2, &Field::number_field_int(&[1, 1, 1]).unwrap()).unwrap();
        assert_eq!(round_trip(&Document::module(None, &col)).to_module().unwrap(), col);
        let m2 = matrix_algebra(2, &Field::prime(2).unwrap()).unwrap();
        let zero = ModuleDesc::zero(Arc::new(m2));
        assert_eq!(round_trip(&Document::module(None, &zero)).to_module().unwrap(), zero);
    }

    #[test]
    fn strict_schema() {
        let f = Document::field(None, &Field::rationals()).to_json();
        let extra = f.replacen("\"kind\"", "\"colour\": \"red\",\n  \"kind\"", 1);
        assert!(Document::parse(&extra).is_err());
        let inner = f.replacen("\"characteristic\"", "\"extra\": 1, \"characteristic\"", 1);
        assert!(Document::parse(&inner).unwrap().to_field().is_err());
        let v2 = f.replace("\"format_version\": \"1\"", "\"format_version\": \"2\"");
        assert!(Document::parse(&v2).is_err());
        let doc = Document::parse(&f).unwrap();
        assert!(doc.to_algebra().is_err());
    }

    #[test]
    fn embedding_round_trip() {
        let f4 = Field::finite(2, 2).unwrap();
        let f16 = Field::finite(2, 4).unwrap();
        let e = crate::field::embed_find(&f4, &f16).unwrap();
        let d = embedding_to_doc(&e);
        let text = serde_json::to_string(&d).unwrap();
        let back: EmbeddingDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(embedding_from_doc(&back).unwrap(), e);
    }
}
