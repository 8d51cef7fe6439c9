//! Reading and writing documents, field shorthands and example fixtures.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde_json::Value;

use splitfield::corpus;
use splitfield::document::{field_from_doc, scalar_from_json, scalar_to_json, Document, FieldDoc};
use splitfield::field::{Field, FieldElement};
use splitfield::{Error, Result};

pub struct Output {
    path: Option<PathBuf>,
}

impl Output {
    pub fn new(path: Option<PathBuf>) -> Output {
        Output { path }
    }

    pub fn write(&self, doc: &Document) -> Result<()> {
        let text = doc.to_json();
        match &self.path {
            Some(p) => fs::write(p, text).map_err(|e| Error::Document(format!("{}: {e}", p.display()))),
            None => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::Document(format!("stdout: {e}"))),
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Document(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Error::Document(format!("{}: {e}", path.display())))
}

/// Reads a document from a path, or from stdin when the path is `-`.
pub fn read_document(path: &Path) -> Result<Document> {
    Document::parse(&read_text(path)?)
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..).take_while(|p| p * p <= q).find(|p| q.is_multiple_of(*p)).unwrap_or(q)
}

/// `Q`, `F<q>` for a prime power `q`, `Q[c0,c1,...,1]` for the number field
/// with that monic modulus, or a path to a field document.
pub fn parse_field(arg: &str) -> Result<Field> {
    let s = arg.trim();
    if s == "Q" {
        return Ok(Field::rationals());
    }
    if let Some(q) = s.strip_prefix('F').and_then(|r| r.parse::<u64>().ok()) {
        if q < 2 {
            return Err(Error::BadParams(format!("no field with {q} elements")));
        }
        let p = smallest_prime_factor(q);
        let (mut rest, mut m) = (q, 0);
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::BadParams(format!("{q} is not a prime power")));
        }
        return Field::finite(p, m);
    }
    if let Some(inner) = s.strip_prefix("Q[").and_then(|r| r.strip_suffix(']')) {
        let modulus = inner.split(',').map(|c| c.trim().to_string()).collect();
        return field_from_doc(&FieldDoc { kind: "number_field".into(), characteristic: "0".into(), modulus: Some(modulus) });
    }
    read_document(Path::new(s))?.to_field()
}

/// Reads a JSON list of vectors whose entries use the scalar encoding.
pub fn read_vectors(path: &Path, field: &Field) -> Result<Vec<Vec<FieldElement>>> {
    let v: Value = serde_json::from_str(&read_text(path)?).map_err(|e| Error::Document(e.to_string()))?;
    let rows = v.as_array().ok_or_else(|| Error::Document("basis must be a list of vectors".into()))?;
    rows.iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Document("basis vector must be a list".into()))?
                .iter()
                .map(|x| scalar_from_json(field, x))
                .collect()
        })
        .collect()
}

pub fn vectors_json(vs: &[Vec<FieldElement>]) -> Value {
    Value::Array(vs.iter().map(|v| Value::Array(v.iter().map(scalar_to_json).collect())).collect())
}

fn file_stem(name: &str) -> String {
    let mut s: String = name
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '_' })
        .collect();
    while s.contains("__") {
        s = s.replace("__", "_");
    }
    s.trim_matches('_').to_string()
}

/// Writes every bundled algebra and module as a document.
pub fn write_examples(dir: &Path) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Document(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir.join("algebras")).map_err(io_err)?;
    fs::create_dir_all(dir.join("modules")).map_err(io_err)?;
    for a in corpus::bundled_algebras() {
        let doc = Document::algebra(Some(a.name.clone()), &a.value);
        fs::write(dir.join("algebras").join(format!("{}.json", file_stem(&a.name))), doc.to_json()).map_err(io_err)?;
    }
    for m in corpus::bundled_modules() {
        let doc = Document::module(Some(m.name.clone()), &m.value);
        fs::write(dir.join("modules").join(format!("{}.json", file_stem(&m.name))), doc.to_json()).map_err(io_err)?;
    }
    Ok(())
}
