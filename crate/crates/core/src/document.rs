//! JSON documents for schemas, operators, and points. Rationals are strings
//! (`"3"`, `"-2/5"`) so no precision is lost.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, Subspace};
use crate::operator::StructuredOperator;
use crate::point::FlagPoint;
use crate::rational::Rational;
use crate::schema::{CutFamily, CutId, FlagSchema, IndexKind, IndexSchema, Window};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutsDoc {
    EveryPosition,
    After(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemaDoc {
    pub index_kind: IndexKind,
    #[serde(default)]
    pub paired: bool,
    pub cuts: CutsDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDoc {
    /// Inclusive integer bounds; `null` for an empty window.
    pub window: Option<[i64; 2]>,
    #[serde(default)]
    pub tail_shift: i64,
    #[serde(default)]
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainDoc {
    pub cut: i64,
    /// Basis vectors as rows, in window coordinates.
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub window: Option<[i64; 2]>,
    pub chain: Vec<ChainDoc>,
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse().map_err(|e: crate::rational::ParseRationalError| Error::Document(e.to_string()))
}

fn parse_rows(rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>> {
    rows.iter().map(|r| r.iter().map(|x| parse_rational(x)).collect()).collect()
}

fn rows_to_strings(m: &DenseMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(|x| x.to_string()).collect()).collect()
}

fn window_from(kind: IndexKind, w: Option<[i64; 2]>) -> Result<Window> {
    match w {
        None => Ok(Window::empty()),
        Some([lo, hi]) if lo <= hi => Ok(Window::new(kind, lo, hi)),
        Some([lo, hi]) => Err(Error::Document(format!("window [{lo}, {hi}] has lo > hi"))),
    }
}

fn window_to(w: &Window) -> Option<[i64; 2]> {
    w.bounds().map(|(a, b)| [a, b])
}

impl SchemaDoc {
    pub fn from_schema(s: &FlagSchema) -> SchemaDoc {
        SchemaDoc {
            index_kind: s.kind(),
            paired: s.index.paired,
            cuts: match &s.cuts {
                CutFamily::EveryPosition => CutsDoc::EveryPosition,
                CutFamily::Finite(v) => CutsDoc::After(v.clone()),
            },
        }
    }

    pub fn to_schema(&self) -> Result<FlagSchema> {
        let index = IndexSchema::new(self.index_kind, self.paired)?;
        let cuts = match &self.cuts {
            CutsDoc::EveryPosition => CutFamily::EveryPosition,
            CutsDoc::After(v) => CutFamily::Finite(v.clone()),
        };
        FlagSchema::new(index, cuts)
    }
}

impl OperatorDoc {
    pub fn from_operator(f: &StructuredOperator) -> OperatorDoc {
        OperatorDoc { window: window_to(&f.window()), tail_shift: f.tail_shift(), matrix: rows_to_strings(f.matrix()) }
    }

    pub fn to_operator(&self, schema: &FlagSchema) -> Result<StructuredOperator> {
        let window = window_from(schema.kind(), self.window)?;
        let rows = parse_rows(&self.matrix)?;
        let n = window.len(schema.kind());
        let m = if rows.is_empty() { DenseMatrix::zeros(0, 0) } else { DenseMatrix::from_rows(rows)? };
        if m.rows() != n {
            return Err(Error::Document(format!("window {window} has {n} indices, matrix has {} rows", m.rows())));
        }
        StructuredOperator::new(schema.clone(), window, self.tail_shift, m)
    }
}

impl PointDoc {
    pub fn from_point(p: &FlagPoint) -> PointDoc {
        PointDoc {
            window: window_to(&p.window()),
            chain: p
                .members()
                .iter()
                .map(|m| ChainDoc { cut: m.cut.after, basis: rows_to_strings(m.space.basis()) })
                .collect(),
        }
    }

    pub fn to_point(&self, schema: &FlagSchema) -> Result<FlagPoint> {
        let window = window_from(schema.kind(), self.window)?;
        let n = window.len(schema.kind());
        let chain = self
            .chain
            .iter()
            .map(|c| Ok((CutId::after(c.cut), Subspace::span(n, &parse_rows(&c.basis)?)?)))
            .collect::<Result<Vec<_>>>()?;
        FlagPoint::new(schema.clone(), window, chain)
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

pub fn schema_from_json(text: &str) -> Result<FlagSchema> {
    parse_json::<SchemaDoc>(text)?.to_schema()
}

pub fn operator_from_json(schema: &FlagSchema, text: &str) -> Result<StructuredOperator> {
    parse_json::<OperatorDoc>(text)?.to_operator(schema)
}

pub fn point_from_json(schema: &FlagSchema, text: &str) -> Result<FlagPoint> {
    parse_json::<PointDoc>(text)?.to_point(schema)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_documents() {
        let text = r#"{"index_kind": "sato_split", "cuts": {"after": [-1]}}"#;
        let s = schema_from_json(text).unwrap();
        assert_eq!(s, FlagSchema::finite(IndexKind::SatoSplit, vec![-1]).unwrap());
        let text = r#"{"index_kind": "all_ints", "paired": true, "cuts": "every_position"}"#;
        let s = schema_from_json(text).unwrap();
        assert!(s.index.paired);
        assert_eq!(SchemaDoc::from_schema(&s).to_schema().unwrap(), s);
        assert!(schema_from_json(r#"{"index_kind": "all_ints", "cuts": {"after": [1, 1]}}"#).is_err());
        assert!(schema_from_json(r#"{"index_kind": "reals", "cuts": "every_position"}"#).is_err());
    }

    #[test]
    fn operator_documents_normalize() {
        let s = FlagSchema::finite(IndexKind::SatoSplit, vec![-1]).unwrap();
        let text = r#"{"window": [0, 1], "matrix": [["2/4"]]}"#;
        let f = operator_from_json(&s, text).unwrap();
        let doc = OperatorDoc::from_operator(&f);
        assert_eq!(doc.window, Some([1, 1]));
        assert_eq!(doc.matrix, vec![vec!["1/2".to_string()]]);
        assert_eq!(doc.to_operator(&s).unwrap(), f);
        assert!(operator_from_json(&s, r#"{"window": [-1, 1], "matrix": [["1", "2"], ["2", "4"]]}"#).is_err());
        assert!(operator_from_json(&s, r#"{"window": null, "tail_shift": 2}"#).is_ok());
    }

    #[test]
    fn point_documents() {
        let s = FlagSchema::finite(IndexKind::SatoSplit, vec![-1]).unwrap();
        let text = r#"{"window": [-1, 1], "chain": [{"cut": -1, "basis": [["2", "0"]]}]}"#;
        let p = point_from_json(&s, text).unwrap();
        let doc = PointDoc::from_point(&p);
        assert_eq!(doc.chain[0].basis, vec![vec!["1".to_string(), "0".to_string()]]);
        assert_eq!(doc.to_point(&s).unwrap(), p);
    }
}
