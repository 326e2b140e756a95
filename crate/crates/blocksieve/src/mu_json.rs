//! JSON form of magic unitaries.
//!
//! `{"rows": [ids], "cols": [ids], "dim": d, "entries": grid}` where `grid`
//! has one array per row, one `d × d` matrix per column, and each complex
//! number is a `[re, im]` pair.

use blocksieve_core::magic::{ComplexMatrix, MagicUnitary};
use blocksieve_core::VertexId;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::formats::ParseError;

type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
struct MuDocument {
    rows: Vec<String>,
    cols: Vec<String>,
    dim: usize,
    entries: Vec<Vec<JsonMatrix>>,
}

fn err(message: impl Into<String>) -> ParseError {
    ParseError {
        line: 1,
        column: 1,
        message: message.into(),
    }
}

pub fn parse_mu(text: &str) -> Result<MagicUnitary, ParseError> {
    let doc: MuDocument = serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let ids = |xs: &[String]| -> Result<Vec<VertexId>, ParseError> {
        xs.iter()
            .map(|s| {
                s.parse()
                    .map_err(|_| err(format!("invalid vertex id {s:?}")))
            })
            .collect()
    };
    let (rows, cols) = (ids(&doc.rows)?, ids(&doc.cols)?);
    if doc.entries.len() != rows.len() || doc.entries.iter().any(|r| r.len() != cols.len()) {
        return Err(err(format!(
            "entries must form a {}×{} grid",
            rows.len(),
            cols.len()
        )));
    }
    let mut entries = Vec::with_capacity(rows.len() * cols.len());
    for (a, row) in doc.entries.into_iter().enumerate() {
        for (x, m) in row.into_iter().enumerate() {
            if m.len() != doc.dim || m.iter().any(|r| r.len() != doc.dim) {
                return Err(err(format!("entry ({a}, {x}) is not {0}×{0}", doc.dim)));
            }
            let m = m
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|[re, im]| Complex64::new(re, im))
                        .collect()
                })
                .collect();
            entries.push(
                ComplexMatrix::from_rows(m).map_err(|e| err(format!("entry ({a}, {x}): {e}")))?,
            );
        }
    }
    MagicUnitary::new(rows, cols, doc.dim, entries).map_err(|e| err(e.to_string()))
}

pub fn write_mu(u: &MagicUnitary) -> String {
    let d = u.dim();
    let matrix = |m: &ComplexMatrix| -> JsonMatrix {
        (0..d)
            .map(|i| (0..d).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
            .collect()
    };
    let doc = MuDocument {
        rows: u.rows().iter().map(ToString::to_string).collect(),
        cols: u.cols().iter().map(ToString::to_string).collect(),
        dim: d,
        entries: (0..u.size())
            .map(|a| (0..u.size()).map(|x| matrix(u.entry(a, x))).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("magic unitaries serialise")
}
