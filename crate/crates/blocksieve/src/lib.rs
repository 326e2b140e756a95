//! File formats, report rendering and the command-line driver for
//! `blocksieve-core`.

pub mod formats;
pub mod mu_json;
pub mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use blocksieve_core::anchored::zbar;
use blocksieve_core::{Graph, VertexId, VertexSet};

use crate::formats::{format_for_path, GraphDocument, GraphFormat, ParseError};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{origin}: parse error at {source}")]
    Parse { origin: String, source: ParseError },
    #[error(transparent)]
    Core(#[from] blocksieve_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Process exit code; all errors are at least 10.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 10,
            Error::Core(_) => 11,
            Error::Io { .. } => 12,
            Error::Usage(_) => 13,
            Error::Verification(_) => 14,
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads a graph from a path, or inline as `g6:<graph6>`.
pub fn load_graph(spec: &str) -> Result<GraphDocument, Error> {
    let parse = |text: &str, format| {
        GraphDocument::parse(text, format).map_err(|source| Error::Parse {
            origin: spec.to_string(),
            source,
        })
    };
    if let Some(inline) = spec.strip_prefix("g6:") {
        return parse(inline, GraphFormat::Graph6);
    }
    let path = Path::new(spec);
    parse(&read_file(path)?, format_for_path(path))
}

/// `cut:<id>`, `block:<id,...>` or `zbar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnchorSpec {
    Cut(VertexId),
    Block(VertexSet),
    Zbar,
}

impl FromStr for AnchorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = |v: &str| Error::Usage(format!("invalid vertex {v:?} in anchor {s:?}"));
        if s == "zbar" {
            return Ok(AnchorSpec::Zbar);
        }
        if let Some(v) = s.strip_prefix("cut:") {
            return v.trim().parse().map(AnchorSpec::Cut).map_err(|_| bad(v));
        }
        if let Some(vs) = s.strip_prefix("block:") {
            let set = vs
                .split(',')
                .map(|v| v.trim().parse().map_err(|_| bad(v)))
                .collect::<Result<_, _>>()?;
            return Ok(AnchorSpec::Block(set));
        }
        Err(Error::Usage(format!(
            "anchor must be cut:<id>, block:<id,...> or zbar, got {s:?}"
        )))
    }
}

impl AnchorSpec {
    /// The anchor vertex set; validity is checked by the caller.
    pub fn resolve(&self, g: &Graph) -> Result<VertexSet, Error> {
        Ok(match self {
            AnchorSpec::Cut(v) => VertexSet::from([*v]),
            AnchorSpec::Block(vs) => vs.clone(),
            AnchorSpec::Zbar => zbar(g)?.vertices,
        })
    }
}
