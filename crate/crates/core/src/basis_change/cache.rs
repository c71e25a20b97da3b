//! On-disk cache of transition matrices: one JSON document per matrix,
//! keyed by `(source, target, n)` and stamped with the library version and
//! a SHA-256 checksum of its payload.

use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::matrix::{BasisKey, BasisTag, TransitionMatrix};
use crate::error::{Error, Result};
use crate::scalar::{parse_fraction, to_fraction_string};
use crate::VERSION;

pub const DEFAULT_CACHE_DIR: &str = ".nestfock-cache";
pub const CACHE_DIR_ENV: &str = "NESTFOCK_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyOrder {
    pub source: Vec<BasisKey>,
    pub target: Vec<BasisKey>,
}

/// Everything in a matrix document except the checksum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixPayload {
    pub source: BasisTag,
    pub target: BasisTag,
    pub n: usize,
    pub version: String,
    pub triangularity: Option<String>,
    pub key_order: KeyOrder,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDocument {
    #[serde(flatten)]
    pub payload: MatrixPayload,
    pub checksum: String,
}

impl MatrixPayload {
    pub fn checksum(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("payload serializes");
        hex::encode(Sha256::digest(bytes))
    }
}

impl TransitionMatrix {
    pub fn to_document(&self) -> MatrixDocument {
        let payload = MatrixPayload {
            source: self.source,
            target: self.target,
            n: self.n,
            version: VERSION.to_string(),
            triangularity: self.triangularity.clone(),
            key_order: KeyOrder {
                source: self.source_keys.clone(),
                target: self.target_keys.clone(),
            },
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(to_fraction_string).collect())
                .collect(),
        };
        let checksum = payload.checksum();
        MatrixDocument { payload, checksum }
    }

    /// Rebuilds a matrix, verifying the checksum and the key order.
    pub fn from_document(doc: &MatrixDocument) -> Result<Self> {
        let p = &doc.payload;
        if p.checksum() != doc.checksum {
            return Err(Error::Cache(format!(
                "checksum mismatch for {}→{} n={}",
                p.source, p.target, p.n
            )));
        }
        if p.key_order.source != p.source.keys(p.n) || p.key_order.target != p.target.keys(p.n) {
            return Err(Error::Cache(format!(
                "unexpected key order for {}→{} n={}",
                p.source, p.target, p.n
            )));
        }
        let dim = p.key_order.source.len();
        if p.rows.len() != dim || p.rows.iter().any(|r| r.len() != p.key_order.target.len()) {
            return Err(Error::Cache("matrix shape does not match its key order".into()));
        }
        let rows = p
            .rows
            .iter()
            .map(|row| row.iter().map(|s| parse_fraction(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(TransitionMatrix {
            n: p.n,
            source: p.source,
            target: p.target,
            source_keys: p.key_order.source.clone(),
            target_keys: p.key_order.target.clone(),
            rows,
            triangularity: p.triangularity.clone(),
        })
    }
}

/// A directory of cached matrix documents.
#[derive(Clone, Debug)]
pub struct MatrixCache {
    dir: PathBuf,
}

impl MatrixCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        MatrixCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, source: BasisTag, target: BasisTag, n: usize) -> PathBuf {
        self.dir.join(format!("{source}-to-{target}-n{n}.json"))
    }

    pub fn store(&self, m: &TransitionMatrix) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(m.source, m.target, m.n);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(&m.to_document())?)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// `Ok(None)` when nothing is stored or the entry was written by another
    /// library version; an error when the entry is corrupt.
    pub fn load(&self, source: BasisTag, target: BasisTag, n: usize) -> Result<Option<TransitionMatrix>> {
        let path = self.path_for(source, target, n);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let doc: MatrixDocument =
            serde_json::from_slice(&bytes).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        if doc.payload.version != VERSION {
            return Ok(None);
        }
        if (doc.payload.source, doc.payload.target, doc.payload.n) != (source, target, n) {
            return Err(Error::Cache(format!(
                "{} holds a different matrix",
                path.display()
            )));
        }
        TransitionMatrix::from_document(&doc).map(Some)
    }

    /// Removes every cached document; returns how many were deleted.
    pub fn clear(&self) -> Result<usize> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(e) => e,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(e.into()),
        };
        let mut removed = 0;
        for entry in entries {
            let path = entry?.path();
            if path.extension().is_some_and(|x| x == "json") {
                fs::remove_file(path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}
