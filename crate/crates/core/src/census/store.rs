use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Label;

/// Environment variable naming the default store file.
pub const STORE_ENV: &str = "TRISWEEP_STORE";

/// One discovered labeled type with how it was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StoreRecord {
    /// Hex digest of the fingerprint bytes.
    pub fingerprint: String,
    pub facets: Vec<Vec<Label>>,
    pub permutations: Vec<Vec<Label>>,
    pub seed: u64,
    pub lift_spec_digest: String,
}

/// Append-only record file: each record is a little-endian `u32` length
/// followed by that many bytes of JSON. The digest index is rebuilt on open.
#[derive(Debug)]
pub struct Store {
    path: Option<PathBuf>,
    file: Option<File>,
    index: HashSet<String>,
    records: Vec<StoreRecord>,
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

impl Store {
    pub fn in_memory() -> Self {
        Store {
            path: None,
            file: None,
            index: HashSet::new(),
            records: Vec::new(),
        }
    }

    /// Opens or creates the file at `path`. A truncated trailing record
    /// (from an interrupted append) is ignored.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut bytes = Vec::new();
        if path.exists() {
            File::open(&path).map_err(io)?.read_to_end(&mut bytes).map_err(io)?;
        }
        let mut store = Store::in_memory();
        let mut at = 0;
        while at + 4 <= bytes.len() {
            let len = u32::from_le_bytes(bytes[at..at + 4].try_into().expect("4 bytes")) as usize;
            if at + 4 + len > bytes.len() {
                break;
            }
            let rec: StoreRecord = serde_json::from_slice(&bytes[at + 4..at + 4 + len])
                .map_err(|e| Error::Parse(format!("store record at byte {at}: {e}")))?;
            store.index.insert(rec.fingerprint.clone());
            store.records.push(rec);
            at += 4 + len;
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(io)?;
        store.path = Some(path);
        store.file = Some(file);
        Ok(store)
    }

    /// The store named by [`STORE_ENV`], or an in-memory one.
    pub fn from_env() -> Result<Self> {
        match std::env::var_os(STORE_ENV) {
            Some(p) if !p.is_empty() => Store::open(p),
            _ => Ok(Store::in_memory()),
        }
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn contains(&self, digest: &str) -> bool {
        self.index.contains(digest)
    }

    pub fn records(&self) -> &[StoreRecord] {
        &self.records
    }

    /// Appends the record unless its fingerprint is already known; returns
    /// whether it was new.
    pub fn insert(&mut self, record: StoreRecord) -> Result<bool> {
        if self.index.contains(&record.fingerprint) {
            return Ok(false);
        }
        if let Some(f) = self.file.as_mut() {
            let json = serde_json::to_vec(&record).expect("serializable");
            let mut buf = (json.len() as u32).to_le_bytes().to_vec();
            buf.extend_from_slice(&json);
            f.write_all(&buf).map_err(io)?;
            f.flush().map_err(io)?;
        }
        self.index.insert(record.fingerprint.clone());
        self.records.push(record);
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(fp: &str) -> StoreRecord {
        StoreRecord {
            fingerprint: fp.into(),
            facets: vec![vec![1, 2]],
            permutations: vec![vec![2, 1]],
            seed: 0,
            lift_spec_digest: "00".into(),
        }
    }

    #[test]
    fn reopen_rebuilds_index() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("types.bin");
        let mut s = Store::open(&path).unwrap();
        assert!(s.insert(record("a")).unwrap());
        assert!(!s.insert(record("a")).unwrap());
        assert!(s.insert(record("b")).unwrap());
        drop(s);
        let s = Store::open(&path).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.contains("a") && s.contains("b"));
    }

    #[test]
    fn truncated_tail_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("types.bin");
        let mut s = Store::open(&path).unwrap();
        s.insert(record("a")).unwrap();
        drop(s);
        let mut f = OpenOptions::new().append(true).open(&path).unwrap();
        f.write_all(&[200, 0, 0, 0, b'{']).unwrap();
        assert_eq!(Store::open(&path).unwrap().len(), 1);
    }
}
