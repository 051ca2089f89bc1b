//! Append-only JSONL store of constructed codes.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::weights::{EnumeratorForm, EnumeratorParams, SelfDualType};

pub const EQUIVALENCE_UNCHECKED: &str = "unchecked";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    /// SHA-256 of the reduced row-echelon generator (see [`canonical_id`]).
    pub id: String,
    pub construction: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub self_dual: Option<SelfDualType>,
    pub params: EnumeratorParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trial: Option<u64>,
    pub equivalence: String,
    pub created_unix: u64,
}

impl CodeRecord {
    /// Records with equal keys have the same enumerator and are treated as
    /// duplicates.
    pub fn dedup_key(&self) -> (usize, EnumeratorParams) {
        (self.n, self.params.clone())
    }
}

/// Hash of the canonical generator: RREF rows as little-endian words, after the
/// length. Independent of the generator rows given.
pub fn canonical_id(m: &BitMatrix) -> String {
    let rref = m.reduce();
    let mut h = Sha256::new();
    h.update((rref.ncols() as u64).to_le_bytes());
    for r in rref.rows() {
        for w in r.words() {
            h.update(w.to_le_bytes());
        }
    }
    hex::encode(h.finalize())
}

pub fn now_unix() -> u64 {
    std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecordFilter {
    pub id: Option<String>,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub d: Option<usize>,
    pub form: Option<EnumeratorForm>,
    pub alpha: Option<i64>,
    pub beta: Option<i64>,
    pub gamma: Option<i64>,
}

impl RecordFilter {
    pub fn matches(&self, r: &CodeRecord) -> bool {
        fn ok<T: PartialEq>(want: &Option<T>, have: T) -> bool {
            want.as_ref().is_none_or(|w| *w == have)
        }
        ok(&self.id.as_deref(), r.id.as_str())
            && ok(&self.n, r.n)
            && ok(&self.k, r.k)
            && ok(&self.d, r.d)
            && ok(&self.form, r.params.form)
            && (self.alpha.is_none() || self.alpha == r.params.alpha)
            && (self.beta.is_none() || self.beta == r.params.beta)
            && (self.gamma.is_none() || self.gamma == r.params.gamma)
    }
}

#[derive(Clone, Debug)]
pub struct Store {
    path: PathBuf,
}

impl Store {
    pub fn new(path: impl AsRef<Path>) -> Self {
        Store { path: path.as_ref().to_path_buf() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records; a missing file is an empty store.
    pub fn load(&self) -> Result<Vec<CodeRecord>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec = serde_json::from_str(&line)
                .map_err(|e| Error::CorruptStore { line: i + 1, reason: e.to_string() })?;
            out.push(rec);
        }
        Ok(out)
    }

    pub fn append(&self, records: &[CodeRecord]) -> Result<()> {
        if records.is_empty() {
            return Ok(());
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let mut buf = String::new();
        for r in records {
            buf.push_str(&serde_json::to_string(r)?);
            buf.push('\n');
        }
        file.write_all(buf.as_bytes())?;
        Ok(())
    }

    /// Appends the records whose dedup key (and id) is not already stored.
    /// Returns the records actually written.
    pub fn append_new(&self, records: Vec<CodeRecord>, keep_duplicates: bool) -> Result<Vec<CodeRecord>> {
        let mut existing = self.load()?;
        let mut fresh = Vec::new();
        for r in records {
            if is_duplicate(&existing, &r, keep_duplicates) {
                continue;
            }
            existing.push(r.clone());
            fresh.push(r);
        }
        self.append(&fresh)?;
        Ok(fresh)
    }

    pub fn query(&self, filter: &RecordFilter) -> Result<Vec<CodeRecord>> {
        Ok(self.load()?.into_iter().filter(|r| filter.matches(r)).collect())
    }
}

/// Same enumerator key as a kept record; with `keep_duplicates`, only an
/// identical generator counts.
pub fn is_duplicate(kept: &[CodeRecord], r: &CodeRecord, keep_duplicates: bool) -> bool {
    kept.iter().any(|e| e.id == r.id || (!keep_duplicates && e.dedup_key() == r.dedup_key()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitVector;

    fn record(id: &str, beta: i64, gamma: i64) -> CodeRecord {
        CodeRecord {
            id: id.into(),
            construction: "bsqr(7)".into(),
            label: None,
            n: 68,
            k: 34,
            d: 12,
            self_dual: Some(SelfDualType::I),
            params: EnumeratorParams::new(EnumeratorForm::W68_2).with_beta_gamma(beta, Some(gamma)),
            seed: Some(1),
            trial: Some(0),
            equivalence: EQUIVALENCE_UNCHECKED.into(),
            created_unix: 0,
        }
    }

    #[test]
    fn append_query_and_dedup() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::new(dir.path().join("s.jsonl"));
        assert!(store.load().unwrap().is_empty());
        let written = store.append_new(vec![record("a", 111, 0), record("b", 111, 0), record("c", 118, 1)], false).unwrap();
        assert_eq!(written.len(), 2);
        let by_id = store.query(&RecordFilter { id: Some("c".into()), ..Default::default() }).unwrap();
        assert_eq!(by_id, vec![record("c", 118, 1)]);
        let g1 = store.query(&RecordFilter { n: Some(68), gamma: Some(1), ..Default::default() }).unwrap();
        assert_eq!(g1.len(), 1);
        let again = store.append_new(vec![record("b", 111, 0)], true).unwrap();
        assert_eq!(again.len(), 1);
        assert!(store.append_new(vec![record("b", 111, 0)], true).unwrap().is_empty());
    }

    #[test]
    fn corrupt_line_reports_position() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.jsonl");
        let store = Store::new(&path);
        store.append(&[record("a", 1, 0)]).unwrap();
        std::fs::OpenOptions::new().append(true).open(&path).unwrap().write_all(b"{not json\n").unwrap();
        assert!(matches!(store.load(), Err(Error::CorruptStore { line: 2, .. })));
    }

    #[test]
    fn id_ignores_row_order() {
        let a = BitMatrix::new(4, vec![BitVector::from_support(4, &[0, 1]), BitVector::from_support(4, &[2, 3])]).unwrap();
        let b = BitMatrix::new(4, vec![BitVector::from_support(4, &[0, 1, 2, 3]), BitVector::from_support(4, &[0, 1])]).unwrap();
        assert_eq!(canonical_id(&a), canonical_id(&b));
        assert_eq!(canonical_id(&a).len(), 64);
        let c = BitMatrix::new(4, vec![BitVector::from_support(4, &[0, 2])]).unwrap();
        assert_ne!(canonical_id(&a), canonical_id(&c));
    }
}
