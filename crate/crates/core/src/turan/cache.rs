use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

use super::canon::parse_canonical;
use super::has_subgraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TuranRecord {
    pub n: usize,
    pub h_canonical: String,
    pub ex_value: usize,
    pub witness_edges: Vec<[usize; 2]>,
    pub solver_version: String,
}

impl TuranRecord {
    /// One JSONL line, validated.
    pub fn from_line(line: &str) -> Result<Self> {
        let rec: TuranRecord = serde_json::from_str(line)?;
        rec.validate()?;
        Ok(rec)
    }

    pub fn witness(&self) -> Result<Graph> {
        Graph::from_edges(self.n, self.witness_edges.iter().map(|e| (e[0], e[1])))
    }

    /// Witness on `n` vertices with `ex_value` edges and no copy of `H`.
    pub fn validate(&self) -> Result<()> {
        if self.n > super::HARD_CAP {
            return Err(Error::Parse(format!(
                "n = {} beyond the solver limit",
                self.n
            )));
        }
        let h = parse_canonical(&self.h_canonical)?;
        let w = self.witness()?;
        if w.edge_count() != self.ex_value {
            return Err(Error::Parse(format!(
                "witness has {} edges, record says {}",
                w.edge_count(),
                self.ex_value
            )));
        }
        if h.edge_count() > 0 && has_subgraph(&w, &h) {
            return Err(Error::Parse("witness contains the forbidden graph".into()));
        }
        Ok(())
    }
}

/// Memo of solved `(n, H)` pairs, optionally backed by an append-only
/// JSONL file. Later lines win over earlier ones.
#[derive(Debug, Default)]
pub struct TuranCache {
    path: Option<PathBuf>,
    records: BTreeMap<(String, usize), TuranRecord>,
    skipped: usize,
}

impl TuranCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists; unreadable lines are skipped with a warning.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut cache = TuranCache {
            path: Some(path.clone()),
            ..Default::default()
        };
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e.into()),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    log::warn!("{}:{}: unreadable line skipped: {e}", path.display(), i + 1);
                    cache.skipped += 1;
                    continue;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            match TuranRecord::from_line(&line) {
                Ok(rec) => {
                    cache.records.insert((rec.h_canonical.clone(), rec.n), rec);
                }
                Err(e) => {
                    log::warn!(
                        "{}:{}: corrupt cache line skipped: {e}",
                        path.display(),
                        i + 1
                    );
                    cache.skipped += 1;
                }
            }
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    /// Lines ignored while loading.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, h_canonical: &str, n: usize) -> Option<&TuranRecord> {
        self.records.get(&(h_canonical.to_string(), n))
    }

    pub fn records(&self) -> impl Iterator<Item = &TuranRecord> {
        self.records.values()
    }

    pub fn insert(&mut self, rec: TuranRecord) -> Result<()> {
        if let Some(path) = &self.path {
            let mut f = OpenOptions::new().create(true).append(true).open(path)?;
            writeln!(f, "{}", serde_json::to_string(&rec)?)?;
        }
        self.records.insert((rec.h_canonical.clone(), rec.n), rec);
        Ok(())
    }

    /// Rewrites the backing file with one line per surviving record,
    /// sorted by pattern then `n`. Returns the number of lines written.
    pub fn compact(&mut self) -> Result<usize> {
        let Some(path) = &self.path else {
            return Ok(self.records.len());
        };
        let tmp = path.with_extension("jsonl.tmp");
        {
            let mut f = File::create(&tmp)?;
            for rec in self.records.values() {
                writeln!(f, "{}", serde_json::to_string(rec)?)?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        self.skipped = 0;
        Ok(self.records.len())
    }
}
