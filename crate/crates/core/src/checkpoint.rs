//! Append-only progress log for long searches.
//!
//! ```text
//! # gapdeck-search-log v1 kind=FULL_B s=2 k=4
//! n=23 shard=w11 range=0..1352078 status=clear
//! n=24 shard=w12 range=0..2704156 status=found pairs=1 witnesses=1100...:1101...
//! ```
//!
//! One line per finished shard. Reopening a log for the same search reuses
//! every recorded shard; a final line torn by an interrupted write is cut off.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::search::{LengthOutcome, Shard};

const MAGIC: &str = "# gapdeck-search-log v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShardStatus {
    Clear,
    Found {
        total_pairs: u64,
        witnesses: Vec<(String, String)>,
    },
}

impl ShardStatus {
    pub(crate) fn from_outcome(
        outcome: &LengthOutcome,
        _n: usize,
        render: impl Fn(u64) -> String,
    ) -> Self {
        if outcome.pairs.is_empty() {
            ShardStatus::Clear
        } else {
            ShardStatus::Found {
                total_pairs: outcome.total_pairs,
                witnesses: outcome
                    .pairs
                    .iter()
                    .map(|&(a, b)| (render(a), render(b)))
                    .collect(),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeRecord {
    pub n: usize,
    pub shard: Shard,
    pub range: (u64, u64),
    pub status: ShardStatus,
}

impl RangeRecord {
    pub fn to_line(&self) -> String {
        let status = match &self.status {
            ShardStatus::Clear => "status=clear".to_string(),
            ShardStatus::Found {
                total_pairs,
                witnesses,
            } => {
                let list: Vec<String> = witnesses.iter().map(|(a, b)| format!("{a}:{b}")).collect();
                format!(
                    "status=found pairs={total_pairs} witnesses={}",
                    list.join(",")
                )
            }
        };
        format!(
            "n={} shard={} range={}..{} {status}",
            self.n,
            self.shard.label(),
            self.range.0,
            self.range.1
        )
    }

    pub fn parse(line: &str) -> Option<Self> {
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for part in line.split_whitespace() {
            let (k, v) = part.split_once('=')?;
            fields.insert(k, v);
        }
        let n = fields.get("n")?.parse().ok()?;
        let shard = Shard::parse(fields.get("shard")?)?;
        let (lo, hi) = fields.get("range")?.split_once("..")?;
        let range = (lo.parse().ok()?, hi.parse().ok()?);
        let status = match *fields.get("status")? {
            "clear" => ShardStatus::Clear,
            "found" => ShardStatus::Found {
                total_pairs: fields.get("pairs")?.parse().ok()?,
                witnesses: fields
                    .get("witnesses")?
                    .split(',')
                    .map(|w| w.split_once(':').map(|(a, b)| (a.to_string(), b.to_string())))
                    .collect::<Option<Vec<_>>>()?,
            },
            _ => return None,
        };
        Some(Self {
            n,
            shard,
            range,
            status,
        })
    }

    pub(crate) fn to_outcome(
        &self,
        _n: usize,
        parse: impl Fn(&str) -> Result<u64>,
    ) -> Result<LengthOutcome> {
        Ok(match &self.status {
            ShardStatus::Clear => LengthOutcome::default(),
            ShardStatus::Found {
                total_pairs,
                witnesses,
            } => LengthOutcome {
                total_pairs: *total_pairs,
                pairs: witnesses
                    .iter()
                    .map(|(a, b)| Ok((parse(a)?, parse(b)?)))
                    .collect::<Result<_>>()?,
            },
        })
    }
}

#[derive(Debug)]
pub struct CheckpointLog {
    path: PathBuf,
    file: File,
    done: HashMap<(usize, Shard), RangeRecord>,
}

impl CheckpointLog {
    /// Opens (or creates) the log for the search described by `header`.
    pub fn open(path: &Path, header: &str) -> Result<Self> {
        let io = |e: std::io::Error| Error::Checkpoint(format!("{}: {e}", path.display()));
        let expected = format!("{MAGIC} {header}");
        let mut done = HashMap::new();
        let existing = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
            Err(e) => return Err(io(e)),
        };
        // bytes worth keeping: everything up to the last complete record
        let mut keep = 0;
        if !existing.is_empty() {
            let mut lines = existing.split_inclusive('\n');
            let first = lines.next().unwrap_or_default();
            if first.trim_end() != expected {
                return Err(Error::Checkpoint(format!(
                    "{} belongs to a different search (expected header {expected:?})",
                    path.display()
                )));
            }
            keep = first.len();
            let mut rest = lines.enumerate().peekable();
            while let Some((i, line)) = rest.next() {
                let complete = line.ends_with('\n');
                match RangeRecord::parse(line.trim_end()) {
                    Some(rec) if complete => {
                        done.insert((rec.n, rec.shard), rec);
                        keep += line.len();
                    }
                    _ if line.trim().is_empty() && complete => keep += line.len(),
                    _ if rest.peek().is_none() => {}
                    _ => {
                        return Err(Error::Checkpoint(format!(
                            "{}:{}: unreadable record {:?}",
                            path.display(),
                            i + 2,
                            line.trim_end()
                        )))
                    }
                }
            }
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .map_err(io)?;
        if existing.is_empty() {
            writeln!(file, "{expected}").map_err(io)?;
        } else if keep < existing.len() {
            // drop a record torn by an interrupted write
            file.set_len(keep as u64).map_err(io)?;
        } else if !existing.ends_with('\n') {
            writeln!(file).map_err(io)?;
        }
        Ok(Self {
            path: path.to_path_buf(),
            file,
            done,
        })
    }

    pub fn lookup(&self, n: usize, shard: Shard) -> Option<&RangeRecord> {
        self.done.get(&(n, shard))
    }

    pub fn append(&mut self, record: &RangeRecord) -> Result<()> {
        writeln!(self.file, "{}", record.to_line())
            .and_then(|_| self.file.sync_data())
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", self.path.display())))?;
        self.done.insert((record.n, record.shard), record.clone());
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.done.len()
    }

    pub fn is_empty(&self) -> bool {
        self.done.is_empty()
    }
}
