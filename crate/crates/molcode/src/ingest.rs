//! Dataset ingestion with per-record rejects.
//!
//! Inputs are read in chunks of lines; each chunk is parsed on the current
//! rayon pool and then admitted in input order, so duplicate detection and
//! output order never depend on the worker count.

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Cursor, Read};
use std::path::Path;

use molcode_core::coverage::{DatasetRecord, DatasetTable};
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::molfile::parse_sdf_entry;
use crate::record::{is_skippable, parse_record_line};

const CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    /// Line-delimited JSON records.
    Records,
    /// MOL or SDF connection tables.
    Sdf,
}

impl InputFormat {
    pub fn detect(path: &str) -> InputFormat {
        let lower = path.to_ascii_lowercase();
        if lower.ends_with(".sdf") || lower.ends_with(".mol") || lower.ends_with(".sd") {
            InputFormat::Sdf
        } else {
            InputFormat::Records
        }
    }
}

/// A record that could not be admitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reject {
    pub source: String,
    pub line: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub reason: String,
}

/// Non-fatal note about an admitted record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub source: String,
    pub line: usize,
    pub id: String,
    pub message: String,
}

/// Lowercase hex SHA-256 of a file (or of already-buffered bytes for stdin).
pub fn sha256_hex(mut reader: impl Read) -> io::Result<String> {
    let mut h = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = reader.read(&mut buf)?;
        if n == 0 {
            break;
        }
        h.update(&buf[..n]);
    }
    Ok(hex::encode(h.finalize()))
}

/// An opened input: a reader plus the digest of its full contents.
pub struct Source {
    pub path: String,
    pub digest: String,
    pub format: InputFormat,
    reader: Box<dyn BufRead + Send>,
}

impl Source {
    /// Opens `path` (`-` for standard input, which is buffered in memory).
    /// Files are hashed in a separate streaming pass.
    pub fn open(path: &str) -> io::Result<Source> {
        Self::open_as(path, InputFormat::detect(path))
    }

    pub fn open_as(path: &str, format: InputFormat) -> io::Result<Source> {
        if path == "-" {
            let mut bytes = Vec::new();
            io::stdin().lock().read_to_end(&mut bytes)?;
            return Ok(Self::from_bytes(path, bytes, format));
        }
        let digest = sha256_hex(File::open(path)?)?;
        Ok(Source {
            path: path.to_string(),
            digest,
            format,
            reader: Box::new(BufReader::new(File::open(path)?)),
        })
    }

    pub fn from_bytes(name: &str, bytes: Vec<u8>, format: InputFormat) -> Source {
        let digest = sha256_hex(&bytes[..]).expect("in-memory read");
        Source {
            path: name.to_string(),
            digest,
            format,
            reader: Box::new(Cursor::new(bytes)),
        }
    }

    /// Dataset name: the file stem, or `stdin`.
    pub fn name(&self) -> String {
        if self.path == "-" {
            return "stdin".to_string();
        }
        Path::new(&self.path)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| self.path.clone())
    }
}

/// One unit of text to parse: a record line or an SDF entry.
struct Item {
    line: usize,
    text: String,
}

type Parsed = Result<(DatasetRecord, Vec<String>), (Option<String>, String)>;

fn guess_id(item: &Item, format: InputFormat) -> Option<String> {
    match format {
        InputFormat::Records => serde_json::from_str::<serde_json::Value>(&item.text)
            .ok()?
            .get("id")?
            .as_str()
            .map(str::to_string),
        InputFormat::Sdf => item
            .text
            .lines()
            .next()
            .map(|l| l.trim().to_string())
            .filter(|s| !s.is_empty()),
    }
}

fn parse_item(item: &Item, format: InputFormat) -> Parsed {
    let fail = |e: molcode_core::MolError| (guess_id(item, format), e.to_string());
    match format {
        InputFormat::Records => {
            let p = parse_record_line(&item.text).map_err(fail)?;
            let notes = p
                .warnings
                .iter()
                .map(|w| {
                    format!(
                        "atom {} exceeds its default valence by {}; hydrogens clamped to 0",
                        w.atom + 1,
                        w.excess
                    )
                })
                .collect();
            Ok((p.into_dataset_record().map_err(fail)?, notes))
        }
        InputFormat::Sdf => {
            let e = parse_sdf_entry(&item.text).map_err(fail)?;
            let mut id = e.mol.id().to_string();
            if id.is_empty() {
                id = format!("line{}", item.line);
            }
            let graph = e.mol.heavy_graph().map_err(fail)?;
            let mut r = DatasetRecord::new(id, graph);
            r.props = e.props;
            Ok((r, Vec::new()))
        }
    }
}

/// Streaming reader that admits records chunk by chunk.
pub struct Ingest {
    pub source: Source,
    seen: HashSet<(String, Option<String>)>,
    pub rejects: Vec<Reject>,
    pub warnings: Vec<Warning>,
    line_no: usize,
    sdf_buf: String,
    sdf_start: usize,
    done: bool,
}

impl Ingest {
    pub fn new(source: Source) -> Ingest {
        Ingest {
            source,
            seen: HashSet::new(),
            rejects: Vec::new(),
            warnings: Vec::new(),
            line_no: 0,
            sdf_buf: String::new(),
            sdf_start: 1,
            done: false,
        }
    }

    fn read_items(&mut self) -> io::Result<Vec<Item>> {
        let mut items = Vec::new();
        let mut line = String::new();
        while items.len() < CHUNK {
            line.clear();
            if self.source.reader.read_line(&mut line)? == 0 {
                self.done = true;
                if self.source.format == InputFormat::Sdf && !self.sdf_buf.trim().is_empty() {
                    items.push(Item {
                        line: self.sdf_start,
                        text: std::mem::take(&mut self.sdf_buf),
                    });
                }
                break;
            }
            self.line_no += 1;
            let text = line.trim_end_matches(['\n', '\r']);
            match self.source.format {
                InputFormat::Records => {
                    if !is_skippable(text) {
                        items.push(Item {
                            line: self.line_no,
                            text: text.to_string(),
                        });
                    }
                }
                InputFormat::Sdf => {
                    if text.trim_end() == "$$$$" {
                        items.push(Item {
                            line: self.sdf_start,
                            text: std::mem::take(&mut self.sdf_buf),
                        });
                        self.sdf_start = self.line_no + 1;
                    } else {
                        self.sdf_buf.push_str(text);
                        self.sdf_buf.push('\n');
                    }
                }
            }
        }
        Ok(items)
    }

    /// Next batch of admitted records, or `None` at end of input.
    pub fn next_chunk(&mut self) -> io::Result<Option<Vec<DatasetRecord>>> {
        if self.done {
            return Ok(None);
        }
        let items = self.read_items()?;
        let format = self.source.format;
        let parsed: Vec<Parsed> = items.par_iter().map(|it| parse_item(it, format)).collect();
        let mut out = Vec::with_capacity(parsed.len());
        for (item, p) in items.iter().zip(parsed) {
            match p {
                Ok((r, notes)) => {
                    if !self.seen.insert((r.id.clone(), r.conformer.clone())) {
                        self.rejects.push(Reject {
                            source: self.source.path.clone(),
                            line: item.line,
                            id: Some(r.id.clone()),
                            reason: match &r.conformer {
                                Some(c) => format!("duplicate record `{}` conformer `{c}`", r.id),
                                None => format!("duplicate record `{}`", r.id),
                            },
                        });
                        continue;
                    }
                    for message in notes {
                        self.warnings.push(Warning {
                            source: self.source.path.clone(),
                            line: item.line,
                            id: r.id.clone(),
                            message,
                        });
                    }
                    out.push(r);
                }
                Err((id, reason)) => self.rejects.push(Reject {
                    source: self.source.path.clone(),
                    line: item.line,
                    id,
                    reason,
                }),
            }
        }
        Ok(Some(out))
    }

    /// Reads everything into a table named after the source.
    pub fn into_table(mut self) -> io::Result<Loaded> {
        let mut table = DatasetTable::new(self.source.name());
        while let Some(chunk) = self.next_chunk()? {
            for r in chunk {
                table.push(r).expect("keys checked on admission");
            }
        }
        Ok(Loaded {
            table,
            path: self.source.path,
            digest: self.source.digest,
            rejects: self.rejects,
            warnings: self.warnings,
        })
    }
}

/// A fully loaded dataset.
pub struct Loaded {
    pub table: DatasetTable,
    pub path: String,
    pub digest: String,
    pub rejects: Vec<Reject>,
    pub warnings: Vec<Warning>,
}

pub fn load(path: &str) -> io::Result<Loaded> {
    Ingest::new(Source::open(path)?).into_table()
}

pub fn load_bytes(name: &str, bytes: Vec<u8>, format: InputFormat) -> io::Result<Loaded> {
    Ingest::new(Source::from_bytes(name, bytes, format)).into_table()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn records(text: &str) -> Loaded {
        load_bytes("t.jsonl", text.as_bytes().to_vec(), InputFormat::Records).unwrap()
    }

    #[test]
    fn three_lines() {
        let l = records(
            "# header\n{\"id\":\"a\",\"elements\":[\"C\"],\"bonds\":[],\"h\":\"auto\"}\n\
             {\"id\":\"b\",\"elements\":[\"O\"],\"bonds\":[],\"h\":\"auto\"}\n\n\
             {\"id\":\"c\",\"elements\":[\"N\"],\"bonds\":[],\"h\":\"auto\"}\n",
        );
        assert_eq!(l.table.len(), 3);
        assert!(l.rejects.is_empty());
    }

    #[test]
    fn malformed_and_duplicate() {
        let l = records(
            "{\"id\":\"a\",\"elements\":[\"C\"],\"bonds\":[],\"h\":\"auto\"}\n\
             {\"id\":\"b\",\"elements\":[\"C\"],\"bonds\":[[1,2,1]],\"h\":\"auto\"}\n\
             {\"id\":\"a\",\"elements\":[\"O\"],\"bonds\":[],\"h\":\"auto\"}\n",
        );
        assert_eq!(l.table.len(), 1);
        assert_eq!(l.rejects.len(), 2);
        assert_eq!((l.rejects[0].line, l.rejects[0].id.as_deref()), (2, Some("b")));
        assert!(l.rejects[1].reason.contains("duplicate"));
    }

    #[test]
    fn clamp_warning() {
        let l = records(
            "{\"id\":\"q\",\"elements\":[\"N\",\"C\",\"C\",\"C\",\"C\"],\"bonds\":[[1,2,1],[1,3,1],[1,4,1],[1,5,1]],\"h\":\"auto\"}\n",
        );
        assert_eq!(l.warnings.len(), 1);
        assert_eq!(l.table.len(), 1);
    }
}
