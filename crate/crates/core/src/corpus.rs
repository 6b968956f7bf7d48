//! Reading collections of named tables from text files.
//!
//! Format: the first non-comment line of a table is its order `n`, followed
//! by `n` rows of `n` whitespace-separated integers. Lines starting with `#`
//! are comments, and a `# name: <string>` comment directly before a table
//! names it. Tables are separated by at least one blank line.

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::table::{CayleyTable, Loop};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub file: PathBuf,
    pub line: usize,
    pub reason: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.file.display(), self.line, self.reason)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub table: CayleyTable,
    pub source: PathBuf,
    /// Position of the table within its file, from 0.
    pub index: usize,
    /// Line of the order header.
    pub line: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// Tables skipped in non-strict mode.
    pub diagnostics: Vec<ParseError>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Appends a table, suffixing its name if it collides with an earlier one.
    pub fn push(&mut self, mut entry: CorpusEntry) {
        let taken: HashSet<&str> = self.entries.iter().map(|e| e.name.as_str()).collect();
        if taken.contains(entry.name.as_str()) {
            let base = entry.name.clone();
            let mut k = 2;
            while taken.contains(format!("{base}_{k}").as_str()) {
                k += 1;
            }
            entry.name = format!("{base}_{k}");
        }
        self.entries.push(entry);
    }

    /// In-memory corpus from named loops.
    pub fn from_loops<S: AsRef<str>>(items: &[(S, Loop)]) -> Corpus {
        let mut c = Corpus::default();
        for (i, (name, l)) in items.iter().enumerate() {
            c.push(CorpusEntry {
                name: name.as_ref().to_string(),
                table: l.table().clone(),
                source: PathBuf::from("<memory>"),
                index: i,
                line: 0,
            });
        }
        c
    }
}

fn strip_name(line: &str) -> Option<&str> {
    line.strip_prefix('#')?.trim_start().strip_prefix("name:").map(str::trim)
}

/// Parses one file's text. In strict mode the first malformed table is an
/// error; otherwise it is recorded as a diagnostic and skipped.
pub fn parse_corpus_text(text: &str, source: &Path, strict: bool) -> Result<Corpus, ParseError> {
    let stem = source.file_stem().and_then(|s| s.to_str()).unwrap_or("table").to_string();
    let mut corpus = Corpus::default();
    let lines: Vec<&str> = text.lines().collect();
    let err = |line: usize, reason: String| ParseError { file: source.to_path_buf(), line, reason };
    let mut pending_name: Option<String> = None;
    let mut index = 0;
    let mut i = 0;
    while i < lines.len() {
        let raw = lines[i].trim();
        if raw.is_empty() {
            pending_name = None;
            i += 1;
            continue;
        }
        if raw.starts_with('#') {
            if let Some(name) = strip_name(raw) {
                pending_name = Some(name.to_string());
            }
            i += 1;
            continue;
        }
        let header_line = i + 1;
        let parsed = parse_table_at(&lines, &mut i, header_line).map_err(|(line, r)| err(line, r));
        match parsed {
            Ok(table) => {
                let name = pending_name.take().unwrap_or_else(|| format!("{stem}_{index}"));
                corpus.push(CorpusEntry {
                    name,
                    table,
                    source: source.to_path_buf(),
                    index,
                    line: header_line,
                });
                index += 1;
            }
            Err(e) if strict => return Err(e),
            Err(e) => {
                corpus.diagnostics.push(e);
                pending_name = None;
                // resynchronize at the next blank line
                while i < lines.len() && !lines[i].trim().is_empty() {
                    i += 1;
                }
            }
        }
    }
    if strict && corpus.is_empty() {
        return Err(err(0, "no tables found".into()));
    }
    Ok(corpus)
}

/// Reads the table starting at `lines[*i]`, leaving `*i` past its last row.
fn parse_table_at(
    lines: &[&str],
    i: &mut usize,
    header_line: usize,
) -> Result<CayleyTable, (usize, String)> {
    let header = lines[*i].trim();
    let n: usize = header
        .parse()
        .map_err(|_| (header_line, format!("expected table order, found {header:?}")))?;
    if n == 0 {
        return Err((header_line, "order must be positive".into()));
    }
    *i += 1;
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(n);
    while rows.len() < n {
        let Some(line) = lines.get(*i) else {
            return Err((*i, format!("expected {n} rows, found {}", rows.len())));
        };
        let line_no = *i + 1;
        let line = line.trim();
        if line.starts_with('#') {
            *i += 1;
            continue;
        }
        if line.is_empty() {
            return Err((line_no, format!("expected {n} rows, found {}", rows.len())));
        }
        let row: Result<Vec<usize>, _> = line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|_| (line_no, format!("non-integer entry in {line:?}")))?;
        if row.len() != n {
            return Err((line_no, format!("row has {} entries, expected {n}", row.len())));
        }
        rows.push(row);
        *i += 1;
    }
    CayleyTable::from_rows(&rows).map_err(|e| (header_line, e.to_string()))
}

/// Reads and concatenates corpora from files, in the given order.
pub fn read_corpus<P: AsRef<Path>>(paths: &[P], strict: bool) -> Result<Corpus, CorpusError> {
    let mut corpus = Corpus::default();
    for path in paths {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| CorpusError::Io { path: path.to_path_buf(), source })?;
        let part = parse_corpus_text(&text, path, strict)?;
        for e in part.entries {
            corpus.push(e);
        }
        corpus.diagnostics.extend(part.diagnostics);
    }
    Ok(corpus)
}
