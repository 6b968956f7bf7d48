//! Batch classification of a corpus and report output.
//!
//! Every entry gets a row of flags. The summary counts, per order, the
//! isomorphism classes of non-degenerate gyrogroups (`alpha`) and of
//! non-degenerate gyrocommutative gyrogroups (`beta`).

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{Corpus, CorpusEntry};
use crate::gyration::gyration_table;
use crate::morphisms::canonical_key;
use crate::structure::{commutators, generated_subsystem};
use crate::table::Loop;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub order: usize,
    pub is_loop: bool,
    pub is_left_bol: bool,
    pub is_moufang: bool,
    pub is_group: bool,
    pub is_gyrogroup: bool,
    pub is_gyrocommutative: bool,
    pub non_identity_gyrator_count: Option<usize>,
    pub gyrators_closed: Option<bool>,
    pub derived_order: Option<usize>,
    pub derived_is_subgroup: Option<bool>,
    pub derived_is_normal: Option<bool>,
    pub canonical_key: Option<String>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub order: usize,
    pub alpha: usize,
    pub beta: usize,
    /// `complete`, or `unknown`/`partial` for orders whose Bol loops are not
    /// classified (24, and 27 and 30 respectively).
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub rows: Vec<ReportRow>,
    pub summary: Vec<SummaryRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown report format {other:?}")),
        }
    }
}

struct Classified {
    row: ReportRow,
    key: Option<Vec<u8>>,
}

fn classify_entry(entry: &CorpusEntry) -> Classified {
    let blank = |note: String| ReportRow {
        name: entry.name.clone(),
        order: entry.table.order(),
        is_loop: false,
        is_left_bol: false,
        is_moufang: false,
        is_group: false,
        is_gyrogroup: false,
        is_gyrocommutative: false,
        non_identity_gyrator_count: None,
        gyrators_closed: None,
        derived_order: None,
        derived_is_subgroup: None,
        derived_is_normal: None,
        canonical_key: None,
        note,
    };
    let l = match Loop::new(entry.table.clone()) {
        Ok(l) => l,
        Err(e) => return Classified { row: blank(e.to_string()), key: None },
    };
    let p = gyration_table(&l);
    let key = canonical_key(&l);
    let mut row = blank(String::new());
    row.is_loop = true;
    row.is_left_bol = p.is_left_bol;
    row.is_moufang = p.is_moufang;
    row.is_group = p.is_group;
    row.is_gyrogroup = p.is_gyrogroup;
    row.is_gyrocommutative = p.is_gyrocommutative;
    row.canonical_key = Some(key.digest());
    if p.gyrators_bijective {
        row.non_identity_gyrator_count = Some(p.non_identity_count());
        row.gyrators_closed = Some(p.gyrators_closed);
    }
    if p.is_gyrogroup {
        let d = generated_subsystem(&l, &commutators(&l));
        row.derived_order = Some(d.len());
        row.derived_is_subgroup = Some(d.is_subgroup());
        row.derived_is_normal = Some(d.is_normal().is_ok());
    } else if let Some(f) = p.gyro_failure {
        row.note = f.to_string();
    }
    Classified { row, key: Some(key.as_bytes().to_vec()) }
}

fn order_status(n: usize) -> &'static str {
    match n {
        24 => "unknown",
        27 | 30 => "partial",
        _ => "complete",
    }
}

fn summarize(items: &[Classified]) -> Vec<SummaryRow> {
    let mut alpha: BTreeMap<usize, BTreeSet<&[u8]>> = BTreeMap::new();
    let mut beta: BTreeMap<usize, BTreeSet<&[u8]>> = BTreeMap::new();
    for it in items {
        alpha.entry(it.row.order).or_default();
        beta.entry(it.row.order).or_default();
        let (Some(key), true) = (&it.key, it.row.is_gyrogroup && !it.row.is_group) else {
            continue;
        };
        alpha.entry(it.row.order).or_default().insert(key);
        if it.row.is_gyrocommutative {
            beta.entry(it.row.order).or_default().insert(key);
        }
    }
    alpha
        .into_iter()
        .map(|(order, a)| SummaryRow {
            order,
            alpha: a.len(),
            beta: beta[&order].len(),
            status: order_status(order).to_string(),
        })
        .collect()
}

/// Classifies every entry, using up to `threads` workers. Row order follows
/// the corpus regardless of scheduling.
pub fn classify_with_threads(corpus: &Corpus, threads: usize) -> ClassificationReport {
    let items: Vec<Classified> = if threads > 1 {
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(|| corpus.entries.par_iter().map(classify_entry).collect()),
            Err(_) => corpus.entries.iter().map(classify_entry).collect(),
        }
    } else {
        corpus.entries.iter().map(classify_entry).collect()
    };
    let summary = summarize(&items);
    ClassificationReport { rows: items.into_iter().map(|c| c.row).collect(), summary }
}

/// Classifies with the worker count from `GYROLOOP_THREADS` (default 1).
pub fn classify(corpus: &Corpus) -> ClassificationReport {
    let threads = std::env::var("GYROLOOP_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(1);
    classify_with_threads(corpus, threads)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

pub const ROW_FIELDS: [&str; 15] = [
    "name",
    "order",
    "is_loop",
    "is_left_bol",
    "is_moufang",
    "is_group",
    "is_gyrogroup",
    "is_gyrocommutative",
    "non_identity_gyrator_count",
    "gyrators_closed",
    "derived_order",
    "derived_is_subgroup",
    "derived_is_normal",
    "canonical_key",
    "note",
];

pub const SUMMARY_FIELDS: [&str; 4] = ["order", "alpha", "beta", "status"];

/// CSV text: the row table, then (if any rows exist) a blank line and the
/// summary table.
pub fn render_csv(r: &ClassificationReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(ROW_FIELDS).expect("in-memory write");
    for row in &r.rows {
        w.write_record([
            row.name.clone(),
            row.order.to_string(),
            row.is_loop.to_string(),
            row.is_left_bol.to_string(),
            row.is_moufang.to_string(),
            row.is_group.to_string(),
            row.is_gyrogroup.to_string(),
            row.is_gyrocommutative.to_string(),
            opt(&row.non_identity_gyrator_count),
            opt(&row.gyrators_closed),
            opt(&row.derived_order),
            opt(&row.derived_is_subgroup),
            opt(&row.derived_is_normal),
            opt(&row.canonical_key),
            row.note.clone(),
        ])
        .expect("in-memory write");
    }
    let mut out = w.into_inner().expect("flush");
    if !r.summary.is_empty() {
        out.push(b'\n');
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SUMMARY_FIELDS).expect("in-memory write");
        for s in &r.summary {
            w.write_record([s.order.to_string(), s.alpha.to_string(), s.beta.to_string(), s.status.clone()])
                .expect("in-memory write");
        }
        out = w.into_inner().expect("flush");
    }
    String::from_utf8(out).expect("utf-8")
}

/// Pretty JSON object `{"rows": [...], "summary": [...]}` with a trailing newline.
pub fn render_json(r: &ClassificationReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("serializable");
    s.push('\n');
    s
}

pub fn render(r: &ClassificationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => render_csv(r),
        ReportFormat::Json => render_json(r),
    }
}

pub fn emit_report(r: &ClassificationReport, format: ReportFormat, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, render(r, format))
}
