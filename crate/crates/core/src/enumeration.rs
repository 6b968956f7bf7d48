//! Exhaustive generation of small left Bol loops up to isomorphism.
//!
//! Tables are normalized with row 0 and column 0 fixed to the identity, row 1
//! fixed to one of the few shapes a canonical table can have, and the rest
//! completed cell by cell. Each assignment re-examines exactly the left Bol
//! triples `a⊕(b⊕(a⊕c)) = (a⊕(b⊕a))⊕c` in which the new cell takes part:
//! fully evaluated triples are checked, and a triple whose only missing
//! lookup is the outermost one forces that cell. Completed tables are
//! deduplicated by canonical key.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::morphisms::{canonical_key, canonical_key_of_table, row_one_pattern, CanonicalKey};
use crate::table::{CayleyTable, Loop, MAX_ORDER};

const UNSET: u8 = u8::MAX;

#[derive(Debug, Clone, Error)]
pub enum EnumError {
    #[error("time budget exceeded; {} classes found before stopping", partial.len())]
    TimeBudgetExceeded { partial: Vec<Loop> },
    #[error("order {0} is too large for this enumerator")]
    OrderTooLarge(usize),
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("failed to build worker pool: {0}")]
    ThreadPool(String),
}

/// Cell visiting order of the depth-first search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FillOrder {
    #[default]
    RowMajor,
    ColumnMajor,
}

#[derive(Debug, Clone, Default)]
pub struct EnumOptions {
    pub non_associative_only: bool,
    pub fill_order: FillOrder,
    pub time_budget: Option<Duration>,
    /// Worker threads; `0` or `1` runs on the calling thread.
    pub threads: usize,
}

impl EnumOptions {
    /// Reads `GYROLOOP_THREADS` and `GYROLOOP_TIME_BUDGET_SECS`.
    pub fn from_env() -> Self {
        let var = |k: &str| std::env::var(k).ok().and_then(|v| v.trim().parse::<u64>().ok());
        EnumOptions {
            threads: var("GYROLOOP_THREADS").unwrap_or(1) as usize,
            time_budget: var("GYROLOOP_TIME_BUDGET_SECS").map(Duration::from_secs),
            ..Default::default()
        }
    }
}

#[derive(Clone)]
struct Search {
    n: usize,
    cells: Vec<u8>,
    /// `row_pos[r * n + v]`: column holding `v` in row `r`.
    row_pos: Vec<u8>,
    /// `col_pos[c * n + v]`: row holding `v` in column `c`.
    col_pos: Vec<u8>,
    trail: Vec<u16>,
    queue: Vec<u16>,
}

impl Search {
    fn new(n: usize) -> Option<Self> {
        let mut s = Search {
            n,
            cells: vec![UNSET; n * n],
            row_pos: vec![UNSET; n * n],
            col_pos: vec![UNSET; n * n],
            trail: Vec::new(),
            queue: Vec::new(),
        };
        for a in 0..n {
            if !s.assign(0, a, a) || !s.assign(a, 0, a) {
                return None;
            }
        }
        s.propagate().then_some(s)
    }

    #[inline]
    fn get(&self, r: usize, c: usize) -> u8 {
        self.cells[r * self.n + c]
    }

    fn assign(&mut self, r: usize, c: usize, v: usize) -> bool {
        let n = self.n;
        let cell = r * n + c;
        if self.cells[cell] != UNSET {
            return self.cells[cell] as usize == v;
        }
        if self.row_pos[r * n + v] != UNSET || self.col_pos[c * n + v] != UNSET {
            return false;
        }
        self.cells[cell] = v as u8;
        self.row_pos[r * n + v] = c as u8;
        self.col_pos[c * n + v] = r as u8;
        self.trail.push(cell as u16);
        self.queue.push(cell as u16);
        true
    }

    fn undo(&mut self, mark: usize) {
        let n = self.n;
        while self.trail.len() > mark {
            let cell = self.trail.pop().expect("above mark") as usize;
            let (r, c) = (cell / n, cell % n);
            let v = self.cells[cell] as usize;
            self.cells[cell] = UNSET;
            self.row_pos[r * n + v] = UNSET;
            self.col_pos[c * n + v] = UNSET;
        }
        self.queue.clear();
    }

    fn propagate(&mut self) -> bool {
        while let Some(cell) = self.queue.pop() {
            if !self.on_assigned(cell as usize) {
                self.queue.clear();
                return false;
            }
        }
        true
    }

    /// Visits every triple `(a, b, c)` that looks up the cell `(x, y)`, using
    /// the already known cells to locate it.
    fn on_assigned(&mut self, cell: usize) -> bool {
        let n = self.n;
        let (x, y) = (cell / n, cell % n);
        // LHS: t1 = a⊕c, t2 = b⊕t1, t3 = a⊕t2
        // RHS: s1 = b⊕a, s2 = a⊕s1, s3 = s2⊕c
        for b in 0..n {
            // (a, c) = (x, y)
            if !self.triple(x, b, y) {
                return false;
            }
        }
        for a in 0..n {
            // (b, t1) = (x, y)
            let c = self.row_pos[a * n + y];
            if c != UNSET && !self.triple(a, x, c as usize) {
                return false;
            }
        }
        for b in 0..n {
            // (a, t2) = (x, y)
            let t1 = self.row_pos[b * n + y];
            if t1 == UNSET {
                continue;
            }
            let c = self.row_pos[x * n + t1 as usize];
            if c != UNSET && !self.triple(x, b, c as usize) {
                return false;
            }
        }
        for c in 0..n {
            // (b, a) = (x, y)
            if !self.triple(y, x, c) {
                return false;
            }
        }
        // (a, s1) = (x, y)
        let b = self.col_pos[x * n + y];
        if b != UNSET {
            for c in 0..n {
                if !self.triple(x, b as usize, c) {
                    return false;
                }
            }
        }
        for a in 0..n {
            // (s2, c) = (x, y)
            let s1 = self.row_pos[a * n + x];
            if s1 == UNSET {
                continue;
            }
            let b = self.col_pos[a * n + s1 as usize];
            if b != UNSET && !self.triple(a, b as usize, y) {
                return false;
            }
        }
        true
    }

    fn triple(&mut self, a: usize, b: usize, c: usize) -> bool {
        if a == 0 || c == 0 {
            return true;
        }
        let n = self.n;
        let t1 = self.get(a, c);
        let t2 = if t1 == UNSET { UNSET } else { self.get(b, t1 as usize) };
        let t3 = if t2 == UNSET { UNSET } else { self.get(a, t2 as usize) };
        let s1 = self.get(b, a);
        let s2 = if s1 == UNSET { UNSET } else { self.get(a, s1 as usize) };
        let s3 = if s2 == UNSET { UNSET } else { self.get(s2 as usize, c) };
        match (t3 != UNSET, s3 != UNSET) {
            (true, true) => t3 == s3,
            (true, false) if s2 != UNSET => self.assign(s2 as usize, c, t3 as usize),
            (true, false) if s1 != UNSET => {
                // a⊕s1 = s2 must sit in the row of column c holding t3
                let r = self.col_pos[c * n + t3 as usize];
                r == UNSET || self.assign(a, s1 as usize, r as usize)
            }
            (false, true) if t2 != UNSET => self.assign(a, t2 as usize, s3 as usize),
            (false, true) if t1 != UNSET => {
                // b⊕t1 = t2 must be the column of row a holding s3
                let w = self.row_pos[a * n + s3 as usize];
                w == UNSET || self.assign(b, t1 as usize, w as usize)
            }
            _ => true,
        }
    }

    fn to_loop(&self) -> Loop {
        let t = CayleyTable::from_flat(self.n, self.cells.clone()).expect("complete table");
        Loop::new(t).expect("normalized Latin square is a loop")
    }
}

struct Runner<'a> {
    order: &'a [usize],
    /// Row 1 of every table in this branch; completed rows whose pattern is
    /// smaller cannot belong to a canonical representative.
    row_one: &'a [u8],
    deadline: Option<Instant>,
    expired: &'a AtomicBool,
    nodes: u64,
}

/// The row-1 pattern that row `r` would produce if its element were
/// labelled 1, or `None` while the row is incomplete.
fn row_pattern(s: &Search, r: usize) -> Option<Vec<u8>> {
    let n = s.n;
    let row = &s.cells[r * n..(r + 1) * n];
    if row.contains(&UNSET) {
        return None;
    }
    let mut seen = vec![false; n];
    let mut e_cycle = 0;
    let mut rest = Vec::new();
    for start in 0..n {
        let mut y = start;
        let mut len = 0;
        while !seen[y] {
            seen[y] = true;
            y = row[y] as usize;
            len += 1;
        }
        if start == 0 {
            e_cycle = len;
        } else if len > 0 {
            rest.push(len);
        }
    }
    rest.sort_unstable();
    Some(row_one_pattern(e_cycle, &rest))
}

impl Runner<'_> {
    fn out_of_time(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes % 1024 == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.expired.store(true, Ordering::Relaxed);
                }
            }
        }
        self.expired.load(Ordering::Relaxed)
    }

    fn rows_admissible(&self, s: &Search, rows: std::ops::Range<usize>) -> bool {
        rows.into_iter()
            .all(|r| row_pattern(s, r).map_or(true, |p| p.as_slice() >= self.row_one))
    }

    fn dfs(&mut self, s: &mut Search, pos: usize, leaves: &mut BTreeSet<CanonicalKey>) {
        if self.out_of_time() {
            return;
        }
        let n = s.n;
        let mut p = pos;
        while p < self.order.len() && s.cells[self.order[p]] != UNSET {
            p += 1;
        }
        if p == self.order.len() {
            if self.rows_admissible(s, 2..n) {
                let l = s.to_loop();
                debug_assert!(l.is_left_bol());
                leaves.insert(canonical_key(&l));
            }
            return;
        }
        let cell = self.order[p];
        let (r, c) = (cell / n, cell % n);
        if p > 0 {
            let prev = self.order[p - 1] / n;
            if prev != r && !self.rows_admissible(s, prev..prev + 1) {
                return;
            }
        }
        for v in 0..n {
            if s.row_pos[r * n + v] != UNSET || s.col_pos[c * n + v] != UNSET {
                continue;
            }
            let mark = s.trail.len();
            if s.assign(r, c, v) && s.propagate() {
                self.dfs(s, p + 1, leaves);
            }
            s.undo(mark);
        }
    }
}

fn fill_order(n: usize, order: FillOrder) -> Vec<usize> {
    let cells = (2..n).flat_map(|i| (1..n).map(move |j| (i, j)));
    match order {
        FillOrder::RowMajor => cells.map(|(i, j)| i * n + j).collect(),
        FillOrder::ColumnMajor => cells.map(|(i, j)| j * n + i).collect(),
    }
}

/// Every candidate row 1: a cycle of length `e ≥ 2` through the identity,
/// then the remaining cycles shortest first.
fn row_one_candidates(n: usize) -> Vec<Vec<u8>> {
    fn parts(left: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for k in min..=left {
            acc.push(k);
            parts(left - k, k, acc, out);
            acc.pop();
        }
    }
    let mut rows = Vec::new();
    for e in 2..=n {
        let mut rests = Vec::new();
        parts(n - e, 1, &mut Vec::new(), &mut rests);
        rows.extend(rests.iter().map(|rest| row_one_pattern(e, rest)));
    }
    rows.sort();
    rows
}

/// Canonical keys of all left Bol loops of order `n`, one per isomorphism
/// class, in ascending order.
///
/// Row 1 is fixed in turn to each pattern a canonical table can have, and
/// the search runs once per pattern. With `threads > 1` the patterns are
/// shared out over a worker pool.
pub fn left_bol_keys(n: usize, opts: &EnumOptions) -> Result<Vec<CanonicalKey>, EnumError> {
    if n == 0 {
        return Err(EnumError::ZeroOrder);
    }
    if n > MAX_ORDER {
        return Err(EnumError::OrderTooLarge(n));
    }
    let order = fill_order(n, opts.fill_order);
    let expired = AtomicBool::new(false);
    let deadline = opts.time_budget.map(|b| Instant::now() + b);
    let mut keys = BTreeSet::new();
    let Some(root) = Search::new(n) else {
        return Ok(Vec::new());
    };
    if n == 1 {
        keys.insert(canonical_key(&root.to_loop()));
    } else {
        let run = |row_one: &Vec<u8>| {
            let mut found = BTreeSet::new();
            let mut s = root.clone();
            let fixed = (1..n).all(|j| s.assign(1, j, row_one[j] as usize));
            if fixed && s.propagate() {
                let mut r = Runner { order: &order, row_one, deadline, expired: &expired, nodes: 0 };
                r.dfs(&mut s, 0, &mut found);
            }
            found
        };
        let candidates = row_one_candidates(n);
        let parts: Vec<BTreeSet<CanonicalKey>> = if opts.threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(opts.threads)
                .build()
                .map_err(|e| EnumError::ThreadPool(e.to_string()))?;
            pool.install(|| candidates.par_iter().map(run).collect())
        } else {
            candidates.iter().map(run).collect()
        };
        for part in parts {
            keys.extend(part);
        }
    }
    let bol = |k: &CanonicalKey| k.to_loop().expect("left Bol loops have two-sided inverses");
    let keep = |k: &CanonicalKey| !opts.non_associative_only || !bol(k).is_associative();
    let out: Vec<CanonicalKey> = keys.into_iter().filter(keep).collect();
    if expired.load(Ordering::Relaxed) {
        return Err(EnumError::TimeBudgetExceeded {
            partial: out.iter().map(bol).collect(),
        });
    }
    Ok(out)
}

/// One representative (its lex-min canonical table) per isomorphism class of
/// left Bol loops of order `n`, sorted by canonical key.
pub fn enumerate_left_bol(n: usize, non_associative_only: bool) -> Result<Vec<Loop>, EnumError> {
    let opts = EnumOptions { non_associative_only, ..EnumOptions::from_env() };
    enumerate_left_bol_with(n, &opts)
}

pub fn enumerate_left_bol_with(n: usize, opts: &EnumOptions) -> Result<Vec<Loop>, EnumError> {
    let keys = left_bol_keys(n, opts)?;
    Ok(keys.iter().map(|k| k.to_loop().expect("left Bol loops have two-sided inverses")).collect())
}

/// Largest order accepted by [`enumerate_all_loops`].
pub const ALL_LOOPS_MAX_ORDER: usize = 6;

/// All loops of order `n ≤ 6` up to isomorphism, as canonical tables sorted
/// by key.
///
/// Plain backtracking over normalized Latin squares with no algebraic
/// pruning; it serves as an independent oracle for the Bol enumerator. The
/// result is a list of tables because most loops of order 5 and 6 lack
/// two-sided inverses and so are not [`Loop`] values.
pub fn enumerate_all_loops(n: usize) -> Result<Vec<CayleyTable>, EnumError> {
    if n == 0 {
        return Err(EnumError::ZeroOrder);
    }
    if n > ALL_LOOPS_MAX_ORDER {
        return Err(EnumError::OrderTooLarge(n));
    }
    let mut cells: Vec<u8> =
        (0..n * n).map(|k| if k < n { k } else if k % n == 0 { k / n } else { 0 } as u8).collect();
    let mut keys = BTreeSet::new();
    fn fill(n: usize, k: usize, cells: &mut Vec<u8>, keys: &mut BTreeSet<CanonicalKey>) {
        if k == n * n {
            let t = CayleyTable::from_flat(n, cells.clone()).expect("entries in range");
            keys.insert(canonical_key_of_table(&t).expect("normalized Latin square"));
            return;
        }
        let (i, j) = (k / n, k % n);
        if i == 0 || j == 0 {
            return fill(n, k + 1, cells, keys);
        }
        for v in 0..n as u8 {
            let clash = (0..j).any(|jj| cells[i * n + jj] == v) || (0..i).any(|ii| cells[ii * n + j] == v);
            if !clash {
                cells[k] = v;
                fill(n, k + 1, cells, keys);
            }
        }
    }
    fill(n, 0, &mut cells, &mut keys);
    Ok(keys.iter().map(CanonicalKey::table).collect())
}

/// Corpus text for enumerated loops, with `# name: bol<n>_<index>` headers.
pub fn write_corpus(loops: &[Loop]) -> String {
    loops
        .iter()
        .enumerate()
        .map(|(i, l)| l.table().to_text(Some(&format!("bol{}_{}", l.order(), i))))
        .collect::<Vec<_>>()
        .join("\n")
}
