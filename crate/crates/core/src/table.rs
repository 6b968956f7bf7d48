//! Cayley tables and loops.
//!
//! A [`CayleyTable`] is any finite magma on `0..n`. A [`Loop`] is a table that
//! has been checked to be a Latin square with a two-sided identity and
//! two-sided inverses. Both are immutable once built.

use std::fmt;

use thiserror::Error;

/// Largest supported order. Elements are stored as `u8`.
pub const MAX_ORDER: usize = 255;

/// Where a Latin-square violation was found: the repeated symbol and the
/// row or column it repeats in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatinWitness {
    Row { row: usize, symbol: usize },
    Column { column: usize, symbol: usize },
}

impl fmt::Display for LatinWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatinWitness::Row { row, symbol } => write!(f, "symbol {symbol} repeats in row {row}"),
            LatinWitness::Column { column, symbol } => {
                write!(f, "symbol {symbol} repeats in column {column}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table is empty")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NonSquare { row: usize, len: usize, expected: usize },
    #[error("entry ({0},{1}) = {2} is out of range")]
    EntryOutOfRange(usize, usize, usize),
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("not a Latin square: {0}")]
    NotLatinSquare(LatinWitness),
    #[error("no two-sided identity element")]
    NoTwoSidedIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoTwoSidedInverse(usize),
    #[error("element index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },
}

/// An `n × n` table over `0..n`; entry `(i, j)` is `i ⊕ j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    n: usize,
    entries: Vec<u8>,
}

impl CayleyTable {
    /// Validates a square array of element indices. The Latin-square
    /// property is not required here.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        let n = rows.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        if n > MAX_ORDER {
            return Err(TableError::OrderTooLarge(n));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(TableError::NonSquare { row: i, len: row.len(), expected: n });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(TableError::EntryOutOfRange(i, j, v));
                }
                entries.push(v as u8);
            }
        }
        Ok(CayleyTable { n, entries })
    }

    /// Builds a table from row-major entries.
    pub fn from_flat(n: usize, entries: Vec<u8>) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::Empty);
        }
        if n > MAX_ORDER {
            return Err(TableError::OrderTooLarge(n));
        }
        if entries.len() != n * n {
            let row = entries.len() / n;
            return Err(TableError::NonSquare { row, len: entries.len() % n, expected: n });
        }
        if let Some(k) = entries.iter().position(|&v| v as usize >= n) {
            return Err(TableError::EntryOutOfRange(k / n, k % n, entries[k] as usize));
        }
        Ok(CayleyTable { n, entries })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries[i * self.n + j] as usize
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| self.row(i).iter().map(|&v| v as usize).collect()).collect()
    }

    /// First repeated symbol in a row (scanned first) or a column.
    /// The two-sided identity, if there is one.
    pub fn identity(&self) -> Option<usize> {
        let n = self.order();
        (0..n).find(|&e| (0..n).all(|a| self.get(e, a) == a && self.get(a, e) == a))
    }

    pub fn latin_violation(&self) -> Option<LatinWitness> {
        let n = self.n;
        for i in 0..n {
            let mut seen = vec![false; n];
            for j in 0..n {
                let v = self.get(i, j);
                if std::mem::replace(&mut seen[v], true) {
                    return Some(LatinWitness::Row { row: i, symbol: v });
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for i in 0..n {
                let v = self.get(i, j);
                if std::mem::replace(&mut seen[v], true) {
                    return Some(LatinWitness::Column { column: j, symbol: v });
                }
            }
        }
        None
    }

    /// Renders the table in the corpus text format, optionally preceded by a
    /// `# name:` header.
    pub fn to_text(&self, name: Option<&str>) -> String {
        let mut out = String::new();
        if let Some(name) = name {
            out.push_str("# name: ");
            out.push_str(name);
            out.push('\n');
        }
        out.push_str(&self.n.to_string());
        out.push('\n');
        let width = (self.n - 1).to_string().len();
        for i in 0..self.n {
            let row: Vec<String> =
                self.row(i).iter().map(|v| format!("{:>width$}", v, width = width)).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Alias of [`CayleyTable::from_rows`].
pub fn load_table<R: AsRef<[usize]>>(raw: &[R]) -> Result<CayleyTable, TableError> {
    CayleyTable::from_rows(raw)
}

/// A Latin-square table with a two-sided identity and two-sided inverses.
///
/// The identity may sit at any index. Left division is cached so that
/// `a \ c` (the unique `x` with `a ⊕ x = c`) is a table lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    table: CayleyTable,
    identity: u8,
    inv: Vec<u8>,
    ldiv: Vec<u8>,
}

impl Loop {
    pub fn new(table: CayleyTable) -> Result<Self, TableError> {
        if let Some(w) = table.latin_violation() {
            return Err(TableError::NotLatinSquare(w));
        }
        let n = table.order();
        let identity = table.identity().ok_or(TableError::NoTwoSidedIdentity)?;
        let mut ldiv = vec![0u8; n * n];
        for a in 0..n {
            for x in 0..n {
                ldiv[a * n + table.get(a, x)] = x as u8;
            }
        }
        let mut inv = vec![0u8; n];
        for a in 0..n {
            // right inverse: a ⊕ b = e
            let b = ldiv[a * n + identity] as usize;
            if table.get(b, a) != identity {
                return Err(TableError::NoTwoSidedInverse(a));
            }
            inv[a] = b as u8;
        }
        Ok(Loop { table, identity: identity as u8, inv, ldiv })
    }

    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        Loop::new(CayleyTable::from_rows(rows)?)
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn into_table(self) -> CayleyTable {
        self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    /// `⊖a`.
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn inverses(&self) -> &[u8] {
        &self.inv
    }

    /// `a ⊕ b` with bounds checking.
    pub fn mul(&self, a: usize, b: usize) -> Result<usize, TableError> {
        let order = self.order();
        for index in [a, b] {
            if index >= order {
                return Err(TableError::IndexOutOfRange { index, order });
            }
        }
        Ok(self.op(a, b))
    }

    /// `a ⊕ b`; panics on out-of-range input.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    /// The unique `x` with `a ⊕ x = c`.
    #[inline]
    pub fn ldiv(&self, a: usize, c: usize) -> usize {
        self.ldiv[a * self.order() + c] as usize
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    fn all_triples(&self, mut holds: impl FnMut(usize, usize, usize) -> bool) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| holds(a, b, c))))
    }

    /// `(a⊕b)⊕c = a⊕(b⊕c)` for every triple.
    pub fn is_associative(&self) -> bool {
        self.all_triples(|a, b, c| self.op(self.op(a, b), c) == self.op(a, self.op(b, c)))
    }

    /// Left Bol identity `a⊕(b⊕(a⊕c)) = (a⊕(b⊕a))⊕c`.
    pub fn is_left_bol(&self) -> bool {
        self.all_triples(|a, b, c| {
            self.op(a, self.op(b, self.op(a, c))) == self.op(self.op(a, self.op(b, a)), c)
        })
    }

    /// Moufang identity `z⊕(x⊕(z⊕y)) = ((z⊕x)⊕z)⊕y`. In a loop every Moufang
    /// identity is equivalent to this one.
    pub fn is_moufang(&self) -> bool {
        self.all_triples(|z, x, y| {
            self.op(z, self.op(x, self.op(z, y))) == self.op(self.op(self.op(z, x), z), y)
        })
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.op(a, b) == self.op(b, a)))
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(None))
    }
}
