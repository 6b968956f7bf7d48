//! Isomorphisms, automorphism groups and canonical forms of loops.
//!
//! Isomorphism search maps a greedy generating sequence of the source loop
//! and closes the partial map under `⊕`, so only the generator images are
//! branched on. Candidate images must agree on an element signature built
//! from left power orders.
//!
//! The canonical form is the lexicographically least row-major table over all
//! identity-fixing relabelings. Row 1 of a relabeled table is determined by
//! the cycle type of left multiplication by the element that receives label 1,
//! so the search only branches on which element starts each further cycle,
//! and prunes on row 2 as labels are assigned.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::perm::Perm;
use crate::table::{CayleyTable, Loop, TableError};

const UNSET: u8 = u8::MAX;

/// Least `k ≥ 1` with `a^(k) = e`, where `a^(1) = a` and `a^(k+1) = a ⊕ a^(k)`.
pub fn left_order(l: &Loop, a: usize) -> usize {
    let e = l.identity();
    let mut x = a;
    let mut k = 1;
    while x != e {
        x = l.op(a, x);
        k += 1;
    }
    k
}

/// Relabeling invariants of a loop. Equal invariants are necessary for
/// isomorphism, never sufficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IsoInvariant {
    pub order: usize,
    pub left_order_spectrum: Vec<usize>,
    pub row_fixpoint_counts: Vec<usize>,
    pub diagonal_multiset: Vec<usize>,
}

impl IsoInvariant {
    pub fn of(l: &Loop) -> Self {
        let orders: Vec<usize> = l.elements().map(|a| left_order(l, a)).collect();
        let mut left_order_spectrum = orders.clone();
        left_order_spectrum.sort_unstable();
        let mut row_fixpoint_counts: Vec<usize> =
            l.elements().map(|a| l.elements().filter(|&j| l.op(a, j) == j).count()).collect();
        row_fixpoint_counts.sort_unstable();
        let mut diagonal_multiset: Vec<usize> =
            l.elements().map(|a| orders[l.op(a, a)]).collect();
        diagonal_multiset.sort_unstable();
        IsoInvariant { order: l.order(), left_order_spectrum, row_fixpoint_counts, diagonal_multiset }
    }
}

/// Per-element data preserved by every isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Signature {
    left_order: u16,
    square_order: u16,
    right_order: u16,
    commuting: u16,
}

fn signatures(l: &Loop) -> Vec<Signature> {
    let e = l.identity();
    let orders: Vec<usize> = l.elements().map(|a| left_order(l, a)).collect();
    l.elements()
        .map(|a| {
            let mut x = a;
            let mut right = 1;
            while x != e {
                x = l.op(x, a);
                right += 1;
            }
            Signature {
                left_order: orders[a] as u16,
                square_order: orders[l.op(a, a)] as u16,
                right_order: right,
                commuting: l.elements().filter(|&b| l.op(a, b) == l.op(b, a)).count() as u16,
            }
        })
        .collect()
}

/// Greedy generating sequence: repeatedly add the least element outside the
/// subloop generated so far.
fn generating_sequence(l: &Loop) -> Vec<usize> {
    let n = l.order();
    let mut inside = vec![false; n];
    let mut members = vec![l.identity()];
    inside[l.identity()] = true;
    let mut gens = Vec::new();
    for g in 0..n {
        if inside[g] {
            continue;
        }
        gens.push(g);
        inside[g] = true;
        members.push(g);
        // finite sets closed under ⊕ are subloops
        let mut k = 0;
        while k < members.len() {
            let z = members[k];
            for j in 0..=k {
                let x = members[j];
                for p in [l.op(z, x), l.op(x, z)] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
            }
            k += 1;
        }
    }
    gens
}

#[derive(Clone)]
struct PartialMap {
    map: Vec<u8>,
    rev: Vec<u8>,
    dom: Vec<u8>,
    processed: usize,
}

struct Matcher<'a> {
    src: &'a Loop,
    dst: &'a Loop,
    gens: Vec<usize>,
    src_sig: Vec<Signature>,
    dst_sig: Vec<Signature>,
}

impl<'a> Matcher<'a> {
    fn new(src: &'a Loop, dst: &'a Loop) -> Self {
        Matcher {
            src,
            dst,
            gens: generating_sequence(src),
            src_sig: signatures(src),
            dst_sig: signatures(dst),
        }
    }

    fn assign(&self, st: &mut PartialMap, x: usize, y: usize) -> bool {
        if st.map[x] != UNSET {
            return st.map[x] as usize == y;
        }
        if st.rev[y] != UNSET || self.src_sig[x] != self.dst_sig[y] {
            return false;
        }
        st.map[x] = y as u8;
        st.rev[y] = x as u8;
        st.dom.push(x as u8);
        true
    }

    /// Closes the partial map under `⊕`, failing on any inconsistency.
    fn propagate(&self, st: &mut PartialMap) -> bool {
        while st.processed < st.dom.len() {
            let k = st.processed;
            let z = st.dom[k] as usize;
            for j in 0..=k {
                let x = st.dom[j] as usize;
                let (fz, fx) = (st.map[z] as usize, st.map[x] as usize);
                if !self.assign(st, self.src.op(z, x), self.dst.op(fz, fx))
                    || !self.assign(st, self.src.op(x, z), self.dst.op(fx, fz))
                {
                    return false;
                }
            }
            st.processed += 1;
        }
        true
    }

    fn start(&self) -> Option<PartialMap> {
        let n = self.src.order();
        let mut st =
            PartialMap { map: vec![UNSET; n], rev: vec![UNSET; n], dom: Vec::new(), processed: 0 };
        (self.assign(&mut st, self.src.identity(), self.dst.identity()) && self.propagate(&mut st))
            .then_some(st)
    }

    /// Calls `found` for each isomorphism; stops early when it returns `false`.
    fn search(&self, st: &PartialMap, level: usize, found: &mut dyn FnMut(Perm) -> bool) -> bool {
        if level == self.gens.len() {
            let p = Perm::from_bytes_unchecked(st.map.clone());
            debug_assert!(is_isomorphism(self.src, self.dst, &p));
            return found(p);
        }
        let g = self.gens[level];
        for y in self.dst.elements() {
            if st.rev[y] != UNSET || self.src_sig[g] != self.dst_sig[y] {
                continue;
            }
            let mut next = st.clone();
            if self.assign(&mut next, g, y)
                && self.propagate(&mut next)
                && !self.search(&next, level + 1, found)
            {
                return false;
            }
        }
        true
    }
}

/// Whether `p` maps `src` isomorphically onto `dst`.
pub fn is_isomorphism(src: &Loop, dst: &Loop, p: &Perm) -> bool {
    src.order() == dst.order()
        && p.degree() == src.order()
        && src.elements().all(|x| {
            src.elements().all(|y| p.apply(src.op(x, y)) == dst.op(p.apply(x), p.apply(y)))
        })
}

/// A witness isomorphism `src → dst`, if one exists.
pub fn are_isomorphic(src: &Loop, dst: &Loop) -> Option<Perm> {
    if src.order() != dst.order() || IsoInvariant::of(src) != IsoInvariant::of(dst) {
        return None;
    }
    let m = Matcher::new(src, dst);
    let st = m.start()?;
    let mut witness = None;
    m.search(&st, 0, &mut |p| {
        witness = Some(p);
        false
    });
    witness
}

/// All automorphisms of `l`.
pub fn automorphism_group(l: &Loop) -> BTreeSet<Perm> {
    let m = Matcher::new(l, l);
    let mut out = BTreeSet::new();
    if let Some(st) = m.start() {
        m.search(&st, 0, &mut |p| {
            out.insert(p);
            true
        });
    }
    out
}

/// The table `T'` with `T'[p(x)][p(y)] = p(T[x][y])`.
pub fn relabel(t: &CayleyTable, p: &Perm) -> CayleyTable {
    let n = t.order();
    assert_eq!(p.degree(), n, "relabeling degree");
    let mut entries = vec![0u8; n * n];
    for x in 0..n {
        for y in 0..n {
            entries[p.apply(x) * n + p.apply(y)] = p.apply(t.get(x, y)) as u8;
        }
    }
    CayleyTable::from_flat(n, entries).expect("relabeling preserves shape")
}

/// Lex-min table of a loop over identity-fixing relabelings, as bytes:
/// the order followed by the row-major entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    pub fn table(&self) -> CayleyTable {
        CayleyTable::from_flat(self.order(), self.0[1..].to_vec()).expect("key holds a table")
    }

    /// Fails only for keys of loops without two-sided inverses.
    pub fn to_loop(&self) -> Result<Loop, TableError> {
        Loop::new(self.table())
    }

    /// Hex SHA-256 of the key bytes.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(&self.0))
    }

    pub fn to_text(&self, name: Option<&str>) -> String {
        self.table().to_text(name)
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", &self.digest()[..16])
    }
}

/// Row 1 of the relabeled table when `x1` gets label 1: the cycle through the
/// identity comes first, remaining cycles follow shortest first.
pub(crate) fn row_one_pattern(e_cycle: usize, rest: &[usize]) -> Vec<u8> {
    let mut row = Vec::new();
    let mut start = 0;
    for &len in std::iter::once(&e_cycle).chain(rest) {
        for j in 1..len {
            row.push((start + j) as u8);
        }
        row.push(start as u8);
        start += len;
    }
    row
}

struct Canonizer<'a> {
    t: &'a CayleyTable,
    n: usize,
    x1: usize,
    cycle_len: Vec<usize>,
    rest: Vec<usize>,
    lab: Vec<u8>,
    order: Vec<u8>,
    best: Option<Vec<u8>>,
}

enum Bound {
    Better,
    Worse,
    Undecided,
}

impl<'a> Canonizer<'a> {
    fn label_cycle(&mut self, start: usize) {
        let mut y = start;
        loop {
            self.lab[y] = self.order.len() as u8;
            self.order.push(y as u8);
            y = self.t.get(self.x1, y);
            if y == start {
                break;
            }
        }
    }

    fn unlabel_to(&mut self, k: usize) {
        while self.order.len() > k {
            let y = self.order.pop().expect("non-empty") as usize;
            self.lab[y] = UNSET;
        }
    }

    #[inline]
    fn entry(&self, i: usize, j: usize) -> u8 {
        self.lab[self.t.get(self.order[i] as usize, self.order[j] as usize)]
    }

    /// Compares the known prefix of rows 2.. against the best table so far.
    fn bound(&self) -> Bound {
        let Some(best) = &self.best else {
            return Bound::Undecided;
        };
        let (n, k) = (self.n, self.order.len());
        for i in 2..n {
            for j in 0..n {
                if i >= k || j >= k {
                    return Bound::Undecided;
                }
                let b = best[i * n + j];
                let v = self.entry(i, j);
                if v == UNSET {
                    return if (b as usize) < k { Bound::Worse } else { Bound::Undecided };
                }
                match v.cmp(&b) {
                    Ordering::Less => return Bound::Better,
                    Ordering::Greater => return Bound::Worse,
                    Ordering::Equal => {}
                }
            }
        }
        Bound::Undecided
    }

    fn leaf(&mut self) {
        let n = self.n;
        let mut table = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.entry(i, j);
            }
        }
        if self.best.as_ref().map_or(true, |b| table < *b) {
            self.best = Some(table);
        }
    }

    fn dfs(&mut self, depth: usize) {
        if let Bound::Worse = self.bound() {
            return;
        }
        if depth == self.rest.len() {
            self.leaf();
            return;
        }
        let want = self.rest[depth];
        let mark = self.order.len();
        for y in 0..self.n {
            if self.lab[y] == UNSET && self.cycle_len[y] == want {
                self.label_cycle(y);
                self.dfs(depth + 1);
                self.unlabel_to(mark);
            }
        }
    }
}

/// Cycle lengths of left multiplication by `x`, per element.
fn left_cycle_lengths(t: &CayleyTable, x: usize) -> Vec<usize> {
    let n = t.order();
    let mut len = vec![0usize; n];
    for s in 0..n {
        if len[s] != 0 {
            continue;
        }
        let mut cyc = vec![s];
        let mut y = t.get(x, s);
        while y != s {
            cyc.push(y);
            y = t.get(x, y);
        }
        for &c in &cyc {
            len[c] = cyc.len();
        }
    }
    len
}

/// Lex-min relabeled table of `l` with the identity at 0.
pub fn canonical_form(l: &Loop) -> CayleyTable {
    canonical_key(l).table()
}

pub fn canonical_key(l: &Loop) -> CanonicalKey {
    key_of(l.table(), l.identity())
}

/// Canonical key of any Latin square with a two-sided identity, including
/// loops without two-sided inverses.
pub fn canonical_key_of_table(t: &CayleyTable) -> Result<CanonicalKey, TableError> {
    if let Some(w) = t.latin_violation() {
        return Err(TableError::NotLatinSquare(w));
    }
    let e = t.identity().ok_or(TableError::NoTwoSidedIdentity)?;
    Ok(key_of(t, e))
}

fn key_of(t: &CayleyTable, e: usize) -> CanonicalKey {
    let n = t.order();
    if n <= 2 {
        // the only identity-fixing relabeling moves e to 0
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(0, e);
        let t = relabel(t, &Perm::from_images(&p).expect("swap"));
        let mut bytes = vec![n as u8];
        bytes.extend_from_slice(t.entries());
        return CanonicalKey(bytes);
    }
    // choose the elements whose left-multiplication cycle type gives the least row 1
    let mut candidates: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    let mut best_row: Option<Vec<u8>> = None;
    for x1 in (0..n).filter(|&x| x != e) {
        let lens = left_cycle_lengths(t, x1);
        let mut rest = Vec::new();
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut y = s;
            let mut has_identity = false;
            while !seen[y] {
                seen[y] = true;
                has_identity |= y == e;
                y = t.get(x1, y);
            }
            if !has_identity {
                rest.push(lens[s]);
            }
        }
        rest.sort_unstable();
        let row = row_one_pattern(lens[e], &rest);
        match best_row.as_ref().map(|b| row.cmp(b)) {
            Some(Ordering::Greater) => continue,
            Some(Ordering::Less) | None => {
                candidates.clear();
                best_row = Some(row);
            }
            Some(Ordering::Equal) => {}
        }
        candidates.push((x1, lens, rest));
    }
    let mut best: Option<Vec<u8>> = None;
    for (x1, cycle_len, rest) in candidates {
        let mut c = Canonizer {
            t,
            n,
            x1,
            cycle_len,
            rest,
            lab: vec![UNSET; n],
            order: Vec::with_capacity(n),
            best: best.take(),
        };
        c.label_cycle(e);
        c.dfs(0);
        best = c.best;
    }
    let table = best.expect("at least one labelling");
    let mut bytes = Vec::with_capacity(n * n + 1);
    bytes.push(n as u8);
    bytes.extend_from_slice(&table);
    CanonicalKey(bytes)
}
