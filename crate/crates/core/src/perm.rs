//! Permutations of `0..n`, disjoint-cycle text and closure into groups.
//!
//! Internally points are 0-based. Cycle text can be read or written 1-based,
//! which is how gyroautomorphisms are usually displayed.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutations act on {0} and {1} points")]
    SizeMismatch(usize, usize),
    #[error("malformed cycle text: {0}")]
    MalformedCycle(String),
    #[error("element {0} appears more than once")]
    RepeatedElement(usize),
    #[error("label {0} is out of range")]
    LabelOutOfRange(usize),
    #[error("image list is not a bijection")]
    NotBijective,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    map: Vec<u8>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm { map: (0..n).map(|i| i as u8).collect() }
    }

    /// `images[i]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotBijective);
            }
        }
        Ok(Perm { map: images.iter().map(|&x| x as u8).collect() })
    }

    pub(crate) fn from_bytes_unchecked(map: Vec<u8>) -> Self {
        debug_assert!(is_bijection(&map));
        Perm { map }
    }

    /// Accepts a byte image list if it is a bijection.
    pub fn from_bytes(map: Vec<u8>) -> Option<Self> {
        is_bijection(&map).then_some(Perm { map })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::SizeMismatch(self.degree(), other.degree()));
        }
        Ok(Perm { map: other.map.iter().map(|&x| self.map[x as usize]).collect() })
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0u8; self.degree()];
        for (i, &x) in self.map.iter().enumerate() {
            map[x as usize] = i as u8;
        }
        Perm { map }
    }

    /// Non-trivial cycles, each starting at its least point, sorted by that
    /// point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Parses a product of disjoint cycles such as `(3,4)(5,7)`. The empty
    /// string and `()` both denote the identity.
    pub fn parse_cycles(s: &str, n: usize, one_based: bool) -> Result<Perm, PermError> {
        let offset = usize::from(one_based);
        let mut map: Vec<u8> = (0..n).map(|i| i as u8).collect();
        let mut used = vec![false; n];
        let mut rest = s.trim();
        if rest == "()" {
            rest = "";
        }
        while !rest.is_empty() {
            let body_end = match (rest.strip_prefix('('), rest.find(')')) {
                (Some(_), Some(end)) => end,
                _ => return Err(PermError::MalformedCycle(rest.to_string())),
            };
            let body = &rest[1..body_end];
            let mut points = Vec::new();
            for tok in body.split(',') {
                let tok = tok.trim();
                let label: usize =
                    tok.parse().map_err(|_| PermError::MalformedCycle(body.to_string()))?;
                if label < offset || label - offset >= n {
                    return Err(PermError::LabelOutOfRange(label));
                }
                let p = label - offset;
                if std::mem::replace(&mut used[p], true) {
                    return Err(PermError::RepeatedElement(label));
                }
                points.push(p);
            }
            for (k, &p) in points.iter().enumerate() {
                map[p] = points[(k + 1) % points.len()] as u8;
            }
            rest = rest[body_end + 1..].trim_start();
        }
        Ok(Perm { map })
    }

    /// Canonical disjoint-cycle text; the identity is `()`.
    pub fn format_cycles(&self, one_based: bool) -> String {
        let offset = usize::from(one_based);
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let mut out = String::new();
        for c in cycles {
            let labels: Vec<String> = c.iter().map(|p| (p + offset).to_string()).collect();
            out.push('(');
            out.push_str(&labels.join(","));
            out.push(')');
        }
        out
    }

    /// Order of the permutation as a group element.
    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn is_bijection(map: &[u8]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&x| (x as usize) < map.len() && !std::mem::replace(&mut seen[x as usize], true))
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles(true))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self.format_cycles(false))
    }
}

/// Smallest set containing `gens` and the identity that is closed under
/// composition (hence a group, the degree being finite).
pub fn group_closure(n: usize, gens: &[Perm]) -> Result<BTreeSet<Perm>, PermError> {
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(PermError::SizeMismatch(n, g.degree()));
    }
    let mut group = BTreeSet::new();
    let id = Perm::identity(n);
    group.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x)?;
            if group.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(group)
}

/// Outcome of [`is_closed_set`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Closure {
    Closed,
    /// `left ∘ right` lies outside the set.
    Open { left: Perm, right: Perm },
}

impl Closure {
    pub fn is_closed(&self) -> bool {
        matches!(self, Closure::Closed)
    }
}

/// Whether `set ∪ {identity}` is closed under composition. For a finite set
/// of permutations this already implies closure under inverses.
pub fn is_closed_set<'a, I>(set: I) -> Closure
where
    I: IntoIterator<Item = &'a Perm>,
{
    let mut members: BTreeSet<&Perm> = set.into_iter().collect();
    let Some(n) = members.first().map(|p| p.degree()) else {
        return Closure::Closed;
    };
    let id = Perm::identity(n);
    members.insert(&id);
    for p in &members {
        for q in &members {
            match p.compose(q) {
                Ok(r) if members.contains(&r) => {}
                _ => return Closure::Open { left: (*p).clone(), right: (*q).clone() },
            }
        }
    }
    Closure::Closed
}
