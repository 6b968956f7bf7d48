//! Gyrators, the gyrogroup decision procedure and the gyration table.
//!
//! For a loop `L` the gyrator generated by `a` and `b` is the map
//! `c ↦ ⊖(a⊕b) ⊕ (a⊕(b⊕c))`. A loop is a gyrogroup when every gyrator is an
//! automorphism, gyroassociativity `a⊕(b⊕c) = (a⊕b)⊕gyr[a,b]c` holds and the
//! left loop property `gyr[a,b] = gyr[a⊕b,b]` holds.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::perm::{is_closed_set, Closure, Perm};
use crate::table::Loop;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GyroError {
    #[error("gyr[{0},{1}] is not a bijection")]
    NonBijectiveGyrator(usize, usize),
    #[error("the loop is not a gyrogroup")]
    NotAGyrogroup,
}

/// Why a loop failed [`is_gyrogroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GyroFailure {
    NonBijective { a: usize, b: usize },
    NotAutomorphism { a: usize, b: usize },
    GyroassocFails { a: usize, b: usize, c: usize },
    LeftLoopFails { a: usize, b: usize },
}

impl fmt::Display for GyroFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GyroFailure::NonBijective { a, b } => write!(f, "gyr[{a},{b}] is not a bijection"),
            GyroFailure::NotAutomorphism { a, b } => {
                write!(f, "gyr[{a},{b}] is not an automorphism")
            }
            GyroFailure::GyroassocFails { a, b, c } => {
                write!(f, "gyroassociativity fails at ({a},{b},{c})")
            }
            GyroFailure::LeftLoopFails { a, b } => {
                write!(f, "left loop property fails at ({a},{b})")
            }
        }
    }
}

/// Why a gyrogroup failed [`check_gyro_identities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityFailure {
    /// `(a⊕b)⊕c ≠ a⊕(b⊕gyr[b,a]c)`.
    RightGyroassoc { a: usize, b: usize, c: usize },
    /// `gyr[a,b] ≠ gyr[a, b⊕a]`.
    RightLoop { a: usize, b: usize },
    /// One of `gyr[a,a]`, `gyr[a,⊖a]`, `gyr[0,a]`, `gyr[a,0]` is not the identity.
    DegeneratePair { a: usize, b: usize },
}

/// The raw map `c ↦ gyr[a,b](c)`, which need not be bijective outside left
/// Bol loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GyrMap {
    images: Vec<u8>,
}

impl GyrMap {
    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, c: usize) -> usize {
        self.images[c] as usize
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        self.images.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn to_perm(&self) -> Option<Perm> {
        Perm::from_bytes(self.images.clone())
    }
}

/// `gyr[a,b]` evaluated on every element.
pub fn gyr(l: &Loop, a: usize, b: usize) -> GyrMap {
    let left = l.inv(l.op(a, b));
    let images = l.elements().map(|c| l.op(left, l.op(a, l.op(b, c))) as u8).collect();
    GyrMap { images }
}

fn is_automorphism_map(l: &Loop, map: &GyrMap) -> bool {
    l.elements()
        .all(|x| l.elements().all(|y| map.apply(l.op(x, y)) == l.op(map.apply(x), map.apply(y))))
}

/// All `n²` gyrator maps in row-major `(a, b)` order.
fn all_gyrators(l: &Loop) -> Vec<GyrMap> {
    let n = l.order();
    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            out.push(gyr(l, a, b));
        }
    }
    out
}

/// Distinct non-identity gyrators, scanning every pair `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GyratorSet {
    pub perms: BTreeSet<Perm>,
    /// Every member preserves `⊕`.
    pub all_automorphisms: bool,
}

pub fn gyrator_set(l: &Loop) -> Result<GyratorSet, GyroError> {
    let n = l.order();
    let mut perms = BTreeSet::new();
    for (k, m) in all_gyrators(l).into_iter().enumerate() {
        let p = m.to_perm().ok_or(GyroError::NonBijectiveGyrator(k / n, k % n))?;
        if !p.is_identity() {
            perms.insert(p);
        }
    }
    let all_automorphisms =
        perms.iter().all(|p| is_automorphism_map(l, &GyrMap { images: p.images().to_vec() }));
    Ok(GyratorSet { perms, all_automorphisms })
}

/// Decides whether `l` is a gyrogroup, reporting the first failing check.
///
/// Gyroassociativity and the left loop property are checked exhaustively even
/// though the former follows from the gyrator formula on loops with the left
/// inverse property and the latter from the left Bol identity.
pub fn is_gyrogroup(l: &Loop) -> Result<(), GyroFailure> {
    let n = l.order();
    let gyrs = all_gyrators(l);
    let at = |a: usize, b: usize| &gyrs[a * n + b];
    let mut checked: HashMap<&GyrMap, bool> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let m = at(a, b);
            if !m.is_bijective() {
                return Err(GyroFailure::NonBijective { a, b });
            }
            let ok = *checked.entry(m).or_insert_with(|| is_automorphism_map(l, m));
            if !ok {
                return Err(GyroFailure::NotAutomorphism { a, b });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let m = at(a, b);
            let ab = l.op(a, b);
            for c in 0..n {
                if l.op(a, l.op(b, c)) != l.op(ab, m.apply(c)) {
                    return Err(GyroFailure::GyroassocFails { a, b, c });
                }
            }
            if m != at(ab, b) {
                return Err(GyroFailure::LeftLoopFails { a, b });
            }
        }
    }
    Ok(())
}

/// The remaining identities every gyrogroup satisfies: the right
/// gyroassociative law, the right loop property and triviality of the
/// gyrators `gyr[a,a]`, `gyr[a,⊖a]`, `gyr[0,a]`, `gyr[a,0]`.
pub fn check_gyro_identities(l: &Loop) -> Result<(), IdentityFailure> {
    let n = l.order();
    let e = l.identity();
    let gyrs = all_gyrators(l);
    let at = |a: usize, b: usize| &gyrs[a * n + b];
    for a in 0..n {
        for b in [a, l.inv(a), e] {
            if !at(a, b).is_identity() {
                return Err(IdentityFailure::DegeneratePair { a, b });
            }
        }
        if !at(e, a).is_identity() {
            return Err(IdentityFailure::DegeneratePair { a: e, b: a });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let m = at(b, a);
            for c in 0..n {
                if l.op(l.op(a, b), c) != l.op(a, l.op(b, m.apply(c))) {
                    return Err(IdentityFailure::RightGyroassoc { a, b, c });
                }
            }
            if at(a, b) != at(a, l.op(b, a)) {
                return Err(IdentityFailure::RightLoop { a, b });
            }
        }
    }
    Ok(())
}

/// `a⊕b = gyr[a,b](b⊕a)` for all pairs. Only defined on gyrogroups.
pub fn is_gyrocommutative(l: &Loop) -> Result<bool, GyroError> {
    if is_gyrogroup(l).is_err() {
        return Err(GyroError::NotAGyrogroup);
    }
    Ok(gyrocommutative_unchecked(l))
}

pub(crate) fn gyrocommutative_unchecked(l: &Loop) -> bool {
    l.elements()
        .all(|a| l.elements().all(|b| l.op(a, b) == gyr(l, a, b).apply(l.op(b, a))))
}

const LETTERS: [&str; 25] = [
    "A", "B", "C", "D", "E", "F", "G", "H", "K", "L", "M", "N", "P", "Q", "R", "S", "T", "U",
    "V", "W", "X", "Y", "Z", "J", "O",
];

/// Label of the `k`-th distinct non-identity gyrator: `A`..`O`, then
/// `A1`, `B1`, ... once the 25 letters run out.
pub fn gyrator_label(k: usize) -> String {
    let (round, pos) = (k / LETTERS.len(), k % LETTERS.len());
    if round == 0 {
        LETTERS[pos].to_string()
    } else {
        format!("{}{}", LETTERS[pos], round)
    }
}

/// Classification record of one loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GyroProfile {
    pub order: usize,
    pub is_loop: bool,
    pub is_left_bol: bool,
    pub is_moufang: bool,
    pub is_group: bool,
    pub is_gyrogroup: bool,
    pub is_gyrocommutative: bool,
    /// Every gyrator is the identity.
    pub is_degenerate: bool,
    /// Every gyrator map is a bijection.
    pub gyrators_bijective: bool,
    /// Distinct non-identity gyrators in first-encounter order; entry `k`
    /// carries label [`gyrator_label`]`(k)`.
    pub gyrators: Vec<Perm>,
    /// Whether the gyrators together with the identity are closed under
    /// composition.
    pub gyrators_closed: bool,
    pub witness: Option<(Perm, Perm)>,
    pub gyro_failure: Option<GyroFailure>,
    /// `gyr_index[a][b]` is `I` for identity gyrators, `?` for maps that are
    /// not bijective, and otherwise the gyrator's letter.
    pub gyr_index: Vec<Vec<String>>,
}

impl GyroProfile {
    pub fn non_identity_count(&self) -> usize {
        self.gyrators.len()
    }

    /// The gyration table as text: a legend of the non-identity gyrators in
    /// 1-based cycle notation followed by `n` rows of labels.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        if self.gyrators.is_empty() {
            out.push_str("All gyroautomorphisms are trivial.\n");
        } else {
            out.push_str("Non-identity automorphisms are as follows:\n");
            for (k, p) in self.gyrators.iter().enumerate() {
                out.push_str(&format!("{} = {}\n", gyrator_label(k), p.format_cycles(true)));
            }
        }
        let width = self.gyr_index.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &self.gyr_index {
            let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn gyration_table(l: &Loop) -> GyroProfile {
    let n = l.order();
    let mut labels: HashMap<Vec<u8>, String> = HashMap::new();
    let mut gyrators = Vec::new();
    let mut gyrators_bijective = true;
    let mut gyr_index = vec![vec![String::new(); n]; n];
    for (a, row) in gyr_index.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let m = gyr(l, a, b);
            *cell = if m.is_identity() {
                "I".to_string()
            } else if let Some(p) = m.to_perm() {
                labels
                    .entry(m.images)
                    .or_insert_with(|| {
                        gyrators.push(p);
                        gyrator_label(gyrators.len() - 1)
                    })
                    .clone()
            } else {
                gyrators_bijective = false;
                "?".to_string()
            };
        }
    }
    let (gyrators_closed, witness) = if !gyrators_bijective {
        (false, None)
    } else {
        match is_closed_set(gyrators.iter()) {
            Closure::Closed => (true, None),
            Closure::Open { left, right } => (false, Some((left, right))),
        }
    };
    let gyro_failure = is_gyrogroup(l).err();
    let is_gyrogroup = gyro_failure.is_none();
    GyroProfile {
        order: n,
        is_loop: true,
        is_left_bol: l.is_left_bol(),
        is_moufang: l.is_moufang(),
        is_group: l.is_associative(),
        is_gyrogroup,
        is_gyrocommutative: is_gyrogroup && gyrocommutative_unchecked(l),
        is_degenerate: gyrators.is_empty() && gyrators_bijective,
        gyrators_bijective,
        gyrators,
        gyrators_closed,
        witness,
        gyro_failure,
        gyr_index,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{chein_double, cyclic, dihedral, klein_four, non_bol_loop_5};
    use crate::fixtures::{g16, G16_GYRATORS};

    #[test]
    fn gyr_examples_on_g16() {
        let g = g16();
        let m = gyr(&g, 1, 2);
        assert_eq!((m.apply(3), m.apply(4), m.apply(0)), (4, 3, 0));
        assert!(m.is_bijective());
    }

    #[test]
    fn groups_have_trivial_gyrators() {
        for l in [cyclic(6), dihedral(4), klein_four()] {
            for a in l.elements() {
                for b in l.elements() {
                    assert!(gyr(&l, a, b).is_identity());
                }
            }
            let set = gyrator_set(&l).unwrap();
            assert!(set.perms.is_empty() && set.all_automorphisms);
            assert_eq!(is_gyrogroup(&l), Ok(()));
            assert_eq!(check_gyro_identities(&l), Ok(()));
        }
    }

    #[test]
    fn g16_gyrator_set_matches_listing() {
        let set = gyrator_set(&g16()).unwrap();
        assert!(set.all_automorphisms);
        let got: Vec<String> = set.perms.iter().map(|p| p.format_cycles(true)).collect();
        let mut want: Vec<String> = G16_GYRATORS.iter().map(|s| s.to_string()).collect();
        want.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, want);
    }

    #[test]
    fn g16_is_gyrogroup() {
        let g = g16();
        assert_eq!(is_gyrogroup(&g), Ok(()));
        assert_eq!(check_gyro_identities(&g), Ok(()));
    }

    #[test]
    fn moufang_12_is_not_a_gyrogroup() {
        let m = chein_double(&dihedral(3));
        assert!(is_gyrogroup(&m).is_err());
        assert_eq!(is_gyrocommutative(&m), Err(GyroError::NotAGyrogroup));
    }

    #[test]
    fn non_bol_loop_fails() {
        let l = non_bol_loop_5();
        assert!(is_gyrogroup(&l).is_err());
        let p = gyration_table(&l);
        assert!(!p.is_gyrogroup && !p.is_left_bol);
    }

    #[test]
    fn abelian_groups_are_gyrocommutative() {
        assert_eq!(is_gyrocommutative(&cyclic(7)), Ok(true));
        assert_eq!(is_gyrocommutative(&dihedral(3)), Ok(false));
    }

    #[test]
    fn g16_profile() {
        let p = gyration_table(&g16());
        assert_eq!(p.non_identity_count(), 5);
        assert!(!p.gyrators_closed);
        let (l, r) = p.witness.clone().unwrap();
        assert!(!p.gyrators.contains(&l.compose(&r).unwrap()));
        assert!(p.is_gyrogroup && p.is_left_bol && !p.is_group && !p.is_degenerate);
        let letters: BTreeSet<&str> = p.gyr_index.iter().flatten().map(String::as_str).collect();
        assert_eq!(letters, BTreeSet::from(["A", "B", "C", "D", "E", "I"]));
        for a in 0..16 {
            assert_eq!(p.gyr_index[a][a], "I");
            assert_eq!(p.gyr_index[0][a], "I");
            assert_eq!(p.gyr_index[a][0], "I");
        }
        // first non-identity pair in row-major order is (1,2)
        assert_eq!(p.gyr_index[1][2], "A");
        assert_eq!(p.gyrators[0].format_cycles(true), "(3,7)(4,5)(9,16)(10,11)");
        assert!(p.render_table().starts_with("Non-identity automorphisms are as follows:\nA = "));
        assert_eq!(gyration_table(&g16()), p);
    }

    #[test]
    fn cyclic_profile_is_all_identity() {
        let p = gyration_table(&cyclic(5));
        assert!(p.gyr_index.iter().flatten().all(|s| s == "I"));
        assert!(p.gyrators_closed && p.is_degenerate && p.is_group);
    }

    #[test]
    fn labels_extend_past_alphabet() {
        assert_eq!(gyrator_label(0), "A");
        assert_eq!(gyrator_label(8), "K");
        assert_eq!(gyrator_label(24), "O");
        assert_eq!(gyrator_label(25), "A1");
        assert_eq!(gyrator_label(51), "B2");
    }
}
