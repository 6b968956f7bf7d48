//! Standard constructions of small groups and loops.
//!
//! These supply reference tables for tests and for the command line: cyclic
//! and metacyclic groups, direct and semidirect products, and Chein's
//! doubling, which turns a non-abelian group into a non-associative Moufang
//! loop of twice the order.

use crate::perm::Perm;
use crate::table::{CayleyTable, Loop};

fn build(n: usize, op: impl Fn(usize, usize) -> usize) -> Loop {
    let rows: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| op(i, j)).collect()).collect();
    Loop::from_rows(&rows).expect("construction yields a loop")
}

pub fn cyclic(n: usize) -> Loop {
    build(n, |a, b| (a + b) % n)
}

/// `(a, b)` is encoded as `a * |h| + b`.
pub fn direct_product(g: &Loop, h: &Loop) -> Loop {
    let m = h.order();
    build(g.order() * m, |x, y| g.op(x / m, y / m) * m + h.op(x % m, y % m))
}

/// `⟨a, x | a^m = 1, x^k = a^s, x a x⁻¹ = a^r⟩` on elements `a^i x^j`,
/// encoded as `j * m + i`. Requires `r^k ≡ 1` and `r s ≡ s (mod m)`.
pub fn metacyclic(m: usize, k: usize, r: usize, s: usize) -> Loop {
    let mut rpow = vec![1usize % m.max(1); k];
    for j in 1..k {
        rpow[j] = rpow[j - 1] * r % m;
    }
    build(m * k, |x, y| {
        let (i, j) = (x % m, x / m);
        let (l, h) = (y % m, y / m);
        let mut e = i + rpow[j] * l;
        let mut t = j + h;
        if t >= k {
            t -= k;
            e += s;
        }
        t * m + e % m
    })
}

pub fn dihedral(n: usize) -> Loop {
    // order 2n
    metacyclic(n, 2, n - 1, 0)
}

/// Dicyclic group of order `4m` (the quaternion group when `m = 2`).
pub fn dicyclic(m: usize) -> Loop {
    metacyclic(2 * m, 2, 2 * m - 1, m)
}

/// `N ⋊ Z_k` where the generator of `Z_k` acts on `N` by `phi`.
/// `(x, i)` is encoded as `i * |N| + x`.
pub fn semidirect_cyclic(base: &Loop, k: usize, phi: &Perm) -> Loop {
    let m = base.order();
    let mut powers = vec![Perm::identity(m)];
    for i in 1..k {
        powers.push(phi.compose(&powers[i - 1]).expect("degree matches"));
    }
    build(m * k, |x, y| {
        let (a, i) = (x % m, x / m);
        let (b, j) = (y % m, y / m);
        ((i + j) % k) * m + base.op(a, powers[i].apply(b))
    })
}

/// Chein's loop `M(G, 2)` on `G ∪ Gu`, with `g ↦ g` and `gu ↦ |G| + g`.
pub fn chein_double(g: &Loop) -> Loop {
    let m = g.order();
    build(2 * m, |x, y| match (x < m, y < m) {
        (true, true) => g.op(x, y),
        // g (hu) = (hg) u
        (true, false) => m + g.op(y - m, x),
        // (gu) h = (g h⁻¹) u
        (false, true) => m + g.op(x - m, g.inv(y)),
        // (gu)(hu) = h⁻¹ g
        (false, false) => g.op(g.inv(y - m), x - m),
    })
}

pub fn klein_four() -> Loop {
    direct_product(&cyclic(2), &cyclic(2))
}

/// Alternating group of degree 4 as `Z2² ⋊ Z3`.
pub fn alternating4() -> Loop {
    // permute the three involutions (1 2 3) of the Klein group
    let phi = Perm::from_images(&[0, 2, 3, 1]).expect("valid");
    semidirect_cyclic(&klein_four(), 3, &phi)
}

/// One representative of every isomorphism class of groups of order `n`,
/// for `1 ≤ n ≤ 16`. Returns `None` outside that range.
pub fn small_groups(n: usize) -> Option<Vec<(String, Loop)>> {
    let z = cyclic;
    let x = |a: &Loop, b: &Loop| direct_product(a, b);
    let v: Vec<(&str, Loop)> = match n {
        1 | 2 | 3 | 5 | 7 | 11 | 13 => vec![("C", z(n))],
        4 => vec![("C4", z(4)), ("C2xC2", klein_four())],
        6 | 10 | 14 => vec![("C", z(n)), ("D", dihedral(n / 2))],
        8 => vec![
            ("C8", z(8)),
            ("C4xC2", x(&z(4), &z(2))),
            ("C2^3", x(&klein_four(), &z(2))),
            ("D8", dihedral(4)),
            ("Q8", dicyclic(2)),
        ],
        9 => vec![("C9", z(9)), ("C3xC3", x(&z(3), &z(3)))],
        12 => vec![
            ("C12", z(12)),
            ("C6xC2", x(&z(6), &z(2))),
            ("D12", dihedral(6)),
            ("Dic12", dicyclic(3)),
            ("A4", alternating4()),
        ],
        15 => vec![("C15", z(15))],
        16 => {
            let c4c2 = x(&z(4), &z(2));
            // automorphisms of C4 × C2, with (a, b) encoded as 2a + b
            let a_to_ab = Perm::from_images(&(0..8).map(|e| {
                let (a, b) = (e / 2, e % 2);
                // (a, b) ↦ (a, a + b mod 2)
                2 * a + (b + a) % 2
            }).collect::<Vec<_>>()).expect("automorphism");
            let b_to_a2b = Perm::from_images(&(0..8).map(|e| {
                let (a, b) = (e / 2, e % 2);
                // (a, b) ↦ (a + 2b mod 4, b)
                2 * ((a + 2 * b) % 4) + b
            }).collect::<Vec<_>>()).expect("automorphism");
            vec![
                ("C16", z(16)),
                ("C8xC2", x(&z(8), &z(2))),
                ("C4xC4", x(&z(4), &z(4))),
                ("C4xC2^2", x(&c4c2, &z(2))),
                ("C2^4", x(&klein_four(), &klein_four())),
                ("D16", dihedral(8)),
                ("SD16", metacyclic(8, 2, 3, 0)),
                ("M16", metacyclic(8, 2, 5, 0)),
                ("C4:C4", metacyclic(4, 4, 3, 0)),
                ("C2xD8", x(&z(2), &dihedral(4))),
                ("C2xQ8", x(&z(2), &dicyclic(2))),
                ("Q16", dicyclic(4)),
                ("(C4xC2):C2", semidirect_cyclic(&c4c2, 2, &a_to_ab)),
                ("C4oD8", semidirect_cyclic(&c4c2, 2, &b_to_a2b)),
            ]
        }
        _ => return None,
    };
    Some(v.into_iter().map(|(s, l)| (s.to_string(), l)).collect())
}

/// A table that is a loop but not left Bol, used as a negative example.
pub fn non_bol_loop_5() -> Loop {
    Loop::new(
        CayleyTable::from_rows(&[
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ])
        .expect("square"),
    )
    .expect("loop")
}
