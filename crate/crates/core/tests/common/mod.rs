#![allow(dead_code)]

//! Reference corpus, brute-force oracles and the property suites shared by
//! the `properties` and `acceptance` targets.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use gyroloop::constructions::{chein_double, dihedral, non_bol_loop_5, small_groups};
use gyroloop::corpus::{parse_corpus_text, Corpus};
use gyroloop::enumeration::{enumerate_all_loops, enumerate_left_bol};
use gyroloop::fixtures::g16;
use gyroloop::gyration::{gyr, gyration_table, gyrator_set, is_gyrocommutative, is_gyrogroup};
use gyroloop::morphisms::{are_isomorphic, automorphism_group, canonical_key, is_isomorphism, relabel};
use gyroloop::perm::{group_closure, is_closed_set, Perm};
use gyroloop::report::{classify_with_threads, render_csv, render_json};
use gyroloop::structure::{commutator_unchecked, generated_subsystem};
use gyroloop::table::{CayleyTable, Loop};

/// Groups of order ≤ 16, the order-16 gyrogroup, a Moufang loop, loops that
/// are not left Bol, and the non-associative left Bol loops of orders 8 and 12.
pub fn corpus() -> &'static [(String, Loop)] {
    static CORPUS: OnceLock<Vec<(String, Loop)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut v: Vec<(String, Loop)> = Vec::new();
        for n in 1..=16 {
            v.extend(small_groups(n).expect("order in range"));
        }
        v.push(("G16".into(), g16()));
        v.push(("M12".into(), chein_double(&dihedral(3))));
        v.push(("nonbol5".into(), non_bol_loop_5()));
        let with_inverses = enumerate_all_loops(5).expect("small order").into_iter().filter_map(|t| Loop::new(t).ok());
        for (i, l) in with_inverses.enumerate() {
            v.push((format!("loop5_{i}"), l));
        }
        for n in [8, 12] {
            for (i, l) in enumerate_left_bol(n, true).expect("fast order").into_iter().enumerate() {
                v.push((format!("bol{n}_{i}"), l));
            }
        }
        v
    })
}

// ---------------------------------------------------------------- oracles

/// The `x` with `(a⊕b)⊕x = a⊕(b⊕c)`, found by scanning a row. Agrees with
/// `gyr` on loops with the left inverse property.
pub fn gyr_by_division(l: &Loop, a: usize, b: usize, c: usize) -> usize {
    let ab = l.op(a, b);
    let target = l.op(a, l.op(b, c));
    (0..l.order()).find(|&x| l.op(ab, x) == target).expect("Latin row")
}

pub fn naive_left_bol(t: &CayleyTable) -> bool {
    let n = t.order();
    let m = |x, y| t.get(x, y);
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(a, m(b, m(a, c))) == m(m(a, m(b, a)), c))))
}

fn inverse_by_scan(l: &Loop, a: usize) -> usize {
    (0..l.order()).find(|&x| l.op(a, x) == l.identity()).expect("Latin row")
}

/// Subgroup generated by all `a⁻¹b⁻¹ab`, closed under products only
/// (enough in a finite group).
pub fn classical_commutator_subgroup(g: &Loop) -> BTreeSet<usize> {
    let n = g.order();
    let mut set: BTreeSet<usize> = BTreeSet::new();
    set.insert(g.identity());
    for a in 0..n {
        for b in 0..n {
            let (ia, ib) = (inverse_by_scan(g, a), inverse_by_scan(g, b));
            set.insert(g.op(g.op(ia, ib), g.op(a, b)));
        }
    }
    loop {
        let prods: Vec<usize> =
            set.iter().flat_map(|&x| set.iter().map(move |&y| (x, y))).map(|(x, y)| g.op(x, y)).collect();
        let before = set.len();
        set.extend(prods);
        if set.len() == before {
            return set;
        }
    }
}

/// All identity-fixing permutations of `0..n`, by Heap's algorithm.
pub fn all_identity_fixing_perms(n: usize, e: usize) -> Vec<Perm> {
    let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let mut out = Vec::new();
    let mut a = others.clone();
    let k = a.len();
    let mut c = vec![0usize; k];
    let push = |a: &[usize], out: &mut Vec<Perm>| {
        let mut img = vec![0usize; n];
        img[e] = e;
        for (src, dst) in others.iter().zip(a) {
            img[*src] = *dst;
        }
        out.push(Perm::from_images(&img).expect("bijection"));
    };
    push(&a, &mut out);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            push(&a, &mut out);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn brute_force_automorphisms(l: &Loop) -> BTreeSet<Perm> {
    all_identity_fixing_perms(l.order(), l.identity())
        .into_iter()
        .filter(|p| (0..l.order()).all(|a| (0..l.order()).all(|b| p.apply(l.op(a, b)) == l.op(p.apply(a), p.apply(b)))))
        .collect()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

// ------------------------------------------------------------ strategies

fn entry_and_perm() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..corpus().len()).prop_flat_map(|i| {
        let n = corpus()[i].1.order();
        (Just(i), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })
}

fn perm_of_degree(max: usize) -> impl Strategy<Value = Perm> {
    (1..=max).prop_flat_map(|n| Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Perm::from_images(&v).expect("shuffle"))
}

fn relabeled(i: usize, p: &[usize]) -> (Loop, Perm) {
    let p = Perm::from_images(p).expect("shuffle");
    let t = relabel(corpus()[i].1.table(), &p);
    (Loop::new(t).expect("relabeled loop"), p)
}

// ------------------------------------------------------------ properties

fn loop_properties(cases: u32, rng: Option<TestRng>) -> Result<(), String> {
    run(cases, rng, (entry_and_perm(), any::<prop::sample::Index>(), any::<prop::sample::Index>()), |((i, p), ci, di)| {
        let (l, _) = relabeled(i, &p);
        let n = l.order();
        let rows = l.table().to_rows();
        for r in 0..n {
            let row: BTreeSet<usize> = rows[r].iter().copied().collect();
            let col: BTreeSet<usize> = rows.iter().map(|row| row[r]).collect();
            prop_assert_eq!(row.len(), n);
            prop_assert_eq!(col.len(), n);
        }
        if l.is_associative() {
            prop_assert!(l.is_left_bol() && l.is_moufang());
        }
        prop_assert_eq!(l.is_left_bol(), naive_left_bol(l.table()));
        for a in 0..n {
            prop_assert_eq!(l.inv(l.inv(a)), a);
        }
        // the reconstruction is total, and one corrupted entry is rejected
        prop_assert!(Loop::from_rows(&rows).is_ok());
        if n > 1 {
            let cell = ci.index(n * n);
            let mut bad = rows.clone();
            let old = bad[cell / n][cell % n];
            bad[cell / n][cell % n] = (old + 1 + di.index(n - 1)) % n;
            prop_assert!(Loop::from_rows(&bad).is_err());
        }
        Ok(())
    })
}

fn cycle_notation_round_trip(cases: u32, rng: Option<TestRng>) -> Result<(), String> {
    run(cases, rng, (perm_of_degree(20), any::<bool>()), |(p, one_based)| {
        let s = p.format_cycles(one_based);
        let q = Perm::parse_cycles(&s, p.degree(), one_based).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(q.format_cycles(one_based), s);
        Ok(())
    })
}

fn group_closure_properties(cases: u32, rng: Option<TestRng>) -> Result<(), String> {
    let gens = (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), 1..=3)
    });
    run(cases, rng, (gens, any::<u64>()), |(gens, seed)| {
        let n = gens[0].len();
        let gens: Vec<Perm> = gens.iter().map(|g| Perm::from_images(g).expect("shuffle")).collect();
        let h = group_closure(n, &gens).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(factorial(n) % h.len() as u128, 0);
        prop_assert!(is_closed_set(h.iter()).is_closed());
        let mut shuffled = gens.clone();
        shuffled.rotate_left((seed as usize) % gens.len());
        shuffled.reverse();
        prop_assert_eq!(group_closure(n, &shuffled).expect("same degree"), h);
        Ok(())
    })
}

fn gyrator_properties(cases: u32, rng: Option<TestRng>) -> Result<(), String> {
    run(cases, rng, entry_and_perm(), |(i, p)| {
        let (l, _) = relabeled(i, &p);
        let n = l.order();
        let e = l.identity();
        let gyrogroup = is_gyrogroup(&l).is_ok();
        let bol = l.is_left_bol();
        for a in 0..n {
            for b in 0..n {
                let g = gyr(&l, a, b);
                if bol {
                    prop_assert!(g.is_bijective());
                    for c in 0..n {
                        prop_assert_eq!(g.apply(c), gyr_by_division(&l, a, b, c));
                    }
                }
                if gyrogroup {
                    prop_assert_eq!(g.apply(e), e);
                    prop_assert!(g == gyr(&l, l.op(a, b), b));
                    prop_assert!(g == gyr(&l, a, l.op(b, a)));
                }
            }
        }
        if gyrogroup {
            let set = gyrator_set(&l).expect("gyrogroups have bijective gyrators");
            prop_assert_eq!(set.perms.is_empty(), l.is_associative());
        }
        prop_assert_eq!(gyration_table(&l), gyration_table(&l));
        Ok(())
    })
}

fn isomorphism_properties(cases: u32, rng: Option<TestRng>) -> Result<(), String> {
    let pair = (entry_and_perm(), 0..corpus().len());
    run(cases, rng, pair, |((i, p), j)| {
        let (a, _) = relabeled(i, &p);
        let b = &corpus()[j].1;
        let orig = &corpus()[i].1;

        let w = are_isomorphic(&a, &a);
        prop_assert!(w.as_ref().is_some_and(|w| is_isomorphism(&a, &a, w)));

        let fwd = are_isomorphic(orig, &a);
        prop_assert!(fwd.is_some());
        let fwd = fwd.unwrap();
        prop_assert!(is_isomorphism(orig, &a, &fwd));
        prop_assert!(is_isomorphism(&a, orig, &fwd.inverse()));
        let back = are_isomorphic(&a, orig);
        prop_assert!(back.as_ref().is_some_and(|w| is_isomorphism(&a, orig, w)));
        prop_assert_eq!(canonical_key(&a), canonical_key(orig));

        let ab = are_isomorphic(&a, b);
        let ba = are_isomorphic(b, &a);
        prop_assert_eq!(ab.is_some(), ba.is_some());
        prop_assert_eq!(ab.is_some(), canonical_key(&a) == canonical_key(b));
        if let Some(w) = &ab {
            prop_assert!(is_isomorphism(&a, b, w));
        }

        let (pa, po) = (gyration_table(&a), gyration_table(orig));
        prop_assert_eq!(
            (pa.is_left_bol, pa.is_moufang, pa.is_group, pa.is_gyrogroup, pa.is_gyrocommutative),
            (po.is_left_bol, po.is_moufang, po.is_group, po.is_gyrogroup, po.is_gyrocommutative)
        );
        prop_assert_eq!(pa.gyrators.len(), po.gyrators.len());
        prop_assert_eq!(pa.gyrators_closed, po.gyrators_closed);
        Ok(())
    })
}

fn automorphism_group_properties(cases: u32, rng: Option<TestRng>) -> Result<(), String> {
    run(cases, rng, entry_and_perm(), |(i, p)| {
        let (l, _) = relabeled(i, &p);
        let aut = automorphism_group(&l);
        prop_assert!(aut.contains(&Perm::identity(l.order())));
        // every product x∘y with y among (a spread of) up to 24 members
        let step = aut.len().div_ceil(24);
        let some: Vec<&Perm> = aut.iter().step_by(step).collect();
        for x in &aut {
            prop_assert!(is_isomorphism(&l, &l, x));
            prop_assert!(aut.contains(&x.inverse()));
            for y in &some {
                prop_assert!(aut.contains(&x.compose(y).expect("same degree")));
            }
        }
        Ok(())
    })
}

fn structure_properties(cases: u32, rng: Option<TestRng>) -> Result<(), String> {
    let seeds = (prop::collection::vec(any::<prop::sample::Index>(), 0..3), prop::collection::vec(any::<prop::sample::Index>(), 0..3));
    run(cases, rng, (entry_and_perm(), seeds), |((i, p), (s1, s2))| {
        let (l, _) = relabeled(i, &p);
        let n = l.order();
        if is_gyrogroup(&l).is_ok() {
            for a in 0..n {
                for b in 0..n {
                    let vanishes = commutator_unchecked(&l, a, b) == l.identity();
                    let gyrocomm = l.op(a, b) == gyr(&l, a, b).apply(l.op(b, a));
                    prop_assert_eq!(vanishes, gyrocomm);
                }
            }
        }
        let small: Vec<usize> = s1.iter().map(|x| x.index(n)).collect();
        let mut large = small.clone();
        large.extend(s2.iter().map(|x| x.index(n)));
        let h = generated_subsystem(&l, &small);
        let again = generated_subsystem(&l, h.members());
        prop_assert_eq!(again.members(), h.members());
        let big = generated_subsystem(&l, &large);
        prop_assert!(h.members().iter().all(|&x| big.contains(x)));
        if h.is_normal().is_ok() {
            let (cosets, partition) = h.left_cosets();
            prop_assert!(partition);
            prop_assert!(cosets.iter().all(|c| c.len() == h.len()));
        }
        Ok(())
    })
}

fn report_properties(cases: u32, rng: Option<TestRng>) -> Result<(), String> {
    let picks = prop::collection::vec((0..corpus().len(), any::<bool>()), 0..6);
    run(cases, rng, picks, |picks| {
        let items: Vec<(String, Loop)> = picks
            .iter()
            .map(|&(i, dup)| {
                let (name, l) = &corpus()[i];
                (if dup { "dup".to_string() } else { name.clone() }, l.clone())
            })
            .collect();
        let corpus = Corpus::from_loops(&items);
        let one = classify_with_threads(&corpus, 1);
        let many = classify_with_threads(&corpus, 3);
        prop_assert_eq!(&one, &many);
        prop_assert_eq!(render_csv(&one), render_csv(&many));
        prop_assert_eq!(render_json(&one), render_json(&one));
        for s in &one.summary {
            prop_assert!(s.alpha >= s.beta);
        }
        // round trip through the table text format
        if !corpus.is_empty() {
            let text: Vec<String> = corpus.entries.iter().map(|e| e.table.to_text(Some(&e.name))).collect();
            let reread = parse_corpus_text(&text.join("\n"), std::path::Path::new("rt.txt"), true)
                .map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(classify_with_threads(&reread, 1), one);
        }
        Ok(())
    })
}

fn table_text_round_trip(cases: u32, rng: Option<TestRng>) -> Result<(), String> {
    run(cases, rng, entry_and_perm(), |(i, p)| {
        let (l, _) = relabeled(i, &p);
        let text = l.table().to_text(Some("t"));
        let c = parse_corpus_text(&text, std::path::Path::new("t.txt"), true)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(c.len(), 1);
        prop_assert_eq!(&c.entries[0].table, l.table());
        prop_assert_eq!(c.entries[0].table.to_text(Some("t")), text);
        Ok(())
    })
}

/// Gyrocommutativity is only reported on gyrogroups.
fn gyrocommutative_domain(cases: u32, rng: Option<TestRng>) -> Result<(), String> {
    run(cases, rng, 0..corpus().len(), |i| {
        let l = &corpus()[i].1;
        prop_assert_eq!(is_gyrocommutative(l).is_ok(), is_gyrogroup(l).is_ok());
        Ok(())
    })
}

fn run<S, F>(cases: u32, rng: Option<TestRng>, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = match rng {
        Some(rng) => TestRunner::new_with_rng(config, rng),
        None => TestRunner::new(config),
    };
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub type Suite = fn(u32, Option<TestRng>) -> Result<(), String>;

/// Every property suite with its name.
pub fn suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("loop invariants", loop_properties as Suite),
        ("cycle notation round trip", cycle_notation_round_trip),
        ("group closure", group_closure_properties),
        ("gyrators", gyrator_properties),
        ("gyrocommutative domain", gyrocommutative_domain),
        ("isomorphism equivalence", isomorphism_properties),
        ("automorphism groups", automorphism_group_properties),
        ("structure", structure_properties),
        ("table text round trip", table_text_round_trip),
        ("report determinism", report_properties),
    ]
}

pub fn deterministic_rng() -> TestRng {
    TestRng::deterministic_rng(RngAlgorithm::ChaCha)
}

pub fn cycle_set(perms: impl IntoIterator<Item = Perm>) -> BTreeSet<String> {
    perms.into_iter().map(|p| p.format_cycles(true)).collect()
}

pub fn table_of(rows: &[&[usize]]) -> CayleyTable {
    CayleyTable::from_rows(rows).expect("square table")
}
