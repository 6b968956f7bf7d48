//! Commutators, the derived subgyrogroup and normality.
//!
//! Normality of a subloop `S` is tested as a congruence: the relation
//! `a ~ b ⟺ ⊖a⊕b ∈ S` must be an equivalence compatible with `⊕`. On groups
//! this is ordinary normality.

use crate::gyration::{gyr, is_gyrogroup, GyroError};
use crate::table::Loop;

/// A subset of a loop closed under `⊕` and `⊖` and containing the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsystem<'a> {
    parent: &'a Loop,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl<'a> Subsystem<'a> {
    pub fn parent(&self) -> &'a Loop {
        self.parent
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether `⊕` restricted to the members is associative.
    pub fn is_subgroup(&self) -> bool {
        let l = self.parent;
        let m = &self.members;
        m.iter().all(|&a| {
            m.iter().all(|&b| m.iter().all(|&c| l.op(l.op(a, b), c) == l.op(a, l.op(b, c))))
        })
    }

    /// Whether every gyrator of the parent maps the subsystem into itself.
    pub fn is_gyr_stable(&self) -> bool {
        let l = self.parent;
        l.elements().all(|a| {
            l.elements().all(|b| {
                let g = gyr(l, a, b);
                self.members.iter().all(|&x| self.mask[g.apply(x)])
            })
        })
    }

    /// Left cosets `a⊕S`, one per distinct set, ordered by least element,
    /// with a flag telling whether they partition the parent.
    pub fn left_cosets(&self) -> (Vec<Vec<usize>>, bool) {
        let l = self.parent;
        let mut cosets: Vec<Vec<usize>> = l
            .elements()
            .map(|a| {
                let mut c: Vec<usize> = self.members.iter().map(|&x| l.op(a, x)).collect();
                c.sort_unstable();
                c
            })
            .collect();
        cosets.sort();
        cosets.dedup();
        let mut count = vec![0usize; l.order()];
        for c in &cosets {
            for &x in c {
                count[x] += 1;
            }
        }
        let partition = count.iter().all(|&k| k == 1);
        (cosets, partition)
    }

    /// Class of `a` under `a ~ b ⟺ ⊖a⊕b ∈ S`.
    fn class_of(&self, a: usize) -> Vec<usize> {
        let l = self.parent;
        let ia = l.inv(a);
        l.elements().filter(|&b| self.mask[l.op(ia, b)]).collect()
    }

    /// Congruence test; on failure returns a witness.
    pub fn is_normal(&self) -> Result<(), NormalityWitness> {
        let l = self.parent;
        let n = l.order();
        let classes: Vec<Vec<usize>> = l.elements().map(|a| self.class_of(a)).collect();
        let mut class_id = vec![usize::MAX; n];
        for a in 0..n {
            // reflexive by construction: ⊖a⊕a = e ∈ S
            for &b in &classes[a] {
                if classes[b] != classes[a] {
                    return Err(NormalityWitness::NotEquivalence { a, b });
                }
            }
            if class_id[a] == usize::MAX {
                for &b in &classes[a] {
                    class_id[b] = a;
                }
            }
        }
        for a in 0..n {
            for &a2 in &classes[a] {
                for b in 0..n {
                    for &b2 in &classes[b] {
                        if class_id[l.op(a, b)] != class_id[l.op(a2, b2)] {
                            return Err(NormalityWitness::NotCompatible { a, a2, b, b2 });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Why the coset relation of a subsystem is not a congruence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalityWitness {
    /// `b` is related to `a` but their classes differ.
    NotEquivalence { a: usize, b: usize },
    /// `a ~ a2` and `b ~ b2` but `a⊕b ≁ a2⊕b2`.
    NotCompatible { a: usize, a2: usize, b: usize, b2: usize },
}

/// Closure of `seed ∪ {e}` under `⊕` and `⊖`.
pub fn generated_subsystem<'a>(l: &'a Loop, seed: &[usize]) -> Subsystem<'a> {
    let n = l.order();
    let mut mask = vec![false; n];
    let mut members = vec![l.identity()];
    mask[l.identity()] = true;
    for &s in seed {
        if !mask[s] {
            mask[s] = true;
            members.push(s);
        }
    }
    let mut k = 0;
    while k < members.len() {
        let z = members[k];
        let mut fresh = vec![l.inv(z)];
        for j in 0..=k {
            let x = members[j];
            fresh.push(l.op(z, x));
            fresh.push(l.op(x, z));
        }
        for p in fresh {
            if !mask[p] {
                mask[p] = true;
                members.push(p);
            }
        }
        k += 1;
    }
    members.sort_unstable();
    Subsystem { parent: l, members, mask }
}

fn require_gyrogroup(l: &Loop) -> Result<(), GyroError> {
    is_gyrogroup(l).map_err(|_| GyroError::NotAGyrogroup)
}

/// `[a,b] = ⊖(a⊕b) ⊕ gyr[a,b](b⊕a)`, without checking that `l` is a gyrogroup.
pub fn commutator_unchecked(l: &Loop, a: usize, b: usize) -> usize {
    let g = gyr(l, a, b);
    l.op(l.inv(l.op(a, b)), g.apply(l.op(b, a)))
}

pub fn commutator(l: &Loop, a: usize, b: usize) -> Result<usize, GyroError> {
    require_gyrogroup(l)?;
    Ok(commutator_unchecked(l, a, b))
}

/// Every `[a,b]` over ordered pairs, deduplicated and sorted.
pub fn commutators(l: &Loop) -> Vec<usize> {
    let mut seen = vec![false; l.order()];
    for a in l.elements() {
        for b in l.elements() {
            seen[commutator_unchecked(l, a, b)] = true;
        }
    }
    l.elements().filter(|&x| seen[x]).collect()
}

/// The subgyrogroup generated by all commutators.
pub fn derived_subgyrogroup(l: &Loop) -> Result<Subsystem<'_>, GyroError> {
    require_gyrogroup(l)?;
    Ok(generated_subsystem(l, &commutators(l)))
}

/// Entries of `corpus` that are commutative but not associative. Non-gyrogroups
/// are skipped.
pub fn commutativity_sweep<'a, I>(corpus: I) -> Vec<usize>
where
    I: IntoIterator<Item = &'a Loop>,
{
    corpus
        .into_iter()
        .enumerate()
        .filter(|(_, l)| is_gyrogroup(l).is_ok() && l.is_commutative() && !l.is_associative())
        .map(|(i, _)| i)
        .collect()
}
