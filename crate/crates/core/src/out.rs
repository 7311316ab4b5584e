//! Automorphism groups by exhaustive search, inner automorphisms, and the
//! outer automorphism group Out = Aut/Inn.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{bound_check, Result};
use crate::group::{compose, invert_perm, FiniteGroup};

/// Default bound on group order for automorphism enumeration.
pub const DEFAULT_OUT_ORDER_BOUND: usize = 64;
/// Default bound on the number of generator-image assignments tried.
pub const DEFAULT_OUT_SEARCH_BUDGET: u128 = 50_000_000;

/// Aut(A) with its inner subgroup and the coset decomposition into Out(A).
#[derive(Clone, Debug)]
pub struct OutData {
    group: FiniteGroup,
    automorphisms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    inner: Vec<usize>,
    class_of: Vec<usize>,
    class_reps: Vec<usize>,
}

impl OutData {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// All automorphisms as permutations, in lexicographic order.
    pub fn automorphisms(&self) -> &[Vec<usize>] {
        &self.automorphisms
    }

    pub fn aut_order(&self) -> usize {
        self.automorphisms.len()
    }

    /// Indices (into [`OutData::automorphisms`]) of the inner automorphisms.
    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn out_order(&self) -> usize {
        self.class_reps.len()
    }

    pub fn aut_index(&self, perm: &[usize]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    pub fn aut(&self, idx: usize) -> &[usize] {
        &self.automorphisms[idx]
    }

    /// Out-class of an automorphism index.
    pub fn class_of(&self, aut: usize) -> usize {
        self.class_of[aut]
    }

    /// Lexicographically least automorphism (as index) of each Out class.
    pub fn class_representatives(&self) -> &[usize] {
        &self.class_reps
    }

    /// Index of `inn(a)`: x ↦ a x a⁻¹.
    pub fn inn(&self, a: usize) -> usize {
        let perm: Vec<usize> = self
            .group
            .elements()
            .map(|x| self.group.conj(a, x))
            .collect();
        self.index[&perm]
    }

    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.index[&compose(&self.automorphisms[f], &self.automorphisms[g])]
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.index[&invert_perm(&self.automorphisms[f])]
    }

    /// Product in Out(A) of two class indices.
    pub fn out_mul(&self, a: usize, b: usize) -> usize {
        self.class_of[self.compose(self.class_reps[a], self.class_reps[b])]
    }

    pub fn out_identity(&self) -> usize {
        let id: Vec<usize> = self.group.elements().collect();
        self.class_of[self.index[&id]]
    }
}

/// Enumerates Aut(`group`) exhaustively and forms Out. Uses the default
/// bounds.
pub fn compute_out(group: &FiniteGroup) -> Result<OutData> {
    compute_out_with(group, DEFAULT_OUT_ORDER_BOUND, DEFAULT_OUT_SEARCH_BUDGET)
}

pub fn compute_out_with(group: &FiniteGroup, order_bound: usize, budget: u128) -> Result<OutData> {
    bound_check(
        "automorphism search (group order)",
        group.order() as u128,
        order_bound as u128,
    )?;
    let gens = group.generators();
    let orders: Vec<usize> = group.elements().map(|x| group.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            group
                .elements()
                .filter(|&x| orders[x] == orders[g])
                .collect()
        })
        .collect();
    let needed = candidates
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    bound_check("automorphism search (generator images)", needed, budget)?;

    // Every element as a word: parent · generator, in BFS order from 1.
    let mut word: Vec<Option<(usize, usize)>> = vec![None; group.order()];
    let mut bfs = vec![group.identity()];
    let mut seen = vec![false; group.order()];
    seen[group.identity()] = true;
    let mut head = 0;
    while head < bfs.len() {
        let x = bfs[head];
        head += 1;
        for (gi, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                word[y] = Some((x, gi));
                bfs.push(y);
            }
        }
    }

    let extend = |images: &[usize]| -> Option<Vec<usize>> {
        let mut perm = vec![usize::MAX; group.order()];
        perm[group.identity()] = group.identity();
        for &y in &bfs[1..] {
            let (parent, gi) = word[y].expect("reachable");
            perm[y] = group.mul(perm[parent], images[gi]);
        }
        group.is_automorphism(&perm).then_some(perm)
    };

    let first: Vec<usize> = candidates.first().cloned().unwrap_or_default();
    let mut automorphisms: Vec<Vec<usize>> = if gens.is_empty() {
        vec![group.elements().collect()]
    } else {
        first
            .par_iter()
            .flat_map_iter(|&img0| {
                let mut found = Vec::new();
                let mut images = vec![img0];
                search(&candidates, &mut images, &extend, &mut found);
                found
            })
            .collect()
    };
    automorphisms.sort();
    automorphisms.dedup();

    let index: HashMap<Vec<usize>, usize> = automorphisms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();

    let mut inner: Vec<usize> = group
        .elements()
        .map(|a| {
            let perm: Vec<usize> = group.elements().map(|x| group.conj(a, x)).collect();
            index[&perm]
        })
        .collect();
    inner.sort_unstable();
    inner.dedup();

    // Cosets f·Inn, labelled in order of their least member.
    let mut class_of = vec![usize::MAX; automorphisms.len()];
    let mut class_reps = Vec::new();
    for f in 0..automorphisms.len() {
        if class_of[f] != usize::MAX {
            continue;
        }
        let c = class_reps.len();
        class_reps.push(f);
        for &i in &inner {
            let member = index[&compose(&automorphisms[f], &automorphisms[i])];
            class_of[member] = c;
        }
    }

    Ok(OutData {
        group: group.clone(),
        automorphisms,
        index,
        inner,
        class_of,
        class_reps,
    })
}

fn search(
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    extend: &(dyn Fn(&[usize]) -> Option<Vec<usize>> + Sync),
    found: &mut Vec<Vec<usize>>,
) {
    if images.len() == candidates.len() {
        if let Some(p) = extend(images) {
            found.push(p);
        }
        return;
    }
    for &c in &candidates[images.len()] {
        images.push(c);
        search(candidates, images, extend, found);
        images.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_aut_count(g: &FiniteGroup) -> usize {
        // every permutation fixing nothing in particular: only for tiny groups
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        perms(g.order())
            .into_iter()
            .filter(|p| g.is_automorphism(p))
            .count()
    }

    #[test]
    fn klein_four() {
        let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let out = compute_out(&v4).unwrap();
        assert_eq!(brute_force_aut_count(&v4), 6);
        assert_eq!(out.aut_order(), 6);
        assert_eq!(out.inner().len(), 1);
        assert_eq!(out.out_order(), 6);
    }

    #[test]
    fn cyclic_eight() {
        let z8 = FiniteGroup::cyclic(8);
        let out = compute_out(&z8).unwrap();
        assert_eq!(brute_force_aut_count(&z8), 4);
        assert_eq!(out.aut_order(), 4);
    }

    #[test]
    fn trivial() {
        let out = compute_out(&FiniteGroup::trivial()).unwrap();
        assert_eq!(out.aut_order(), 1);
        assert_eq!(out.out_order(), 1);
    }

    #[test]
    fn bound_exceeded() {
        let g = FiniteGroup::cyclic(70);
        assert!(matches!(
            compute_out(&g),
            Err(crate::error::Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn out_is_a_group_on_classes() {
        let s3_like = FiniteGroup::cyclic(6);
        let out = compute_out(&s3_like).unwrap();
        let e = out.out_identity();
        for a in 0..out.out_order() {
            assert_eq!(out.out_mul(a, e), a);
        }
    }
}
