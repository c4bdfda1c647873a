//! Exhaustive searches in `Perm(G)` for very small `G`, used as independent
//! checks on the constructions.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{GroupPermutation, PermSubgroup};

/// Largest group order the oracles accept.
pub const ORACLE_CAP: usize = 8;

fn check_cap(group: &FiniteGroup, what: &'static str) -> Result<()> {
    if group.order() > ORACLE_CAP {
        return Err(Error::OrderCap { what, order: group.order(), cap: ORACLE_CAP });
    }
    Ok(())
}

/// Closure of `gens` under composition, abandoned as soon as it holds more
/// than `n` elements or a non-identity element with a fixed point.
fn semiregular_closure(gens: &[GroupPermutation], n: usize) -> Option<Vec<GroupPermutation>> {
    let id = GroupPermutation::identity(n);
    let mut seen: HashSet<GroupPermutation> = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.compose(g);
            if seen.contains(&y) {
                continue;
            }
            if y.has_fixed_point() || seen.len() == n {
                return None;
            }
            seen.insert(y.clone());
            frontier.push(y);
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    Some(out)
}

/// Permutations of `0..n` sending `0` to `g` with no fixed point.
fn fixed_point_free_with_image(n: usize, g: usize) -> Vec<GroupPermutation> {
    (0..n)
        .filter(|&x| x != g)
        .permutations(n - 1)
        .filter_map(|rest| {
            let mapping: Vec<usize> = std::iter::once(g).chain(rest).collect();
            let fpf = mapping.iter().enumerate().all(|(i, &v)| i != v);
            fpf.then(|| GroupPermutation::trusted(mapping))
        })
        .collect()
}

fn extend(
    group: &FiniteGroup,
    gens: &mut Vec<GroupPermutation>,
    current: Vec<GroupPermutation>,
    out: &mut BTreeSet<Vec<GroupPermutation>>,
) {
    let n = group.order();
    if current.len() == n {
        let stable = current.iter().all(|p| {
            group
                .search_generators()
                .iter()
                .all(|&g| current.binary_search(&p.conjugate_by_left(group, g)).is_ok())
        });
        if stable {
            out.insert(current);
        }
        return;
    }
    let covered: BTreeSet<usize> = current.iter().map(|p| p.apply(0)).collect();
    let g = (1..n).find(|g| !covered.contains(g)).expect("an uncovered point exists");
    for p in fixed_point_free_with_image(n, g) {
        gens.push(p);
        if let Some(next) = semiregular_closure(gens, n) {
            extend(group, gens, next, out);
        }
        gens.pop();
    }
}

/// Every regular, `G`-stable subgroup of `Perm(G)`, sorted and without
/// duplicates. Built by adjoining, for the least point `g` not yet reached
/// from the identity, each fixed point free permutation sending `1` to `g`.
pub fn oracle_all_regular_stable(group: &FiniteGroup) -> Result<Vec<PermSubgroup>> {
    check_cap(group, "regular subgroup oracle")?;
    let n = group.order();
    if n == 1 {
        return Ok(vec![PermSubgroup::new(group.clone(), vec![GroupPermutation::identity(1)], None)?]);
    }
    let found: BTreeSet<Vec<GroupPermutation>> = fixed_point_free_with_image(n, 1)
        .into_par_iter()
        .map(|p| {
            let mut out = BTreeSet::new();
            let mut gens = vec![p];
            if let Some(start) = semiregular_closure(&gens, n) {
                extend(group, &mut gens, start, &mut out);
            }
            out
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    found.into_iter().map(|perms| PermSubgroup::new(group.clone(), perms, None)).collect()
}

/// The centralizer of `n` in `Perm(G)`, by testing every permutation.
pub fn centralizer_in_symmetric(n: &PermSubgroup) -> Result<Vec<GroupPermutation>> {
    let group = n.base();
    check_cap(group, "centralizer oracle")?;
    let k = group.order();
    let mut out: Vec<GroupPermutation> = (0..k)
        .permutations(k)
        .map(GroupPermutation::trusted)
        .filter(|c| n.elements().iter().all(|x| c.compose(x) == x.compose(c)))
        .collect();
    out.sort();
    Ok(out)
}
