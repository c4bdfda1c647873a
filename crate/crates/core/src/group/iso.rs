use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::{FiniteGroup, GroupMap};

/// Extends generator images to a full map by walking the Cayley graph of
/// `source` with respect to `gens`.
///
/// Every edge `x -> x g` is checked against `f(x g) = f(x) f(g)`, which is
/// enough for the result to be a homomorphism. Returns `None` on any
/// inconsistency or if `gens` does not generate `source`.
pub fn extend_homomorphism(
    source: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    target: &FiniteGroup,
) -> Option<Vec<usize>> {
    debug_assert_eq!(gens.len(), images.len());
    const UNSET: usize = usize::MAX;
    let mut map = vec![UNSET; source.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    let mut reached = 1;
    while let Some(x) = queue.pop_front() {
        for (&g, &y) in gens.iter().zip(images) {
            let xg = source.mul(x, g);
            let want = target.mul(map[x], y);
            if map[xg] == UNSET {
                map[xg] = want;
                reached += 1;
                queue.push_back(xg);
            } else if map[xg] != want {
                return None;
            }
        }
    }
    (reached == source.order()).then_some(map)
}

/// Invariants that isomorphic groups share.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    /// `(element order, count)` pairs, ascending.
    pub order_histogram: Vec<(usize, usize)>,
    /// Conjugacy class sizes, ascending.
    pub class_sizes: Vec<usize>,
    pub commutator_order: usize,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hist: Vec<String> = self.order_histogram.iter().map(|(o, c)| format!("{o}^{c}")).collect();
        write!(
            f,
            "{}{}-z{}-d{}-[{}]",
            if self.abelian { "ab" } else { "na" },
            self.order,
            self.center_order,
            self.commutator_order,
            hist.join(",")
        )
    }
}

pub fn iso_fingerprint(group: &FiniteGroup) -> Fingerprint {
    let mut class_sizes: Vec<usize> = group.conjugacy_classes().iter().map(Vec::len).collect();
    class_sizes.sort_unstable();
    Fingerprint {
        order: group.order(),
        abelian: group.is_abelian(),
        center_order: group.center().order(),
        order_histogram: group.order_histogram().into_iter().collect(),
        class_sizes,
        commutator_order: group.commutator_subgroup().order(),
    }
}

fn class_size_of(group: &FiniteGroup) -> Vec<usize> {
    let mut out = vec![0; group.order()];
    for class in group.conjugacy_classes() {
        for &x in &class {
            out[x] = class.len();
        }
    }
    out
}

/// Enumerates bijective homomorphisms `source -> target` determined by the
/// images of `source.search_generators()`. Candidate images of each
/// generator are elements of the same order and conjugacy class size, tried
/// in increasing index order, and must also pass `compatible(g, y)`.
/// `visit` returns `false` to stop.
pub(crate) fn search_isomorphisms(
    source: &FiniteGroup,
    target: &FiniteGroup,
    compatible: impl Fn(usize, usize) -> bool,
    mut visit: impl FnMut(Vec<usize>) -> bool,
) {
    if source.order() != target.order() {
        return;
    }
    let gens = source.search_generators().to_vec();
    let src_class = class_size_of(source);
    let tgt_class = class_size_of(target);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            target
                .elements()
                .filter(|&y| {
                    target.element_order(y) == source.element_order(g)
                        && tgt_class[y] == src_class[g]
                        && compatible(g, y)
                })
                .collect()
        })
        .collect();
    if candidates.iter().any(Vec::is_empty) {
        return;
    }

    let k = gens.len();
    let mut choice = vec![0usize; k];
    let mut images = vec![0usize; k];
    let mut depth = 0;
    // Iterative backtracking; at each depth prune with pairwise product orders.
    loop {
        if depth == k {
            if let Some(map) = extend_homomorphism(source, &gens, &images, target) {
                let iso = GroupMap::trusted(source.clone(), target.clone(), map);
                if iso.is_bijective() && !visit(iso.images) {
                    return;
                }
            }
            depth -= 1;
            choice[depth] += 1;
            continue;
        }
        if choice[depth] >= candidates[depth].len() {
            if depth == 0 {
                return;
            }
            choice[depth] = 0;
            depth -= 1;
            choice[depth] += 1;
            continue;
        }
        let y = candidates[depth][choice[depth]];
        let ok = (0..depth).all(|i| {
            images[i] != y
                && target.element_order(target.mul(images[i], y))
                    == source.element_order(source.mul(gens[i], gens[depth]))
        });
        if ok {
            images[depth] = y;
            depth += 1;
            if depth < k {
                choice[depth] = 0;
            }
        } else {
            choice[depth] += 1;
        }
    }
}

/// Finds an isomorphism `g -> h`, if one exists.
///
/// The fingerprint is compared first; otherwise the search is exhaustive
/// and deterministic: generator images are tried in increasing index order
/// and the first bijective homomorphism is returned.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupMap> {
    if g.order() != h.order() || iso_fingerprint(g) != iso_fingerprint(h) {
        return None;
    }
    if g.order() == 1 {
        return Some(GroupMap::trusted(g.clone(), h.clone(), vec![0]));
    }
    let mut found = None;
    search_isomorphisms(g, h, |_, _| true, |images| {
        found = Some(images);
        false
    });
    found.map(|images| GroupMap::trusted(g.clone(), h.clone(), images))
}

/// All automorphisms of `group`, sorted by image array. The identity map
/// comes first.
pub fn automorphisms(group: &FiniteGroup) -> Vec<GroupMap> {
    if group.order() == 1 {
        return vec![GroupMap::identity(group)];
    }
    let mut out = Vec::new();
    search_isomorphisms(group, group, |_, _| true, |images| {
        out.push(images);
        true
    });
    out.sort();
    out.dedup();
    out.into_iter()
        .map(|images| GroupMap::trusted(group.clone(), group.clone(), images))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn g(spec: &str) -> FiniteGroup {
        build_group(spec).unwrap()
    }

    fn verify_iso(iso: &GroupMap) {
        let again = GroupMap::new(iso.source().clone(), iso.target().clone(), iso.images().to_vec());
        assert!(again.is_ok());
        assert!(iso.is_bijective());
    }

    #[test]
    fn identity_iso_exists() {
        for spec in ["C:1", "C:6", "D:5", "S:4", "M:7:3"] {
            let grp = g(spec);
            verify_iso(&find_isomorphism(&grp, &grp).unwrap());
        }
    }

    #[test]
    fn nonabelian_vs_abelian() {
        assert!(find_isomorphism(&g("D:4"), &g("C:4 x C:2")).is_none());
        assert!(find_isomorphism(&g("C:6"), &g("S:3")).is_none());
    }

    #[test]
    fn known_isomorphisms() {
        for (a, b) in [
            ("M:3:2", "D:3"),
            ("D:6", "D:3 x C:2"),
            ("C:3 x C:2", "C:6"),
            ("D:10", "D:5 x C:2"),
        ] {
            let (ga, gb) = (g(a), g(b));
            assert_eq!(iso_fingerprint(&ga), iso_fingerprint(&gb), "{a} vs {b}");
            verify_iso(&find_isomorphism(&ga, &gb).unwrap());
        }
    }

    #[test]
    fn s5_vs_a5_c2_differ_in_center() {
        let (s5, a5c2) = (g("S:5"), g("A:5 x C:2"));
        let (fs, fa) = (iso_fingerprint(&s5), iso_fingerprint(&a5c2));
        assert_eq!((fs.center_order, fa.center_order), (1, 2));
        assert!(find_isomorphism(&s5, &a5c2).is_none());
    }

    #[test]
    fn distinct_abelian_types() {
        let a = g("C:4 x C:2 x C:2");
        let b = g("C:4 x C:4");
        assert_ne!(iso_fingerprint(&a), iso_fingerprint(&b));
        assert!(find_isomorphism(&a, &b).is_none());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&g("C:1")).len(), 1);
        assert_eq!(automorphisms(&g("C:8")).len(), 4);
        assert_eq!(automorphisms(&g("S:3")).len(), 6);
        assert_eq!(automorphisms(&g("D:4")).len(), 8);
        assert_eq!(automorphisms(&g("C:2 x C:2")).len(), 6);
        assert_eq!(automorphisms(&g("M:7:3")).len(), 42);
        let auts = automorphisms(&g("D:5"));
        assert_eq!(auts.len(), 20);
        assert_eq!(auts[0], GroupMap::identity(auts[0].source()));
        auts.iter().for_each(verify_iso);
    }

    #[test]
    fn extension_rejects_inconsistent_images() {
        let c4 = g("C:4");
        assert_eq!(extend_homomorphism(&c4, &[1], &[2], &c4), Some(vec![0, 2, 0, 2]));
        let c3 = g("C:3");
        assert_eq!(extend_homomorphism(&c4, &[1], &[1], &c3), None);
        // non-generating set
        assert_eq!(extend_homomorphism(&c4, &[2], &[0], &c4), None);
    }
}
