use itertools::Itertools;

use crate::brace::SkewBrace;
use crate::group::{build_group, FiniteGroup};
use crate::maps::AbelianMap;

pub(crate) fn idx(grp: &FiniteGroup, name: &str) -> usize {
    grp.index_of_name(name).unwrap_or_else(|| panic!("no element {name}"))
}

/// On `S:n`, the map that is trivial on `A_n` and sends odd permutations to `xi`.
pub(crate) fn s_map(sn: &FiniteGroup, xi: usize) -> AbelianMap {
    let an = sn.commutator_subgroup();
    let images = sn.elements().map(|x| if an.contains(x) { 0 } else { xi }).collect();
    AbelianMap::new(sn.clone(), images).unwrap()
}

/// `(S₃, ·)` against `(S₃, ·)` relabelled by every bijection fixing the identity,
/// with no brace-law check.
pub(crate) fn relabelled_pairs() -> Vec<SkewBrace> {
    let s3 = build_group("S:3").unwrap();
    let n = 6;
    (1..n)
        .permutations(n - 1)
        .map(|rest| {
            let perm: Vec<usize> = std::iter::once(0).chain(rest).collect();
            let back = |x: usize| perm.iter().position(|&p| p == x).unwrap();
            let table = (0..n * n).map(|i| perm[s3.mul(back(i / n), back(i % n))]).collect();
            let circle = FiniteGroup::from_table("S3'", s3.names().to_vec(), table, vec![]).unwrap();
            SkewBrace::unchecked(s3.clone(), circle)
        })
        .collect()
}
