//! Abelian endomorphisms: homomorphisms `G -> G` with abelian image.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{build_group, extend_homomorphism, FiniteGroup, GroupMap, Subgroup};

/// Default cap on the group order for exhaustive enumeration.
pub const DEFAULT_ORDER_CAP: usize = 120;

/// An endomorphism of a finite group whose image is abelian.
#[derive(Clone, PartialEq, Eq)]
pub struct AbelianMap {
    group: FiniteGroup,
    images: Vec<usize>,
    fixed_point_free: bool,
}

impl AbelianMap {
    /// Checks the homomorphism law and that the image is abelian.
    pub fn new(group: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        let map = GroupMap::new(group.clone(), group.clone(), images)?;
        let image = map.image();
        if !image.is_abelian() {
            return Err(Error::Precondition("image is not abelian".into()));
        }
        Ok(Self::trusted(group, map.images().to_vec()))
    }

    pub(crate) fn trusted(group: FiniteGroup, images: Vec<usize>) -> Self {
        let fixed_point_free = images.iter().enumerate().skip(1).all(|(g, &y)| g != y);
        Self { group, images, fixed_point_free }
    }

    /// The map sending everything to the identity.
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::trusted(group.clone(), vec![0; group.order()])
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&y| y == 0)
    }

    /// `ψ(g) ≠ g` for every nontrivial `g`.
    pub fn is_fixed_point_free(&self) -> bool {
        self.fixed_point_free
    }

    pub fn kernel(&self) -> Subgroup {
        self.as_group_map().kernel()
    }

    pub fn image(&self) -> Subgroup {
        self.as_group_map().image()
    }

    pub fn as_group_map(&self) -> GroupMap {
        GroupMap::new(self.group.clone(), self.group.clone(), self.images.clone())
            .expect("abelian maps are homomorphisms")
    }

    /// `g ψ(g⁻¹)`; a homomorphism only on the subgroup where it lands in
    /// the center, so it is exposed as a raw function.
    pub fn phi(&self, g: usize) -> usize {
        let grp = &self.group;
        grp.mul(g, self.apply(grp.inv(g)))
    }

    /// The quasi-inverse of a fixed point free map: the unique `ψ` with
    /// `ψ(g Ψ(g⁻¹)) = Ψ(g⁻¹)`.
    pub fn quasi_inverse(&self) -> Result<AbelianMap> {
        let grp = &self.group;
        if let Some(g) = grp.elements().skip(1).find(|&g| self.apply(g) == g) {
            return Err(Error::NotFixedPointFree(g));
        }
        const UNSET: usize = usize::MAX;
        let mut images = vec![UNSET; grp.order()];
        for g in grp.elements() {
            let g_inv = grp.inv(g);
            let k = grp.mul(g, self.apply(g_inv));
            if images[k] != UNSET {
                return Err(Error::Verification(format!(
                    "g ↦ gΨ(g⁻¹) is not injective at {}",
                    grp.name(k)
                )));
            }
            images[k] = self.apply(g_inv);
        }
        let psi = AbelianMap::new(grp.clone(), images)?;
        if !psi.is_fixed_point_free() {
            return Err(Error::Verification("quasi-inverse has a fixed point".into()));
        }
        Ok(psi)
    }

    /// `φ⁻¹ ∘ ψ ∘ φ` for an automorphism `φ`.
    pub fn conjugate_by(&self, phi: &GroupMap) -> Result<AbelianMap> {
        if !phi.source().same_as(&self.group) || !phi.target().same_as(&self.group) {
            return Err(Error::Mismatch("automorphism of a different group".into()));
        }
        let phi_inv = phi.inverse().ok_or(Error::NotAutomorphism)?;
        let images = self
            .group
            .elements()
            .map(|g| phi_inv.apply(self.apply(phi.apply(g))))
            .collect();
        AbelianMap::new(self.group.clone(), images)
    }

    pub fn to_record(&self) -> MapRecord {
        MapRecord { group: self.group.spec().to_string(), images: self.images.clone() }
    }

    /// Short human-readable form listing the images of the recorded
    /// generators, e.g. `r↦1, s↦r s`.
    pub fn describe(&self) -> String {
        let gens = if self.group.generators().is_empty() {
            self.group.search_generators()
        } else {
            self.group.generators()
        };
        gens.iter()
            .map(|&g| format!("{}↦{}", self.group.name(g), self.group.name(self.apply(g))))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Debug for AbelianMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianMap({}; {})", self.group.spec(), self.describe())
    }
}

/// Serialized form of a map: `{"group": spec, "images": [..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapRecord {
    pub group: String,
    pub images: Vec<usize>,
}

impl MapRecord {
    /// Rebuilds the group from its spec and re-verifies the map.
    pub fn load(&self) -> Result<AbelianMap> {
        AbelianMap::new(build_group(&self.group)?, self.images.clone())
    }
}

/// `φ⁻¹ ∘ ψ ∘ φ`.
pub fn conjugate_map(psi: &AbelianMap, phi: &GroupMap) -> Result<AbelianMap> {
    psi.conjugate_by(phi)
}

pub fn quasi_inverse(psi: &AbelianMap) -> Result<AbelianMap> {
    psi.quasi_inverse()
}

pub fn is_fixed_point_free(psi: &AbelianMap) -> bool {
    psi.is_fixed_point_free()
}

/// Every abelian endomorphism of `group`, sorted by image array.
pub fn enumerate_abelian_maps(group: &FiniteGroup) -> Result<Vec<AbelianMap>> {
    enumerate_abelian_maps_capped(group, DEFAULT_ORDER_CAP)
}

/// As [`enumerate_abelian_maps`] with an explicit order cap.
///
/// Searches over images of `group.search_generators()`. An image of a
/// generator must have order dividing the generator's order, images of
/// conjugate generators must agree, and all images must commute pairwise;
/// each surviving assignment is extended along the Cayley graph.
pub fn enumerate_abelian_maps_capped(group: &FiniteGroup, cap: usize) -> Result<Vec<AbelianMap>> {
    if group.order() > cap {
        return Err(Error::OrderCap { what: "abelian map enumeration", order: group.order(), cap });
    }
    if group.order() == 1 {
        return Ok(vec![AbelianMap::trivial(group)]);
    }
    let gens = group.search_generators().to_vec();
    let classes = group.conjugacy_classes();
    let mut class_of = vec![0; group.order()];
    for (i, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x] = i;
        }
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            group
                .elements()
                .filter(|&y| group.element_order(g).is_multiple_of(group.element_order(y)))
                .collect()
        })
        .collect();

    let mut found: Vec<Vec<usize>> = candidates[0]
        .par_iter()
        .flat_map_iter(|&first| {
            let mut out = Vec::new();
            let mut images = vec![first];
            assign(group, &gens, &class_of, &candidates, &mut images, &mut out);
            out
        })
        .collect();
    found.sort_unstable();
    found.dedup();
    Ok(found.into_iter().map(|images| AbelianMap::trusted(group.clone(), images)).collect())
}

fn assign(
    group: &FiniteGroup,
    gens: &[usize],
    class_of: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let depth = images.len();
    if depth == gens.len() {
        if let Some(map) = extend_homomorphism(group, gens, images, group) {
            out.push(map);
        }
        return;
    }
    for &y in &candidates[depth] {
        let consistent = (0..depth).all(|i| {
            group.commutes(images[i], y)
                && (class_of[gens[i]] != class_of[gens[depth]] || images[i] == y)
        });
        if consistent {
            images.push(y);
            assign(group, gens, class_of, candidates, images, out);
            images.pop();
        }
    }
}

/// The projection `h k ↦ k` for a normal subgroup `G′` with an abelian
/// complement `G″`.
pub fn normal_complement_map(
    group: &FiniteGroup,
    normal: &Subgroup,
    complement: &Subgroup,
) -> Result<AbelianMap> {
    if !normal.parent().same_as(group) || !complement.parent().same_as(group) {
        return Err(Error::Mismatch("subgroups of a different group".into()));
    }
    if !group.is_normal(normal)? {
        return Err(Error::Precondition("G′ is not normal".into()));
    }
    if !complement.is_abelian() {
        return Err(Error::Precondition("G″ is not abelian".into()));
    }
    if normal.intersection(complement).order() != 1 {
        return Err(Error::Precondition("G′ ∩ G″ is nontrivial".into()));
    }
    if normal.order() * complement.order() != group.order() {
        return Err(Error::Precondition("|G′||G″| ≠ |G|".into()));
    }
    let mut images = vec![0; group.order()];
    for &h in normal.members() {
        for &k in complement.members() {
            images[group.mul(h, k)] = k;
        }
    }
    AbelianMap::new(group.clone(), images)
}
