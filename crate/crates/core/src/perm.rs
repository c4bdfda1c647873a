//! Permutations of a group's element set and subgroups of `Perm(G)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{build_group, FiniteGroup};

/// A permutation of `0..degree`; `mapping[h]` is the image of `h`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupPermutation(Vec<usize>);

impl GroupPermutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut hit = vec![false; mapping.len()];
        for &x in &mapping {
            if x >= mapping.len() || std::mem::replace(&mut hit[x], true) {
                return Err(Error::Precondition(format!("{mapping:?} is not a bijection")));
            }
        }
        Ok(Self(mapping))
    }

    pub(crate) fn trusted(mapping: Vec<usize>) -> Self {
        Self(mapping)
    }

    pub fn identity(degree: usize) -> Self {
        Self((0..degree).collect())
    }

    /// `λ(g)[h] = g h`
    pub fn left(group: &FiniteGroup, g: usize) -> Self {
        Self(group.elements().map(|h| group.mul(g, h)).collect())
    }

    /// `ρ(g)[h] = h g⁻¹`
    pub fn right(group: &FiniteGroup, g: usize) -> Self {
        let g_inv = group.inv(g);
        Self(group.elements().map(|h| group.mul(h, g_inv)).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, h: usize) -> usize {
        self.0[h]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GroupPermutation) -> GroupPermutation {
        Self(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> GroupPermutation {
        let mut inv = vec![0; self.0.len()];
        for (h, &x) in self.0.iter().enumerate() {
            inv[x] = h;
        }
        Self(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(h, &x)| h == x)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.0.iter().enumerate().any(|(h, &x)| h == x)
    }

    /// `λ(g) ∘ self ∘ λ(g⁻¹)`
    pub fn conjugate_by_left(&self, group: &FiniteGroup, g: usize) -> GroupPermutation {
        let g_inv = group.inv(g);
        Self(group.elements().map(|h| group.mul(g, self.0[group.mul(g_inv, h)])).collect())
    }
}

impl fmt::Debug for GroupPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A subgroup of `Perm(G)`, its elements sorted by mapping array so that
/// set equality is array equality.
#[derive(Clone)]
pub struct PermSubgroup {
    base: FiniteGroup,
    elements: Vec<GroupPermutation>,
    labels: Option<Vec<usize>>,
    /// `by_image_of_identity[k]` is the position of the unique element with
    /// `η[0] = k`, when evaluation at the identity is injective.
    by_image_of_identity: Option<Vec<usize>>,
}

impl PartialEq for PermSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.base.same_as(&other.base) && self.elements == other.elements
    }
}

impl Eq for PermSubgroup {}

impl fmt::Debug for PermSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermSubgroup")
            .field("base", &self.base.spec())
            .field("order", &self.order())
            .finish()
    }
}

impl PermSubgroup {
    /// Builds a subgroup from a list of permutations of the base group's
    /// elements, verifying it contains the identity and is closed under
    /// composition. `labels`, when given, runs parallel to `perms`.
    pub fn new(
        base: FiniteGroup,
        perms: Vec<GroupPermutation>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        let out = Self::unchecked(base, perms, labels)?;
        out.check_closed()?;
        Ok(out)
    }

    fn unchecked(
        base: FiniteGroup,
        perms: Vec<GroupPermutation>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        let n = base.order();
        if let Some(p) = perms.iter().find(|p| p.degree() != n) {
            return Err(Error::Mismatch(format!(
                "permutation of degree {} over a group of order {n}",
                p.degree()
            )));
        }
        if labels.as_ref().is_some_and(|l| l.len() != perms.len()) {
            return Err(Error::Mismatch("labels and permutations differ in length".into()));
        }
        let mut paired: Vec<(GroupPermutation, Option<usize>)> = match labels {
            Some(l) => perms.into_iter().zip(l.into_iter().map(Some)).collect(),
            None => perms.into_iter().map(|p| (p, None)).collect(),
        };
        paired.sort();
        paired.dedup_by(|a, b| a.0 == b.0);
        let has_labels = paired.first().is_some_and(|(_, l)| l.is_some());
        let (elements, labels): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
        let labels = has_labels.then(|| labels.into_iter().map(Option::unwrap).collect());

        let mut by_image = vec![usize::MAX; n];
        let mut injective = true;
        for (i, p) in elements.iter().enumerate() {
            let k = p.apply(0);
            if by_image[k] != usize::MAX {
                injective = false;
                break;
            }
            by_image[k] = i;
        }
        Ok(Self {
            base,
            elements,
            labels,
            by_image_of_identity: injective.then_some(by_image),
        })
    }

    fn check_closed(&self) -> Result<()> {
        if !self.contains(&GroupPermutation::identity(self.base.order())) {
            return Err(Error::NotSubgroup("identity permutation missing".into()));
        }
        for a in &self.elements {
            for b in &self.elements {
                if !self.contains(&a.compose(b)) {
                    return Err(Error::NotSubgroup(format!("{a:?} ∘ {b:?} escapes")));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn elements(&self) -> &[GroupPermutation] {
        &self.elements
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, p: &GroupPermutation) -> Option<usize> {
        if p.degree() != self.base.order() {
            return None;
        }
        match &self.by_image_of_identity {
            Some(index) => {
                let i = index[p.apply(0)];
                (i != usize::MAX && self.elements[i] == *p).then_some(i)
            }
            None => self.elements.binary_search(p).ok(),
        }
    }

    pub fn contains(&self, p: &GroupPermutation) -> bool {
        self.position(p).is_some()
    }

    /// The element sending the identity to `k`, if evaluation at the
    /// identity is injective on this subgroup.
    pub fn element_at(&self, k: usize) -> Option<&GroupPermutation> {
        let index = self.by_image_of_identity.as_ref()?;
        index.get(k).filter(|&&i| i != usize::MAX).map(|&i| &self.elements[i])
    }

    /// The element carrying `label`, when labels are present.
    pub fn labelled(&self, label: usize) -> Option<&GroupPermutation> {
        let i = self.labels.as_ref()?.iter().position(|&l| l == label)?;
        Some(&self.elements[i])
    }

    /// Regular: `|P| = |G|`, evaluation at the identity is a bijection, and
    /// no nontrivial element fixes a point.
    pub fn is_regular(&self) -> bool {
        self.order() == self.base.order()
            && self.by_image_of_identity.as_ref().is_some_and(|ix| ix.iter().all(|&i| i != usize::MAX))
            && self.elements.iter().filter(|p| !p.is_identity()).all(|p| !p.has_fixed_point())
    }

    /// Stable under conjugation by `λ(G)`. Checking the base group's
    /// generators suffices.
    pub fn is_stable(&self) -> bool {
        let gens = self.base.search_generators();
        gens.iter()
            .all(|&g| self.elements.iter().all(|p| self.contains(&p.conjugate_by_left(&self.base, g))))
    }

    /// Every element of `self` commutes with every element of `other`.
    pub fn commutes_with(&self, other: &PermSubgroup) -> bool {
        self.elements
            .iter()
            .all(|a| other.elements.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn intersection(&self, other: &PermSubgroup) -> PermSubgroup {
        let (perms, labels): (Vec<_>, Vec<_>) = self
            .elements
            .iter()
            .enumerate()
            .filter(|(_, p)| other.contains(p))
            .map(|(i, p)| (p.clone(), self.labels.as_ref().map(|l| l[i])))
            .unzip();
        let labels = self.labels.as_ref().map(|_| labels.into_iter().map(Option::unwrap).collect());
        Self::unchecked(self.base.clone(), perms, labels).expect("subset of a valid subgroup")
    }

    /// The abstract group of this subgroup. When evaluation at the identity
    /// is bijective the element `η` gets index `η[0]` and the base group's
    /// element names; otherwise elements keep their sorted order (the
    /// identity permutation sorts first).
    pub fn to_group(&self, spec: impl Into<String>) -> FiniteGroup {
        let m = self.order();
        let full_kappa = self.by_image_of_identity.as_ref().filter(|_| m == self.base.order());
        let (order_of, names): (Vec<usize>, Vec<String>) = match full_kappa {
            Some(index) => (index.clone(), self.base.names().to_vec()),
            None => ((0..m).collect(), (0..m).map(|i| format!("p{i}")).collect()),
        };
        let mut pos_of_element = vec![0; m];
        for (new, &old) in order_of.iter().enumerate() {
            pos_of_element[old] = new;
        }
        let mut table = vec![0; m * m];
        for x in 0..m {
            let a = &self.elements[order_of[x]];
            for y in 0..m {
                let b = &self.elements[order_of[y]];
                let c = self.position(&a.compose(b)).expect("closed subgroup");
                table[x * m + y] = pos_of_element[c];
            }
        }
        FiniteGroup::from_table(spec, names, table, Vec::new()).expect("permutation groups are groups")
    }

    /// Serialized form; `type_label` is included when known.
    pub fn to_record(&self, type_label: Option<String>) -> PermSubgroupRecord {
        PermSubgroupRecord {
            group: self.base.spec().to_string(),
            perms: self.elements.iter().map(|p| p.mapping().to_vec()).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| l.iter().enumerate().map(|(i, &g)| (i.to_string(), g)).collect())
                .unwrap_or_default(),
            type_label,
        }
    }
}

/// `{"group": spec, "perms": [[..]], "labels": {..}, "type": label}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermSubgroupRecord {
    pub group: String,
    pub perms: Vec<Vec<usize>>,
    pub labels: BTreeMap<String, usize>,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none", default)]
    pub type_label: Option<String>,
}

impl PermSubgroupRecord {
    pub fn load(&self) -> Result<PermSubgroup> {
        let base = build_group(&self.group)?;
        let perms = self.perms.iter().cloned().map(GroupPermutation::new).collect::<Result<Vec<_>>>()?;
        let labels = if self.labels.is_empty() {
            None
        } else {
            let mut l = vec![0; perms.len()];
            for (k, &g) in &self.labels {
                let i: usize = k.parse().map_err(|_| Error::Precondition(format!("bad label key {k}")))?;
                *l.get_mut(i).ok_or_else(|| Error::OutOfRange(format!("label key {i}")))? = g;
            }
            Some(l)
        };
        PermSubgroup::new(base, perms, labels)
    }
}
