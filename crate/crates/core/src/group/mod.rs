//! Finite groups as exact multiplication tables.
//!
//! Elements are dense indices `0..order` and index 0 is always the identity.
//! Every higher layer of the crate speaks in these indices.

mod builders;
mod iso;
mod table_file;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub use builders::{build_group, metacyclic_with};
pub use iso::{
    automorphisms, extend_homomorphism, find_isomorphism, iso_fingerprint, Fingerprint,
};
pub use table_file::{load_table_file, parse_table_file, write_table_file};
pub(crate) use iso::search_isomorphisms;

struct GroupData {
    spec: String,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    element_order: Vec<usize>,
    names: Vec<String>,
    generators: Vec<usize>,
    search_generators: OnceLock<Vec<usize>>,
}

/// A finite group given by its full Cayley table.
///
/// Cloning is cheap; the table is shared.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl FiniteGroup {
    /// Builds a group from a row-major table, checking identity-at-0, the
    /// Latin property and associativity.
    pub fn from_table(
        spec: impl Into<String>,
        names: Vec<String>,
        table: Vec<usize>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        let order = names.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty group".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "expected {} entries, found {}",
                order * order,
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        for x in 0..order {
            if table[x] != x || table[x * order] != x {
                return Err(Error::InvalidTable(format!(
                    "index 0 is not the identity (fails at {x})"
                )));
            }
        }
        let mut seen = vec![usize::MAX; order];
        for a in 0..order {
            for b in 0..order {
                let v = table[a * order + b];
                if seen[v] == a {
                    return Err(Error::InvalidTable(format!("row {a} repeats {v}")));
                }
                seen[v] = a;
            }
        }
        let mut seen = vec![usize::MAX; order];
        for b in 0..order {
            for a in 0..order {
                let v = table[a * order + b];
                if seen[v] == b {
                    return Err(Error::InvalidTable(format!("column {b} repeats {v}")));
                }
                seen[v] = b;
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= order) {
            return Err(Error::InvalidTable(format!("generator {g} out of range")));
        }

        let mut inverse = vec![0; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("Latin rows contain the identity");
        }
        let mut element_order = vec![1; order];
        for a in 1..order {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * order + a];
                k += 1;
            }
            element_order[a] = k;
        }

        Ok(Self(Arc::new(GroupData {
            spec: spec.into(),
            order,
            table,
            inverse,
            element_order,
            names,
            generators,
            search_generators: OnceLock::new(),
        })))
    }

    pub fn spec(&self) -> &str {
        &self.0.spec
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0.table[a * self.0.order + b]
    }

    /// Left-to-right product of a sequence of elements.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.0.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k % self.element_order(a)).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.0.element_order[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.0.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Row-major Cayley table.
    pub fn table(&self) -> &[usize] {
        &self.0.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.0.order
    }

    /// Generators recorded by the builder; empty when unknown.
    pub fn generators(&self) -> &[usize] {
        &self.0.generators
    }

    /// A small generating set chosen greedily: at each step the element that
    /// generates the largest subgroup together with the previous picks, ties
    /// broken by lowest index. Used to drive homomorphism searches.
    pub fn search_generators(&self) -> &[usize] {
        self.0.search_generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut current = vec![0usize];
            while current.len() < self.order() {
                let mut best: Option<(usize, Vec<usize>)> = None;
                let members: BTreeSet<usize> = current.iter().copied().collect();
                for x in self.elements().filter(|x| !members.contains(x)) {
                    let mut trial = gens.clone();
                    trial.push(x);
                    let closure = self.closure(&trial);
                    if best.as_ref().is_none_or(|(_, b)| closure.len() > b.len()) {
                        best = Some((x, closure));
                    }
                }
                let (x, closure) = best.expect("a proper subgroup leaves elements outside");
                gens.push(x);
                current = closure;
            }
            gens
        })
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    /// `g x g^-1`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_central(&self, a: usize) -> bool {
        self.elements().all(|b| self.commutes(a, b))
    }

    pub fn center(&self) -> Subgroup {
        let members = self.elements().filter(|&a| self.is_central(a)).collect();
        Subgroup::trusted(self.clone(), members)
    }

    /// Conjugacy classes, each sorted, ordered by their minimum element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut classes = Vec::new();
        for x in self.elements() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let class: BTreeSet<usize> = self.elements().map(|g| self.conjugate(x, g)).collect();
            for &y in &class {
                class_of[y] = classes.len();
            }
            classes.push(class.into_iter().collect::<Vec<_>>());
        }
        classes
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        let mut out = vec![0];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The subgroup generated by `gens`.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Result<Subgroup> {
        if let Some(&g) = gens.iter().find(|&&g| g >= self.order()) {
            return Err(Error::OutOfRange(format!("element {g} in group of order {}", self.order())));
        }
        Ok(Subgroup::trusted(self.clone(), self.closure(gens)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::trusted(self.clone(), self.elements().collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::trusted(self.clone(), vec![0])
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        let comms: BTreeSet<usize> = self
            .elements()
            .flat_map(|a| {
                self.elements()
                    .map(move |b| (a, b))
            })
            .map(|(a, b)| self.product(&[a, b, self.inv(a), self.inv(b)]))
            .collect();
        let gens: Vec<usize> = comms.into_iter().collect();
        Subgroup::trusted(self.clone(), self.closure(&gens))
    }

    /// Whether `h` is a normal subgroup of this group.
    pub fn is_normal(&self, h: &Subgroup) -> Result<bool> {
        if !h.parent().same_as(self) {
            return Err(Error::NotSubgroup(format!(
                "subgroup of {} passed to {}",
                h.parent().spec(),
                self.spec()
            )));
        }
        Ok(h
            .members()
            .iter()
            .all(|&x| self.elements().all(|g| h.contains(self.conjugate(x, g)))))
    }

    /// Direct product with lexicographic pair indexing: `(a, b)` has index
    /// `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (m, k) = (self.order(), other.order());
        let n = m * k;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (a1, b1) = (x / k, x % k);
                let (a2, b2) = (y / k, y % k);
                table[x * n + y] = self.mul(a1, a2) * k + other.mul(b1, b2);
            }
        }
        let names = (0..n)
            .map(|x| format!("({}, {})", self.name(x / k), other.name(x % k)))
            .collect();
        let mut generators: Vec<usize> = self.generators().iter().map(|&g| g * k).collect();
        generators.extend(other.generators().iter().copied());
        FiniteGroup::from_table(
            format!("{} x {}", self.spec(), other.spec()),
            names,
            table,
            generators,
        )
        .expect("a product of valid groups is a valid group")
    }

    /// The same set with the reversed operation `a *' b = b a`.
    pub fn opposite(&self) -> FiniteGroup {
        let n = self.order();
        let table = (0..n * n).map(|i| self.mul(i % n, i / n)).collect();
        FiniteGroup::from_table(
            format!("opposite({})", self.spec()),
            self.0.names.clone(),
            table,
            self.0.generators.clone(),
        )
        .expect("the opposite of a group is a group")
    }

    /// A group with the same table and a different label.
    pub fn relabeled(&self, spec: impl Into<String>) -> FiniteGroup {
        let d = &self.0;
        Self(Arc::new(GroupData {
            spec: spec.into(),
            order: d.order,
            table: d.table.clone(),
            inverse: d.inverse.clone(),
            element_order: d.element_order.clone(),
            names: d.names.clone(),
            generators: d.generators.clone(),
            search_generators: OnceLock::new(),
        }))
    }

    /// Pointer identity, or identical tables.
    pub fn same_as(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.table == other.0.table
    }

    /// Histogram of element orders.
    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for a in self.elements() {
            *hist.entry(self.element_order(a)).or_insert(0) += 1;
        }
        hist
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("spec", &self.spec())
            .field("order", &self.order())
            .finish()
    }
}

/// A subgroup of a [`FiniteGroup`], stored as a sorted member list.
#[derive(Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
}

impl Subgroup {
    /// Checks identity, closure and Lagrange.
    pub fn new(parent: FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if !members.contains(&0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        if let Some(&x) = members.iter().find(|&&x| x >= parent.order()) {
            return Err(Error::NotSubgroup(format!("element {x} out of range")));
        }
        for &a in &members {
            if !members.contains(&parent.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {} missing", parent.name(a))));
            }
            for &b in &members {
                if !members.contains(&parent.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "product {} * {} escapes",
                        parent.name(a),
                        parent.name(b)
                    )));
                }
            }
        }
        if !parent.order().is_multiple_of(members.len()) {
            return Err(Error::NotSubgroup("order does not divide the group order".into()));
        }
        Ok(Self::trusted(parent, members.into_iter().collect()))
    }

    pub(crate) fn trusted(parent: FiniteGroup, members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { parent, members }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_abelian(&self) -> bool {
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| self.parent.commutes(a, b)))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Subgroup::trusted(self.parent.clone(), members)
    }

    /// The subgroup as a standalone group; member `members[i]` becomes index
    /// `i`, so the identity stays at 0.
    pub fn to_group(&self, spec: impl Into<String>) -> FiniteGroup {
        let k = self.order();
        let pos = |x: usize| self.members.binary_search(&x).expect("closed subgroup");
        let mut table = vec![0; k * k];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                table[i * k + j] = pos(self.parent.mul(a, b));
            }
        }
        let names = self.members.iter().map(|&x| self.parent.name(x).to_string()).collect();
        FiniteGroup::from_table(spec, names, table, Vec::new())
            .expect("a subgroup is a group")
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.members.iter().map(|&x| self.parent.name(x)).collect();
        write!(f, "Subgroup({}; {:?})", self.parent.spec(), names)
    }
}

/// A homomorphism between finite groups, stored element-wise.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupMap {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<usize>,
}

impl GroupMap {
    /// Checks `images[a b] = images[a] images[b]` for every pair.
    pub fn new(source: FiniteGroup, target: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::NotHomomorphism(format!(
                "{} images for a group of order {}",
                images.len(),
                source.order()
            )));
        }
        if images.iter().any(|&y| y >= target.order()) {
            return Err(Error::NotHomomorphism("image out of range".into()));
        }
        if images[0] != 0 {
            return Err(Error::NotHomomorphism("identity not sent to identity".into()));
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "fails at ({}, {})",
                        source.name(a),
                        source.name(b)
                    )));
                }
            }
        }
        Ok(Self { source, target, images })
    }

    pub(crate) fn trusted(source: FiniteGroup, target: FiniteGroup, images: Vec<usize>) -> Self {
        Self { source, target, images }
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        Self::trusted(group.clone(), group.clone(), group.elements().collect())
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && {
            let mut hit = vec![false; self.target.order()];
            self.images.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
        }
    }

    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (a, &y) in self.images.iter().enumerate() {
            inv[y] = a;
        }
        Some(Self::trusted(self.target.clone(), self.source.clone(), inv))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &GroupMap) -> Result<GroupMap> {
        if !first.target.same_as(&self.source) {
            return Err(Error::Mismatch("composition of incompatible maps".into()));
        }
        let images = first.images.iter().map(|&y| self.images[y]).collect();
        Ok(Self::trusted(first.source.clone(), self.target.clone(), images))
    }

    pub fn kernel(&self) -> Subgroup {
        let members = self.source.elements().filter(|&a| self.images[a] == 0).collect();
        Subgroup::trusted(self.source.clone(), members)
    }

    pub fn image(&self) -> Subgroup {
        let members: BTreeSet<usize> = self.images.iter().copied().collect();
        Subgroup::trusted(self.target.clone(), members.into_iter().collect())
    }
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupMap({} -> {}; {:?})", self.source.spec(), self.target.spec(), self.images)
    }
}
