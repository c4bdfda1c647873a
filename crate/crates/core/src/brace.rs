//! Skew left braces stored as a pair of Cayley tables on `0..n`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{iso_fingerprint, search_isomorphisms, FiniteGroup};
use crate::maps::AbelianMap;
use crate::perm::PermSubgroup;

/// Largest carrier accepted by [`brace_isomorphic`].
pub const ISOMORPHISM_CAP: usize = 64;

/// `(B, ·, ∘)` with both structures sharing the identity `0`.
#[derive(Clone, Debug)]
pub struct SkewBrace {
    dot: FiniteGroup,
    circle: FiniteGroup,
}

/// `x∘(y·z) = (x∘y)·x⁻¹·(x∘z)` for all triples.
fn law_holds(dot: &FiniteGroup, circle: &FiniteGroup) -> bool {
    let n = dot.order();
    (0..n).into_par_iter().all(|x| {
        let xinv = dot.inv(x);
        (0..n).all(|y| {
            let xy = circle.mul(x, y);
            let left = dot.mul(xy, xinv);
            (0..n).all(|z| circle.mul(x, dot.mul(y, z)) == dot.mul(left, circle.mul(x, z)))
        })
    })
}

impl SkewBrace {
    /// Checks that the two groups share a carrier and satisfy the brace law.
    pub fn new(dot: FiniteGroup, circle: FiniteGroup) -> Result<Self> {
        if dot.order() != circle.order() {
            return Err(Error::Mismatch(format!(
                "dot has order {}, circle has order {}",
                dot.order(),
                circle.order()
            )));
        }
        if !law_holds(&dot, &circle) {
            return Err(Error::Verification("brace law fails".into()));
        }
        Ok(Self { dot, circle })
    }

    /// No brace-law check. Useful for building non-examples.
    pub fn unchecked(dot: FiniteGroup, circle: FiniteGroup) -> Self {
        assert_eq!(dot.order(), circle.order());
        Self { dot, circle }
    }

    /// Builds both groups from row-major tables, then checks the brace law.
    pub fn from_tables(dot: Vec<usize>, circle: Vec<usize>) -> Result<Self> {
        let n = (dot.len() as f64).sqrt().round() as usize;
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let dot = FiniteGroup::from_table("dot", names.clone(), dot, vec![])?;
        let circle = FiniteGroup::from_table("circle", names, circle, vec![])?;
        Self::new(dot, circle)
    }

    /// `B = G` with `x∘y = x·y`.
    pub fn trivial(group: &FiniteGroup) -> Self {
        Self { dot: group.clone(), circle: group.clone() }
    }

    /// `B = G` with `x∘y = y·x`.
    pub fn almost_trivial(group: &FiniteGroup) -> Self {
        Self { dot: group.clone(), circle: group.opposite() }
    }

    pub fn size(&self) -> usize {
        self.dot.order()
    }

    pub fn dot(&self) -> &FiniteGroup {
        &self.dot
    }

    pub fn circle(&self) -> &FiniteGroup {
        &self.circle
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.dot.mul(x, y)
    }

    pub fn circ(&self, x: usize, y: usize) -> usize {
        self.circle.mul(x, y)
    }

    /// Inverse under `·`.
    pub fn inv(&self, x: usize) -> usize {
        self.dot.inv(x)
    }

    /// Inverse under `∘`, written `x̄`.
    pub fn bar(&self, x: usize) -> usize {
        self.circle.inv(x)
    }

    pub fn satisfies_brace_law(&self) -> bool {
        law_holds(&self.dot, &self.circle)
    }

    /// Whether the structure is still a brace with `·` and `∘` exchanged,
    /// i.e. `g·(h∘k) = (g·h)∘ḡ∘(g·k)`.
    pub fn is_biskew(&self) -> bool {
        law_holds(&self.circle, &self.dot)
    }

    /// `(B, ∘, ·)`, which is a brace exactly when `self` is bi-skew.
    pub fn swapped(&self) -> Result<SkewBrace> {
        SkewBrace::new(self.circle.clone(), self.dot.clone())
    }

    /// `(B, ·′, ∘)` with `x·′y = y·x`.
    pub fn opposite(&self) -> SkewBrace {
        SkewBrace { dot: self.dot.opposite(), circle: self.circle.clone() }
    }

    /// Table equality of both operations.
    pub fn same_tables(&self, other: &SkewBrace) -> bool {
        self.dot.table() == other.dot.table() && self.circle.table() == other.circle.table()
    }

    pub fn to_record(&self) -> BraceRecord {
        let rows = |g: &FiniteGroup| g.table().chunks(g.order()).map(<[usize]>::to_vec).collect();
        BraceRecord { size: self.size(), dot: rows(&self.dot), circle: rows(&self.circle) }
    }
}

/// Serialized form: `{"size", "dot", "circle"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceRecord {
    pub size: usize,
    pub dot: Vec<Vec<usize>>,
    pub circle: Vec<Vec<usize>>,
}

impl BraceRecord {
    pub fn load(&self) -> Result<SkewBrace> {
        let flat = |rows: &[Vec<usize>]| -> Result<Vec<usize>> {
            if rows.len() != self.size || rows.iter().any(|r| r.len() != self.size) {
                return Err(Error::InvalidTable(format!("expected a {0}x{0} table", self.size)));
            }
            Ok(rows.concat())
        };
        SkewBrace::from_tables(flat(&self.dot)?, flat(&self.circle)?)
    }
}

pub fn verify_brace(b: &SkewBrace) -> bool {
    b.satisfies_brace_law()
}

pub fn is_biskew(b: &SkewBrace) -> bool {
    b.is_biskew()
}

pub fn opposite_brace(b: &SkewBrace) -> SkewBrace {
    b.opposite()
}

/// `(G, ∘)` with `g∘h = g ψ(g⁻¹) h ψ(g)`.
pub fn circle_group(psi: &AbelianMap) -> FiniteGroup {
    let grp = psi.group();
    let n = grp.order();
    let table = (0..n * n)
        .map(|i| {
            let (g, h) = (i / n, i % n);
            grp.product(&[g, psi.apply(grp.inv(g)), h, psi.apply(g)])
        })
        .collect();
    FiniteGroup::from_table(
        format!("circle({})", grp.spec()),
        grp.names().to_vec(),
        table,
        grp.generators().to_vec(),
    )
    .expect("the circle operation of an abelian map is a group law")
}

/// `𝔅_ψ = (G, ·, ∘)`, verified as a bi-skew brace.
pub fn brace_from_abelian_map(psi: &AbelianMap) -> Result<SkewBrace> {
    let b = SkewBrace::new(psi.group().clone(), circle_group(psi))?;
    if !b.is_biskew() {
        return Err(Error::Verification("𝔅_ψ is not bi-skew".into()));
    }
    Ok(b)
}

/// The brace of a regular subgroup `N`, relabelled along `κ(η) = η[1]`:
/// `a·b = κ(η_a η_b) = η_a[b]` and `∘` is the group law of `G`.
pub fn brace_from_regular_subgroup(n: &PermSubgroup) -> Result<SkewBrace> {
    if !n.is_regular() {
        return Err(Error::NotRegular("κ is not a bijection".into()));
    }
    let base = n.base();
    let size = base.order();
    let mut by_kappa = vec![0; size];
    for (k, p) in n.elements().iter().enumerate() {
        by_kappa[p.apply(0)] = k;
    }
    let table = (0..size * size).map(|i| n.elements()[by_kappa[i / size]].apply(i % size)).collect();
    let dot = FiniteGroup::from_table(
        format!("kappa({})", base.spec()),
        base.names().to_vec(),
        table,
        vec![],
    )?;
    SkewBrace::new(dot, base.clone())
}

/// Whether a single bijection is an isomorphism of both structures.
pub fn brace_isomorphic(a: &SkewBrace, b: &SkewBrace) -> Result<bool> {
    for size in [a.size(), b.size()] {
        if size > ISOMORPHISM_CAP {
            return Err(Error::OrderCap { what: "brace isomorphism", order: size, cap: ISOMORPHISM_CAP });
        }
    }
    if a.size() != b.size()
        || iso_fingerprint(&a.dot) != iso_fingerprint(&b.dot)
        || iso_fingerprint(&a.circle) != iso_fingerprint(&b.circle)
    {
        return Ok(false);
    }
    if a.size() == 1 {
        return Ok(true);
    }
    let compatible = |x: usize, y: usize| a.circle.element_order(x) == b.circle.element_order(y);
    let mut found = false;
    search_isomorphisms(&a.dot, &b.dot, compatible, |f| {
        let n = a.size();
        found = (0..n).all(|x| (0..n).all(|y| f[a.circ(x, y)] == b.circ(f[x], f[y])));
        !found
    });
    Ok(found)
}
