//! Batch reports: classification of the regular subgroups coming from a
//! group's abelian maps, the dihedral summary table and the invariant suite.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::brace::{brace_from_abelian_map, brace_from_regular_subgroup, circle_group};
use crate::error::{Error, Result};
use crate::group::{automorphisms, build_group, find_isomorphism, FiniteGroup};
use crate::maps::{enumerate_abelian_maps, AbelianMap};
use crate::oracle::{oracle_all_regular_stable, ORACLE_CAP};
use crate::perm::{GroupPermutation, PermSubgroup};
use crate::regular::{
    build_n, build_n_opposite, childs_subgroup, five_subgroups, lambda_points, lambda_rep, rho_points,
    same_subgroup, transport,
};
use crate::typing::{hgs_type, map_type, xprod_check};
use crate::ybe::{four_solutions, YbeSolution};

/// Groups exercised by the invariant suite: a spread of builder groups of
/// order at most 24, plus `S:5`.
pub const SUITE_GROUPS: &[&str] = &[
    "C:1", "C:2", "C:3", "C:4", "C:5", "C:6", "C:7", "C:8", "C:9", "C:10", "C:12", "C:16", "C:24",
    "C:2 x C:2", "C:4 x C:2", "C:2 x C:2 x C:2", "C:3 x C:3", "C:6 x C:2", "C:4 x C:4",
    "D:3", "D:4", "D:5", "D:6", "D:7", "D:8", "D:9", "D:10", "D:11", "D:12",
    "S:3", "S:4", "A:4", "M:3:2", "M:5:2", "M:7:3",
    "D:3 x C:2", "D:4 x C:2", "D:3 x C:3", "D:3 x C:4", "A:4 x C:2",
    "S:5",
];

/// A distinct regular subgroup found among the `N_ψ` and `N′_ψ`.
#[derive(Clone, Debug)]
pub struct FoundSubgroup {
    pub subgroup: PermSubgroup,
    pub type_label: String,
    /// Index of the first map producing it.
    pub source_map: usize,
    /// Whether it first appeared as an opposite `N′_ψ`.
    pub from_opposite: bool,
}

/// The subgroups attached to every abelian map of one group, deduplicated.
#[derive(Clone, Debug)]
pub struct Classification {
    pub group: FiniteGroup,
    pub maps: Vec<AbelianMap>,
    /// `n_of_map[i]` indexes `subgroups` for `N_ψᵢ`.
    pub n_of_map: Vec<usize>,
    /// `opposite_of_map[i]` indexes `subgroups` for `N′_ψᵢ`.
    pub opposite_of_map: Vec<usize>,
    pub subgroups: Vec<FoundSubgroup>,
}

pub fn classify_group(group: &FiniteGroup) -> Result<Classification> {
    let maps = enumerate_abelian_maps(group)?;
    let built: Vec<(PermSubgroup, PermSubgroup, String)> = maps
        .par_iter()
        .map(|psi| Ok((build_n(psi)?, build_n_opposite(psi)?, map_type(psi)?)))
        .collect::<Result<_>>()?;

    let mut index: HashMap<Vec<GroupPermutation>, usize> = HashMap::new();
    let mut subgroups: Vec<FoundSubgroup> = Vec::new();
    let mut place = |sub: &PermSubgroup, label: &str, source: usize, from_opposite: bool| {
        *index.entry(sub.elements().to_vec()).or_insert_with(|| {
            subgroups.push(FoundSubgroup {
                subgroup: sub.clone(),
                type_label: label.to_string(),
                source_map: source,
                from_opposite,
            });
            subgroups.len() - 1
        })
    };
    let n_of_map: Vec<usize> =
        built.iter().enumerate().map(|(i, (n, _, label))| place(n, label, i, false)).collect();
    let opposite_of_map: Vec<usize> =
        built.iter().enumerate().map(|(i, (_, o, label))| place(o, label, i, true)).collect();

    // N′ ≅ N, so an opposite inherits the type of its map; confirm it.
    subgroups.par_iter().filter(|s| s.from_opposite).try_for_each(|s| {
        let n = &built[s.source_map].0;
        find_isomorphism(&s.subgroup.to_group("N'"), &n.to_group("N"))
            .map(|_| ())
            .ok_or_else(|| Error::Verification("N′_ψ is not isomorphic to N_ψ".into()))
    })?;

    Ok(Classification { group: group.clone(), maps, n_of_map, opposite_of_map, subgroups })
}

impl Classification {
    /// Number of distinct `N_ψ`.
    pub fn class_count(&self) -> usize {
        self.n_of_map.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn type_tallies(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        for s in &self.subgroups {
            *out.entry(s.type_label.clone()).or_insert(0) += 1;
        }
        out
    }

    pub fn report(&self) -> ClassificationReport {
        let lambda = lambda_rep(&self.group);
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, psi)| {
                let n = self.n_of_map[i];
                let o = self.opposite_of_map[i];
                MapEntry {
                    index: i,
                    description: psi.describe(),
                    images: psi.images().to_vec(),
                    fixed_point_free: psi.is_fixed_point_free(),
                    subgroup: n,
                    opposite: o,
                    type_label: self.subgroups[n].type_label.clone(),
                    equals_lambda: self.subgroups[n].subgroup == lambda,
                    opposite_distinct: n != o,
                }
            })
            .collect();
        let subgroups = self
            .subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| SubgroupEntry {
                index: i,
                type_label: s.type_label.clone(),
                source_map: s.source_map,
                construction: if s.from_opposite { "N'" } else { "N" },
            })
            .collect();
        ClassificationReport {
            group: self.group.spec().to_string(),
            order: self.group.order(),
            abelian_map_count: self.maps.len(),
            class_count: self.class_count(),
            distinct_subgroups: self.subgroups.len(),
            type_tallies: self.type_tallies(),
            maps,
            subgroups,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MapEntry {
    pub index: usize,
    pub description: String,
    pub images: Vec<usize>,
    pub fixed_point_free: bool,
    pub subgroup: usize,
    pub opposite: usize,
    #[serde(rename = "type")]
    pub type_label: String,
    pub equals_lambda: bool,
    pub opposite_distinct: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupEntry {
    pub index: usize,
    #[serde(rename = "type")]
    pub type_label: String,
    pub source_map: usize,
    pub construction: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub group: String,
    pub order: usize,
    /// All abelian endomorphisms, not reduced modulo maps into the center.
    pub abelian_map_count: usize,
    /// Distinct `N_ψ`; maps differing by a map into the center give the same one.
    pub class_count: usize,
    /// Distinct subgroups among all `N_ψ` and `N′_ψ`.
    pub distinct_subgroups: usize,
    pub type_tallies: BTreeMap<String, usize>,
    pub maps: Vec<MapEntry>,
    pub subgroups: Vec<SubgroupEntry>,
}

#[derive(Serialize)]
struct MapCsvRow<'a> {
    index: usize,
    description: &'a str,
    images: String,
    fixed_point_free: bool,
    subgroup: usize,
    opposite: usize,
    #[serde(rename = "type")]
    type_label: &'a str,
    equals_lambda: bool,
    opposite_distinct: bool,
}

impl ClassificationReport {
    /// One row per abelian map.
    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for m in &self.maps {
            w.serialize(MapCsvRow {
                index: m.index,
                description: &m.description,
                images: m.images.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                fixed_point_free: m.fixed_point_free,
                subgroup: m.subgroup,
                opposite: m.opposite,
                type_label: &m.type_label,
                equals_lambda: m.equals_lambda,
                opposite_distinct: m.opposite_distinct,
            })?;
        }
        w.flush()?;
        Ok(())
    }
}

/// The three type columns of the dihedral table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DihedralColumn {
    /// `D_n`
    Dn,
    /// `D_{n/2} × C_2`
    DHalfC2,
    /// `C_n × C_2`
    CnC2,
}

/// Which column an abelian map on `D:n` falls in, read off from
/// `ψ(r)` and `ψ(s)` reduced to the representatives `0 ≤ i < n/2`.
pub fn dihedral_column(psi: &AbelianMap, n: usize) -> DihedralColumn {
    let grp = psi.group();
    let (r, s) = (1, n);
    let (pr, ps) = (psi.apply(r), psi.apply(s));
    if n % 2 == 1 {
        return if psi.is_trivial() { DihedralColumn::Dn } else { DihedralColumn::CnC2 };
    }
    match (grp.is_central(pr), grp.is_central(ps)) {
        (true, true) => DihedralColumn::Dn,
        (true, false) => DihedralColumn::CnC2,
        (false, ps_central) => {
            // ψ(r) = r^i s
            let i = (pr % n) % (n / 2);
            match (ps_central, i.is_multiple_of(2)) {
                (true, true) | (false, false) => DihedralColumn::Dn,
                _ => DihedralColumn::DHalfC2,
            }
        }
    }
}

/// The group a column's subgroups must be isomorphic to.
fn column_group(column: DihedralColumn, n: usize) -> Result<FiniteGroup> {
    match column {
        DihedralColumn::Dn => build_group(&format!("D:{n}")),
        DihedralColumn::CnC2 => build_group(&format!("C:{n} x C:2")),
        DihedralColumn::DHalfC2 if n / 2 >= 3 => build_group(&format!("D:{} x C:2", n / 2)),
        DihedralColumn::DHalfC2 => build_group("C:2 x C:2 x C:2"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Count {
    pub computed: usize,
    pub expected: Option<usize>,
}

impl Count {
    fn new(computed: usize, expected: Option<usize>) -> Self {
        Self { computed, expected }
    }

    pub fn matches(&self) -> bool {
        self.expected.map_or(self.computed == 0, |e| e == self.computed)
    }
}

/// One row of the dihedral summary table, computed and predicted.
#[derive(Clone, Debug, Serialize)]
pub struct DihedralRow {
    pub n: usize,
    /// Every abelian endomorphism; for even `n` each class has 4 members.
    pub raw_abelian_maps: usize,
    pub type_dn: Count,
    pub type_dhalf_c2: Count,
    pub type_cn_c2: Count,
    /// Distinct `N_ψ`.
    pub abelian_maps: Count,
    /// Distinct `N_ψ` and `N′_ψ` together.
    pub hgs: Count,
}

impl DihedralRow {
    pub fn matches(&self) -> bool {
        [&self.type_dn, &self.type_dhalf_c2, &self.type_cn_c2, &self.abelian_maps, &self.hgs]
            .iter()
            .all(|c| c.matches())
    }

    /// Names of the columns that disagree with the formula.
    pub fn mismatches(&self) -> Vec<&'static str> {
        [
            ("type D_n", &self.type_dn),
            ("type D_{n/2} x C_2", &self.type_dhalf_c2),
            ("type C_n x C_2", &self.type_cn_c2),
            ("abelian maps", &self.abelian_maps),
            ("HGS", &self.hgs),
        ]
        .into_iter()
        .filter(|(_, c)| !c.matches())
        .map(|(name, _)| name)
        .collect()
    }
}

/// Predicted `(D_n, D_{n/2}×C_2, C_n×C_2, maps, HGS)` counts.
pub fn dihedral_formula(n: usize) -> (usize, Option<usize>, usize, usize, usize) {
    if n % 2 == 1 {
        (1, None, n, 1 + n, 2 + n)
    } else {
        (1 + n / 2, Some(n / 2), n / 2, 1 + 3 * n / 2, 2 + 5 * n / 2)
    }
}

pub fn dihedral_row(n: usize) -> Result<DihedralRow> {
    let group = build_group(&format!("D:{n}"))?;
    let c = classify_group(&group)?;

    let mut column_of_class: BTreeMap<usize, DihedralColumn> = BTreeMap::new();
    for (i, psi) in c.maps.iter().enumerate() {
        let col = dihedral_column(psi, n);
        let prev = *column_of_class.entry(c.n_of_map[i]).or_insert(col);
        if prev != col {
            return Err(Error::Verification(format!(
                "D:{n}: maps with the same N_ψ fall in columns {prev:?} and {col:?}"
            )));
        }
    }
    let targets: BTreeMap<DihedralColumn, FiniteGroup> = column_of_class
        .values()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .map(|&col| Ok((col, column_group(col, n)?)))
        .collect::<Result<_>>()?;
    column_of_class.par_iter().try_for_each(|(&k, col)| {
        let n_group = c.subgroups[k].subgroup.to_group("N");
        find_isomorphism(&n_group, &targets[col]).map(|_| ()).ok_or_else(|| {
            Error::Verification(format!("D:{n}: subgroup {k} is not of type {col:?}"))
        })
    })?;

    let tally = |col| column_of_class.values().filter(|&&c| c == col).count();
    let (e_dn, e_half, e_cn, e_maps, e_hgs) = dihedral_formula(n);
    Ok(DihedralRow {
        n,
        raw_abelian_maps: c.maps.len(),
        type_dn: Count::new(tally(DihedralColumn::Dn), Some(e_dn)),
        type_dhalf_c2: Count::new(tally(DihedralColumn::DHalfC2), e_half),
        type_cn_c2: Count::new(tally(DihedralColumn::CnC2), Some(e_cn)),
        abelian_maps: Count::new(c.class_count(), Some(e_maps)),
        hgs: Count::new(c.subgroups.len(), Some(e_hgs)),
    })
}

/// Rows for `3 ≤ n ≤ max_n`, with `2 max_n ≤ 120`.
pub fn dihedral_table(max_n: usize) -> Result<Vec<DihedralRow>> {
    if 2 * max_n > crate::maps::DEFAULT_ORDER_CAP {
        return Err(Error::OrderCap {
            what: "dihedral table",
            order: 2 * max_n,
            cap: crate::maps::DEFAULT_ORDER_CAP,
        });
    }
    (3..=max_n).map(dihedral_row).collect()
}

#[derive(Serialize)]
struct DihedralCsvRow {
    n: usize,
    raw_abelian_maps: usize,
    type_dn: usize,
    type_dn_expected: Option<usize>,
    type_dhalf_c2: usize,
    type_dhalf_c2_expected: Option<usize>,
    type_cn_c2: usize,
    type_cn_c2_expected: Option<usize>,
    abelian_maps: usize,
    abelian_maps_expected: Option<usize>,
    hgs: usize,
    hgs_expected: Option<usize>,
    matches: bool,
}

pub fn write_dihedral_csv(rows: &[DihedralRow], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(DihedralCsvRow {
            n: r.n,
            raw_abelian_maps: r.raw_abelian_maps,
            type_dn: r.type_dn.computed,
            type_dn_expected: r.type_dn.expected,
            type_dhalf_c2: r.type_dhalf_c2.computed,
            type_dhalf_c2_expected: r.type_dhalf_c2.expected,
            type_cn_c2: r.type_cn_c2.computed,
            type_cn_c2_expected: r.type_cn_c2.expected,
            abelian_maps: r.abelian_maps.computed,
            abelian_maps_expected: r.abelian_maps.expected,
            hgs: r.hgs.computed,
            hgs_expected: r.hgs.expected,
            matches: r.matches(),
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Largest order for which the automorphism-conjugation family runs.
pub const AUT_CONJUGATION_CAP: usize = 16;

#[derive(Clone, Debug, Serialize)]
pub struct FamilyResult {
    pub name: &'static str,
    pub passed: bool,
    /// Number of individual checks performed.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub order: usize,
    pub abelian_maps: usize,
    pub passed: bool,
    pub families: Vec<FamilyResult>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Compare against the exhaustive oracle (order at most 8).
    pub oracle: bool,
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(what()))
    }
}

/// Runs a family over every map in parallel; the count is the sum of
/// per-map counts.
fn per_map<F>(maps: &[AbelianMap], f: F) -> Result<usize>
where
    F: Fn(usize, &AbelianMap) -> Result<usize> + Sync,
{
    maps.par_iter().enumerate().map(|(i, psi)| f(i, psi)).try_reduce(|| 0, |a, b| Ok(a + b))
}

struct Context {
    group: FiniteGroup,
    maps: Vec<AbelianMap>,
    ns: Vec<PermSubgroup>,
}

fn family_regular_stable(cx: &Context) -> Result<usize> {
    per_map(&cx.maps, |i, _| {
        let n = &cx.ns[i];
        check(n.order() == cx.group.order(), || "|N| ≠ |G|".into())?;
        for g in cx.group.elements() {
            check(n.element_at(g).map(|p| p.apply(0)) == Some(g), || "η_g[1] ≠ g".into())?;
        }
        Ok(1)
    })
}

fn family_opposite(cx: &Context) -> Result<usize> {
    per_map(&cx.maps, |i, psi| {
        let o = build_n_opposite(psi)?;
        check(o.order() == cx.ns[i].order() && o.commutes_with(&cx.ns[i]), || {
            "N′ does not centralize N".into()
        })?;
        Ok(1)
    })
}

fn family_group_law(cx: &Context) -> Result<usize> {
    let grp = &cx.group;
    per_map(&cx.maps, |i, psi| {
        let n = &cx.ns[i];
        for g in grp.elements() {
            let eta_g = n.element_at(g).expect("labelled");
            let twisted = grp.mul(g, psi.apply(grp.inv(g)));
            for h in grp.elements() {
                let prod = eta_g.compose(n.element_at(h).expect("labelled"));
                let circ = grp.product(&[twisted, h, psi.apply(g)]);
                check(Some(&prod) == n.element_at(circ), || "η_g η_h ≠ η_{g∘h}".into())?;
            }
        }
        Ok(grp.order() * grp.order())
    })
}

fn family_equality(cx: &Context) -> Result<usize> {
    let grp = &cx.group;
    let k = cx.maps.len();
    (0..k)
        .into_par_iter()
        .map(|a| {
            for b in 0..k {
                let (p1, p2) = (&cx.maps[a], &cx.maps[b]);
                let by_center = grp
                    .elements()
                    .all(|g| grp.is_central(grp.mul(p2.apply(g), p1.apply(grp.inv(g)))));
                check(by_center == (cx.ns[a] == cx.ns[b]), || {
                    format!("center criterion disagrees with set equality for maps {a}, {b}")
                })?;
            }
            // The library routine must agree on at least the diagonal and one neighbour.
            same_subgroup(&cx.maps[a], &cx.maps[(a + 1) % k])?;
            Ok(k)
        })
        .try_reduce(|| 0, |x, y| Ok(x + y))
}

/// `N_ψ = N_{φ⁻¹ψφ}` against `ψ(gφ(g⁻¹)) ∈ Z(G)` for all `g`.
fn family_aut_conjugation(cx: &Context) -> Result<usize> {
    let grp = &cx.group;
    let z = grp.center();
    let auts = automorphisms(grp);
    per_map(&cx.maps, |i, psi| {
        for phi in &auts {
            let conj = psi.conjugate_by(phi)?;
            let same = build_n(&conj)? == cx.ns[i];
            let criterion =
                grp.elements().all(|g| z.contains(psi.apply(grp.mul(g, phi.apply(grp.inv(g))))));
            check(same == criterion, || format!("criterion fails for map {i}"))?;
        }
        Ok(auts.len())
    })
}

/// `N_ψ = N_{φ⁻¹ψφ}` against `φ⁻¹ψφ(g) ψ(g⁻¹) ∈ Z(G)` for all `g`.
fn family_aut_conjugation_direct(cx: &Context) -> Result<usize> {
    let grp = &cx.group;
    let z = grp.center();
    let auts = automorphisms(grp);
    per_map(&cx.maps, |i, psi| {
        for phi in &auts {
            let conj = psi.conjugate_by(phi)?;
            let same = build_n(&conj)? == cx.ns[i];
            let criterion = grp.elements().all(|g| z.contains(grp.mul(conj.apply(g), psi.apply(grp.inv(g)))));
            check(same == criterion, || format!("direct criterion fails for map {i}"))?;
        }
        Ok(auts.len())
    })
}

fn family_childs(cx: &Context) -> Result<usize> {
    per_map(&cx.maps, |_, big| {
        if !big.is_fixed_point_free() {
            return Ok(0);
        }
        let q = big.quasi_inverse()?;
        check(q.quasi_inverse()? == *big, || "quasi-inverse is not an involution".into())?;
        check(childs_subgroup(big)? == build_n(&q)?, || "Childs subgroup ≠ N of quasi-inverse".into())?;
        Ok(1)
    })
}

fn family_points(cx: &Context) -> Result<usize> {
    let grp = &cx.group;
    let z = grp.center();
    per_map(&cx.maps, |i, psi| {
        five_subgroups(psi)?;
        let n = &cx.ns[i];
        let labels = |p: &PermSubgroup| -> BTreeSet<usize> {
            p.labels().expect("intersections keep labels").iter().copied().collect()
        };
        let want_l: BTreeSet<usize> = grp.elements().filter(|&g| z.contains(psi.apply(g))).collect();
        let want_p: BTreeSet<usize> = grp.elements().filter(|&g| z.contains(psi.phi(g))).collect();
        check(labels(&lambda_points(n)) == want_l, || "λ-point lemma fails".into())?;
        check(labels(&rho_points(n)) == want_p, || "ρ-point lemma fails".into())?;
        Ok(2)
    })
}

fn family_xprod(cx: &Context) -> Result<usize> {
    per_map(&cx.maps, |_, psi| xprod_check(psi).map(|_| 1))
}

fn family_brace(cx: &Context) -> Result<usize> {
    per_map(&cx.maps, |i, psi| {
        let b = brace_from_abelian_map(psi)?;
        let n = &cx.ns[i];
        check(b.circle().table() == n.to_group("N").table(), || "(G,∘) ≇ N_ψ".into())?;
        let from_n = brace_from_regular_subgroup(n)?;
        check(from_n.same_tables(&b.swapped()?), || {
            "brace of N_ψ is not the swap of 𝔅_ψ".into()
        })?;
        check(b.opposite().satisfies_brace_law(), || "opposite brace fails".into())?;
        Ok(1)
    })
}

fn family_transport(cx: &Context) -> Result<usize> {
    per_map(&cx.maps, |i, psi| {
        let circle = circle_group(psi);
        let label = hgs_type(&cx.ns[i], &[]);
        let target = build_group(&label).unwrap_or_else(|_| cx.ns[i].to_group("N"));
        let alpha = find_isomorphism(&circle, &target)
            .ok_or_else(|| Error::Verification(format!("(G,∘) ≇ {label}")))?;
        let p = transport(psi, &alpha)?;
        check(
            find_isomorphism(&p.to_group("P"), &cx.group).is_some(),
            || "transported subgroup is not isomorphic to G".into(),
        )?;
        Ok(1)
    })
}

fn family_ybe(cx: &Context) -> Result<usize> {
    let grp = &cx.group;
    per_map(&cx.maps, |_, psi| {
        let four = four_solutions(psi)?;
        let circle_abelian = circle_group(psi).is_abelian();
        check((four.r1 == four.r2) == grp.is_abelian(), || "R1 = R2 ⇔ G abelian fails".into())?;
        check((four.r3 == four.r4) == circle_abelian, || "R3 = R4 ⇔ (G,∘) abelian fails".into())?;
        for (sol, abelian, name) in [
            (&four.r1, grp.is_abelian(), "R1"),
            (&four.r2, grp.is_abelian(), "R2"),
            (&four.r3, circle_abelian, "R3"),
            (&four.r4, circle_abelian, "R4"),
        ] {
            check(sol.is_involutive() == abelian, || format!("{name} involutivity"))?;
        }
        Ok(4)
    })
}

fn family_oracle(cx: &Context) -> Result<(usize, String)> {
    let oracle: BTreeSet<Vec<GroupPermutation>> = oracle_all_regular_stable(&cx.group)?
        .into_iter()
        .map(|n| n.elements().to_vec())
        .collect();
    let mut built: BTreeSet<Vec<GroupPermutation>> = BTreeSet::new();
    for psi in &cx.maps {
        built.insert(build_n(psi)?.elements().to_vec());
        built.insert(build_n_opposite(psi)?.elements().to_vec());
    }
    check(built.is_subset(&oracle), || "a constructed subgroup is missing from the oracle".into())?;
    Ok((
        oracle.len(),
        format!("constructed {}, oracle {}, equal {}", built.len(), oracle.len(), built == oracle),
    ))
}

/// Runs every invariant family on every abelian map of `group`.
pub fn verify_group(group: &FiniteGroup, options: VerifyOptions) -> Result<VerifyReport> {
    let maps = enumerate_abelian_maps(group)?;
    if options.oracle && group.order() > ORACLE_CAP {
        return Err(Error::OrderCap { what: "oracle", order: group.order(), cap: ORACLE_CAP });
    }
    let mut families = Vec::new();
    let built: Result<Vec<PermSubgroup>> = maps.par_iter().map(build_n).collect();
    let ns = match built {
        Ok(ns) => {
            families.push(FamilyResult { name: "regular-stable", passed: true, checked: 0, detail: None });
            ns
        }
        Err(e) => {
            families.push(FamilyResult {
                name: "regular-stable",
                passed: false,
                checked: 0,
                detail: Some(e.to_string()),
            });
            return Ok(finish(group, maps.len(), families));
        }
    };
    let cx = Context { group: group.clone(), maps, ns };

    type Family = fn(&Context) -> Result<usize>;
    let mut list: Vec<(&'static str, Family)> = vec![
        ("regular-stable", family_regular_stable),
        ("opposite", family_opposite),
        ("group-law", family_group_law),
        ("equality-criterion", family_equality),
    ];
    if group.order() <= AUT_CONJUGATION_CAP {
        list.push(("aut-conjugation", family_aut_conjugation));
        list.push(("aut-conjugation-direct", family_aut_conjugation_direct));
    }
    list.extend([
        ("childs-bridge", family_childs as Family),
        ("lambda-rho-points", family_points),
        ("xprod", family_xprod),
        ("bi-skew-brace", family_brace),
        ("transport", family_transport),
        ("ybe", family_ybe),
    ]);
    families.clear();
    for (name, f) in list {
        families.push(match f(&cx) {
            Ok(checked) => FamilyResult { name, passed: true, checked, detail: None },
            Err(e) => FamilyResult { name, passed: false, checked: 0, detail: Some(e.to_string()) },
        });
    }
    if options.oracle {
        families.push(match family_oracle(&cx) {
            Ok((checked, detail)) => FamilyResult { name: "oracle", passed: true, checked, detail: Some(detail) },
            Err(e) => FamilyResult { name: "oracle", passed: false, checked: 0, detail: Some(e.to_string()) },
        });
    }
    Ok(finish(group, cx.maps.len(), families))
}

fn finish(group: &FiniteGroup, maps: usize, families: Vec<FamilyResult>) -> VerifyReport {
    VerifyReport {
        group: group.spec().to_string(),
        order: group.order(),
        abelian_maps: maps,
        passed: families.iter().all(|f| f.passed),
        families,
    }
}

pub fn write_verify_csv(report: &VerifyReport, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["group", "family", "passed", "checked", "detail"])?;
    for f in &report.families {
        w.write_record([
            report.group.as_str(),
            f.name,
            if f.passed { "true" } else { "false" },
            &f.checked.to_string(),
            f.detail.as_deref().unwrap_or(""),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Summary of one abelian map for the `maps` listing.
#[derive(Clone, Debug, Serialize)]
pub struct MapListing {
    pub index: usize,
    pub description: String,
    pub images: Vec<usize>,
    pub fixed_point_free: bool,
    pub kernel_order: usize,
    pub image_order: usize,
}

pub fn list_maps(group: &FiniteGroup) -> Result<Vec<MapListing>> {
    Ok(enumerate_abelian_maps(group)?
        .iter()
        .enumerate()
        .map(|(index, psi)| MapListing {
            index,
            description: psi.describe(),
            images: psi.images().to_vec(),
            fixed_point_free: psi.is_fixed_point_free(),
            kernel_order: psi.kernel().order(),
            image_order: psi.image().order(),
        })
        .collect())
}

pub fn write_maps_csv(maps: &[MapListing], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["index", "description", "images", "fixed_point_free", "kernel_order", "image_order"])?;
    for m in maps {
        w.write_record([
            m.index.to_string(),
            m.description.clone(),
            m.images.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
            m.fixed_point_free.to_string(),
            m.kernel_order.to_string(),
            m.image_order.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// One row `x,y,a,b` per pair, with `R(x,y) = (a,b)`.
pub fn write_solution_csv(solution: &YbeSolution, out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "y", "a", "b"])?;
    let n = solution.size();
    for x in 0..n {
        for y in 0..n {
            let (a, b) = solution.apply(x, y);
            w.write_record([x, y, a, b].map(|v| v.to_string()))?;
        }
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> FiniteGroup {
        build_group(spec).unwrap()
    }

    #[test]
    fn classify_d3() {
        let r = classify_group(&g("D:3")).unwrap().report();
        assert_eq!(r.abelian_map_count, 4);
        assert_eq!(r.distinct_subgroups, 5);
        let want: BTreeMap<String, usize> =
            [("D:3".to_string(), 2), ("C:3 x C:2".to_string(), 3)].into_iter().collect();
        assert_eq!(r.type_tallies, want);
        assert_eq!(r.type_tallies.values().sum::<usize>(), r.distinct_subgroups);
        assert!(r.maps[0].equals_lambda);
    }

    #[test]
    fn classify_abelian_degenerates() {
        let r = classify_group(&g("C:4")).unwrap().report();
        assert_eq!(r.abelian_map_count, 4);
        // Every N_ψ is λ(G) = ρ(G) for abelian G.
        assert_eq!(r.distinct_subgroups, 1);
        assert!(r.maps.iter().all(|m| m.equals_lambda && !m.opposite_distinct));
    }

    #[test]
    fn dihedral_formula_rows() {
        assert_eq!(dihedral_formula(3), (1, None, 3, 4, 5));
        assert_eq!(dihedral_formula(6), (4, Some(3), 3, 10, 17));
        let row = dihedral_row(6).unwrap();
        assert!(row.matches(), "{row:?}");
        assert_eq!(row.raw_abelian_maps, 40);
        let row = dihedral_row(5).unwrap();
        assert!(row.matches(), "{row:?}");
    }

    #[test]
    fn dihedral_n4_hgs_count() {
        let row = dihedral_row(4).unwrap();
        assert_eq!(row.type_dn.computed, 3);
        assert_eq!(row.type_dhalf_c2.computed, 2);
        assert_eq!(row.type_cn_c2.computed, 2);
        assert_eq!(row.abelian_maps.computed, 7);
        // D_2 x C_2 is abelian, so its two subgroups are self-opposite.
        assert_eq!(row.hgs.computed, 10);
        assert_eq!(row.mismatches(), vec!["HGS"]);
    }

    fn failing(r: &VerifyReport) -> Vec<&'static str> {
        r.families.iter().filter(|f| !f.passed).map(|f| f.name).collect()
    }

    #[test]
    fn verify_small_groups() {
        let r = verify_group(&g("C:2 x C:2"), VerifyOptions { oracle: true }).unwrap();
        assert!(r.passed, "{r:?}");
        // Inner automorphisms move ψ while ψ(gφ(g⁻¹)) stays trivial.
        for spec in ["S:3", "D:4", "M:5:2"] {
            let oracle = g(spec).order() <= ORACLE_CAP;
            let r = verify_group(&g(spec), VerifyOptions { oracle }).unwrap();
            assert_eq!(failing(&r), vec!["aut-conjugation"], "{r:?}");
            assert!(r.families.iter().any(|f| f.name == "aut-conjugation-direct" && f.passed));
        }
    }

    #[test]
    fn verify_oracle_cap() {
        assert!(verify_group(&g("D:5"), VerifyOptions { oracle: true }).is_err());
    }

    #[test]
    fn csv_outputs_have_headers() {
        let r = classify_group(&g("D:3")).unwrap().report();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("index,description,images,fixed_point_free"));
        assert_eq!(text.lines().count(), 5);

        let mut buf = Vec::new();
        write_dihedral_csv(&dihedral_table(3).unwrap(), &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("n,raw_abelian_maps"));
    }

    #[test]
    fn suite_groups_build() {
        for spec in SUITE_GROUPS {
            let grp = g(spec);
            assert!(grp.order() <= 24 || *spec == "S:5");
        }
    }
}
