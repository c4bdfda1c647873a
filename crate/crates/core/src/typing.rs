//! Isomorphism-type labels for small groups.
//!
//! A label is a builder spec (`"D:6"`, `"A:5 x C:2"`, ...) of a group
//! isomorphic to the input. Candidates are tried in a fixed order and the
//! first isomorphic one wins, so labels are deterministic.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::group::{build_group, find_isomorphism, iso_fingerprint, FiniteGroup, Fingerprint};
use crate::maps::AbelianMap;
use crate::perm::{GroupPermutation, PermSubgroup};
use crate::regular::{build_n, five_subgroups};

/// Largest order for which a label is searched.
pub const TYPE_CAP: usize = 120;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Single-family specs of order `k`, in the order C, D, A, S, M.
fn family_specs(k: usize) -> Vec<String> {
    let mut out = vec![format!("C:{k}")];
    if k.is_multiple_of(2) && k / 2 >= 3 {
        out.push(format!("D:{}", k / 2));
    }
    for n in 3..=6 {
        if factorial(n) / 2 == k {
            out.push(format!("A:{n}"));
        }
    }
    for n in 2..=6 {
        if factorial(n) == k && n >= 3 {
            out.push(format!("S:{n}"));
        }
    }
    for q in (2..k).filter(|&q| is_prime(q) && k.is_multiple_of(q)) {
        let p = k / q;
        if p > q && is_prime(p) && (p - 1).is_multiple_of(q) {
            out.push(format!("M:{p}:{q}"));
        }
    }
    out
}

/// Invariant-factor lists `n₁ ≥ n₂ ≥ …` with `n_{i+1} | n_i`, each at
/// least 2, with product `k`.
fn invariant_factors(k: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, bound: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in (2..=rest.min(bound)).rev() {
            if rest.is_multiple_of(d) && bound.is_multiple_of(d) {
                acc.push(d);
                go(rest / d, d, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(k, k, &mut Vec::new(), &mut out);
    out
}

/// The candidate list for order `k`: single families, abelian groups in
/// invariant-factor form, then two-factor products with a nonabelian factor.
pub fn candidate_specs(k: usize) -> Vec<String> {
    let mut out = family_specs(k);
    for factors in invariant_factors(k).into_iter().filter(|f| f.len() > 1) {
        out.push(factors.iter().map(|d| format!("C:{d}")).collect::<Vec<_>>().join(" x "));
    }
    for a in (2..k).rev().filter(|a| k.is_multiple_of(*a)) {
        let b = k / a;
        for left in family_specs(a).into_iter().filter(|s| !s.starts_with("C:")) {
            for right in family_specs(b).into_iter().chain(
                invariant_factors(b)
                    .into_iter()
                    .filter(|f| f.len() > 1)
                    .map(|f| f.iter().map(|d| format!("C:{d}")).collect::<Vec<_>>().join(" x ")),
            ) {
                out.push(format!("{left} x {right}"));
            }
        }
    }
    out.dedup();
    out
}

type CandidateCache = Mutex<HashMap<String, Option<(FiniteGroup, Fingerprint)>>>;

fn cached_candidate(spec: &str) -> Option<(FiniteGroup, Fingerprint)> {
    static CACHE: OnceLock<CandidateCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(spec) {
        return hit.clone();
    }
    let built = build_group(spec).ok().map(|g| {
        let fp = iso_fingerprint(&g);
        (g, fp)
    });
    cache.lock().expect("cache lock").insert(spec.to_string(), built.clone());
    built
}

fn matches(group: &FiniteGroup, fp: &Fingerprint, spec: &str) -> bool {
    match cached_candidate(spec) {
        Some((cand, cfp)) => cfp == *fp && find_isomorphism(group, &cand).is_some(),
        None => false,
    }
}

/// A label for `group`, trying `hints` before the standard candidates.
pub fn identify(group: &FiniteGroup, hints: &[String]) -> String {
    let k = group.order();
    let fp = iso_fingerprint(group);
    if k > TYPE_CAP {
        return format!("unknown:order-{k}:{fp}");
    }
    hints
        .iter()
        .cloned()
        .chain(candidate_specs(k))
        .find(|spec| matches(group, &fp, spec))
        .unwrap_or_else(|| format!("unknown:order-{k}:{fp}"))
}

/// The type of a regular subgroup. The base group's own spec is tried
/// first, then `hints`.
pub fn hgs_type(n: &PermSubgroup, hints: &[String]) -> String {
    let abstract_n = n.to_group("N");
    let base_spec = n.base().spec().to_string();
    let mut all = Vec::with_capacity(hints.len() + 1);
    if !base_spec.starts_with("file:") {
        all.push(base_spec);
    }
    all.extend_from_slice(hints);
    identify(&abstract_n, &all)
}

/// Checks that `η_{g₀g₁} = λ(g₀)ρ(g₁⁻¹)` for all `g₀ ∈ G₀`, `g₁ ∈ G₁` and
/// that these elements form a subgroup isomorphic to `G₀ × G₁`. When
/// `|G₀||G₁| = |G|` also checks `N_ψ ≅ G₀ × G₁` and returns its label.
pub fn xprod_check(psi: &AbelianMap) -> Result<Option<String>> {
    let grp = psi.group();
    let five = five_subgroups(psi)?;
    let n = build_n(psi)?;
    let mut perms = Vec::new();
    for &g0 in five.kernel.members() {
        for &g1 in five.fixed.members() {
            let p = GroupPermutation::left(grp, g0).compose(&GroupPermutation::right(grp, grp.inv(g1)));
            if n.element_at(grp.mul(g0, g1)) != Some(&p) {
                return Err(Error::Verification("η_{g₀g₁} ≠ λ(g₀)ρ(g₁⁻¹)".into()));
            }
            perms.push(p);
        }
    }
    let g0 = five.kernel.to_group("G0");
    let g1 = five.fixed.to_group("G1");
    let product = g0.direct_product(&g1);
    let part = PermSubgroup::new(grp.clone(), perms, None)
        .map_err(|e| Error::Verification(format!("G₀G₁ part of N_ψ: {e}")))?;
    if find_isomorphism(&part.to_group("N01"), &product).is_none() {
        return Err(Error::Verification("G₀G₁ part of N_ψ is not G₀ × G₁".into()));
    }
    if g0.order() * g1.order() != grp.order() {
        return Ok(None);
    }
    if find_isomorphism(&n.to_group("N"), &product).is_none() {
        return Err(Error::Verification("N_ψ is not isomorphic to G₀ × G₁".into()));
    }
    Ok(Some(product_label(&g0, &g1)))
}

fn product_label(g0: &FiniteGroup, g1: &FiniteGroup) -> String {
    let l0 = identify(g0, &[]);
    if g1.order() == 1 {
        return l0;
    }
    format!("{l0} x {}", identify(g1, &[]))
}

/// The type of `N_ψ`, using the `G₀ × G₁` label as a hint when it applies.
pub fn map_type(psi: &AbelianMap) -> Result<String> {
    let hints: Vec<String> = xprod_check(psi)?.into_iter().collect();
    Ok(hgs_type(&build_n(psi)?, &hints))
}
