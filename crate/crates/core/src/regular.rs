//! Regular, G-stable subgroups of `Perm(G)` built from abelian maps.
//!
//! For an abelian map `ψ` the subgroup `N_ψ` consists of
//! `η_g[h] = g ψ(g⁻¹) h ψ(g)` and its centralizer `N′_ψ` of
//! `η′_g[h] = h ψ(h⁻¹) g ψ(h)`. Both are labelled by `g`, which is also the
//! image of the identity.

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupMap, Subgroup};
use crate::maps::AbelianMap;
use crate::perm::{GroupPermutation, PermSubgroup};

fn labelled(group: &FiniteGroup, f: impl Fn(usize) -> GroupPermutation) -> Result<PermSubgroup> {
    let perms = group.elements().map(&f).collect();
    PermSubgroup::new(group.clone(), perms, Some(group.elements().collect()))
}

fn require_regular_stable(n: &PermSubgroup, what: &str) -> Result<()> {
    if !n.is_regular() {
        return Err(Error::Verification(format!("{what} is not regular")));
    }
    if !n.is_stable() {
        return Err(Error::Verification(format!("{what} is not G-stable")));
    }
    Ok(())
}

/// `λ(G)`, labelled by `g`.
pub fn lambda_rep(group: &FiniteGroup) -> PermSubgroup {
    labelled(group, |g| GroupPermutation::left(group, g)).expect("λ(G) is a subgroup")
}

/// `ρ(G)`, labelled by `g` (the element `ρ(g)`).
pub fn rho_rep(group: &FiniteGroup) -> PermSubgroup {
    labelled(group, |g| GroupPermutation::right(group, g)).expect("ρ(G) is a subgroup")
}

/// `η_g[h] = g ψ(g⁻¹) h ψ(g)`
pub fn eta(psi: &AbelianMap, g: usize) -> GroupPermutation {
    let grp = psi.group();
    let left = grp.mul(g, psi.apply(grp.inv(g)));
    let right = psi.apply(g);
    GroupPermutation::trusted(grp.elements().map(|h| grp.mul(grp.mul(left, h), right)).collect())
}

/// `η′_g[h] = h ψ(h⁻¹) g ψ(h)`
pub fn eta_opposite(psi: &AbelianMap, g: usize) -> GroupPermutation {
    let grp = psi.group();
    GroupPermutation::trusted(
        grp.elements()
            .map(|h| grp.product(&[h, psi.apply(grp.inv(h)), g, psi.apply(h)]))
            .collect(),
    )
}

/// `N_ψ = {η_g}`, verified regular and G-stable.
pub fn build_n(psi: &AbelianMap) -> Result<PermSubgroup> {
    let n = labelled(psi.group(), |g| eta(psi, g))
        .map_err(|e| Error::Verification(format!("N_ψ is not a subgroup: {e}")))?;
    require_regular_stable(&n, "N_ψ")?;
    Ok(n)
}

/// `N′_ψ = {η′_g}`, verified regular, G-stable and commuting elementwise
/// with `N_ψ`. Since `|N′| = |N|` and a regular subgroup's centralizer has
/// exactly `|G|` elements, this identifies `N′` as the centralizer.
pub fn build_n_opposite(psi: &AbelianMap) -> Result<PermSubgroup> {
    let opp = labelled(psi.group(), |g| eta_opposite(psi, g))
        .map_err(|e| Error::Verification(format!("N′_ψ is not a subgroup: {e}")))?;
    require_regular_stable(&opp, "N′_ψ")?;
    let n = build_n(psi)?;
    if opp.order() != n.order() || !opp.commutes_with(&n) {
        return Err(Error::Verification("N′_ψ does not centralize N_ψ".into()));
    }
    Ok(opp)
}

/// Childs's subgroup `{λ(g) ρ(Ψ(g))}` for a fixed point free `Ψ`.
pub fn childs_subgroup(big_psi: &AbelianMap) -> Result<PermSubgroup> {
    let grp = big_psi.group();
    if let Some(g) = grp.elements().skip(1).find(|&g| big_psi.apply(g) == g) {
        return Err(Error::NotFixedPointFree(g));
    }
    let n = childs_set(big_psi)?;
    require_regular_stable(&n, "Childs subgroup")?;
    Ok(n)
}

/// The set `{λ(g) ρ(Ψ(g))}` with no fixed-point check, labelled by `g`.
/// Closed under composition for every abelian `Ψ`, but regular only when
/// `Ψ` is fixed point free.
pub fn childs_set(big_psi: &AbelianMap) -> Result<PermSubgroup> {
    let grp = big_psi.group();
    labelled(grp, |g| {
        GroupPermutation::left(grp, g).compose(&GroupPermutation::right(grp, big_psi.apply(g)))
    })
}

/// Whether `N_ψ₁ = N_ψ₂`, decided by `ψ₂(g) ψ₁(g⁻¹) ∈ Z(G)` for all `g` and
/// cross-checked against literal equality of the two subgroups.
pub fn same_subgroup(psi1: &AbelianMap, psi2: &AbelianMap) -> Result<bool> {
    let grp = psi1.group();
    if !grp.same_as(psi2.group()) {
        return Err(Error::Mismatch("maps on different groups".into()));
    }
    let by_center = grp
        .elements()
        .all(|g| grp.is_central(grp.mul(psi2.apply(g), psi1.apply(grp.inv(g)))));
    let literal = build_n(psi1)? == build_n(psi2)?;
    if by_center != literal {
        return Err(Error::Verification(format!(
            "center criterion ({by_center}) disagrees with set equality ({literal})"
        )));
    }
    Ok(by_center)
}

/// The five subgroups of `G` attached to an abelian map.
#[derive(Clone, Debug)]
pub struct FiveSubgroups {
    /// `G₀ = ker ψ`
    pub kernel: Subgroup,
    /// `Ĝ₀ = ψ⁻¹(Z(G))`
    pub center_preimage: Subgroup,
    /// `G₁`, the fixed points of `ψ`
    pub fixed: Subgroup,
    /// `Ĝ₁ = {g : g ψ(g⁻¹) ∈ Z(G)}`
    pub phi_central: Subgroup,
    /// `G₀₁ = G₀ G₁`
    pub kernel_times_fixed: Subgroup,
}

pub fn five_subgroups(psi: &AbelianMap) -> Result<FiveSubgroups> {
    let grp = psi.group();
    let z = grp.center();
    let collect = |pred: &dyn Fn(usize) -> bool, what: &str| {
        Subgroup::new(grp.clone(), grp.elements().filter(|&g| pred(g)))
            .map_err(|e| Error::Verification(format!("{what}: {e}")))
    };
    let kernel = collect(&|g| psi.apply(g) == 0, "G₀")?;
    let center_preimage = collect(&|g| z.contains(psi.apply(g)), "Ĝ₀")?;
    let fixed = collect(&|g| psi.apply(g) == g, "G₁")?;
    let phi_central = collect(&|g| z.contains(psi.phi(g)), "Ĝ₁")?;
    let product = kernel
        .members()
        .iter()
        .flat_map(|&a| fixed.members().iter().map(move |&b| grp.mul(a, b)));
    let kernel_times_fixed = Subgroup::new(grp.clone(), product)
        .map_err(|e| Error::Verification(format!("G₀G₁: {e}")))?;

    let checks = [
        (grp.is_normal(&kernel)?, "G₀ is normal"),
        (fixed.is_abelian(), "G₁ is abelian"),
        (kernel.is_subgroup_of(&center_preimage), "G₀ ≤ Ĝ₀"),
        (fixed.is_subgroup_of(&phi_central), "G₁ ≤ Ĝ₁"),
        (kernel.intersection(&fixed).order() == 1, "G₀ ∩ G₁ = 1"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(Error::Verification(format!("{what} fails")));
    }
    Ok(FiveSubgroups { kernel, center_preimage, fixed, phi_central, kernel_times_fixed })
}

/// `Λ_N = N ∩ λ(G)`
pub fn lambda_points(n: &PermSubgroup) -> PermSubgroup {
    n.intersection(&lambda_rep(n.base()))
}

/// `P_N = N ∩ ρ(G)`
pub fn rho_points(n: &PermSubgroup) -> PermSubgroup {
    n.intersection(&rho_rep(n.base()))
}

/// The subgroup `{λ(g₀) ρ(g₁⁻¹) : g₀ ∈ G₀, g₁ ∈ G₁}` of `N_ψ`, labelled by
/// `g₀ g₁`.
pub fn kernel_fixed_part(psi: &AbelianMap, five: &FiveSubgroups) -> Result<PermSubgroup> {
    let grp = psi.group();
    let mut perms = Vec::new();
    let mut labels = Vec::new();
    for &g0 in five.kernel.members() {
        for &g1 in five.fixed.members() {
            perms.push(
                GroupPermutation::left(grp, g0).compose(&GroupPermutation::right(grp, grp.inv(g1))),
            );
            labels.push(grp.mul(g0, g1));
        }
    }
    PermSubgroup::new(grp.clone(), perms, Some(labels))
}

/// Moves the left multiplication action of `G` onto an abstract group `N`
/// through an isomorphism `α: (G, ∘) → N`:
/// `π_g[n] = α(g · α⁻¹(n))`.
///
/// The result is verified regular and `N`-stable, `g ↦ π_g` is verified to
/// be a homomorphism from `G`, and `ᵐπ_g = π_{(a∘g)a⁻¹}` with `a = α⁻¹(m)`
/// is checked for every `m` and `g`.
pub fn transport(psi: &AbelianMap, alpha: &GroupMap) -> Result<PermSubgroup> {
    let grp = psi.group();
    let circle = crate::brace::circle_group(psi);
    if alpha.source().table() != circle.table() {
        return Err(Error::Mismatch("α is not defined on the circle group of ψ".into()));
    }
    let target = alpha.target().clone();
    let alpha_inv = alpha
        .inverse()
        .filter(|_| {
            GroupMap::new(alpha.source().clone(), target.clone(), alpha.images().to_vec()).is_ok()
        })
        .ok_or(Error::NotAutomorphism)?;

    let pi = |g: usize| {
        GroupPermutation::trusted(
            target.elements().map(|n| alpha.apply(grp.mul(g, alpha_inv.apply(n)))).collect(),
        )
    };
    let p = PermSubgroup::new(target.clone(), grp.elements().map(pi).collect(), Some(grp.elements().collect()))?;
    require_regular_stable(&p, "transported subgroup")?;

    for g in grp.elements() {
        for h in grp.elements() {
            if pi(g).compose(&pi(h)) != pi(grp.mul(g, h)) {
                return Err(Error::Verification("g ↦ π_g is not a homomorphism".into()));
            }
        }
    }
    for m in target.elements() {
        let a = alpha_inv.apply(m);
        let a_inv = grp.inv(a);
        for g in grp.elements() {
            let lhs = pi(g).conjugate_by_left(&target, m);
            let rhs = pi(grp.mul(circle.mul(a, g), a_inv));
            if lhs != rhs {
                return Err(Error::Verification("conjugation identity for π fails".into()));
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, find_isomorphism};
    use crate::maps::{enumerate_abelian_maps, normal_complement_map};
    use crate::testutil::{idx, s_map};

    fn g(spec: &str) -> FiniteGroup {
        build_group(spec).unwrap()
    }

    fn map_from_gens(grp: &FiniteGroup, images: &[(&str, &str)]) -> AbelianMap {
        let gens: Vec<usize> = images.iter().map(|(a, _)| idx(grp, a)).collect();
        let ims: Vec<usize> = images.iter().map(|(_, b)| idx(grp, b)).collect();
        let full = crate::group::extend_homomorphism(grp, &gens, &ims, grp).unwrap();
        AbelianMap::new(grp.clone(), full).unwrap()
    }

    #[test]
    fn lambda_rho_basics() {
        let c1 = g("C:1");
        assert_eq!(lambda_rep(&c1).order(), 1);
        assert_eq!(lambda_rep(&c1), rho_rep(&c1));

        for spec in ["D:3", "S:4", "C:6"] {
            let grp = g(spec);
            let (l, r) = (lambda_rep(&grp), rho_rep(&grp));
            assert!(l.is_regular() && l.is_stable());
            assert!(r.is_regular() && r.is_stable());
            assert!(l.commutes_with(&r));
        }

        let d3 = g("D:3");
        let meet = lambda_rep(&d3).intersection(&rho_rep(&d3));
        assert_eq!(meet.order(), 1);
        let d4 = g("D:4");
        let meet = lambda_rep(&d4).intersection(&rho_rep(&d4));
        let z = d4.center();
        assert_eq!(meet.order(), z.order());
        for &c in z.members() {
            assert!(meet.contains(&GroupPermutation::left(&d4, c)));
        }
    }

    #[test]
    fn trivial_map_gives_lambda_and_rho() {
        for spec in ["S:3", "D:5", "C:4"] {
            let grp = g(spec);
            let triv = AbelianMap::trivial(&grp);
            assert_eq!(build_n(&triv).unwrap(), lambda_rep(&grp));
            assert_eq!(build_n_opposite(&triv).unwrap(), rho_rep(&grp));
            assert_eq!(childs_subgroup(&triv).unwrap(), lambda_rep(&grp));
        }
    }

    #[test]
    fn d3_reflection_map_gives_cyclic_n() {
        let d3 = g("D:3");
        let psi = map_from_gens(&d3, &[("r", "1"), ("s", "s")]);
        let n = build_n(&psi).unwrap();
        let (r, s) = (idx(&d3, "r"), idx(&d3, "s"));
        assert!(n.contains(&GroupPermutation::left(&d3, r)));
        assert!(n.contains(&GroupPermutation::right(&d3, d3.inv(s))));
        assert!(find_isomorphism(&n.to_group("N"), &g("C:6")).is_some());
    }

    #[test]
    fn s5_eta_formulas() {
        let s5 = g("S:5");
        let a5 = s5.subgroup_generated(&[idx(&s5, "(1 2 3)"), idx(&s5, "(1 2 3 4 5)")]).unwrap();
        let xi = idx(&s5, "(1 2)(3 4)");
        let psi = s_map(&s5, xi);
        let n = build_n(&psi).unwrap();
        let opp = build_n_opposite(&psi).unwrap();
        for sigma in s5.elements() {
            let eta_s = n.element_at(sigma).unwrap();
            let eta_o = opp.element_at(sigma).unwrap();
            for pi in s5.elements() {
                let expected = if a5.contains(sigma) {
                    s5.mul(sigma, pi)
                } else {
                    s5.product(&[sigma, xi, pi, xi])
                };
                assert_eq!(eta_s.apply(pi), expected);
                let expected_o = if a5.contains(pi) {
                    s5.mul(pi, sigma)
                } else {
                    s5.product(&[pi, xi, sigma, xi])
                };
                assert_eq!(eta_o.apply(pi), expected_o);
            }
        }
    }

    #[test]
    fn normal_complement_opposite_formula() {
        let s4 = g("S:4");
        let a4 = s4.subgroup_generated(&[idx(&s4, "(1 2 3)"), idx(&s4, "(2 3 4)")]).unwrap();
        let c2 = s4.subgroup_generated(&[idx(&s4, "(1 2)")]).unwrap();
        let psi = normal_complement_map(&s4, &a4, &c2).unwrap();
        let opp = build_n_opposite(&psi).unwrap();
        let n = build_n(&psi).unwrap();
        for &h in a4.members() {
            for &k in c2.members() {
                let hk = s4.mul(h, k);
                let eta_hk = n.element_at(hk).unwrap();
                let lr = GroupPermutation::left(&s4, h).compose(&GroupPermutation::right(&s4, k));
                assert_eq!(*eta_hk, lr);
                let eta_o = opp.element_at(hk).unwrap();
                for &x in a4.members() {
                    for &y in c2.members() {
                        let xy = s4.mul(x, y);
                        assert_eq!(eta_o.apply(xy), s4.product(&[x, h, k, s4.inv(y)]));
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_is_the_centralizer_at_small_order() {
        for spec in ["S:3", "D:4", "C:2 x C:2", "C:6"] {
            let grp = g(spec);
            for psi in enumerate_abelian_maps(&grp).unwrap() {
                let n = build_n(&psi).unwrap();
                let cent = crate::oracle::centralizer_in_symmetric(&n).unwrap();
                assert_eq!(build_n_opposite(&psi).unwrap().elements(), cent.as_slice());
            }
        }
    }

    #[test]
    fn childs_requires_fixed_point_free() {
        let d3 = g("D:3");
        let psi = map_from_gens(&d3, &[("r", "1"), ("s", "s")]);
        assert!(matches!(childs_subgroup(&psi), Err(Error::NotFixedPointFree(_))));
        let set = childs_set(&psi).unwrap();
        assert!(!set.is_regular());
    }

    #[test]
    fn childs_bridge() {
        for (spec, at_least) in [("D:5", 1), ("D:4", 2), ("D:6", 2), ("S:4", 1)] {
            let grp = g(spec);
            let mut count = 0;
            for big in enumerate_abelian_maps(&grp).unwrap().into_iter().filter(AbelianMap::is_fixed_point_free) {
                let c = childs_subgroup(&big).unwrap();
                assert_eq!(c, build_n(&big.quasi_inverse().unwrap()).unwrap());
                count += 1;
            }
            assert!(count >= at_least, "{spec}");
            if spec == "D:5" {
                assert_eq!(count, 1);
            }
        }
    }

    #[test]
    fn childs_on_d4_even_case_three() {
        // ψ(r) = s, ψ(s) = 1 (i = 0, even): fixed point free, type D_4.
        let d4 = g("D:4");
        let big = map_from_gens(&d4, &[("r", "s"), ("s", "1")]);
        assert!(big.is_fixed_point_free());
        let c = childs_subgroup(&big).unwrap();
        assert!(find_isomorphism(&c.to_group("N"), &d4).is_some());
    }

    #[test]
    fn same_subgroup_examples() {
        let d3 = g("D:3");
        let a = map_from_gens(&d3, &[("r", "1"), ("s", "s")]);
        let b = map_from_gens(&d3, &[("r", "1"), ("s", "r s")]);
        assert!(same_subgroup(&a, &a).unwrap());
        assert!(!same_subgroup(&a, &b).unwrap());

        let d4 = g("D:4");
        let a = map_from_gens(&d4, &[("r", "1"), ("s", "s")]);
        let b = map_from_gens(&d4, &[("r", "1"), ("s", "r^2 s")]);
        assert!(same_subgroup(&a, &b).unwrap());
        // ζ(g) = ψ_b(g) ψ_a(g⁻¹): ζ(r) = 1, ζ(s) = r²
        let zeta = |x: usize| d4.mul(b.apply(x), a.apply(d4.inv(x)));
        assert_eq!(zeta(idx(&d4, "r")), 0);
        assert_eq!(zeta(idx(&d4, "s")), idx(&d4, "r^2"));

        assert!(same_subgroup(&a, &AbelianMap::trivial(&d3)).is_err());
    }

    #[test]
    fn five_subgroups_examples() {
        let d4 = g("D:4");
        let triv = five_subgroups(&AbelianMap::trivial(&d4)).unwrap();
        assert_eq!(triv.kernel.order(), 8);
        assert_eq!(triv.center_preimage.order(), 8);
        assert_eq!(triv.fixed.order(), 1);
        assert_eq!(triv.phi_central.members(), d4.center().members());
        assert_eq!(triv.kernel_times_fixed.order(), 8);

        let s5 = g("S:5");
        let xi = idx(&s5, "(1 2)");
        let five = five_subgroups(&s_map(&s5, xi)).unwrap();
        assert_eq!(five.kernel.order(), 60);
        assert_eq!(five.fixed.members(), &[0, xi]);
        assert_eq!(five.kernel_times_fixed.order(), 120);

        let d6 = g("D:6");
        let psi = map_from_gens(&d6, &[("r", "r s"), ("s", "1")]);
        let five = five_subgroups(&psi).unwrap();
        let expected_g0 = d6.subgroup_generated(&[idx(&d6, "r^2"), idx(&d6, "s")]).unwrap();
        assert_eq!(five.kernel, expected_g0);
        assert!(find_isomorphism(&five.kernel.to_group("G0"), &g("D:3")).is_some());
        let rs = idx(&d6, "r s");
        assert_eq!(five.fixed.members(), &[0, rs]);
    }

    #[test]
    fn lambda_and_rho_points() {
        let d4 = g("D:4");
        let l = lambda_rep(&d4);
        assert_eq!(lambda_points(&l), l);
        let p = rho_points(&l);
        assert_eq!(p.order(), 2);

        let s5 = g("S:5");
        let psi = s_map(&s5, idx(&s5, "(1 2)"));
        let n = build_n(&psi).unwrap();
        let lp = lambda_points(&n);
        assert_eq!(lp.order(), 60);
        assert!(lp.labels().unwrap().iter().all(|&x| psi.apply(x) == 0));
        let rp = rho_points(&n);
        let five = five_subgroups(&psi).unwrap();
        assert_eq!(rp.labels().unwrap(), five.fixed.members());
    }

    #[test]
    fn kernel_fixed_part_embeds() {
        let d5 = g("D:5");
        let psi = map_from_gens(&d5, &[("r", "1"), ("s", "s")]);
        let five = five_subgroups(&psi).unwrap();
        let part = kernel_fixed_part(&psi, &five).unwrap();
        let n = build_n(&psi).unwrap();
        assert_eq!(part, n);
    }

    #[test]
    fn transport_trivial_map() {
        let s3 = g("S:3");
        let psi = AbelianMap::trivial(&s3);
        let circle = crate::brace::circle_group(&psi);
        let alpha = GroupMap::identity(&circle);
        let p = transport(&psi, &alpha).unwrap();
        assert_eq!(p.elements(), lambda_rep(&s3).elements());
    }

    /// `α(σ) = (σ, 1)` for even `σ`, `α(τ) = (τξ, ξ)` for odd `τ`.
    fn s5_alpha(s5: &FiniteGroup, xi: usize) -> (AbelianMap, GroupMap) {
        let psi = s_map(s5, xi);
        let a5c2 = build_group("A:5 x C:2").unwrap();
        let a5 = s5.commutator_subgroup();
        let pair = |sigma: usize, c: usize| idx(&a5c2, &format!("({}, {})", s5.name(sigma), c_name(c)));
        let images = s5
            .elements()
            .map(|x| if a5.contains(x) { pair(x, 0) } else { pair(s5.mul(x, xi), 1) })
            .collect();
        let alpha = GroupMap::new(crate::brace::circle_group(&psi), a5c2, images).unwrap();
        (psi, alpha)
    }

    fn c_name(c: usize) -> String {
        build_group("C:2").unwrap().name(c).to_string()
    }

    #[test]
    fn transport_s5_example() {
        let s5 = g("S:5");
        let xi = idx(&s5, "(1 2)");
        let (psi, alpha) = s5_alpha(&s5, xi);
        let p = transport(&psi, &alpha).unwrap();
        assert!(find_isomorphism(&p.to_group("P"), &s5).is_some());

        let target = alpha.target();
        let a5 = s5.commutator_subgroup();
        let pair = |sigma: usize, c: usize| idx(target, &format!("({}, {})", s5.name(sigma), c_name(c)));
        for tau in s5.elements() {
            let pi = p.labelled(tau).unwrap();
            for &sigma in a5.members() {
                let ts = s5.mul(tau, sigma);
                let (first, second) = if a5.contains(tau) {
                    (pair(ts, 0), pair(ts, 1))
                } else {
                    (pair(s5.mul(ts, xi), 1), pair(s5.mul(ts, xi), 0))
                };
                assert_eq!(pi.apply(pair(sigma, 0)), first, "tau {} sigma {}", s5.name(tau), s5.name(sigma));
                // On the ξ coset: (τσ, ξ) for τ even and (τσξ, 1) for τ odd.
                assert_eq!(pi.apply(pair(sigma, 1)), second);
            }
        }
    }

    #[test]
    fn conjugation_identity_needs_the_circle_product() {
        let s3 = g("S:3");
        let psi = map_from_gens(&s3, &[("(1 2)", "(1 2)"), ("(1 2 3)", "()")]);
        let circle = crate::brace::circle_group(&psi);
        let target = build_group("C:6").unwrap();
        let alpha = find_isomorphism(&circle, &target).unwrap();
        let p = transport(&psi, &alpha).unwrap();
        let alpha_inv = alpha.inverse().unwrap();
        let dot_form_holds = target.elements().all(|m| {
            let a = alpha_inv.apply(m);
            let a_bar = alpha_inv.apply(target.inv(m));
            s3.elements().all(|x| {
                p.labelled(x).unwrap().conjugate_by_left(&target, m)
                    == *p.labelled(s3.product(&[a, x, a_bar])).unwrap()
            })
        });
        assert!(!dot_form_holds);
    }

    #[test]
    fn transport_depends_on_alpha_up_to_conjugation() {
        let s3 = g("S:3");
        let psi = map_from_gens(&s3, &[("(1 2)", "(1 2)"), ("(1 2 3)", "()")]);
        let circle = crate::brace::circle_group(&psi);
        let target = build_group("C:6").unwrap();
        let alpha = find_isomorphism(&circle, &target).unwrap();
        for gamma in crate::group::automorphisms(&target) {
            let beta = GroupMap::new(circle.clone(), target.clone(), (0..6).map(|x| gamma.apply(alpha.apply(x))).collect()).unwrap();
            let pa = transport(&psi, &alpha).unwrap();
            let pb = transport(&psi, &beta).unwrap();
            // π^β_g = γ π^α_g γ⁻¹ with γ = βα⁻¹.
            let gam = GroupPermutation::new(gamma.images().to_vec()).unwrap();
            for x in s3.elements() {
                let conj = gam.compose(pa.labelled(x).unwrap()).compose(&gam.inverse());
                assert_eq!(&conj, pb.labelled(x).unwrap());
            }
        }
    }

    #[test]
    fn transport_rejects_foreign_alpha() {
        let s3 = g("S:3");
        let psi = map_from_gens(&s3, &[("(1 2)", "(1 2)"), ("(1 2 3)", "()")]);
        let alpha = GroupMap::identity(&s3);
        assert!(transport(&psi, &alpha).is_err());
    }
}
