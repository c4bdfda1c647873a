//! Set-theoretic solutions of the Yang–Baxter equation on a finite carrier.
//!
//! A map `R: B×B → B×B` is tabulated as `table[x n + y] = a n + b` where
//! `R(x, y) = (a, b)`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{brace_from_abelian_map, SkewBrace};
use crate::error::{Error, Result};
use crate::maps::AbelianMap;

/// A tabulated map `B×B → B×B` with no properties assumed.
#[derive(Clone, PartialEq, Eq)]
pub struct PairMap {
    size: usize,
    table: Vec<usize>,
}

impl fmt::Debug for PairMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairMap(size {})", self.size)
    }
}

impl PairMap {
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> (usize, usize) + Sync) -> Result<Self> {
        let table: Vec<usize> = (0..size * size)
            .into_par_iter()
            .map(|i| {
                let (a, b) = f(i / size, i % size);
                if a >= size || b >= size {
                    usize::MAX
                } else {
                    a * size + b
                }
            })
            .collect();
        if table.contains(&usize::MAX) {
            return Err(Error::OutOfRange(format!("pair map leaves the carrier of size {size}")));
        }
        Ok(Self { size, table })
    }

    pub fn identity(size: usize) -> Self {
        Self { size, table: (0..size * size).collect() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    fn raw(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        let v = self.raw(x, y);
        (v / self.size, v % self.size)
    }

    /// `self ∘ other`, i.e. `other` first.
    pub fn compose(&self, other: &PairMap) -> Result<PairMap> {
        if self.size != other.size {
            return Err(Error::Mismatch(format!(
                "carriers of size {} and {}",
                self.size, other.size
            )));
        }
        let table = other.table.iter().map(|&v| self.table[v]).collect();
        Ok(PairMap { size: self.size, table })
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_involutive(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &v)| self.table[v] == i)
    }

    /// `y ↦ R(x, y)₁` is a bijection for each `x` and `x ↦ R(x, y)₂` is a
    /// bijection for each `y`.
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.size;
        (0..n).into_par_iter().all(|x| {
            let mut seen = vec![false; n];
            (0..n).all(|y| !std::mem::replace(&mut seen[self.apply(x, y).0], true))
        }) && (0..n).into_par_iter().all(|y| {
            let mut seen = vec![false; n];
            (0..n).all(|x| !std::mem::replace(&mut seen[self.apply(x, y).1], true))
        })
    }

    /// `(R×id)(id×R)(R×id) = (id×R)(R×id)(id×R)` on every triple.
    pub fn satisfies_braid(&self) -> bool {
        let n = self.size;
        (0..n).into_par_iter().all(|x| {
            for y in 0..n {
                let (a, b) = self.apply(x, y);
                for z in 0..n {
                    let (c, d) = self.apply(b, z);
                    let (e, f) = self.apply(a, c);

                    let (b2, c2) = self.apply(y, z);
                    let (a2, d2) = self.apply(x, b2);
                    let (e2, f2) = self.apply(d2, c2);
                    if (e, f, d) != (a2, e2, f2) {
                        return false;
                    }
                }
            }
            true
        })
    }

    pub fn to_pairs(&self) -> Vec<Vec<[usize; 2]>> {
        (0..self.size)
            .map(|x| {
                (0..self.size)
                    .map(|y| {
                        let (a, b) = self.apply(x, y);
                        [a, b]
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn verify_braid(r: &PairMap) -> bool {
    r.satisfies_braid()
}

pub fn is_involutive(r: &PairMap) -> bool {
    r.is_involutive()
}

pub fn is_nondegenerate(r: &PairMap) -> bool {
    r.is_nondegenerate()
}

/// `first ∘ second`, the map applying `second` first.
pub fn compose(first: &PairMap, second: &PairMap) -> Result<PairMap> {
    first.compose(second)
}

/// A non-degenerate solution, verified on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbeSolution {
    map: PairMap,
}

impl YbeSolution {
    pub fn new(map: PairMap) -> Result<Self> {
        if !map.is_nondegenerate() {
            return Err(Error::Verification("solution is degenerate".into()));
        }
        if !map.satisfies_braid() {
            return Err(Error::Verification("braid relation fails".into()));
        }
        Ok(Self { map })
    }

    pub fn map(&self) -> &PairMap {
        &self.map
    }

    pub fn size(&self) -> usize {
        self.map.size
    }

    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        self.map.apply(x, y)
    }

    pub fn is_involutive(&self) -> bool {
        self.map.is_involutive()
    }

    pub fn to_record(&self) -> SolutionRecord {
        SolutionRecord {
            size: self.size(),
            r: self.map.to_pairs(),
            properties: SolutionProperties {
                involutive: self.is_involutive(),
                nondegenerate: true,
                braid: true,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionProperties {
    pub involutive: bool,
    pub nondegenerate: bool,
    pub braid: bool,
}

/// Serialized form: `{"size", "R", "properties"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub size: usize,
    #[serde(rename = "R")]
    pub r: Vec<Vec<[usize; 2]>>,
    pub properties: SolutionProperties,
}

impl SolutionRecord {
    pub fn load(&self) -> Result<YbeSolution> {
        let n = self.size;
        if self.r.len() != n || self.r.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!("expected a {n}x{n} pair table")));
        }
        YbeSolution::new(PairMap::from_fn(n, |x, y| (self.r[x][y][0], self.r[x][y][1]))?)
    }
}

/// The four brace solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BraceVariant {
    /// `R_𝔅(x,y) = (x⁻¹(x∘y), \overline{x⁻¹(x∘y)}∘x∘y)`
    R,
    /// `R_𝔅′(x,y) = ((x∘y)x⁻¹, \overline{(x∘y)x⁻¹}∘x∘y)`
    RPrime,
    /// `S_𝔅(x,y) = (x̄∘(xy), (x̄∘(xy))⁻¹xy)`, bi-skew braces only
    S,
    /// `S_𝔅′(x,y) = ((xy)∘x̄, ((xy)∘x̄)⁻¹xy)`, the inverse of `S`
    SPrime,
}

impl BraceVariant {
    pub const ALL: [BraceVariant; 4] =
        [BraceVariant::R, BraceVariant::RPrime, BraceVariant::S, BraceVariant::SPrime];
}

pub fn brace_pair_map(b: &SkewBrace, variant: BraceVariant) -> Result<PairMap> {
    let n = b.size();
    match variant {
        BraceVariant::R => PairMap::from_fn(n, |x, y| {
            let a = b.mul(b.inv(x), b.circ(x, y));
            (a, b.circ(b.circ(b.bar(a), x), y))
        }),
        BraceVariant::RPrime => PairMap::from_fn(n, |x, y| {
            let a = b.mul(b.circ(x, y), b.inv(x));
            (a, b.circ(b.circ(b.bar(a), x), y))
        }),
        BraceVariant::S => PairMap::from_fn(n, |x, y| {
            let xy = b.mul(x, y);
            let a = b.circ(b.bar(x), xy);
            (a, b.mul(b.inv(a), xy))
        }),
        BraceVariant::SPrime => PairMap::from_fn(n, |x, y| {
            let xy = b.mul(x, y);
            let a = b.circ(xy, b.bar(x));
            (a, b.mul(b.inv(a), xy))
        }),
    }
}

pub fn solution_from_brace(b: &SkewBrace, variant: BraceVariant) -> Result<YbeSolution> {
    if matches!(variant, BraceVariant::S | BraceVariant::SPrime) && !b.is_biskew() {
        return Err(Error::Precondition(format!("{variant:?} needs a bi-skew brace")));
    }
    YbeSolution::new(brace_pair_map(b, variant)?)
}

/// Which of the four closed-form solutions attached to an abelian map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MapSolution {
    R1,
    R2,
    R3,
    R4,
}

impl MapSolution {
    pub const ALL: [MapSolution; 4] = [MapSolution::R1, MapSolution::R2, MapSolution::R3, MapSolution::R4];

    /// The brace variant on `𝔅_ψ` that this closed form must agree with.
    pub fn brace_variant(self) -> BraceVariant {
        match self {
            MapSolution::R1 => BraceVariant::R,
            MapSolution::R2 => BraceVariant::RPrime,
            MapSolution::R3 => BraceVariant::S,
            MapSolution::R4 => BraceVariant::SPrime,
        }
    }
}

impl std::str::FromStr for MapSolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "R1" => Ok(MapSolution::R1),
            "R2" => Ok(MapSolution::R2),
            "R3" => Ok(MapSolution::R3),
            "R4" => Ok(MapSolution::R4),
            _ => Err(Error::OutOfRange(format!("unknown variant {s}, expected R1..R4"))),
        }
    }
}

/// The closed-form table of `R_{k,ψ}`.
pub fn closed_form(psi: &AbelianMap, which: MapSolution) -> Result<PairMap> {
    let grp = psi.group();
    let p = |x: usize| psi.apply(x);
    let i = |x: usize| grp.inv(x);
    let m = |xs: &[usize]| grp.product(xs);
    let n = grp.order();
    match which {
        MapSolution::R1 => PairMap::from_fn(n, |g, h| {
            (
                m(&[p(i(g)), h, p(g)]),
                m(&[p(grp.mul(h, i(g))), i(h), p(g), g, p(i(g)), h, p(grp.mul(g, i(h)))]),
            )
        }),
        MapSolution::R2 => PairMap::from_fn(n, |g, h| {
            (m(&[g, p(i(g)), h, p(g), i(g)]), m(&[p(h), g, p(i(h))]))
        }),
        MapSolution::R3 => PairMap::from_fn(n, |g, h| {
            (m(&[p(g), h, p(i(g))]), m(&[p(g), i(h), p(i(g)), g, h]))
        }),
        MapSolution::R4 => PairMap::from_fn(n, |g, h| {
            (m(&[g, h, p(i(h)), i(g), p(h)]), m(&[p(i(h)), g, p(h)]))
        }),
    }
}

#[derive(Clone, Debug)]
pub struct FourSolutions {
    pub r1: YbeSolution,
    pub r2: YbeSolution,
    pub r3: YbeSolution,
    pub r4: YbeSolution,
}

impl FourSolutions {
    pub fn get(&self, which: MapSolution) -> &YbeSolution {
        match which {
            MapSolution::R1 => &self.r1,
            MapSolution::R2 => &self.r2,
            MapSolution::R3 => &self.r3,
            MapSolution::R4 => &self.r4,
        }
    }
}

/// One closed-form solution, verified and cross-checked against the
/// corresponding brace solution of `𝔅_ψ`.
pub fn map_solution(psi: &AbelianMap, which: MapSolution) -> Result<YbeSolution> {
    let brace = brace_from_abelian_map(psi)?;
    map_solution_with(psi, &brace, which)
}

fn map_solution_with(psi: &AbelianMap, brace: &SkewBrace, which: MapSolution) -> Result<YbeSolution> {
    let table = closed_form(psi, which)?;
    if table != brace_pair_map(brace, which.brace_variant())? {
        return Err(Error::Mismatch(format!(
            "{which:?} differs from the {:?} solution of the brace",
            which.brace_variant()
        )));
    }
    YbeSolution::new(table)
}

/// `R_{1,ψ}, …, R_{4,ψ}`, each verified, cross-checked against the brace
/// variants, and with `R₁R₂ = R₂R₁ = R₃R₄ = R₄R₃ = id` checked.
pub fn four_solutions(psi: &AbelianMap) -> Result<FourSolutions> {
    let brace = brace_from_abelian_map(psi)?;
    let [r1, r2, r3, r4] = MapSolution::ALL.map(|w| map_solution_with(psi, &brace, w));
    let (r1, r2, r3, r4) = (r1?, r2?, r3?, r4?);
    for (a, b, what) in [(&r1, &r2, "R1 R2"), (&r3, &r4, "R3 R4")] {
        if !a.map.compose(&b.map)?.is_identity() || !b.map.compose(&a.map)?.is_identity() {
            return Err(Error::Verification(format!("{what} is not the identity")));
        }
    }
    Ok(FourSolutions { r1, r2, r3, r4 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, FiniteGroup};
    use crate::maps::enumerate_abelian_maps;

    fn g(spec: &str) -> FiniteGroup {
        build_group(spec).unwrap()
    }

    #[test]
    fn identity_map() {
        let id = PairMap::identity(5);
        assert!(verify_braid(&id) && is_involutive(&id));
        // y ↦ R(x, y)₁ is constant.
        assert!(!is_nondegenerate(&id));
        assert!(YbeSolution::new(id).is_err());
        assert!(YbeSolution::new(PairMap::from_fn(5, |x, y| (y, x)).unwrap()).is_ok());
    }

    #[test]
    fn degenerate_and_non_braid_maps_rejected() {
        let constant = PairMap::from_fn(3, |_, _| (0, 0)).unwrap();
        assert!(!constant.is_nondegenerate());
        assert!(YbeSolution::new(constant).is_err());
        // (f(y), g(x)) with f, g non-commuting bijections.
        let shifted = PairMap::from_fn(3, |x, y| ((y + 1) % 3, (3 - x) % 3)).unwrap();
        assert!(shifted.is_nondegenerate());
        assert!(!shifted.satisfies_braid());
        assert!(PairMap::from_fn(3, |x, _| (x, 3)).is_err());
    }

    #[test]
    fn trivial_brace_solutions() {
        let s3 = g("S:3");
        let t = SkewBrace::trivial(&s3);
        let r = solution_from_brace(&t, BraceVariant::R).unwrap();
        let rp = solution_from_brace(&t, BraceVariant::RPrime).unwrap();
        for x in s3.elements() {
            for y in s3.elements() {
                assert_eq!(r.apply(x, y), (y, s3.product(&[s3.inv(y), x, y])));
                assert_eq!(rp.apply(x, y), (s3.product(&[x, y, s3.inv(x)]), x));
            }
        }
        assert!(compose(r.map(), rp.map()).unwrap().is_identity());
        assert!(compose(rp.map(), r.map()).unwrap().is_identity());
        assert!(!r.is_involutive());
    }

    #[test]
    fn involutive_iff_dot_abelian() {
        for spec in ["C:6", "C:2 x C:2", "S:3", "D:4"] {
            let grp = g(spec);
            let r = solution_from_brace(&SkewBrace::trivial(&grp), BraceVariant::R).unwrap();
            assert_eq!(r.is_involutive(), grp.is_abelian());
        }
    }

    #[test]
    fn s_variants_need_biskew() {
        let t = SkewBrace::trivial(&g("S:3"));
        assert!(solution_from_brace(&t, BraceVariant::S).is_ok());
        let fake = crate::testutil::relabelled_pairs()
            .into_iter()
            .find(|b| !b.is_biskew())
            .unwrap();
        for v in [BraceVariant::S, BraceVariant::SPrime] {
            assert!(matches!(solution_from_brace(&fake, v), Err(Error::Precondition(_))));
        }
    }

    #[test]
    fn closed_forms_match_braces_small() {
        for spec in ["S:3", "D:4", "C:4", "C:2 x C:2", "M:7:3"] {
            let grp = g(spec);
            for psi in enumerate_abelian_maps(&grp).unwrap() {
                let four = four_solutions(&psi).unwrap();
                // (1): R1 = R2 iff G abelian, and then both are the flip.
                assert_eq!(four.r1 == four.r2, grp.is_abelian());
                if grp.is_abelian() {
                    for x in grp.elements() {
                        for y in grp.elements() {
                            assert_eq!(four.r1.apply(x, y), (y, x));
                        }
                    }
                }
                // (2): R3 = R4 iff the circle law is commutative.
                let circle_abelian = grp.elements().all(|x| {
                    grp.elements().all(|y| {
                        grp.product(&[x, psi.apply(grp.inv(x)), y, psi.apply(x)])
                            == grp.product(&[y, psi.apply(grp.inv(y)), x, psi.apply(y)])
                    })
                });
                assert_eq!(four.r3 == four.r4, circle_abelian);
            }
        }
    }

    #[test]
    fn trivial_map_r1_is_conjugation_flip() {
        let s3 = g("S:3");
        let four = four_solutions(&AbelianMap::trivial(&s3)).unwrap();
        for x in s3.elements() {
            for y in s3.elements() {
                assert_eq!(four.r1.apply(x, y), (y, s3.product(&[s3.inv(y), x, y])));
            }
        }
    }

    /// Second component `yx((xy)∘x̄)⁻¹` in place of `((xy)∘x̄)⁻¹xy`.
    fn s_prime_yx_form(b: &SkewBrace) -> PairMap {
        PairMap::from_fn(b.size(), |x, y| {
            let a = b.circ(b.mul(x, y), b.bar(x));
            (a, b.mul(b.mul(y, x), b.inv(a)))
        })
        .unwrap()
    }

    #[test]
    fn s_prime_yx_form_is_not_the_inverse_of_s() {
        let t = SkewBrace::trivial(&g("S:3"));
        let s = brace_pair_map(&t, BraceVariant::S).unwrap();
        let yx = s_prime_yx_form(&t);
        assert!(!yx.is_nondegenerate());
        assert!(!yx.compose(&s).unwrap().is_identity());
        let fixed = brace_pair_map(&t, BraceVariant::SPrime).unwrap();
        assert!(fixed.compose(&s).unwrap().is_identity());

        // The two forms agree whenever squares are central, as in D_4.
        let d4 = g("D:4");
        for psi in enumerate_abelian_maps(&d4).unwrap() {
            let b = brace_from_abelian_map(&psi).unwrap();
            assert_eq!(s_prime_yx_form(&b), brace_pair_map(&b, BraceVariant::SPrime).unwrap());
        }
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("r3".parse::<MapSolution>().unwrap(), MapSolution::R3);
        assert!("R5".parse::<MapSolution>().is_err());
    }

    #[test]
    fn record_roundtrip() {
        let d3 = g("D:3");
        let maps = enumerate_abelian_maps(&d3).unwrap();
        let sol = map_solution(&maps[1], MapSolution::R1).unwrap();
        let rec = sol.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.contains("\"R\""));
        let back: SolutionRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.load().unwrap(), sol);
    }
}
