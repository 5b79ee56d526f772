//! Test populations: every semigroup up to a genus, semigroups generated by an
//! almost arithmetic sequence, and the Suzuki-curve Weierstrass semigroups.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::semigroup::{gcd, Semigroup, SemigroupError};

pub const DEFAULT_GENUS_CAP: u64 = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("genus {requested} exceeds the cap {cap}")]
    CapExceeded { requested: u64, cap: u64 },
    #[error("gcd(rho, m0, n) = {0} > 1")]
    NonCoprime(u64),
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// One node of the genus tree. Genus 0 is N itself, which is not a
/// [`Semigroup`] (those exclude N) and is reported as trivial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GapSet {
    pub gaps: Vec<u64>,
}

impl GapSet {
    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn semigroup(&self) -> Option<Semigroup> {
        if self.is_trivial() {
            None
        } else {
            Some(Semigroup::from_sorted_gaps_unchecked(self.gaps.clone()))
        }
    }
}

/// Search-tree node: membership below `limit`, everything above is a member.
#[derive(Clone)]
struct Node {
    member: Vec<bool>,
    gaps: Vec<u64>,
    frobenius: i64,
}

impl Node {
    fn contains(&self, x: usize) -> bool {
        x >= self.member.len() || self.member[x]
    }

    fn is_minimal_generator(&self, x: usize) -> bool {
        x > 0 && self.contains(x) && !(1..=x / 2).any(|a| self.contains(a) && self.contains(x - a))
    }

    /// Children: remove a minimal generator larger than the Frobenius number.
    fn children(&self, g_max: u64) -> Vec<Node> {
        let genus = self.gaps.len() as u64;
        if genus >= g_max {
            return Vec::new();
        }
        // A semigroup of genus g has Frobenius number at most 2g - 1.
        let hi = 2 * (genus + 1) as i64 - 1;
        ((self.frobenius + 1)..=hi)
            .map(|x| x as usize)
            .filter(|&x| self.is_minimal_generator(x))
            .map(|x| {
                let mut child = self.clone();
                child.member[x] = false;
                child.gaps.push(x as u64);
                child.frobenius = x as i64;
                child
            })
            .collect()
    }
}

fn walk(node: Node, g_max: u64, out: &mut Vec<GapSet>) {
    out.push(GapSet {
        gaps: node.gaps.clone(),
    });
    for child in node.children(g_max) {
        walk(child, g_max, out);
    }
}

fn walk_parallel(node: Node, g_max: u64, depth: u32) -> Vec<GapSet> {
    if depth == 0 {
        let mut out = Vec::new();
        walk(node, g_max, &mut out);
        return out;
    }
    let own = GapSet {
        gaps: node.gaps.clone(),
    };
    let mut out: Vec<GapSet> = node
        .children(g_max)
        .into_par_iter()
        .flat_map_iter(|child| walk_parallel(child, g_max, depth - 1))
        .collect();
    out.push(own);
    out
}

/// Every semigroup of genus `<= g_max` (N included at genus 0), sorted by
/// genus and then lexicographically by gap set.
pub fn enumerate_by_genus(g_max: u64) -> Result<Vec<GapSet>, FamilyError> {
    enumerate_by_genus_capped(g_max, DEFAULT_GENUS_CAP)
}

pub fn enumerate_by_genus_capped(g_max: u64, cap: u64) -> Result<Vec<GapSet>, FamilyError> {
    if g_max > cap {
        return Err(FamilyError::CapExceeded {
            requested: g_max,
            cap,
        });
    }
    let root = Node {
        member: vec![true; 2 * g_max as usize + 2],
        gaps: Vec::new(),
        frobenius: -1,
    };
    let mut all = walk_parallel(root, g_max, 6);
    all.sort_unstable_by(|a, b| a.genus().cmp(&b.genus()).then_with(|| a.gaps.cmp(&b.gaps)));
    Ok(all)
}

/// Non-trivial semigroups of genus `1..=g_max`, canonically ordered.
pub fn semigroups_up_to_genus(g_max: u64) -> Result<Vec<Semigroup>, FamilyError> {
    Ok(enumerate_by_genus(g_max)?
        .iter()
        .filter_map(GapSet::semigroup)
        .collect())
}

/// Number of semigroups of each genus `0..=g_max`.
pub fn counts_by_genus(g_max: u64) -> Result<Vec<u64>, FamilyError> {
    let mut counts = vec![0u64; g_max as usize + 1];
    for gs in enumerate_by_genus(g_max)? {
        counts[gs.genus() as usize] += 1;
    }
    Ok(counts)
}

/// `<m0, m0 + rho, ..., m0 + (p+1) rho, n>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AasSpec {
    pub m0: u64,
    pub rho: u64,
    pub p: u64,
    pub n: u64,
}

impl AasSpec {
    pub fn generators(&self) -> Vec<u64> {
        let mut g: Vec<u64> = (0..=self.p + 1).map(|i| self.m0 + self.rho * i).collect();
        g.push(self.n);
        g
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AasSemigroup {
    pub spec: AasSpec,
    pub semigroup: Semigroup,
    /// Embedding dimension recomputed from the minimal generators.
    pub mu: usize,
}

pub fn aas_semigroup(spec: AasSpec) -> Result<AasSemigroup, FamilyError> {
    if spec.m0 < 2 || spec.rho == 0 {
        return Err(FamilyError::InvalidParameter(format!(
            "need m0 >= 2 and rho >= 1, got m0 = {}, rho = {}",
            spec.m0, spec.rho
        )));
    }
    let g = gcd(gcd(spec.rho, spec.m0), spec.n);
    if g != 1 {
        return Err(FamilyError::NonCoprime(g));
    }
    let semigroup = Semigroup::from_generators(&spec.generators())?;
    let mu = semigroup.embedding_dimension();
    Ok(AasSemigroup {
        spec,
        semigroup,
        mu,
    })
}

/// `count` AAS semigroups drawn from a seeded stream, keeping only those whose
/// embedding dimension lies in `mu_min..=mu_max`.
pub fn sample_aas(seed: u64, count: usize, mu_min: usize, mu_max: usize) -> Vec<AasSemigroup> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m0 = rng.gen_range(3..=40);
        let rho = rng.gen_range(1..=9);
        let p = rng.gen_range(mu_min.saturating_sub(2)..=mu_max.saturating_sub(2)) as u64;
        let n = rng.gen_range(m0 + 1..=4 * m0 + 20);
        let spec = AasSpec { m0, rho, p, n };
        if let Ok(a) = aas_semigroup(spec) {
            if (mu_min..=mu_max).contains(&a.mu) {
                out.push(a);
            }
        }
    }
    out
}

/// Whether the minimal generators form an arithmetic sequence plus at most one
/// extra element, i.e. whether `S` is generated by an almost arithmetic sequence.
pub fn is_aas(s: &Semigroup) -> bool {
    let gens = s.minimal_generators();
    if gens.len() <= 3 {
        return true;
    }
    let arithmetic = |v: &[u64]| v.windows(2).all(|w| w[1] - w[0] == v[1] - v[0]);
    (0..gens.len()).any(|skip| {
        let rest: Vec<u64> = gens
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &g)| g)
            .collect();
        arithmetic(&rest)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AperySet {
    /// The multiplicity the set is taken with respect to.
    pub base: u64,
    /// Sorted ascending.
    pub elements: Vec<u64>,
    pub max: u64,
}

/// Suzuki generators `<2a^2, 2a^2 + a, 2a^2 + 2a, 2a^2 + 2a + 1>`.
fn suzuki_generators(a: u64) -> [u64; 4] {
    let m0 = 2 * a * a;
    [m0, m0 + a, m0 + 2 * a, m0 + 2 * a + 1]
}

/// Apéry set of the Suzuki-shaped semigroup for `a = 2^n`, built from the
/// matrix `{g_t + h n : 0 <= t <= 2a - 1, 0 <= h <= a - 1}` where
/// `t = 2 q_t + r_t` with `r_t in {1, 2}` and `g_t = q_t m_2 + m_{r_t}`.
pub fn apery_set_suzuki_form(a: u64) -> Result<AperySet, FamilyError> {
    if a == 0 || !a.is_power_of_two() {
        return Err(FamilyError::NotPowerOfTwo(a));
    }
    if a == 1 {
        return Ok(AperySet {
            base: 2,
            elements: vec![0, 3],
            max: 3,
        });
    }
    let [m0, m1, m2, n] = suzuki_generators(a);
    let g = |t: u64| -> u64 {
        if t == 0 {
            return 0;
        }
        let q = (t - 1) / 2;
        let r = t - 2 * q;
        q * m2 + if r == 1 { m1 } else { m2 }
    };
    let mut elements: Vec<u64> = (0..2 * a)
        .flat_map(|t| (0..a).map(move |h| g(t) + h * n))
        .collect();
    elements.sort_unstable();
    let max = *elements.last().unwrap();
    Ok(AperySet {
        base: m0,
        elements,
        max,
    })
}

/// Weierstrass semigroup of the Suzuki curve with `a = 2^n`.
pub fn suzuki(n: u32) -> Result<Semigroup, FamilyError> {
    if n == 0 || n > 5 {
        return Err(FamilyError::InvalidParameter(format!(
            "n = {n} outside 1..=5"
        )));
    }
    Ok(Semigroup::from_generators(&suzuki_generators(1 << n))?)
}

/// Symmetry through the Apéry set: every nonzero `w != max` pairs with some
/// `w'` in the set with `w + w' = max`.
pub fn symmetric_via_apery(s: &Semigroup) -> bool {
    let ap = s.apery_set();
    let max = *ap.last().unwrap();
    ap.iter()
        .filter(|&&w| w != 0 && w != max)
        .all(|&w| ap.binary_search(&(max - w)).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::cm_type;

    /// Independent count: all g-subsets of [1, 2g-1] whose complement is closed.
    fn brute_force_counts(g_max: u64) -> Vec<u64> {
        let mut counts = vec![1u64];
        for g in 1..=g_max {
            let span = 2 * g - 1;
            let mut n = 0;
            for mask in 0u64..(1 << span) {
                if mask.count_ones() as u64 != g {
                    continue;
                }
                let gap = |x: u64| x >= 1 && x <= span && mask >> (x - 1) & 1 == 1;
                let closed =
                    (1..=2 * span).all(|x| gap(x) || (1..=span).all(|y| gap(y) || !gap(x + y)));
                if closed {
                    n += 1;
                }
            }
            counts.push(n);
        }
        counts
    }

    #[test]
    fn small_counts() {
        assert_eq!(counts_by_genus(0).unwrap(), vec![1]);
        assert_eq!(counts_by_genus(3).unwrap(), vec![1, 1, 2, 4]);
        assert_eq!(counts_by_genus(8).unwrap().iter().sum::<u64>(), 156);
    }

    #[test]
    fn counts_match_brute_force() {
        assert_eq!(counts_by_genus(7).unwrap(), brute_force_counts(7));
    }

    #[test]
    fn enumeration_is_canonical_and_unique() {
        let all = enumerate_by_genus(7).unwrap();
        assert!(all
            .windows(2)
            .all(|w| (w[0].genus(), &w[0].gaps) < (w[1].genus(), &w[1].gaps)));
        assert!(all[0].is_trivial());
        for gs in &all[1..] {
            assert!(Semigroup::from_gaps(&gs.gaps).is_ok());
        }
    }

    #[test]
    fn cap() {
        assert_eq!(
            enumerate_by_genus(21),
            Err(FamilyError::CapExceeded {
                requested: 21,
                cap: 20
            })
        );
    }

    #[test]
    fn aas_examples() {
        let x = aas_semigroup(AasSpec {
            m0: 8,
            rho: 2,
            p: 1,
            n: 13,
        })
        .unwrap();
        assert_eq!(x.semigroup, suzuki(1).unwrap());
        assert_eq!(x.mu, 4);
        let x = aas_semigroup(AasSpec {
            m0: 3,
            rho: 1,
            p: 0,
            n: 7,
        })
        .unwrap();
        assert_eq!(x.mu, 2);
        assert_eq!(
            aas_semigroup(AasSpec {
                m0: 4,
                rho: 2,
                p: 0,
                n: 8
            }),
            Err(FamilyError::NonCoprime(2))
        );
    }

    #[test]
    fn apery_suzuki() {
        let ap = apery_set_suzuki_form(2).unwrap();
        assert_eq!(ap.elements, vec![0, 10, 12, 13, 22, 23, 25, 35]);
        assert_eq!(ap.max, 35);
        let mut residues: Vec<u64> = ap.elements.iter().map(|w| w % 8).collect();
        residues.sort_unstable();
        assert_eq!(residues, (0..8).collect::<Vec<_>>());
        assert_eq!(apery_set_suzuki_form(1).unwrap().elements, vec![0, 3]);
        assert_eq!(apery_set_suzuki_form(3), Err(FamilyError::NotPowerOfTwo(3)));
    }

    #[test]
    fn apery_suzuki_matches_definition() {
        for (n, a) in [(1u32, 2u64), (2, 4)] {
            let s = suzuki(n).unwrap();
            assert_eq!(apery_set_suzuki_form(a).unwrap().elements, s.apery_set());
        }
        let s = Semigroup::from_generators(&[2, 3]).unwrap();
        assert_eq!(apery_set_suzuki_form(1).unwrap().elements, s.apery_set());
    }

    #[test]
    fn suzuki_examples() {
        let s = suzuki(1).unwrap();
        assert_eq!(s.conductor(), 28);
        assert!(symmetric_via_apery(&s));
        let s = suzuki(2).unwrap();
        assert_eq!(s.minimal_generators(), vec![32, 36, 40, 41]);
        assert!(symmetric_via_apery(&s));
        assert_eq!(cm_type(&s), 1);
    }

    #[test]
    fn apery_symmetry_examples() {
        assert!(!symmetric_via_apery(
            &Semigroup::from_generators(&[3, 5, 7]).unwrap()
        ));
        assert!(symmetric_via_apery(
            &Semigroup::from_generators(&[2, 3]).unwrap()
        ));
    }

    #[test]
    fn aas_detection() {
        assert!(is_aas(&suzuki(2).unwrap()));
        assert!(is_aas(&Semigroup::from_generators(&[5, 7, 9]).unwrap()));
        assert!(!is_aas(
            &Semigroup::from_generators(&[7, 9, 10, 12]).unwrap()
        ));
    }
}
