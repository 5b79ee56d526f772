//! Scalar invariants of a semigroup and its classification flags.

use serde::{Deserialize, Serialize};

use crate::semigroup::Semigroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Flags {
    pub ordinary: bool,
    pub acute: bool,
    pub symmetric: bool,
}

/// Every invariant the order-bound estimates are phrased in.
///
/// Naming follows the usual layout of a non-ordinary semigroup
/// `{0, .., e, .., d', *..*, c' <-> d, *..*, c ->}`:
/// `c_sub` is the subconductor `c'` and `d_prime` the largest member below it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub e: u64,
    pub c: u64,
    pub d: u64,
    pub c_sub: u64,
    /// Absent exactly for ordinary semigroups.
    pub d_prime: Option<u64>,
    /// `d - c'`.
    pub k: u64,
    /// `d - d'`.
    pub q: Option<u64>,
    /// Number of gaps between `d` and `c`.
    pub ell: u64,
    pub genus: u64,
    /// Cohen-Macaulay type.
    pub tau: u64,
    pub s_tilde: u64,
    /// `d - s_tilde`.
    pub t: u64,
    /// Gaps in `[c - e, c']`.
    pub holes: Vec<u64>,
    pub embdim: usize,
    pub flags: Flags,
}

impl InvariantRecord {
    pub fn compute(s: &Semigroup) -> Self {
        let e = s.multiplicity();
        let c = s.conductor();
        let ordinary = s.is_ordinary();
        let d = dominant(s);
        let c_sub = subconductor(s, d);
        let d_prime = if c_sub > 0 {
            (0..c_sub).rev().find(|&x| s.contains(x))
        } else {
            None
        };
        let ell = c - 1 - d;
        let (s_tilde, t) = s_tilde(s);
        let tau = cm_type(s);
        let acute = ordinary || {
            let dp = d_prime.expect("non-ordinary semigroups have d'");
            c - d <= c_sub - dp
        };
        InvariantRecord {
            e,
            c,
            d,
            c_sub,
            d_prime,
            k: d - c_sub,
            q: d_prime.map(|dp| d - dp),
            ell,
            genus: s.genus(),
            tau,
            s_tilde,
            t,
            holes: holes(s),
            embdim: s.embedding_dimension(),
            flags: Flags {
                ordinary,
                acute,
                symmetric: is_symmetric(s),
            },
        }
    }

    /// `d'` for non-ordinary records.
    ///
    /// # Panics
    /// On ordinary records, where `d'` is undefined.
    pub fn dp(&self) -> u64 {
        self.d_prime
            .expect("d' is undefined for ordinary semigroups")
    }

    /// The lower bound `c + d - e` of the order-bound conjecture, as a signed value.
    pub fn conjecture_value(&self) -> i64 {
        self.c as i64 + self.d as i64 - self.e as i64
    }
}

/// Largest member below the conductor (0 for ordinary semigroups).
pub fn dominant(s: &Semigroup) -> u64 {
    (0..s.conductor())
        .rev()
        .find(|&x| s.contains(x))
        .unwrap_or(0)
}

/// Largest member `x <= d` with `x - 1` a gap.
fn subconductor(s: &Semigroup, d: u64) -> u64 {
    (1..=d)
        .rev()
        .find(|&x| s.contains(x) && !s.contains(x - 1))
        .unwrap_or(0)
}

/// Gaps in the window `[c - e, c']`.
pub fn holes(s: &Semigroup) -> Vec<u64> {
    let c = s.conductor();
    let e = s.multiplicity();
    let d = dominant(s);
    let c_sub = subconductor(s, d);
    (c - e..=c_sub).filter(|&x| !s.contains(x)).collect()
}

/// `(s_tilde, t)`: the largest member `s <= d` with `s - ell` a gap, and `d - s_tilde`.
pub fn s_tilde(s: &Semigroup) -> (u64, u64) {
    let d = dominant(s);
    let ell = (s.conductor() - 1 - d) as i64;
    let st = (0..=d)
        .rev()
        .find(|&x| s.contains(x) && !s.has(x as i64 - ell))
        .expect("0 always qualifies");
    (st, d - st)
}

/// Pseudo-Frobenius numbers: gaps `b` with `b + (S \ {0})` inside `S`.
pub fn pseudo_frobenius(s: &Semigroup) -> Vec<u64> {
    let c = s.conductor();
    let e = s.multiplicity();
    s.gaps()
        .iter()
        .copied()
        .filter(|&b| (e..=c).all(|x| !s.contains(x) || s.contains(b + x)))
        .collect()
}

pub fn cm_type(s: &Semigroup) -> u64 {
    pseudo_frobenius(s).len() as u64
}

/// `x in S <=> c - 1 - x not in S` for every `x` in `[0, c - 1]`.
pub fn is_symmetric(s: &Semigroup) -> bool {
    let f = s.frobenius();
    (0..=f).all(|x| s.contains(x) != s.contains(f - x))
}

pub fn classify(s: &Semigroup) -> Flags {
    InvariantRecord::compute(s).flags
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_members(below: &[u64], c: u64) -> Semigroup {
        let gaps: Vec<u64> = (1..c).filter(|x| !below.contains(x)).collect();
        Semigroup::from_gaps(&gaps).unwrap()
    }

    #[test]
    fn acute_example_s1() {
        let s = from_members(&[0, 10, 17, 18, 19, 20], 27);
        let r = InvariantRecord::compute(&s);
        assert_eq!(
            (r.e, r.d_prime, r.c_sub, r.d, r.c),
            (10, Some(10), 17, 20, 27)
        );
        assert_eq!((r.ell, r.t), (6, 0));
        assert!(r.flags.acute);
        assert!(r.holes.is_empty());
    }

    #[test]
    fn non_acute_s2() {
        let s = from_members(&[0, 8, 12, 14, 15, 16], 20);
        let r = InvariantRecord::compute(&s);
        assert_eq!(
            (r.e, r.d_prime, r.c_sub, r.d, r.c, r.ell, r.t),
            (8, Some(12), 14, 16, 20, 3, 0)
        );
        assert!(!r.flags.acute);
    }

    #[test]
    fn tau_equals_ell_plus_one_example() {
        let s = from_members(&[0, 8, 9, 11, 12], 16);
        let r = InvariantRecord::compute(&s);
        assert_eq!(
            (r.e, r.d_prime, r.c_sub, r.d, r.c),
            (8, Some(9), 11, 12, 16)
        );
        assert_eq!((r.ell, r.t, r.s_tilde, r.tau), (3, 3, 9, 4));
        assert_eq!(r.holes, vec![10]);
        assert_eq!(r.e, 2 * r.ell + r.t - 1);
    }

    #[test]
    fn tau_five_example() {
        let s = from_members(&[0, 10, 16, 17, 18, 19, 20, 21, 22, 23, 24], 26);
        let r = InvariantRecord::compute(&s);
        assert_eq!(r.tau, 5);
        assert_ne!(r.tau, r.ell);
        assert_eq!(r.c_sub, r.c - r.e);
    }

    #[test]
    fn ordinary() {
        let s = Semigroup::from_gaps(&[1, 2, 3, 4]).unwrap();
        let r = InvariantRecord::compute(&s);
        assert_eq!((r.e, r.c, r.d, r.ell, r.c_sub), (5, 5, 0, 4, 0));
        assert_eq!(r.d_prime, None);
        assert!(r.flags.ordinary && r.flags.acute);
        assert!(r.holes.is_empty());
    }

    #[test]
    fn s_tilde_examples() {
        let s = from_members(&[0, 10, 20, 30], 40);
        assert_eq!(s_tilde(&s), (30, 0));
        let s7 = from_members(&[0, 26, 28, 31, 33], 39);
        assert_eq!(s_tilde(&s7), (28, 5));
        let r = InvariantRecord::compute(&s7);
        assert_eq!((r.ell, r.t), (5, 5));
        assert!(r.e > 2 * r.ell + r.t);
    }

    #[test]
    fn s_tilde_is_maximal_with_property() {
        let s = from_members(&[0, 26, 28, 31, 33], 39);
        let r = InvariantRecord::compute(&s);
        for x in r.s_tilde + 1..=r.d {
            if s.contains(x) {
                assert!(s.has(x as i64 - r.ell as i64));
            }
        }
    }

    #[test]
    fn holes_examples() {
        assert_eq!(holes(&from_members(&[0, 8, 9, 11, 12], 16)), vec![10]);
        assert!(holes(&Semigroup::from_generators(&[2, 3]).unwrap()).is_empty());
    }

    #[test]
    fn symmetry() {
        let s = Semigroup::from_generators(&[8, 10, 12, 13]).unwrap();
        let r = InvariantRecord::compute(&s);
        assert!(r.flags.symmetric);
        assert_eq!(r.tau, 1);
        let s = Semigroup::from_generators(&[3, 5, 7]).unwrap();
        assert!(!is_symmetric(&s));
        assert_eq!(cm_type(&s), 2);
    }
}
