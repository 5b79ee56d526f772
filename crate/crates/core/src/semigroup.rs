//! Canonical finite representation of a numerical semigroup.
//!
//! A semigroup is stored as its (finite) gap set together with the
//! conductor `c`; every integer `n >= c` is a member. A membership table
//! covering `[0, 2c + 1]` is cached so that all pair counts needed by the
//! order-bound machinery are answered by a single lookup.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest generator accepted by [`Semigroup::from_generators`].
pub const MAX_GENERATOR: u64 = 1 << 20;

/// Largest conductor any constructor will materialise.
pub const MAX_CONDUCTOR: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("generator 0 is not allowed")]
    ZeroGenerator,
    #[error("generators have gcd {0} > 1, the complement is infinite")]
    NonCoprimeGenerators(u64),
    #[error("generator {0} exceeds the supported maximum {MAX_GENERATOR}")]
    GeneratorTooLarge(u64),
    #[error("conductor exceeds the supported maximum {MAX_CONDUCTOR}")]
    ConductorTooLarge,
    #[error("the gap set is empty, so S is all of N")]
    SemigroupIsN,
    #[error("0 cannot be a gap")]
    ZeroGap,
    #[error("complement of the gap set is not closed: {0} + {1} is a gap")]
    NotClosed(u64, u64),
    #[error("declared conductor {declared} does not match max gap + 1 = {actual}")]
    ConductorMismatch { declared: u64, actual: u64 },
}

/// A numerical semigroup `S != N`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semigroup {
    gaps: Vec<u64>,
    conductor: u64,
    /// `members[n]` for `n` in `[0, bound]`.
    members: Vec<bool>,
}

impl Semigroup {
    /// Smallest additively closed subset of N containing the generators.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(SemigroupError::ZeroGenerator);
        }
        if let Some(&g) = gens.iter().find(|&&g| g > MAX_GENERATOR) {
            return Err(SemigroupError::GeneratorTooLarge(g));
        }
        let g = gens.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(SemigroupError::NonCoprimeGenerators(g));
        }
        let mut sorted = gens.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let e = sorted[0] as usize;
        if e == 1 {
            return Err(SemigroupError::SemigroupIsN);
        }

        // Once `e` consecutive members are found every larger integer is a member.
        let mut member = vec![true];
        let mut run = 1usize;
        let mut n = 0usize;
        while run < e {
            n += 1;
            if n as u64 > MAX_CONDUCTOR + e as u64 {
                return Err(SemigroupError::ConductorTooLarge);
            }
            let is_member = sorted
                .iter()
                .take_while(|&&g| g as usize <= n)
                .any(|&g| member[n - g as usize]);
            member.push(is_member);
            run = if is_member { run + 1 } else { 0 };
        }
        let gaps: Vec<u64> = member
            .iter()
            .enumerate()
            .filter(|(_, &m)| !m)
            .map(|(i, _)| i as u64)
            .collect();
        Ok(Self::from_sorted_gaps_unchecked(gaps))
    }

    /// Semigroup whose complement in N is exactly `gaps`.
    pub fn from_gaps(gaps: &[u64]) -> Result<Self, SemigroupError> {
        let mut sorted = gaps.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() {
            return Err(SemigroupError::SemigroupIsN);
        }
        if sorted[0] == 0 {
            return Err(SemigroupError::ZeroGap);
        }
        if *sorted.last().unwrap() >= MAX_CONDUCTOR {
            return Err(SemigroupError::ConductorTooLarge);
        }
        let s = Self::from_sorted_gaps_unchecked(sorted);
        for &h in &s.gaps {
            for a in 1..=h / 2 {
                if s.contains(a) && s.contains(h - a) {
                    return Err(SemigroupError::NotClosed(a, h - a));
                }
            }
        }
        Ok(s)
    }

    /// Like [`Semigroup::from_gaps`] but also checks a declared conductor.
    pub fn from_gaps_with_conductor(gaps: &[u64], c: u64) -> Result<Self, SemigroupError> {
        let s = Self::from_gaps(gaps)?;
        if s.conductor != c {
            return Err(SemigroupError::ConductorMismatch {
                declared: c,
                actual: s.conductor,
            });
        }
        Ok(s)
    }

    /// Caller guarantees `gaps` is sorted, nonempty, free of 0 and has a closed complement.
    pub(crate) fn from_sorted_gaps_unchecked(gaps: Vec<u64>) -> Self {
        let conductor = gaps.last().map_or(0, |&g| g + 1);
        let bound = 2 * conductor as usize + 1;
        let mut members = vec![true; bound + 1];
        for &g in &gaps {
            members[g as usize] = false;
        }
        Semigroup {
            gaps,
            conductor,
            members,
        }
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn genus(&self) -> u64 {
        self.gaps.len() as u64
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn frobenius(&self) -> u64 {
        self.conductor - 1
    }

    pub fn multiplicity(&self) -> u64 {
        (1..=self.conductor)
            .find(|&n| self.contains(n))
            .unwrap_or(self.conductor)
    }

    /// Upper end of the cached membership table.
    pub fn table_bound(&self) -> u64 {
        self.members.len() as u64 - 1
    }

    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        if n >= self.conductor {
            true
        } else {
            self.members[n as usize]
        }
    }

    /// Membership for a signed integer; negatives are never members.
    #[inline]
    pub fn has(&self, n: i64) -> bool {
        n >= 0 && self.contains(n as u64)
    }

    pub fn is_ordinary(&self) -> bool {
        self.gaps.len() as u64 == self.conductor - 1
    }

    /// Members in `[0, upto]`, ascending.
    pub fn members_upto(&self, upto: u64) -> impl Iterator<Item = u64> + '_ {
        (0..=upto).filter(move |&n| self.contains(n))
    }

    /// Number of members strictly below `n`, i.e. the index of `n` when `n` is a member.
    pub fn index_of(&self, n: u64) -> u64 {
        let gaps_below = self.gaps.partition_point(|&g| g < n) as u64;
        n - gaps_below
    }

    /// The member `s_i`.
    pub fn element(&self, i: u64) -> u64 {
        let first_tail = self.conductor - self.genus();
        if i >= first_tail {
            i + self.genus()
        } else {
            self.members_upto(self.conductor)
                .nth(i as usize)
                .expect("index below the conductor has a member")
        }
    }

    /// Least member strictly greater than `n`.
    pub fn next_member(&self, n: u64) -> u64 {
        (n + 1..).find(|&x| self.contains(x)).unwrap()
    }

    /// Minimal generating set (members not a sum of two nonzero members).
    pub fn minimal_generators(&self) -> Vec<u64> {
        let e = self.multiplicity();
        (1..self.conductor + e)
            .filter(|&n| self.contains(n))
            .filter(|&n| !(1..=n / 2).any(|a| self.contains(a) && self.contains(n - a)))
            .collect()
    }

    pub fn embedding_dimension(&self) -> usize {
        self.minimal_generators().len()
    }

    /// Apéry set with respect to the multiplicity: `{w in S : w - e not in S}`.
    pub fn apery_set(&self) -> Vec<u64> {
        let e = self.multiplicity();
        (0..self.conductor + e)
            .filter(|&w| self.contains(w) && (w < e || !self.contains(w - e)))
            .collect()
    }

    /// Gap-set form used in reports and JSON exports.
    pub fn spec(&self) -> SemigroupSpec {
        SemigroupSpec::Gaps {
            gaps: self.gaps.clone(),
            c: Some(self.conductor),
        }
    }
}

impl fmt::Debug for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Semigroup {{ gaps: {:?}, c: {} }}",
            self.gaps, self.conductor
        )
    }
}

/// Displays as `{0,e,...,c->}`, listing members below the conductor.
impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let below: Vec<String> = self
            .members_upto(self.conductor.saturating_sub(1))
            .map(|n| n.to_string())
            .collect();
        write!(f, "{{{},{}->}}", below.join(","), self.conductor)
    }
}

impl Ord for Semigroup {
    /// Canonical order: genus, then lexicographic gap set.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.genus()
            .cmp(&other.genus())
            .then_with(|| self.gaps.cmp(&other.gaps))
    }
}

impl PartialOrd for Semigroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Wire form of a semigroup: `{"gaps":[...],"c":n}` or `{"gens":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemigroupSpec {
    Gaps {
        gaps: Vec<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        c: Option<u64>,
    },
    Gens {
        gens: Vec<u64>,
    },
}

impl SemigroupSpec {
    pub fn build(&self) -> Result<Semigroup, SemigroupError> {
        match self {
            SemigroupSpec::Gaps { gaps, c: Some(c) } => {
                Semigroup::from_gaps_with_conductor(gaps, *c)
            }
            SemigroupSpec::Gaps { gaps, c: None } => Semigroup::from_gaps(gaps),
            SemigroupSpec::Gens { gens } => Semigroup::from_generators(gens),
        }
    }
}

impl Serialize for Semigroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SemigroupSpec::Gaps {
            gaps: self.gaps.clone(),
            c: Some(self.conductor),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Semigroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let spec = SemigroupSpec::deserialize(deserializer)?;
        spec.build().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closure by brute force: all sums of generators up to `limit`.
    fn closure_oracle(gens: &[u64], limit: u64) -> Vec<bool> {
        let mut m = vec![false; limit as usize + 1];
        m[0] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..=limit {
                if !m[x as usize] {
                    continue;
                }
                for &g in gens {
                    let y = x + g;
                    if y <= limit && !m[y as usize] {
                        m[y as usize] = true;
                        changed = true;
                    }
                }
            }
        }
        m
    }

    #[test]
    fn two_three() {
        let s = Semigroup::from_generators(&[2, 3]).unwrap();
        assert_eq!(s.gaps(), &[1]);
        assert_eq!(s.conductor(), 2);
        assert!(s.is_ordinary());
    }

    #[test]
    fn suzuki_generators_closure() {
        let s = Semigroup::from_generators(&[8, 10, 12, 13]).unwrap();
        let oracle = closure_oracle(&[8, 10, 12, 13], 80);
        let gaps: Vec<u64> = (0..=80).filter(|&n| !oracle[n as usize]).collect();
        assert_eq!(s.gaps(), gaps.as_slice());
        assert_eq!(gaps, vec![1, 2, 3, 4, 5, 6, 7, 9, 11, 14, 15, 17, 19, 27]);
        assert_eq!(s.conductor(), 28);
        assert_eq!(s.genus(), 14);
        assert_eq!(s.minimal_generators(), vec![8, 10, 12, 13]);
    }

    #[test]
    fn generator_errors() {
        assert_eq!(
            Semigroup::from_generators(&[4, 6]),
            Err(SemigroupError::NonCoprimeGenerators(2))
        );
        assert_eq!(
            Semigroup::from_generators(&[]),
            Err(SemigroupError::EmptyGenerators)
        );
        assert_eq!(
            Semigroup::from_generators(&[1, 5]),
            Err(SemigroupError::SemigroupIsN)
        );
        assert_eq!(
            Semigroup::from_generators(&[3, (1 << 20) + 1]),
            Err(SemigroupError::GeneratorTooLarge((1 << 20) + 1))
        );
    }

    #[test]
    fn from_gaps_examples() {
        let s = Semigroup::from_gaps(&[1, 2, 5]).unwrap();
        assert_eq!(s, Semigroup::from_generators(&[3, 4]).unwrap());
        assert_eq!(s.to_string(), "{0,3,4,6->}");

        let s = Semigroup::from_gaps(&[1, 3]).unwrap();
        assert_eq!(s.members_upto(6).collect::<Vec<_>>(), vec![0, 2, 4, 5, 6]);

        assert_eq!(Semigroup::from_gaps(&[]), Err(SemigroupError::SemigroupIsN));
        assert_eq!(
            Semigroup::from_gaps(&[1, 2, 6]),
            Err(SemigroupError::NotClosed(3, 3))
        );
        assert_eq!(
            Semigroup::from_gaps(&[1, 3, 4]),
            Err(SemigroupError::NotClosed(2, 2))
        );
        assert_eq!(Semigroup::from_gaps(&[0, 1]), Err(SemigroupError::ZeroGap));
    }

    #[test]
    fn json_forms() {
        let s: Semigroup = serde_json::from_str(r#"{"gens":[3,5,7]}"#).unwrap();
        assert_eq!(s.gaps(), &[1, 2, 4]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"gaps":[1,2,4],"c":5}"#);
        let back: Semigroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Semigroup>(r#"{"gaps":[1,2,4],"c":6}"#).is_err());
    }

    #[test]
    fn indexing() {
        let s = Semigroup::from_gaps(
            &(1..10)
                .chain(11..20)
                .chain(21..30)
                .chain(31..40)
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(s.index_of(60), 24);
        assert_eq!(s.element(24), 60);
        assert_eq!(s.element(3), 30);
        assert_eq!(s.next_member(30), 40);
        assert_eq!(s.apery_set(), vec![0, 41, 42, 43, 44, 45, 46, 47, 48, 49]);
    }
}
