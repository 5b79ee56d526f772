//! The sequence `nu(s_i)`, the Feng-Rao order bound and the brute-force
//! stabilization point `s_m`, plus the A/B/C/D decomposition of consecutive
//! differences `eta(s_i) = nu(s_{i+1}) - nu(s_i)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::invariants::{dominant, InvariantRecord};
use crate::semigroup::Semigroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NuError {
    #[error("{0} is not a member of the semigroup")]
    NotAMember(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("table mismatch in {rule} at s_i = {s}: {detail}")]
    TableMismatch {
        rule: String,
        s: u64,
        detail: String,
    },
}

/// Number of ordered pairs of members summing to `x`, counted directly.
pub fn nu_direct(s: &Semigroup, x: u64) -> u64 {
    (0..=x)
        .filter(|&a| s.contains(a) && s.contains(x - a))
        .count() as u64
}

/// `nu(x)` for a member `x`; uses `i + 1 - g` once `x >= 2c - 1`.
pub fn nu(s: &Semigroup, x: u64) -> Result<u64, NuError> {
    if !s.contains(x) {
        return Err(NuError::NotAMember(x));
    }
    if x + 1 >= 2 * s.conductor() {
        Ok(s.index_of(x) + 1 - s.genus())
    } else {
        Ok(nu_direct(s, x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuEntry {
    pub index: u64,
    pub element: u64,
    pub nu: u64,
}

/// `nu` for every member up to `max(2c - 1, 2d + 2)`, with the last descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuTable {
    pub entries: Vec<NuEntry>,
    /// Index of the last descent, 0 when the sequence never descends.
    pub m: u64,
    pub s_m: u64,
    pub genus: u64,
}

impl NuTable {
    pub fn compute(s: &Semigroup) -> Self {
        let c = s.conductor();
        let d = dominant(s);
        let horizon = (2 * c - 1).max(2 * d + 2);
        Self::compute_upto(s, horizon)
    }

    /// Table extended to at least `upto`; `m` is unaffected by the extension.
    pub fn compute_upto(s: &Semigroup, upto: u64) -> Self {
        let c = s.conductor();
        let d = dominant(s);
        let horizon = upto.max(2 * c - 1).max(2 * d + 2);
        let entries: Vec<NuEntry> = s
            .members_upto(horizon)
            .enumerate()
            .map(|(i, x)| NuEntry {
                index: i as u64,
                element: x,
                nu: nu_direct(s, x),
            })
            .collect();
        // Past 2d + 1 the sequence is non-decreasing, so the scan stops there.
        let m = entries
            .windows(2)
            .filter(|w| w[0].element <= 2 * d + 1 && w[0].nu > w[1].nu)
            .map(|w| w[0].index)
            .next_back()
            .unwrap_or(0);
        let s_m = entries[m as usize].element;
        NuTable {
            entries,
            m,
            s_m: if m == 0 { 0 } else { s_m },
            genus: s.genus(),
        }
    }

    pub fn nu_at(&self, element: u64) -> Option<u64> {
        self.entries
            .iter()
            .find(|e| e.element == element)
            .map(|e| e.nu)
    }
}

impl Serialize for NuTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            entries: Vec<[u64; 3]>,
            m: u64,
            s_m: u64,
            g: u64,
        }
        Wire {
            entries: self
                .entries
                .iter()
                .map(|e| [e.index, e.element, e.nu])
                .collect(),
            m: self.m,
            s_m: self.s_m,
            g: self.genus,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NuTable {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            entries: Vec<[u64; 3]>,
            m: u64,
            s_m: u64,
            g: u64,
        }
        let w = Wire::deserialize(deserializer)?;
        Ok(NuTable {
            entries: w
                .entries
                .into_iter()
                .map(|[index, element, nu]| NuEntry { index, element, nu })
                .collect(),
            m: w.m,
            s_m: w.s_m,
            genus: w.g,
        })
    }
}

/// Brute-force `s_m`.
pub fn oracle_sm(s: &Semigroup) -> u64 {
    NuTable::compute(s).s_m
}

/// `d_ORD(i) = min { nu(s_j) : j > i }`.
pub fn order_bound(s: &Semigroup, i: u64) -> u64 {
    let d = dominant(s);
    let stable_from = s.index_of(2 * d + 1);
    let last = stable_from.max(i + 1);
    (i + 1..=last)
        .map(|j| nu(s, s.element(j)).expect("element is a member"))
        .min()
        .unwrap()
}

/// Ordered pairs of `N(x)` split by the position of their coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PairCounts {
    /// One coordinate below `c'`, the other in `[c', d]`.
    pub a: u64,
    /// Both coordinates in `[c', d]`.
    pub b: u64,
    /// Both coordinates in `S' = S ∩ [0, d']`.
    pub c: u64,
    /// At least one coordinate `>= c`.
    pub d: u64,
}

impl PairCounts {
    pub fn total(&self) -> u64 {
        self.a + self.b + self.c + self.d
    }
}

/// Membership pattern `(s_{i+1} - c in S, s_i - d in S', s_{i+1} - c' in S')`
/// that selects a row of the difference tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowDescriptor {
    pub next_minus_c_in_s: bool,
    pub cur_minus_d_in_sprime: bool,
    pub next_minus_csub_in_sprime: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaDecomposition {
    pub s_i: u64,
    pub s_next: u64,
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub eta: i64,
    pub at_s: PairCounts,
    pub at_next: PairCounts,
    pub row: RowDescriptor,
}

struct Regions {
    c: u64,
    c_sub: u64,
    d_prime: u64,
}

impl Regions {
    fn of(r: &InvariantRecord) -> Self {
        Regions {
            c: r.c,
            c_sub: r.c_sub,
            d_prime: r.dp(),
        }
    }

    fn in_sprime(&self, s: &Semigroup, x: i64) -> bool {
        x >= 0 && x as u64 <= self.d_prime && s.contains(x as u64)
    }

    fn pair_counts(&self, s: &Semigroup, x: u64) -> PairCounts {
        let mut pc = PairCounts::default();
        for a in 0..=x {
            let b = x - a;
            if !(s.contains(a) && s.contains(b)) {
                continue;
            }
            let (ra, rb) = (self.region(a), self.region(b));
            match (ra, rb) {
                (Region::Tail, _) | (_, Region::Tail) => pc.d += 1,
                (Region::Low, Region::Low) => pc.c += 1,
                (Region::Mid, Region::Mid) => pc.b += 1,
                _ => pc.a += 1,
            }
        }
        pc
    }

    fn region(&self, x: u64) -> Region {
        if x >= self.c {
            Region::Tail
        } else if x >= self.c_sub {
            Region::Mid
        } else {
            Region::Low
        }
    }
}

#[derive(Clone, Copy)]
enum Region {
    Low,
    Mid,
    Tail,
}

fn mismatch(rule: &str, s: u64, detail: String) -> NuError {
    NuError::TableMismatch {
        rule: rule.to_string(),
        s,
        detail,
    }
}

/// Row pattern of the difference tables at the member `s_i`.
pub fn row_descriptor(s: &Semigroup, rec: &InvariantRecord, s_i: u64) -> RowDescriptor {
    let reg = Regions::of(rec);
    let next = s.next_member(s_i);
    RowDescriptor {
        next_minus_c_in_s: s.has(next as i64 - rec.c as i64),
        cur_minus_d_in_sprime: reg.in_sprime(s, s_i as i64 - rec.d as i64),
        next_minus_csub_in_sprime: reg.in_sprime(s, next as i64 - rec.c_sub as i64),
    }
}

/// Direct `alpha, beta, gamma, delta` at a member `s_i < 2c`, cross-checked
/// against the closed-form case formulas and the difference tables wherever
/// their hypotheses hold.
pub fn decompose_eta(
    s: &Semigroup,
    rec: &InvariantRecord,
    s_i: u64,
) -> Result<EtaDecomposition, NuError> {
    if rec.flags.ordinary {
        return Err(NuError::Precondition("semigroup is ordinary".into()));
    }
    if !s.contains(s_i) {
        return Err(NuError::NotAMember(s_i));
    }
    if s_i >= 2 * rec.c {
        return Err(NuError::Precondition(format!("{s_i} >= 2c")));
    }
    let reg = Regions::of(rec);
    let next = s.next_member(s_i);
    let at_s = reg.pair_counts(s, s_i);
    let at_next = reg.pair_counts(s, next);
    let diff = |f: fn(&PairCounts) -> u64| f(&at_next) as i64 - f(&at_s) as i64;
    let dec = EtaDecomposition {
        s_i,
        s_next: next,
        alpha: diff(|p| p.a),
        beta: diff(|p| p.b),
        gamma: diff(|p| p.c),
        delta: diff(|p| p.d),
        eta: at_next.total() as i64 - at_s.total() as i64,
        at_s,
        at_next,
        row: row_descriptor(s, rec, s_i),
    };
    check_decomposition(s, rec, &dec)?;
    Ok(dec)
}

fn check_decomposition(
    s: &Semigroup,
    rec: &InvariantRecord,
    x: &EtaDecomposition,
) -> Result<(), NuError> {
    let si = x.s_i as i64;
    let (c, d, cs, dp) = (
        rec.c as i64,
        rec.d as i64,
        rec.c_sub as i64,
        rec.dp() as i64,
    );
    let ell = rec.ell as i64;

    if x.at_s.total() != nu_direct(s, x.s_i) || x.at_next.total() != nu_direct(s, x.s_next) {
        return Err(mismatch("Partition", x.s_i, "A+B+C+D != nu".into()));
    }
    if x.eta != x.alpha + x.beta + x.gamma + x.delta {
        return Err(mismatch(
            "Prop3.1.2",
            x.s_i,
            "eta != alpha+beta+gamma+delta".into(),
        ));
    }

    let row = x.row;
    let row_alpha = match (row.next_minus_csub_in_sprime, row.cur_minus_d_in_sprime) {
        (false, true) => -2,
        (true, false) => 2,
        _ => 0,
    };
    // At s_i = 2c - 1 the pair (c, c) of N(2c) is counted once, so delta is 1 there.
    let row_delta = if si == 2 * c - 1 {
        1
    } else if row.next_minus_c_in_s {
        2
    } else {
        0
    };
    if x.alpha != row_alpha {
        return Err(mismatch(
            "Prop3.1.2.alpha",
            x.s_i,
            format!("alpha {} != {}", x.alpha, row_alpha),
        ));
    }
    let beta = if si <= 2 * cs - 2 || si > 2 * d {
        0
    } else if si < cs + d {
        1
    } else {
        -1
    };
    // The beta cases describe a shift by one; they fail across a gap (e.g. {0,2,4->} at 2).
    if x.s_next == x.s_i + 1 && x.beta != beta {
        return Err(mismatch(
            "Prop3.1.2.beta",
            x.s_i,
            format!("beta {} != {}", x.beta, beta),
        ));
    }
    if x.delta != row_delta {
        return Err(mismatch(
            "Prop3.1.2.delta",
            x.s_i,
            format!("delta {} != {}", x.delta, row_delta),
        ));
    }
    let gamma = if si > 2 * dp {
        Some(0)
    } else if si == 2 * dp || (si >= dp && (si - dp..=dp).all(|y| s.has(y))) {
        Some(-1)
    } else {
        None
    };
    if let Some(g) = gamma {
        if x.gamma != g {
            return Err(mismatch(
                "Prop3.1.2.gamma",
                x.s_i,
                format!("gamma {} != {}", x.gamma, g),
            ));
        }
    }

    // Difference tables.
    if x.eta != row_alpha + x.beta + x.gamma + row_delta {
        return Err(mismatch("Table3.3a", x.s_i, "row value".into()));
    }
    if si < 2 * dp && x.beta != 0 {
        return Err(mismatch("Table3.3b", x.s_i, format!("beta = {}", x.beta)));
    }
    if si == 2 * dp && (x.beta != 0 || x.gamma != -1) {
        return Err(mismatch(
            "Table3.3c",
            x.s_i,
            format!("beta = {}, gamma = {}", x.beta, x.gamma),
        ));
    }
    if (2 * dp + 1..=cs + d - 1).contains(&si) {
        if !(0..=1).contains(&x.beta) || x.gamma != 0 {
            return Err(mismatch(
                "Table3.3d",
                x.s_i,
                format!("beta = {}, gamma = {}", x.beta, x.gamma),
            ));
        }
        let descent_row =
            !row.next_minus_c_in_s && row.cur_minus_d_in_sprime && !row.next_minus_csub_in_sprime;
        if (x.eta < 0) != descent_row {
            return Err(mismatch(
                "Table3.3d",
                x.s_i,
                format!("eta = {} but descent row = {}", x.eta, descent_row),
            ));
        }
    }
    if (cs + d..=2 * d).contains(&si) {
        let in_s_not_sprime = s.has(si - d) && si - d > dp;
        if x.beta != -1 || x.gamma != 0 || !in_s_not_sprime || row.next_minus_csub_in_sprime {
            return Err(mismatch(
                "Table3.3e",
                x.s_i,
                format!("beta = {}, gamma = {}", x.beta, x.gamma),
            ));
        }
        if (x.eta < 0) != !s.has(si - ell - d) {
            return Err(mismatch("Table3.3e", x.s_i, format!("eta = {}", x.eta)));
        }
    }
    // Bounds on gamma below 2d'.
    if si < 2 * dp {
        let h = 2 * dp - si;
        if x.gamma < -(h / 2) - 1 || x.gamma > (h + 1) / 2 {
            return Err(mismatch(
                "Prop3.1.3b",
                x.s_i,
                format!("gamma = {}, h = {}", x.gamma, h),
            ));
        }
    }
    Ok(())
}

/// `-floor(k/2) - 1 <= nu(s+1) - nu(s) <= floor((k+5)/2)` for `s = 2d - k < 2d`
/// with `s, s+1` both members.
pub fn diff_bounds_check(s: &Semigroup, x: u64) -> Result<bool, NuError> {
    let d = dominant(s);
    if !s.contains(x) {
        return Err(NuError::NotAMember(x));
    }
    if !s.contains(x + 1) {
        return Err(NuError::Precondition(format!("{} is not a member", x + 1)));
    }
    if x >= 2 * d {
        return Err(NuError::Precondition(format!(
            "{x} is not below 2d = {}",
            2 * d
        )));
    }
    let k = (2 * d - x) as i64;
    let diff = nu_direct(s, x + 1) as i64 - nu_direct(s, x) as i64;
    Ok(-(k / 2) - 1 <= diff && diff <= (k + 5) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn multiples_of_ten() -> Semigroup {
        Semigroup::from_gaps(&(1..40).filter(|x| x % 10 != 0).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn nu_values_example() {
        let s = multiples_of_ten();
        assert_eq!(nu(&s, 59).unwrap(), 4);
        assert_eq!(nu(&s, 60).unwrap(), 7);
        assert_eq!(nu(&s, 61).unwrap(), 6);
        assert_eq!(nu(&s, 0).unwrap(), 1);
        assert_eq!(s.genus(), 36);
        assert_eq!(nu(&s, 79).unwrap(), 8);
        assert_eq!(nu_direct(&s, 79), 8);
        assert_eq!(nu(&s, 35), Err(NuError::NotAMember(35)));
    }

    #[test]
    fn table_and_sm() {
        let s = multiples_of_ten();
        let t = NuTable::compute(&s);
        assert_eq!((t.m, t.s_m), (24, 60));
        let ord = Semigroup::from_gaps(&[1, 2, 3, 4]).unwrap();
        let t = NuTable::compute(&ord);
        assert_eq!((t.m, t.s_m), (0, 0));
        let s = Semigroup::from_gaps(&[1, 2, 3, 4, 5, 6, 7, 10, 13, 14, 15]).unwrap();
        assert_eq!(oracle_sm(&s), 21);
    }

    #[test]
    fn order_bound_examples() {
        let s = multiples_of_ten();
        assert_eq!(order_bound(&s, 24), 6);
        assert_eq!(order_bound(&s, 23), 6);
        let ord = Semigroup::from_gaps(&[1, 2, 3, 4]).unwrap();
        for i in 0..20 {
            assert_eq!(order_bound(&ord, i), nu(&ord, ord.element(i + 1)).unwrap());
        }
    }

    #[test]
    fn order_bound_matches_long_scan() {
        let s = multiples_of_ten();
        for i in 0..40 {
            let brute = (i + 1..i + 200)
                .map(|j| nu_direct(&s, s.element(j)))
                .min()
                .unwrap();
            assert_eq!(order_bound(&s, i), brute, "i = {i}");
        }
    }

    #[test]
    fn decomposition_examples() {
        let s = multiples_of_ten();
        let r = InvariantRecord::compute(&s);
        let x = decompose_eta(&s, &r, 59).unwrap();
        assert_eq!((x.alpha, x.beta, x.gamma, x.delta, x.eta), (0, 1, 0, 2, 3));
        let x = decompose_eta(&s, &r, 60).unwrap();
        assert_eq!(
            (x.alpha, x.beta, x.gamma, x.delta, x.eta),
            (0, -1, 0, 0, -1)
        );
        let x = decompose_eta(&s, &r, 0).unwrap();
        assert_eq!((x.alpha, x.beta, x.gamma, x.delta, x.eta), (0, 0, 1, 0, 1));
    }

    #[test]
    fn diff_bounds() {
        let s = multiples_of_ten();
        assert_eq!(diff_bounds_check(&s, 59), Ok(true));
        let diff = nu_direct(&s, 60) as i64 - nu_direct(&s, 59) as i64;
        assert_eq!(diff, (1 + 5) / 2);
        assert!(matches!(
            diff_bounds_check(&s, 60),
            Err(NuError::Precondition(_))
        ));
        assert!(matches!(
            diff_bounds_check(&s, 30),
            Err(NuError::Precondition(_))
        ));
    }

    #[test]
    fn json_shape() {
        let s = Semigroup::from_generators(&[2, 5]).unwrap();
        let t = NuTable::compute(&s);
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["entries"][0], serde_json::json!([0, 0, 1]));
        assert_eq!(v["g"], 2);
        let back: NuTable = serde_json::from_value(v).unwrap();
        assert_eq!(back, t);
    }
}
