//! Inequalities and equivalences among the invariants, as named predicates.
//!
//! Each predicate returns `true` when the statement holds, including the
//! vacuous case where its hypotheses fail. Ordinary semigroups are skipped.

use crate::invariants::InvariantRecord;
use crate::nu::oracle_sm;
use crate::semigroup::Semigroup;

/// Everything a predicate may look at. `sm` is the brute-force `s_m`.
pub struct Facts<'a> {
    pub s: &'a Semigroup,
    pub rec: &'a InvariantRecord,
    pub sm: i64,
}

impl<'a> Facts<'a> {
    pub fn new(s: &'a Semigroup, rec: &'a InvariantRecord) -> Self {
        Facts {
            s,
            rec,
            sm: oracle_sm(s) as i64,
        }
    }
}

pub struct Relation {
    pub id: &'static str,
    pub check: fn(&V) -> bool,
}

/// Signed invariants of a non-ordinary semigroup.
pub struct V<'a> {
    s: &'a Semigroup,
    e: i64,
    c: i64,
    d: i64,
    cs: i64,
    dp: i64,
    l: i64,
    st: i64,
    t: i64,
    tau: i64,
    sm: i64,
    holes: Vec<i64>,
    acute: bool,
    symmetric: bool,
}

impl V<'_> {
    fn has(&self, x: i64) -> bool {
        self.s.has(x)
    }

    fn all_in(&self, lo: i64, hi: i64) -> bool {
        (lo.max(0)..=hi).all(|x| self.has(x))
    }

    /// `c' - (c - e)`, the shift written `q` in the relations among `e, l, t`.
    fn qs(&self) -> i64 {
        self.cs - (self.c - self.e)
    }

    fn nh(&self) -> i64 {
        self.holes.len() as i64
    }
}

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

fn p2_5_1(v: &V) -> bool {
    v.qs() >= 0 && v.e <= 2 * v.l + v.t + v.qs()
}

fn p2_5_2(v: &V) -> bool {
    let a = v.d - v.cs >= v.l - 1;
    let b = v.st - v.l == v.cs - 1;
    let c = v.c + v.cs - 2 == v.st + v.d;
    let d = v.e == 2 * v.l + v.t + v.qs();
    a == b
        && b == c
        && c == d
        && implies(
            a,
            v.cs <= v.st && v.st <= v.d && v.acute == (v.d - v.dp >= 2 * v.l + v.t),
        )
}

fn p2_6_1a(v: &V) -> bool {
    (0..v.e).all(|h| implies(v.has(v.d - h), v.e > h + v.l))
}

fn p2_6_1b(v: &V) -> bool {
    let lo = v.c - v.e;
    (lo..=v.c + v.l)
        .filter(|&s| v.has(s))
        .all(|s| ((s - v.l).max(0)..s).filter(|&y| v.has(y)).all(|y| y >= lo))
}

fn p2_6_2(v: &V) -> bool {
    v.st >= v.c - v.e && v.e > v.t + v.l
}

fn p2_6_3(v: &V) -> bool {
    if v.t == 0 {
        return true;
    }
    let next = v.s.next_member(v.st as u64) as i64;
    v.e >= 2 * v.l + 1 + v.d - next && implies(v.has(v.st + 1), v.e >= 2 * v.l + v.t)
}

fn p2_6_4(v: &V) -> bool {
    let x = v.st - v.l;
    let ce = v.c - v.e;
    let a = x > ce - 1;
    let b = x == ce - 1;
    let c = ce - v.l <= x && x < ce - 1;
    let k = 2 * v.l + v.t;
    [a, b, c].iter().filter(|&&z| z).count() == 1
        && a == (v.e > k)
        && a == v.holes.contains(&x)
        && b == (v.e == k)
        && c == (v.e < k)
}

fn p2_6_5(v: &V) -> bool {
    if v.e >= 2 * v.l + v.t {
        return true;
    }
    let a = v.st <= v.dp || v.t == 0;
    let b = implies(
        v.st <= v.dp,
        (v.st + 1..=v.c - v.e + v.l - 1).all(|x| !v.has(x))
            && v.nh() >= 2 * v.l + v.t - v.e
            && v.nh() > 0,
    );
    a && b
}

fn c2_7_1(v: &V) -> bool {
    implies(
        v.t > 0 && v.st <= v.dp,
        v.d - v.cs <= v.l - 2 && v.d - v.dp <= v.l && v.cs >= v.c - v.e + 2,
    )
}

fn c2_7_2(v: &V) -> bool {
    let q = v.qs();
    implies(
        v.t > 0 && (q == 0 || q == 1),
        v.d - v.cs >= v.l - 1 && v.e == 2 * v.l + v.t + q,
    )
}

fn c2_7_3(v: &V) -> bool {
    let h = v.d - v.cs;
    if !(v.t > 0 && h <= v.l - 2) {
        return true;
    }
    let q = v.d - v.dp;
    h + 2 <= q && q <= v.l && v.l <= v.e - 3 - h && implies(v.st >= 2 * v.dp - v.d, v.t <= 2 * v.l)
}

fn c2_7_4(v: &V) -> bool {
    implies(
        v.t > 0 && v.st < v.dp && v.e <= 2 * v.l + v.t,
        v.nh() <= v.l + v.t - 2 * (v.d - v.cs) - 4,
    )
}

fn c2_8_1(v: &V) -> bool {
    implies(v.cs <= v.st && v.st < v.d, v.e >= 2 * v.l + v.t)
}

fn c2_8_2a(v: &V) -> bool {
    let k = 2 * v.l + v.t;
    implies(
        v.st <= v.dp && v.e <= k,
        v.has(v.d + 2 * v.l - v.e) == (v.e == k),
    )
}

fn c2_8_2b(v: &V) -> bool {
    let inside = v.holes.iter().all(|&h| v.dp - v.t < h && h < v.cs);
    implies(v.st <= v.dp && inside, v.e <= 2 * v.l + v.t)
}

fn band_holes(v: &V) -> bool {
    v.holes == (v.dp + 1..v.cs).collect::<Vec<_>>()
}

fn c2_8_2c(v: &V) -> bool {
    implies(
        v.st <= v.dp && band_holes(v) && v.e < 2 * v.l + v.t,
        v.st == v.dp,
    )
}

fn t2_3_5(v: &V) -> bool {
    let q = v.qs();
    implies(q == 0 || q == 1, v.acute)
}

fn r2_4_1(v: &V) -> bool {
    (v.st + 1..=v.d).all(|s| implies(v.has(s), v.has(s - v.l)))
}

fn r2_4_2(v: &V) -> bool {
    0 < v.sm && v.sm <= 2 * v.d
}

fn p3_1_1(v: &V) -> bool {
    implies(
        v.st < v.dp,
        (v.st + v.dp - v.l).max(0) >= v.c || v.all_in(v.st + v.dp - v.l, v.c),
    )
}

fn p3_6(v: &V) -> bool {
    let hyp = v.sm >= v.st + v.d || (v.sm >= 2 * v.dp && v.st < v.dp);
    implies(hyp, v.sm >= v.c + v.d - v.e)
}

fn c3_7_1(v: &V) -> bool {
    implies(v.sm > 2 * v.dp, v.has(v.sm - v.d))
}

fn u_set_empty(v: &V) -> bool {
    let (d, cs) = (v.d, v.cs);
    (2 * v.dp + 1 - d..=v.st).all(|sg| !(v.has(sg) && !v.has(sg - v.l) && !v.has(sg + d + 1 - cs)))
}

fn r3_9_2(v: &V) -> bool {
    let hyp = 2 * v.dp - v.d < v.st && v.st < v.dp + v.cs - v.d && v.all_in(v.dp - v.l + 2, v.dp);
    implies(hyp, u_set_empty(v))
}

fn r3_9_3(v: &V) -> bool {
    let (d, cs, l) = (v.d, v.cs, v.l);
    let x = v.st + d + 1 - cs;
    implies(
        v.sm < 2 * v.dp && 2 * v.dp <= v.st + d,
        v.has(x) && v.has(x - l) && (v.has(2 * v.dp - d - l) || v.has(2 * v.dp + 1 - cs)),
    )
}

fn p3_10_1(v: &V) -> bool {
    implies(
        v.st < v.dp && v.all_in(v.dp - v.l, v.dp),
        v.all_in(v.st - v.l + 1, v.dp) && v.e >= 2 * v.l + v.t,
    )
}

fn p3_10_2a(v: &V) -> bool {
    let hyp = v.st < v.dp
        && v.all_in(v.dp - v.l, v.dp)
        && 2 * v.dp - v.d < v.st
        && v.st < v.dp + v.cs - v.d;
    let q = v.d - v.dp;
    let h = v.d - v.cs;
    implies(hyp, q + h < v.t && v.t < 2 * q && 2 * q <= 2 * v.l)
}

fn p4_1_1(v: &V) -> bool {
    (v.holes.is_empty() == (v.cs == v.c - v.e)) && implies(v.holes.is_empty(), v.acute)
}

fn p4_1_2(v: &V) -> bool {
    let a = v.all_in(v.dp - v.l, v.dp) && v.e == 2 * v.l + v.t;
    implies(v.st < v.dp, a == band_holes(v))
}

fn p4_3_1(v: &V) -> bool {
    if v.st >= v.cs + v.dp - v.d {
        return true;
    }
    let k = (0..).find(|&n| !v.has(v.dp - n)).unwrap();
    let h = v.d - v.cs;
    let s = v.dp + v.cs - k - 1;
    let a = s <= 2 * v.dp;
    a == (v.cs - v.dp <= k + 1) && a == (v.d - v.dp <= k + h + 1)
}

fn l4_8_1(v: &V) -> bool {
    v.nh() + v.l <= v.tau && v.tau < v.e
}

fn l4_8_2(v: &V) -> bool {
    if v.tau != v.l {
        return true;
    }
    let a = v.l == v.e - 1;
    let b = v.cs == v.d;
    let c = v.d == v.c - v.e;
    let d = v.c % v.e == 0 && (1..v.c).all(|x| v.has(x) == (x % v.e == 0));
    v.holes.is_empty() && a == b && b == c && c == d
}

fn l4_8_3(v: &V) -> bool {
    implies(
        v.cs > v.c - v.e,
        v.tau > v.l && implies(v.tau == v.l + 1, v.holes == vec![v.cs - 1]),
    )
}

fn l4_8_4(v: &V) -> bool {
    if !(v.st <= v.dp && v.tau == v.l + 1) {
        return true;
    }
    let k = 2 * v.l + v.t;
    if v.st == v.dp {
        v.e == k - 1 || v.e == k
    } else {
        v.e == k
    }
}

fn type_one(v: &V) -> bool {
    (v.tau == 1) == v.symmetric
}

/// The full list, in a fixed order.
pub const RELATIONS: &[Relation] = &[
    Relation {
        id: "Prop2.5.1",
        check: p2_5_1,
    },
    Relation {
        id: "Prop2.5.2",
        check: p2_5_2,
    },
    Relation {
        id: "Prop2.6.1a",
        check: p2_6_1a,
    },
    Relation {
        id: "Prop2.6.1b",
        check: p2_6_1b,
    },
    Relation {
        id: "Prop2.6.2",
        check: p2_6_2,
    },
    Relation {
        id: "Prop2.6.3",
        check: p2_6_3,
    },
    Relation {
        id: "Prop2.6.4",
        check: p2_6_4,
    },
    Relation {
        id: "Prop2.6.5",
        check: p2_6_5,
    },
    Relation {
        id: "Cor2.7.1",
        check: c2_7_1,
    },
    Relation {
        id: "Cor2.7.2",
        check: c2_7_2,
    },
    Relation {
        id: "Cor2.7.3",
        check: c2_7_3,
    },
    Relation {
        id: "Cor2.7.4",
        check: c2_7_4,
    },
    Relation {
        id: "Cor2.8.1",
        check: c2_8_1,
    },
    Relation {
        id: "Cor2.8.2a",
        check: c2_8_2a,
    },
    Relation {
        id: "Cor2.8.2b",
        check: c2_8_2b,
    },
    Relation {
        id: "Cor2.8.2c",
        check: c2_8_2c,
    },
    Relation {
        id: "Th2.3.5",
        check: t2_3_5,
    },
    Relation {
        id: "Rem2.4.1",
        check: r2_4_1,
    },
    Relation {
        id: "Rem2.4.2",
        check: r2_4_2,
    },
    Relation {
        id: "Prop3.1.1",
        check: p3_1_1,
    },
    Relation {
        id: "Prop3.6",
        check: p3_6,
    },
    Relation {
        id: "Cor3.7.1",
        check: c3_7_1,
    },
    Relation {
        id: "Rem3.9.2",
        check: r3_9_2,
    },
    Relation {
        id: "Rem3.9.3",
        check: r3_9_3,
    },
    Relation {
        id: "Prop3.10.1",
        check: p3_10_1,
    },
    Relation {
        id: "Prop3.10.2a",
        check: p3_10_2a,
    },
    Relation {
        id: "Prop4.1.1",
        check: p4_1_1,
    },
    Relation {
        id: "Prop4.1.2",
        check: p4_1_2,
    },
    Relation {
        id: "Prop4.3.1",
        check: p4_3_1,
    },
    Relation {
        id: "Lemma4.8.1",
        check: l4_8_1,
    },
    Relation {
        id: "Lemma4.8.2",
        check: l4_8_2,
    },
    Relation {
        id: "Lemma4.8.3",
        check: l4_8_3,
    },
    Relation {
        id: "Lemma4.8.4",
        check: l4_8_4,
    },
    Relation {
        id: "TypeOne",
        check: type_one,
    },
];

fn view<'a>(f: &Facts<'a>) -> Option<V<'a>> {
    let r = f.rec;
    let dp = r.d_prime? as i64;
    Some(V {
        s: f.s,
        e: r.e as i64,
        c: r.c as i64,
        d: r.d as i64,
        cs: r.c_sub as i64,
        dp,
        l: r.ell as i64,
        st: r.s_tilde as i64,
        t: r.t as i64,
        tau: r.tau as i64,
        sm: f.sm,
        holes: r.holes.iter().map(|&h| h as i64).collect(),
        acute: r.flags.acute,
        symmetric: r.flags.symmetric,
    })
}

/// Ids of the relations that fail on `f` (empty for ordinary semigroups).
pub fn failures(f: &Facts) -> Vec<&'static str> {
    match view(f) {
        None => Vec::new(),
        Some(v) => RELATIONS
            .iter()
            .filter(|r| !(r.check)(&v))
            .map(|r| r.id)
            .collect(),
    }
}

/// The four conditions of the `d - c' >= l - 1` equivalence, in order.
pub fn equivalence_flags(rec: &InvariantRecord) -> [bool; 4] {
    let (e, c, d, cs, l, st, t) = (
        rec.e as i64,
        rec.c as i64,
        rec.d as i64,
        rec.c_sub as i64,
        rec.ell as i64,
        rec.s_tilde as i64,
        rec.t as i64,
    );
    let q = cs - (c - e);
    [
        d - cs >= l - 1,
        st - l == cs - 1,
        c + cs - 2 == st + d,
        e == 2 * l + t + q,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_members(below: &[u64], c: u64) -> Semigroup {
        let gaps: Vec<u64> = (1..c).filter(|x| !below.contains(x)).collect();
        Semigroup::from_gaps(&gaps).unwrap()
    }

    fn fails(s: &Semigroup) -> Vec<&'static str> {
        let r = InvariantRecord::compute(s);
        failures(&Facts::new(s, &r))
    }

    #[test]
    fn examples_pass() {
        for s in [
            from_members(&[0, 10, 17, 18, 19, 20], 27),
            from_members(&[0, 8, 12, 14, 15, 16], 20),
            from_members(&[0, 8, 9, 11, 12], 16),
            from_members(&[0, 26, 28, 31, 33], 39),
            from_members(&[0, 20, 21, 26, 27, 32], 39),
            Semigroup::from_generators(&[8, 10, 12, 13]).unwrap(),
        ] {
            assert!(fails(&s).is_empty(), "{s}: {:?}", fails(&s));
        }
    }

    #[test]
    fn ids_unique() {
        let mut ids: Vec<_> = RELATIONS.iter().map(|r| r.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), RELATIONS.len());
    }

    #[test]
    fn ordinary_is_skipped() {
        assert!(fails(&Semigroup::from_gaps(&[1, 2]).unwrap()).is_empty());
    }

    #[test]
    fn equivalence_on_example() {
        let s = from_members(&[0, 3, 4], 6);
        assert_eq!(equivalence_flags(&InvariantRecord::compute(&s)), [true; 4]);
        let s = from_members(&[0, 10, 17, 18, 19, 20], 27);
        assert_eq!(equivalence_flags(&InvariantRecord::compute(&s)), [false; 4]);
    }

    #[test]
    fn catches_a_broken_statement() {
        let s = from_members(&[0, 8, 9, 11, 12], 16);
        let r = InvariantRecord::compute(&s);
        let mut v = view(&Facts::new(&s, &r)).unwrap();
        v.tau = 0;
        assert!(!l4_8_1(&v));
    }
}
