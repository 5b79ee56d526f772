//! Closed-form values and bounds for `s_m`.
//!
//! Every rule checks its own hypotheses on the record and the membership
//! table, and contributes a [`Conclusion`]. The prediction is the
//! intersection of all contributions.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::is_aas;
use crate::invariants::InvariantRecord;
use crate::nu::row_descriptor;
use crate::semigroup::Semigroup;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PredictError {
    #[error("rules {0} and {1} give disjoint conclusions")]
    InconsistentRules(String, String),
    #[error("d' is undefined for ordinary semigroups")]
    MissingDPrime,
}

/// What one rule says about `s_m`. Missing ends are unbounded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    /// A finite set of possible values, when the rule is that precise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<Vec<i64>>,
}

impl Conclusion {
    pub fn exact(v: i64) -> Self {
        Conclusion {
            lo: Some(v),
            hi: Some(v),
            candidates: None,
        }
    }

    pub fn range(lo: i64, hi: i64) -> Self {
        Conclusion {
            lo: Some(lo),
            hi: Some(hi),
            candidates: None,
        }
    }

    pub fn lower(lo: i64) -> Self {
        Conclusion {
            lo: Some(lo),
            hi: None,
            candidates: None,
        }
    }

    pub fn upper(hi: i64) -> Self {
        Conclusion {
            lo: None,
            hi: Some(hi),
            candidates: None,
        }
    }

    pub fn one_of(mut vals: Vec<i64>) -> Self {
        vals.sort_unstable();
        vals.dedup();
        Conclusion {
            lo: vals.first().copied(),
            hi: vals.last().copied(),
            candidates: Some(vals),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo.is_some() && self.lo == self.hi
    }

    /// Whether `v` is consistent with this conclusion.
    pub fn admits(&self, v: i64) -> bool {
        self.lo.is_none_or(|lo| v >= lo)
            && self.hi.is_none_or(|hi| v <= hi)
            && self.candidates.as_ref().is_none_or(|c| c.contains(&v))
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = &self.candidates {
            let v: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            return write!(f, "{{{}}}", v.join(","));
        }
        match (self.lo, self.hi) {
            (Some(a), Some(b)) if a == b => write!(f, "= {a}"),
            (Some(a), Some(b)) => write!(f, "[{a}, {b}]"),
            (Some(a), None) => write!(f, ">= {a}"),
            (None, Some(b)) => write!(f, "<= {b}"),
            (None, None) => write!(f, "any"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PredictionKind {
    Exact,
    Range,
    LowerBoundOnly,
    NoRule,
}

impl PredictionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PredictionKind::Exact => "exact",
            PredictionKind::Range => "range",
            PredictionKind::LowerBoundOnly => "lower",
            PredictionKind::NoRule => "none",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "exact" => PredictionKind::Exact,
            "range" => PredictionKind::Range,
            "lower" => PredictionKind::LowerBoundOnly,
            "none" => PredictionKind::NoRule,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LbStatus {
    ProvenHere,
    Conjectured,
}

impl LbStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LbStatus::ProvenHere => "proven-here",
            LbStatus::Conjectured => "conjectured",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prediction {
    pub kind: PredictionKind,
    pub lo: Option<i64>,
    pub hi: Option<i64>,
    pub candidates: Option<Vec<i64>>,
    /// Rule id, or `lo_rule+hi_rule` when two rules pin the two ends.
    pub rule: String,
    pub conjecture_lb: i64,
    pub lb_status: LbStatus,
}

impl Prediction {
    pub fn admits(&self, v: i64) -> bool {
        self.lo.is_none_or(|lo| v >= lo)
            && self.hi.is_none_or(|hi| v <= hi)
            && self.candidates.as_ref().is_none_or(|c| c.contains(&v))
    }
}

#[derive(Serialize, Deserialize)]
struct PredictionWire {
    kind: String,
    lo: Option<i64>,
    hi: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    candidates: Option<Vec<i64>>,
    rule: String,
    conjecture_lb: i64,
    lb_status: String,
}

impl Serialize for Prediction {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        PredictionWire {
            kind: self.kind.as_str().to_string(),
            lo: self.lo,
            hi: self.hi,
            candidates: self.candidates.clone(),
            rule: self.rule.clone(),
            conjecture_lb: self.conjecture_lb,
            lb_status: self.lb_status.as_str().to_string(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Prediction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = PredictionWire::deserialize(de)?;
        let kind =
            PredictionKind::parse(&w.kind).ok_or_else(|| D::Error::custom("unknown kind"))?;
        let lb_status = match w.lb_status.as_str() {
            "proven-here" => LbStatus::ProvenHere,
            "conjectured" => LbStatus::Conjectured,
            _ => return Err(D::Error::custom("unknown lb_status")),
        };
        Ok(Prediction {
            kind,
            lo: w.lo,
            hi: w.hi,
            candidates: w.candidates,
            rule: w.rule,
            conjecture_lb: w.conjecture_lb,
            lb_status,
        })
    }
}

/// A rule whose hypotheses hold, with what it concludes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleHit {
    pub rule: String,
    pub conclusion: Conclusion,
}

/// Signed view of the record plus membership, for the rule bodies.
struct Ctx<'a> {
    s: &'a Semigroup,
    r: &'a InvariantRecord,
    e: i64,
    c: i64,
    d: i64,
    cs: i64,
    dp: i64,
    l: i64,
    st: i64,
    t: i64,
    tau: u64,
    nh: usize,
    acute: bool,
    symmetric: bool,
}

impl<'a> Ctx<'a> {
    fn new(s: &'a Semigroup, r: &'a InvariantRecord) -> Result<Self, PredictError> {
        let dp = r.d_prime.ok_or(PredictError::MissingDPrime)?;
        Ok(Ctx {
            s,
            r,
            e: r.e as i64,
            c: r.c as i64,
            d: r.d as i64,
            cs: r.c_sub as i64,
            dp: dp as i64,
            l: r.ell as i64,
            st: r.s_tilde as i64,
            t: r.t as i64,
            tau: r.tau,
            nh: r.holes.len(),
            acute: r.flags.acute,
            symmetric: r.flags.symmetric,
        })
    }

    fn has(&self, x: i64) -> bool {
        self.s.has(x)
    }

    /// `[lo, hi]` intersected with the naturals lies in `S`.
    fn all_in(&self, lo: i64, hi: i64) -> bool {
        (lo.max(0)..=hi).all(|x| self.has(x))
    }

    fn cde(&self) -> i64 {
        self.c + self.d - self.e
    }

    /// `s~ < c' + d' - d`, the standing assumption of the special cases.
    fn below_main(&self) -> bool {
        self.st < self.cs + self.dp - self.d
    }
}

type Hits = Vec<(&'static str, Conclusion)>;

fn th_2_3(x: &Ctx, out: &mut Hits) {
    let v = x.st + x.d;
    if x.st >= x.dp {
        out.push(("Th2.3.4", Conclusion::exact(v)));
    }
    if x.t <= 2 {
        out.push(("Th2.3.4a", Conclusion::exact(v)));
    }
    if x.acute {
        out.push(("Th2.3.4b", Conclusion::exact(v)));
    }
}

fn prop_4_5(x: &Ctx, out: &mut Hits) {
    if x.l != 2 || !x.below_main() {
        return;
    }
    let (d, t) = (x.d, x.t);
    let v = if t <= 2 || t == 4 || (t >= 5 && x.has(d - 3)) {
        x.st + d
    } else if (t == 3 && !x.has(d - 6)) || (t >= 5 && !x.has(d - 3)) {
        2 * d - 4
    } else {
        2 * d - 6
    };
    out.push(("Prop4.5", Conclusion::exact(v)));
}

fn prop_4_7(x: &Ctx, out: &mut Hits) {
    if x.l != 3 {
        return;
    }
    out.push(("Prop4.7", Conclusion::lower(x.cde())));
    if !x.below_main() {
        return;
    }
    let (d, t, v) = (x.d, x.t, x.st + x.d);
    let h = |k: i64| x.has(d - k);
    if h(1) && !h(2) && x.dp == d - 3 {
        let c = if t == 5 {
            if !h(9) {
                2 * d - 6
            } else if !h(10) {
                2 * d - 7
            } else if !h(12) {
                2 * d - 9
            } else {
                2 * d - 10
            }
        } else if t <= 7 || h(5) {
            v
        } else {
            2 * d - 7
        };
        out.push(("Prop4.7.A", Conclusion::exact(c)));
    } else if !h(1) && !h(2) && x.cs == d && x.dp == d - 3 {
        let c = if t <= 3 {
            Some(Conclusion::exact(v))
        } else if !h(5) {
            Some(Conclusion::exact(2 * d - 6))
        } else if h(4) {
            Some(if t <= 5 {
                Conclusion::range(2 * d - 9, 2 * d - 6)
            } else {
                Conclusion::exact(v)
            })
        } else {
            match t {
                5 | 6 | 8 => Some(Conclusion::exact(v)),
                7 => Some(Conclusion::one_of(vec![2 * d - 8, 2 * d - 11])),
                _ if !h(7) => Some(Conclusion::exact(2 * d - 8)),
                9 => Some(Conclusion::one_of(vec![2 * d - 10, 2 * d - 11, 2 * d - 13])),
                _ if t >= 10 => Some(Conclusion::exact(v)),
                _ => None,
            }
        };
        if let Some(c) = c {
            out.push(("Prop4.7.B", c));
        }
    } else if !h(1) && h(2) && x.dp == d - 2 {
        let c = if t == 3 {
            if h(4) && !h(7) {
                2 * d - 4
            } else if !h(4) || !h(8) {
                2 * d - 5
            } else {
                2 * d - 7
            }
        } else if h(4) {
            v
        } else {
            2 * d - 5
        };
        out.push(("Prop4.7.C", Conclusion::exact(c)));
    }
}

fn th_3_4(x: &Ctx, out: &mut Hits) {
    let (d, dp, cs, st, l) = (x.d, x.dp, x.cs, x.st, x.l);
    let v = st + d;
    out.push((
        "Th3.4.0",
        Conclusion::upper(if st >= 2 * dp - d { v } else { 2 * dp }),
    ));
    if st >= dp {
        return;
    }
    if st >= dp + cs - d {
        out.push(("Th3.4.1", Conclusion::exact(v)));
    } else if st == dp + cs - d - 1 {
        out.push(("Th3.4.2", Conclusion::upper(v - 1)));
    } else if st > 2 * dp - d {
        let u = (2 * dp + 1 - d..=st)
            .rev()
            .find(|&sg| x.has(sg) && !x.has(sg - l) && !x.has(sg + d + 1 - cs));
        match u {
            Some(mu) => out.push(("Th3.4.3a", Conclusion::exact(d + mu))),
            None => out.push(("Th3.4.3b", Conclusion::upper(2 * dp))),
        }
    } else if st == 2 * dp - d {
        out.push(("Th3.4.4", Conclusion::exact(v)));
    } else {
        let row = row_descriptor(x.s, x.r, (2 * dp) as u64);
        let r3 =
            !row.next_minus_c_in_s && !row.cur_minus_d_in_sprime && !row.next_minus_csub_in_sprime;
        let r4 =
            row.next_minus_c_in_s && row.cur_minus_d_in_sprime && !row.next_minus_csub_in_sprime;
        if r3 || r4 {
            out.push(("Th3.4.5", Conclusion::exact(2 * dp)));
        } else {
            out.push(("Th3.4.5", Conclusion::upper(2 * dp - 1)));
        }
        if !x.has(st + d + 1 - cs) {
            if st >= 2 * dp - d - 2 {
                out.push(("Th3.4.5a", Conclusion::range(v, 2 * dp)));
            } else {
                let j = 2 * dp - d - st;
                if j == 3 || j == 4 {
                    let inter: Vec<i64> = (dp - j..dp).filter(|&y| x.has(y)).collect();
                    if inter != vec![dp - j + 1] {
                        out.push(("Th3.4.5b", Conclusion::range(v, 2 * dp)));
                    }
                }
            }
        }
    }
}

fn cor_3_7(x: &Ctx, out: &mut Hits) {
    if x.st == x.dp - 1 {
        let v = x.st + x.d;
        out.push((
            "Cor3.7.2",
            if x.cs != x.d {
                Conclusion::exact(v)
            } else {
                Conclusion::upper(v - 1)
            },
        ));
    }
}

fn prop_3_8(x: &Ctx, out: &mut Hits) {
    let (d, dp, cs, st) = (x.d, x.dp, x.cs, x.st);
    if !(st <= dp - 2 && x.all_in(st + 2, dp)) {
        return;
    }
    let v = st + d;
    out.push(("Prop3.8", Conclusion::upper(v)));
    if 2 * dp - d < st && st < dp + cs - d {
        let c = if !x.has(st + 1) && cs == d {
            Conclusion::exact(v)
        } else {
            Conclusion::upper(v - 1)
        };
        out.push(("Prop3.8.1", c));
    } else if st <= 2 * dp - d {
        out.push(("Prop3.8.2", Conclusion::exact(v)));
    }
}

fn prop_3_10_th_3_11(x: &Ctx, out: &mut Hits) {
    let (d, dp, cs, st, l) = (x.d, x.dp, x.cs, x.st, x.l);
    if !x.all_in(dp - l, dp) {
        return;
    }
    out.push(("Th3.11", Conclusion::lower(x.cde())));
    let window = 2 * dp - d < st && st < dp + cs - d;
    if window {
        out.push(("Th3.11.1", Conclusion::range(st + dp - l + 1, 2 * dp)));
    } else {
        out.push(("Th3.11.2", Conclusion::exact(st + d)));
    }
    if !(st < dp && window) {
        return;
    }
    out.push(("Prop3.10.2d", Conclusion::upper(2 * dp)));
    let w = (st - 2 * l + 1).max(0)..=2 * dp - l - d;
    match w.rev().find(|&y| !x.has(y)) {
        Some(h0) => {
            out.push(("Prop3.10.2e", Conclusion::lower(h0 + l + d)));
            out.push(("Prop3.10.2f", Conclusion::lower(st + d - l + 1)));
        }
        None => {
            out.push(("Prop3.10.2f", Conclusion::upper(st + d - l)));
            out.push(("Prop3.10.2g", Conclusion::lower(st + dp - l + 1)));
            cor_3_12(x, out);
        }
    }
}

/// Refinements once the window `W` is empty; the caller checks the rest.
fn cor_3_12(x: &Ctx, out: &mut Hits) {
    let (d, dp, cs, st, l, t) = (x.d, x.dp, x.cs, x.st, x.l, x.t);
    let a = cs - l - t - 1;
    let b = cs - 2 * l - t - 1;
    if x.has(a) || !x.has(b) {
        out.push(("Cor3.12.1", Conclusion::lower(st + cs - l - 1)));
        return;
    }
    let Some(sigma) = (0..st - l).rev().find(|&y| x.has(y)) else {
        return;
    };
    if sigma <= cs - l - t - 2 {
        out.push(("Cor3.12.2a", Conclusion::lower(sigma + d)));
    } else if sigma >= cs - l - t {
        if !x.has(sigma - l) {
            out.push(("Cor3.12.2b", Conclusion::exact(sigma + d)));
        } else if !x.has(2 * dp - 2 * l - d) || !x.has(2 * dp - l + 1 - cs) {
            out.push(("Cor3.12.2c", Conclusion::lower(2 * dp - l)));
        }
    }
}

fn prop_4_1(x: &Ctx, out: &mut Hits) {
    let (d, dp, cs, st) = (x.d, x.dp, x.cs, x.st);
    if x.nh == 0 {
        out.push(("Prop4.1.1", Conclusion::exact(st + d)));
    }
    if st < dp {
        let holes: Vec<i64> = (x.c - x.e..=cs).filter(|&y| !x.has(y)).collect();
        let band: Vec<i64> = (dp + 1..cs).collect();
        if holes == band {
            let v = if 2 * dp - d < st && st < dp + cs - d {
                2 * dp
            } else {
                st + d
            };
            out.push(("Prop4.1.2", Conclusion::exact(v)));
        }
    }
}

/// `(k, s)` of the gap-position estimates: `k` is the distance from `d'`
/// down to the first gap, `s = d' + c' - k - 1`.
fn gap_offset(x: &Ctx) -> (i64, i64) {
    let k = (0..)
        .find(|&n| !x.has(x.dp - n))
        .expect("negative numbers are gaps");
    (k, x.dp + x.cs - k - 1)
}

fn prop_4_3(x: &Ctx, out: &mut Hits) {
    if !x.below_main() {
        return;
    }
    let (d, dp, cs, st, l) = (x.d, x.dp, x.cs, x.st, x.l);
    let (k, s) = gap_offset(x);
    let h = d - cs;
    if st < dp - k && l <= k + h + 1 {
        out.push(("Prop4.3.2", Conclusion::lower(s.max(x.cde()))));
    }
    if 1 <= k
        && k < l
        && cs - dp <= k + 1
        && (dp - l..=dp).filter(|&y| y != dp - k).all(|y| x.has(y))
    {
        out.push(("Prop4.3.3", Conclusion::range(s.max(x.cde()), 2 * dp)));
    }
}

fn cor_4_4(x: &Ctx, out: &mut Hits) {
    if x.below_main() && x.nh <= 2 {
        out.push(("Cor4.4", Conclusion::lower(x.cde())));
    }
}

fn prop_4_10(x: &Ctx, out: &mut Hits) {
    if x.tau > 7 {
        return;
    }
    out.push(("Prop4.10", Conclusion::lower(x.cde())));
    if !x.below_main() {
        return;
    }
    let (d, t, l, v) = (x.d, x.t, x.l, x.st + x.d);
    if x.tau <= 3 {
        let c = if !x.acute && x.tau == 3 && t == 3 {
            2 * d - 4
        } else {
            v
        };
        out.push(("Prop4.10.1", Conclusion::exact(c)));
    } else if x.tau == 4 {
        let four = (l == 2 && ((t == 3 && !x.has(d - 6)) || (t >= 5 && !x.has(d - 3))))
            || (l == 3 && t == 3 && x.e == 9 && x.cs == d && x.dp == x.cs - 2 && x.has(d - 4));
        let six = (l == 2 && t == 3 && x.has(d - 6))
            || (l == 3 && t == 5 && x.e == 11 && x.cs == d - 1 && x.dp == x.cs - 2);
        let c = if four {
            2 * d - 4
        } else if six {
            2 * d - 6
        } else {
            v
        };
        out.push(("Prop4.10.2", Conclusion::exact(c)));
    }
}

fn small_classes(x: &Ctx, out: &mut Hits) {
    if x.e <= 8 {
        out.push(("Cor4.11", Conclusion::lower(x.cde())));
    }
    if x.s.embedding_dimension() <= 5 && is_aas(x.s) {
        out.push(("Cor4.13", Conclusion::lower(x.cde())));
    }
    if x.symmetric {
        out.push(("Prop4.14", Conclusion::exact(x.st + x.d)));
    }
}

/// Hits in priority order.
fn collect(s: &Semigroup, rec: &InvariantRecord) -> Result<Hits, PredictError> {
    if rec.flags.ordinary {
        return Ok(vec![("Th2.3.3", Conclusion::exact(0))]);
    }
    let x = Ctx::new(s, rec)?;
    let mut out = Hits::new();
    th_2_3(&x, &mut out);
    prop_4_5(&x, &mut out);
    prop_4_7(&x, &mut out);
    th_3_4(&x, &mut out);
    cor_3_7(&x, &mut out);
    prop_3_8(&x, &mut out);
    prop_3_10_th_3_11(&x, &mut out);
    prop_4_1(&x, &mut out);
    prop_4_3(&x, &mut out);
    cor_4_4(&x, &mut out);
    prop_4_10(&x, &mut out);
    small_classes(&x, &mut out);
    out.push(("Rem2.4.2", Conclusion::range(1, 2 * x.d)));
    // The c + d - e bound, general form: some rule already places s_m at or
    // above s~ + d, or at or above 2d'. Particular form: s~ + d >= c' + d' or
    // s~ + d = 2d'.
    let lo = out
        .iter()
        .filter_map(|(_, c)| c.lo)
        .max()
        .unwrap_or(i64::MIN);
    let general = lo >= x.st + x.d || (x.st < x.dp && lo >= 2 * x.dp);
    let particular = x.st + x.d >= x.cs + x.dp || x.st + x.d == 2 * x.dp;
    if general || particular {
        out.push(("Prop3.6", Conclusion::lower(x.cde())));
    }
    Ok(out)
}

/// Every rule whose hypotheses hold on `s`, sorted by rule id.
pub fn applicable_rules(
    s: &Semigroup,
    rec: &InvariantRecord,
) -> Result<Vec<RuleHit>, PredictError> {
    let mut v: Vec<RuleHit> = collect(s, rec)?
        .into_iter()
        .map(|(r, c)| RuleHit {
            rule: r.to_string(),
            conclusion: c,
        })
        .collect();
    v.sort_by(|a, b| {
        a.rule
            .cmp(&b.rule)
            .then_with(|| a.conclusion.lo.cmp(&b.conclusion.lo))
    });
    Ok(v)
}

/// Intersect the hits; errors name the pair that first empties the result.
fn intersect(hits: &Hits) -> Result<(Conclusion, String), PredictError> {
    let mut lo: Option<(i64, &str)> = None;
    let mut hi: Option<(i64, &str)> = None;
    let mut cands: Option<(Vec<i64>, &str)> = None;
    for (rule, c) in hits {
        if let Some(v) = c.lo {
            if lo.is_none_or(|(w, _)| v > w) {
                lo = Some((v, rule));
            }
        }
        if let Some(v) = c.hi {
            if hi.is_none_or(|(w, _)| v < w) {
                hi = Some((v, rule));
            }
        }
        if let Some(vals) = &c.candidates {
            cands = Some(match cands {
                None => (vals.clone(), rule),
                Some((prev, r0)) => {
                    let kept: Vec<i64> = prev.into_iter().filter(|v| vals.contains(v)).collect();
                    if kept.is_empty() {
                        return Err(PredictError::InconsistentRules(
                            r0.to_string(),
                            rule.to_string(),
                        ));
                    }
                    (kept, r0)
                }
            });
        }
        if let (Some((a, ra)), Some((b, rb))) = (lo, hi) {
            if a > b {
                return Err(PredictError::InconsistentRules(
                    ra.to_string(),
                    rb.to_string(),
                ));
            }
        }
    }
    let mut out = Conclusion {
        lo: lo.map(|p| p.0),
        hi: hi.map(|p| p.0),
        candidates: None,
    };
    if let Some((vals, rc)) = cands {
        let kept: Vec<i64> = vals.into_iter().filter(|&v| out.admits(v)).collect();
        if kept.is_empty() {
            let other = lo.map(|p| p.1).or(hi.map(|p| p.1)).unwrap_or(rc);
            return Err(PredictError::InconsistentRules(
                rc.to_string(),
                other.to_string(),
            ));
        }
        out = Conclusion::one_of(kept);
        if out.is_exact() {
            out.candidates = None;
        }
    }
    // Name the first rule in priority order that alone gives the final
    // answer; otherwise the pair pinning the two ends.
    let rule = hits
        .iter()
        .find(|(_, c)| c.lo == out.lo && c.hi == out.hi)
        .map(|(r, _)| r.to_string())
        .unwrap_or_else(|| match (lo, hi) {
            (Some((_, a)), Some((_, b))) if a == b => a.to_string(),
            (Some((_, a)), Some((_, b))) => format!("{a}+{b}"),
            (Some((_, a)), None) | (None, Some((_, a))) => a.to_string(),
            (None, None) => String::new(),
        });
    Ok((out, rule))
}

/// The value `c + d - e` and whether some proven case covers `s`.
pub fn conjecture_bound(s: &Semigroup, rec: &InvariantRecord) -> (i64, LbStatus) {
    let b = rec.conjecture_value();
    let st = if conjecture_reasons(s, rec).is_empty() {
        LbStatus::Conjectured
    } else {
        LbStatus::ProvenHere
    };
    (b, st)
}

/// Rules that carry `s_m >= c + d - e` as part of their statement.
const CERTIFYING: [&str; 11] = [
    "Cor4.11",
    "Cor4.13",
    "Cor4.4",
    "Prop3.6",
    "Prop4.10",
    "Prop4.3.2",
    "Prop4.3.3",
    "Prop4.5",
    "Prop4.7",
    "Th2.3.3",
    "Th3.11",
];

/// Ids of the proven cases of `s_m >= c + d - e` whose hypotheses hold.
pub fn conjecture_reasons(s: &Semigroup, rec: &InvariantRecord) -> Vec<&'static str> {
    let Ok(hits) = collect(s, rec) else {
        return Vec::new();
    };
    let mut v: Vec<&'static str> = hits
        .iter()
        .map(|(r, _)| *r)
        .filter(|r| CERTIFYING.contains(r))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Intersection of every applicable rule.
pub fn predict_sm(s: &Semigroup, rec: &InvariantRecord) -> Result<Prediction, PredictError> {
    let hits = collect(s, rec)?;
    let (c, rule) = intersect(&hits)?;
    let (conjecture_lb, lb_status) = if rec.flags.ordinary {
        (rec.conjecture_value(), LbStatus::ProvenHere)
    } else {
        conjecture_bound(s, rec)
    };
    let kind = match (c.lo, c.hi) {
        (Some(a), Some(b)) if a == b => PredictionKind::Exact,
        (Some(_), Some(_)) => PredictionKind::Range,
        (Some(_), None) => PredictionKind::LowerBoundOnly,
        _ => PredictionKind::NoRule,
    };
    Ok(Prediction {
        kind,
        lo: c.lo,
        hi: c.hi,
        candidates: c.candidates,
        rule,
        conjecture_lb,
        lb_status,
    })
}
