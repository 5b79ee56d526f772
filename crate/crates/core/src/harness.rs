//! Verification campaigns: run the oracle and the selected checks over a
//! population and collect a deterministic report.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{self, apery_set_suzuki_form, sample_aas, symmetric_via_apery, FamilyError};
use crate::invariants::InvariantRecord;
use crate::nu::{decompose_eta, diff_bounds_check, NuTable};
use crate::predict::{
    applicable_rules, conjecture_reasons, predict_sm, Prediction, PredictionKind,
};
use crate::relations::{equivalence_flags, failures as relation_failures, Facts};
use crate::semigroup::{Semigroup, SemigroupSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("invalid semigroup in population: {0}")]
    Semigroup(#[from] crate::semigroup::SemigroupError),
    #[error("no checks selected")]
    NoChecks,
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Predictor,
    Conjecture,
    Table33,
    Tail,
    Relations,
    Diffbounds,
    Apery,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Predictor,
        Check::Conjecture,
        Check::Table33,
        Check::Tail,
        Check::Relations,
        Check::Diffbounds,
        Check::Apery,
    ];
}

impl FromStr for Check {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim() {
            "predictor" => Check::Predictor,
            "conjecture" => Check::Conjecture,
            "table33" => Check::Table33,
            "tail" => Check::Tail,
            "relations" => Check::Relations,
            "diffbounds" => Check::Diffbounds,
            "apery" => Check::Apery,
            other => return Err(HarnessError::UnknownCheck(other.to_string())),
        })
    }
}

/// Parse a comma-separated check list.
pub fn parse_checks(s: &str) -> Result<BTreeSet<Check>, HarnessError> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(Check::from_str)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum FamilySpec {
    /// Suzuki semigroups for `n = 1..=n_max`.
    Suzuki { n_max: u32 },
    /// Seeded random AAS semigroups with embedding dimension in range.
    Aas {
        seed: u64,
        count: usize,
        mu_min: usize,
        mu_max: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Population {
    /// Every non-trivial semigroup of genus at most this.
    Genus(u64),
    Explicit(Vec<SemigroupSpec>),
    Family(FamilySpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub population: Population,
    pub checks: BTreeSet<Check>,
    /// Worker threads; `None` uses the global pool. Does not affect output.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl CampaignConfig {
    pub fn genus(g: u64, checks: &[Check]) -> Self {
        CampaignConfig {
            population: Population::Genus(g),
            checks: checks.iter().copied().collect(),
            threads: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    InRange,
    LbOnlyOk,
    Violation,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Match => "match",
            Verdict::InRange => "in-range",
            Verdict::LbOnlyOk => "lb-only-ok",
            Verdict::Violation => "violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    /// Display form of the semigroup, e.g. `{0,3,4,6->}`.
    pub id: String,
    pub gaps: Vec<u64>,
    pub genus: u64,
    pub e: u64,
    pub c: u64,
    pub d: u64,
    pub c_sub: u64,
    pub d_prime: Option<u64>,
    pub ell: u64,
    pub tau: u64,
    pub s_tilde: u64,
    pub t: u64,
    pub oracle_sm: u64,
    pub prediction: Option<Prediction>,
    /// Ids of the rules whose hypotheses held.
    pub rules: Vec<String>,
    pub verdict: Verdict,
    /// What failed, as `check:detail`. Non-empty exactly for violations.
    pub failures: Vec<String>,
    /// Noteworthy but not a violation (unproven-class conjecture counterexamples).
    pub findings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Aggregates {
    pub population: u64,
    pub violations: u64,
    pub findings: u64,
    pub verdicts: BTreeMap<String, u64>,
    pub rule_hits: BTreeMap<String, u64>,
    /// Failures per `check:detail` key, detail truncated at the first `@`.
    pub failure_counts: BTreeMap<String, u64>,
}

impl Aggregates {
    pub fn from_records(records: &[Record]) -> Self {
        let mut a = Aggregates {
            population: records.len() as u64,
            ..Default::default()
        };
        for r in records {
            *a.verdicts
                .entry(r.verdict.as_str().to_string())
                .or_default() += 1;
            if r.verdict == Verdict::Violation {
                a.violations += 1;
            }
            a.findings += r.findings.len() as u64;
            for rule in &r.rules {
                *a.rule_hits.entry(rule.clone()).or_default() += 1;
            }
            for f in &r.failures {
                let key = f.split('@').next().unwrap_or(f).to_string();
                *a.failure_counts.entry(key).or_default() += 1;
            }
        }
        a
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Environment {
    pub schema_version: u32,
    pub crate_version: String,
    pub config: CampaignConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<Record>,
    pub aggregates: Aggregates,
    pub environment: Environment,
}

impl VerificationReport {
    pub fn has_violations(&self) -> bool {
        self.aggregates.violations > 0
    }
}

fn population(p: &Population) -> Result<Vec<Semigroup>, HarnessError> {
    Ok(match p {
        Population::Genus(g) => families::semigroups_up_to_genus(*g)?,
        Population::Explicit(specs) => specs.iter().map(|s| s.build()).collect::<Result<_, _>>()?,
        Population::Family(FamilySpec::Suzuki { n_max }) => (1..=*n_max)
            .map(families::suzuki)
            .collect::<Result<_, _>>()?,
        Population::Family(FamilySpec::Aas {
            seed,
            count,
            mu_min,
            mu_max,
        }) => sample_aas(*seed, *count, *mu_min, *mu_max)
            .into_iter()
            .map(|a| a.semigroup)
            .collect(),
    })
}

/// Every check on one semigroup.
pub fn verify_one(s: &Semigroup, checks: &BTreeSet<Check>) -> Record {
    let rec = InvariantRecord::compute(s);
    let table = NuTable::compute(s);
    let sm = table.s_m;
    let mut failures = Vec::new();
    let mut findings = Vec::new();
    let mut prediction = None;
    let mut rules = Vec::new();

    if checks.contains(&Check::Predictor) {
        match applicable_rules(s, &rec) {
            Ok(hits) => {
                for h in hits {
                    if !h.conclusion.admits(sm as i64) {
                        failures.push(format!("rule:{}@{}", h.rule, h.conclusion));
                    }
                    rules.push(h.rule);
                }
            }
            Err(e) => failures.push(format!("predictor:{e}")),
        }
        match predict_sm(s, &rec) {
            Ok(p) => {
                if !p.admits(sm as i64) {
                    failures.push(format!("prediction:{}", p.rule));
                }
                prediction = Some(p);
            }
            Err(e) => failures.push(format!("inconsistent:{e}")),
        }
    }

    if checks.contains(&Check::Conjecture) && !rec.flags.ordinary {
        let bound = rec.conjecture_value();
        if (sm as i64) < bound {
            let reasons = conjecture_reasons(s, &rec);
            if reasons.is_empty() {
                findings.push(format!("conjecture:counterexample@s_m={sm}<{bound}"));
            } else {
                failures.push(format!("conjecture:{}@s_m={sm}<{bound}", reasons.join("+")));
            }
        }
    }

    if checks.contains(&Check::Tail) {
        let g = s.genus();
        let c = s.conductor();
        let d = rec.d;
        for w in table.entries.windows(2) {
            if w[0].element > 2 * d && w[1].nu < w[0].nu {
                failures.push(format!("tail:monotone@{}", w[0].element));
            }
        }
        for e in &table.entries {
            if e.element + 1 >= 2 * c && e.nu + g != e.index + 1 {
                failures.push(format!("tail:formula@{}", e.element));
            }
        }
    }

    if checks.contains(&Check::Table33) && !rec.flags.ordinary {
        for x in s.members_upto(2 * s.conductor() - 1) {
            if let Err(e) = decompose_eta(s, &rec, x) {
                failures.push(format!("table33:{e}@{x}"));
            }
        }
    }

    if checks.contains(&Check::Diffbounds) && !rec.flags.ordinary {
        for x in s.members_upto(2 * rec.d) {
            if x < 2 * rec.d && s.contains(x + 1) && !matches!(diff_bounds_check(s, x), Ok(true)) {
                failures.push(format!("diffbounds:@{x}"));
            }
        }
    }

    if checks.contains(&Check::Relations) && !rec.flags.ordinary {
        for id in relation_failures(&Facts::new(s, &rec)) {
            failures.push(format!("relation:{id}"));
        }
        let f = equivalence_flags(&rec);
        if !f.iter().all(|&b| b == f[0]) {
            failures.push("relation:Prop2.5.2-booleans".to_string());
        }
    }

    if checks.contains(&Check::Apery) {
        failures.extend(apery_failures(s, &rec));
    }

    let verdict = if !failures.is_empty() {
        Verdict::Violation
    } else {
        match prediction.as_ref().map(|p| p.kind) {
            Some(PredictionKind::Range) => Verdict::InRange,
            Some(PredictionKind::LowerBoundOnly) => Verdict::LbOnlyOk,
            _ => Verdict::Match,
        }
    };
    Record {
        id: s.to_string(),
        gaps: s.gaps().to_vec(),
        genus: rec.genus,
        e: rec.e,
        c: rec.c,
        d: rec.d,
        c_sub: rec.c_sub,
        d_prime: rec.d_prime,
        ell: rec.ell,
        tau: rec.tau,
        s_tilde: rec.s_tilde,
        t: rec.t,
        oracle_sm: sm,
        prediction,
        rules,
        verdict,
        failures,
        findings,
    }
}

fn apery_failures(s: &Semigroup, rec: &InvariantRecord) -> Vec<String> {
    let mut out = Vec::new();
    let e = rec.e;
    let ap = s.apery_set();
    let mut residues: Vec<u64> = ap.iter().map(|w| w % e).collect();
    residues.sort_unstable();
    residues.dedup();
    if ap.len() as u64 != e || residues.len() as u64 != e {
        out.push("apery:residues".to_string());
    }
    if ap
        .iter()
        .any(|&w| !s.contains(w) || (w >= e && s.contains(w - e)))
    {
        out.push("apery:minimality".to_string());
    }
    if symmetric_via_apery(s) != rec.flags.symmetric {
        out.push("apery:symmetry".to_string());
    }
    // Suzuki shapes: compare against the closed-form matrix.
    let gens = s.minimal_generators();
    if let [m0, m1, m2, n] = gens[..] {
        let a = m1 - m0;
        if m0 == 2 * a * a && m2 == m0 + 2 * a && n == m2 + 1 && a.is_power_of_two() {
            match apery_set_suzuki_form(a) {
                Ok(closed) if closed.elements == ap => {}
                _ => out.push("apery:suzuki-form".to_string()),
            }
        }
    }
    out
}

pub fn verify_campaign(cfg: &CampaignConfig) -> Result<VerificationReport, HarnessError> {
    if cfg.checks.is_empty() {
        return Err(HarnessError::NoChecks);
    }
    let pop = population(&cfg.population)?;
    let run = || {
        pop.par_iter()
            .map(|s| verify_one(s, &cfg.checks))
            .collect::<Vec<_>>()
    };
    let records = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(std::io::Error::other)?
            .install(run),
        None => run(),
    };
    let aggregates = Aggregates::from_records(&records);
    Ok(VerificationReport {
        records,
        aggregates,
        environment: Environment {
            schema_version: SCHEMA_VERSION,
            crate_version: env!("CARGO_PKG_VERSION").to_string(),
            config: cfg.clone(),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(HarnessError::UnknownFormat(other.to_string())),
        }
    }
}

pub const CSV_HEADER: [&str; 17] = [
    "id",
    "genus",
    "e",
    "c",
    "d",
    "c_sub",
    "d_prime",
    "ell",
    "tau",
    "s_tilde",
    "t",
    "oracle_sm",
    "pred_kind",
    "pred_lo",
    "pred_hi",
    "rule",
    "verdict",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Serialize the report. JSON keys come out sorted because the value goes
/// through `serde_json::Value`, whose maps are ordered.
pub fn report_to_string(
    report: &VerificationReport,
    format: Format,
) -> Result<String, HarnessError> {
    match format {
        Format::Json => {
            let v = serde_json::to_value(report)?;
            let mut s = serde_json::to_string_pretty(&v)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for r in &report.records {
                let p = r.prediction.as_ref();
                w.write_record([
                    r.id.clone(),
                    r.genus.to_string(),
                    r.e.to_string(),
                    r.c.to_string(),
                    r.d.to_string(),
                    r.c_sub.to_string(),
                    opt(r.d_prime),
                    r.ell.to_string(),
                    r.tau.to_string(),
                    r.s_tilde.to_string(),
                    r.t.to_string(),
                    r.oracle_sm.to_string(),
                    p.map(|p| p.kind.as_str().to_string()).unwrap_or_default(),
                    opt(p.and_then(|p| p.lo)),
                    opt(p.and_then(|p| p.hi)),
                    p.map(|p| p.rule.clone()).unwrap_or_default(),
                    r.verdict.as_str().to_string(),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

pub fn report_emit(
    report: &VerificationReport,
    format: Format,
    path: &Path,
) -> Result<(), HarnessError> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(report_to_string(report, format)?.as_bytes())?;
    Ok(())
}

pub fn report_from_json(s: &str) -> Result<VerificationReport, HarnessError> {
    Ok(serde_json::from_str(s)?)
}
