use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ordbound::families::{self, symmetric_via_apery};
use ordbound::harness::{self, CampaignConfig, Format, Population};
use ordbound::nu::{oracle_sm, NuTable};
use ordbound::predict::{applicable_rules, predict_sm};
use ordbound::{InvariantRecord, Semigroup, SemigroupSpec};

#[derive(Parser)]
#[command(
    name = "ordbound",
    version,
    about = "Order-bound stabilization for numerical semigroups"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Generators, comma separated.
    #[arg(long, value_delimiter = ',')]
    gens: Option<Vec<u64>>,
    /// Gaps, comma separated.
    #[arg(long, value_delimiter = ',')]
    gaps: Option<Vec<u64>>,
    /// `{"gens":[..]}` or `{"gaps":[..],"c":n}`.
    #[arg(long)]
    json: Option<String>,
}

impl Input {
    fn semigroup(&self) -> Result<Semigroup, String> {
        let spec = match (&self.gens, &self.gaps, &self.json) {
            (Some(g), _, _) => SemigroupSpec::Gens { gens: g.clone() },
            (_, Some(g), _) => SemigroupSpec::Gaps {
                gaps: g.clone(),
                c: None,
            },
            (_, _, Some(j)) => serde_json::from_str(j).map_err(|e| e.to_string())?,
            _ => return Err("no semigroup given".into()),
        };
        spec.build().map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariant record as JSON.
    Invariants(Input),
    /// Table of nu values as JSON.
    Nu {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        upto: Option<u64>,
    },
    /// Oracle s_m next to the prediction and the rules that fired.
    Sm(Input),
    /// Prediction as JSON.
    Predict(Input),
    /// Every semigroup up to a genus, one JSON object per line.
    Enumerate {
        #[arg(long)]
        genus: u64,
        /// Comma separated: ordinary, nonordinary, acute, symmetric, key=value
        /// with key in e, c, d, ell, tau, genus.
        #[arg(long)]
        filter: Option<String>,
    },
    /// The Suzuki semigroup for `n`.
    Suzuki {
        #[arg(long)]
        n: u32,
    },
    /// Run a verification campaign.
    Verify {
        #[arg(long)]
        genus: u64,
        #[arg(
            long,
            default_value = "predictor,conjecture,table33,tail,relations,diffbounds"
        )]
        check: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        threads: Option<usize>,
    },
}

enum Fail {
    Usage(String),
    Violations,
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn record_json(s: &Semigroup) -> serde_json::Value {
    let rec = InvariantRecord::compute(s);
    json!({ "semigroup": s.to_string(), "spec": s.spec(), "invariants": rec })
}

fn passes(filter: &str, s: &Semigroup) -> Result<bool, String> {
    let r = InvariantRecord::compute(s);
    for term in filter.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let ok = match term {
            "ordinary" => r.flags.ordinary,
            "nonordinary" => !r.flags.ordinary,
            "acute" => r.flags.acute,
            "symmetric" => r.flags.symmetric,
            _ => {
                let (k, v) = term
                    .split_once('=')
                    .ok_or_else(|| format!("bad filter term {term:?}"))?;
                let v: u64 = v.parse().map_err(|_| format!("bad filter value {v:?}"))?;
                let have = match k {
                    "e" => r.e,
                    "c" => r.c,
                    "d" => r.d,
                    "ell" => r.ell,
                    "tau" => r.tau,
                    "genus" => r.genus,
                    _ => return Err(format!("unknown filter key {k:?}")),
                };
                have == v
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn run(cmd: Cmd) -> Result<(), Fail> {
    let usage = |e: String| Fail::Usage(e);
    match cmd {
        Cmd::Invariants(i) => print_json(&InvariantRecord::compute(&i.semigroup().map_err(usage)?)),
        Cmd::Nu { input, upto } => {
            let s = input.semigroup().map_err(usage)?;
            match upto {
                Some(n) => print_json(&NuTable::compute_upto(&s, n)),
                None => print_json(&NuTable::compute(&s)),
            }
        }
        Cmd::Sm(i) => {
            let s = i.semigroup().map_err(usage)?;
            let rec = InvariantRecord::compute(&s);
            let pred = predict_sm(&s, &rec).map_err(|e| usage(e.to_string()))?;
            let rules = applicable_rules(&s, &rec).map_err(|e| usage(e.to_string()))?;
            let rules: serde_json::Map<_, _> = rules
                .into_iter()
                .map(|h| (h.rule, json!(h.conclusion.to_string())))
                .collect();
            print_json(&json!({ "oracle_sm": oracle_sm(&s), "prediction": pred, "rules": rules }));
        }
        Cmd::Predict(i) => {
            let s = i.semigroup().map_err(usage)?;
            let rec = InvariantRecord::compute(&s);
            print_json(&predict_sm(&s, &rec).map_err(|e| usage(e.to_string()))?);
        }
        Cmd::Enumerate { genus, filter } => {
            let all = families::semigroups_up_to_genus(genus).map_err(|e| usage(e.to_string()))?;
            for s in &all {
                if let Some(f) = &filter {
                    if !passes(f, s).map_err(usage)? {
                        continue;
                    }
                }
                println!("{}", record_json(s));
            }
        }
        Cmd::Suzuki { n } => {
            let s = families::suzuki(n).map_err(|e| usage(e.to_string()))?;
            let rec = InvariantRecord::compute(&s);
            print_json(&json!({
                "n": n,
                "semigroup": s.to_string(),
                "generators": s.minimal_generators(),
                "apery": s.apery_set(),
                "symmetric": symmetric_via_apery(&s),
                "tau": rec.tau,
                "s_tilde": rec.s_tilde,
                "d": rec.d,
                "oracle_sm": oracle_sm(&s),
            }));
        }
        Cmd::Verify {
            genus,
            check,
            out,
            format,
            threads,
        } => {
            let checks = harness::parse_checks(&check).map_err(|e| usage(e.to_string()))?;
            let format: Format = format
                .parse()
                .map_err(|e: harness::HarnessError| usage(e.to_string()))?;
            let cfg = CampaignConfig {
                population: Population::Genus(genus),
                checks,
                threads,
            };
            let report = harness::verify_campaign(&cfg).map_err(|e| usage(e.to_string()))?;
            match out {
                Some(p) => {
                    harness::report_emit(&report, format, &p).map_err(|e| usage(e.to_string()))?
                }
                None => print!(
                    "{}",
                    harness::report_to_string(&report, format).map_err(|e| usage(e.to_string()))?
                ),
            }
            eprintln!(
                "population {} violations {} findings {}",
                report.aggregates.population,
                report.aggregates.violations,
                report.aggregates.findings
            );
            if report.has_violations() {
                return Err(Fail::Violations);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Violations) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
