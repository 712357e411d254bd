//! `lampk`: command-line front end with JSON output on stdout.
//!
//! Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error,
//! 3 self-check stopped by its time budget.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use lampk::colimit::{LevelMaps, DEFAULT_COLUMN_BUDGET};
use lampk::fullshift::{self, CylinderSpec};
use lampk::grouprep::{csalgebras_isomorphic_abelian_case, RawGroup};
use lampk::kgroups::{self, K1Report};
use lampk::selfcheck::{self, Status, DEFAULT_SEED};
use lampk::word::{enumerate_canonical, CanonicalWord, Word};
use lampk::{Error, GroupRepData, ZChain};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "lampk",
    version,
    about = "K-theory of lamplighter groups and full-shift cohomology, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// (|F|, sorted irrep dimensions, |F^ab|)
    Fingerprint {
        #[arg(long)]
        group: String,
    },
    /// Decide whether the C*-algebras of the two lamplighter groups are isomorphic
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        other: String,
    },
    /// Canonical shift-orbit representatives with support in [0, max-len)
    Orbits {
        #[arg(long)]
        group: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// K0 bases of both sides of the assembly map and the bijection between them
    K0Basis {
        #[arg(long)]
        group: String,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// K1 of the group C*-algebra
    K1 {
        #[arg(long)]
        group: String,
    },
    /// Unimodularity of the truncated direct-sum matrix
    ClaimCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        levels: usize,
    },
    /// Seeded kernel/cokernel checks of Id - alpha
    PvCheck {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        window: i64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Trace of the minimal projection indexed by a word
    Trace {
        #[arg(long)]
        group: String,
        /// `{"<pos>": irrep, ...}` or `{"entries": {...}}`
        #[arg(long)]
        word: String,
    },
    /// Positive generator of the trace image at a level
    TraceImage {
        #[arg(long)]
        group: String,
        #[arg(long)]
        level: usize,
    },
    /// Split f = (g - g∘α) + h
    Decompose {
        #[arg(long)]
        group: String,
        #[arg(long = "fn")]
        function: PathBuf,
    },
    /// Compare the exact coboundary test with periodic-orbit sums
    Livsic {
        #[arg(long)]
        group: String,
        #[arg(long = "fn")]
        function: PathBuf,
        #[arg(long)]
        max_period: usize,
    },
    /// Chain whose function is the indicator of a cylinder
    CylinderExpand {
        #[arg(long)]
        group: String,
        #[arg(long)]
        spec: String,
    },
    /// Run the acceptance checks
    Selfcheck {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Time budget in milliseconds
        #[arg(long, default_value_t = 300_000)]
        budget_ms: u64,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    /// Already reported on stdout; carries the exit code.
    Report(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::UnknownGroup { .. } => "unknown-group",
        Error::DimensionCount { .. } => "dimension-count",
        Error::TrivialRep(_) => "trivial-rep",
        Error::TrivialGroup(_) => "trivial-group",
        Error::ZeroDimension => "zero-dimension",
        Error::AbelianOrder { .. } => "abelian-order",
        Error::IrrepOutOfRange { .. } => "irrep-out-of-range",
        Error::Argument(_) => "argument",
        Error::Truncation { .. } => "truncation",
        Error::Budget { .. } => "budget",
        Error::ClaimViolation { .. } => "claim-violation",
        Error::NonAbelian(_) => "non-abelian",
    }
}

fn parse_group(spec: &str) -> Result<GroupRepData, Failure> {
    if spec.trim_start().starts_with('{') {
        let raw: RawGroup = serde_json::from_str(spec)
            .map_err(|e| Failure::Usage(format!("malformed group JSON: {e}")))?;
        Ok(GroupRepData::from_raw(raw)?)
    } else {
        Ok(GroupRepData::builtin(spec)?)
    }
}

fn parse_word(text: &str) -> Result<Word, Failure> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Failure::Usage(format!("malformed word JSON: {e}")))?;
    let value = if value.get("entries").is_some() {
        value
    } else {
        json!({ "entries": value })
    };
    serde_json::from_value(value).map_err(|e| Failure::Usage(format!("malformed word JSON: {e}")))
}

fn read_chain(path: &PathBuf) -> Result<ZChain, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("malformed chain JSON in {}: {e}", path.display())))
}

fn check_chain(group: &GroupRepData, chain: &ZChain) -> Result<(), Failure> {
    for w in chain.words() {
        w.check_letters(group)?;
    }
    Ok(())
}

fn word_table(words: &[CanonicalWord]) -> String {
    words
        .iter()
        .enumerate()
        .map(|(i, w)| format!("{i:>6}  {w}\n"))
        .collect()
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

enum Output {
    Json(Value),
    Text(String),
}

fn run(command: Command) -> Result<Output, Failure> {
    let out = match command {
        Command::Fingerprint { group } => {
            let g = parse_group(&group)?;
            json!({ "group": g.name(), "fingerprint": to_value(&g.fingerprint()) })
        }
        Command::Classify { group, other } => {
            let (a, b) = (parse_group(&group)?, parse_group(&other)?);
            json!({
                "left": a.name(),
                "right": b.name(),
                "decision": to_value(&csalgebras_isomorphic_abelian_case(&a, &b)),
            })
        }
        Command::Orbits {
            group,
            max_len,
            format,
        } => {
            let g = parse_group(&group)?;
            let words = enumerate_canonical(&g, max_len)?;
            match format {
                Format::Table => return Ok(Output::Text(word_table(&words))),
                Format::Json => {
                    json!({ "group": g.name(), "max_len": max_len, "count": words.len(), "words": to_value(&words) })
                }
            }
        }
        Command::K0Basis {
            group,
            max_len,
            format,
        } => {
            let g = parse_group(&group)?;
            let k = kgroups::k_groups(&g, max_len)?;
            match format {
                Format::Table => {
                    let mut s = String::from(" index  topological  <->  analytic\n");
                    for &(a, b) in &k.bijection {
                        s.push_str(&format!(
                            "{a:>6}  {:<11}  <->  {}\n",
                            k.topological.k0_basis[a].to_string(),
                            k.analytic.k0_basis[b]
                        ));
                    }
                    return Ok(Output::Text(s));
                }
                Format::Json => {
                    json!({ "group": g.name(), "max_len": max_len, "k_groups": to_value(&k) })
                }
            }
        }
        Command::K1 { group } => {
            parse_group(&group)?;
            to_value(&K1Report::analytic())
        }
        Command::ClaimCheck { group, levels } => {
            let g = parse_group(&group)?;
            let budget = match std::env::var("LAMPK_BUDGET_COLS") {
                Ok(v) => v.trim().parse::<u128>().map_err(|_| {
                    Failure::Usage(format!("LAMPK_BUDGET_COLS must be an integer, got `{v}`"))
                })?,
                Err(_) => DEFAULT_COLUMN_BUDGET,
            };
            let start = Instant::now();
            let cert = LevelMaps::new(g, levels)?.claim_check(budget)?;
            let mut v = to_value(&cert);
            v["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
            v
        }
        Command::PvCheck {
            group,
            samples,
            window,
            seed,
        } => {
            let g = parse_group(&group)?;
            if window < 0 {
                return Err(Failure::Usage("window must be non-negative".into()));
            }
            let report = kgroups::pv_check(&g, samples, window, seed);
            let passed = report.passed();
            let v = to_value(&report);
            if !passed {
                emit(&v);
                return Err(Failure::Report(1));
            }
            v
        }
        Command::Trace { group, word } => {
            let g = parse_group(&group)?;
            to_value(&kgroups::trace_of_word(&g, &parse_word(&word)?)?)
        }
        Command::TraceImage { group, level } => {
            let g = parse_group(&group)?;
            to_value(&kgroups::trace_image_level(&g, level))
        }
        Command::Decompose { group, function } => {
            let g = parse_group(&group)?;
            fullshift::require_abelian(&g)?;
            let f = read_chain(&function)?;
            check_chain(&g, &f)?;
            to_value(&fullshift::coboundary_decompose(&g, &f)?)
        }
        Command::Livsic {
            group,
            function,
            max_period,
        } => {
            let g = parse_group(&group)?;
            fullshift::require_abelian(&g)?;
            let f = read_chain(&function)?;
            to_value(&fullshift::livsic_check(&g, &f, max_period)?)
        }
        Command::CylinderExpand { group, spec } => {
            let g = parse_group(&group)?;
            let spec: CylinderSpec = serde_json::from_str(&spec)
                .map_err(|e| Failure::Usage(format!("malformed cylinder JSON: {e}")))?;
            to_value(&fullshift::cylinder_to_chain(&g, &spec)?)
        }
        Command::Selfcheck { seed, budget_ms } => {
            let report = selfcheck::run_all(seed, Duration::from_millis(budget_ms));
            for o in &report.outcomes {
                let tag = match o.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                eprintln!("[{tag}] {}: {}", o.id, o.name);
            }
            let v = to_value(&report);
            let code = if report.failed() {
                1
            } else if !report.complete() {
                3
            } else {
                0
            };
            if code != 0 {
                emit(&v);
                return Err(Failure::Report(code));
            }
            v
        }
    };
    Ok(Output::Json(out))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(v: &Value) {
    let _ = writeln!(
        std::io::stdout().lock(),
        "{}",
        serde_json::to_string_pretty(v).expect("json")
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output::Json(v)) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Ok(Output::Text(s)) => {
            let _ = std::io::stdout().lock().write_all(s.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{}", json!({ "error": "usage", "message": msg }));
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!(
                "{}",
                json!({ "error": error_kind(&e), "message": e.to_string() })
            );
            ExitCode::from(1)
        }
        Err(Failure::Report(code)) => ExitCode::from(code),
    }
}
