//! Command-line front end.
//!
//! [`run`] takes a parsed [`Cli`] and returns the text for stdout and stderr
//! together with the process exit code, so the binary is a thin wrapper and
//! the whole surface can be tested in-process.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 capacity guard tripped.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::enumerate::{count_avoiders_with, SearchConfig, DEFAULT_NODE_LIMIT, NODE_LIMIT_ENV};
use crate::error::{Error, Result};
use crate::formulas::identity_check;
use crate::pattern::PatternSet;
use crate::registry::{count_by_method, recognize, Method};
use crate::series::{egf_case3, egf_case4, egf_chain, egf_d, egf_to_counts, DEFAULT_ORDER};
use crate::symmetry::{canonical_form, symmetry_orbit};
use crate::wilf::{classify_pairs_with, table1, DEFAULT_DEPTH};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "signperm", version, about = "Count and classify signed permutations avoiding signed patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Maximum number of search-tree nodes for one brute-force count.
    #[arg(long, global = true, env = NODE_LIMIT_ENV, default_value_t = DEFAULT_NODE_LIMIT)]
    pub node_limit: u64,
}

/// Alias kept for callers that think of the parsed command line as a run configuration.
pub type RunConfig = Cli;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Formula,
    Recurrence,
    Series,
    /// Every method the pattern set supports, checked against each other.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EgfName {
    D,
    Chain,
    Case3,
    Case4,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Count for this single n.
    #[arg(long, conflicts_with = "nmax", required_unless_present = "nmax")]
    pub n: Option<usize>,
    /// Count for every n from 0 to this value.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Number of signs.
    #[arg(long)]
    pub r: u32,
    /// Pattern set, e.g. "1^1 2^2; 2^1 1^3".
    #[arg(long, allow_hyphen_values = true)]
    pub patterns: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
    pub method: MethodArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count signed permutations avoiding a pattern set.
    Count(CountArgs),
    /// Symmetry orbit, canonical form and recognized families of a pattern set.
    Orbit {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        patterns: String,
    },
    /// Wilf classes of pairs of 2-letter signed patterns.
    Classify {
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        nmax: usize,
    },
    /// Recompute the 17-row reference table of pattern pairs at r = 5.
    #[command(name = "verify-table1")]
    VerifyTable1,
    /// Coefficients of a named exponential generating function.
    Series {
        #[arg(long, value_enum)]
        egf: EgfName,
        #[arg(long)]
        r: u32,
        /// Chain length, for `--egf chain`.
        #[arg(long)]
        l: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Check the two-sided summation identity for n = 0..=nmax.
    Identity {
        #[arg(long)]
        l: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        nmax: usize,
    },
}

/// What a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            exit_code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_status(stdout: String, pass: bool, failure_note: &str) -> Self {
        Self {
            exit_code: if pass { EXIT_OK } else { EXIT_MISMATCH },
            stdout,
            stderr: if pass { String::new() } else { format!("{failure_note}\n") },
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Capacity { .. } => EXIT_CAPACITY,
        _ => EXIT_USAGE,
    }
}

/// Parses a pattern-set literal against sign bound r.
pub fn parse_pattern_set(literal: &str, r: u32) -> Result<PatternSet> {
    PatternSet::parse(literal, r)
}

pub fn run(cli: &Cli) -> Outcome {
    let config = SearchConfig::default().with_node_limit(cli.node_limit);
    let result = match &cli.command {
        Command::Count(args) => run_count(args, cli.format, &config),
        Command::Orbit { r, patterns } => run_orbit(*r, patterns, cli.format),
        Command::Classify { r, nmax } => run_classify(*r, *nmax, cli.format, &config),
        Command::VerifyTable1 => run_table1(cli.format, &config),
        Command::Series { egf, r, l, order } => run_series(*egf, *r, *l, *order, cli.format),
        Command::Identity { l, r, nmax } => run_identity(*l, *r, *nmax, cli.format),
    };
    result.unwrap_or_else(|e| Outcome {
        exit_code: exit_code_for(&e),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}

/// Parses `args` (including the program name) and runs them. Clap errors,
/// `--help` and `--version` come back as outcomes too.
pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    exit_code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

fn check_r(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::Validation("r must be at least 1".into()));
    }
    Ok(())
}

fn strings(v: &[BigUint]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

struct MethodResult {
    method: Method,
    family: Option<String>,
    /// `(n, count)` pairs.
    counts: Vec<(usize, BigUint)>,
}

fn counts_for(
    set: &PatternSet,
    r: u32,
    ns: &[usize],
    method: Method,
    config: &SearchConfig,
) -> Result<MethodResult> {
    let top = *ns.last().expect("at least one n");
    if method == Method::Brute {
        let counts = ns
            .iter()
            .map(|&n| Ok((n, count_avoiders_with(n, r, set, config)?)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(MethodResult {
            method,
            family: None,
            counts,
        });
    }
    let all = count_by_method(set, r, top, method, config)?;
    Ok(MethodResult {
        method,
        family: all.family.map(|f| f.to_string()),
        counts: ns.iter().map(|&n| (n, all.counts[n].clone())).collect(),
    })
}

fn run_count(args: &CountArgs, format: Format, config: &SearchConfig) -> Result<Outcome> {
    check_r(args.r)?;
    let set = parse_pattern_set(&args.patterns, args.r)?;
    let ns: Vec<usize> = match (args.n, args.nmax) {
        (Some(n), _) => vec![n],
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => return Err(Error::Validation("one of --n or --nmax is required".into())),
    };

    let results: Vec<MethodResult> = match args.method {
        MethodArg::All => {
            let mut out = vec![counts_for(&set, args.r, &ns, Method::Brute, config)?];
            for m in [Method::Formula, Method::Recurrence, Method::Series] {
                match counts_for(&set, args.r, &ns, m, config) {
                    Ok(res) => out.push(res),
                    Err(Error::Domain(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            out
        }
        single => {
            let m = match single {
                MethodArg::Brute => Method::Brute,
                MethodArg::Formula => Method::Formula,
                MethodArg::Recurrence => Method::Recurrence,
                MethodArg::Series => Method::Series,
                MethodArg::All => unreachable!(),
            };
            vec![counts_for(&set, args.r, &ns, m, config)?]
        }
    };
    let agree = results.windows(2).all(|w| w[0].counts == w[1].counts);

    let mut out = String::new();
    match format {
        Format::Text => {
            if results.len() == 1 && ns.len() == 1 {
                writeln!(out, "{}", results[0].counts[0].1).unwrap();
            } else {
                for res in &results {
                    if results.len() > 1 {
                        let fam = res.family.as_deref().unwrap_or("enumeration");
                        writeln!(out, "# {} ({fam})", res.method).unwrap();
                    }
                    for (n, c) in &res.counts {
                        writeln!(out, "{n}\t{c}").unwrap();
                    }
                }
                if results.len() > 1 {
                    writeln!(out, "# methods {}", if agree { "agree" } else { "DISAGREE" }).unwrap();
                }
            }
        }
        Format::Json => {
            let methods: Vec<Value> = results
                .iter()
                .map(|res| {
                    json!({
                        "method": res.method.name(),
                        "family": res.family,
                        "n": res.counts.iter().map(|(n, _)| *n).collect::<Vec<_>>(),
                        "counts": res.counts.iter().map(|(_, c)| c.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let doc = json!({
                "r": args.r,
                "patterns": set.to_string(),
                "methods": methods,
                "agree": agree,
            });
            writeln!(out, "{doc}").unwrap();
        }
        Format::Csv => {
            writeln!(out, "method,n,count").unwrap();
            for res in &results {
                for (n, c) in &res.counts {
                    writeln!(out, "{},{n},{c}", res.method).unwrap();
                }
            }
        }
    }
    Ok(Outcome::with_status(out, agree, "methods disagree"))
}

fn run_orbit(r: u32, literal: &str, format: Format) -> Result<Outcome> {
    check_r(r)?;
    let set = parse_pattern_set(literal, r)?;
    let orbit = symmetry_orbit(&set)?;
    let canon = canonical_form(&set)?;
    let families: Vec<String> = recognize(&set)?.iter().map(|f| f.to_string()).collect();
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "canonical: {canon}").unwrap();
            writeln!(out, "orbit size: {}", orbit.len()).unwrap();
            let fam = if families.is_empty() { "none".to_string() } else { families.join(", ") };
            writeln!(out, "families: {fam}").unwrap();
            for s in &orbit {
                writeln!(out, "  {s}").unwrap();
            }
        }
        Format::Json => {
            let doc = json!({
                "r": r,
                "patterns": set.to_string(),
                "canonical": canon.to_string(),
                "orbit": orbit.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                "families": families,
            });
            writeln!(out, "{doc}").unwrap();
        }
        Format::Csv => {
            writeln!(out, "member,is_canonical").unwrap();
            for s in &orbit {
                writeln!(out, "\"{s}\",{}", *s == canon).unwrap();
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn run_classify(r: u32, nmax: usize, format: Format, config: &SearchConfig) -> Result<Outcome> {
    check_r(r)?;
    let classes = classify_pairs_with(r, nmax, config)?;
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "r={r}: {} classes (fingerprints through n={nmax})", classes.len()).unwrap();
            for (i, c) in classes.iter().enumerate() {
                let counts = strings(&c.fingerprint.counts).join(",");
                let note = if c.merged_by_fingerprint() {
                    " [orbits not separated at this depth]"
                } else {
                    ""
                };
                writeln!(out, "class {}: {counts} ({} pairs){note}", i + 1, c.pair_count).unwrap();
                for m in &c.members {
                    writeln!(out, "  {m}").unwrap();
                }
            }
        }
        Format::Json => {
            let doc = json!({
                "r": r,
                "nmax": nmax,
                "class_count": classes.len(),
                "classes": classes,
            });
            writeln!(out, "{doc}").unwrap();
        }
        Format::Csv => {
            writeln!(out, "class,member,pairs_in_class,fingerprint").unwrap();
            for (i, c) in classes.iter().enumerate() {
                let counts = strings(&c.fingerprint.counts).join(" ");
                for m in &c.members {
                    writeln!(out, "{},\"{m}\",{},{counts}", i + 1, c.pair_count).unwrap();
                }
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn run_table1(format: Format, config: &SearchConfig) -> Result<Outcome> {
    let rows = table1(config)?;
    let pass = rows.iter().all(|r| r.matches);
    let mut out = String::new();
    match format {
        Format::Text => {
            for row in &rows {
                let expected: Vec<String> = row.expected.iter().map(|v| v.to_string()).collect();
                writeln!(
                    out,
                    "row {:2} {} {:<18} expected {} computed {}",
                    row.row,
                    if row.matches { "PASS" } else { "FAIL" },
                    row.patterns,
                    expected.join(","),
                    row.computed.join(",")
                )
                .unwrap();
            }
            let failed = rows.iter().filter(|r| !r.matches).count();
            writeln!(out, "{} of {} rows match", rows.len() - failed, rows.len()).unwrap();
        }
        Format::Json => {
            writeln!(out, "{}", json!({ "rows": rows, "all_match": pass })).unwrap();
        }
        Format::Csv => {
            writeln!(out, "row,patterns,expected,computed,match").unwrap();
            for row in &rows {
                let expected: Vec<String> = row.expected.iter().map(|v| v.to_string()).collect();
                writeln!(
                    out,
                    "{},\"{}\",{},{},{}",
                    row.row,
                    row.patterns,
                    expected.join(" "),
                    row.computed.join(" "),
                    row.matches
                )
                .unwrap();
            }
        }
    }
    Ok(Outcome::with_status(out, pass, "table mismatch"))
}

fn run_series(egf: EgfName, r: u32, l: Option<u32>, order: usize, format: Format) -> Result<Outcome> {
    check_r(r)?;
    let f = match egf {
        EgfName::D => egf_d(r, order)?,
        EgfName::Chain => {
            let l = l.ok_or_else(|| Error::Validation("--egf chain needs --l".into()))?;
            egf_chain(r, l, order)?
        }
        EgfName::Case3 => egf_case3(r, order)?,
        EgfName::Case4 => egf_case4(r, order)?,
    };
    let counts = egf_to_counts(&f, order)?;
    let mut out = String::new();
    match format {
        Format::Text => {
            writeln!(out, "{f}").unwrap();
            writeln!(out, "counts: {}", strings(&counts).join(",")).unwrap();
        }
        Format::Json => {
            let pairs: Vec<[String; 2]> = f
                .to_pairs()
                .into_iter()
                .map(|(p, q)| [p.to_string(), q.to_string()])
                .collect();
            let doc = json!({
                "egf": format!("{egf:?}").to_lowercase(),
                "r": r,
                "l": l,
                "order": order,
                "coefficients": pairs,
                "counts": strings(&counts),
            });
            writeln!(out, "{doc}").unwrap();
        }
        Format::Csv => {
            writeln!(out, "n,numerator,denominator,count").unwrap();
            for (n, ((p, q), c)) in f.to_pairs().into_iter().zip(&counts).enumerate() {
                writeln!(out, "{n},{p},{q},{c}").unwrap();
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn run_identity(l: u32, r: u32, nmax: usize, format: Format) -> Result<Outcome> {
    let checks = (0..=nmax)
        .map(|n| identity_check(n, r, l))
        .collect::<Result<Vec<_>>>()?;
    let pass = checks.iter().all(|c| c.equal);
    let mut out = String::new();
    match format {
        Format::Text => {
            for c in &checks {
                writeln!(
                    out,
                    "n={} {} lhs={} rhs={}",
                    c.n,
                    if c.equal { "equal" } else { "NOT EQUAL" },
                    c.lhs,
                    c.rhs
                )
                .unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<Value> = checks
                .iter()
                .map(|c| json!({ "n": c.n, "lhs": c.lhs.to_string(), "rhs": c.rhs.to_string(), "equal": c.equal }))
                .collect();
            writeln!(out, "{}", json!({ "l": l, "r": r, "rows": rows, "all_equal": pass })).unwrap();
        }
        Format::Csv => {
            writeln!(out, "n,lhs,rhs,equal").unwrap();
            for c in &checks {
                writeln!(out, "{},{},{},{}", c.n, c.lhs, c.rhs, c.equal).unwrap();
            }
        }
    }
    Ok(Outcome::with_status(out, pass, "identity fails"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run_from_args(std::iter::once("signperm").chain(args.iter().copied()))
    }

    #[test]
    fn count_brute() {
        let o = run_args(&["count", "--n", "3", "--r", "5", "--patterns", "1^1 2^1; 2^1 1^1", "--method", "brute"]);
        assert_eq!(o.exit_code, 0, "{o:?}");
        assert_eq!(o.stdout.trim(), "672");
    }

    #[test]
    fn count_formula_at_zero() {
        let o = run_args(&["count", "--n", "0", "--r", "7", "--patterns", "1^1 2^1", "--method", "formula"]);
        assert_eq!(o.exit_code, 0, "{o:?}");
        assert_eq!(o.stdout.trim(), "1");
    }

    #[test]
    fn usage_errors() {
        let o = run_args(&["count", "--n", "3", "--r", "3", "--patterns", "1^1 1^2"]);
        assert_eq!(o.exit_code, EXIT_USAGE);
        assert!(o.stderr.contains("not a permutation"), "{}", o.stderr);
        let o = run_args(&["count", "--r", "3", "--patterns", "1^1"]);
        assert_eq!(o.exit_code, EXIT_USAGE);
        let o = run_args(&["bogus"]);
        assert_eq!(o.exit_code, EXIT_USAGE);
    }

    #[test]
    fn capacity_exit_code() {
        let o = run_args(&["--node-limit", "100", "count", "--n", "6", "--r", "3", "--patterns", "1^1 2^1"]);
        assert_eq!(o.exit_code, EXIT_CAPACITY, "{o:?}");
    }

    #[test]
    fn identity_subcommand() {
        let o = run_args(&["identity", "--l", "1", "--r", "3", "--nmax", "8"]);
        assert_eq!(o.exit_code, 0);
        assert_eq!(o.stdout.lines().count(), 9);
        assert!(o.stdout.lines().all(|l| l.contains(" equal ")));
    }
}
