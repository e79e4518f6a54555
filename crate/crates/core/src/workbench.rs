//! Command-line front end. The `qclique` binary is a thin wrapper around
//! [`run`], which keeps every command callable from tests.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or input error,
//! 3 search budget exhausted before the target was met. Machine-readable
//! output goes to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{compare_scenarios, singleton_bound, BoundQuery, BoundResult};
use crate::catalog::{
    paper2845_fixture_with, paper_code_2845, paper_code_27, recover_graph_2845, resolve_star_convention,
    Fixture, RECOVERY_BUDGET, RECOVERY_SEED,
};
use crate::code_space::check_clique;
use crate::dense::dense_cap_from_env;
use crate::error::{Error, Result};
use crate::formats::{
    fixture_to_json, parse_code_spec, parse_graph, parse_layout, render, report_to_json,
    search_outcome_to_json, vec_from_json, vec_to_json, VecJson,
};
use crate::kl::{kl_check_algebraic, kl_check_dense};
use crate::oracle::run_all;
use crate::search::{expand_generators, search, SearchMode, SearchOptions, SearchStatus};
use crate::zp::Modulus;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "qclique", version, about = "Graph-state codes over Z_p with noisy, half-noisy and noiseless channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the coding-clique conditions and Knill-Laflamme for a code file.
    Verify(VerifyArgs),
    /// Search for a coding clique on a graph and layout.
    Search(SearchArgs),
    /// Singleton bound, single point or CSV sweep.
    Bound(BoundArgs),
    /// Compare the bounds of two channel splits.
    Compare(CompareArgs),
    /// Run the randomized dense-oracle suites.
    Oracle(OracleArgs),
    /// Write the catalogued codes as JSON files.
    Fixtures(FixturesArgs),
    /// Print one catalogued code as JSON.
    Export(ExportArgs),
    /// Print every Z_p combination of the given generators.
    Expand(ExpandArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    Algebraic,
    Dense,
    Both,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub code_file: PathBuf,
    #[arg(long, value_enum, default_value_t = VerifyMode::Algebraic)]
    pub mode: VerifyMode,
    /// Also write the report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Dense-oracle amplitude cap (default from QCLIQUE_DENSE_CAP).
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Graph JSON (omit when --code is given).
    pub graph_file: Option<PathBuf>,
    /// Layout JSON (omit when --code is given).
    pub layout_file: Option<PathBuf>,
    /// Take graph, layout and distance from a code file.
    #[arg(long, conflicts_with_all = ["graph_file", "layout_file"])]
    pub code: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long = "target-k", value_parser = clap::value_parser!(u64).range(1..))]
    pub target_k: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    #[arg(long, value_enum, default_value_t = CliSearchMode::General)]
    pub mode: CliSearchMode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliSearchMode {
    General,
    Subgroup,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub e: usize,
    #[arg(long, default_value_t = 0)]
    pub ehalf: usize,
    /// e.g. `p=2,3;n=0..8;d=1..4` (unlisted keys take the single-point flags).
    #[arg(long)]
    pub sweep: Option<String>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub d: usize,
    /// Total number of p²-level channels.
    #[arg(long)]
    pub channels: usize,
    /// First split as `e,ehalf`.
    #[arg(long)]
    pub a: String,
    /// Second split as `e,ehalf`.
    #[arg(long)]
    pub b: String,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FixturesArgs {
    #[arg(long)]
    pub emit: PathBuf,
    /// Evaluation budget for the ten-vertex graph recovery.
    #[arg(long, default_value_t = RECOVERY_BUDGET)]
    pub recovery_budget: u64,
    #[arg(long, default_value_t = RECOVERY_SEED)]
    pub recovery_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FixtureName {
    Paper27,
    Paper2845,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, value_enum)]
    pub fixture: FixtureName,
    /// Run graph recovery for the ten-vertex code before exporting.
    #[arg(long)]
    pub recover: bool,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub n: usize,
    /// Generators as digit strings or comma-separated residues.
    pub generators: Vec<String>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Verify(a) => cmd_verify(&a, out, err),
        Command::Search(a) => cmd_search(&a, out, err),
        Command::Bound(a) => cmd_bound(&a, out),
        Command::Compare(a) => cmd_compare(&a, out),
        Command::Oracle(a) => cmd_oracle(&a, out),
        Command::Fixtures(a) => cmd_fixtures(&a, out, err),
        Command::Export(a) => cmd_export(&a, out),
        Command::Expand(a) => cmd_expand(&a, out),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Format(format!("writing output: {e}")))
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let spec = parse_code_spec(&read(&a.code_file)?)?;
    let cap = a.cap.unwrap_or_else(dense_cap_from_env);
    let clique = check_clique(&spec);
    let alg = matches!(a.mode, VerifyMode::Algebraic | VerifyMode::Both).then(|| kl_check_algebraic(&spec));
    let dense = match a.mode {
        VerifyMode::Dense | VerifyMode::Both => Some(kl_check_dense(&spec, cap)?),
        VerifyMode::Algebraic => None,
    };
    let report = alg.as_ref().or(dense.as_ref()).unwrap();
    let mut value = report_to_json(report);
    let agrees = match (&alg, &dense) {
        (Some(x), Some(y)) => Some(x == y),
        _ => None,
    };
    let obj = value.as_object_mut().unwrap();
    obj.insert("clique_conditions_passed".into(), json!(clique.passed));
    obj.insert("clique_violations".into(), json!(clique.violations.len()));
    if let Some(agree) = agrees {
        obj.insert("dense_agrees".into(), json!(agree));
    }
    let text = render(&value);
    if let Some(path) = &a.out {
        fs::write(path, &text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    }
    emit(out, &text)?;
    let passed = clique.passed && report.passed && agrees != Some(false);
    if !passed {
        let _ = writeln!(
            err,
            "verification failed: {} clique-condition violations, {} KL violations",
            clique.violations.len(),
            report.violations.len()
        );
        if agrees == Some(false) {
            let _ = writeln!(err, "algebraic and dense verifiers disagree");
        }
    }
    Ok(if passed { EXIT_PASS } else { EXIT_FAIL })
}

pub fn cmd_search(a: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (graph, layout, file_d) = match (&a.code, &a.graph_file, &a.layout_file) {
        (Some(code), _, _) => {
            let spec = parse_code_spec(&read(code)?)?;
            (spec.graph, spec.layout, Some(spec.d))
        }
        (None, Some(g), Some(l)) => (parse_graph(&read(g)?)?, parse_layout(&read(l)?)?, None),
        _ => {
            return Err(Error::InvalidParameters(
                "give GRAPH_FILE and LAYOUT_FILE, or --code".into(),
            ))
        }
    };
    let d = a
        .d
        .or(file_d)
        .ok_or_else(|| Error::InvalidParameters("--d is required".into()))?;
    let opts = SearchOptions {
        target_k: a.target_k.map(|k| k as usize),
        node_budget: Some(a.budget),
        mode: match a.mode {
            CliSearchMode::General => SearchMode::General,
            CliSearchMode::Subgroup => SearchMode::Subgroup,
        },
        seed: a.seed,
    };
    let outcome = search(&graph, &layout, d, &opts)?;
    emit(out, &render(&search_outcome_to_json(&outcome)))?;
    let target_met = a.target_k.map_or(true, |k| outcome.clique.len() as u64 >= k);
    let _ = writeln!(
        err,
        "{} vectors, status {:?}, {} nodes",
        outcome.clique.len(),
        outcome.status,
        outcome.nodes_explored
    );
    Ok(match outcome.status {
        SearchStatus::BudgetExhausted if !target_met => EXIT_BUDGET,
        _ => EXIT_PASS,
    })
}

pub fn bound_csv_header() -> &'static str {
    "p,n,d,e,ehalf,regime,K_max"
}

pub fn bound_csv_row(q: &BoundQuery, r: &BoundResult) -> String {
    format!("{},{},{},{},{},{},{}", q.p.get(), q.n, q.d, q.e, q.e_half, r.regime, r.k_max)
}

fn parse_values(key: &str, text: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidParameters(format!("cannot read sweep values {text:?} for {key}"));
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            out.extend(lo..=hi);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

/// Expands a sweep description into queries, `p` outermost.
pub fn sweep_queries(a: &BoundArgs) -> Result<Vec<BoundQuery>> {
    let mut ps = vec![a.p as u64];
    let mut ns = vec![a.n as u64];
    let mut ds = vec![a.d as u64];
    let mut es = vec![a.e as u64];
    let mut hs = vec![a.ehalf as u64];
    if let Some(spec) = &a.sweep {
        for item in spec.split(';').filter(|s| !s.trim().is_empty()) {
            let (key, vals) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameters(format!("sweep item {item:?} needs key=values")))?;
            let key = key.trim();
            let vals = parse_values(key, vals)?;
            match key {
                "p" => ps = vals,
                "n" => ns = vals,
                "d" => ds = vals,
                "e" => es = vals,
                "ehalf" => hs = vals,
                _ => return Err(Error::InvalidParameters(format!("unknown sweep key {key:?}"))),
            }
        }
    }
    let mut out = Vec::new();
    for &p in &ps {
        let p = Modulus::new(u32::try_from(p).map_err(|_| Error::NotPrime(u32::MAX))?)?;
        for &n in &ns {
            for &d in &ds {
                for &e in &es {
                    for &h in &hs {
                        out.push(BoundQuery {
                            p,
                            n: n as usize,
                            d: d as usize,
                            e: e as usize,
                            e_half: h as usize,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> Result<i32> {
    let queries = sweep_queries(a)?;
    let mut text = String::from(bound_csv_header());
    text.push('\n');
    for q in &queries {
        text.push_str(&bound_csv_row(q, &singleton_bound(q)?));
        text.push('\n');
    }
    emit(out, &text)?;
    Ok(EXIT_PASS)
}

fn parse_split(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidParameters(format!("split {text:?} should look like e,ehalf"));
    let (e, h) = text.split_once(',').ok_or_else(bad)?;
    Ok((e.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
}

fn bound_json(r: &BoundResult) -> Value {
    json!({
        "regime": r.regime,
        "exponent": r.exponent,
        "K_max": r.k_max.to_string(),
    })
}

pub fn cmd_compare(a: &CompareArgs, out: &mut dyn Write) -> Result<i32> {
    let p = Modulus::new(a.p)?;
    let (sa, sb) = (parse_split(&a.a)?, parse_split(&a.b)?);
    let c = compare_scenarios(p, a.d, a.channels, sa, sb)?;
    let value = json!({
        "p": a.p,
        "d": a.d,
        "channels": a.channels,
        "a": {"e": sa.0, "ehalf": sa.1, "n": a.channels - sa.0 - sa.1, "bound": bound_json(&c.a)},
        "b": {"e": sb.0, "ehalf": sb.1, "n": a.channels - sb.0 - sb.1, "bound": bound_json(&c.b)},
        "ratio_exponent": c.ratio_exponent,
    });
    emit(out, &render(&value))?;
    Ok(EXIT_PASS)
}

pub fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write) -> Result<i32> {
    let p = Modulus::new(a.p)?;
    let cap = a.cap.unwrap_or_else(dense_cap_from_env);
    let results = run_all(p, a.n, a.trials, a.seed, cap)?;
    let mut text = String::from("suite,trials,failures\n");
    for r in &results {
        text.push_str(&format!("{},{},{}\n", r.name, r.trials, r.failures.len()));
    }
    emit(out, &text)?;
    Ok(if results.iter().all(|r| r.passed()) { EXIT_PASS } else { EXIT_FAIL })
}

/// The ten-vertex fixture with a recovered graph when the search finds one.
pub fn paper2845_recovered(budget: u64, seed: u64) -> Fixture {
    match recover_graph_2845(budget, seed).graph {
        Some(g) => paper2845_fixture_with(g, true),
        None => paper_code_2845(),
    }
}

pub fn cmd_fixtures(a: &FixturesArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    fs::create_dir_all(&a.emit).map_err(|e| Error::Format(format!("{}: {e}", a.emit.display())))?;
    let conventions = resolve_star_convention();
    if !conventions.resolved {
        let _ = writeln!(
            err,
            "no star-centre convention passes; pinned ({}, {}) with the fewest violations",
            conventions.pinned.0 + 1,
            conventions.pinned.1 + 1
        );
    }
    let fixtures = [
        paper_code_27(),
        paper2845_recovered(a.recovery_budget, a.recovery_seed),
    ];
    for f in &fixtures {
        let path = a.emit.join(format!("{}.json", f.name));
        fs::write(&path, render(&fixture_to_json(f)))
            .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        emit(out, &format!("{}\n", path.display()))?;
    }
    Ok(EXIT_PASS)
}

pub fn cmd_export(a: &ExportArgs, out: &mut dyn Write) -> Result<i32> {
    let f = match a.fixture {
        FixtureName::Paper27 => paper_code_27(),
        FixtureName::Paper2845 if a.recover => paper2845_recovered(RECOVERY_BUDGET, RECOVERY_SEED),
        FixtureName::Paper2845 => paper_code_2845(),
    };
    emit(out, &render(&fixture_to_json(&f)))?;
    Ok(EXIT_PASS)
}

pub fn cmd_expand(a: &ExpandArgs, out: &mut dyn Write) -> Result<i32> {
    let p = Modulus::new(a.p)?;
    let gens = a
        .generators
        .iter()
        .map(|g| {
            let j = if g.contains(',') {
                let xs = g
                    .split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| Error::Format(format!("bad generator {g:?}")))?;
                VecJson::Entries(xs)
            } else {
                VecJson::Digits(g.clone())
            };
            vec_from_json(p, a.n, &j)
        })
        .collect::<Result<Vec<_>>>()?;
    let all = expand_generators(p, a.n, &gens)?;
    let value = json!({
        "size": all.len(),
        "vectors": all.iter().map(vec_to_json).collect::<Vec<_>>(),
    });
    emit(out, &render(&value))?;
    Ok(EXIT_PASS)
}
