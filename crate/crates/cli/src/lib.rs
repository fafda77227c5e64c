//! `tdom` command line: single-graph analysis, batch classification of
//! graph6 streams, fixture and generator access, and the verification sweep.
//!
//! Exit codes: 0 on success, 1 on usage, input or per-graph errors, 2 when
//! the sweep finds a counterexample to a checked claim.
//!
//! With `--json` every graph yields one line:
//! `{"schemaVersion":1,"command":...,"index":...,"n":...,"result":{...},"elapsedMicros":...}`
//! (or `"error"` instead of `"result"`). Vertices are integer ids; a
//! `"labels"` array maps ids to names when the input carries them. Only
//! `elapsedMicros` varies between identical runs.

pub mod input;

use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use tdom_core::characterize::{
    classify_main, count_gamma_sets_formula, ClassificationReport, ClassifyError, ClassifyOptions, Fallback,
};
use tdom_core::domination::{
    enumerate_gamma_sets, exact_gamma, exact_gamma_total, packing_violation, undominated_vertex,
    DominationCertificate, DEFAULT_ORACLE_CAP,
};
use tdom_core::forbidden::{girth, is_chordal, is_free, Embedding, Pattern};
use tdom_core::generators::{FixtureName, GeneratorError};
use tdom_core::io::{serialize_graph, to_graph6, Format, ParseError};
use tdom_core::structure::{s_set, tdm_partition};
use tdom_core::sweep::{sweep_graphs, sweep_small_graphs, Claim, Classifier, SweepConfig, SweepSummary};
use tdom_core::{Graph, VertexSet};

use input::{GenerateSpec, Source};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Generate(#[from] GeneratorError),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "tdom", version, about = "Decide whether total domination is twice domination")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Basic statistics, exact values (within the oracle cap) and classification
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Decide gamma_t = 2 gamma with a certificate
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        fallback: FallbackArgs,
    },
    /// Exact domination number with a minimum dominating set
    Gamma {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Exact total domination number with a minimum total dominating set
    GammaT {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Special vertices, their twin classes and neighborhood partitions
    Special {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One representative per special twin class, with packing and domination checks
    SSet {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Number of minimum dominating sets
    CountGammaSets {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        fallback: FallbackArgs,
    },
    /// Search for induced copies of patterns
    CheckFree {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        /// Comma-separated pattern names among c3, c6, h1, h2
        #[arg(long, default_value = "c6,h1,h2")]
        patterns: String,
        /// Extra pattern graphs, one graph6 record per line
        #[arg(long)]
        pattern_file: Option<PathBuf>,
    },
    /// Print graphs from a fixture, generator or file
    Generate {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check every claim on all small graphs or on supplied graphs
    Sweep {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Largest order enumerated when no input is given
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Comma-separated claims, or `all`
        #[arg(long, default_value = "all")]
        claims: String,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Graph file: a graph6 stream or one edge list; `-` reads stdin
    file: Option<PathBuf>,
    /// Same as the positional file
    #[arg(long)]
    input: Option<PathBuf>,
    /// Named graph: fig1, g1, g2, h1, h2, c<k>, p<k>, star<k>, k<k>
    #[arg(long)]
    fixture: Option<FixtureName>,
    /// Generator: cycle:K, path:K, star:K, complete:K, corona-cycle:K,
    /// corona-path:K, tree:N, block:B:K, small:N[:all|isolate-free|connected]
    #[arg(long)]
    generate: Option<GenerateSpec>,
    /// Input format for files (default: guessed); output format for `generate`
    #[arg(long)]
    format: Option<Format>,
    /// Seed for random generators
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Line-delimited JSON instead of a table
    #[arg(long)]
    json: bool,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Largest order handed to the exponential solvers (at most 64)
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Debug, Args)]
struct FallbackArgs {
    /// What to do with graphs outside the characterization: none or oracle
    #[arg(long, default_value = "none")]
    fallback: Fallback,
}

/// Runs the command line with the standard classifier.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_classifier(args, out, err, &|g| classify_main(g, &ClassifyOptions::default()))
}

/// Like [`run`], with the classifier that `sweep` checks supplied by the
/// caller.
pub fn run_with_classifier<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, classifier: &Classifier) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out, classifier) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn load(input: &InputArgs) -> Result<Vec<Graph>, CliError> {
    let source = Source::resolve(input.file.clone(), input.input.clone(), input.fixture, input.generate.clone())?
        .ok_or_else(|| CliError::Usage("no input: give a file, --input, --fixture or --generate".into()))?;
    source.load(input.format, input.seed)
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = jobs {
        builder = builder.num_threads(jobs.max(1));
    }
    builder.build().map_err(|e| CliError::Usage(format!("cannot start workers: {e}")))
}

/// One graph's answer: JSON plus the table row.
struct Answer {
    json: Value,
    text: String,
}

fn answer<T: Serialize>(value: &T, text: String) -> Result<Answer, String> {
    Ok(Answer { json: serde_json::to_value(value).map_err(|e| e.to_string())?, text })
}

fn execute(command: Command, out: &mut dyn Write, classifier: &Classifier) -> Result<i32, CliError> {
    match command {
        Command::Analyze { input, output, oracle } => {
            let cap = oracle.oracle_cap;
            batch("analyze", &input, &output, out, |g| analyze(g, cap))
        }
        Command::Classify { input, output, oracle, fallback } => {
            let options = ClassifyOptions { fallback: fallback.fallback, oracle_cap: oracle.oracle_cap };
            batch("classify", &input, &output, out, |g| {
                let report = classify_main(g, &options).map_err(|e| e.to_string())?;
                let text = report_row(g, &report);
                answer(&report, text)
            })
        }
        Command::Gamma { input, output, oracle } => batch("gamma", &input, &output, out, |g| {
            let cert = exact_gamma(g, oracle.oracle_cap).map_err(|e| e.to_string())?;
            let text = certificate_row(g, "gamma", &cert);
            answer(&cert, text)
        }),
        Command::GammaT { input, output, oracle } => batch("gamma-t", &input, &output, out, |g| {
            let cert = exact_gamma_total(g, oracle.oracle_cap).map_err(|e| e.to_string())?;
            let text = certificate_row(g, "gamma_t", &cert);
            answer(&cert, text)
        }),
        Command::Special { input, output } => batch("special", &input, &output, out, special),
        Command::SSet { input, output } => batch("s-set", &input, &output, out, s_set_answer),
        Command::CountGammaSets { input, output, oracle, fallback } => {
            batch("count-gamma-sets", &input, &output, out, |g| {
                count_gamma_sets(g, fallback.fallback, oracle.oracle_cap)
            })
        }
        Command::CheckFree { input, output, patterns, pattern_file } => {
            let mut patterns = Pattern::parse_list(&patterns).map_err(CliError::Usage)?;
            if let Some(path) = pattern_file {
                patterns.extend(load_patterns(&path)?);
            }
            batch("check-free", &input, &output, out, |g| check_free(g, &patterns))
        }
        Command::Generate { input, output } => generate(&input, &output, out),
        Command::Sweep { input, output, oracle, max_n, claims } => {
            let config = SweepConfig {
                claims: Claim::parse_list(&claims).map_err(CliError::Usage)?,
                oracle_cap: oracle.oracle_cap,
                jobs: output.jobs,
            };
            sweep(&input, &output, &config, max_n, classifier, out)
        }
    }
}

/// Answers every input graph in parallel and prints the answers in input
/// order. Any per-graph error makes the exit code 1.
fn batch<F>(command: &str, input: &InputArgs, output: &OutputArgs, out: &mut dyn Write, f: F) -> Result<i32, CliError>
where
    F: Fn(&Graph) -> Result<Answer, String> + Sync,
{
    let graphs = load(input)?;
    let answers: Vec<(Result<Answer, String>, u64)> = pool(output.jobs)?.install(|| {
        graphs
            .par_iter()
            .map(|g| {
                let started = Instant::now();
                let answer = f(g);
                (answer, started.elapsed().as_micros() as u64)
            })
            .collect()
    });
    let mut failed = false;
    for (index, (g, (answer, micros))) in graphs.iter().zip(answers).enumerate() {
        failed |= answer.is_err();
        if output.json {
            let mut record = json!({
                "schemaVersion": SCHEMA_VERSION,
                "command": command,
                "index": index,
                "n": g.order(),
            });
            if let Some(labels) = g.labels() {
                record["labels"] = json!(labels);
            }
            match answer {
                Ok(a) => record["result"] = a.json,
                Err(e) => record["error"] = json!(e),
            }
            record["elapsedMicros"] = json!(micros);
            writeln!(out, "{record}")?;
        } else {
            match answer {
                Ok(a) => writeln!(out, "#{index} n={} {}", g.order(), a.text)?,
                Err(e) => writeln!(out, "#{index} n={} error: {e}", g.order())?,
            }
        }
    }
    Ok(i32::from(failed))
}

// ---------------------------------------------------------------------------
// per-graph commands

fn names(g: &Graph, set: &VertexSet) -> String {
    let items: Vec<String> = set.iter().map(|v| g.label(v)).collect();
    format!("{{{}}}", items.join(","))
}

fn pair(g: &Graph, (u, v): (usize, usize)) -> String {
    format!("({},{})", g.label(u), g.label(v))
}

fn witness_text(g: &Graph, w: &Embedding) -> String {
    let image: Vec<String> = w.mapping.iter().map(|&v| g.label(v)).collect();
    format!("induced {} at [{}]", w.pattern, image.join(","))
}

fn report_row(g: &Graph, r: &ClassificationReport) -> String {
    let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    let mut row = format!(
        "verdict={} method={} eligible={} gamma={} gamma_t={}",
        r.verdict.as_str(),
        serde_json::to_value(r.method).unwrap().as_str().unwrap_or_default(),
        r.eligible,
        opt(r.implied_gamma),
        opt(r.implied_gamma_t),
    );
    if let Some(s) = &r.s_set {
        row += &format!(" s-set={}", names(g, &s.representatives));
    }
    if let Some(p) = r.packing_violation {
        row += &format!(" packing-violation={}", pair(g, p));
    }
    if let Some(v) = r.uncovered_vertex {
        row += &format!(" undominated={}", g.label(v));
    }
    if let Some(c) = r.gamma_set_count {
        row += &format!(" gamma-sets={c}");
    }
    if let Some(w) = &r.witness_embedding {
        row += &format!(" witness={}", witness_text(g, w));
    }
    row
}

fn certificate_row(g: &Graph, what: &str, c: &DominationCertificate) -> String {
    format!("{what}={} witness={}", c.value, names(g, &c.witness))
}

fn analyze(g: &Graph, cap: usize) -> Result<Answer, String> {
    let stats = g.basic_stats();
    let gamma = exact_gamma(g, cap).ok();
    let gamma_t = if stats.isolated_vertex_count == 0 { exact_gamma_total(g, cap).ok() } else { None };
    let report = classify_main(g, &ClassifyOptions::default());
    let chordal = is_chordal(g);
    let girth = girth(g);
    let mut text = format!(
        "m={} min-degree={} max-degree={} components={} chordal={chordal} girth={}",
        stats.edge_count,
        stats.min_degree,
        stats.max_degree,
        stats.component_count,
        girth.map_or("inf".to_string(), |k| k.to_string()),
    );
    if let Some(c) = &gamma {
        text += &format!(" exact-gamma={}", c.value);
    }
    if let Some(c) = &gamma_t {
        text += &format!(" exact-gamma_t={}", c.value);
    }
    let classification = match &report {
        Ok(r) => {
            text += &format!(" | {}", report_row(g, r));
            json!(r)
        }
        Err(e) => {
            text += &format!(" | classification: {e}");
            json!({ "error": e.to_string() })
        }
    };
    let json = json!({
        "stats": stats,
        "chordal": chordal,
        "girth": girth,
        "gamma": gamma,
        "gammaT": gamma_t,
        "classification": classification,
    });
    Ok(Answer { json, text })
}

fn special(g: &Graph) -> Result<Answer, String> {
    let s = s_set(g);
    let partitions: Vec<_> = s.special.iter().map(|v| tdm_partition(g, v).expect("vertex in range")).collect();
    let classes: Vec<String> = s.classes.iter().map(|c| names(g, c)).collect();
    let text = format!("special={} classes=[{}]", names(g, &s.special), classes.join(","));
    let json = json!({ "special": s.special, "classes": s.classes, "partitions": partitions });
    Ok(Answer { json, text })
}

fn s_set_answer(g: &Graph) -> Result<Answer, String> {
    let s = s_set(g);
    let violation = packing_violation(g, &s.representatives);
    let uncovered = undominated_vertex(g, &s.representatives);
    let mut text = format!(
        "s-set={} packing={} dominating={}",
        names(g, &s.representatives),
        violation.is_none(),
        uncovered.is_none()
    );
    if let Some(p) = violation {
        text += &format!(" packing-violation={}", pair(g, p));
    }
    if let Some(v) = uncovered {
        text += &format!(" undominated={}", g.label(v));
    }
    let json = json!({
        "sSet": s.representatives,
        "classes": s.classes,
        "packingOk": violation.is_none(),
        "packingViolation": violation,
        "dominatingOk": uncovered.is_none(),
        "uncoveredVertex": uncovered,
    });
    Ok(Answer { json, text })
}

fn count_gamma_sets(g: &Graph, fallback: Fallback, cap: usize) -> Result<Answer, String> {
    let (count, method) = match count_gamma_sets_formula(g) {
        Ok(count) => (count, "formula"),
        Err(e @ (ClassifyError::NotEligible { .. } | ClassifyError::NotGamma2)) => {
            if fallback != Fallback::Oracle {
                return Err(format!("{e}; use --fallback oracle to count by enumeration"));
            }
            let count = enumerate_gamma_sets(g, cap, 0).map_err(|e| e.to_string())?.count;
            (count as u128, "exact_oracle")
        }
        Err(e) => return Err(e.to_string()),
    };
    Ok(Answer { json: json!({ "count": count, "method": method }), text: format!("count={count} method={method}") })
}

fn check_free(g: &Graph, patterns: &[Pattern]) -> Result<Answer, String> {
    let (free, witness) = is_free(g, patterns);
    let names: Vec<String> = patterns.iter().map(|p| p.name.to_string()).collect();
    let mut text = format!("free={free} patterns={}", names.join(","));
    if let Some(w) = &witness {
        text += &format!(" witness={}", witness_text(g, w));
    }
    Ok(Answer { json: json!({ "free": free, "patterns": names, "witness": witness }), text })
}

fn load_patterns(path: &PathBuf) -> Result<Vec<Pattern>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let graphs = tdom_core::io::parse_graph6_stream(&text)?;
    Ok(graphs
        .into_iter()
        .enumerate()
        .map(|(i, g)| Pattern::custom(format!("pattern{i}"), g))
        .collect())
}

// ---------------------------------------------------------------------------
// generate and sweep

fn generate(input: &InputArgs, output: &OutputArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let graphs = load(input)?;
    for (index, g) in graphs.iter().enumerate() {
        if output.json {
            let mut record = json!({
                "schemaVersion": SCHEMA_VERSION,
                "command": "generate",
                "index": index,
                "n": g.order(),
                "result": { "graph6": to_graph6(g), "edges": g.edges().collect::<Vec<_>>() },
            });
            if let Some(labels) = g.labels() {
                record["labels"] = json!(labels);
            }
            writeln!(out, "{record}")?;
        } else {
            writeln!(out, "{}", serialize_graph(g, input.format.unwrap_or(Format::Graph6)))?;
        }
    }
    Ok(0)
}

fn sweep(
    input: &InputArgs,
    output: &OutputArgs,
    config: &SweepConfig,
    max_n: usize,
    classifier: &Classifier,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let started = Instant::now();
    let source = Source::resolve(input.file.clone(), input.input.clone(), input.fixture, input.generate.clone())?;
    let summary = match source {
        Some(source) => sweep_graphs(&source.load(input.format, input.seed)?, config, classifier),
        None => sweep_small_graphs(max_n, config, classifier)?,
    };
    let micros = started.elapsed().as_micros() as u64;
    if output.json {
        let record = json!({
            "schemaVersion": SCHEMA_VERSION,
            "command": "sweep",
            "result": summary,
            "elapsedMicros": micros,
        });
        writeln!(out, "{record}")?;
    } else {
        write_sweep_table(&summary, out)?;
    }
    Ok(if summary.is_clean() { 0 } else { 2 })
}

fn write_sweep_table(summary: &SweepSummary, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{:>3} {:>10} {:>10} {:>10}", "n", "graphs", "eligible", "gamma2")?;
    for t in &summary.by_order {
        writeln!(out, "{:>3} {:>10} {:>10} {:>10}", t.n, t.graphs, t.eligible, t.gamma2)?;
    }
    writeln!(out, "graphs checked: {}", summary.graphs_checked)?;
    if summary.graphs_skipped > 0 {
        writeln!(out, "graphs skipped: {}", summary.graphs_skipped)?;
    }
    if summary.corona_graphs_checked > 0 {
        writeln!(out, "coronas checked: {}", summary.corona_graphs_checked)?;
    }
    for claim in &summary.claims {
        writeln!(out, "{:<16} {} violations", claim.name(), summary.violations_of(*claim))?;
    }
    for v in summary.violations.iter().take(20) {
        writeln!(out, "VIOLATION {} {} {}", v.claim, v.graph6, v.detail)?;
    }
    Ok(())
}
