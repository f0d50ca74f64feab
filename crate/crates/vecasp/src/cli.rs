//! Command-line front end: solve/enumerate/oracle/precompute plus instance
//! generators and a small benchmark driver.
//!
//! Exit codes: 0 = model found / task done, 10 = no model within budget,
//! 2 = usage or parse error.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::costs::CostWeights;
use crate::generators::{cycle_graph, gen_3col, gen_hc, gen_p4, gen_p5};
use crate::model::Program;
use crate::oracle::{enumerate_models, Semantics};
use crate::parser::{parse_program, render_program};
use crate::precompute::precompute;
use crate::solver::{enumerate, solve, LfHeuristic, Mode, SolveResult, SolverOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_MODEL: i32 = 10;

#[derive(Parser)]
#[command(name = "vecasp", version, about = "supported/stable model search in vector spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Find one model of a program
    Solve(SolveArgs),
    /// Find several distinct models via another-solution constraints
    Enumerate(EnumerateArgs),
    /// Exhaustively enumerate models (ground truth; small programs only)
    Oracle(OracleArgs),
    /// Shrink a program by its stable-false atoms
    Precompute { file: PathBuf },
    /// Emit a generated instance as a program text
    Gen(GenArgs),
    /// Run a benchmark sweep, emitting one CSV row per instance
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Supported,
    Stable,
}

#[derive(Clone, Copy, ValueEnum)]
enum LfArg {
    None,
    Max,
    Min,
    All,
}

#[derive(Args)]
struct SolverFlags {
    /// Model semantics to search for
    #[arg(long, value_enum, default_value = "supported")]
    mode: ModeArg,
    /// Loop-formula guidance heuristic
    #[arg(long, value_enum, default_value = "none")]
    lf: LfArg,
    /// Shrink the program before search
    #[arg(long)]
    precompute: bool,
    #[arg(long, default_value_t = 50)]
    max_itr: usize,
    #[arg(long, default_value_t = 20)]
    max_try: usize,
    /// Weight of the binary regularizer
    #[arg(long, default_value_t = 0.1)]
    l2: f64,
    /// Weight of the constraint cost
    #[arg(long, default_value_t = 0.1)]
    l3: f64,
    /// Weight of the loop-formula cost
    #[arg(long, default_value_t = 1.0)]
    l4: f64,
    /// Step-size factor of the update rule
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Thresholds tested when binarizing the relaxed vector
    #[arg(long, default_value_t = 20)]
    notches: usize,
    /// Cap on enumerated cycles/loops for --lf min and all
    #[arg(long, default_value_t = 100_000)]
    max_cycles: usize,
}

impl SolverFlags {
    fn to_options(&self) -> SolverOptions {
        SolverOptions {
            mode: match self.mode {
                ModeArg::Supported => Mode::Supported,
                ModeArg::Stable => Mode::Stable,
            },
            lf_heuristic: match self.lf {
                LfArg::None => LfHeuristic::None,
                LfArg::Max => LfHeuristic::Max,
                LfArg::Min => LfHeuristic::Min,
                LfArg::All => LfHeuristic::All,
            },
            use_precompute: self.precompute,
            max_itr: self.max_itr,
            max_try: self.max_try,
            weights: CostWeights { l2: self.l2, l3: self.l3, l4: self.l4 },
            alpha: self.alpha,
            seed: self.seed,
            max_cycles: self.max_cycles,
            notches: self.notches,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    #[command(flatten)]
    flags: SolverFlags,
    /// Write the per-iteration trace as CSV
    #[arg(long, value_name = "CSVFILE")]
    trace: Option<PathBuf>,
    /// Emit the result as a JSON object
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 10)]
    limit: usize,
    #[command(flatten)]
    flags: SolverFlags,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "stable")]
    semantics: SemanticsArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Supported,
    Stable,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: GenFamily,
}

#[derive(Subcommand)]
enum GenFamily {
    /// 3-coloring of an undirected graph
    #[command(name = "3col")]
    ThreeCol {
        /// Shorthand for the n-cycle
        #[arg(long, conflicts_with_all = ["vertices", "edges"])]
        cycle: Option<usize>,
        #[arg(long)]
        vertices: Option<usize>,
        /// Comma-separated undirected edges, e.g. 1-2,2-3
        #[arg(long)]
        edges: Option<String>,
    },
    /// Hamiltonian cycle of a digraph
    Hc {
        #[arg(long)]
        vertices: usize,
        /// Comma-separated directed edges, e.g. 1-2,2-1
        #[arg(long)]
        edges: String,
    },
    /// Loopy family with 2^(n/2)+1 supported models and one stable model
    P4 {
        #[arg(long)]
        n: usize,
    },
    /// P4 variant with k self-loop guard atoms
    P5 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFamily {
    Cycle3col,
    P4,
    P5,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(value_enum)]
    family: BenchFamily,
    /// Comma-separated instance sizes
    #[arg(long)]
    sizes: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2000)]
    max_itr: usize,
    #[arg(long, default_value_t = 100)]
    max_try: usize,
}

/// Runs the CLI on the given argv (including the program name); returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // help/version go to stdout with success, real errors to stderr
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match cli.cmd {
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Enumerate(args) => cmd_enumerate(args),
        Cmd::Oracle(args) => cmd_oracle(args),
        Cmd::Precompute { file } => cmd_precompute(file),
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Bench(args) => cmd_bench(args),
    }
}

fn load_program(path: &PathBuf) -> Result<Program, i32> {
    let source = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return Err(EXIT_USAGE);
        }
    };
    parse_program(&source).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        EXIT_USAGE
    })
}

fn model_line(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn trace_csv(result: &SolveResult) -> String {
    let mut out = String::from("try,itr,total,j_sq,j_nrm,j_c,j_lf,cand_err\n");
    for row in &result.trace {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.try_index, row.itr, row.total, row.j_sq, row.j_nrm, row.j_c, row.j_lf, row.cand_err
        );
    }
    out
}

fn cmd_solve(args: SolveArgs) -> i32 {
    let program = match load_program(&args.file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let result = match solve(&program, &args.flags.to_options()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if let Some(path) = &args.trace {
        if let Err(e) = fs::write(path, trace_csv(&result)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    match &result.model {
        Some(model) => {
            let names = model.true_names(&program.atoms);
            if args.json {
                // seconds rounded to one decimal so identical runs emit
                // identical bytes
                let seconds = (result.seconds * 10.0).round() / 10.0;
                let obj = serde_json::json!({
                    "model": names,
                    "stable": result.stable,
                    "tries": result.tries,
                    "seconds": seconds,
                });
                println!("{obj}");
            } else {
                println!("{}", model_line(&names));
            }
            EXIT_OK
        }
        None => {
            if args.json {
                let seconds = (result.seconds * 10.0).round() / 10.0;
                let obj = serde_json::json!({
                    "model": serde_json::Value::Null,
                    "stable": false,
                    "tries": result.tries,
                    "seconds": seconds,
                });
                println!("{obj}");
            } else if result.infeasible {
                eprintln!("no model: precomputation proved the constraints unsatisfiable");
            } else {
                eprintln!("no model found within budget");
            }
            EXIT_NO_MODEL
        }
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> i32 {
    let program = match load_program(&args.file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    if args.limit < 1 {
        eprintln!("error: --limit must be >= 1");
        return EXIT_USAGE;
    }
    let models = match enumerate(&program, &args.flags.to_options(), args.limit) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    for m in &models {
        println!("{}", model_line(&m.true_names(&program.atoms)));
    }
    if models.is_empty() {
        eprintln!("no model found within budget");
        EXIT_NO_MODEL
    } else {
        EXIT_OK
    }
}

fn cmd_oracle(args: OracleArgs) -> i32 {
    let program = match load_program(&args.file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let semantics = match args.semantics {
        SemanticsArg::Supported => Semantics::Supported,
        SemanticsArg::Stable => Semantics::Stable,
    };
    match enumerate_models(&program, semantics, true) {
        Ok(set) => {
            let lists: Vec<Vec<String>> =
                set.models.iter().map(|m| m.true_names(&program.atoms)).collect();
            println!("{}", serde_json::json!(lists));
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_precompute(file: PathBuf) -> i32 {
    let program = match load_program(&file) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let res = precompute(&program);
    eprintln!(
        "atoms {} -> {} (removed {}), rules {} -> {}, constraints {} -> {}{}",
        program.atom_count(),
        res.reduced.atom_count(),
        res.false_atoms.len(),
        program.rule_count(),
        res.reduced.rule_count(),
        program.constraints.len(),
        res.reduced.constraints.len(),
        if res.infeasible { ", infeasible" } else { "" },
    );
    print!("{}", render_program(&res.reduced));
    EXIT_OK
}

fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>, String> {
    let mut edges = Vec::new();
    for part in text.split(',').filter(|p| !p.is_empty()) {
        let (a, b) = part
            .split_once('-')
            .ok_or_else(|| format!("bad edge '{part}', expected A-B"))?;
        let a: usize = a.trim().parse().map_err(|_| format!("bad vertex '{a}'"))?;
        let b: usize = b.trim().parse().map_err(|_| format!("bad vertex '{b}'"))?;
        edges.push((a, b));
    }
    Ok(edges)
}

fn cmd_gen(args: GenArgs) -> i32 {
    let program = match args.family {
        GenFamily::ThreeCol { cycle, vertices, edges } => match (cycle, vertices) {
            (Some(n), _) => gen_3col(n, &cycle_graph(n)).map_err(|e| e.to_string()),
            (None, Some(n)) => {
                let edges = match parse_edges(edges.as_deref().unwrap_or("")) {
                    Ok(e) => e,
                    Err(msg) => {
                        eprintln!("error: {msg}");
                        return EXIT_USAGE;
                    }
                };
                gen_3col(n, &edges).map_err(|e| e.to_string())
            }
            (None, None) => Err("either --cycle or --vertices is required".to_string()),
        },
        GenFamily::Hc { vertices, edges } => match parse_edges(&edges) {
            Ok(e) => gen_hc(vertices, &e).map_err(|e| e.to_string()),
            Err(msg) => {
                eprintln!("error: {msg}");
                return EXIT_USAGE;
            }
        },
        GenFamily::P4 { n } => gen_p4(n).map_err(|e| e.to_string()),
        GenFamily::P5 { n, k } => gen_p5(n, k).map_err(|e| e.to_string()),
    };
    match program {
        Ok(p) => {
            print!("{}", render_program(&p));
            EXIT_OK
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn cmd_bench(args: BenchArgs) -> i32 {
    let sizes: Result<Vec<usize>, _> = args
        .sizes
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse::<usize>())
        .collect();
    let sizes = match sizes {
        Ok(s) if !s.is_empty() => s,
        _ => {
            eprintln!("error: --sizes must be a comma-separated list of positive integers");
            return EXIT_USAGE;
        }
    };
    println!("instance,n,k,seed,seconds,tries,outcome,solutions");
    let mut times = Vec::new();
    for &n in &sizes {
        let (name, k, program, opts) = match args.family {
            BenchFamily::Cycle3col => {
                let p = match gen_3col(n, &cycle_graph(n)) {
                    Ok(p) => p,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return EXIT_USAGE;
                    }
                };
                let o = SolverOptions {
                    mode: Mode::Supported,
                    max_itr: args.max_itr,
                    max_try: args.max_try,
                    seed: args.seed,
                    ..SolverOptions::default()
                };
                ("cycle3col", 0usize, p, o)
            }
            BenchFamily::P4 => {
                let p = match gen_p4(n) {
                    Ok(p) => p,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return EXIT_USAGE;
                    }
                };
                let o = SolverOptions {
                    mode: Mode::Stable,
                    lf_heuristic: LfHeuristic::Max,
                    use_precompute: true,
                    max_itr: args.max_itr,
                    max_try: args.max_try,
                    seed: args.seed,
                    ..SolverOptions::default()
                };
                ("p4", 0usize, p, o)
            }
            BenchFamily::P5 => {
                let p = match gen_p5(n, n) {
                    Ok(p) => p,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return EXIT_USAGE;
                    }
                };
                let o = SolverOptions {
                    mode: Mode::Stable,
                    lf_heuristic: LfHeuristic::Max,
                    use_precompute: true,
                    max_itr: args.max_itr,
                    max_try: args.max_try,
                    seed: args.seed,
                    ..SolverOptions::default()
                };
                ("p5", n, p, o)
            }
        };
        let result = match solve(&program, &opts) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        };
        let outcome = if result.model.is_some() { "found" } else { "none" };
        let solutions = usize::from(result.model.is_some());
        println!(
            "{name},{n},{k},{},{},{},{outcome},{solutions}",
            args.seed, result.seconds, result.tries
        );
        times.push(result.seconds);
    }
    let mut sorted = times.clone();
    sorted.sort_by(f64::total_cmp);
    let median = sorted[sorted.len() / 2];
    let spread = sorted[sorted.len() - 1] - sorted[0];
    eprintln!("median {median:.3}s, spread {spread:.3}s over {} sizes", sizes.len());
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(parts: &[&str]) -> Vec<String> {
        std::iter::once("vecasp")
            .chain(parts.iter().copied())
            .map(String::from)
            .collect()
    }

    #[test]
    fn usage_error_on_unknown_subcommand() {
        assert_eq!(run(argv(&["frobnicate"])), EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(argv(&["--help"])), EXIT_OK);
    }

    #[test]
    fn missing_file_is_usage_error() {
        assert_eq!(run(argv(&["solve", "/nonexistent/x.lp"])), EXIT_USAGE);
    }

    #[test]
    fn gen_and_solve_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p0.lp");
        fs::write(&path, "p :- q, not r.\np :- not q.\nq.\n").unwrap();
        assert_eq!(run(argv(&["solve", path.to_str().unwrap(), "--seed", "1"])), EXIT_OK);
    }

    #[test]
    fn no_model_exit_code() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("no.lp");
        fs::write(&path, "a :- not a.\n").unwrap();
        assert_eq!(run(argv(&["solve", path.to_str().unwrap()])), EXIT_NO_MODEL);
    }

    #[test]
    fn parse_error_exit_code() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.lp");
        fs::write(&path, "p :- q").unwrap();
        assert_eq!(run(argv(&["solve", path.to_str().unwrap()])), EXIT_USAGE);
    }

    #[test]
    fn parse_edges_formats() {
        assert_eq!(parse_edges("1-2,2-3").unwrap(), vec![(1, 2), (2, 3)]);
        assert_eq!(parse_edges("").unwrap(), vec![]);
        assert!(parse_edges("1:2").is_err());
        assert!(parse_edges("a-b").is_err());
    }
}
