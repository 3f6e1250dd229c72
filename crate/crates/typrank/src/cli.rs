//! Command-line front end. Every invocation prints exactly one JSON report.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use typrank_core::classifier::typical_ranks;
use typrank_core::completion::{
    certify_full_rank_sampled, complete_clique_union, esd_partial, one_missing_entry_solve, PartialSymmetricMatrix,
};
use typrank_core::graph::{classify_family, FamilyTag};
use typrank_core::linalg::{DEFAULT_OPT_TOL, DEFAULT_RANK_TOL};
use typrank_core::oracle::{min_rank_complete, sample_rng, OracleConfig};
use typrank_core::SemisimpleGraph;

use crate::error::{Error, Result};
use crate::formats::{parse_graph, parse_ordering, parse_partial, read_file};
use crate::parallel;
use crate::report::{self, Config};

#[derive(Debug, Parser)]
#[command(
    name = "typrank",
    version,
    about = "Typical ranks and minimum-rank completions of partial symmetric matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Relative eigenvalue threshold for rank and inertia decisions.
    #[arg(long, global = true, default_value_t = DEFAULT_RANK_TOL)]
    pub tol: f64,
    /// Relative residual accepted by the numeric oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_OPT_TOL)]
    pub opt_tol: f64,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Samples drawn by `sample` and `census`.
    #[arg(long, global = true, default_value_t = 300)]
    pub samples: usize,
    /// Oracle random starts per signature and rank.
    #[arg(long, global = true, default_value_t = 20)]
    pub restarts: usize,
    /// Worker threads for sampling; defaults to one per core.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Non-edge ordering for the minor poset: `lex` or a file of `i j` lines.
    #[arg(long, global = true, default_value = "lex")]
    pub ordering: String,
    /// Minimum sampled frequency for a rank to be declared typical.
    #[arg(long, global = true, default_value_t = 0.02)]
    pub threshold: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Typical-rank report for a graph file.
    Classify { graph: PathBuf },
    /// Minor-poset certificate for a partial matrix.
    Certify { partial: PathBuf },
    /// Minimum-rank completion of a partial matrix.
    Complete { partial: PathBuf },
    /// Solve for the single unknown entry of a partial matrix.
    SolveEntry { partial: PathBuf },
    /// Sign disagreement of two certified partial matrices.
    Esd { first: PathBuf, second: PathBuf },
    /// Sampled typical ranks of a graph.
    Sample { graph: PathBuf },
    /// Inertias of sampled full-rank partial matrices on a graph.
    Census { graph: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify { .. } => "classify",
            Command::Certify { .. } => "certify",
            Command::Complete { .. } => "complete",
            Command::SolveEntry { .. } => "solve-entry",
            Command::Esd { .. } => "esd",
            Command::Sample { .. } => "sample",
            Command::Census { .. } => "census",
        }
    }
}

impl Cli {
    fn oracle_config(&self) -> OracleConfig {
        OracleConfig {
            restarts: self.restarts,
            opt_tol: self.opt_tol,
            rank_tol: self.tol,
            seed: self.seed,
            threshold: self.threshold,
            ..OracleConfig::default()
        }
    }

    fn report_config(&self) -> Config {
        Config {
            rank_tol: self.tol,
            opt_tol: self.opt_tol,
            seed: self.seed,
            restarts: self.restarts,
            threshold: self.threshold,
        }
    }

    fn ordering(&self) -> Result<Option<Vec<(usize, usize)>>> {
        match self.ordering.as_str() {
            "lex" => Ok(None),
            path => parse_ordering(&read_file(Path::new(path))?).map(Some),
        }
    }
}

fn graph(path: &Path) -> Result<SemisimpleGraph> {
    parse_graph(&read_file(path)?)
}

fn partial(path: &Path) -> Result<PartialSymmetricMatrix> {
    parse_partial(&read_file(path)?)
}

#[derive(Debug, Serialize)]
struct CompleteView {
    method: &'static str,
    rank: usize,
    /// Rank the construction aims for; absent for the oracle.
    target_rank: Option<usize>,
    /// Whether `rank` is known to be the minimum.
    minimum: bool,
    lower_bound: Option<usize>,
    /// Sum of squared deviations from the specified entries.
    residual: f64,
    completion: Vec<Vec<f64>>,
}

fn complete(m: &PartialSymmetricMatrix, cfg: &OracleConfig) -> Result<CompleteView> {
    let cliques = classify_family(m.pattern()).iter().any(|t| matches!(t, FamilyTag::DisjointLoopedCliques { .. }));
    if cliques {
        let c = complete_clique_union(m, cfg.tolerance())?;
        let residual = m.entries().map(|(i, j, v)| (c.completion.get(i - 1, j - 1) - v).powi(2)).sum();
        return Ok(CompleteView {
            method: c.method,
            rank: c.rank,
            target_rank: Some(c.target_rank),
            minimum: c.minimum && c.rank == c.target_rank,
            lower_bound: None,
            residual,
            completion: c.completion.to_rows(),
        });
    }
    let s = min_rank_complete(m, cfg)?;
    Ok(CompleteView {
        method: "oracle",
        rank: s.rank,
        target_rank: None,
        minimum: s.rank == s.lower_bound,
        lower_bound: Some(s.lower_bound),
        residual: s.residual,
        completion: s.witness.to_rows(),
    })
}

fn dispatch(cli: &Cli, config: &Config) -> Result<String> {
    let cfg = cli.oracle_config();
    cfg.validate()?;
    let tol = cfg.tolerance();
    let name = cli.command.name();
    Ok(match &cli.command {
        Command::Classify { graph: p } => report::success(name, config, typical_ranks(&graph(p)?)?),
        Command::Certify { partial: p } => {
            let m = partial(p)?;
            let ordering = cli.ordering()?;
            let c = certify_full_rank_sampled(&m, ordering.as_deref(), tol, &mut sample_rng(cli.seed, 0))?;
            report::success(name, config, c)
        }
        Command::Complete { partial: p } => report::success(name, config, complete(&partial(p)?, &cfg)?),
        Command::SolveEntry { partial: p } => {
            report::success(name, config, one_missing_entry_solve(&partial(p)?, tol)?)
        }
        Command::Esd { first, second } => {
            let ordering = cli.ordering()?;
            let o = ordering.as_deref();
            let c1 = certify_full_rank_sampled(&partial(first)?, o, tol, &mut sample_rng(cli.seed, 0))?;
            let c2 = certify_full_rank_sampled(&partial(second)?, o, tol, &mut sample_rng(cli.seed, 1))?;
            report::success(name, config, esd_partial(&c1, &c2)?)
        }
        Command::Sample { graph: p } => {
            let g = graph(p)?;
            let est = parallel::with_threads(cli.threads, || parallel::typical_rank_sample(&g, cli.samples, &cfg))?;
            report::success(name, config, est)
        }
        Command::Census { graph: p } => {
            let g = graph(p)?;
            let census = parallel::with_threads(cli.threads, || parallel::inertia_census(&g, cli.samples, &cfg))?;
            report::success(name, config, census)
        }
    })
}

/// Parses `args` (program name first) and runs the command. Returns the exit
/// status and the text for standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => return (0, e.to_string()),
        Err(e) => {
            let msg = e.to_string();
            let err =
                Error::Usage(msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ").into());
            return (err.exit_code(), report::failure("unknown", &err));
        }
    };
    let name = cli.command.name();
    if cli.threads == Some(0) {
        let err = Error::Usage("--threads must be at least 1".into());
        return (err.exit_code(), report::failure(name, &err));
    }
    match dispatch(&cli, &cli.report_config()) {
        Ok(out) => (0, out),
        Err(e) => (e.exit_code(), report::failure(name, &e)),
    }
}
