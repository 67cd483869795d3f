//! `efountain`: analyze semigroups as reduced E-Fountain structures, export
//! artifacts, and run the verification suites.
//!
//! Exit codes: 0 when every checked condition holds, 1 when one fails, 2 on
//! invalid input or I/O failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use efountain::algebra::phi;
use efountain::analysis::{analyze, AnalysisOptions};
use efountain::category::{associated_category, export_dot_category, export_dot_eggbox};
use efountain::fountain::DEFAULT_ENUMERATION_BUDGET;
use efountain::green::green_classes;
use efountain::verify::{corpus_sweep, is_criterion, run_acceptance_suite, VerifyOptions};
use efountain::{parse_index_set, parse_table, EStructure, Family, FamilySpec, FiniteSemigroup};

#[derive(Parser)]
#[command(name = "efountain", version, about)]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Include wall-clock timing in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print a JSON report.
    Analyze(Source),
    /// Write a DOT, table or matrix artifact.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        what: Artifact,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print one verdict per line.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::Acceptance)]
        suite: Suite,
        /// Restrict the acceptance suite to these criteria.
        #[arg(long)]
        only: Vec<String>,
        /// Largest corpus order to sweep.
        #[arg(long, default_value_t = 6)]
        max_order: usize,
        /// Candidate-map budget for enumerating action homomorphisms.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u128,
    },
}

#[derive(Args)]
struct Source {
    /// A family selector: of:n, catalan:n, io:n or ic:n.
    #[arg(long, required_unless_present = "table", conflicts_with = "table")]
    family: Option<FamilySpec>,
    /// A multiplication table file.
    #[arg(long)]
    table: Option<PathBuf>,
    /// E as inline indices, a file of indices, or auto-of for a family's diagonal idempotents.
    #[arg(long = "E")]
    e: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Artifact {
    DotCategory,
    DotEggbox,
    Table,
    PhiMatrix,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    #[value(name = "paper")]
    Acceptance,
    Corpus,
}

struct Loaded {
    name: String,
    semigroup: FiniteSemigroup,
    e: Option<Vec<usize>>,
}

impl Source {
    fn load(&self) -> anyhow::Result<Loaded> {
        let (name, semigroup, structural_e) = match (&self.family, &self.table) {
            (Some(spec), None) => {
                let family = Family::build(*spec).with_context(|| format!("cannot build {spec}"))?;
                (spec.to_string(), family.semigroup().clone(), Some(family.e().to_vec()))
            }
            (None, Some(path)) => {
                let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
                let s = parse_table(&text).with_context(|| format!("invalid table {}", path.display()))?;
                (path.display().to_string(), s, None)
            }
            _ => bail!("exactly one of --family and --table is required"),
        };
        let e = match self.e.as_deref() {
            None | Some("auto-of") => match (structural_e, self.e.is_some()) {
                (Some(e), _) => Some(e),
                (None, true) => bail!("auto-of applies only to --family sources"),
                (None, false) => None,
            },
            Some(sel) => Some(parse_e(sel)?),
        };
        Ok(Loaded { name, semigroup, e })
    }
}

fn parse_e(selector: &str) -> anyhow::Result<Vec<usize>> {
    let path = Path::new(selector);
    let text = if path.is_file() {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?
    } else {
        selector.to_owned()
    };
    let e = parse_index_set(&text).with_context(|| format!("invalid E {selector:?}"))?;
    if e.is_empty() {
        bail!("E is empty");
    }
    Ok(e)
}

fn require_e(loaded: &Loaded) -> anyhow::Result<&[usize]> {
    loaded.e.as_deref().ok_or_else(|| anyhow!("--E is required for table input"))
}

/// An error that maps to exit code 2.
struct InputError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.into())
    }
}

type Outcome = Result<bool, InputError>;

fn cmd_analyze(source: &Source, timing: bool) -> Outcome {
    let loaded = source.load()?;
    let e = require_e(&loaded)?;
    let opts = AnalysisOptions { timing, ..AnalysisOptions::default() };
    let report = analyze(&loaded.name, &loaded.semigroup, e, &opts).context("invalid E")?;
    println!("{}", report.to_json_pretty());
    Ok(report.all_conditions_hold())
}

fn cmd_export(source: &Source, what: Artifact, out: Option<&Path>) -> Outcome {
    let loaded = source.load()?;
    let s = &loaded.semigroup;
    let estructure = || -> anyhow::Result<EStructure> {
        EStructure::new(std::sync::Arc::new(s.clone()), require_e(&loaded)?).context("invalid E")
    };
    let bytes = match what {
        Artifact::Table => s.to_table_text(),
        Artifact::DotEggbox => export_dot_eggbox(s, &green_classes(s)),
        Artifact::DotCategory => export_dot_category(&associated_category(&estructure()?)?),
        Artifact::PhiMatrix => {
            let mut text = serde_json::to_string_pretty(&phi(&estructure()?).to_json())?;
            text.push('\n');
            text
        }
    };
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))?,
        None => std::io::stdout().write_all(bytes.as_bytes())?,
    }
    Ok(true)
}

fn cmd_verify(suite: Suite, only: &[String], opts: &VerifyOptions) -> Outcome {
    match suite {
        Suite::Acceptance => {
            if let Some(bad) = only.iter().find(|id| !is_criterion(id)) {
                return Err(anyhow!("unknown criterion {bad:?}").into());
            }
            let reports = run_acceptance_suite(only, opts)?;
            for r in &reports {
                println!("{}", r.summary_line());
            }
            let passed = reports.iter().filter(|r| r.passed).count();
            println!("{passed}/{} criteria passed", reports.len());
            Ok(passed == reports.len())
        }
        Suite::Corpus => {
            let rows = corpus_sweep(opts.max_order)?;
            for r in &rows {
                let verdict = if r.consistent() { "PASS" } else { "FAIL" };
                println!(
                    "{verdict} {} order={} gra={} phi_hom={} order_condition={} gla={}",
                    r.name, r.order, r.gra, r.phi_hom, r.order_condition, r.gla
                );
            }
            let consistent = rows.iter().filter(|r| r.consistent()).count();
            println!("{consistent}/{} instances consistent", rows.len());
            Ok(consistent == rows.len())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global()?;
    }
    match &cli.command {
        Command::Analyze(source) => cmd_analyze(source, cli.timing),
        Command::Export { source, what, out } => cmd_export(source, *what, out.as_deref()),
        Command::Verify { suite, only, max_order, budget } => {
            cmd_verify(*suite, only, &VerifyOptions { max_order: *max_order, budget: *budget })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
