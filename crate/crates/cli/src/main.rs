//! `detpres`: multiplication matrices and determinantal presentation checks
//! from the command line.

mod examples;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use detpres::detpres::{
    check_presentation, enumerate_splits, nontrivial_classes, sweep, theorem_split, CheckOptions, Factorization,
    PresentationReport, SweepBounds, Verdict, WitnessBudget,
};
use detpres::groebner::Budget;
use detpres::varieties::{EmbeddedVariety, KindTag, VarietySpec};
use detpres::Error;

const EXIT_NOT_BY_SPLIT: u8 = 1;
const EXIT_NOT_DETERMINED: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_IO: u8 = 66;
const EXIT_BUDGET: u8 = 75;

#[derive(Parser)]
#[command(name = "detpres", version, about = "Determinantal presentations of embedded varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Segre-Veronese embedding of a product of projective spaces.
    Segre {
        /// Dimensions n_1,...,n_l of the factors.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Multidegree m_1,...,m_l of the line bundle.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        multidegree: Vec<i64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Projective toric variety of a dilated lattice polytope.
    Toric {
        /// JSON file: a list of vertices, or a variety object of kind "toric".
        #[arg(long)]
        points: PathBuf,
        /// Dilation d; overrides the file.
        #[arg(long, allow_hyphen_values = true)]
        dilation: Option<i64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Variety given by a graded ring with relations.
    Presented {
        /// JSON variety object of kind "presented".
        #[arg(long)]
        ring: PathBuf,
        /// Degree of the line bundle; overrides the file. A section order
        /// in the file is only used when the degrees agree.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        degree: Option<Vec<i64>>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Reruns the worked examples and compares them with the golden reports.
    Examples {
        /// Run only the named cases.
        #[arg(long)]
        only: Vec<String>,
        #[arg(long, default_value = examples::DEFAULT_GOLDEN_DIR)]
        golden_dir: PathBuf,
        /// Overwrite the golden reports instead of comparing.
        #[arg(long)]
        bless: bool,
    },
    /// Checks every product of projective spaces within the bounds.
    Sweep {
        #[arg(long, default_value_t = 3)]
        max_factors: usize,
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        level: u8,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args)]
struct BudgetArgs {
    /// Maximum number of S-pairs per Groebner basis.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pair_budget: Option<u64>,
    /// Maximum number of stored terms per Groebner basis.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    term_budget: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(p) = self.pair_budget {
            b.max_pairs = p as usize;
        }
        if let Some(t) = self.term_budget {
            b.max_terms = t as usize;
        }
        b.time_limit = std::env::var("DETPRES_BUDGET_MS")
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .map(Duration::from_millis);
        b
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SplitMode {
    All,
    Theorem,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// A class u (the split is u, m - u) or a pair u,u' given as 2l
    /// comma-separated integers. Repeatable.
    #[arg(long = "split", allow_hyphen_values = true, conflicts_with = "splits")]
    split: Vec<String>,
    #[arg(long, value_enum)]
    splits: Option<SplitMode>,
    /// Pool the minors of all splits into one check.
    #[arg(long)]
    pool: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    level: u8,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Random candidates in the 1-genericity search; 0 disables the search.
    #[arg(long, default_value_t = 64)]
    witness_budget: usize,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timings: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

impl RunArgs {
    fn options(&self) -> CheckOptions {
        let budget = self.budget.budget();
        CheckOptions {
            level: self.level,
            witness: (self.witness_budget > 0).then(|| WitnessBudget {
                samples: self.witness_budget,
                ..WitnessBudget::default()
            }),
            budget,
            record_timings: self.timings,
        }
    }
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceExceeded { .. } => EXIT_BUDGET,
            Error::InvalidSplit(_) | Error::SplitsRequired => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_IO,
        message: format!("{}: {e}", path.display()),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn parse_ints(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| usage(format!("invalid split `{text}`"))))
        .collect()
}

/// Resolves the split flags against the variety. `None` means the degree
/// admits no nontrivial factorization.
fn resolve_splits(v: &EmbeddedVariety, run: &RunArgs, presented: bool) -> Result<Option<Vec<Factorization>>, Failure> {
    let m = v.bundle_degree().to_vec();
    if !run.split.is_empty() {
        let mut out = Vec::new();
        for s in &run.split {
            let u = parse_ints(s)?;
            let f = if u.len() == 2 * m.len() {
                Factorization::new(u[..m.len()].to_vec(), u[m.len()..].to_vec())
            } else if u.len() == m.len() {
                Factorization::complement(&u, &m)?
            } else {
                return Err(usage(format!(
                    "split `{s}` must have {} or {} entries",
                    m.len(),
                    2 * m.len()
                )));
            };
            f.validate(v)?;
            out.push(f);
        }
        return Ok(Some(out));
    }
    if presented {
        if nontrivial_classes(&m).is_empty() {
            return Ok(None);
        }
        return Err(Error::SplitsRequired.into());
    }
    let all = enumerate_splits(v)?;
    if all.is_empty() {
        return Ok(None);
    }
    Ok(Some(match run.splits {
        Some(SplitMode::All) => all,
        Some(SplitMode::Theorem) => match theorem_split(&m) {
            Some(f) if f.validate(v).is_ok() => vec![f],
            _ => return Err(Error::NoFactorization(m).into()),
        },
        // Default: the split from the theorem when there is one.
        None => match theorem_split(&m) {
            Some(f) if f.validate(v).is_ok() => vec![f],
            _ => all,
        },
    }))
}

fn exit_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::DetPresented | Verdict::GeneratedByMultiple => 0,
        Verdict::NotByThisSplit => EXIT_NOT_BY_SPLIT,
        Verdict::NotDetermined => EXIT_NOT_DETERMINED,
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| io_failure(Path::new("<stdout>"), e))
        }
    }
}

/// Runs the checks requested by `run` and writes the reports.
fn run_checks(v: &EmbeddedVariety, run: &RunArgs, presented: bool) -> Result<u8, Failure> {
    let options = run.options();
    let reports: Vec<PresentationReport> = match resolve_splits(v, run, presented)? {
        None if presented => vec![check_presentation(v, &[], &options)?],
        None => return Err(Error::NoFactorization(v.bundle_degree().to_vec()).into()),
        Some(splits) if run.pool || splits.len() == 1 => vec![check_presentation(v, &splits, &options)?],
        Some(splits) => splits
            .iter()
            .map(|f| check_presentation(v, std::slice::from_ref(f), &options))
            .collect::<detpres::Result<_>>()?,
    };
    let text = match run.format {
        Format::Text => reports.iter().map(PresentationReport::to_text).collect::<Vec<_>>().join("\n"),
        Format::Json if reports.len() == 1 => reports[0].to_json() + "\n",
        Format::Json => serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n",
    };
    emit(run.out.as_deref(), &text)?;
    // Several unpooled splits: success if any single split succeeds.
    let code = reports.iter().map(|r| exit_code(r.verdict)).min().unwrap_or(EXIT_NOT_BY_SPLIT);
    Ok(code)
}

fn load_spec(path: &Path) -> Result<VarietySpec, Failure> {
    let text = read_file(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::from(Error::InvalidInput(format!("{}: {e}", path.display()))))?;
    if let serde_json::Value::Array(_) = value {
        let points: Vec<Vec<i64>> = serde_json::from_value(value)
            .map_err(|e| Failure::from(Error::InvalidInput(format!("{}: {e}", path.display()))))?;
        return Ok(VarietySpec {
            kind: KindTag::Toric,
            points: Some(points),
            ..VarietySpec::default()
        });
    }
    Ok(VarietySpec::from_json(&text)?)
}

fn expect_kind(spec: &VarietySpec, kind: KindTag, path: &Path) -> Result<(), Failure> {
    if spec.kind == kind {
        Ok(())
    } else {
        Err(usage(format!("{} describes a variety of kind {:?}", path.display(), spec.kind)))
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Segre { dims, multidegree, run } => {
            let v = EmbeddedVariety::segre_veronese(&dims, &multidegree)?;
            run_checks(&v, &run, false)
        }
        Command::Toric { points, dilation, run } => {
            let mut spec = load_spec(&points)?;
            expect_kind(&spec, KindTag::Toric, &points)?;
            if dilation.is_some() {
                spec.dilation = dilation;
            }
            let v = spec.build_with_budget(&run.budget.budget())?;
            run_checks(&v, &run, false)
        }
        Command::Presented { ring, degree, run } => {
            let mut spec = load_spec(&ring)?;
            expect_kind(&spec, KindTag::Presented, &ring)?;
            if let Some(d) = degree {
                if spec.bundle_degree.as_ref() != Some(&d) {
                    spec.section_order = None;
                }
                spec.bundle_degree = Some(d);
            }
            let v = spec.build_with_budget(&run.budget.budget())?;
            run_checks(&v, &run, true)
        }
        Command::Examples { only, golden_dir, bless } => examples::run(&only, &golden_dir, bless),
        Command::Sweep {
            max_factors,
            max_dim,
            max_degree,
            level,
            format,
            out,
            budget,
        } => {
            if max_factors == 0 || max_dim == 0 || max_degree < 1 {
                return Err(usage("sweep bounds must be positive"));
            }
            let bounds = SweepBounds {
                max_factors,
                max_dim,
                max_degree,
            };
            let options = CheckOptions {
                level,
                budget: budget.budget(),
                witness: None,
                record_timings: false,
            };
            let summary = sweep(&bounds, &options)?;
            let text = match format {
                SweepFormat::Csv => summary.to_csv(),
                SweepFormat::Json => serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n",
            };
            emit(out.as_deref(), &text)?;
            let skipped = summary.rows.iter().filter(|r| r.verdict == "SKIPPED").count();
            eprintln!(
                "{} cells, {} meeting the hypothesis, {} counterexamples, {} failures on O(1,1,1), {} skipped",
                summary.rows.len(),
                summary.hypothesis_cells,
                summary.counterexamples.len(),
                summary.negative_case_failures.len(),
                skipped
            );
            let clean = summary.counterexamples.is_empty() && summary.negative_case_failures.is_empty();
            Ok(if clean { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
