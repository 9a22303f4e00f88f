//! The `seriation` command. [`run`] takes the argument list and output
//! streams and returns the process exit status.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use seriation_core::{
    fixture, ComponentSpectrum, IllPosedPolicy, IllPosedReason, Label, PQTree, SeriationResult,
    SpectralError, Tolerances, Warning, DEFAULT_ENUMERATION_CAP, FIXTURE_NAMES,
};

use crate::json::{policy_name, report_json, tree_from_str, tree_to_string};
use crate::text::{parse_matrix, write_similarity, ParseOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ILL_POSED: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;
pub const EXIT_CAPACITY: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "seriation",
    version,
    about = "Spectral seriation of unit-feature matrices into PQ-trees"
)]
#[command(
    after_help = "Exit status: 0 ok, 1 negative answer, 2 input error, 3 ill-posed, 4 numeric failure, 5 capacity exceeded."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the unit similarity matrix S = B·Bᵀ of the binarized data.
    Similarity {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Text)]
        format: MatrixFormat,
    },
    /// Seriate the units and print the PQ-tree with a diagnostics report.
    Seriate {
        #[command(flatten)]
        input: InputArgs,
        /// Relative eigenpair residual bound.
        #[arg(long, default_value_t = Tolerances::DEFAULT_EIG_TOL)]
        eig_tol: f64,
        /// Relative gap under which eigenvalues count as equal.
        #[arg(long, default_value_t = Tolerances::DEFAULT_MULT_TOL)]
        mult_tol: f64,
        /// Fiedler entries closer than this times the largest entry are tied.
        #[arg(long, default_value_t = Tolerances::DEFAULT_TIE_TOL)]
        tie_tol: f64,
        /// Handling of components with a multiple Fiedler value.
        #[arg(long, value_enum, default_value_t = Policy::PCollapse)]
        policy: Policy,
        #[arg(long, value_enum, default_value_t = TreeFormat::Json)]
        format: TreeFormat,
        /// Also list every frontier, failing if there are more than N.
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        max_enumerate: Option<u64>,
    },
    /// Operations on a PQ-tree stored as JSON.
    #[command(subcommand)]
    Tree(TreeCommand),
}

#[derive(Debug, Subcommand)]
enum TreeCommand {
    /// Print every frontier, one per line.
    Frontiers {
        file: PathBuf,
        #[arg(long, value_name = "N", default_value_t = DEFAULT_ENUMERATION_CAP as u64,
              value_parser = clap::value_parser!(u64).range(1..))]
        max_enumerate: u64,
    },
    /// Print the exact number of frontiers.
    Count { file: PathBuf },
    /// Print whether a comma-separated permutation is a frontier.
    Contains { file: PathBuf, permutation: String },
    /// Render the tree.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Built-in data set.
    #[arg(long, conflicts_with = "input", required_unless_present = "input", value_parser = clap::builder::PossibleValuesParser::new(FIXTURE_NAMES))]
    fixture: Option<String>,
    /// Delimited text file of non-negative integers, one unit per line.
    #[arg(long)]
    input: Option<PathBuf>,
    /// The input's first line holds column labels.
    #[arg(long)]
    header: bool,
    /// Binarize abundance data without a warning.
    #[arg(long)]
    binarize: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MatrixFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Json,
    Dot,
    Ascii,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RenderFormat {
    Json,
    Dot,
    Ascii,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Policy {
    PCollapse,
    FirstVector,
}

impl From<Policy> for IllPosedPolicy {
    fn from(p: Policy) -> Self {
        match p {
            Policy::PCollapse => IllPosedPolicy::PCollapse,
            Policy::FirstVector => IllPosedPolicy::FirstVector,
        }
    }
}

/// A failed command: exit status and message for the error stream.
struct Failure(i32, String);

fn input_error(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_INPUT, msg.to_string())
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut stdout = String::new();
    let mut stderr = String::new();
    let code = match dispatch(cli.command, &mut stdout, &mut stderr) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    };
    let _ = out.write_all(stdout.as_bytes());
    let _ = err.write_all(stderr.as_bytes());
    code
}

fn dispatch(cmd: Command, out: &mut String, err: &mut String) -> Result<i32, Failure> {
    match cmd {
        Command::Similarity { input, format } => cmd_similarity(&input, format, out, err),
        Command::Seriate {
            input,
            eig_tol,
            mult_tol,
            tie_tol,
            policy,
            format,
            max_enumerate,
        } => {
            let tolerances = Tolerances::new(eig_tol, mult_tol, tie_tol).map_err(input_error)?;
            let opts = seriation_core::SeriationOptions {
                tolerances,
                policy: policy.into(),
            };
            cmd_seriate(&input, &opts, format, max_enumerate, out, err)
        }
        Command::Tree(t) => cmd_tree(t, out),
    }
}

fn load(input: &InputArgs) -> Result<seriation_core::AbundanceMatrix, Failure> {
    if let Some(name) = &input.fixture {
        return fixture(name).map_err(input_error);
    }
    let path = input
        .input
        .as_ref()
        .expect("clap requires one input source");
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let opts = ParseOptions {
        header: input.header,
        ..Default::default()
    };
    parse_matrix(&text, opts).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

const BINARIZED: &str = "warning: input is not 0/1; using its binarized form (nonzero -> 1)";

fn cmd_similarity(
    input: &InputArgs,
    format: MatrixFormat,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Failure> {
    let m = load(input)?;
    if !m.is_binary() && !input.binarize {
        let _ = writeln!(err, "{BINARIZED}");
    }
    let s = seriation_core::similarity(&seriation_core::binarize(&m));
    match format {
        MatrixFormat::Text => out.push_str(&write_similarity(&s)),
        MatrixFormat::Json => {
            let rows: Vec<&[u64]> = (0..s.order()).map(|i| s.row(i)).collect();
            let doc = json!({"labels": s.labels(), "similarity": rows});
            out.push_str(&serde_json::to_string_pretty(&doc).expect("JSON serializes"));
            out.push('\n');
        }
    }
    Ok(EXIT_OK)
}

fn numeric_exit(e: &SpectralError) -> i32 {
    match e {
        SpectralError::NoConvergence { .. }
        | SpectralError::Residual { .. }
        | SpectralError::Disconnected { .. }
        | SpectralError::Component { .. } => EXIT_NUMERIC,
        _ => EXIT_INPUT,
    }
}

fn cmd_seriate(
    input: &InputArgs,
    opts: &seriation_core::SeriationOptions,
    format: TreeFormat,
    cap: Option<u64>,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Failure> {
    let m = load(input)?;
    let result =
        seriation_core::seriate(&m, opts).map_err(|e| Failure(numeric_exit(&e), e.to_string()))?;
    let frontiers = match cap {
        Some(cap) => Some(enumerate(&result.tree, cap)?),
        None => None,
    };
    for w in &result.warnings {
        match w {
            Warning::Binarized if input.binarize => {}
            Warning::Binarized => {
                let _ = writeln!(err, "{BINARIZED}");
            }
            w => {
                let _ = writeln!(err, "warning: {}", describe_warning(w));
            }
        }
    }
    match format {
        TreeFormat::Json => {
            let doc = report_json(&result, frontiers.as_deref());
            out.push_str(&serde_json::to_string_pretty(&doc).expect("JSON serializes"));
            out.push('\n');
        }
        TreeFormat::Dot => {
            out.push_str(&result.tree.to_dot());
            for line in report_lines(&result, frontiers.as_deref()) {
                let _ = writeln!(out, "// {line}");
            }
        }
        TreeFormat::Ascii => {
            out.push_str(&result.tree.to_ascii());
            for line in report_lines(&result, frontiers.as_deref()) {
                let _ = writeln!(out, "{line}");
            }
        }
        TreeFormat::Text => {
            for line in report_lines(&result, frontiers.as_deref()) {
                let _ = writeln!(out, "{line}");
            }
        }
    }
    Ok(if result.is_ill_posed() {
        EXIT_ILL_POSED
    } else {
        EXIT_OK
    })
}

fn enumerate(tree: &PQTree, cap: u64) -> Result<Vec<Vec<Label>>, Failure> {
    let cap = usize::try_from(cap).unwrap_or(usize::MAX);
    tree.enumerate_frontiers(cap)
        .map_err(|e| Failure(EXIT_CAPACITY, e.to_string()))
}

fn join(labels: &[Label]) -> String {
    labels
        .iter()
        .map(Label::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn describe_warning(w: &Warning) -> String {
    match w {
        Warning::Binarized => "input was binarized".into(),
        Warning::IllPosed {
            units,
            reason,
            policy,
        } => {
            let why = match reason {
                IllPosedReason::MultipleFiedler {
                    value,
                    multiplicity,
                    ..
                } => {
                    format!("Fiedler value {value} has multiplicity {multiplicity}")
                }
                IllPosedReason::TiedFiedler => "all Fiedler vector entries are tied".into(),
            };
            format!(
                "ill-posed component [{}]: {why} ({})",
                join(units),
                policy_name(*policy)
            )
        }
    }
}

fn report_lines(result: &SeriationResult, frontiers: Option<&[Vec<Label>]>) -> Vec<String> {
    let mut lines = vec![
        format!("count: {}", result.tree.count_frontiers()),
        format!("frontier: {}", join(&result.tree.frontier())),
    ];
    for c in &result.components {
        lines.push(match &c.spectrum {
            ComponentSpectrum::Trivial { size } => {
                format!("component [{}]: size {size}", join(&c.units))
            }
            ComponentSpectrum::Fiedler(f) => format!(
                "component [{}]: fiedler {} multiplicity {}",
                join(&c.units),
                f.value,
                f.multiplicity
            ),
        });
    }
    for b in result.blocks.iter().filter(|b| b.depth > 0) {
        lines.push(format!(
            "block [{}] depth {}: fiedler {} multiplicity {}",
            join(&b.units),
            b.depth,
            b.fiedler.value,
            b.fiedler.multiplicity
        ));
    }
    for w in &result.warnings {
        lines.push(format!("warning: {}", describe_warning(w)));
    }
    if let Some(fs) = frontiers {
        for f in fs {
            lines.push(format!("frontiers: {}", join(f)));
        }
    }
    lines
}

fn read_tree(path: &PathBuf) -> Result<PQTree, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    tree_from_str(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn parse_permutation(text: &str) -> Result<Vec<Label>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<Label>()
                .map_err(|_| input_error(format!("{t:?} is not a leaf label")))
        })
        .collect()
}

fn cmd_tree(cmd: TreeCommand, out: &mut String) -> Result<i32, Failure> {
    match cmd {
        TreeCommand::Frontiers {
            file,
            max_enumerate,
        } => {
            let tree = read_tree(&file)?;
            for f in enumerate(&tree, max_enumerate)? {
                let _ = writeln!(out, "{}", join(&f));
            }
            Ok(EXIT_OK)
        }
        TreeCommand::Count { file } => {
            let _ = writeln!(out, "{}", read_tree(&file)?.count_frontiers());
            Ok(EXIT_OK)
        }
        TreeCommand::Contains { file, permutation } => {
            let tree = read_tree(&file)?;
            let perm = parse_permutation(&permutation)?;
            let yes = tree.contains(&perm).map_err(input_error)?;
            let _ = writeln!(out, "{yes}");
            Ok(if yes { EXIT_OK } else { EXIT_NO })
        }
        TreeCommand::Render { file, format } => {
            let tree = read_tree(&file)?;
            out.push_str(&match format {
                RenderFormat::Json => tree_to_string(&tree),
                RenderFormat::Dot => tree.to_dot(),
                RenderFormat::Ascii => tree.to_ascii(),
            });
            Ok(EXIT_OK)
        }
    }
}
