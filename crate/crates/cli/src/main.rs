use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lagrange_core::cascade::{decompose_transitive, TransitiveDecomposition};
use lagrange_core::io::{parse_chain, parse_group, write_chain, ChainFile};
use lagrange_core::verify::{self, Bounds, VerificationReport};
use lagrange_core::{
    parse_cycles, stabilizer_descent, validate_chain, CascadedState, Error, ErrorKind,
    LagrangeDecomposition, Limits, PermGroup, Permutation,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_IO: u8 = 6;
const EXIT_USAGE: u8 = 64;

/// Hierarchical coset coordinates for permutation groups.
#[derive(Parser, Debug)]
#[command(name = "lagrange", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest coset index allowed at any level.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = positive)]
    max_index: u128,

    /// Largest number of coordinate prefixes in a dependency table.
    #[arg(long, global = true, default_value_t = 100_000, value_parser = positive)]
    max_table: u128,

    /// Write output to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
}

fn positive(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// Where the decomposition comes from: a chain file, or a group file with
/// a base point for the transitive variant.
#[derive(Args, Debug)]
struct Source {
    /// Chain file (groups separated by `---`, top first).
    #[arg(long, value_name = "FILE", conflicts_with = "group")]
    chain: Option<PathBuf>,

    /// Group file, decomposed along the stabilizer of --base.
    #[arg(long, value_name = "FILE", requires = "base")]
    group: Option<PathBuf>,

    /// Base point (1-based) for --group.
    #[arg(long)]
    base: Option<usize>,

    /// Points (1-based) the group acts on transitively; defaults to all.
    #[arg(long, value_name = "\"i j ...\"")]
    points: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SummaryFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Tsv,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print length, widths, component orders and subnormal flags.
    Decompose {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = SummaryFormat::Text)]
        format: SummaryFormat,
    },
    /// Coordinates of an element (or of a point, for --group).
    Raise {
        #[command(flatten)]
        source: Source,
        /// Element in 1-based cycle notation.
        #[arg(long, required_unless_present = "point")]
        element: Option<String>,
        /// Point (1-based) of the transitive action.
        #[arg(long, conflicts_with = "element")]
        point: Option<usize>,
        /// Also print the representative named by each coordinate.
        #[arg(long)]
        annotate: bool,
    },
    /// Element (or point, for --group) named by coordinates.
    Flatten {
        #[command(flatten)]
        source: Source,
        /// Coordinates, 0-based, e.g. "1 0 2".
        #[arg(long, allow_hyphen_values = true)]
        state: String,
        #[arg(long)]
        annotate: bool,
    },
    /// Apply an element to coordinates.
    Act {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_hyphen_values = true)]
        state: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        annotate: bool,
        /// Also confirm that flattening the result equals the flattened
        /// state followed by the element.
        #[arg(long)]
        check: bool,
    },
    /// Check the decomposition against brute force; exits 1 on any failure.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = verify::DEFAULT_SEED)]
        seed: u64,
        /// Sample count for sweeps too large to run exhaustively.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Largest group order enumerated exhaustively.
        #[arg(long, default_value_t = 5000, value_parser = positive)]
        exhaustive_order: u128,
        /// Largest pair count swept exhaustively.
        #[arg(long, default_value_t = 200_000, value_parser = positive)]
        exhaustive_pairs: u128,
        /// Level pair "upper,lower" (1-based) to test for independence.
        #[arg(long, value_name = "I,J")]
        independent: Vec<String>,
        #[arg(long, value_enum, default_value_t = SummaryFormat::Text)]
        format: SummaryFormat,
    },
    /// Dependency table of an element.
    Export {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value_t = ExportFormat::Tsv)]
        format: ExportFormat,
    },
    /// Describe a group file or a chain file.
    Info {
        #[arg(
            long,
            value_name = "FILE",
            conflicts_with = "group",
            required_unless_present = "group"
        )]
        chain: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        group: Option<PathBuf>,
    },
    /// Write the point-stabilizer chain of a group as a chain file.
    Descent {
        #[arg(long, value_name = "FILE")]
        group: PathBuf,
        /// Points (1-based) to stabilize in order.
        #[arg(long, value_name = "\"i j ...\"")]
        points: String,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    Usage(String),
    VerificationFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_points(text: &str, degree: usize) -> Result<Vec<usize>, Failure> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(p) => to_point(p, degree),
            Err(_) => Err(Error::Parse {
                location: "points".into(),
                message: format!("unexpected token '{t}'"),
            }
            .into()),
        })
        .collect()
}

/// 1-based point from the command line to a 0-based index.
fn to_point(p: usize, degree: usize) -> Result<usize, Failure> {
    match p {
        0 => Err(Error::Parse {
            location: "points".into(),
            message: "points are numbered from 1".into(),
        }
        .into()),
        p if p > degree => Err(Error::PointOutOfRange {
            point: p - 1,
            degree,
        }
        .into()),
        p => Ok(p - 1),
    }
}

enum Loaded {
    Chain(LagrangeDecomposition),
    Transitive(TransitiveDecomposition),
}

impl Loaded {
    fn decomposition(&self) -> &LagrangeDecomposition {
        match self {
            Loaded::Chain(d) => d,
            Loaded::Transitive(t) => t.decomposition(),
        }
    }
}

/// Loads the source. Representatives listed in a chain file are validated
/// when `validate_reps` is set, otherwise installed as given so that
/// verification can report on them.
fn load(source: &Source, limits: &Limits, validate_reps: bool) -> Result<Loaded, Failure> {
    if let Some(path) = &source.chain {
        let file: ChainFile = parse_chain(&read(path)?)?;
        let mut d = LagrangeDecomposition::new(file.to_chain()?, limits)?;
        file.apply_reps(&mut d, validate_reps)?;
        return Ok(Loaded::Chain(d));
    }
    let Some(path) = &source.group else {
        return Err(Failure::Usage(
            "one of --chain or --group is required".into(),
        ));
    };
    let group = parse_group(&read(path)?)?;
    let degree = group.degree();
    let base = to_point(source.base.expect("clap requires --base"), degree)?;
    let points = match &source.points {
        Some(text) => parse_points(text, degree)?,
        None => (0..degree).collect(),
    };
    Ok(Loaded::Transitive(decompose_transitive(
        &group, &points, base, limits,
    )?))
}

fn element(text: &str, group: &PermGroup) -> Result<Permutation, Failure> {
    Ok(parse_cycles(text, group.degree())?)
}

fn annotation(d: &LagrangeDecomposition, s: &CascadedState) -> Result<String, Failure> {
    let reps = d.representatives(s)?;
    Ok(s.coords()
        .iter()
        .zip(reps)
        .enumerate()
        .map(|(i, (c, r))| format!("level {}: {c} {r}\n", i + 1))
        .collect())
}

fn state_line(d: &LagrangeDecomposition, s: &CascadedState, annotate: bool) -> Outcome {
    let mut out = format!("{s}\n");
    if annotate {
        out.push_str(&annotation(d, s)?);
    }
    Ok(out)
}

fn summary_json(d: &LagrangeDecomposition) -> String {
    let report = d.chain().report();
    let value = serde_json::json!({
        "length": d.length(),
        "widths": d.widths(),
        "component_orders": d.component_orders().iter().map(|o| o.to_string()).collect::<Vec<_>>(),
        "subnormal": report.subnormal_flags,
        "kind": d.chain().kind(),
        "order": d.top().order().to_string(),
    });
    value.to_string() + "\n"
}

fn run(cli: &Cli) -> Outcome {
    let limits = Limits {
        max_index: cli.max_index,
        max_table: cli.max_table,
    };
    match &cli.command {
        Command::Decompose { source, format } => {
            let loaded = load(source, &limits, true)?;
            let d = loaded.decomposition();
            Ok(match format {
                SummaryFormat::Text => {
                    let mut out = d.summary();
                    if let Loaded::Transitive(t) = &loaded {
                        out.push_str(&format!(
                            "points {}\nbase {}\n",
                            t.points().len(),
                            t.base() + 1
                        ));
                    }
                    out
                }
                SummaryFormat::Json => summary_json(d),
            })
        }
        Command::Raise {
            source,
            element: text,
            point,
            annotate,
        } => {
            let loaded = load(source, &limits, true)?;
            let d = loaded.decomposition();
            let s = match (&loaded, point, text) {
                (Loaded::Transitive(t), Some(p), _) => {
                    t.raise_point(to_point(*p, d.top().degree())?)?
                }
                (_, Some(_), _) => {
                    return Err(Failure::Usage("--point needs --group and --base".into()))
                }
                (_, None, Some(text)) => d.raise_state(&element(text, d.top())?)?,
                (_, None, None) => return Err(Failure::Usage("--element is required".into())),
            };
            state_line(d, &s, *annotate)
        }
        Command::Flatten {
            source,
            state,
            annotate,
        } => {
            let loaded = load(source, &limits, true)?;
            let d = loaded.decomposition();
            let s: CascadedState = state.parse()?;
            let mut out = match &loaded {
                Loaded::Transitive(t) => format!("{}\n", t.flatten_point(&s)? + 1),
                Loaded::Chain(d) => format!("{}\n", d.flatten_state(&s)?),
            };
            if *annotate {
                out.push_str(&annotation(d, &s)?);
            }
            Ok(out)
        }
        Command::Act {
            source,
            state,
            element: text,
            annotate,
            check,
        } => {
            let loaded = load(source, &limits, true)?;
            let d = loaded.decomposition();
            let s: CascadedState = state.parse()?;
            let h = element(text, d.top())?;
            let moved = d.act(&s, &h)?;
            let mut out = state_line(d, &moved, *annotate)?;
            if *check {
                let lhs = d.flatten_state(&moved)?;
                let rhs = d.flatten_state(&s)?.then(&h);
                let ok = match &loaded {
                    Loaded::Chain(d) if d.chain().bottom().is_trivial() => lhs == rhs,
                    _ => d.chain().bottom().contains(&lhs.then(&rhs.inverse()))?,
                };
                out.push_str(&format!(
                    "check {}: flatten of result {lhs}, flattened state then element {rhs}\n",
                    if ok { "ok" } else { "FAILED" }
                ));
                if !ok {
                    return Err(Failure::VerificationFailed(out));
                }
            }
            Ok(out)
        }
        Command::Verify {
            source,
            seed,
            samples,
            exhaustive_order,
            exhaustive_pairs,
            independent,
            format,
        } => {
            let bounds = Bounds {
                exhaustive_order: *exhaustive_order,
                exhaustive_pairs: *exhaustive_pairs,
                samples: *samples,
                seed: *seed,
                max_table: cli.max_table,
            };
            let loaded = load(source, &limits, false)?;
            let d = loaded.decomposition();
            let mut report: VerificationReport = verify::verify_all(d, &bounds);
            if let Loaded::Transitive(t) = &loaded {
                report.push(verify::check_transitive(t, &bounds));
            }
            for pair in independent {
                let levels = parse_points(pair, d.length().max(1)).map_err(|_| {
                    Failure::Usage(format!(
                        "--independent expects two levels 'I,J', got '{pair}'"
                    ))
                })?;
                let [upper, lower] = levels[..] else {
                    return Err(Failure::Usage(format!(
                        "--independent expects two levels 'I,J', got '{pair}'"
                    )));
                };
                report.push(verify::check_independence(d, upper, lower, &bounds)?);
            }
            let text = match format {
                SummaryFormat::Text => report.to_text(),
                SummaryFormat::Json => report.to_json_lines(),
            };
            if !report.all_passed() {
                return Err(Failure::VerificationFailed(text));
            }
            Ok(text)
        }
        Command::Export {
            source,
            element: text,
            format,
        } => {
            let loaded = load(source, &limits, true)?;
            let d = loaded.decomposition();
            let table = d.materialize_dependencies(&element(text, d.top())?)?;
            Ok(match format {
                ExportFormat::Tsv => table.to_tsv(),
                ExportFormat::Dot => table.to_dot(),
            })
        }
        Command::Info { chain, group } => {
            if let Some(path) = group {
                let g = parse_group(&read(path)?)?;
                let mut out = format!(
                    "degree {}\norder {}\ngenerators {}\n",
                    g.degree(),
                    g.order(),
                    g.generators().len()
                );
                let base: Vec<String> = g
                    .base_and_orbit_sizes()
                    .iter()
                    .map(|(b, n)| format!("{}:{n}", b + 1))
                    .collect();
                out.push_str(&format!("base {}\n", base.join(" ")));
                return Ok(out);
            }
            let path = chain.as_ref().expect("clap requires --chain or --group");
            let file = parse_chain(&read(path)?)?;
            let report = validate_chain(
                &file.groups,
                file.kind == Some(lagrange_core::ChainKind::Total),
            )?;
            let orders: Vec<String> = file.groups.iter().map(|g| g.order().to_string()).collect();
            let widths: Vec<String> = report.widths.iter().map(ToString::to_string).collect();
            let mut out = format!(
                "valid {}\nlength {}\norders {}\nwidths {}\nkind {}\n",
                if report.valid { "yes" } else { "no" },
                report.length,
                orders.join(" "),
                widths.join(" "),
                report.kind
            );
            if let Some(fault) = &report.fault {
                out.push_str(&format!(
                    "fault at level {}: {}\n",
                    fault.level + 1,
                    fault.reason
                ));
            }
            Ok(out)
        }
        Command::Descent { group, points } => {
            let g = parse_group(&read(group)?)?;
            let points = parse_points(points, g.degree())?;
            let chain = stabilizer_descent(&g, &points)?;
            Ok(write_chain(&chain))
        }
    }
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Parse => 2,
        ErrorKind::Validation => 3,
        ErrorKind::Domain => 4,
        ErrorKind::Resource => 5,
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let (text, code) = match run(&cli) {
        Ok(text) => (text, 0),
        Err(Failure::VerificationFailed(text)) => (text, EXIT_VERIFY_FAILED),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(e.kind()));
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_IO);
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(msg) = emit(&cli, &text) {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_IO);
    }
    ExitCode::from(code)
}
