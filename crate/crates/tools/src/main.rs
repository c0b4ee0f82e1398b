use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jacobi_core::glue;
use jacobi_core::lmo::{self, LinkingData, SeifertInput};
use jacobi_core::naive;
use jacobi_core::{Color, ColorSet, Error, Rational, Series};
use jacobi_tools::dot::diagram_to_dot;
use jacobi_tools::format::{parse_diagrams, parse_matrix, parse_series, write_series, NamedDiagram, ParseError};
use jacobi_tools::verify::{verify, Campaign, VerifyConfig, VerifyError};

/// Symbolic computations with colored uni-trivalent diagrams.
///
/// Exit status: 0 success, 1 counterexample or mismatch, 2 usage, parse or
/// IO error, 3 violated precondition. Worker threads for `verify` are set
/// by JACOBI_THREADS (default: all available).
#[derive(Parser)]
#[command(name = "jacobi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Inputs {
    /// Diagram files whose names series files may refer to.
    #[arg(long = "diagrams", value_name = "FILE")]
    diagrams: Vec<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long, short, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Truncate the result to this degree; it must not exceed the degree
    /// up to which the inputs determine the result.
    #[arg(long, value_name = "N")]
    max_degree: Option<u32>,
}

#[derive(Args)]
struct Binary {
    left: PathBuf,
    right: PathBuf,
    /// Keep only the connected part of the result.
    #[arg(long)]
    connected: bool,
    /// Recompute with the naive enumerator and fail if the results differ.
    #[arg(long)]
    oracle: bool,
    #[command(flatten)]
    io: Inputs,
}

#[derive(Subcommand)]
enum Command {
    /// Full pairing of two series.
    Bracket(Binary),
    /// Pairing along the colors given by --colors.
    BracketX {
        #[command(flatten)]
        args: Binary,
        #[arg(long, num_args = 1.., required = true)]
        colors: Vec<String>,
    },
    /// Self-closure of a strutless series.
    Close {
        series: PathBuf,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        io: Inputs,
    },
    /// The differential operator applied to two strutless series.
    Dop(Binary),
    /// Exponential of a series with zero constant term.
    Exp {
        series: PathBuf,
        #[command(flatten)]
        io: Inputs,
    },
    /// Logarithm of a series with constant term 1.
    Log {
        series: PathBuf,
        #[command(flatten)]
        io: Inputs,
    },
    /// Terms that are single connected diagrams.
    Primitive {
        series: PathBuf,
        #[command(flatten)]
        io: Inputs,
    },
    /// Randomized campaign checking that an operator maps exponentials of
    /// primitive series to exponentials.
    Verify {
        /// main, partial, closure or differential.
        #[arg(long, default_value = "main")]
        campaign: Campaign,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, num_args = 1.., default_values_t = [String::from("y")])]
        colors: Vec<String>,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        /// Print every trial rather than a summary.
        #[arg(long)]
        verbose: bool,
    },
    /// Primitive series of the lens space L(p, q).
    Lens {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        /// Also compute the single-bracket form and fail if it differs.
        #[arg(long)]
        check_routes: bool,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Primitive series of a Seifert fibered space over the sphere.
    Seifert {
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// An exceptional fiber `p/q`; repeat for each fiber.
        #[arg(long = "fiber", value_name = "P/Q", allow_hyphen_values = true)]
        fibers: Vec<String>,
        /// The Casson-Walker invariant, taken as given.
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        casson_walker: String,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Formal Gaussian integration of a group-like series against a
    /// linking matrix.
    Gaussian {
        series: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Colors of the matrix rows, in order (default: the series colors).
        #[arg(long, num_args = 1..)]
        colors: Vec<String>,
        #[command(flatten)]
        io: Inputs,
    },
    /// Graphviz text for the diagrams in a diagram file.
    ExportDot {
        file: PathBuf,
        /// Export only this diagram.
        #[arg(long)]
        name: Option<String>,
        #[arg(long, short, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Mismatch(String),
    Usage(String),
    Precondition(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Mismatch(m) | Failure::Usage(m) | Failure::Precondition(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn precondition(context: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Precondition(format!("{context}: {e}"))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_error(path: &Path) -> impl Fn(ParseError) -> Failure + '_ {
    move |e| Failure::Usage(format!("{}:{}: {}", path.display(), e.line, e.message))
}

fn load_diagrams(paths: &[PathBuf]) -> Result<Vec<NamedDiagram>, Failure> {
    let mut out = Vec::new();
    for p in paths {
        out.extend(parse_diagrams(&read(p)?).map_err(parse_error(p))?);
    }
    Ok(out)
}

fn load_series(path: &Path, external: &[NamedDiagram]) -> Result<Series, Failure> {
    parse_series(&read(path)?, external).map_err(parse_error(path))
}

fn color_set(names: &[String]) -> Result<ColorSet, Failure> {
    ColorSet::from_names(names).map_err(|e| Failure::Usage(format!("--colors: {e}")))
}

fn parse_rational(flag: &str, s: &str) -> Result<Rational, Failure> {
    jacobi_tools::format::parse_rational_token(s).ok_or_else(|| Failure::Usage(format!("{flag}: bad rational {s:?}")))
}

fn emit(text: &str, output: &Option<PathBuf>) -> Outcome {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish(s: Series, io: &Inputs) -> Outcome {
    let s = match io.max_degree {
        Some(n) if n > s.trunc() => {
            return Err(Failure::Precondition(format!(
                "the inputs determine the result only up to degree {}, not {n}",
                s.trunc()
            )))
        }
        Some(n) => s.truncate(n),
        None => s,
    };
    emit(&write_series(&s), &io.output)
}

fn check_oracle(fast: &Series, slow: Result<Series, Error>) -> Outcome {
    let slow = slow.map_err(precondition("naive enumeration"))?;
    if *fast != slow {
        return Err(Failure::Mismatch(format!(
            "engine and naive enumeration disagree\nengine:\n{}naive:\n{}",
            write_series(fast),
            write_series(&slow)
        )));
    }
    Ok(())
}

fn connected(s: Series, yes: bool) -> Series {
    if yes {
        s.primitive_part()
    } else {
        s
    }
}

fn pairing(args: &Binary, x: Option<&ColorSet>, name: &str) -> Outcome {
    let external = load_diagrams(&args.io.diagrams)?;
    let left = load_series(&args.left, &external)?;
    let right = load_series(&args.right, &external)?;
    let x = x.cloned().unwrap_or_else(|| left.colors().clone());
    let out = glue::bracket_partial(&left, &right, &x).map_err(precondition(name))?;
    if args.oracle {
        check_oracle(&out, naive::bracket_partial(&left, &right, &x))?;
    }
    finish(connected(out, args.connected), &args.io)
}

fn differential(args: &Binary) -> Outcome {
    let external = load_diagrams(&args.io.diagrams)?;
    let left = load_series(&args.left, &external)?;
    let right = load_series(&args.right, &external)?;
    let out = glue::diff_op(&left, &right).map_err(precondition("dop"))?;
    if args.oracle {
        check_oracle(&out, naive::diff_op(&left, &right))?;
    }
    finish(connected(out, args.connected), &args.io)
}

fn unary(series: &Path, io: &Inputs, name: &str, op: impl Fn(&Series) -> Result<Series, Error>) -> Outcome {
    let s = load_series(series, &load_diagrams(&io.diagrams)?)?;
    finish(op(&s).map_err(precondition(name))?, io)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Bracket(args) => pairing(&args, None, "bracket"),
        Command::BracketX { args, colors } => pairing(&args, Some(&color_set(&colors)?), "bracket-x"),
        Command::Close {
            series,
            connected: c,
            oracle,
            io,
        } => {
            let s = load_series(&series, &load_diagrams(&io.diagrams)?)?;
            let out = glue::self_closure(&s).map_err(precondition("close"))?;
            if oracle {
                check_oracle(&out, naive::self_closure(&s))?;
            }
            finish(connected(out, c), &io)
        }
        Command::Dop(args) => differential(&args),
        Command::Exp { series, io } => unary(&series, &io, "exp", Series::exp),
        Command::Log { series, io } => unary(&series, &io, "log", Series::log),
        Command::Primitive { series, io } => unary(&series, &io, "primitive", |s| Ok(s.primitive_part())),
        Command::Verify {
            campaign,
            seed,
            max_degree,
            colors,
            trials,
            verbose,
        } => {
            jacobi_tools::init_threads().map_err(Failure::Usage)?;
            let cfg = VerifyConfig {
                seed,
                trunc: max_degree,
                colors: color_set(&colors)?,
                num_trials: trials,
                which: campaign,
            };
            let report = verify(&cfg).map_err(|e| match e {
                VerifyError::Engine { .. } => Failure::Precondition(e.to_string()),
                _ => Failure::Usage(e.to_string()),
            })?;
            if verbose {
                print!("{report}");
            } else {
                println!("{}", report.to_string().lines().next().unwrap_or(""));
            }
            match &report.counterexample {
                None => Ok(()),
                Some(cx) => Err(Failure::Mismatch(format!(
                    "trial {} (seed {}) fails {}\nleft input:\n{}right input:\n{}first differing monomial {:?}: {} vs {}, discrepancy {}",
                    cx.trial,
                    cx.seed,
                    cx.check,
                    write_series(&cx.b),
                    write_series(&cx.c),
                    cx.monomial,
                    cx.lhs,
                    cx.rhs,
                    cx.discrepancy
                ))),
            }
        }
        Command::Lens {
            p,
            q,
            check_routes,
            max_degree,
            output,
        } => {
            let s = if check_routes {
                let a = lmo::lens_space_primitive(p, q, max_degree).map_err(precondition("lens"))?;
                let b = lmo::lens_space_single_bracket(p, q, max_degree).map_err(precondition("lens"))?;
                if a != b {
                    let diff = a.sub(&b).expect("same colors");
                    return Err(Failure::Mismatch(format!(
                        "the two lens space routes differ by\n{}",
                        write_series(&diff)
                    )));
                }
                a
            } else {
                lmo::lens_space_primitive(p, q, max_degree).map_err(precondition("lens"))?
            };
            emit(&write_series(&s), &output)
        }
        Command::Seifert {
            b,
            fibers,
            casson_walker,
            max_degree,
            output,
        } => {
            let mut parsed = Vec::new();
            for f in &fibers {
                let pq = f
                    .split_once('/')
                    .and_then(|(p, q)| Some((p.trim().parse().ok()?, q.trim().parse().ok()?)));
                parsed.push(pq.ok_or_else(|| Failure::Usage(format!("--fiber: expected P/Q, found {f:?}")))?);
            }
            let input = SeifertInput {
                b,
                fibers: parsed,
                casson_walker: parse_rational("--casson-walker", &casson_walker)?,
            };
            let s = lmo::seifert_primitive(&input, max_degree).map_err(precondition("seifert"))?;
            emit(&write_series(&s), &output)
        }
        Command::Gaussian {
            series,
            matrix,
            colors,
            io,
        } => {
            let z = load_series(&series, &load_diagrams(&io.diagrams)?)?;
            let rows = parse_matrix(&read(&matrix)?).map_err(parse_error(&matrix))?;
            let order: Vec<Color> = if colors.is_empty() {
                z.colors().iter().cloned().collect()
            } else {
                color_set(&colors)?;
                colors.iter().map(|c| Color::new(c.as_str()).expect("checked above")).collect()
            };
            let linking = LinkingData::new(order, rows).map_err(precondition("gaussian"))?;
            let trunc = io.max_degree.unwrap_or(z.trunc() / 4);
            let out = lmo::gaussian_integrate(&z, &linking, trunc).map_err(precondition("gaussian"))?;
            emit(&write_series(&out), &io.output)
        }
        Command::ExportDot { file, name, output } => {
            let diagrams = parse_diagrams(&read(&file)?).map_err(parse_error(&file))?;
            let selected: Vec<&NamedDiagram> = match &name {
                Some(n) => diagrams.iter().filter(|d| &d.name == n).collect(),
                None => diagrams.iter().collect(),
            };
            if selected.is_empty() {
                return Err(Failure::Usage(match name {
                    Some(n) => format!("{}: no diagram named {n:?}", file.display()),
                    None => format!("{}: no diagrams", file.display()),
                }));
            }
            let text: String = selected.iter().map(|d| diagram_to_dot(&d.diagram, &d.name)).collect();
            emit(&text, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("jacobi: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
