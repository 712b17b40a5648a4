use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use interlace_core::checks::{run_suite, selfcheck, CheckConfig, Suite};
use interlace_core::interlace::{interlace, q_evaluate, VAR_X, VAR_Y};
use interlace_core::polyring::parse_rational;
use interlace_core::tutte::{
    collapse_sz, param_rank_recursive_with, param_rank_subset_with, pi_project, section_transversal_with,
    tutte_subset_with, EnumOptions, TransversalScheme,
};
use interlace_core::{BinaryMatroid, ElementKind, Error, LoopedGraph, Method, MultiPoly, ParameterAssignment};

const EXIT_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;
const EXIT_FLAGS: u8 = 4;

/// Largest graph accepted by `itp check`.
const CHECK_MAX_VERTICES: usize = 7;
/// Largest vertex count for exhaustive `itp selfcheck`.
const SELFCHECK_MAX_VERTICES: usize = 5;

#[derive(Parser)]
#[command(name = "itp", version, about = "Interlace and parametrized Tutte polynomials of looped simple graphs")]
struct Cli {
    /// Worker threads for subset enumeration (1 disables parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one polynomial of a graph.
    Compute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Parameter assignment file (kind param_rank only).
        #[arg(long)]
        params: Option<PathBuf>,
        /// Evaluate q at `x=R,y=R`; giving only `x=N` or `y=N` substitutes
        /// that variable (e.g. `x=2`) and prints the remaining polynomial.
        #[arg(long)]
        eval: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check the evaluators and identities on one graph.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        suite: SuiteArg,
    },
    /// Run the identity suite on every graph with the given vertex count.
    Selfcheck {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Additional seeded random graphs (6 to 9 vertices) for the
        /// three-way q comparison.
        #[arg(long, default_value_t = 0)]
        random_extra: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    Q,
    TutteIa,
    TutteIas,
    SectionIa,
    SectionIas,
    ParamRank,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Subset,
    Recursive,
    Section,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Methods,
    Section,
    Ias,
    Identities,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Methods => Suite::Methods,
            SuiteArg::Section => Suite::Section,
            SuiteArg::Ias => Suite::Ias,
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::All => Suite::All,
        }
    }
}

/// A diagnostic plus the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn flags(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_FLAGS,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            Error::GraphParse { .. }
            | Error::ParamParse { .. }
            | Error::PolyParse(_)
            | Error::BadRational(_)
            | Error::MissingAssignment(_)
            | Error::UnknownVertex(_) => EXIT_INPUT,
            _ => EXIT_FAILED,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut opts = EnumOptions::default();
    if let Some(t) = cli.threads {
        if t <= 1 {
            opts.parallel = false;
        } else if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("itp: {e}");
            return ExitCode::from(EXIT_FAILED);
        }
    }
    let result = match cli.command {
        Command::Compute {
            input,
            kind,
            method,
            params,
            eval,
            format,
        } => compute(&input, kind, method, params.as_deref(), eval.as_deref(), format, &opts),
        Command::Check { input, suite } => check(&input, suite.into(), &opts),
        Command::Selfcheck {
            max_vertices,
            seed,
            random_extra,
        } => run_selfcheck(max_vertices, seed, random_extra),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("itp: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_graph(path: &Path) -> Result<LoopedGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(text.parse()?)
}

fn compute(
    input: &Path,
    kind: Kind,
    method: MethodArg,
    params: Option<&Path>,
    eval: Option<&str>,
    format: Format,
    opts: &EnumOptions,
) -> Result<u8, Failure> {
    if method == MethodArg::Section && !matches!(kind, Kind::Q | Kind::SectionIa | Kind::SectionIas) {
        return Err(Failure::flags("--method section needs --kind q, section_ia or section_ias"));
    }
    if (kind == Kind::ParamRank) != params.is_some() {
        return Err(Failure::flags("--params is required for --kind param_rank and allowed only there"));
    }
    if eval.is_some() && kind != Kind::Q {
        return Err(Failure::flags("--eval applies only to --kind q"));
    }
    let point = eval.map(parse_point).transpose()?;

    let g = read_graph(input)?;
    let started = Instant::now();
    let poly = match kind {
        Kind::Q => {
            let m = match method {
                MethodArg::Subset => Method::Subset,
                MethodArg::Recursive => Method::Recursive,
                MethodArg::Section => Method::Section,
            };
            interlace(&g, m, opts)?.polynomial
        }
        Kind::TutteIa | Kind::TutteIas => {
            let m = matroid_for(&g, kind == Kind::TutteIas);
            match method {
                MethodArg::Subset => tutte_subset_with(&m, opts)?,
                _ => {
                    let ones = ParameterAssignment::uniform(&m, &MultiPoly::one(), &MultiPoly::one());
                    param_rank_recursive_with(&m, &ones, opts)?
                }
            }
        }
        Kind::SectionIa | Kind::SectionIas => {
            let m = matroid_for(&g, kind == Kind::SectionIas);
            let scheme = TransversalScheme::from_matroid(&m)?;
            let asg = ParameterAssignment::symbolic(&m);
            match method {
                MethodArg::Section => section_transversal_with(&m, &scheme, &asg, opts)?,
                MethodArg::Subset => collapse_sz(&pi_project(&param_rank_subset_with(&m, &asg, opts)?, &scheme))?,
                MethodArg::Recursive => {
                    collapse_sz(&pi_project(&param_rank_recursive_with(&m, &asg, opts)?, &scheme))?
                }
            }
        }
        Kind::ParamRank => {
            let path = params.expect("checked above");
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
            let asg = ParameterAssignment::parse(&text)?;
            let has_psi = asg.iter().any(|(l, _)| l.kind == ElementKind::Psi);
            let m = matroid_for(&g, has_psi);
            match method {
                MethodArg::Subset => param_rank_subset_with(&m, &asg, opts)?,
                _ => param_rank_recursive_with(&m, &asg, opts)?,
            }
        }
    };
    let elapsed = started.elapsed();

    let rendered = match point {
        None => render_poly(&poly, format),
        Some(Point::Full(x, y)) => render_value(&q_evaluate(&poly, &x, &y)?, format),
        Some(Point::Partial(var, value)) => {
            render_poly(&poly.substitute(var, &MultiPoly::constant(value)), format)
        }
    };
    println!("{rendered}");
    let method_name = match method {
        MethodArg::Subset => "subset",
        MethodArg::Recursive => "recursive",
        MethodArg::Section => "section",
    };
    eprintln!(
        "vertices: {}  method: {method_name}  wall time: {:.3} s",
        g.vertex_count(),
        elapsed.as_secs_f64()
    );
    Ok(0)
}

fn matroid_for(g: &LoopedGraph, ias: bool) -> BinaryMatroid {
    if ias {
        BinaryMatroid::build_ias(g)
    } else {
        BinaryMatroid::build_ia(g)
    }
}

enum Point {
    Full(BigRational, BigRational),
    Partial(&'static str, BigInt),
}

/// `x=R,y=R`, or a single `x=N` / `y=N` with an integer value.
fn parse_point(s: &str) -> Result<Point, Failure> {
    let mut x = None;
    let mut y = None;
    for part in s.split(',') {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Failure::input(format!("bad --eval component `{part}`")))?;
        let value = parse_rational(value)?;
        let slot = match name.trim() {
            "x" => &mut x,
            "y" => &mut y,
            other => return Err(Failure::input(format!("--eval names unknown variable `{other}`"))),
        };
        if slot.replace(value).is_some() {
            return Err(Failure::input(format!("--eval gives `{}` twice", name.trim())));
        }
    }
    match (x, y) {
        (Some(x), Some(y)) => Ok(Point::Full(x, y)),
        (Some(v), None) | (None, Some(v)) if !v.is_integer() => Err(Failure::input(
            "a single-variable --eval needs an integer value",
        )),
        (Some(v), None) => Ok(Point::Partial(VAR_X, v.to_integer())),
        (None, Some(v)) => Ok(Point::Partial(VAR_Y, v.to_integer())),
        (None, None) => Err(Failure::input("empty --eval")),
    }
}

fn render_poly(p: &MultiPoly, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Json => p.to_json(),
    }
}

fn render_value(v: &BigRational, format: Format) -> String {
    match format {
        Format::Text => v.to_string(),
        Format::Json => serde_json::json!({ "value": v.to_string() }).to_string(),
    }
}

fn check(input: &Path, suite: Suite, opts: &EnumOptions) -> Result<u8, Failure> {
    let g = read_graph(input)?;
    if g.vertex_count() > CHECK_MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "graph for check",
            size: g.vertex_count(),
            cap: CHECK_MAX_VERTICES,
        }
        .into());
    }
    let cfg = CheckConfig {
        opts: *opts,
        ..CheckConfig::default()
    };
    let outcomes = run_suite(&g, suite, &cfg)?;
    let mut report = String::new();
    for o in &outcomes {
        writeln!(report, "{o}").expect("string write");
    }
    print!("{report}");
    Ok(if outcomes.iter().all(|o| o.passed()) { 0 } else { EXIT_FAILED })
}

fn run_selfcheck(vertices: usize, seed: u64, random_extra: u64) -> Result<u8, Failure> {
    if vertices > SELFCHECK_MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "exhaustive selfcheck vertex count",
            size: vertices,
            cap: SELFCHECK_MAX_VERTICES,
        }
        .into());
    }
    let started = Instant::now();
    let report = selfcheck(vertices, seed, random_extra);
    println!("graphs checked: {}", report.graphs);
    println!("random graphs checked: {}", report.random_graphs);
    println!("failures: {}", report.failures);
    if let Some(first) = &report.first_failure {
        println!("first failure: {first}");
    }
    eprintln!("wall time: {:.3} s", started.elapsed().as_secs_f64());
    Ok(if report.failures == 0 { 0 } else { EXIT_FAILED })
}
