//! `glaw`: command-line front end for glaw-core.
//!
//! Every command prints a JSON report on stdout, except `gen`, which prints a
//! triplet spec. Exit codes: 0 ok, 1 invariant violated, 2 parse error,
//! 3 precondition not met.

mod commands;
mod report;
mod spec;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use glaw_core::liecore::FundamentalTriplet;
use serde_json::Value;

use commands::{FormArg, SideArg, Sl2Args};
use report::{sha256_hex, CommandEcho, Failure, Report, TripletInfo};
use spec::TripletSpec;

const DEFAULT_MAX_DEGREE: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "glaw", version, about = "Exact computations with local and minimal graded Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Input {
    /// Triplet spec file; stdin when absent or "-".
    path: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct Degree {
    /// Degree budget, capped by GLAW_MAX_DEGREE.
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the triplet's invariants.
    Validate {
        #[command(flatten)]
        input: Input,
    },
    /// Grow the graded components of g_min.
    Grow {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        degree: Degree,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
    },
    /// Dimensions and finiteness diagnostics.
    Dims {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        degree: Degree,
        /// Number of irreducible summands of V, if known.
        #[arg(long)]
        components: Option<usize>,
    },
    /// Evaluate the P_n identity on basis tuples.
    #[command(name = "pn-check", alias = "pn")]
    PnCheck {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
    },
    /// Assumption (H), property (P) and sl2-triple certificates.
    Sl2 {
        #[command(flatten)]
        input: Input,
        /// X in V coordinates, comma separated.
        #[arg(long)]
        x: Option<String>,
        /// X as a homogeneous polynomial on W, for V = C^p[W].
        #[arg(long)]
        poly: Option<String>,
        /// dim W for --poly; inferred from dim V when absent.
        #[arg(long)]
        w_dim: Option<usize>,
        /// Relative invariant R, a polynomial in the coordinates of V.
        #[arg(long, requires = "point")]
        invariant: Option<String>,
        /// Point of V at which to build the triple from R.
        #[arg(long, requires = "invariant")]
        point: Option<String>,
    },
    /// Graded centralizer of a subalgebra of g0.
    Centralizer {
        #[command(flatten)]
        input: Input,
        /// `o(k)` for the orthogonal algebra inside g0 = gl(k), or a JSON list of g0 vectors.
        #[arg(long)]
        sub: String,
        #[command(flatten)]
        degree: Degree,
    },
    /// Structure constants of a finite g_min.
    Assemble {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        degree: Degree,
        /// Include the structure constants in the report.
        #[arg(long)]
        structure: bool,
    },
    /// Split off the trivial summand and the kernel of rho.
    Reduce {
        #[command(flatten)]
        input: Input,
        /// Assert that rho is completely reducible.
        #[arg(long)]
        assert_completely_reducible: bool,
        #[command(flatten)]
        degree: Degree,
    },
    /// Emit a built-in triplet spec.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Debug, Subcommand)]
enum Gen {
    /// gl(n) on degree-p polynomials.
    Sp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value = "trace")]
        form: FormArg,
    },
    /// gl(n) ⊕ gl(n) on n×n matrices with a rescaled form.
    Glblock {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda1: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda2: String,
    },
    /// Abelian g0 from a Cartan matrix (principal grading).
    Cartan {
        /// A1, A2, A3, B2, C2 or G2.
        #[arg(long)]
        name: Option<String>,
        /// Cartan matrix as JSON rows of rationals.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        symmetrizer: Option<String>,
    },
    /// Append a trivial summand to the input triplet's V.
    TrivialSummand {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// gl(n) on C^n with the trace form.
    Gl {
        #[arg(long)]
        n: usize,
    },
}

fn read_input(input: &Input) -> Result<String, Failure> {
    let mut text = String::new();
    match &input.path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::parse(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| Failure::parse(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

struct Loaded {
    spec: TripletSpec,
    triplet: FundamentalTriplet,
    info: TripletInfo,
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    let text = read_input(input)?;
    let spec: TripletSpec = serde_json::from_str(&text).map_err(|e| Failure::parse(format!("triplet spec: {e}")))?;
    let triplet = spec.to_triplet().map_err(|e| Failure::parse(format!("triplet spec: {}", e.0)))?;
    let canonical = TripletSpec::from_triplet(&spec.name, &triplet).to_json();
    let info = TripletInfo {
        name: spec.name.clone(),
        hash: sha256_hex(canonical.as_bytes()),
        dim_g0: triplet.dim_g0(),
        dim_v: triplet.dim_v(),
    };
    Ok(Loaded { spec, triplet, info })
}

fn degree_cap() -> Result<usize, Failure> {
    match std::env::var("GLAW_MAX_DEGREE") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::parse(format!("GLAW_MAX_DEGREE={v} is not a degree"))),
        Err(_) => Ok(DEFAULT_MAX_DEGREE),
    }
}

fn budget(d: &Degree) -> Result<usize, Failure> {
    let cap = degree_cap()?;
    Ok(d.max_degree.unwrap_or(cap).min(cap))
}

fn opt<T: ToString>(v: &Option<T>) -> Option<String> {
    v.as_ref().map(ToString::to_string)
}

fn path_arg(i: &Input) -> Option<String> {
    Some(i.path.as_ref().map_or_else(|| "-".to_string(), |p| p.display().to_string()))
}

fn side_str(s: SideArg) -> Option<String> {
    Some(format!("{s:?}").to_lowercase())
}

/// What a command prints: a report, or a spec on successful `gen`.
enum Output {
    Report(Report),
    Spec(TripletSpec),
}

fn with_triplet(
    name: &str,
    args: std::collections::BTreeMap<String, String>,
    input: &Input,
    start: Instant,
    f: impl FnOnce(&Loaded) -> Result<Value, Failure>,
) -> Output {
    let echo = CommandEcho { name: name.into(), args };
    let (info, outcome) = match load(input) {
        Ok(l) => (Some(l.info.clone()), f(&l)),
        Err(e) => (None, Err(e)),
    };
    Output::Report(Report::new(echo, info, outcome, start.elapsed().as_micros() as u64))
}

fn run(cli: Cli) -> Output {
    let start = Instant::now();
    match cli.command {
        Command::Validate { input } => {
            with_triplet("validate", commands::echo([("path", path_arg(&input))]), &input, start, |l| {
                commands::validate_cmd(&l.triplet)
            })
        }
        Command::Grow { input, degree, side } => {
            let args = commands::echo([
                ("path", path_arg(&input)),
                ("max_degree", opt(&degree.max_degree)),
                ("side", side_str(side)),
            ]);
            with_triplet("grow", args, &input, start, |l| commands::grow_cmd(&l.triplet, budget(&degree)?, side))
        }
        Command::Dims { input, degree, components } => {
            let args = commands::echo([
                ("path", path_arg(&input)),
                ("max_degree", opt(&degree.max_degree)),
                ("components", opt(&components)),
            ]);
            with_triplet("dims", args, &input, start, |l| commands::dims_cmd(&l.triplet, budget(&degree)?, components))
        }
        Command::PnCheck { input, n, side } => {
            let args =
                commands::echo([("path", path_arg(&input)), ("n", Some(n.to_string())), ("side", side_str(side))]);
            with_triplet("pn-check", args, &input, start, |l| commands::pn_cmd(&l.triplet, n, side))
        }
        Command::Sl2 { input, x, poly, w_dim, invariant, point } => {
            let args = commands::echo([
                ("path", path_arg(&input)),
                ("x", x.clone()),
                ("poly", poly.clone()),
                ("w_dim", opt(&w_dim)),
                ("invariant", invariant.clone()),
                ("point", point.clone()),
            ]);
            let a = Sl2Args {
                x: x.as_deref(),
                poly: poly.as_deref(),
                w_dim,
                invariant: invariant.as_deref(),
                point: point.as_deref(),
            };
            with_triplet("sl2", args, &input, start, |l| commands::sl2_cmd(&l.triplet, &a))
        }
        Command::Centralizer { input, sub, degree } => {
            let args = commands::echo([
                ("path", path_arg(&input)),
                ("sub", Some(sub.clone())),
                ("max_degree", opt(&degree.max_degree)),
            ]);
            with_triplet("centralizer", args, &input, start, |l| {
                commands::centralizer_cmd(&l.triplet, &sub, budget(&degree)?)
            })
        }
        Command::Assemble { input, degree, structure } => {
            let args = commands::echo([
                ("path", path_arg(&input)),
                ("max_degree", opt(&degree.max_degree)),
                ("structure", Some(structure.to_string())),
            ]);
            with_triplet("assemble", args, &input, start, |l| {
                commands::assemble_cmd(&l.triplet, budget(&degree)?, structure)
            })
        }
        Command::Reduce { input, assert_completely_reducible, degree } => {
            let args = commands::echo([
                ("path", path_arg(&input)),
                ("assert_completely_reducible", Some(assert_completely_reducible.to_string())),
                ("max_degree", opt(&degree.max_degree)),
            ]);
            with_triplet("reduce", args, &input, start, |l| {
                commands::reduce_cmd(&l.triplet, assert_completely_reducible, budget(&degree)?)
            })
        }
        Command::Gen(g) => run_gen(g, start),
    }
}

fn run_gen(g: Gen, start: Instant) -> Output {
    let (args, outcome) = match g {
        Gen::Sp { n, p, lambda, form } => (
            commands::echo([
                ("kind", Some("sp".into())),
                ("n", Some(n.to_string())),
                ("p", Some(p.to_string())),
                ("lambda", Some(lambda.clone())),
                ("form", Some(format!("{form:?}").to_lowercase())),
            ]),
            commands::gen_sp(n, p, &lambda, form),
        ),
        Gen::Glblock { n, lambda1, lambda2 } => (
            commands::echo([
                ("kind", Some("glblock".into())),
                ("n", Some(n.to_string())),
                ("lambda1", Some(lambda1.clone())),
                ("lambda2", Some(lambda2.clone())),
            ]),
            commands::gen_glblock(n, &lambda1, &lambda2),
        ),
        Gen::Cartan { name, matrix, symmetrizer } => (
            commands::echo([
                ("kind", Some("cartan".into())),
                ("name", name.clone()),
                ("matrix", matrix.clone()),
                ("symmetrizer", symmetrizer.clone()),
            ]),
            commands::gen_cartan(name.as_deref(), matrix.as_deref(), symmetrizer.as_deref()),
        ),
        Gen::TrivialSummand { input, k } => (
            commands::echo([
                ("kind", Some("trivial-summand".into())),
                ("path", path_arg(&input)),
                ("k", Some(k.to_string())),
            ]),
            load(&input).map(|l| commands::gen_trivial_summand(&l.spec, &l.triplet, k)),
        ),
        Gen::Gl { n } => {
            (commands::echo([("kind", Some("gl".into())), ("n", Some(n.to_string()))]), Ok(commands::gen_gl(n)))
        }
    };
    match outcome {
        Ok(spec) => Output::Spec(spec),
        Err(e) => {
            let echo = CommandEcho { name: "gen".into(), args };
            Output::Report(Report::new(echo, None, Err(e), start.elapsed().as_micros() as u64))
        }
    }
}

/// Writes to stdout, tolerating a closed pipe (`glaw ... | head`).
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Output::Spec(spec) => {
            emit(&spec.to_json());
            ExitCode::SUCCESS
        }
        Output::Report(r) => {
            emit(&r.to_json());
            if let Some(e) = &r.error {
                eprintln!("glaw: {e}");
            }
            ExitCode::from(r.exit_code as u8)
        }
    }
}
