use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use peakhcl::grothendieck as gr;
use peakhcl::heisenberg as hs;
use peakhcl::hopf::{self, convert};
use peakhcl::parse::{parse_composition, parse_element};
use peakhcl::supermodules as sm;
use peakhcl::verify::{self, Options, Report, Status, Suite};
use peakhcl::{Algebra, Basis, Composition, Error, FreeElement, Supermodule};

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "peakhcl", version, about = "Peak algebras, 0-Hecke-Clifford supermodules and their Grothendieck groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Exit with status 3 when any case was skipped for resource limits.
    #[arg(long, global = true)]
    strict: bool,
    /// Worker threads for verification batches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and expand it in a basis.
    Expand {
        expr: String,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Convert an element given as JSON (or `-` for stdin) into another basis.
    Convert {
        element: String,
        #[arg(long)]
        basis: String,
    },
    /// Pair NSym with QSym, or Peak with Peak*.
    Pair { left: String, right: String },
    /// Fock action of a Peak element on a Peak* element.
    Act {
        element: String,
        vector: String,
        #[arg(long)]
        basis: Option<String>,
    },
    /// Build, decompose and classify supermodules.
    Module {
        #[command(subcommand)]
        action: ModuleAction,
    },
    /// Run verification suites (`all` runs every acceptance suite).
    Verify {
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_degree: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Kind {
    Simple,
    Projective,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum AlgebraArg {
    Hecke,
    Hcl,
}

#[derive(Subcommand, Debug)]
enum ModuleAction {
    /// Construct `S_α`, `P_α`, `S̃_α` or `P̃_α` as a JSON module dump.
    Build {
        #[arg(long)]
        alpha: String,
        #[arg(long, value_enum, default_value = "simple")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "hcl")]
        algebra: AlgebraArg,
    },
    /// Indecomposable summands of `P̃_α` with multiplicities.
    Decompose {
        #[arg(long)]
        alpha: String,
    },
    /// Grothendieck class of a module dump (or of a built module).
    Class {
        #[arg(long)]
        file: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, value_enum, default_value = "simple")]
        kind: Kind,
    },
    /// Idempotent splitting of `S̃_α`.
    Split {
        #[arg(long)]
        alpha: String,
    },
    /// Clifford relations among the endomorphisms of `S̃_α`.
    End {
        #[arg(long)]
        alpha: String,
    },
}

enum Failure {
    Usage(String),
    Resource(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn basis_arg(name: &str) -> CliResult<Basis> {
    Basis::from_name(name).ok_or_else(|| Failure::Usage(format!("unknown basis {name:?}")))
}

fn alpha_arg(s: &str) -> CliResult<Composition> {
    Ok(parse_composition(s)?)
}

fn element_output(x: &FreeElement) -> Value {
    json!({"expression": x.to_string(), "element": x.to_json()})
}

fn emit(format: Format, value: &Value, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("serializable")),
        Format::Text => println!("{text}"),
    }
}

fn read_source(s: &str) -> CliResult<String> {
    if s == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(buf)
    } else if s.trim_start().starts_with('{') {
        Ok(s.to_string())
    } else {
        fs::read_to_string(s).map_err(|e| Failure::Usage(format!("{s}: {e}")))
    }
}

fn expand(format: Format, expr: &str, basis: Option<&str>) -> CliResult<()> {
    let mut x = parse_element(expr)?;
    if let Some(b) = basis {
        x = convert(&x, basis_arg(b)?)?;
    }
    emit(format, &element_output(&x), x.to_string());
    Ok(())
}

fn convert_cmd(format: Format, element: &str, basis: &str) -> CliResult<()> {
    let src = read_source(element)?;
    let v: Value = serde_json::from_str(&src).map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))?;
    let v = v.get("element").cloned().unwrap_or(v);
    let x = convert(&FreeElement::from_json(&v)?, basis_arg(basis)?)?;
    emit(format, &element_output(&x), x.to_string());
    Ok(())
}

fn pair(format: Format, left: &str, right: &str) -> CliResult<()> {
    let (x, y) = (parse_element(left)?, parse_element(right)?);
    let peak_side = |a: &FreeElement| a.algebra() == Algebra::Peak || a.basis() == Basis::Q;
    let value = if peak_side(&x) && y.algebra() == Algebra::PeakDual {
        hopf::peak_pairing(&x, &y)?
    } else {
        hopf::pairing(&x, &y)?
    };
    emit(format, &json!({"pairing": value.to_string()}), value.to_string());
    Ok(())
}

fn act(format: Format, element: &str, vector: &str, basis: Option<&str>) -> CliResult<()> {
    let mut x = hs::fock_action(&parse_element(element)?, &parse_element(vector)?)?;
    if let Some(b) = basis {
        x = convert(&x, basis_arg(b)?)?;
    }
    emit(format, &element_output(&x), x.to_string());
    Ok(())
}

fn build(alpha: &Composition, kind: Kind, algebra: AlgebraArg) -> CliResult<Supermodule> {
    Ok(match (kind, algebra) {
        (Kind::Simple, AlgebraArg::Hecke) => sm::simple_hecke(alpha),
        (Kind::Projective, AlgebraArg::Hecke) => sm::projective_hecke(alpha)?,
        (Kind::Simple, AlgebraArg::Hcl) => sm::simple_induced(alpha)?,
        (Kind::Projective, AlgebraArg::Hcl) => sm::projective_induced(alpha)?,
    })
}

fn module(format: Format, action: &ModuleAction) -> CliResult<()> {
    match action {
        ModuleAction::Build { alpha, kind, algebra } => {
            let m = build(&alpha_arg(alpha)?, *kind, *algebra)?;
            emit(format, &m.to_json(), m.to_string());
        }
        ModuleAction::Decompose { alpha } => {
            let a = alpha_arg(alpha)?;
            let parts = gr::decompose_projective(&a);
            let list: Vec<Value> = parts
                .iter()
                .map(|(p, k)| json!({"peak_set": p.elements(), "n": p.size(), "multiplicity": k}))
                .collect();
            let text = parts
                .iter()
                .map(|(p, k)| format!("({}_{}, {k})", peakhcl::combinatorics::format_set(p.mask()), p.size()))
                .collect::<Vec<_>>()
                .join(", ");
            emit(format, &json!({"alpha": a.parts(), "summands": list}), text);
        }
        ModuleAction::Class { file, alpha, kind } => {
            let m = match (file, alpha) {
                (Some(f), None) => {
                    let v: Value = serde_json::from_str(&read_source(f)?).map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))?;
                    Supermodule::from_json(&v)?
                }
                (None, Some(a)) => build(&alpha_arg(a)?, *kind, AlgebraArg::Hcl)?,
                _ => return Err(Failure::Usage("give exactly one of --file and --alpha".into())),
            };
            let c = gr::class_of_module(&m)?;
            emit(format, &c.to_json(), format!("[{}] {}", c.group.name(), c.payload));
        }
        ModuleAction::Split { alpha } => {
            let s = sm::split_simple(&alpha_arg(alpha)?)?;
            let v = json!({
                "alpha": s.alpha.parts(),
                "l": s.l,
                "component_dims": s.components.iter().map(|c| c.dim()).collect::<Vec<_>>(),
                "direct_sum": s.direct_sum,
                "pairwise_even": s.pairwise_even,
                "pairwise_up_to_parity": s.pairwise_up_to_parity,
                "type": s.component_type.name(),
                "end_dims": [s.end_dims.0, s.end_dims.1],
            });
            let text = format!(
                "{} components of dimension {}, type {}",
                s.components.len(),
                s.components.first().map_or(0, |c| c.dim()),
                s.component_type.name()
            );
            emit(format, &v, text);
        }
        ModuleAction::End { alpha } => {
            let e = sm::end_clifford_check(&alpha_arg(alpha)?)?;
            let v = json!({
                "alpha": e.alpha.parts(),
                "valley": e.valley,
                "end_dims": [e.end_dims.0, e.end_dims.1],
                "span_dim": e.span_dim,
                "squares_identity": e.squares_identity,
                "anticommute": e.anticommute,
                "passes": e.passes(),
            });
            emit(format, &v, format!("dim End = {}, expected {}", e.end_dims.0 + e.end_dims.1, e.expected_dim()));
        }
    }
    Ok(())
}

fn suite_json(suite: Suite, reports: &[Report]) -> Value {
    json!({
        "suite": suite.name(),
        "status": verify::overall(reports).name(),
        "reports": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
    })
}

fn verify_cmd(format: Format, strict: bool, suite: &str, opts: Options) -> CliResult<()> {
    let runs: Vec<(Suite, Vec<Report>)> = if suite == "all" {
        verify::run_all(&opts)
    } else {
        let s = Suite::from_name(suite).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            Failure::Usage(format!("unknown suite {suite:?}; expected all or one of {}", names.join(", ")))
        })?;
        vec![(s, verify::run(s, &opts))]
    };
    let all: Vec<Report> = runs.iter().flat_map(|(_, r)| r.iter().cloned()).collect();
    let status = verify::overall(&all);
    let value = json!({
        "status": status.name(),
        "suites": runs.iter().map(|(s, r)| suite_json(*s, r)).collect::<Vec<_>>(),
    });
    let text = runs
        .iter()
        .map(|(s, r)| format!("{:<12} {}\n{}", s.name(), verify::overall(r), verify::render_text(r)))
        .collect::<Vec<_>>()
        .join("\n");
    emit(format, &value, text);
    match status {
        Status::Failed => Err(Failure::Verification),
        Status::SkippedResource if strict => Err(Failure::Resource("some cases were skipped for resource limits".into())),
        _ => Ok(()),
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let f = cli.format;
    match &cli.command {
        Command::Expand { expr, basis } => expand(f, expr, basis.as_deref()),
        Command::Convert { element, basis } => convert_cmd(f, element, basis),
        Command::Pair { left, right } => pair(f, left, right),
        Command::Act { element, vector, basis } => act(f, element, vector, basis.as_deref()),
        Command::Module { action } => module(f, action),
        Command::Verify { suite, max_n, max_degree } => {
            verify_cmd(f, cli.strict, suite, Options { max_n: *max_n, max_degree: *max_degree })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
