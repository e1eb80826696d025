use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gpd_core::action::{group_type_within, validate_action};
use gpd_core::dsl::emit::{Components, SeparabilityVerdict};
use gpd_core::dsl::{builtin, check_assertions, emit, parse_spec, Format, Model, BUILTINS};
use gpd_core::error::Error;
use gpd_core::field::FieldKind;
use gpd_core::galois::{alpha_strong_check, correspondence, find_coords};
use gpd_core::groupoid::{connected_components, validate_groupoid, Subgroupoid};
use gpd_core::invariants::{fixer_set, invariants_of};
use gpd_core::ring::BlockSubring;
use gpd_core::separability::separability_check;

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "gpd", version, about = "Galois correspondence for partial groupoid actions on split rings")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

/// A `.gpd` path, or `example NAME` for a builtin.
#[derive(clap::Args)]
struct Input {
    #[arg(value_name = "PATH | example NAME", num_args = 1..=2, required = true)]
    source: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the groupoid and partial-action axioms and the file's assertions.
    Validate(Input),
    /// List the connected components of the groupoid.
    Components(Input),
    /// Decide whether the action (or its restriction to a subgroupoid) is group-type.
    Grouptype {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "NAME")]
        subgroupoid: Option<String>,
    },
    /// Invariant subring of a declared subgroupoid.
    Invariants {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "NAME")]
        subgroupoid: String,
    },
    /// Morphisms fixing a declared subring.
    Fixer {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "NAME")]
        subring: String,
    },
    /// Find a partial Galois coordinate system.
    Coords(Input),
    /// Alpha-strong test for a declared subring.
    Strong {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "NAME")]
        subring: String,
    },
    /// Separability of a declared subring over the invariants of the whole groupoid.
    Separable {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "NAME")]
        subring: String,
    },
    /// The full Galois correspondence table with its certificate.
    Correspondence(Input),
    /// Print a builtin example (or list them).
    Example { name: Option<String> },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: INPUT_ERROR, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::HypothesisUnmet(_) | Error::GroupTypeWitnessRequired(_) | Error::Precondition(_) | Error::Counterexample(_) => NEGATIVE,
            _ => INPUT_ERROR,
        };
        Failure { code, message: e.to_string() }
    }
}

fn load(input: &Input) -> Result<Model, Failure> {
    let (label, text) = match input.source.as_slice() {
        [kw, name] if kw == "example" => {
            let b = builtin(name).ok_or_else(|| Failure::input(format!("unknown builtin `{name}`; available: {}", builtin_names())))?;
            (name.clone(), b.source.to_string())
        }
        [path] => (path.clone(), std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))?),
        _ => return Err(Failure::input("expected a path or `example NAME`")),
    };
    let model = parse_spec(&text).map_err(|ds| Failure::input(ds.iter().map(|d| format!("{label}:{d}")).collect::<Vec<_>>().join("\n")))?;
    if matches!(model.field().kind(), FieldKind::Quadratic(-1)) {
        eprintln!("note: complex coefficients are modelled exactly by Q(i), real ones by Q");
    }
    Ok(model)
}

fn builtin_names() -> String {
    BUILTINS.iter().map(|b| b.name).collect::<Vec<_>>().join(", ")
}

fn subgroupoid<'m>(m: &'m Model, name: &str) -> Result<&'m Subgroupoid, Failure> {
    m.subgroupoid(name).ok_or_else(|| Failure::input(format!("no subgroupoid named `{name}` in the input")))
}

fn subring<'m>(m: &'m Model, name: &str) -> Result<&'m BlockSubring, Failure> {
    m.subring(name).ok_or_else(|| Failure::input(format!("no subring named `{name}` in the input")))
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Structured => Format::Structured,
    };
    let io = |e: io::Error| Failure::input(e.to_string());
    match &cli.command {
        Command::Validate(input) => {
            let m = load(input)?;
            let mut report = validate_groupoid(m.groupoid());
            report.extend(validate_action(&m.action));
            emit(out, &report, &m.action, format).map_err(io)?;
            let mut code = if report.is_ok() { OK } else { NEGATIVE };
            for a in check_assertions(&m) {
                let verdict = match &a.holds {
                    Ok(true) => "holds".to_string(),
                    Ok(false) => {
                        code = NEGATIVE;
                        "FAILS".to_string()
                    }
                    Err(e) => {
                        code = NEGATIVE;
                        format!("cannot be evaluated: {e}")
                    }
                };
                if format == Format::Text {
                    writeln!(out, "line {}: assert {}: {verdict}", a.line, a.text).map_err(io)?;
                } else if a.holds != Ok(true) {
                    eprintln!("line {}: assert {}: {verdict}", a.line, a.text);
                }
            }
            Ok(code)
        }
        Command::Components(input) => {
            let m = load(input)?;
            emit(out, &Components(connected_components(m.groupoid())), &m.action, format).map_err(io)?;
            Ok(OK)
        }
        Command::Grouptype { input, subgroupoid: name } => {
            let m = load(input)?;
            let all = m.groupoid().all();
            let h = match name {
                Some(n) => subgroupoid(&m, n)?,
                None => &all,
            };
            let gt = group_type_within(&m.action, h);
            emit(out, &gt, &m.action, format).map_err(io)?;
            Ok(if gt.is_group_type() { OK } else { NEGATIVE })
        }
        Command::Invariants { input, subgroupoid: name } => {
            let m = load(input)?;
            let t = invariants_of(&m.action, subgroupoid(&m, name)?)?;
            emit(out, &t, &m.action, format).map_err(io)?;
            Ok(OK)
        }
        Command::Fixer { input, subring: name } => {
            let m = load(input)?;
            let f = fixer_set(&m.action, subring(&m, name)?);
            emit(out, &f, &m.action, format).map_err(io)?;
            Ok(OK)
        }
        Command::Coords(input) => {
            let m = load(input)?;
            let c = find_coords(&m.action);
            emit(out, &c, &m.action, format).map_err(io)?;
            Ok(if c.is_some() { OK } else { NEGATIVE })
        }
        Command::Strong { input, subring: name } => {
            let m = load(input)?;
            let r = alpha_strong_check(&m.action, subring(&m, name)?);
            emit(out, &r, &m.action, format).map_err(io)?;
            Ok(if r.is_strong() { OK } else { NEGATIVE })
        }
        Command::Separable { input, subring: name } => {
            let m = load(input)?;
            let t = subring(&m, name)?.clone();
            let r = invariants_of(&m.action, &m.groupoid().all())?;
            let separable = separability_check(m.ring(), &t, &r)?.is_separable();
            emit(out, &SeparabilityVerdict { subring: t, base: r, separable }, &m.action, format).map_err(io)?;
            Ok(if separable { OK } else { NEGATIVE })
        }
        Command::Correspondence(input) => {
            let m = load(input)?;
            let table = correspondence(&m.action)?;
            emit(out, &table, &m.action, format).map_err(io)?;
            Ok(OK)
        }
        Command::Example { name: None } => {
            for b in BUILTINS {
                writeln!(out, "{:<14} {}", b.name, b.summary).map_err(io)?;
            }
            Ok(OK)
        }
        Command::Example { name: Some(name) } => {
            let b = builtin(name).ok_or_else(|| Failure::input(format!("unknown builtin `{name}`; available: {}", builtin_names())))?;
            out.write_all(b.source.as_bytes()).map_err(io)?;
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { OK });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let _ = out.flush();
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}
