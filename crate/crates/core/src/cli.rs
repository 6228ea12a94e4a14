//! The `fatpoints` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a theorem check fails or two routes
//! disagree, 2 on parse, validation or usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::acm::{combinatorial_table, is_acm, resolution, AcmError};
use crate::border::{alpha_beta, border};
use crate::classify::{check_theorems, ClassifyError};
use crate::oracle::{condition_matrix, oracle_hilbert_table, verify_acm_equivalence, verify_border, FieldConfig, OracleError};
use crate::scheme::{parse_scheme, BiDegree, Coordinates, GridScheme};
use crate::sweep::{run_sweep, seeded_coordinates, SweepConfig};

pub const PRIME_ENV: &str = "FATPOINTS_PRIME";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Pretty,
    Json,
}

/// `IxJ` or `i,j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pair(pub usize, pub usize);

impl FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once(['x', 'X', ','])
            .ok_or_else(|| format!("expected two numbers like 4x4 or 1,2, got {s:?}"))?;
        let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        Ok(Pair(n(a)?, n(b)?))
    }
}

#[derive(Debug, Parser)]
#[command(name = "fatpoints", version, about = "Hilbert functions of fat points in P1 x P1")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Pretty)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct FieldArgs {
    /// Prime for modular arithmetic (default 2147483647, or $FATPOINTS_PRIME).
    #[arg(long, conflicts_with = "exact")]
    prime: Option<u64>,
    /// Exact rational arithmetic.
    #[arg(long)]
    exact: bool,
}

#[derive(Debug, clap::Args)]
struct CoordArgs {
    /// Draw random coordinates from this seed when the file has none.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Row tuples and the partition α.
    Alpha { file: PathBuf },
    /// Column tuples and the partition β.
    Beta { file: PathBuf },
    /// Eventual column and row vectors of the Hilbert function.
    Border { file: PathBuf },
    /// Hilbert function on a window.
    Hilbert {
        file: PathBuf,
        /// Largest bidegree shown, as IxJ (default: m x m').
        #[arg(long)]
        window: Option<Pair>,
        /// Compute every entry with the linear oracle.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        coords: CoordArgs,
    },
    /// ACM certificate.
    Acm { file: PathBuf },
    /// Twists of the minimal free resolution of an ACM scheme.
    Resolution { file: PathBuf },
    /// Configuration predicates and the classification theorems.
    Classify { file: PathBuf },
    /// One Hilbert value from the linear oracle.
    Oracle {
        file: PathBuf,
        /// Bidegree as i,j.
        #[arg(long)]
        at: Pair,
        /// Print the condition matrix instead of its rank.
        #[arg(long)]
        dump: bool,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        coords: CoordArgs,
    },
    /// Check the border and the ACM criteria against the oracle.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        coords: CoordArgs,
    },
    /// Run the property suite over every small grid.
    Sweep {
        #[arg(long, default_value = "3x3")]
        max_grid: Pair,
        #[arg(long, default_value_t = 3)]
        max_mult: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        field: FieldArgs,
    },
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<crate::scheme::SchemeError> for Failure {
    fn from(e: crate::scheme::SchemeError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<AcmError> for Failure {
    fn from(e: AcmError) -> Self {
        match e {
            AcmError::InternalInconsistency(_) => Failure::Violation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn load(path: &PathBuf) -> Result<GridScheme, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_scheme(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn field(args: &FieldArgs) -> Result<FieldConfig, Failure> {
    if args.exact {
        return Ok(FieldConfig::Exact);
    }
    let p = match args.prime {
        Some(p) => Some(p),
        None => match std::env::var(PRIME_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<u64>()
                    .map_err(|e| Failure::Usage(format!("{PRIME_ENV}={v:?}: {e}")))?,
            ),
            Err(_) => None,
        },
    };
    match p {
        Some(p) => Ok(FieldConfig::modular(p)?),
        None => Ok(FieldConfig::default()),
    }
}

/// The file's coordinates, else `[1:i]`, `[1:j]`, else a seeded draw.
fn with_coords(scheme: GridScheme, args: &CoordArgs) -> Result<GridScheme, Failure> {
    if scheme.coords().is_some() {
        return Ok(scheme);
    }
    let c = match args.seed {
        Some(seed) => seeded_coordinates(scheme.rows(), scheme.cols(), seed),
        None => Coordinates::standard(scheme.rows(), scheme.cols()),
    };
    Ok(scheme.attach_coords(c)?)
}

fn tuple(v: &[usize]) -> String {
    let inner: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", inner.join(","))
}

fn json(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn default_window(scheme: &GridScheme) -> BiDegree {
    let ab = alpha_beta(scheme);
    BiDegree::new(ab.m(), ab.m_prime())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let fmt = cli.format;
    match cli.command {
        Command::Alpha { file } => {
            let ab = alpha_beta(&load(&file)?);
            if fmt == Format::Json {
                return json(out, &serde_json::json!({ "raw": ab.alpha_raw, "alpha": ab.alpha }));
            }
            for (i, t) in ab.alpha_raw.iter().enumerate() {
                writeln!(out, "R{}: {}", i + 1, tuple(t))?;
            }
            writeln!(out, "α = {}  (m = {})", ab.alpha, ab.m())?;
        }
        Command::Beta { file } => {
            let ab = alpha_beta(&load(&file)?);
            if fmt == Format::Json {
                return json(out, &serde_json::json!({ "raw": ab.beta_raw, "beta": ab.beta }));
            }
            for (j, t) in ab.beta_raw.iter().enumerate() {
                writeln!(out, "Q{}: {}", j + 1, tuple(t))?;
            }
            writeln!(out, "β = {}  (m' = {})", ab.beta, ab.m_prime())?;
        }
        Command::Border { file } => {
            let b = border(&load(&file)?);
            if fmt == Format::Json {
                return json(out, &serde_json::json!({ "bc": b.bc, "br": b.br, "eventual": b.eventual() }));
            }
            writeln!(out, "B_C = {}", tuple(&b.bc))?;
            writeln!(out, "B_R = {}", tuple(&b.br))?;
            writeln!(out, "eventual value = {}", b.eventual())?;
        }
        Command::Hilbert {
            file,
            window,
            oracle,
            field: f,
            coords,
        } => {
            let scheme = load(&file)?;
            let w = window.map_or_else(|| default_window(&scheme), |Pair(i, j)| BiDegree::new(i, j));
            let table = if oracle {
                oracle_hilbert_table(&with_coords(scheme, &coords)?, w, field(&f)?)?
            } else {
                combinatorial_table(&scheme, w)?
            };
            if fmt == Format::Json {
                return json(out, &table);
            }
            write!(out, "{table}")?;
        }
        Command::Acm { file } => {
            let cert = is_acm(&load(&file)?)?;
            if fmt == Format::Json {
                return json(out, &cert);
            }
            writeln!(out, "{cert}")?;
        }
        Command::Resolution { file } => {
            let scheme = load(&file)?;
            match resolution(&scheme) {
                Ok(res) if fmt == Format::Json => return json(out, &res),
                Ok(res) => writeln!(out, "{res}")?,
                Err(AcmError::NotAcm) => writeln!(out, "not ACM: no resolution computed")?,
                Err(e) => return Err(e.into()),
            }
        }
        Command::Classify { file } => {
            let scheme = load(&file)?;
            match check_theorems(&scheme) {
                Ok(report) if fmt == Format::Json => return json(out, &report),
                Ok(report) => write!(out, "{report}")?,
                Err(ClassifyError::TheoremViolation(report)) => {
                    write!(out, "{report}")?;
                    return Err(Failure::Violation(report.violations.join("; ")));
                }
                Err(ClassifyError::Acm(e)) => return Err(e.into()),
            }
        }
        Command::Oracle {
            file,
            at: Pair(i, j),
            dump,
            field: f,
            coords,
        } => {
            let scheme = with_coords(load(&file)?, &coords)?;
            let m = condition_matrix(&scheme, i, j, field(&f)?)?;
            if dump {
                write!(out, "{}", m.dump())?;
            } else if fmt == Format::Json {
                return json(out, &serde_json::json!({ "i": i, "j": j, "value": m.rank() }));
            } else {
                writeln!(out, "{}", m.rank())?;
            }
        }
        Command::Verify { file, field: f, coords } => {
            let scheme = with_coords(load(&file)?, &coords)?;
            let cfg = field(&f)?;
            let b = verify_border(&scheme, cfg)?;
            let a = verify_acm_equivalence(&scheme, cfg)?;
            if fmt == Format::Json {
                json(out, &serde_json::json!({ "border": b, "acm": a }))?;
            } else {
                writeln!(out, "border: {} cells checked, {} mismatches", b.checked, b.mismatches.len())?;
                for mm in &b.mismatches {
                    writeln!(out, "  at {}: border {} oracle {}", mm.at, mm.border, mm.oracle)?;
                }
                writeln!(out, "ΔH staircase:       {}", a.delta_staircase)?;
                writeln!(out, "α* = β:             {}", a.conjugate_equal)?;
                writeln!(out, "S_Z totally ordered: {}", a.totally_ordered)?;
                if let Some(t) = a.table_matches {
                    writeln!(out, "ACM table = oracle: {t}")?;
                }
            }
            if !b.passed() || !a.agree() {
                return Err(Failure::Violation("verification failed".into()));
            }
        }
        Command::Sweep {
            max_grid: Pair(r, t),
            max_mult,
            seed,
            field: f,
        } => {
            let cfg = SweepConfig {
                max_rows: r,
                max_cols: t,
                max_mult,
                seed,
                field: field(&f)?,
            };
            let summary = run_sweep(&cfg)?;
            if fmt == Format::Json {
                json(out, &summary)?;
            } else {
                writeln!(out, "{summary}")?;
            }
            if !summary.passed() {
                return Err(Failure::Violation("sweep found failures".into()));
            }
        }
    }
    Ok(())
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(err, "violation: {msg}");
            1
        }
    }
}
