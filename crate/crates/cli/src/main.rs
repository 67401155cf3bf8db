//! `dwigner` command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 parse/input error, 3 bad dimension,
//! 4 non-Hermitian input, 5 unknown basis label, 6 a verification check failed.

use std::fmt::Write as _;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dwigner::io::{MatrixFile, RecordFile};
use dwigner::tomography::{min_eigenvalue, DENSITY_TOL};
use dwigner::verify::run_suite;
use dwigner::{
    line_operator_closed, line_operator_mub, line_points, radon, reconstruct, sample_probs,
    simulate_probs, wwt_mub, wwt_schwinger, wwt_trace, BasisLabel, ComplexMatrix, DensityMatrix,
    Dimension, Error, MeasurementRecord, PhaseParam, PhasePoint,
};

/// Tolerance on `|A − A†|` for operators read from files.
const INPUT_HERMITIAN_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "dwigner", version, about = "Discrete Weyl-Wigner transforms for prime dimensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Hilbert-space dimension (odd prime)
    #[arg(long)]
    dim: u64,
    /// Phase parameter as "a" or "a/b", e.g. 0 or -1/2
    #[arg(long, allow_hyphen_values = true)]
    c: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Trace,
    Mub,
    Schwinger,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Mub,
    Closed,
}

#[derive(Subcommand)]
enum Command {
    /// Write the Wigner table of a matrix as CSV `q,p,W`
    Wigner {
        #[command(flatten)]
        common: Common,
        /// Matrix file (JSON), or `-` for stdin
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum, default_value = "trace")]
        route: Route,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the line operator at (q, p) as a matrix file
    Lineop {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[arg(long, value_enum, default_value = "closed")]
        construction: Construction,
        /// Round entries to this many decimal places
        #[arg(long)]
        precision: Option<i32>,
    },
    /// Write the line through (q, p) as CSV `b,m`
    Line {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
    },
    /// Write the Radon marginal of a state in one basis as CSV `m,probability`
    Radon {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        state: PathBuf,
        /// `ddot0` or an integer 0..N-1
        #[arg(long)]
        basis: String,
    },
    /// Reconstruct a density matrix from MUB probabilities
    Tomo {
        #[command(flatten)]
        common: Common,
        /// Record file (JSON)
        #[arg(long, conflicts_with = "state")]
        probs: Option<PathBuf>,
        /// Density matrix to measure (exact probabilities unless --shots is given)
        #[arg(long, required_unless_present = "probs")]
        state: Option<PathBuf>,
        #[arg(long, requires = "state", value_parser = clap::value_parser!(u64).range(1..))]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the measurement record of a state as a record file
    Probs {
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        shots: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check every transform identity and print one line per check
    Verify {
        #[command(flatten)]
        common: Common,
        /// Add the clock/shift route, exhaustive geometry and tomography checks
        #[arg(long)]
        deep: bool,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn new(code: u8, msg: impl Into<String>) -> Self {
        Failure { code, msg: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CompositeDimension(_)
            | Error::UnsupportedDimension
            | Error::DimensionMismatch { .. }
            | Error::MixedParameters => 3,
            Error::NonHermitian { .. } => 4,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Wigner { common, state, route, out } => {
            let (dim, c) = setup(&common)?;
            let a = read_operator(&state, dim)?;
            let table = match route {
                Route::Trace => wwt_trace(&a, &c)?,
                Route::Mub => wwt_mub(&a, &c)?,
                Route::Schwinger => wwt_schwinger(&a, &c)?,
            };
            let mut csv = String::from("q,p,W\n");
            for (pt, v) in table.iter() {
                writeln!(csv, "{},{},{}", pt.q, pt.p, v).unwrap();
            }
            emit(&csv, out.as_deref())
        }
        Command::Lineop { common, q, p, construction, precision } => {
            let (dim, c) = setup(&common)?;
            let pt = PhasePoint::from_ints(q, p, dim);
            let op = match construction {
                Construction::Mub => line_operator_mub(pt, &c)?,
                Construction::Closed => line_operator_closed(pt, &c)?,
            };
            let mut file = MatrixFile::from_matrix(&op.matrix);
            if let Some(digits) = precision {
                file = file.rounded(digits);
            }
            emit(&to_json(&file)?, None)
        }
        Command::Line { common, q, p } => {
            let (dim, c) = setup(&common)?;
            let line = line_points(PhasePoint::from_ints(q, p, dim), &c)?;
            let mut csv = String::from("b,m\n");
            for (b, m) in line.points() {
                writeln!(csv, "{b},{m}").unwrap();
            }
            emit(&csv, None)
        }
        Command::Radon { common, state, basis } => {
            let (dim, c) = setup(&common)?;
            let b = BasisLabel::parse(&basis, dim).map_err(|e| Failure::new(5, e.to_string()))?;
            let a = read_operator(&state, dim)?;
            let marginal = radon(&wwt_trace(&a, &c)?, b);
            let mut csv = String::from("m,probability\n");
            for (m, x) in marginal.iter().enumerate() {
                writeln!(csv, "{m},{x}").unwrap();
            }
            emit(&csv, None)
        }
        Command::Tomo { common, probs, state, shots, seed, out } => {
            let (dim, c) = setup(&common)?;
            let rec = match (probs, state) {
                (Some(path), _) => read_record(&path, dim)?,
                (None, Some(path)) => measure(&path, dim, shots, seed)?,
                (None, None) => return Err(Failure::new(1, "one of --probs or --state is required")),
            };
            let rho = reconstruct(&rec, &c)?;
            let m = rho.matrix();
            let mut doc = serde_json::to_value(MatrixFile::from_matrix(m))
                .map_err(|e| Failure::new(2, e.to_string()))?;
            doc["diagnostics"] = json!({
                "trace": m.trace().re,
                "hermiticity_residue": m.hermiticity_residue(),
                "min_eigenvalue": min_eigenvalue(m),
                "sample_count": rec.sample_count,
            });
            emit(&to_json(&doc)?, out.as_deref())
        }
        Command::Probs { dim, state, shots, seed } => {
            let dim = Dimension::new(dim)?;
            let rec = measure(&state, dim, shots, seed)?;
            emit(&to_json(&RecordFile::from_record(&rec))?, None)
        }
        Command::Verify { common, deep } => {
            let (dim, c) = setup(&common)?;
            let checks = run_suite(&c, deep)?;
            println!("verify N={dim} c={c} deep={deep}");
            for ch in &checks {
                println!("{ch}");
            }
            let failed = checks.iter().filter(|c| c.failed()).count();
            if failed > 0 {
                return Err(Failure::new(6, format!("{failed} check(s) failed")));
            }
            Ok(())
        }
    }
}

fn setup(common: &Common) -> Result<(Dimension, PhaseParam), Failure> {
    let dim = Dimension::new(common.dim)?;
    let c = PhaseParam::parse(&common.c, dim)?;
    Ok((dim, c))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::new(2, format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

/// Reads a matrix file, checks its dimension and Hermiticity, and returns
/// its Hermitian part.
fn read_operator(path: &Path, dim: Dimension) -> Result<ComplexMatrix, Failure> {
    let a = MatrixFile::parse(&read_text(path)?)?.to_matrix()?;
    if a.dim() != dim.get() {
        return Err(Error::DimensionMismatch { expected: dim.get(), found: a.dim() }.into());
    }
    let residue = a.hermiticity_residue();
    if residue > INPUT_HERMITIAN_TOL {
        return Err(Error::NonHermitian { residue }.into());
    }
    Ok((&a + &a.adjoint()).scale_real(0.5))
}

fn read_record(path: &Path, dim: Dimension) -> Result<MeasurementRecord, Failure> {
    let rec = RecordFile::parse(&read_text(path)?)?;
    if rec.dim != dim.get() {
        return Err(Error::DimensionMismatch { expected: dim.get(), found: rec.dim }.into());
    }
    Ok(rec.to_record()?)
}

fn measure(
    path: &Path,
    dim: Dimension,
    shots: Option<u64>,
    seed: u64,
) -> Result<MeasurementRecord, Failure> {
    let a = read_operator(path, dim)?;
    let tr = a.trace().re;
    if (tr - 1.0).abs() > DENSITY_TOL.max(INPUT_HERMITIAN_TOL) {
        return Err(Error::InvalidDensityMatrix(format!("trace {tr} is not 1")).into());
    }
    let rho = DensityMatrix::new(a.scale_real(1.0 / tr))?;
    Ok(match shots {
        Some(s) => sample_probs(&rho, s, seed)?,
        None => simulate_probs(&rho)?,
    })
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::new(2, e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn emit(text: &str, out: Option<&Path>) -> CmdResult {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::new(2, format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
