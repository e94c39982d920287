//! Command-line front end for `ftnorm`.
//!
//! ```text
//! ftnorm norm     --system s.json [--band T1 T2] [--method auto|stable|general] [--decimation M]
//! ftnorm integral --system d.json  --band T1 T2  [--continuous]
//! ftnorm info     --system s.json [--band T1 T2] [--continuous]
//! ```
//!
//! Every subcommand takes `--output text|json`, `--degrees` and
//! `--check-oracle TOL`. Exit codes: 0 success, 2 precondition violated,
//! 3 input error, 4 numerical failure or oracle mismatch.

use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ftnorm::descint::{integrate_resolvent_continuous, integrate_resolvent_discrete_any, ContinuousBand};
use ftnorm::matrix::max_abs;
use ftnorm::oracle::{oracle_resolvent_continuous, oracle_resolvent_discrete, oracle_truncated_norm, QuadratureConfig};
use ftnorm::pencil::GeneralizedEigenvalue;
use ftnorm::sysnorm::{multirate_error, truncated_norm_with_feedthrough, MethodChoice};
use ftnorm::{Band, ComplexMatrix, ErrorKind};

pub mod output;
pub mod schema;

use output::{InfoOutput, IntegralOutput, NormOutput, Report};
use schema::{read_system, TimeDomain};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("invalid system file: {0}")]
    Schema(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] ftnorm::Error),
    #[error("oracle check failed: |closed form - oracle| = {difference:e} exceeds {allowed:e}")]
    OracleMismatch { difference: f64, allowed: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Schema(_) | CliError::Usage(_) => 3,
            CliError::Numeric(e) => match e.kind() {
                ErrorKind::Precondition => 2,
                ErrorKind::Input => 3,
                ErrorKind::Numerical => 4,
            },
            CliError::OracleMismatch { .. } => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ftnorm", version, about = "Frequency-band norms and resolvent integrals of linear systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Squared band norm of a discrete-time state-space system
    Norm(NormArgs),
    /// Band integral of the descriptor resolvent
    Integral(IntegralArgs),
    /// Poles, spectral radius and band clearance
    Info(InfoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Stable,
    General,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Stable => MethodChoice::Stable,
            MethodArg::General => MethodChoice::General,
        }
    }
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// System file (JSON)
    #[arg(long)]
    pub system: PathBuf,
    /// Band endpoints; radians unless --degrees
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
    pub band: Option<Vec<f64>>,
    /// Read band angles in degrees
    #[arg(long)]
    pub degrees: bool,
    /// Recompute by adaptive quadrature and fail if the relative gap exceeds TOL
    #[arg(long, value_name = "TOL")]
    pub check_oracle: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    pub output: OutputFormat,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Report the multirate reconstruction error for decimation factor M
    #[arg(long, value_name = "M")]
    pub decimation: Option<usize>,
}

#[derive(Debug, Args)]
pub struct IntegralArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Integrate (jwE - A)^-1 over a frequency interval
    #[arg(long)]
    pub continuous: bool,
}

#[derive(Debug, Args)]
pub struct InfoArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub continuous: bool,
}

impl CommonArgs {
    fn raw_band(&self) -> Result<Option<(f64, f64)>, CliError> {
        let Some(v) = &self.band else { return Ok(None) };
        let scale = if self.degrees { PI / 180.0 } else { 1.0 };
        let (lo, hi) = (v[0] * scale, v[1] * scale);
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(CliError::Usage("band endpoints must be finite".into()));
        }
        Ok(Some((lo, hi)))
    }

    fn discrete_band(&self) -> Result<Option<Band>, CliError> {
        Ok(match self.raw_band()? {
            Some((lo, hi)) => Some(Band::new(lo, hi)?),
            None => None,
        })
    }

    fn continuous_band(&self) -> Result<Option<ContinuousBand>, CliError> {
        if self.degrees {
            return Err(CliError::Usage("--degrees does not apply to frequency intervals".into()));
        }
        Ok(match self.raw_band()? {
            Some((lo, hi)) => Some(ContinuousBand::new(lo, hi)?),
            None => None,
        })
    }

    fn check_tolerance(&self) -> Result<Option<f64>, CliError> {
        match self.check_oracle {
            Some(t) if !(t > 0.0 && t.is_finite()) => {
                Err(CliError::Usage("--check-oracle needs a positive tolerance".into()))
            }
            t => Ok(t),
        }
    }
}

fn oracle_gate(difference: f64, reference: f64, tol: f64) -> Result<(), CliError> {
    let allowed = tol * reference.abs().max(1.0);
    if difference > allowed || difference.is_nan() {
        return Err(CliError::OracleMismatch { difference, allowed });
    }
    Ok(())
}

fn run_norm(args: &NormArgs) -> Result<Report, CliError> {
    let file = read_system(&args.common.system)?;
    if file.time_domain == TimeDomain::Continuous {
        return Err(CliError::Usage("norms are only available for discrete-time systems".into()));
    }
    let sys = file.state_space()?;
    let tol = args.common.check_tolerance()?;
    let qcfg = QuadratureConfig::default();

    if let Some(m) = args.decimation {
        if args.common.band.is_some() {
            return Err(CliError::Usage("--decimation fixes the band; drop --band".into()));
        }
        let j = multirate_error(&sys, m)?;
        let half = PI / m.max(1) as f64;
        let band = Band::new(-half, half)?;
        let mut out = NormOutput::new(j, "multirate", band, None);
        if let Some(tol) = tol {
            let oracle = oracle_truncated_norm(&sys, &Band::full(), &qcfg)? - oracle_truncated_norm(&sys, &band, &qcfg)?;
            oracle_gate((j - oracle).abs(), oracle, tol)?;
            out.oracle = Some(oracle);
        }
        return Ok(Report::Norm(out));
    }

    let band = args.common.discrete_band()?.unwrap_or_else(Band::full);
    let r = truncated_norm_with_feedthrough(&sys, &band, args.method.into())?;
    let mut out = NormOutput::new(r.value, r.method.as_str(), band, Some(r.arc_clearance));
    out.warnings = r.warnings;
    out.diagnostics = r.diagnostics;
    if let Some(tol) = tol {
        let oracle = oracle_truncated_norm(&sys, &band, &qcfg)?;
        oracle_gate((r.value - oracle).abs(), oracle, tol)?;
        out.oracle = Some(oracle);
    }
    Ok(Report::Norm(out))
}

fn run_integral(args: &IntegralArgs) -> Result<Report, CliError> {
    let file = read_system(&args.common.system)?;
    let pair = file.pencil()?;
    let tol = args.common.check_tolerance()?;
    let qcfg = QuadratureConfig::default();
    let continuous = args.continuous || file.time_domain == TimeDomain::Continuous;

    let (value, lo, hi, clearance, oracle): (ComplexMatrix, f64, f64, f64, Option<ComplexMatrix>) = if continuous {
        let band = args.common.continuous_band()?.ok_or_else(|| CliError::Usage("integral needs --band".into()))?;
        let value = integrate_resolvent_continuous(&pair, &band)?;
        let clearance = pair.segment_clearance(band.omega1, band.omega2)?;
        let oracle = match tol {
            Some(_) => Some(oracle_resolvent_continuous(&pair, band.omega1, band.omega2, &qcfg)?.value),
            None => None,
        };
        (value, band.omega1, band.omega2, clearance, oracle)
    } else {
        let band = args.common.discrete_band()?.ok_or_else(|| CliError::Usage("integral needs --band".into()))?;
        let value = integrate_resolvent_discrete_any(&pair, &band)?;
        let clearance = pair.arc_clearance(&band)?;
        let oracle = match tol {
            Some(_) => Some(oracle_resolvent_discrete(&pair, &band, &qcfg)?.value),
            None => None,
        };
        (value, band.theta1, band.theta2, clearance, oracle)
    };

    let mut out = IntegralOutput::new(&value, if continuous { "continuous" } else { "discrete" }, [lo, hi], clearance);
    if let (Some(tol), Some(oracle)) = (tol, oracle) {
        let diff = max_abs(&(&value - &oracle));
        oracle_gate(diff, max_abs(&oracle), tol)?;
        out.oracle_difference = Some(diff);
    }
    Ok(Report::Integral(out))
}

fn run_info(args: &InfoArgs) -> Result<Report, CliError> {
    let file = read_system(&args.common.system)?;
    let pair = file.pencil()?;
    let eigs = if pair.dim() == 0 { Vec::new() } else { pair.generalized_eigenvalues()? };
    let finite: Vec<[f64; 2]> = eigs.iter().filter_map(|z| z.finite()).map(|z| [z.re, z.im]).collect();
    let infinite = eigs.iter().filter(|z| matches!(z, GeneralizedEigenvalue::Infinite)).count();
    let continuous = args.continuous || file.time_domain == TimeDomain::Continuous;
    let arc_clearance = if continuous {
        match args.common.continuous_band()? {
            Some(b) => Some(pair.segment_clearance(b.omega1, b.omega2)?),
            None => None,
        }
    } else {
        match args.common.discrete_band()? {
            Some(b) => Some(pair.arc_clearance(&b)?),
            None => None,
        }
    };
    let radius = finite.iter().map(|z| z[0].hypot(z[1])).fold(0.0, f64::max);
    let abscissa = finite.iter().map(|z| z[0]).fold(f64::NEG_INFINITY, f64::max);
    Ok(Report::Info(InfoOutput {
        states: pair.dim(),
        time_domain: if continuous { "continuous" } else { "discrete" }.into(),
        finite_eigenvalues: finite,
        infinite_eigenvalues: infinite,
        spectral_radius: radius,
        spectral_abscissa: if abscissa.is_finite() { Some(abscissa) } else { None },
        arc_clearance,
    }))
}

fn dispatch(cli: &Cli) -> Result<(Report, OutputFormat), CliError> {
    Ok(match &cli.command {
        Command::Norm(a) => (run_norm(a)?, a.common.output),
        Command::Integral(a) => (run_integral(a)?, a.common.output),
        Command::Info(a) => (run_info(a)?, a.common.output),
    })
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Results go to `out`, errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            let text = e.render().to_string();
            return match e.kind() {
                K::DisplayHelp | K::DisplayVersion | K::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    3
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((report, format)) => {
            let written = match format {
                OutputFormat::Json => report.write_json(out),
                OutputFormat::Text => report.write_text(out),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    4
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
