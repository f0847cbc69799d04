//! qscatter: quaternionic partial-wave scattering tables as CSV.
//!
//! Exit codes: 0 success, 2 input error, 3 numeric domain error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qscatter::cli::{
    AmplitudeCmd, CliError, CommandOutput, CrossSectionCmd, CrossSectionInput, HardSphereCmd,
    MatchCmd, ModelSource, OpticalCmd, Sweep,
};

const DEFAULT_QUAD_ORDER: usize = 64;

#[derive(Parser)]
#[command(
    name = "qscatter",
    version,
    about = "Quaternionic partial-wave elastic scattering: amplitudes, cross sections, \
             boundary matching, and flux consistency reports as CSV",
    after_help = "Angles are radians unless --degrees is given. The environment variable \
                  QSCATTER_QUAD_ORDER overrides the default quadrature order (64)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags selecting the model: a spec file, or hard-sphere parameters.
#[derive(Args)]
struct ModelArgs {
    /// Model specification file (see README for the grammar)
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Wave number (hard-sphere source; requires --radius)
    #[arg(long)]
    k: Option<f64>,
    /// Sphere radius (hard-sphere source)
    #[arg(long)]
    radius: Option<f64>,
    /// Largest partial wave; default ceil(kR) + 8
    #[arg(long)]
    lmax: Option<u32>,
    /// Quaternionic phase applied to every hard-sphere mode
    #[arg(long, default_value_t = 0.0)]
    xi: f64,
    /// Clamp quaternionically saturated modes to |theta| = pi/2 instead of failing
    #[arg(long)]
    clamp_saturated: bool,
}

impl ModelArgs {
    fn source(&self) -> Result<ModelSource, CliError> {
        match (&self.spec, self.k, self.radius) {
            (Some(path), None, None) => Ok(ModelSource::Spec { path: path.clone() }),
            (None, Some(k), Some(radius)) => Ok(ModelSource::HardSphere {
                k,
                radius,
                ell_max: self.lmax,
                xi: self.xi,
                clamp: self.clamp_saturated,
            }),
            _ => Err(CliError::Input(
                "give either --spec FILE, or --k and --radius for a hard sphere".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Scattering amplitude F(theta) and sigma(theta) on a uniform angle grid
    Amplitude {
        #[command(flatten)]
        model: ModelArgs,
        /// Number of grid points on [0, pi]
        #[arg(long, default_value_t = 181)]
        theta_points: usize,
        /// Emit angle columns in degrees
        #[arg(long)]
        degrees: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Total cross section variants, for one model or a hard-sphere k sweep
    CrossSection {
        #[command(flatten)]
        model: ModelArgs,
        /// Sweep the wave number: START:STOP:N (requires --radius)
        #[arg(long, value_name = "START:STOP:N")]
        sweep: Option<String>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Rigid-sphere mode table: phase shifts and polarization angles per ell
    HardSphere {
        /// Wave number
        #[arg(long)]
        k: f64,
        /// Sphere radius
        #[arg(long)]
        radius: f64,
        /// Largest partial wave; default ceil(kR) + 8
        #[arg(long)]
        lmax: Option<u32>,
        /// Quaternionic phase applied to every mode
        #[arg(long, default_value_t = 0.0)]
        xi: f64,
        /// Clamp saturated modes instead of failing
        #[arg(long)]
        clamp_saturated: bool,
        /// Emit angle columns in degrees
        #[arg(long)]
        degrees: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Matching residuals: analytic constants vs the numeric log-derivative
    Match {
        /// Model specification file
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        /// Matching radius a; defaults to the sphere radius for hard-sphere specs
        #[arg(long, value_name = "A")]
        radius: Option<f64>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Consistency report: sigma variants and flux residuals at several radii
    Optical {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated sphere radii; default kr in {50,100,200,400}
        #[arg(long, value_delimiter = ',')]
        radii: Vec<f64>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn quad_order_from_env() -> Result<usize, CliError> {
    match std::env::var("QSCATTER_QUAD_ORDER") {
        Ok(text) => text.parse::<usize>().map_err(|_| {
            CliError::Input(format!(
                "QSCATTER_QUAD_ORDER must be an integer, got '{text}'"
            ))
        }),
        Err(_) => Ok(DEFAULT_QUAD_ORDER),
    }
}

fn run(cli: Cli) -> Result<(CommandOutput, Option<PathBuf>), CliError> {
    match cli.command {
        Command::Amplitude {
            model,
            theta_points,
            degrees,
            out,
        } => {
            let cmd = AmplitudeCmd {
                source: model.source()?,
                theta_points,
                degrees,
            };
            Ok((cmd.run()?, out))
        }
        Command::CrossSection { model, sweep, out } => {
            let quad_order = quad_order_from_env()?;
            let input = match sweep {
                Some(text) => {
                    let radius = model.radius.ok_or_else(|| {
                        CliError::Input("--sweep needs --radius for the hard sphere".into())
                    })?;
                    CrossSectionInput::SweepHardSphere {
                        sweep: Sweep::parse(&text)?,
                        radius,
                        ell_max: model.lmax,
                        xi: model.xi,
                        clamp: model.clamp_saturated,
                    }
                }
                None => CrossSectionInput::Single(model.source()?),
            };
            let cmd = CrossSectionCmd { input, quad_order };
            Ok((cmd.run()?, out))
        }
        Command::HardSphere {
            k,
            radius,
            lmax,
            xi,
            clamp_saturated,
            degrees,
            out,
        } => {
            let cmd = HardSphereCmd {
                k,
                radius,
                ell_max: lmax,
                xi,
                clamp: clamp_saturated,
                degrees,
            };
            Ok((cmd.run()?, out))
        }
        Command::Match { spec, radius, out } => {
            let cmd = MatchCmd { spec, a: radius };
            Ok((cmd.run()?, out))
        }
        Command::Optical { model, radii, out } => {
            let quad_order = quad_order_from_env()?;
            let cmd = OpticalCmd {
                source: model.source()?,
                radii,
                quad_order,
            };
            Ok((cmd.run()?, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((output, out_path)) => {
            for warning in &output.warnings {
                eprintln!("{warning}");
            }
            match out_path {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, output.csv.as_bytes()) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    if stdout.write_all(output.csv.as_bytes()).is_err() {
                        return ExitCode::from(2);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
