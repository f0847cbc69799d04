//! Command implementations behind the `qscatter` binary.
//!
//! Each command resolves a model (from a spec file or from hard-sphere
//! flags), computes its table, and returns the complete CSV text plus any
//! validation warnings. Warnings go to stderr so the CSV stays byte-stable;
//! identical inputs always produce byte-identical output.

pub mod csv;
pub mod spec_file;

use std::f64::consts::PI;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::error::Error;
use crate::hard_sphere::{HardSphereConfig, SaturationPolicy, build_model};
use crate::matching::matching_residual_report;
use crate::optical::build_consistency_report;
use crate::partial_wave::{
    ScatteringModel, sample_amplitude, total_cross_section, total_cross_section_quadrature,
};
use crate::special::QuadratureRule;
use csv::fmt_float;
use spec_file::{ModelSpecFile, SpecBody};

/// Failures split by exit code: input problems (2) vs numeric domain
/// problems from the math layer (3).
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<spec_file::ParseError> for CliError {
    fn from(e: spec_file::ParseError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Where the model comes from: a spec file, or hard-sphere flags.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSource {
    Spec {
        path: PathBuf,
    },
    HardSphere {
        k: f64,
        radius: f64,
        ell_max: Option<u32>,
        xi: f64,
        clamp: bool,
    },
}

pub struct ResolvedModel {
    pub model: ScatteringModel,
    pub saturated: Vec<u32>,
    /// Echo of the source for the CSV preamble.
    pub source_echo: String,
}

impl ModelSource {
    pub fn resolve(&self) -> Result<ResolvedModel, CliError> {
        match self {
            ModelSource::Spec { path } => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Input(format!("cannot read {}: {e}", path.display()))
                })?;
                let spec = ModelSpecFile::parse(&text)?;
                let built = spec.build()?;
                let kind = match spec.body {
                    SpecBody::Modes(_) => "modes",
                    SpecBody::HardSphere(_) => "hard-sphere",
                };
                Ok(ResolvedModel {
                    model: built.model,
                    saturated: built.saturated,
                    source_echo: format!("--spec {} ({kind})", path.display()),
                })
            }
            ModelSource::HardSphere {
                k,
                radius,
                ell_max,
                xi,
                clamp,
            } => {
                let mut config = hs_config(*k, *radius, *xi, *clamp)?;
                if let Some(ell_max) = ell_max {
                    config = config.with_ell_max(*ell_max);
                }
                let built = build_model(&config)?;
                Ok(ResolvedModel {
                    model: built.model,
                    saturated: built.saturated,
                    source_echo: format!(
                        "--k {} --radius {} --lmax {}{}",
                        fmt_float(*k),
                        fmt_float(*radius),
                        config.ell_max,
                        if *clamp { " --clamp-saturated" } else { "" }
                    ),
                })
            }
        }
    }
}

fn hs_config(k: f64, radius: f64, xi: f64, clamp: bool) -> Result<HardSphereConfig, CliError> {
    Ok(HardSphereConfig::new(k, radius)?
        .with_xi(xi)
        .with_saturation(if clamp {
            SaturationPolicy::Clamp
        } else {
            SaturationPolicy::Reject
        }))
}

/// Model-health warnings shared by all commands.
fn model_warnings(resolved: &ResolvedModel) -> Vec<String> {
    let mut warnings = Vec::new();
    if let Some(tail) = resolved.model.tail_fraction()
        && tail > 1e-6
    {
        warnings.push(format!(
            "warning: last mode carries {tail:.3e} of sigma; increase ell_max for a converged sum"
        ));
    }
    if !resolved.saturated.is_empty() {
        warnings.push(format!(
            "warning: quaternionically saturated modes clamped to |theta| = pi/2: ell = {:?}",
            resolved.saturated
        ));
    }
    warnings
}

pub fn quadrature_rule(order: usize) -> Result<QuadratureRule, CliError> {
    if !(2..=4096).contains(&order) {
        return Err(CliError::Input(format!(
            "quadrature order must be in [2, 4096], got {order}"
        )));
    }
    Ok(QuadratureRule::gauss_legendre(order))
}

fn angle_out(x: f64, degrees: bool) -> f64 {
    if degrees { x.to_degrees() } else { x }
}

pub struct CommandOutput {
    pub csv: String,
    pub warnings: Vec<String>,
}

/// `amplitude`: F(theta) components and sigma(theta) on a uniform grid.
pub struct AmplitudeCmd {
    pub source: ModelSource,
    pub theta_points: usize,
    pub degrees: bool,
}

impl AmplitudeCmd {
    pub fn run(&self) -> Result<CommandOutput, CliError> {
        if self.theta_points < 2 {
            return Err(CliError::Input(format!(
                "--theta-points must be at least 2, got {}",
                self.theta_points
            )));
        }
        let resolved = self.source.resolve()?;
        let n = self.theta_points;
        let mut out = csv::preamble(
            &format!(
                "amplitude {} --theta-points {n}{}",
                resolved.source_echo,
                if self.degrees { " --degrees" } else { "" }
            ),
            &[("k", fmt_float(resolved.model.k()))],
        );
        out.push_str(csv::AMPLITUDE_HEADER);
        out.push('\n');
        for i in 0..n {
            let theta = i as f64 * PI / (n - 1) as f64;
            let sample = sample_amplitude(&resolved.model, theta);
            out.push_str(&csv::amplitude_row(
                angle_out(theta, self.degrees),
                sample.amplitude,
                sample.sigma_diff,
            ));
            out.push('\n');
        }
        Ok(CommandOutput {
            csv: out,
            warnings: model_warnings(&resolved),
        })
    }
}

/// Inclusive linear grid START:STOP:N.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Sweep {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Input(format!(
                "--sweep expects START:STOP:N, got '{text}'"
            )));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| CliError::Input(format!("bad sweep start '{}'", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| CliError::Input(format!("bad sweep stop '{}'", parts[1])))?;
        let points: usize = parts[2]
            .parse()
            .map_err(|_| CliError::Input(format!("bad sweep point count '{}'", parts[2])))?;
        if points == 0 {
            return Err(CliError::Input("sweep needs at least one point".into()));
        }
        if !(start > 0.0) || stop < start {
            return Err(CliError::Input(format!(
                "sweep range must satisfy 0 < START <= STOP, got {start}:{stop}"
            )));
        }
        Ok(Sweep {
            start,
            stop,
            points,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        (0..self.points)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / (self.points - 1) as f64)
            .collect()
    }
}

/// `cross-section`: sigma variants for one model, or a hard-sphere sweep
/// over k at fixed radius.
pub struct CrossSectionCmd {
    pub input: CrossSectionInput,
    pub quad_order: usize,
}

pub enum CrossSectionInput {
    Single(ModelSource),
    SweepHardSphere {
        sweep: Sweep,
        radius: f64,
        ell_max: Option<u32>,
        xi: f64,
        clamp: bool,
    },
}

impl CrossSectionCmd {
    pub fn run(&self) -> Result<CommandOutput, CliError> {
        let rule = quadrature_rule(self.quad_order)?;
        match &self.input {
            CrossSectionInput::Single(source) => {
                let resolved = source.resolve()?;
                let mut out = csv::preamble(
                    &format!(
                        "cross-section {} --quad-order {}",
                        resolved.source_echo, self.quad_order
                    ),
                    &[("k", fmt_float(resolved.model.k()))],
                );
                out.push_str(csv::CROSS_SECTION_HEADER);
                out.push('\n');
                out.push_str(&cross_section_row_for(&resolved.model, &rule));
                out.push('\n');
                Ok(CommandOutput {
                    csv: out,
                    warnings: model_warnings(&resolved),
                })
            }
            CrossSectionInput::SweepHardSphere {
                sweep,
                radius,
                ell_max,
                xi,
                clamp,
            } => {
                let ks = sweep.values();
                let rows: Result<Vec<(String, Vec<String>)>, CliError> = ks
                    .par_iter()
                    .map(|&k| {
                        let source = ModelSource::HardSphere {
                            k,
                            radius: *radius,
                            ell_max: *ell_max,
                            xi: *xi,
                            clamp: *clamp,
                        };
                        let resolved = source.resolve()?;
                        Ok((
                            cross_section_row_for(&resolved.model, &rule),
                            model_warnings(&resolved),
                        ))
                    })
                    .collect();
                let rows = rows?;
                let mut out = csv::preamble(
                    &format!(
                        "cross-section --radius {} --sweep {}:{}:{} --quad-order {}{}",
                        fmt_float(*radius),
                        fmt_float(sweep.start),
                        fmt_float(sweep.stop),
                        sweep.points,
                        self.quad_order,
                        if *clamp { " --clamp-saturated" } else { "" }
                    ),
                    &[(
                        "lmax",
                        ell_max.map_or("auto".to_string(), |l| l.to_string()),
                    )],
                );
                out.push_str(csv::CROSS_SECTION_HEADER);
                out.push('\n');
                let mut warnings = Vec::new();
                for (row, row_warnings) in rows {
                    out.push_str(&row);
                    out.push('\n');
                    for w in row_warnings {
                        if !warnings.contains(&w) {
                            warnings.push(w);
                        }
                    }
                }
                Ok(CommandOutput { csv: out, warnings })
            }
        }
    }
}

fn cross_section_row_for(model: &ScatteringModel, rule: &QuadratureRule) -> String {
    let closed = total_cross_section(model);
    let quad = total_cross_section_quadrature(model, rule);
    let complex_limit = total_cross_section(&model.zeroed_polarization());
    csv::cross_section_row(model.k(), closed, quad, complex_limit)
}

/// `hard-sphere`: the per-mode angle table for a rigid sphere.
pub struct HardSphereCmd {
    pub k: f64,
    pub radius: f64,
    pub ell_max: Option<u32>,
    pub xi: f64,
    pub clamp: bool,
    pub degrees: bool,
}

impl HardSphereCmd {
    pub fn run(&self) -> Result<CommandOutput, CliError> {
        let source = ModelSource::HardSphere {
            k: self.k,
            radius: self.radius,
            ell_max: self.ell_max,
            xi: self.xi,
            clamp: self.clamp,
        };
        let resolved = source.resolve()?;
        let sigma = total_cross_section(&resolved.model);
        let sigma_complex = total_cross_section(&resolved.model.zeroed_polarization());
        let mut out = csv::preamble(
            &format!(
                "hard-sphere {}{}",
                resolved.source_echo,
                if self.degrees { " --degrees" } else { "" }
            ),
            &[
                ("kR", fmt_float(self.k * self.radius)),
                ("sigma_closed", fmt_float(sigma)),
                ("sigma_complex_limit", fmt_float(sigma_complex)),
                ("ratio", fmt_float(sigma / sigma_complex)),
            ],
        );
        out.push_str(csv::HARD_SPHERE_HEADER);
        out.push('\n');
        for m in resolved.model.modes() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                m.ell,
                fmt_float(angle_out(m.delta, self.degrees)),
                fmt_float(angle_out(m.theta_pol, self.degrees)),
                fmt_float(angle_out(m.xi, self.degrees)),
                if resolved.saturated.contains(&m.ell) {
                    "1"
                } else {
                    "0"
                }
            ));
        }
        Ok(CommandOutput {
            csv: out,
            warnings: model_warnings(&resolved),
        })
    }
}

/// `match`: analytic vs numeric log-derivative residuals at radius a.
/// The model comes from a spec file; `--radius` names the matching radius
/// and defaults to the sphere radius for hard-sphere specs.
pub struct MatchCmd {
    pub spec: PathBuf,
    pub a: Option<f64>,
}

impl MatchCmd {
    pub fn run(&self) -> Result<CommandOutput, CliError> {
        let text = std::fs::read_to_string(&self.spec)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", self.spec.display())))?;
        let spec = ModelSpecFile::parse(&text)?;
        let a = match (self.a, &spec.body) {
            (Some(a), _) => a,
            (None, SpecBody::HardSphere(hs)) => hs.radius,
            (None, SpecBody::Modes(_)) => {
                return Err(CliError::Input(
                    "--radius (matching radius) is required for [modes] specs".into(),
                ));
            }
        };
        if !(a > 0.0) {
            return Err(CliError::Input(format!(
                "--radius (matching radius) must be positive, got {a}"
            )));
        }
        let built = spec.build()?;
        let resolved = ResolvedModel {
            model: built.model,
            saturated: built.saturated,
            source_echo: format!("--spec {}", self.spec.display()),
        };
        let mut out = csv::preamble(
            &format!("match {} --radius {}", resolved.source_echo, fmt_float(a)),
            &[
                ("k", fmt_float(resolved.model.k())),
                ("a", fmt_float(a)),
            ],
        );
        out.push_str(csv::MATCH_HEADER);
        out.push('\n');
        for mode in resolved.model.modes() {
            let report = matching_residual_report(mode, resolved.model.k(), a)?;
            out.push_str(&csv::match_row(&report));
            out.push('\n');
        }
        Ok(CommandOutput {
            csv: out,
            warnings: model_warnings(&resolved),
        })
    }
}

/// `optical`: the consistency report at a list of radii.
pub struct OpticalCmd {
    pub source: ModelSource,
    /// Explicit radii; when empty, kr in {50, 100, 200, 400}.
    pub radii: Vec<f64>,
    pub quad_order: usize,
}

impl OpticalCmd {
    pub fn run(&self) -> Result<CommandOutput, CliError> {
        let rule = quadrature_rule(self.quad_order)?;
        let resolved = self.source.resolve()?;
        let radii: Vec<f64> = if self.radii.is_empty() {
            [50.0, 100.0, 200.0, 400.0]
                .iter()
                .map(|kr| kr / resolved.model.k())
                .collect()
        } else {
            self.radii.clone()
        };
        let report = build_consistency_report(&resolved.model, &radii, &rule)?;
        let radii_echo = radii
            .iter()
            .map(|r| fmt_float(*r))
            .collect::<Vec<_>>()
            .join(" ");
        let mut out = csv::preamble(
            &format!(
                "optical {} --radii {radii_echo} --quad-order {}",
                resolved.source_echo, self.quad_order
            ),
            &[("k", fmt_float(resolved.model.k()))],
        );
        out.push_str(csv::OPTICAL_HEADER);
        out.push('\n');
        for row in csv::consistency_rows(&report) {
            out.push_str(&row);
            out.push('\n');
        }
        Ok(CommandOutput {
            csv: out,
            warnings: model_warnings(&resolved),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs_source(k: f64, radius: f64, ell_max: u32) -> ModelSource {
        ModelSource::HardSphere {
            k,
            radius,
            ell_max: Some(ell_max),
            xi: 0.0,
            clamp: false,
        }
    }

    fn write_spec(name: &str, contents: &str) -> PathBuf {
        let dir = std::env::temp_dir().join("qscatter_cli_tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, contents).unwrap();
        path
    }

    #[test]
    fn sweep_parsing() {
        let s = Sweep::parse("0.1:0.5:5").unwrap();
        assert_eq!(s.values().len(), 5);
        assert_eq!(s.values()[0], 0.1);
        assert_eq!(s.values()[4], 0.5);
        assert_eq!(Sweep::parse("1:2:1").unwrap().values(), vec![1.0]);
        assert!(Sweep::parse("1:2").is_err());
        assert!(Sweep::parse("0:2:3").is_err());
        assert!(Sweep::parse("2:1:3").is_err());
        assert!(Sweep::parse("1:2:0").is_err());
    }

    #[test]
    fn amplitude_zero_model_emits_zero_columns() {
        let path = write_spec("zero.spec", "k = 1.0\n[modes]\n0 0.0 0.0 0.0\n");
        let cmd = AmplitudeCmd {
            source: ModelSource::Spec { path },
            theta_points: 5,
            degrees: false,
        };
        let out = cmd.run().unwrap().csv;
        for line in out.lines().filter(|l| !l.starts_with('#')).skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            for f in &fields[1..] {
                assert_eq!(f.parse::<f64>().unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn amplitude_complex_mode_stays_in_complex_plane() {
        let path = write_spec("complex.spec", "k = 1.0\n[modes]\n1 0.4 0.0 0.0\n");
        let cmd = AmplitudeCmd {
            source: ModelSource::Spec { path },
            theta_points: 9,
            degrees: false,
        };
        let out = cmd.run().unwrap().csv;
        for line in out.lines().filter(|l| !l.starts_with('#')).skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields[3].parse::<f64>().unwrap(), 0.0, "F_y must vanish");
            assert_eq!(fields[4].parse::<f64>().unwrap(), 0.0, "F_z must vanish");
        }
    }

    #[test]
    fn cross_section_sweep_row_count_and_ratio() {
        let cmd = CrossSectionCmd {
            input: CrossSectionInput::SweepHardSphere {
                sweep: Sweep::parse("0.01:0.1:7").unwrap(),
                radius: 1.0,
                ell_max: Some(2),
                xi: 0.0,
                clamp: false,
            },
            quad_order: 64,
        };
        let out = cmd.run().unwrap().csv;
        let rows: Vec<&str> = out
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .collect();
        assert_eq!(rows.len(), 7);
        for row in rows {
            let ratio: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
            assert!((1.9..=2.1).contains(&ratio), "low-energy ratio {ratio}");
        }
    }

    #[test]
    fn cross_section_theta_zeroed_ratio_is_one() {
        let path = write_spec(
            "complex_only.spec",
            "k = 1.5\n[modes]\n0 0.4 0.0 0.0\n1 0.2 0.0 0.0\n",
        );
        let cmd = CrossSectionCmd {
            input: CrossSectionInput::Single(ModelSource::Spec { path }),
            quad_order: 64,
        };
        let out = cmd.run().unwrap().csv;
        let row = out.lines().filter(|l| !l.starts_with('#')).nth(1).unwrap();
        let ratio: f64 = row.split(',').nth(4).unwrap().parse().unwrap();
        assert_eq!(ratio, 1.0);
    }

    #[test]
    fn match_output_round_trips() {
        let path = write_spec(
            "match_hs.spec",
            "k = 1.0\n[hard-sphere]\nradius = 0.5\nell_max = 2\n",
        );
        // matching radius defaults to the sphere radius
        let cmd = MatchCmd { spec: path, a: None };
        let out = cmd.run().unwrap().csv;
        let mut count = 0;
        for line in out.lines().filter(|l| !l.starts_with('#')).skip(1) {
            let report = csv::parse_match_row(line).unwrap();
            assert_eq!(csv::match_row(&report), line);
            assert_eq!(report.a, 0.5);
            count += 1;
        }
        assert_eq!(count, 3);
    }

    #[test]
    fn match_hard_sphere_gamma0_residuals_small() {
        let path = write_spec(
            "match_hs_res.spec",
            "k = 1.0\n[hard-sphere]\nradius = 0.5\nell_max = 2\n",
        );
        let cmd = MatchCmd { spec: path, a: None };
        let out = cmd.run().unwrap().csv;
        for line in out.lines().filter(|l| !l.starts_with('#')).skip(1) {
            let report = csv::parse_match_row(line).unwrap();
            assert!(report.gamma0_residual_left < 1e-6, "{report:?}");
        }
    }

    #[test]
    fn match_complex_spec_gamma1_columns_zero() {
        let path = write_spec(
            "match_complex.spec",
            "k = 1.0\n[modes]\n0 0.3 0.0 0.0\n1 0.2 0.0 0.0\n",
        );
        let cmd = MatchCmd {
            spec: path,
            a: Some(2.0),
        };
        let out = cmd.run().unwrap().csv;
        for line in out.lines().filter(|l| !l.starts_with('#')).skip(1) {
            let report = csv::parse_match_row(line).unwrap();
            assert_eq!(
                report.gamma1.unwrap(),
                num_complex::Complex64::new(0.0, 0.0)
            );
        }
    }

    #[test]
    fn match_modes_spec_requires_radius() {
        let path = write_spec("match_needs_a.spec", "k = 1.0\n[modes]\n0 0.3 0.0 0.0\n");
        let cmd = MatchCmd { spec: path, a: None };
        assert!(matches!(cmd.run(), Err(CliError::Input(_))));
    }

    #[test]
    fn optical_report_round_trips_and_has_defaults() {
        let cmd = OpticalCmd {
            source: hs_source(1.0, 0.1, 2),
            radii: vec![],
            quad_order: 64,
        };
        let out = cmd.run().unwrap().csv;
        let report = csv::parse_consistency_csv(&out).unwrap();
        assert_eq!(report.flux_residuals.len(), 4);
        assert_eq!(report.flux_residuals[0].0, 50.0);
        assert!(!report.notes.is_empty());
    }

    #[test]
    fn saturated_reject_is_domain_error() {
        let cmd = HardSphereCmd {
            k: 5.0,
            radius: 1.0,
            ell_max: Some(20),
            xi: 0.0,
            clamp: false,
            degrees: false,
        };
        match cmd.run() {
            Err(CliError::Domain(msg)) => assert!(msg.contains("ell = 0"), "{msg}"),
            other => panic!("expected domain error, got {:?}", other.map(|o| o.csv)),
        }
    }

    #[test]
    fn hard_sphere_table_flags_saturated_modes() {
        let cmd = HardSphereCmd {
            k: 5.0,
            radius: 1.0,
            ell_max: Some(8),
            xi: 0.0,
            clamp: true,
            degrees: false,
        };
        let out = cmd.run().unwrap();
        assert!(out.warnings.iter().any(|w| w.contains("saturated")));
        let flagged = out
            .csv
            .lines()
            .filter(|l| !l.starts_with('#'))
            .skip(1)
            .filter(|l| l.ends_with(",1"))
            .count();
        assert!(flagged > 0);
    }

    #[test]
    fn degrees_flag_converts_output_only() {
        let cmd = HardSphereCmd {
            k: 1.0,
            radius: 0.5,
            ell_max: Some(0),
            xi: 0.0,
            clamp: false,
            degrees: true,
        };
        let out = cmd.run().unwrap().csv;
        let row = out.lines().filter(|l| !l.starts_with('#')).nth(1).unwrap();
        let delta_deg: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        let want = crate::hard_sphere::phase_shift(0, 0.5)
            .unwrap()
            .to_degrees();
        assert_eq!(delta_deg, want);
    }
}
