//! Model specification files: a flat, line-oriented key-value and table
//! format chosen for diff-friendliness.
//!
//! ```text
//! # comment to end of line
//! k = 1.0
//!
//! [modes]
//! # ell  delta  theta  xi      (radians)
//! 0  0.5   0.3  0.0
//! 2  0.2  -0.1  1.5
//! ```
//!
//! or, instead of the [modes] table,
//!
//! ```text
//! k = 2.0
//! [hard-sphere]
//! radius = 0.5
//! ell_max = 4          # optional; default ceil(kR) + 8
//! xi = 0.0             # optional
//! saturation = reject  # or clamp
//! ```
//!
//! Exactly one of [modes] / [hard-sphere] must be present; duplicate ell
//! values are rejected. All angles are radians. Parse errors carry the
//! 1-based line and column of the offending token.

use std::f64::consts::FRAC_PI_2;

use crate::hard_sphere::{HardSphereConfig, HardSphereModel, SaturationPolicy, build_model};
use crate::partial_wave::{ModeParams, ScatteringModel};

/// Syntax or validation error with the position of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Hard-sphere parameters as written in the file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardSphereSpec {
    pub radius: f64,
    pub ell_max: Option<u32>,
    pub xi: f64,
    pub saturation: SaturationPolicy,
}

/// Parsed model file: wave number plus either an explicit mode table or a
/// hard-sphere block.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecBody {
    Modes(Vec<ModeParams>),
    HardSphere(HardSphereSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpecFile {
    pub k: f64,
    pub body: SpecBody,
}

impl ModelSpecFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Parser::new(text).parse()
    }

    /// Build the scattering model. Hard-sphere bodies go through the mode
    /// builder and may fail with numeric domain errors; explicit mode tables
    /// were fully validated at parse time.
    pub fn build(&self) -> crate::Result<HardSphereModel> {
        match &self.body {
            SpecBody::Modes(modes) => Ok(HardSphereModel {
                model: ScatteringModel::new(self.k, modes.clone())?,
                saturated: Vec::new(),
            }),
            SpecBody::HardSphere(hs) => {
                let mut config = HardSphereConfig::new(self.k, hs.radius)?
                    .with_xi(hs.xi)
                    .with_saturation(hs.saturation);
                if let Some(ell_max) = hs.ell_max {
                    config = config.with_ell_max(ell_max);
                }
                build_model(&config)
            }
        }
    }
}

#[derive(PartialEq)]
enum Section {
    Top,
    Modes,
    HardSphere,
}

struct Parser<'a> {
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text }
    }

    fn parse(&self) -> Result<ModelSpecFile, ParseError> {
        let mut section = Section::Top;
        let mut k: Option<f64> = None;
        let mut modes: Option<Vec<ModeParams>> = None;
        let mut radius: Option<f64> = None;
        let mut ell_max: Option<u32> = None;
        let mut xi = 0.0;
        let mut saturation = SaturationPolicy::Reject;

        for (idx, raw) in self.text.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim();
            if trimmed.is_empty() {
                continue;
            }
            let col = content.len() - content.trim_start().len() + 1;

            if let Some(name) = trimmed.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or_else(|| {
                    ParseError::new(line_no, col, "unterminated section header")
                })?;
                section = match name.trim() {
                    "modes" => {
                        if modes.is_some() {
                            return Err(ParseError::new(line_no, col, "duplicate [modes] section"));
                        }
                        modes = Some(Vec::new());
                        Section::Modes
                    }
                    "hard-sphere" | "hard_sphere" => {
                        if radius.is_some() {
                            return Err(ParseError::new(
                                line_no,
                                col,
                                "duplicate [hard-sphere] section",
                            ));
                        }
                        Section::HardSphere
                    }
                    other => {
                        return Err(ParseError::new(
                            line_no,
                            col,
                            format!("unknown section '[{other}]'"),
                        ));
                    }
                };
                continue;
            }

            match section {
                Section::Top | Section::HardSphere => {
                    let (key, value, value_col) = split_assignment(content, line_no)?;
                    match (&section, key) {
                        (Section::Top, "k") => {
                            if k.is_some() {
                                return Err(ParseError::new(line_no, col, "duplicate key 'k'"));
                            }
                            let v = parse_float(value, line_no, value_col)?;
                            if !(v > 0.0) {
                                return Err(ParseError::new(
                                    line_no,
                                    value_col,
                                    format!("k must be positive, got {value}"),
                                ));
                            }
                            k = Some(v);
                        }
                        (Section::HardSphere, "radius") => {
                            let v = parse_float(value, line_no, value_col)?;
                            if !(v > 0.0) {
                                return Err(ParseError::new(
                                    line_no,
                                    value_col,
                                    format!("radius must be positive, got {value}"),
                                ));
                            }
                            radius = Some(v);
                        }
                        (Section::HardSphere, "ell_max") => {
                            ell_max = Some(parse_int(value, line_no, value_col)?);
                        }
                        (Section::HardSphere, "xi") => {
                            xi = parse_float(value, line_no, value_col)?;
                        }
                        (Section::HardSphere, "saturation") => {
                            saturation = match value {
                                "reject" => SaturationPolicy::Reject,
                                "clamp" => SaturationPolicy::Clamp,
                                other => {
                                    return Err(ParseError::new(
                                        line_no,
                                        value_col,
                                        format!(
                                            "saturation must be 'reject' or 'clamp', got '{other}'"
                                        ),
                                    ));
                                }
                            };
                        }
                        (_, other) => {
                            return Err(ParseError::new(
                                line_no,
                                col,
                                format!("unknown key '{other}'"),
                            ));
                        }
                    }
                }
                Section::Modes => {
                    let fields = fields_with_columns(content);
                    if fields.len() != 4 {
                        return Err(ParseError::new(
                            line_no,
                            col,
                            format!(
                                "mode rows have 4 fields (ell delta theta xi), got {}",
                                fields.len()
                            ),
                        ));
                    }
                    let ell: u32 = parse_int(fields[0].0, line_no, fields[0].1)?;
                    let delta = parse_float(fields[1].0, line_no, fields[1].1)?;
                    let theta = parse_float(fields[2].0, line_no, fields[2].1)?;
                    let xi_mode = parse_float(fields[3].0, line_no, fields[3].1)?;
                    if theta.abs() > FRAC_PI_2 {
                        return Err(ParseError::new(
                            line_no,
                            fields[2].1,
                            format!("theta = {theta} outside the canonical range [-pi/2, pi/2]"),
                        ));
                    }
                    let list = modes.as_mut().expect("inside [modes] section");
                    if list.iter().any(|m| m.ell == ell) {
                        return Err(ParseError::new(
                            line_no,
                            fields[0].1,
                            format!("duplicate mode ell = {ell}"),
                        ));
                    }
                    list.push(ModeParams::new(ell, delta, theta, xi_mode).map_err(|e| {
                        ParseError::new(line_no, col, e.to_string())
                    })?);
                }
            }
        }

        let k = k.ok_or_else(|| ParseError::new(1, 1, "missing required key 'k'"))?;
        let body = match (modes, radius) {
            (Some(m), None) => {
                if m.is_empty() {
                    return Err(ParseError::new(1, 1, "[modes] section has no rows"));
                }
                SpecBody::Modes(m)
            }
            (None, Some(radius)) => SpecBody::HardSphere(HardSphereSpec {
                radius,
                ell_max,
                xi,
                saturation,
            }),
            (Some(_), Some(_)) => {
                return Err(ParseError::new(
                    1,
                    1,
                    "exactly one of [modes] / [hard-sphere] may be present, found both",
                ));
            }
            (None, None) => {
                return Err(ParseError::new(
                    1,
                    1,
                    "model file needs a [modes] table or a [hard-sphere] section with a radius",
                ));
            }
        };
        Ok(ModelSpecFile { k, body })
    }
}

/// Split "key = value", returning the value's 1-based column.
fn split_assignment(content: &str, line_no: usize) -> Result<(&str, &str, usize), ParseError> {
    let eq = content.find('=').ok_or_else(|| {
        ParseError::new(
            line_no,
            content.len() - content.trim_start().len() + 1,
            "expected 'key = value'",
        )
    })?;
    let key = content[..eq].trim();
    let after = &content[eq + 1..];
    let value = after.trim();
    let value_col = eq + 2 + (after.len() - after.trim_start().len());
    Ok((key, value, value_col))
}

/// Whitespace-separated fields with their 1-based starting columns.
fn fields_with_columns(content: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut offset = 0;
    let mut rest = content;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let tail = &rest[start..];
        let end = tail
            .find(|c: char| c.is_whitespace())
            .unwrap_or(tail.len());
        out.push((&tail[..end], offset + start + 1));
        offset += start + end;
        rest = &tail[end..];
    }
    out
}

fn parse_float(s: &str, line: usize, column: usize) -> Result<f64, ParseError> {
    s.parse::<f64>()
        .map_err(|_| ParseError::new(line, column, format!("invalid number '{s}'")))
}

fn parse_int(s: &str, line: usize, column: usize) -> Result<u32, ParseError> {
    s.parse::<u32>()
        .map_err(|_| ParseError::new(line, column, format!("invalid non-negative integer '{s}'")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mode_table() {
        let text = "# demo\nk = 2.0\n\n[modes]\n# ell delta theta xi\n0 0.5 0.3 0.0\n2 0.2 -0.1 1.5\n";
        let spec = ModelSpecFile::parse(text).unwrap();
        assert_eq!(spec.k, 2.0);
        match &spec.body {
            SpecBody::Modes(modes) => {
                assert_eq!(modes.len(), 2);
                assert_eq!(modes[1].ell, 2);
                assert_eq!(modes[1].theta_pol, -0.1);
            }
            other => panic!("wrong body: {other:?}"),
        }
        let built = spec.build().unwrap();
        assert_eq!(built.model.k(), 2.0);
    }

    #[test]
    fn parses_hard_sphere_block() {
        let text = "k = 1.0\n[hard-sphere]\nradius = 0.5\nell_max = 4\nsaturation = clamp\n";
        let spec = ModelSpecFile::parse(text).unwrap();
        match spec.body {
            SpecBody::HardSphere(hs) => {
                assert_eq!(hs.radius, 0.5);
                assert_eq!(hs.ell_max, Some(4));
                assert_eq!(hs.saturation, SaturationPolicy::Clamp);
            }
            other => panic!("wrong body: {other:?}"),
        }
        let built = spec.build().unwrap();
        assert_eq!(built.model.modes().len(), 5);
    }

    #[test]
    fn rejects_duplicate_ell_with_position() {
        let text = "k = 1.0\n[modes]\n0 0.1 0.0 0.0\n0 0.2 0.0 0.0\n";
        let err = ModelSpecFile::parse(text).unwrap_err();
        assert_eq!(err.line, 4);
        assert_eq!(err.column, 1);
        assert!(err.message.contains("duplicate mode"));
    }

    #[test]
    fn rejects_both_sections() {
        let text = "k = 1.0\n[modes]\n0 0.1 0.0 0.0\n[hard-sphere]\nradius = 1.0\n";
        let err = ModelSpecFile::parse(text).unwrap_err();
        assert!(err.message.contains("exactly one"));
    }

    #[test]
    fn reports_bad_number_position() {
        let text = "k = 1.0\n[modes]\n0 0.1 zork 0.0\n";
        let err = ModelSpecFile::parse(text).unwrap_err();
        assert_eq!((err.line, err.column), (3, 7));
        assert!(err.message.contains("zork"));
    }

    #[test]
    fn reports_bad_k_value() {
        let err = ModelSpecFile::parse("k = -3\n[modes]\n0 0 0 0\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.column, 5);
    }

    #[test]
    fn requires_k_and_one_body() {
        assert!(ModelSpecFile::parse("[modes]\n0 0 0 0\n").is_err());
        assert!(ModelSpecFile::parse("k = 1.0\n").is_err());
        assert!(ModelSpecFile::parse("k = 1.0\n[modes]\n").is_err());
    }

    #[test]
    fn rejects_theta_outside_canonical_range() {
        let err = ModelSpecFile::parse("k = 1\n[modes]\n0 0.0 3.0 0.0\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 7));
    }

    #[test]
    fn comments_and_blank_lines_anywhere() {
        let text = "\n# top\nk = 1.0 # inline\n\n[modes] # section\n0 0.1 0.0 0.0 # row\n";
        assert!(ModelSpecFile::parse(text).is_ok());
    }
}
