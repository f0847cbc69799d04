//! CSV schemas for the command outputs.
//!
//! Every file starts with `#`-prefixed comment lines recording the tool
//! version, the command, and the full resolved parameter set, followed by a
//! fixed header row. Floats are printed with 17 significant digits so every
//! value round-trips; the matching and consistency schemas have parsers to
//! read them back.

use num_complex::Complex64;

use crate::matching::ResidualReport;
use crate::optical::ConsistencyReport;
use crate::quaternion::Quaternion;

/// 17 significant digits: enough to reproduce any f64 exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Reproducibility preamble: tool version, command echo, resolved parameters.
pub fn preamble(command: &str, params: &[(&str, String)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# qscatter {}\n", env!("CARGO_PKG_VERSION")));
    out.push_str(&format!("# command: {command}\n"));
    for (key, value) in params {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    out
}

pub const AMPLITUDE_HEADER: &str = "theta,F_w,F_x,F_y,F_z,sigma_diff";

pub fn amplitude_row(theta: f64, f: Quaternion, sigma_diff: f64) -> String {
    let [w, x, y, z] = f.components();
    format!(
        "{},{},{},{},{},{}",
        fmt_float(theta),
        fmt_float(w),
        fmt_float(x),
        fmt_float(y),
        fmt_float(z),
        fmt_float(sigma_diff)
    )
}

pub const CROSS_SECTION_HEADER: &str = "k,sigma_closed,sigma_quadrature,sigma_complex_limit,ratio";

pub fn cross_section_row(
    k: f64,
    sigma_closed: f64,
    sigma_quadrature: f64,
    sigma_complex_limit: f64,
) -> String {
    let ratio = sigma_closed / sigma_complex_limit;
    format!(
        "{},{},{},{},{}",
        fmt_float(k),
        fmt_float(sigma_closed),
        fmt_float(sigma_quadrature),
        fmt_float(sigma_complex_limit),
        fmt_float(ratio)
    )
}

pub const HARD_SPHERE_HEADER: &str = "ell,delta,theta_pol,xi,saturated";

pub const MATCH_HEADER: &str = "ell,k,a,gamma0,gamma1_re,gamma1_im,gamma1_degenerate,\
num_left_w,num_left_x,num_left_y,num_left_z,\
num_right_w,num_right_x,num_right_y,num_right_z,\
gamma0_res_left,gamma0_res_right,gamma1_res_left,gamma1_res_right";

pub fn match_row(r: &ResidualReport) -> String {
    let g1 = r.gamma1.unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let left = r.numeric_left.components();
    let right = r.numeric_right.components();
    let mut fields = vec![r.ell.to_string(), fmt_float(r.k), fmt_float(r.a)];
    fields.push(fmt_float(r.gamma0));
    fields.push(fmt_float(g1.re));
    fields.push(fmt_float(g1.im));
    fields.push(if r.gamma1.is_none() { "1" } else { "0" }.to_string());
    fields.extend(left.iter().map(|v| fmt_float(*v)));
    fields.extend(right.iter().map(|v| fmt_float(*v)));
    fields.push(fmt_float(r.gamma0_residual_left));
    fields.push(fmt_float(r.gamma0_residual_right));
    fields.push(fmt_float(r.gamma1_residual_left));
    fields.push(fmt_float(r.gamma1_residual_right));
    fields.join(",")
}

/// Parse one data row of the matching schema back into the report struct.
pub fn parse_match_row(row: &str) -> Result<ResidualReport, String> {
    let fields: Vec<&str> = row.split(',').collect();
    if fields.len() != 19 {
        return Err(format!("expected 19 fields, got {}", fields.len()));
    }
    let f = |i: usize| -> Result<f64, String> {
        fields[i]
            .parse::<f64>()
            .map_err(|_| format!("bad float '{}' in field {i}", fields[i]))
    };
    let degenerate = fields[6] == "1";
    Ok(ResidualReport {
        ell: fields[0]
            .parse::<u32>()
            .map_err(|_| format!("bad ell '{}'", fields[0]))?,
        k: f(1)?,
        a: f(2)?,
        gamma0: f(3)?,
        gamma1: if degenerate {
            None
        } else {
            Some(Complex64::new(f(4)?, f(5)?))
        },
        numeric_left: Quaternion::from_components(f(7)?, f(8)?, f(9)?, f(10)?),
        numeric_right: Quaternion::from_components(f(11)?, f(12)?, f(13)?, f(14)?),
        gamma0_residual_left: f(15)?,
        gamma0_residual_right: f(16)?,
        gamma1_residual_left: f(17)?,
        gamma1_residual_right: f(18)?,
    })
}

/// Consistency reports are keyed rows: the three sigma variants, one row per
/// flux radius, and one row per note (notes never contain commas).
pub const OPTICAL_HEADER: &str = "kind,r,value,note";

pub fn consistency_rows(report: &ConsistencyReport) -> Vec<String> {
    let mut rows = vec![
        format!("sigma_closed,,{},", fmt_float(report.sigma_closed)),
        format!("sigma_quadrature,,{},", fmt_float(report.sigma_quadrature)),
        format!("sigma_optical,,{},", fmt_float(report.sigma_optical)),
    ];
    for (r, residual) in &report.flux_residuals {
        rows.push(format!(
            "flux_residual,{},{},",
            fmt_float(*r),
            fmt_float(*residual)
        ));
    }
    for note in &report.notes {
        debug_assert!(!note.contains(','), "notes must stay comma-free");
        rows.push(format!("note,,,{}", note.replace(',', ";")));
    }
    rows
}

/// Parse a full consistency CSV (comments and header included) back into the
/// report struct.
pub fn parse_consistency_csv(text: &str) -> Result<ConsistencyReport, String> {
    let mut sigma_closed = None;
    let mut sigma_quadrature = None;
    let mut sigma_optical = None;
    let mut flux_residuals = Vec::new();
    let mut notes = Vec::new();
    for line in text.lines() {
        if line.starts_with('#') || line.is_empty() || line == OPTICAL_HEADER {
            continue;
        }
        let fields: Vec<&str> = line.splitn(4, ',').collect();
        if fields.len() != 4 {
            return Err(format!("expected 4 fields in '{line}'"));
        }
        let value = || {
            fields[2]
                .parse::<f64>()
                .map_err(|_| format!("bad float '{}'", fields[2]))
        };
        match fields[0] {
            "sigma_closed" => sigma_closed = Some(value()?),
            "sigma_quadrature" => sigma_quadrature = Some(value()?),
            "sigma_optical" => sigma_optical = Some(value()?),
            "flux_residual" => {
                let r = fields[1]
                    .parse::<f64>()
                    .map_err(|_| format!("bad radius '{}'", fields[1]))?;
                flux_residuals.push((r, value()?));
            }
            "note" => notes.push(fields[3].to_string()),
            other => return Err(format!("unknown row kind '{other}'")),
        }
    }
    Ok(ConsistencyReport {
        sigma_closed: sigma_closed.ok_or("missing sigma_closed")?,
        sigma_quadrature: sigma_quadrature.ok_or("missing sigma_quadrature")?,
        sigma_optical: sigma_optical.ok_or("missing sigma_optical")?,
        flux_residuals,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_at_17_digits() {
        for &x in &[
            0.1,
            -3.0,
            std::f64::consts::PI,
            1.0 / 3.0,
            6.02e23,
            -1.6e-35,
            0.0,
        ] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert!(fmt_float(f64::NAN).parse::<f64>().unwrap().is_nan());
    }

    #[test]
    fn match_row_round_trips() {
        let report = ResidualReport {
            ell: 2,
            k: 1.5,
            a: 0.7,
            gamma0: -0.123456789,
            gamma1: Some(Complex64::new(0.25, -1.75)),
            numeric_left: Quaternion::from_components(0.1, 0.2, 0.3, 0.4),
            numeric_right: Quaternion::from_components(-0.1, 0.0, 7.0, 1e-11),
            gamma0_residual_left: 1e-7,
            gamma0_residual_right: 2e-7,
            gamma1_residual_left: 0.5,
            gamma1_residual_right: 0.25,
        };
        let parsed = parse_match_row(&match_row(&report)).unwrap();
        assert_eq!(parsed, report);
    }

    #[test]
    fn degenerate_match_row_round_trips() {
        let report = ResidualReport {
            ell: 0,
            k: 1.0,
            a: 0.5,
            gamma0: 2.0,
            gamma1: None,
            numeric_left: Quaternion::ONE,
            numeric_right: Quaternion::ONE,
            gamma0_residual_left: 0.0,
            gamma0_residual_right: 0.0,
            gamma1_residual_left: f64::NAN,
            gamma1_residual_right: f64::NAN,
        };
        let parsed = parse_match_row(&match_row(&report)).unwrap();
        assert_eq!(parsed.gamma1, None);
        assert!(parsed.gamma1_residual_left.is_nan());
        assert_eq!(parsed.gamma0, report.gamma0);
    }

    #[test]
    fn consistency_report_round_trips() {
        let report = ConsistencyReport {
            sigma_closed: 8.0 * std::f64::consts::PI,
            sigma_quadrature: 8.0 * std::f64::consts::PI + 3e-14,
            sigma_optical: -0.75,
            flux_residuals: vec![(50.0, 1e-3), (100.0, -2e-4), (200.0, 3e-5), (400.0, 4e-6)],
            notes: vec!["alpha".into(), "beta gamma".into()],
        };
        let mut text = preamble("optical --spec m.spec", &[("k", fmt_float(1.0))]);
        text.push_str(OPTICAL_HEADER);
        text.push('\n');
        for row in consistency_rows(&report) {
            text.push_str(&row);
            text.push('\n');
        }
        let parsed = parse_consistency_csv(&text).unwrap();
        assert_eq!(parsed, report);
    }
}
