//! Spherical Bessel functions, Legendre polynomials, and Gauss-Legendre
//! quadrature.
//!
//! j_ell uses upward recurrence from j_0, j_1 when x >= ell and Miller's
//! downward recurrence normalized against j_0 (or j_1 near a zero of j_0)
//! when x < ell, where upward is unstable. y_ell always recurses upward,
//! which is stable for the second kind. Derivatives use
//! f'_ell = f_{ell-1} - (ell+1)/x * f_ell with j_{-1} = cos(x)/x and
//! y_{-1} = sin(x)/x.

use crate::error::{Error, Result};

/// Largest supported partial-wave order.
pub const MAX_ELL: u32 = 64;

/// Below this argument the leading-order small-x limits are used:
/// j_ell -> x^ell/(2ell+1)!!, y_ell -> -(2ell-1)!!/x^(ell+1).
const SMALL_X: f64 = 1e-6;

/// Extra orders above `ell` for the downward recurrence start. Each step
/// below the turning point damps the unwanted solution by at least ~1/2,
/// so 48 spare orders leave it far below double precision.
const MILLER_PAD: u32 = 48;

fn check_args(ell: u32, x: f64, name: &'static str) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::NonPositive { name, value: x });
    }
    if ell > MAX_ELL {
        return Err(Error::EllTooLarge { ell, max: MAX_ELL });
    }
    Ok(())
}

fn double_factorial_odd(ell: i64) -> f64 {
    // (2ell+1)!! for ell >= -1
    let mut acc = 1.0;
    let mut m = 2 * ell + 1;
    while m > 1 {
        acc *= m as f64;
        m -= 2;
    }
    acc
}

fn j0(x: f64) -> f64 {
    x.sin() / x
}

fn j1(x: f64) -> f64 {
    x.sin() / (x * x) - x.cos() / x
}

/// Spherical Bessel function of the first kind j_ell(x), x > 0.
pub fn sph_bessel_j(ell: u32, x: f64) -> Result<f64> {
    check_args(ell, x, "x")?;
    if x < SMALL_X {
        return Ok(x.powi(ell as i32) / double_factorial_odd(ell as i64));
    }
    match ell {
        0 => Ok(j0(x)),
        1 => Ok(j1(x)),
        _ if x >= ell as f64 => {
            let (mut fm1, mut f) = (j0(x), j1(x));
            for m in 1..ell {
                let next = (2 * m + 1) as f64 / x * f - fm1;
                fm1 = f;
                f = next;
            }
            Ok(f)
        }
        _ => Ok(miller_downward(ell, x)),
    }
}

/// Downward recurrence from a padded start order, normalized by whichever
/// of j_0, j_1 is larger in magnitude.
fn miller_downward(ell: u32, x: f64) -> f64 {
    let start = ell + MILLER_PAD;
    let mut stored = vec![0.0f64; ell as usize + 1];
    let mut fp1 = 0.0f64; // f_{m+1}
    let mut f = 1e-30f64; // f_m, arbitrary scale fixed by normalization
    for m in (0..=start).rev() {
        let fm1 = (2 * m + 3) as f64 / x * f - fp1;
        if m <= ell {
            stored[m as usize] = fm1;
        }
        fp1 = f;
        f = fm1;
        if f.abs() > 1e250 {
            let s = 1e-250;
            f *= s;
            fp1 *= s;
            for v in &mut stored {
                *v *= s;
            }
        }
    }
    // stored[m] now holds the unnormalized f_m; stored[0] is the largest
    let (a, b) = (j0(x), j1(x));
    let scale = if a.abs() >= b.abs() {
        a / stored[0]
    } else {
        b / stored[1]
    };
    scale * stored[ell as usize]
}

fn y0(x: f64) -> f64 {
    -x.cos() / x
}

fn y1(x: f64) -> f64 {
    -x.cos() / (x * x) - x.sin() / x
}

/// Spherical Bessel function of the second kind y_ell(x), x > 0, by upward
/// recurrence. Diverges to -inf at small arguments for every order.
pub fn sph_bessel_y(ell: u32, x: f64) -> Result<f64> {
    check_args(ell, x, "x")?;
    if x < SMALL_X {
        return Ok(-double_factorial_odd(ell as i64 - 1) / x.powi(ell as i32 + 1));
    }
    match ell {
        0 => Ok(y0(x)),
        1 => Ok(y1(x)),
        _ => {
            let (mut fm1, mut f) = (y0(x), y1(x));
            for m in 1..ell {
                let next = (2 * m + 1) as f64 / x * f - fm1;
                if !next.is_finite() {
                    // magnitude grows monotonically here; the limit sign is
                    // fixed by -(2ell-1)!!/x^(ell+1)
                    return Ok(f64::NEG_INFINITY);
                }
                fm1 = f;
                f = next;
            }
            Ok(f)
        }
    }
}

/// d/dx j_ell(x) via f'_ell = f_{ell-1} - (ell+1)/x f_ell, j_{-1} = cos(x)/x.
pub fn sph_bessel_j_prime(ell: u32, x: f64) -> Result<f64> {
    check_args(ell, x, "x")?;
    let below = if ell == 0 {
        x.cos() / x
    } else {
        sph_bessel_j(ell - 1, x)?
    };
    Ok(below - (ell + 1) as f64 / x * sph_bessel_j(ell, x)?)
}

/// d/dx y_ell(x) via f'_ell = f_{ell-1} - (ell+1)/x f_ell, y_{-1} = sin(x)/x.
pub fn sph_bessel_y_prime(ell: u32, x: f64) -> Result<f64> {
    check_args(ell, x, "x")?;
    let below = if ell == 0 {
        x.sin() / x
    } else {
        sph_bessel_y(ell - 1, x)?
    };
    Ok(below - (ell + 1) as f64 / x * sph_bessel_y(ell, x)?)
}

/// Legendre polynomial P_ell(x) on [-1, 1] by the three-term recurrence.
/// P_ell(1) = 1 propagates exactly.
pub fn legendre_p(ell: u32, x: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain {
            name: "x",
            value: x,
            domain: "[-1, 1]",
        });
    }
    Ok(legendre_p_unchecked(ell, x))
}

pub(crate) fn legendre_p_unchecked(ell: u32, x: f64) -> f64 {
    match ell {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut pm1, mut p) = (1.0, x);
            for m in 1..ell {
                let next = ((2 * m + 1) as f64 * x * p - m as f64 * pm1) / (m + 1) as f64;
                pm1 = p;
                p = next;
            }
            p
        }
    }
}

/// Gauss-Legendre nodes and weights on (-1, 1).
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    /// Build the n-point rule (n >= 2) by Newton iteration on P_n.
    pub fn gauss_legendre(n: usize) -> Self {
        assert!(n >= 2, "quadrature order must be at least 2");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            // Tricomi-style initial guess, descending in i
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            for _ in 0..100 {
                let (p, pm1) = legendre_pair(n as u32, z);
                let dp = nf * (z * p - pm1) / (z * z - 1.0);
                let step = p / dp;
                z -= step;
                if step.abs() <= 1e-15 {
                    break;
                }
            }
            let (p, pm1) = legendre_pair(n as u32, z);
            let dp = nf * (z * p - pm1) / (z * z - 1.0);
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[n - 1 - i] = z;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        QuadratureRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrate f over [-1, 1].
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// (P_n(x), P_{n-1}(x)) for the Newton iteration.
fn legendre_pair(n: u32, x: f64) -> (f64, f64) {
    let (mut pm1, mut p) = (1.0, x);
    for m in 1..n {
        let next = ((2 * m + 1) as f64 * x * p - m as f64 * pm1) / (m + 1) as f64;
        pm1 = p;
        p = next;
    }
    (p, pm1)
}
