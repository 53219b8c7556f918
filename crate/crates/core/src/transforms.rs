//! Argument maps of the Ramanujan cubic transformation and residual checks
//! for the quadratic (Landen) and cubic transformation identities.
//!
//! With `F*(x) = F(1/3, 2/3; 1; x)` and `G*(x) = F(1/3, 2/3; 2; x)`:
//!
//! ```text
//! F*(1 - ((1-r)/(1+2r))³) = (1 + 2r) F*(r³)
//! F*(((1-r)/(1+2r))³)     = (1 + 2r)/3 · F*(1 - r³)
//! ```
//!
//! All residuals are relative to the right-hand side and every argument near
//! 1 is passed to the evaluator through its complement.

use crate::error::{Error, Result};
use crate::hypergeometric::{hyp2f1_split, HypParams, SeriesOptions};
use crate::special::Params;

/// Maximum residual over a grid and where it occurred.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub max: f64,
    pub worst_r: f64,
    pub n_samples: usize,
}

/// Which Landen identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Landen {
    /// `F(½,½;1; 4r/(1+r)²) = (1 + r) F(½,½;1; r²)`
    Ascending,
    /// `F(½,½;1; ((1-r)/(1+r))²) = (1 + r)/2 · F(½,½;1; 1 - r²)`
    Descending,
}

/// The arguments that appear together in the cubic transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicMap {
    pub r: f64,
    /// `r³`
    pub x_of_r: f64,
    /// `9r(1 + r + r²)/(1 + 2r)³`
    pub y_of_r: f64,
    /// `((1 - r)/(1 + 2r))³ = 1 - y`
    pub one_minus_y: f64,
    /// `y(r^{1/3})`
    pub z_of_r: f64,
    /// `1 - z`
    pub one_minus_z: f64,
}

impl CubicMap {
    pub fn new(r: f64) -> Result<Self> {
        check_open_unit(r)?;
        let t = r.cbrt();
        // 1 - t = (1 - r)/(1 + t + t²) keeps the digits that 1.0 - t loses.
        let one_minus_t = (1.0 - r) / (1.0 + t + t * t);
        let one_minus_z = complement_from(one_minus_t, t);
        Ok(Self {
            r,
            x_of_r: r * r * r,
            y_of_r: forward(r),
            one_minus_y: complement(r),
            z_of_r: if t > 0.9 {
                1.0 - one_minus_z
            } else {
                forward(t)
            },
            one_minus_z,
        })
    }
}

fn check_open_unit(r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "r",
            value: r,
            expected: "a value in (0, 1)",
        })
    }
}

fn complement(r: f64) -> f64 {
    complement_from(1.0 - r, r)
}

fn complement_from(one_minus_r: f64, r: f64) -> f64 {
    let q = one_minus_r / (1.0 + 2.0 * r);
    q * q * q
}

fn forward(r: f64) -> f64 {
    if r > 0.9 {
        1.0 - complement(r)
    } else {
        let d = 1.0 + 2.0 * r;
        9.0 * r * (1.0 + r + r * r) / (d * d * d)
    }
}

/// `y(r) = 9r(1 + r + r²)/(1 + 2r)³`.
pub fn cubic_forward(r: f64) -> Result<f64> {
    check_open_unit(r)?;
    Ok(forward(r))
}

/// `1 - y(r) = ((1 - r)/(1 + 2r))³`.
pub fn cubic_complement(r: f64) -> Result<f64> {
    check_open_unit(r)?;
    Ok(complement(r))
}

/// `z(r) = y(r^{1/3})`.
pub fn z_of_r(r: f64) -> Result<f64> {
    Ok(CubicMap::new(r)?.z_of_r)
}

fn ramanujan_f() -> HypParams {
    HypParams::zero_balanced(&Params::ramanujan())
}

fn ramanujan_g() -> HypParams {
    HypParams::unit_excess(&Params::ramanujan())
}

fn elliptic() -> HypParams {
    HypParams::new(0.5, 0.5, 1.0).expect("valid parameters")
}

fn max_over<F>(grid: &[f64], mut residual: F) -> Result<Residual>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut worst = Residual {
        max: 0.0,
        worst_r: f64::NAN,
        n_samples: grid.len(),
    };
    for &r in grid {
        check_open_unit(r)?;
        let res = residual(r)?;
        if res > worst.max || worst.worst_r.is_nan() {
            worst.max = res;
            worst.worst_r = r;
        }
    }
    Ok(worst)
}

fn relative(lhs: f64, rhs: f64) -> f64 {
    ((lhs - rhs) / rhs).abs()
}

/// Residual of `F*(y(r)) = (1 + 2r) F*(r³)`.
pub fn verify_rct1(grid: &[f64]) -> Result<Residual> {
    let opts = SeriesOptions::default();
    let f = ramanujan_f();
    max_over(grid, |r| {
        let m = CubicMap::new(r)?;
        let lhs = hyp2f1_split(&f, m.y_of_r, m.one_minus_y, &opts)?.value;
        let rhs = (1.0 + 2.0 * r) * hyp2f1_split(&f, m.x_of_r, 1.0 - m.x_of_r, &opts)?.value;
        Ok(relative(lhs, rhs))
    })
}

/// Residual of `F*(1 - y(r)) = (1 + 2r)/3 · F*(1 - r³)`.
pub fn verify_rct2(grid: &[f64]) -> Result<Residual> {
    let opts = SeriesOptions::default();
    let f = ramanujan_f();
    max_over(grid, |r| {
        let m = CubicMap::new(r)?;
        let lhs = hyp2f1_split(&f, m.one_minus_y, m.y_of_r, &opts)?.value;
        let rhs = (1.0 + 2.0 * r) / 3.0 * hyp2f1_split(&f, 1.0 - m.x_of_r, m.x_of_r, &opts)?.value;
        Ok(relative(lhs, rhs))
    })
}

/// Residual of one of the two Landen identities for `F(½, ½; 1; ·)`.
pub fn verify_landen(grid: &[f64], which: Landen) -> Result<Residual> {
    let opts = SeriesOptions::default();
    let k = elliptic();
    max_over(grid, |r| {
        let q = (1.0 - r) / (1.0 + r);
        let q2 = q * q;
        let arg = 4.0 * r / ((1.0 + r) * (1.0 + r));
        let (lhs, rhs) = match which {
            Landen::Ascending => {
                let lhs = hyp2f1_split(&k, arg, q2, &opts)?.value;
                let rhs = (1.0 + r) * hyp2f1_split(&k, r * r, 1.0 - r * r, &opts)?.value;
                (lhs, rhs)
            }
            Landen::Descending => {
                let lhs = hyp2f1_split(&k, q2, arg, &opts)?.value;
                let rhs = (1.0 + r) / 2.0 * hyp2f1_split(&k, 1.0 - r * r, r * r, &opts)?.value;
                (lhs, rhs)
            }
        };
        Ok(relative(lhs, rhs))
    })
}

/// Residual of the derivative of the first cubic identity, written with
/// `t = r^{1/3}`:
///
/// ```text
/// (2/3) G*(z)/(1 + 2t) = (2/3)(1 - t) F*(r) + (2/9) t²(1 + 2t)(1 - t)/(1 - r) · G*(r)
/// ```
///
/// It follows from `d/dx F*(x) = (2/9) G*(x)/(1 - x)` and
/// `dz/dr = 3(1 - t)² / (t²(1 + 2t)⁴)`.
pub fn verify_differentiated_rct(grid: &[f64]) -> Result<Residual> {
    let opts = SeriesOptions::default();
    let f = ramanujan_f();
    let g = ramanujan_g();
    max_over(grid, |r| {
        let m = CubicMap::new(r)?;
        let t = r.cbrt();
        let lhs =
            2.0 / 3.0 * hyp2f1_split(&g, m.z_of_r, m.one_minus_z, &opts)?.value / (1.0 + 2.0 * t);
        let f_r = hyp2f1_split(&f, r, 1.0 - r, &opts)?.value;
        let g_r = hyp2f1_split(&g, r, 1.0 - r, &opts)?.value;
        let rhs = 2.0 / 3.0 * (1.0 - t) * f_r
            + 2.0 / 9.0 * t * t * (1.0 + 2.0 * t) * (1.0 - t) / (1.0 - r) * g_r;
        Ok(relative(lhs, rhs))
    })
}

/// `{k/n : k = lo..=hi}`.
pub fn fraction_grid(n: usize, lo: usize, hi: usize) -> Vec<f64> {
    (lo..=hi).map(|k| k as f64 / n as f64).collect()
}
