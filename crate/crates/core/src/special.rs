//! Gamma-family special functions on the positive real axis, plus the two
//! constants of the zero-balanced family: the beta function `B(a, b)` and
//! `R(a, b) = -ψ(a) - ψ(b) - 2γ`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `ln 27`, the value of `R(1/3, 2/3)`.
pub const LN_27: f64 = 3.295_836_866_004_329;

// B_{2k} / (2k (2k - 1)) for k = 1..8.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_SHIFT: f64 = 16.0;

// ln sqrt(2 pi)
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k) for k = 1..8.
const DIGAMMA_ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

const DIGAMMA_SHIFT: f64 = 10.0;

/// `ln Γ(z)` together with the sign of `Γ(z)`.
///
/// Only positive arguments are in scope, so `sign` is always `+1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub log_gamma: f64,
    pub sign: i8,
}

impl GammaValue {
    pub fn new(z: f64) -> Result<Self> {
        Ok(Self {
            log_gamma: log_gamma(z)?,
            sign: 1,
        })
    }

    /// `Γ(z)`; overflows to `∞` for `z` beyond ~171.6.
    pub fn value(&self) -> f64 {
        f64::from(self.sign) * self.log_gamma.exp()
    }
}

/// Parameter pair `(a, b)` of the zero-balanced function `F(a, b; a + b; x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    a: f64,
    b: f64,
}

impl Params {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        check_positive("a", a)?;
        check_positive("b", b)?;
        Ok(Self { a, b })
    }

    /// The Ramanujan pair `(1/3, 2/3)`.
    pub fn ramanujan() -> Self {
        Self {
            a: 1.0 / 3.0,
            b: 2.0 / 3.0,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn sum(&self) -> f64 {
        self.a + self.b
    }

    pub fn product(&self) -> f64 {
        self.a * self.b
    }

    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            expected: "a finite value > 0",
        })
    }
}

/// Natural logarithm of `Γ(z)` for finite `z > 0`.
///
/// Arguments below 16 are shifted up with `Γ(z + 1) = zΓ(z)`, then the
/// Stirling series is summed to eight Bernoulli terms.
pub fn log_gamma(z: f64) -> Result<f64> {
    check_positive("z", z)?;
    let mut z = z;
    let mut product = 1.0;
    let mut shift = 0.0;
    while z < STIRLING_SHIFT {
        product *= z;
        z += 1.0;
        if !(1e-280..=1e280).contains(&product) {
            shift += product.ln();
            product = 1.0;
        }
    }
    shift += product.ln();
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let series = STIRLING.iter().rev().fold(0.0, |acc, &c| acc * inv2 + c) * inv;
    Ok((z - 0.5) * z.ln() - z + LN_SQRT_2PI + series - shift)
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)` for finite `z > 0`.
///
/// Shifts the argument upward with `ψ(z) = ψ(z + 1) - 1/z` until it reaches
/// the asymptotic region, then sums the Bernoulli expansion
/// `ln z - 1/(2z) - Σ B_{2k} / (2k z^{2k})`.
pub fn digamma(z: f64) -> Result<f64> {
    check_positive("z", z)?;
    let mut shift = 0.0;
    let mut z = z;
    while z < DIGAMMA_SHIFT {
        shift += 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let series = DIGAMMA_ASYMPTOTIC
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc * inv2 + c)
        * inv2;
    Ok(z.ln() - 0.5 / z - series - shift)
}

/// `B(a, b) = Γ(a)Γ(b)/Γ(a + b)`.
pub fn beta(p: &Params) -> Result<f64> {
    log_beta(p).map(f64::exp)
}

/// `ln B(a, b)`.
pub fn log_beta(p: &Params) -> Result<f64> {
    Ok(log_gamma(p.a)? + log_gamma(p.b)? - log_gamma(p.a + p.b)?)
}

/// `R(a, b) = -ψ(a) - ψ(b) - 2γ`, the constant term of the logarithmic
/// singularity of `B(a, b) F(a, b; a + b; r)` at `r = 1`.
pub fn r_constant(p: &Params) -> Result<f64> {
    Ok(-digamma(p.a)? - digamma(p.b)? - 2.0 * EULER_GAMMA)
}

/// `B(1/3, 2/3) = 2π/√3`.
pub fn ramanujan_beta() -> f64 {
    2.0 * PI / 3f64.sqrt()
}
