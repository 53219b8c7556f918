//! Gauss hypergeometric function `F(a, b; c; x)` for positive parameters and
//! `x ∈ [0, 1)`.
//!
//! Below [`SWITCH_POINT`] the defining power series is summed directly. Above
//! it, two cases get a logarithmic connection expansion in powers of
//! `w = 1 - x`:
//!
//! * zero-balanced, `c = a + b`:
//!   `B(a,b) F = Σ (a)_n (b)_n / (n!)² [2ψ(n+1) - ψ(a+n) - ψ(b+n) - ln w] wⁿ`
//! * positive integer excess, `c = a + b + m`: the companion expansion with a
//!   finite polynomial part and a `(-w)^m ln w` tail.
//!
//! Every other parameter set falls back to the direct series with
//! compensated summation and an explicit truncation estimate.
//!
//! Entry points taking the complement `w` directly (`*_complement`) let
//! callers evaluate at arguments such as `1 - 10⁻²⁰` that round to `1.0`.

use crate::error::{Error, Result};
use crate::special::{check_positive, digamma, log_beta, log_gamma, Params, EULER_GAMMA};
use crate::summation::CompensatedSum;

/// Above this argument the connection expansions take over where available.
pub const SWITCH_POINT: f64 = 0.75;

/// Default relative tolerance of the series stopping rule.
pub const DEFAULT_TOL: f64 = 1e-15;

/// Default cap on the number of series terms.
pub const DEFAULT_MAX_TERMS: usize = 100_000;

// Consecutive terms that must satisfy the stopping rule.
const STOP_STREAK: usize = 3;

// Excess c - a - b within this many ulps of an integer is snapped to it.
const SNAP_ULPS: f64 = 64.0;

// Largest integer excess handled by the connection expansion.
const MAX_INTEGER_EXCESS: u32 = 32;

/// Parameters `(a, b, c)` of `F(a, b; c; x)`, all finite and positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypParams {
    a: f64,
    b: f64,
    c: f64,
}

impl HypParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        check_positive("a", a)?;
        check_positive("b", b)?;
        check_positive("c", c)?;
        Ok(Self { a, b, c })
    }

    /// `F(a, b; a + b; ·)`.
    pub fn zero_balanced(p: &Params) -> Self {
        Self {
            a: p.a(),
            b: p.b(),
            c: p.sum(),
        }
    }

    /// `F(a, b; a + b + 1; ·)`.
    pub fn unit_excess(p: &Params) -> Self {
        Self {
            a: p.a(),
            b: p.b(),
            c: p.sum() + 1.0,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `c - a - b`.
    pub fn excess(&self) -> f64 {
        self.c - self.a - self.b
    }

    fn excess_class(&self) -> Excess {
        let s = self.excess();
        let snap = SNAP_ULPS * f64::EPSILON * self.c.max(1.0);
        if s.abs() <= snap {
            return Excess::Zero;
        }
        let m = s.round();
        if m >= 1.0 && m <= f64::from(MAX_INTEGER_EXCESS) && (s - m).abs() <= snap {
            return Excess::Integer(m as u32);
        }
        Excess::Other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Excess {
    Zero,
    Integer(u32),
    Other,
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    DirectSeries,
    LogConnection,
    /// Exact endpoint value at `x = 0`.
    TerminalLimit,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::DirectSeries => "direct_series",
            Method::LogConnection => "log_connection",
            Method::TerminalLimit => "terminal_limit",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_estimate: f64,
    pub method: Method,
    pub terms: usize,
}

impl EvalResult {
    fn scaled(self, factor: f64) -> Self {
        Self {
            value: self.value * factor,
            abs_err_estimate: self.abs_err_estimate * factor.abs()
                + f64::EPSILON * (self.value * factor).abs(),
            ..self
        }
    }
}

/// Tolerance and term cap of the series stopping rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }
}

impl SeriesOptions {
    pub fn with_max_terms(max_terms: usize) -> Self {
        Self {
            max_terms,
            ..Self::default()
        }
    }
}

/// Rising factorial `(a, n) = a (a + 1) ⋯ (a + n - 1)`, `(a, 0) = 1`.
///
/// Saturates to `±∞` on overflow; [`pochhammer_with_error`] flags that case.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + f64::from(k)))
}

/// [`pochhammer`] with a relative rounding bound turned into an absolute
/// error estimate, which is `∞` when the product overflowed.
pub fn pochhammer_with_error(a: f64, n: u32) -> (f64, f64) {
    let value = pochhammer(a, n);
    if value.is_finite() {
        (value, 2.0 * f64::from(n) * f64::EPSILON * value.abs())
    } else {
        (value, f64::INFINITY)
    }
}

/// Power-series coefficients `(a,n)(b,n) / ((c,n) n!)`, generated by the
/// ratio rule `t_{n+1}/t_n = (a + n)(b + n) / ((c + n)(n + 1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesCoefficients {
    params: HypParams,
}

impl SeriesCoefficients {
    pub fn new(params: HypParams) -> Self {
        Self { params }
    }

    /// `A_n` for `F(a, b; a + b; ·)`.
    pub fn zero_balanced(p: &Params) -> Self {
        Self::new(HypParams::zero_balanced(p))
    }

    /// `A*_n` for `F(1/3, 2/3; 1; ·)`.
    pub fn ramanujan() -> Self {
        Self::zero_balanced(&Params::ramanujan())
    }

    /// `B_n` for `F(a, b; a + b + 1; ·)`.
    pub fn unit_excess(p: &Params) -> Self {
        Self::new(HypParams::unit_excess(p))
    }

    /// `B*_n` for `F(1/3, 2/3; 2; ·)`.
    pub fn ramanujan_unit_excess() -> Self {
        Self::unit_excess(&Params::ramanujan())
    }

    pub fn params(&self) -> HypParams {
        self.params
    }

    /// `t_{n+1} / t_n`.
    pub fn step_ratio(&self, n: usize) -> f64 {
        let HypParams { a, b, c } = self.params;
        let n = n as f64;
        (a + n) * (b + n) / ((c + n) * (n + 1.0))
    }

    pub fn coefficient(&self, n: usize) -> f64 {
        (0..n).fold(1.0, |acc, k| acc * self.step_ratio(k))
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..).scan(1.0, move |t, n| {
            let current = *t;
            *t *= self.step_ratio(n);
            Some(current)
        })
    }
}

/// `F(a, b; c; x)` with default options.
pub fn hyp2f1(p: &HypParams, x: f64) -> Result<EvalResult> {
    hyp2f1_with(p, x, &SeriesOptions::default())
}

pub fn hyp2f1_with(p: &HypParams, x: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    check_argument(x)?;
    evaluate(p, x, 1.0 - x, opts)
}

/// `F(a, b; c; 1 - w)` for `w ∈ (0, 1]`, accurate for tiny `w`.
pub fn hyp2f1_complement(p: &HypParams, w: f64) -> Result<EvalResult> {
    hyp2f1_complement_with(p, w, &SeriesOptions::default())
}

pub fn hyp2f1_complement_with(p: &HypParams, w: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    if !(w > 0.0 && w <= 1.0) {
        return Err(Error::Domain {
            name: "1 - x",
            value: w,
            expected: "a value in (0, 1]",
        });
    }
    evaluate(p, 1.0 - w, w, opts)
}

/// `F(a, b; c; x)` where the caller supplies both `x` and `w = 1 - x`,
/// each computed in whatever form keeps its digits. `x` may round to `1.0`
/// as long as `w > 0`.
pub fn hyp2f1_split(p: &HypParams, x: f64, w: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            expected: "a value in [0, 1)",
        });
    }
    if !(w > 0.0 && w <= 1.0) {
        return Err(Error::Domain {
            name: "1 - x",
            value: w,
            expected: "a value in (0, 1]",
        });
    }
    evaluate(p, x, w, opts)
}

fn check_argument(x: f64) -> Result<()> {
    if (0.0..1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "x",
            value: x,
            expected: "a value in [0, 1)",
        })
    }
}

// `x` and `w = 1 - x` are both supplied so callers near 1 keep the digits of w.
fn evaluate(p: &HypParams, x: f64, w: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    if x == 0.0 {
        return Ok(EvalResult {
            value: 1.0,
            abs_err_estimate: 0.0,
            method: Method::TerminalLimit,
            terms: 0,
        });
    }
    if x <= SWITCH_POINT {
        return direct_series(p, x, opts);
    }
    match p.excess_class() {
        Excess::Zero => zero_balanced_connection(p.a, p.b, w, opts),
        Excess::Integer(m) => integer_excess_connection(p.a, p.b, m, w, opts),
        Excess::Other => direct_series(p, x, opts),
    }
}

/// Tracks the stopping rule: the tail bound `|t| ρ/(1 - ρ)` must stay below
/// `tol · |sum|` for several consecutive terms.
struct Stopper {
    tol: f64,
    streak: usize,
}

impl Stopper {
    fn new(tol: f64) -> Self {
        Self { tol, streak: 0 }
    }

    fn tail_bound(term: f64, rho: f64) -> f64 {
        if rho < 1.0 {
            term.abs() * rho / (1.0 - rho)
        } else {
            f64::INFINITY
        }
    }

    fn done(&mut self, tail: f64, sum: f64) -> bool {
        if tail <= self.tol * sum.abs() {
            self.streak += 1;
        } else {
            self.streak = 0;
        }
        self.streak >= STOP_STREAK
    }
}

fn direct_series(p: &HypParams, x: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    let HypParams { a, b, c } = *p;
    let mut sum = CompensatedSum::new(1.0);
    let mut term = 1.0f64;
    // Σ (n + 1)|t_n|: each term carries O(n) roundings from the product chain.
    let mut weighted = 1.0;
    let mut stopper = Stopper::new(opts.tol);
    let mut tail = f64::INFINITY;
    for n in 0..opts.max_terms {
        let k = n as f64;
        let ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        term *= ratio;
        sum.add(term);
        weighted += (k + 2.0) * term.abs();
        tail = Stopper::tail_bound(term, ratio.max(x));
        if term == 0.0 || stopper.done(tail, sum.value()) {
            let value = sum.value();
            return Ok(EvalResult {
                value,
                abs_err_estimate: tail + 2.0 * f64::EPSILON * weighted,
                method: Method::DirectSeries,
                terms: n + 2,
            });
        }
    }
    Err(Error::NonConvergence {
        best: EvalResult {
            value: sum.value(),
            abs_err_estimate: tail + 2.0 * f64::EPSILON * weighted,
            method: Method::DirectSeries,
            terms: opts.max_terms + 1,
        },
        terms: opts.max_terms + 1,
    })
}

fn zero_balanced_connection(a: f64, b: f64, w: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    let ln_w = w.ln();
    let inv_beta = (-log_beta(&Params::new(a, b)?)?).exp();
    // 2ψ(1) - ψ(a) - ψ(b) = R(a, b)
    let mut k = -2.0 * EULER_GAMMA - digamma(a)? - digamma(b)?;
    let k0 = k.abs();
    let mut coef = 1.0f64;
    let first = k - ln_w;
    let mut sum = CompensatedSum::new(first);
    let mut weighted = first.abs();
    let mut stopper = Stopper::new(opts.tol);
    let mut tail = f64::INFINITY;
    for n in 0..opts.max_terms {
        let m = n as f64;
        let step = (a + m) * (b + m) / ((m + 1.0) * (m + 1.0));
        coef *= step * w;
        k += 2.0 / (m + 1.0) - 1.0 / (a + m) - 1.0 / (b + m);
        let term = coef * (k - ln_w);
        sum.add(term);
        weighted += (m + 2.0) * term.abs();
        // The bracket grows like ln n; a factor of 2 covers it.
        tail = 2.0 * Stopper::tail_bound(term, (step * w).max(w));
        if term == 0.0 || stopper.done(tail, sum.value()) {
            let value = sum.value() * inv_beta;
            // Digamma and log-gamma errors enter through k and 1/B.
            let err = (tail + 2.0 * f64::EPSILON * weighted + 1e-14 * (k0 + ln_w.abs())) * inv_beta
                + 8.0 * f64::EPSILON * value.abs();
            return Ok(EvalResult {
                value,
                abs_err_estimate: err,
                method: Method::LogConnection,
                terms: n + 2,
            });
        }
    }
    Err(Error::NonConvergence {
        best: EvalResult {
            value: sum.value() * inv_beta,
            abs_err_estimate: tail * inv_beta,
            method: Method::LogConnection,
            terms: opts.max_terms + 1,
        },
        terms: opts.max_terms + 1,
    })
}

/// `F(a, b; a + b + m; 1 - w)` for integer `m ≥ 1`:
///
/// ```text
/// Γ(m)Γ(a+b+m)/(Γ(a+m)Γ(b+m)) Σ_{n<m} (a)_n (b)_n / (n! (1-m)_n) wⁿ
///   - (-w)^m Γ(a+b+m)/(Γ(a)Γ(b)) Σ_{n≥0} (a+m)_n (b+m)_n / (n! (n+m)!) wⁿ
///       × [ln w - ψ(n+1) - ψ(n+m+1) + ψ(a+n+m) + ψ(b+n+m)]
/// ```
fn integer_excess_connection(
    a: f64,
    b: f64,
    m: u32,
    w: f64,
    opts: &SeriesOptions,
) -> Result<EvalResult> {
    let mf = f64::from(m);
    let ln_w = w.ln();

    let finite_scale =
        (log_gamma(mf)? + log_gamma(a + b + mf)? - log_gamma(a + mf)? - log_gamma(b + mf)?).exp();
    let mut finite = CompensatedSum::new(1.0);
    let mut e = 1.0f64;
    for n in 0..m.saturating_sub(1) {
        let k = f64::from(n);
        e *= (a + k) * (b + k) / ((k + 1.0) * (1.0 - mf + k)) * w;
        finite.add(e);
    }
    let finite = finite_scale * finite.value();

    let sign = if m.is_multiple_of(2) { -1.0 } else { 1.0 };
    let log_scale = log_gamma(a + b + mf)? - log_gamma(a)? - log_gamma(b)?;
    let tail_scale = sign * (log_scale + mf * ln_w).exp();

    let harmonic_m: f64 = (1..=m).map(|k| 1.0 / f64::from(k)).sum();
    // ψ(1) + ψ(m + 1) = -2γ + H_m
    let mut h = ln_w + 2.0 * EULER_GAMMA - harmonic_m + digamma(a + mf)? + digamma(b + mf)?;
    let h0 = h.abs();
    let mut d = (-log_gamma(mf + 1.0)?).exp();
    let mut sum = CompensatedSum::new(d * h);
    let mut weighted = (d * h).abs();
    let mut stopper = Stopper::new(opts.tol);
    let mut tail = f64::INFINITY;
    let mut converged_at = None;
    for n in 0..opts.max_terms {
        let k = n as f64;
        let step = (a + mf + k) * (b + mf + k) / ((k + 1.0) * (k + mf + 1.0));
        d *= step * w;
        h += -1.0 / (k + 1.0) - 1.0 / (k + mf + 1.0) + 1.0 / (a + k + mf) + 1.0 / (b + k + mf);
        let term = d * h;
        sum.add(term);
        weighted += (k + 2.0) * term.abs();
        tail = 2.0 * Stopper::tail_bound(term, (step * w).max(w));
        if term == 0.0 || stopper.done(tail, sum.value()) {
            converged_at = Some(n + 2);
            break;
        }
    }
    let log_part = tail_scale * sum.value();
    let value = finite + log_part;
    let err = (tail + 2.0 * f64::EPSILON * weighted + 1e-14 * h0) * tail_scale.abs()
        + 8.0 * f64::EPSILON * (finite.abs() + log_part.abs());
    let result = EvalResult {
        value,
        abs_err_estimate: err,
        method: Method::LogConnection,
        terms: converged_at.unwrap_or(opts.max_terms + 1),
    };
    match converged_at {
        Some(_) => Ok(result),
        None => Err(Error::NonConvergence {
            best: result,
            terms: opts.max_terms + 1,
        }),
    }
}

/// `dF/dx = (ab/c) F(a + 1, b + 1; c + 1; x)`.
pub fn hyp2f1_derivative(p: &HypParams, x: f64) -> Result<EvalResult> {
    hyp2f1_derivative_with(p, x, &SeriesOptions::default())
}

pub fn hyp2f1_derivative_with(p: &HypParams, x: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    check_argument(x)?;
    derivative_at(p, x, 1.0 - x, opts)
}

/// Derivative at `x = 1 - w`.
pub fn hyp2f1_derivative_complement(p: &HypParams, w: f64) -> Result<EvalResult> {
    if !(w > 0.0 && w <= 1.0) {
        return Err(Error::Domain {
            name: "1 - x",
            value: w,
            expected: "a value in (0, 1]",
        });
    }
    derivative_at(p, 1.0 - w, w, &SeriesOptions::default())
}

fn derivative_at(p: &HypParams, x: f64, w: f64, opts: &SeriesOptions) -> Result<EvalResult> {
    let HypParams { a, b, c } = *p;
    let scale = a * b / c;
    let shifted = HypParams::new(a + 1.0, b + 1.0, c + 1.0)?;
    let s = p.excess();
    if x > SWITCH_POINT && s < 1.0 && c > a && c > b {
        // Euler: F(a+1, b+1; c+1; x) = w^{s-1} F(c-a, c-b; c+1; x)
        let euler = HypParams::new(c - a, c - b, c + 1.0)?;
        let inner = evaluate(&euler, x, w, opts)?;
        return Ok(inner.scaled(scale * w.powf(s - 1.0)));
    }
    Ok(evaluate(&shifted, x, w, opts)?.scaled(scale))
}

/// Relative residual of `(1 - x) F(a+1, b+1; a+b+1; x) = F(a, b; a+b+1; x)`.
///
/// The two sides go through independent evaluation paths.
pub fn contiguous_check(p: &Params, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            expected: "a value in (0, 1)",
        });
    }
    let shifted = HypParams::new(p.a() + 1.0, p.b() + 1.0, p.sum() + 1.0)?;
    let lhs = (1.0 - x) * hyp2f1(&shifted, x)?.value;
    let rhs = hyp2f1(&HypParams::unit_excess(p), x)?.value;
    Ok(((lhs - rhs) / rhs).abs())
}

/// Two-term approximation `(R(a,b) - ln(1 - r)) / B(a,b)` of
/// `F(a, b; a + b; r)` near `r = 1`.
pub fn zero_balanced_asymptotic(p: &Params, r: f64) -> Result<f64> {
    if !(r > 0.9 && r < 1.0) {
        return Err(Error::Domain {
            name: "r",
            value: r,
            expected: "a value in (0.9, 1)",
        });
    }
    let beta = crate::special::beta(p)?;
    let r_const = crate::special::r_constant(p)?;
    Ok((r_const - (1.0 - r).ln()) / beta)
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn hp(a: f64, b: f64, c: f64) -> HypParams {
        HypParams::new(a, b, c).unwrap()
    }

    fn rel(got: f64, want: f64) -> f64 {
        ((got - want) / want).abs()
    }

    #[test]
    fn pochhammer_values() {
        assert!((pochhammer(1.0 / 3.0, 2) - 4.0 / 9.0).abs() < 1e-16);
        assert_eq!(pochhammer(5.0, 0), 1.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
        let (v, e) = pochhammer_with_error(10.0, 400);
        assert!(v.is_infinite() && e.is_infinite());
    }

    #[test]
    fn coefficient_sequences() {
        let p = Params::new(0.3, 0.5).unwrap();
        let a_n = SeriesCoefficients::zero_balanced(&p);
        let want = pochhammer(0.3, 4) * pochhammer(0.5, 4) / (pochhammer(0.8, 4) * 24.0);
        assert!(rel(a_n.coefficient(4), want) < 1e-14);
        let from_iter: Vec<f64> = a_n.iter().take(5).collect();
        assert!(rel(from_iter[4], want) < 1e-14);
        let b_star = SeriesCoefficients::ramanujan_unit_excess();
        assert!(rel(b_star.coefficient(1), (2.0 / 9.0) / 2.0) < 1e-15);
        assert!(a_n.iter().take(200).all(|t| t > 0.0));
    }

    #[test]
    fn series_at_zero_is_one() {
        let r = hyp2f1(&hp(0.7, 2.0, 0.4), 0.0).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.method, Method::TerminalLimit);
    }

    #[test]
    fn closed_form_log() {
        let r = hyp2f1(&hp(1.0, 1.0, 2.0), 0.5).unwrap();
        assert!(rel(r.value, 2.0 * 2f64.ln()) < 1e-14);
        assert_eq!(r.method, Method::DirectSeries);
        assert!(r.abs_err_estimate < 1e-13);
    }

    #[test]
    fn elliptic_value() {
        let r = hyp2f1(&hp(0.5, 0.5, 1.0), 0.25).unwrap();
        assert!(rel(r.value, 1.073_182_007_149_364_4) < 1e-14);
    }

    // Reference values computed at 40 digits with mpmath, at the binary64
    // value of each argument.
    #[test]
    fn zero_balanced_both_paths() {
        let p = hp(0.3, 0.5, 0.8);
        let cases = [
            (0.3, 1.067_834_255_732_124_4),
            (0.75, 1.272_809_832_361_804_6),
            (0.8, 1.318_674_519_664_409_6),
            (0.9, 1.463_541_333_966_743_9),
            (0.99, 1.959_665_752_186_327),
            (0.999_999, 3.980_094_897_515_301_5),
            (0.999_999_999_999, 7.013_513_077_096_864_3),
        ];
        for (x, want) in cases {
            let r = hyp2f1(&p, x).unwrap();
            assert!(rel(r.value, want) < 1e-13, "x={x}: {} vs {want}", r.value);
            assert!(r.abs_err_estimate >= (r.value - want).abs() * 0.5, "x={x}");
        }
        assert_eq!(hyp2f1(&p, 0.9).unwrap().method, Method::LogConnection);
        let far = hyp2f1_complement(&p, 1e-20).unwrap();
        assert!(rel(far.value, 11.058_059_965_973_541) < 1e-13);
        let farther = hyp2f1_complement(&p, 1e-40).unwrap();
        assert!(rel(farther.value, 21.169_439_331_235_554) < 1e-13);
    }

    #[test]
    fn zero_balanced_large_params() {
        let p = hp(2.5, 1.5, 4.0);
        for (x, want) in [
            (0.75, 3.098_814_720_810_263),
            (0.8, 3.605_481_837_251_908_5),
            (0.99, 14.520_358_060_671_336),
            (0.999_999, 60.715_603_242_153_925),
            (0.999_999_999_999, 131.077_287_892_981_09),
        ] {
            assert!(rel(hyp2f1(&p, x).unwrap().value, want) < 1e-12, "x={x}");
        }
    }

    #[test]
    fn unit_excess_connection() {
        let p = hp(0.3, 0.5, 1.8);
        for (x, want) in [
            (0.3, 1.028_096_337_540_574_5),
            (0.8, 1.101_242_789_027_375),
            (0.99, 1.162_886_372_253_185),
            (0.999_999, 1.171_015_247_153_903_4),
        ] {
            let r = hyp2f1(&p, x).unwrap();
            assert!(rel(r.value, want) < 1e-13, "x={x}: {} vs {want}", r.value);
        }
        let g_star = hp(1.0 / 3.0, 2.0 / 3.0, 2.0);
        let r = hyp2f1_complement(&g_star, 1e-20).unwrap();
        assert!(rel(r.value, 1.240_490_014_699_032_1) < 1e-13);
    }

    #[test]
    fn unit_excess_paths_agree_on_overlap() {
        let p = hp(0.7, 1.9, 3.6);
        let opts = SeriesOptions::default();
        for x in [0.76, 0.8, 0.9, 0.97] {
            let direct = direct_series(&p, x, &opts).unwrap().value;
            let conn = hyp2f1(&p, x).unwrap();
            assert_eq!(conn.method, Method::LogConnection);
            assert!(rel(conn.value, direct) < 1e-12, "x={x}");
        }
    }

    #[test]
    fn higher_integer_excess_agrees_with_series() {
        let p = hp(0.4, 1.1, 4.5);
        let opts = SeriesOptions::default();
        for x in [0.8, 0.95] {
            let direct = direct_series(&p, x, &opts).unwrap().value;
            let conn = hyp2f1(&p, x).unwrap();
            assert_eq!(conn.method, Method::LogConnection);
            assert!(rel(conn.value, direct) < 1e-12, "x={x}");
        }
    }

    #[test]
    fn non_integer_excess_uses_direct_series() {
        let p = hp(0.7, 1.2, 2.4);
        let r = hyp2f1(&p, 0.99).unwrap();
        assert_eq!(r.method, Method::DirectSeries);
        assert!(rel(r.value, 2.309_363_166_569_822_5) < 1e-12);
    }

    #[test]
    fn term_cap_reports_honest_error() {
        let p = hp(0.7, 1.2, 2.4);
        let want = 2.635_325_627_923_039_7;
        match hyp2f1(&p, 0.999_999) {
            Err(Error::NonConvergence { best, terms }) => {
                assert_eq!(terms, DEFAULT_MAX_TERMS + 1);
                assert!((best.value - want).abs() <= best.abs_err_estimate);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
        let capped = SeriesOptions::with_max_terms(10);
        assert!(matches!(
            hyp2f1_with(&hp(1.0, 1.0, 2.0), 0.5, &capped),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn argument_domain() {
        let p = hp(1.0, 1.0, 2.0);
        for x in [-0.1, 1.0, 1.5, f64::NAN] {
            assert!(matches!(hyp2f1(&p, x), Err(Error::Domain { .. })));
        }
        assert!(hyp2f1_complement(&p, 0.0).is_err());
        assert!(HypParams::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn derivative_values() {
        assert!((hyp2f1_derivative(&hp(1.0, 1.0, 2.0), 0.0).unwrap().value - 0.5).abs() < 1e-16);
        let d = hyp2f1_derivative(&hp(1.0 / 3.0, 2.0 / 3.0, 1.0), 0.0)
            .unwrap()
            .value;
        assert!((d - 2.0 / 9.0).abs() < 1e-16);
        let d = hyp2f1_derivative(&hp(1.0, 1.0, 2.0), 0.5).unwrap().value;
        assert!(rel(d, 4.0 + 4.0 * 0.5f64.ln()) < 1e-13);
        let p = hp(0.3, 0.5, 0.8);
        assert!(
            rel(
                hyp2f1_derivative(&p, 0.4).unwrap().value,
                0.324_757_244_694_631_3
            ) < 1e-13
        );
        assert!(
            rel(
                hyp2f1_derivative(&p, 0.95).unwrap().value,
                4.288_244_573_645_906
            ) < 1e-12
        );
    }

    #[test]
    fn contiguous_relation() {
        let p = Params::ramanujan();
        assert!(contiguous_check(&p, 0.5).unwrap() <= 1e-10);
        assert!(contiguous_check(&Params::new(1.0, 1.0).unwrap(), 0.25).unwrap() <= 1e-10);
        assert!(contiguous_check(&Params::new(0.2, 2.7).unwrap(), 0.99).unwrap() <= 1e-10);
        assert!(contiguous_check(&p, 1e-12).unwrap() < 1e-15);
        assert!(contiguous_check(&p, 1.0).is_err());
    }

    #[test]
    fn asymptotic_values() {
        let p = Params::ramanujan();
        let got = zero_balanced_asymptotic(&p, 1.0 - 1e-8).unwrap();
        let want = (27f64.ln() + 8.0 * 10f64.ln()) / crate::special::ramanujan_beta();
        assert!(rel(got, want) < 1e-8);
        let one = Params::new(1.0, 1.0).unwrap();
        assert!(rel(zero_balanced_asymptotic(&one, 0.99).unwrap(), 100f64.ln()) < 1e-12);
        assert!(zero_balanced_asymptotic(&one, 0.5).is_err());
        // cross-check against the connection path
        let full = hyp2f1(&HypParams::zero_balanced(&p), 1.0 - 1e-8)
            .unwrap()
            .value;
        assert!((full - got).abs() < 1e-6);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(200))]

        #[test]
        fn paths_agree_on_overlap(a in 0.01f64..3.0, b in 0.01f64..3.0, x in 0.75f64..0.9) {
            let opts = SeriesOptions::default();
            let direct = direct_series(&hp(a, b, a + b), x, &opts).unwrap().value;
            let connected = zero_balanced_connection(a, b, 1.0 - x, &opts).unwrap().value;
            proptest::prop_assert!(rel(connected, direct) < 1e-9, "a={} b={} x={}", a, b, x);
        }
    }
}
