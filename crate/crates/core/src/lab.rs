//! Grid checks of the cubic-transformation inequalities for `F(a, b; a + b; ·)`.
//!
//! Notation: `F(x) = F(a, b; a + b; x)`, `F*(x) = F(1/3, 2/3; 1; x)`,
//! `G(x) = F(a, b; a + b + 1; x)`, `G*(x) = F(1/3, 2/3; 2; x)`,
//! `y(r) = 9r(1 + r + r²)/(1 + 2r)³`, `B = B(a, b)` and `R = R(a, b)`.
//!
//! Every claim is reduced to a signed margin per grid point, negative on
//! violation. A report holds when its smallest margin is at least `-tol`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergeometric::{hyp2f1_split, HypParams, SeriesOptions};
use crate::regions::{classify, Region, RegionLabel};
use crate::special::{beta, r_constant, Params, LN_27};
use crate::transforms::CubicMap;

/// Margin tolerance below which a negative margin is not a violation.
pub const DEFAULT_MARGIN_TOL: f64 = 1e-9;

/// Points of the uniform grid used when a falsification scan finds only one
/// margin sign.
pub const RESCAN_POINTS: usize = 2000;

const FD_STEP: f64 = 1e-4;
const BRACKET_WIDTH: f64 = 1e-6;

/// The inequality or monotonicity statement being checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimId {
    /// `F(y) ≤ (1 + 2r) F(r³)` on D1, reversed on D3, neither on D2 and D4.
    T2_1,
    /// `1 ≤ (1 + 2r) F(r³)/F(y) ≤ √3 B/(2π)` on D1, reversed on D3.
    T2_2,
    /// `(2π/(√3 B)) F(r³) < F(y) < 3 F(r³)` on D1 and
    /// `F(r³) < F(y) < (6π/(√3 B)) F(r³)` on D3.
    C2_3,
    /// `0 ≤ (1 + 2r) F(r³) - F(y) ≤ 2(R - ln 27)/B` on D5, mirrored on D6.
    T2_4,
    /// `1/3 ≤ F(((1-x)/(1+2x))³)/((1 + 2x) F(1 - x³)) ≤ √3 B/(6π)` on D1.
    T2_5_1,
    /// The reverse of [`ClaimId::T2_5_1`] on D3.
    T2_5_2,
    /// `(1+2x) F(1-x³) ≤ 3 F(((1-x)/(1+2x))³) ≤ (1+2x)[F(1-x³) + 2(R - ln 27)/B]` on D5.
    T2_5_3,
    /// `0 ≤ (1+2x) F(1-x³) - 3 F(((1-x)/(1+2x))³) ≤ 2(1+2x)(ln 27 - R)/B` on D6.
    T2_5_4,
    /// `F/F*` decreasing on D1, increasing on D3, up then down on D2, down
    /// then up on D4.
    L3_1F,
    /// `G/G*` decreasing on D5, increasing on D6.
    L3_1G,
    /// `J` increasing on D5, decreasing on D6.
    L3_2J,
}

impl ClaimId {
    pub const ALL: [ClaimId; 11] = [
        ClaimId::T2_1,
        ClaimId::T2_2,
        ClaimId::C2_3,
        ClaimId::T2_4,
        ClaimId::T2_5_1,
        ClaimId::T2_5_2,
        ClaimId::T2_5_3,
        ClaimId::T2_5_4,
        ClaimId::L3_1F,
        ClaimId::L3_1G,
        ClaimId::L3_2J,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClaimId::T2_1 => "T2.1",
            ClaimId::T2_2 => "T2.2",
            ClaimId::C2_3 => "C2.3",
            ClaimId::T2_4 => "T2.4",
            ClaimId::T2_5_1 => "T2.5.1",
            ClaimId::T2_5_2 => "T2.5.2",
            ClaimId::T2_5_3 => "T2.5.3",
            ClaimId::T2_5_4 => "T2.5.4",
            ClaimId::L3_1F => "L3.1f",
            ClaimId::L3_1G => "L3.1g",
            ClaimId::L3_2J => "L3.2J",
        }
    }

    /// Claims whose grid is in `x = (1 - r)/(1 + 2r)` rather than `r`.
    pub fn uses_x_grid(&self) -> bool {
        matches!(
            self,
            ClaimId::T2_5_1 | ClaimId::T2_5_2 | ClaimId::T2_5_3 | ClaimId::T2_5_4
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown claim `{s}`"))
    }
}

/// What the claim asserts at a given parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Holds,
    /// The claim asserts that neither direction holds (T2.1 on D2 and D4).
    Fails,
    /// The point lies outside every region the claim speaks about.
    NoClaim,
}

impl Expectation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Expectation::Holds => "holds",
            Expectation::Fails => "fails",
            Expectation::NoClaim => "no-claim",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    pub tol: f64,
    pub series: SeriesOptions,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            tol: DEFAULT_MARGIN_TOL,
            series: SeriesOptions::default(),
        }
    }
}

/// Outcome of checking one claim at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanReport {
    pub params: Params,
    pub region: RegionLabel,
    pub claim: ClaimId,
    pub holds: bool,
    pub worst_r: f64,
    pub worst_margin: f64,
    pub n_samples: usize,
    pub expectation: Expectation,
}

impl ScanReport {
    /// Whether the observed outcome agrees with what the claim asserts.
    pub fn consistent(&self) -> bool {
        match self.expectation {
            Expectation::Holds => self.holds,
            Expectation::Fails => !self.holds,
            Expectation::NoClaim => true,
        }
    }
}

/// `{k/200 : k = 1..199} ∪ {1 - 10⁻ᵏ : k = 3..6}`.
pub fn default_grid() -> Vec<f64> {
    let mut grid: Vec<f64> = (1..200).map(|k| f64::from(k) / 200.0).collect();
    grid.extend((3..=6).map(|k| 1.0 - 10f64.powi(-k)));
    grid
}

/// `{k/(n + 1) : k = 1..n}`.
pub fn uniform_grid(n: usize) -> Vec<f64> {
    (1..=n).map(|k| k as f64 / (n + 1) as f64).collect()
}

fn rescan_grid() -> Vec<f64> {
    let mut grid = uniform_grid(RESCAN_POINTS);
    grid.extend((3..=6).map(|k| 1.0 - 10f64.powi(-k)));
    grid
}

fn check_open_unit(name: &'static str, r: f64) -> Result<()> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: r,
            expected: "a value in (0, 1)",
        })
    }
}

/// Evaluates the zero-balanced pair and its Ramanujan counterparts at
/// arguments given with their complements.
struct Evaluator {
    f: HypParams,
    g: HypParams,
    f_star: HypParams,
    g_star: HypParams,
    opts: SeriesOptions,
}

impl Evaluator {
    fn new(p: &Params, opts: SeriesOptions) -> Self {
        let eq = Params::ramanujan();
        Self {
            f: HypParams::zero_balanced(p),
            g: HypParams::unit_excess(p),
            f_star: HypParams::zero_balanced(&eq),
            g_star: HypParams::unit_excess(&eq),
            opts,
        }
    }

    fn f(&self, x: f64, w: f64) -> Result<f64> {
        Ok(hyp2f1_split(&self.f, x, w, &self.opts)?.value)
    }

    fn quotient_f(&self, r: f64) -> Result<f64> {
        let w = 1.0 - r;
        Ok(self.f(r, w)? / hyp2f1_split(&self.f_star, r, w, &self.opts)?.value)
    }

    fn quotient_g(&self, r: f64) -> Result<f64> {
        let w = 1.0 - r;
        Ok(hyp2f1_split(&self.g, r, w, &self.opts)?.value
            / hyp2f1_split(&self.g_star, r, w, &self.opts)?.value)
    }

    /// `(F(r³), F(y(r)))`.
    fn cubic_pair(&self, r: f64) -> Result<(f64, f64)> {
        let m = CubicMap::new(r)?;
        let cube_complement = (1.0 - r) * (1.0 + r + r * r);
        Ok((
            self.f(m.x_of_r, cube_complement)?,
            self.f(m.y_of_r, m.one_minus_y)?,
        ))
    }

    /// `(F(((1-x)/(1+2x))³), F(1 - x³))`.
    fn complementary_pair(&self, x: f64) -> Result<(f64, f64)> {
        let d = 1.0 + 2.0 * x;
        let r = (1.0 - x) / d;
        let one_minus_r = 3.0 * x / d;
        let cube_complement = one_minus_r * (1.0 + r + r * r);
        let x3 = x * x * x;
        Ok((self.f(r * r * r, cube_complement)?, self.f(1.0 - x3, x3)?))
    }

    /// `J(r) = (1 + 2t) F(r) - F(y(t))` with `t = r^{1/3}`.
    fn j(&self, r: f64) -> Result<f64> {
        let m = CubicMap::new(r)?;
        let t = r.cbrt();
        Ok((1.0 + 2.0 * t) * self.f(r, 1.0 - r)? - self.f(m.z_of_r, m.one_minus_z)?)
    }
}

/// `f(r) = F(r)/F*(r)`.
pub fn quotient_f(p: &Params, r: f64) -> Result<f64> {
    check_open_unit("r", r)?;
    Evaluator::new(p, SeriesOptions::default()).quotient_f(r)
}

/// `g(r) = G(r)/G*(r)`.
pub fn quotient_g(p: &Params, r: f64) -> Result<f64> {
    check_open_unit("r", r)?;
    Evaluator::new(p, SeriesOptions::default()).quotient_g(r)
}

/// `J(r) = (1 + 2r^{1/3}) F(r) - F(z(r))` with `z(r) = y(r^{1/3})`.
pub fn j_function(p: &Params, r: f64) -> Result<f64> {
    check_open_unit("r", r)?;
    Evaluator::new(p, SeriesOptions::default()).j(r)
}

/// `2(R - ln 27)/B`, the limit of `J` at `r = 1`.
pub fn j_limit(p: &Params) -> Result<f64> {
    Ok(2.0 * (r_constant(p)? - LN_27) / beta(p)?)
}

/// `√3 B(a, b)/(2π)`.
pub fn sharp_ratio_bound(p: &Params) -> Result<f64> {
    Ok(3f64.sqrt() * beta(p)? / (2.0 * PI))
}

/// Trend of a sequence or of sampled function values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Increasing,
    Decreasing,
    UpThenDown,
    DownThenUp,
    Constant,
}

impl Trend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Trend::Increasing => "increasing",
            Trend::Decreasing => "decreasing",
            Trend::UpThenDown => "up_then_down",
            Trend::DownThenUp => "down_then_up",
            Trend::Constant => "constant",
        }
    }
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies `seq[0..=n_max]` by the signs of successive differences.
/// Differences that are exactly zero are skipped.
pub fn sequence_trend(seq: &[f64], n_max: usize) -> Result<Trend> {
    if n_max < 2 || seq.len() <= n_max {
        return Err(Error::Domain {
            name: "n_max",
            value: n_max as f64,
            expected: "2 ≤ n_max < sequence length",
        });
    }
    let signs: Vec<bool> = seq[..=n_max]
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|d| *d != 0.0)
        .map(|d| d > 0.0)
        .collect();
    let reversals = signs.windows(2).filter(|w| w[0] != w[1]).count();
    match (signs.first(), reversals) {
        (None, _) => Ok(Trend::Constant),
        (Some(true), 0) => Ok(Trend::Increasing),
        (Some(false), 0) => Ok(Trend::Decreasing),
        (Some(true), 1) => Ok(Trend::UpThenDown),
        (Some(false), 1) => Ok(Trend::DownThenUp),
        (Some(_), n) => Err(Error::MixedPattern { reversals: n }),
    }
}

/// `A_n/A*_n` for `n = 0..=n_max`, built from
/// `A_{n+1}/A*_{n+1} = A_n/A*_n · (1 + H_n/((a + b + n)(n + 1/3)(n + 2/3)))`.
pub fn coefficient_ratios(p: &Params, n_max: usize) -> Vec<f64> {
    let (s, q) = (p.sum(), crate::regions::RegionQuantities::of(p));
    let mut out = Vec::with_capacity(n_max + 1);
    let mut value = 1.0;
    out.push(value);
    for n in 0..n_max {
        let nf = n as f64;
        let h = q.product_gap * nf + q.balance_gap;
        value *= 1.0 + h / ((s + nf) * (nf + 1.0 / 3.0) * (nf + 2.0 / 3.0));
        out.push(value);
    }
    out
}

/// `B_n/B*_n` for `n = 0..=n_max`.
pub fn unit_excess_coefficient_ratios(p: &Params, n_max: usize) -> Vec<f64> {
    let (a, b, s) = (p.a(), p.b(), p.sum());
    let mut out = Vec::with_capacity(n_max + 1);
    let mut value = 1.0;
    out.push(value);
    for n in 0..n_max {
        let nf = n as f64;
        value *= (a + nf) * (b + nf) * (nf + 2.0)
            / ((s + 1.0 + nf) * (nf + 1.0 / 3.0) * (nf + 2.0 / 3.0));
        out.push(value);
    }
    out
}

/// Trend of `f = F/F*` sampled on `grid`.
pub fn empirical_trend_f(p: &Params, grid: &[f64], cfg: &ScanConfig) -> Result<Trend> {
    let ev = Evaluator::new(p, cfg.series);
    let values = grid
        .par_iter()
        .map(|&r| {
            check_open_unit("r", r)?;
            ev.quotient_f(r)
        })
        .collect::<Result<Vec<f64>>>()?;
    if values.len() < 3 {
        return Err(Error::Domain {
            name: "grid length",
            value: values.len() as f64,
            expected: "at least 3 points",
        });
    }
    sequence_trend(&values, values.len() - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quotient {
    F,
    G,
}

impl FromStr for Quotient {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "f" | "F" => Ok(Quotient::F),
            "g" | "G" => Ok(Quotient::G),
            other => Err(format!("unknown quotient `{other}` (expected f or g)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Max,
    Min,
}

impl Extremum {
    pub fn as_str(&self) -> &'static str {
        match self {
            Extremum::Max => "max",
            Extremum::Min => "min",
        }
    }
}

/// Interior extremum of a quotient, bracketed to width `≤ 1e-6`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningPoint {
    pub r0: f64,
    pub bracket: (f64, f64),
    pub kind: Extremum,
    /// Central-difference derivative at `r0`.
    pub derivative_residual: f64,
}

/// Locates the first sign change of the central-difference derivative of
/// `F/F*` or `G/G*` on the default grid and bisects it.
pub fn find_turning_point(p: &Params, which: Quotient) -> Result<TurningPoint> {
    find_turning_point_with(p, which, &default_grid(), &ScanConfig::default())
}

pub fn find_turning_point_with(
    p: &Params,
    which: Quotient,
    grid: &[f64],
    cfg: &ScanConfig,
) -> Result<TurningPoint> {
    let ev = Evaluator::new(p, cfg.series);
    let q = |r: f64| match which {
        Quotient::F => ev.quotient_f(r),
        Quotient::G => ev.quotient_g(r),
    };
    let derivative = |r: f64| -> Result<f64> {
        let h = FD_STEP.min(0.5 * r).min(0.5 * (1.0 - r));
        Ok((q(r + h)? - q(r - h)?) / (2.0 * h))
    };
    for &r in grid {
        check_open_unit("r", r)?;
    }
    let slopes = grid
        .par_iter()
        .map(|&r| derivative(r))
        .collect::<Result<Vec<f64>>>()?;

    let found = slopes
        .windows(2)
        .position(|w| w[0] != 0.0 && w[1] != 0.0 && (w[0] > 0.0) != (w[1] > 0.0));
    let Some(i) = found else {
        return Err(Error::NotFound(format!(
            "derivative keeps one sign on {} grid points for (a, b) = ({}, {})",
            grid.len(),
            p.a(),
            p.b()
        )));
    };
    let rising = slopes[i] > 0.0;
    let (mut lo, mut hi) = (grid[i], grid[i + 1]);
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if (derivative(mid)? > 0.0) == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r0 = 0.5 * (lo + hi);
    Ok(TurningPoint {
        r0,
        bracket: (lo, hi),
        kind: if rising { Extremum::Max } else { Extremum::Min },
        derivative_residual: derivative(r0)?,
    })
}

/// Region sets a claim speaks about: the first direction applies on the
/// first set, the second direction on the second.
fn claim_regions(claim: ClaimId) -> (Region, Region) {
    match claim {
        ClaimId::T2_1 | ClaimId::T2_2 | ClaimId::C2_3 | ClaimId::L3_1F => (Region::D1, Region::D3),
        ClaimId::T2_5_1 | ClaimId::T2_5_2 => (Region::D1, Region::D3),
        ClaimId::T2_4 | ClaimId::L3_1G | ClaimId::L3_2J => (Region::D5, Region::D6),
        ClaimId::T2_5_3 | ClaimId::T2_5_4 => (Region::D5, Region::D6),
    }
}

#[derive(Debug, Clone, Copy)]
struct Constants {
    bound: f64,
    c: f64,
    e: f64,
}

impl Constants {
    fn of(p: &Params) -> Result<Self> {
        let bound = sharp_ratio_bound(p)?;
        Ok(Self {
            bound,
            c: 1.0 / bound,
            e: j_limit(p)?,
        })
    }
}

/// Margins of the two directions of a pointwise claim at grid point `r`
/// (or `x` for the complementary-argument claims).
fn pointwise_margins(claim: ClaimId, ev: &Evaluator, k: &Constants, r: f64) -> Result<[f64; 2]> {
    let margins = match claim {
        ClaimId::T2_1 | ClaimId::T2_2 | ClaimId::C2_3 | ClaimId::T2_4 => {
            let (fx, fy) = ev.cubic_pair(r)?;
            let lhs = (1.0 + 2.0 * r) * fx;
            match claim {
                ClaimId::T2_1 => [lhs - fy, fy - lhs],
                ClaimId::T2_2 => {
                    let ratio = lhs / fy;
                    [
                        (ratio - 1.0).min(k.bound - ratio),
                        (ratio - k.bound).min(1.0 - ratio),
                    ]
                }
                ClaimId::C2_3 => [
                    (fy - k.c * fx).min(3.0 * fx - fy),
                    (fy - fx).min(3.0 * k.c * fx - fy),
                ],
                _ => {
                    let j = lhs - fy;
                    [j.min(k.e - j), (-j).min(j - k.e)]
                }
            }
        }
        _ => {
            let (fr, fc) = ev.complementary_pair(r)?;
            let d = 1.0 + 2.0 * r;
            match claim {
                ClaimId::T2_5_1 | ClaimId::T2_5_2 => {
                    let q = fr / (d * fc);
                    let b = k.bound / 3.0;
                    [(q - 1.0 / 3.0).min(b - q), (q - b).min(1.0 / 3.0 - q)]
                }
                _ => {
                    let (lower, middle) = (d * fc, 3.0 * fr);
                    [
                        (middle - lower).min(d * (fc + k.e) - middle),
                        (lower - middle).min(-d * k.e - (lower - middle)),
                    ]
                }
            }
        }
    };
    Ok(margins)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Increasing,
    Decreasing,
    UpThenDown,
    DownThenUp,
}

/// Margins for a sampled shape, one per consecutive pair. For the unimodal
/// shapes the extremum index is clamped to the interior, so a missing rising
/// or falling leg shows up as a negative margin.
fn shape_margins(values: &[f64], shape: Shape) -> Vec<f64> {
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    let n = diffs.len();
    let pivot = |max: bool| -> usize {
        let cmp = |a: &f64, b: &f64| if max { a.total_cmp(b) } else { b.total_cmp(a) };
        let (k, _) = values
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| cmp(a, b).then(j.cmp(i)))
            .expect("non-empty");
        k.clamp(1, n.saturating_sub(1).max(1))
    };
    match shape {
        Shape::Increasing => diffs,
        Shape::Decreasing => diffs.into_iter().map(|d| -d).collect(),
        Shape::UpThenDown => {
            let k = pivot(true);
            diffs
                .iter()
                .enumerate()
                .map(|(i, &d)| if i < k { d } else { -d })
                .collect()
        }
        Shape::DownThenUp => {
            let k = pivot(false);
            diffs
                .iter()
                .enumerate()
                .map(|(i, &d)| if i < k { -d } else { d })
                .collect()
        }
    }
}

fn shape_values(claim: ClaimId, ev: &Evaluator, r: f64) -> Result<f64> {
    match claim {
        ClaimId::L3_1F => ev.quotient_f(r),
        ClaimId::L3_1G => ev.quotient_g(r),
        _ => ev.j(r),
    }
}

/// Smallest margin and the grid point where it occurs; ties go to the
/// smaller `r`, NaN counts as `-∞`.
fn worst(grid: &[f64], margins: impl Iterator<Item = f64>) -> (f64, f64) {
    let mut best = (f64::INFINITY, f64::NAN);
    for (&r, m) in grid.iter().zip(margins) {
        let m = if m.is_nan() { f64::NEG_INFINITY } else { m };
        if m < best.0 || best.1.is_nan() {
            best = (m, r);
        }
    }
    best
}

/// Worst margins of both directions of `claim` over `grid`.
fn directional_worst(
    claim: ClaimId,
    p: &Params,
    grid: &[f64],
    cfg: &ScanConfig,
    label: &RegionLabel,
) -> Result<[(f64, f64); 2]> {
    let ev = Evaluator::new(p, cfg.series);
    match claim {
        ClaimId::L3_1F | ClaimId::L3_1G | ClaimId::L3_2J => {
            let values = grid
                .par_iter()
                .map(|&r| shape_values(claim, &ev, r))
                .collect::<Result<Vec<f64>>>()?;
            let pairs = &grid[..grid.len().saturating_sub(1)];
            let (first, second) = match claim {
                ClaimId::L3_1F if label.in_d2 => (Shape::UpThenDown, Shape::UpThenDown),
                ClaimId::L3_1F if label.in_d4 => (Shape::DownThenUp, Shape::DownThenUp),
                ClaimId::L3_1F | ClaimId::L3_1G => (Shape::Decreasing, Shape::Increasing),
                _ => (Shape::Increasing, Shape::Decreasing),
            };
            Ok([
                worst(pairs, shape_margins(&values, first).into_iter()),
                worst(pairs, shape_margins(&values, second).into_iter()),
            ])
        }
        _ => {
            let k = Constants::of(p)?;
            let margins = grid
                .par_iter()
                .map(|&r| pointwise_margins(claim, &ev, &k, r))
                .collect::<Result<Vec<[f64; 2]>>>()?;
            Ok([
                worst(grid, margins.iter().map(|m| m[0])),
                worst(grid, margins.iter().map(|m| m[1])),
            ])
        }
    }
}

fn pick(dir: [(f64, f64); 2], first: bool, second: bool) -> (f64, f64) {
    let [a, b] = dir;
    match (first, second) {
        (true, true) => {
            if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        }
        (true, false) => a,
        (false, true) => b,
        (false, false) => {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        }
    }
}

/// Checks `claim` at `p` over `grid` (an `r`-grid, or an `x`-grid for the
/// complementary-argument claims).
///
/// Inside a claimed region the margin of that region's direction is used; at
/// the equality points both directions must hold. Elsewhere the larger of
/// the two directional margins is reported, so `holds = false` means neither
/// direction holds on the grid. For T2.1 on D2 and D4 a scan that finds only
/// one margin sign is repeated on a 2000-point grid.
pub fn verify_theorem(
    claim: ClaimId,
    p: &Params,
    grid: &[f64],
    cfg: &ScanConfig,
) -> Result<ScanReport> {
    if grid.is_empty() {
        return Err(Error::Domain {
            name: "grid length",
            value: 0.0,
            expected: "at least one point",
        });
    }
    for &r in grid {
        check_open_unit(if claim.uses_x_grid() { "x" } else { "r" }, r)?;
    }
    let label = classify(p);
    let (first_region, second_region) = claim_regions(claim);
    let (in_first, in_second) = match claim {
        ClaimId::T2_5_1 => (label.contains(first_region), false),
        ClaimId::T2_5_2 => (false, label.contains(second_region)),
        ClaimId::T2_5_3 => (label.contains(first_region), false),
        ClaimId::T2_5_4 => (false, label.contains(second_region)),
        ClaimId::L3_1F if label.in_d2 || label.in_d4 => (true, false),
        _ => (label.contains(first_region), label.contains(second_region)),
    };
    let expectation = if in_first || in_second {
        Expectation::Holds
    } else if claim == ClaimId::T2_1 && (label.in_d2 || label.in_d4) {
        Expectation::Fails
    } else {
        Expectation::NoClaim
    };
    let n_pairs = if matches!(claim, ClaimId::L3_1F | ClaimId::L3_1G | ClaimId::L3_2J) {
        grid.len().saturating_sub(1)
    } else {
        grid.len()
    };
    if n_pairs == 0 {
        return Err(Error::Domain {
            name: "grid length",
            value: grid.len() as f64,
            expected: "at least two points for a monotonicity claim",
        });
    }

    let mut dir = directional_worst(claim, p, grid, cfg, &label)?;
    let mut n_samples = grid.len();
    let (mut margin, mut r) = pick(dir, in_first, in_second);
    if expectation == Expectation::Fails && margin >= -cfg.tol {
        let dense = rescan_grid();
        dir = directional_worst(claim, p, &dense, cfg, &label)?;
        n_samples = dense.len();
        (margin, r) = pick(dir, in_first, in_second);
    }
    Ok(ScanReport {
        params: *p,
        region: label,
        claim,
        holds: margin >= -cfg.tol,
        worst_r: r,
        worst_margin: margin,
        n_samples,
        expectation,
    })
}

/// Runs [`verify_theorem`] over the product grid `a_values × b_values`.
/// Rows come back ordered by `(a index, b index)` whatever the thread count.
pub fn scan_params(
    claim: ClaimId,
    a_values: &[f64],
    b_values: &[f64],
    grid: &[f64],
    cfg: &ScanConfig,
) -> Result<Vec<ScanReport>> {
    let points: Vec<(f64, f64)> = a_values
        .iter()
        .flat_map(|&a| b_values.iter().map(move |&b| (a, b)))
        .collect();
    points
        .par_iter()
        .map(|&(a, b)| verify_theorem(claim, &Params::new(a, b)?, grid, cfg))
        .collect()
}
