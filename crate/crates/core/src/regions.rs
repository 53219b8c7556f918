//! The six parameter regions of the positive quadrant and the linear
//! sequences whose signs decide the monotonicity of the coefficient ratios.
//!
//! With `p = ab`, `q = ab - (2/9)(a + b)` and `s = a + b`:
//!
//! | region | condition                 |
//! |--------|---------------------------|
//! | D1     | `p ≤ 2/9`, `q ≤ 0`        |
//! | D2     | `p < 2/9`, `q > 0`        |
//! | D3     | `p ≥ 2/9`, `q ≥ 0`        |
//! | D4     | `p > 2/9`, `q < 0`        |
//! | D5     | `s ≤ 1`, `q ≤ 0`          |
//! | D6     | `s ≥ 1`, `q ≥ 0`          |
//!
//! D1 and D3 are closed and meet exactly at `(1/3, 2/3)` and `(2/3, 1/3)`.

use std::fmt;

use crate::special::Params;

const TWO_NINTHS: f64 = 2.0 / 9.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
}

impl Region {
    pub const ALL: [Region; 6] = [
        Region::D1,
        Region::D2,
        Region::D3,
        Region::D4,
        Region::D5,
        Region::D6,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Region::D1 => "D1",
            Region::D2 => "D2",
            Region::D3 => "D3",
            Region::D4 => "D4",
            Region::D5 => "D5",
            Region::D6 => "D6",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Region memberships of one parameter pair. Several flags can be set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RegionLabel {
    pub in_d1: bool,
    pub in_d2: bool,
    pub in_d3: bool,
    pub in_d4: bool,
    pub in_d5: bool,
    pub in_d6: bool,
    pub is_equality_point: bool,
}

impl RegionLabel {
    pub fn contains(&self, region: Region) -> bool {
        match region {
            Region::D1 => self.in_d1,
            Region::D2 => self.in_d2,
            Region::D3 => self.in_d3,
            Region::D4 => self.in_d4,
            Region::D5 => self.in_d5,
            Region::D6 => self.in_d6,
        }
    }

    pub fn regions(&self) -> Vec<Region> {
        Region::ALL
            .into_iter()
            .filter(|r| self.contains(*r))
            .collect()
    }

    /// The single region among D1..D4 for points off every boundary.
    pub fn primary(&self) -> Option<Region> {
        let hits: Vec<Region> = [Region::D1, Region::D2, Region::D3, Region::D4]
            .into_iter()
            .filter(|r| self.contains(*r))
            .collect();
        match hits.as_slice() {
            [only] => Some(*only),
            _ => None,
        }
    }

    /// Labels joined with `sep`, e.g. `D1,D5`.
    pub fn joined(&self, sep: &str) -> String {
        self.regions()
            .iter()
            .map(Region::as_str)
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// `ab - 2/9`, `ab - (2/9)(a + b)` and `a + b - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionQuantities {
    pub product_gap: f64,
    pub balance_gap: f64,
    pub sum_gap: f64,
}

impl RegionQuantities {
    pub fn of(p: &Params) -> Self {
        let ab = p.product();
        Self {
            product_gap: ab - TWO_NINTHS,
            balance_gap: ab - TWO_NINTHS * p.sum(),
            sum_gap: p.sum() - 1.0,
        }
    }

    /// Smallest distance of any defining quantity from zero.
    pub fn boundary_distance(&self) -> f64 {
        self.product_gap
            .abs()
            .min(self.balance_gap.abs())
            .min(self.sum_gap.abs())
    }
}

/// Region flags from exact sign tests on the binary64 quantities.
pub fn classify(p: &Params) -> RegionLabel {
    classify_with_eps(p, 0.0)
}

/// As [`classify`], but every closed condition (`≤ 0` / `≥ 0`) is relaxed by
/// `eps`, so points within `eps` of a boundary also get the closed label.
pub fn classify_with_eps(p: &Params, eps: f64) -> RegionLabel {
    let q = RegionQuantities::of(p);
    let le = |v: f64| v <= eps;
    let ge = |v: f64| v >= -eps;
    RegionLabel {
        in_d1: le(q.product_gap) && le(q.balance_gap),
        in_d2: q.product_gap < 0.0 && q.balance_gap > 0.0,
        in_d3: ge(q.product_gap) && ge(q.balance_gap),
        in_d4: q.product_gap > 0.0 && q.balance_gap < 0.0,
        in_d5: le(q.sum_gap) && le(q.balance_gap),
        in_d6: ge(q.sum_gap) && ge(q.balance_gap),
        is_equality_point: is_equality_point(p),
    }
}

fn is_equality_point(p: &Params) -> bool {
    let third = 1.0 / 3.0;
    let two_thirds = 2.0 / 3.0;
    (p.a() == third && p.b() == two_thirds) || (p.a() == two_thirds && p.b() == third)
}

/// `H_n = (ab - 2/9) n + ab - (2/9)(a + b)`. Its sign is the sign of
/// `A_{n+1}/A*_{n+1} - A_n/A*_n`.
pub fn h_sequence(p: &Params, n: u32) -> f64 {
    let q = RegionQuantities::of(p);
    q.product_gap * f64::from(n) + q.balance_gap
}

/// `H*_n = (a + b + ab - 11/9) n + (2/9)(9ab - a - b - 1)`, the analogue of
/// [`h_sequence`] for `B_n/B*_n`.
pub fn h_star_sequence(p: &Params, n: u32) -> f64 {
    let (s, ab) = (p.sum(), p.product());
    (s + ab - 11.0 / 9.0) * f64::from(n) + TWO_NINTHS * (9.0 * ab - s - 1.0)
}
