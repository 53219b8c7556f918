//! Zero-balanced Gauss hypergeometric functions, the Ramanujan cubic
//! transformation, and numerical checks of the inequalities it induces for
//! `F(a, b; a + b; x)`.

pub mod error;
pub mod hypergeometric;
pub mod lab;
pub mod regions;
pub mod special;
mod summation;
pub mod transforms;

pub use error::{Error, Result};
pub use hypergeometric::{
    contiguous_check, hyp2f1, hyp2f1_complement, hyp2f1_derivative, hyp2f1_split, pochhammer,
    zero_balanced_asymptotic, EvalResult, HypParams, Method, SeriesCoefficients, SeriesOptions,
};
pub use lab::{
    find_turning_point, j_function, quotient_f, quotient_g, sequence_trend, verify_theorem,
    ClaimId, Expectation, Extremum, Quotient, ScanConfig, ScanReport, Trend, TurningPoint,
};
pub use regions::{classify, h_sequence, h_star_sequence, Region, RegionLabel};
pub use special::{beta, digamma, log_gamma, r_constant, Params, EULER_GAMMA, LN_27};
