//! Exact-arithmetic kernels for counting rational points with fixed
//! denominator near the parabola y = x², together with the machinery the
//! counting bound rests on: closed-form quadratic Gauss sums, real Dirichlet
//! characters and their short sums, and convergence diagnostics for the
//! associated approximation series.
//!
//! The quantity at the centre of everything is
//!
//! ```text
//! A(q, δ) = #{ a ∈ {1, …, q} : ‖a²/q‖ < δ },    δ ∈ (0, 1/2),
//! ```
//!
//! where ‖x‖ is the distance from x to the nearest integer. Every threshold
//! comparison is decided in pure integer arithmetic so that boundary cases
//! are exact and reproducible.
//!
//! Module map:
//!
//! - [`arith`] — factorization, Jacobi symbols, multiplicative functions,
//!   and square roots modulo prime powers and general moduli.
//! - [`gauss`] — exact closed-form evaluation of G(j,q) = Σ e(ja²/q) with a
//!   direct-summation oracle.
//! - [`charsum`] — real characters, short character sums, and empirical
//!   ratio scans against the N^{1/2}q^{3/16} shape.
//! - [`counting`] — A(q,δ) by independent methods, the Fejér majorant, the
//!   three-term bound, twisted/interval variants, and range scans.
//! - [`series`] — partial-sum diagnostics for the convergence series driving
//!   the measure-zero conclusions.

pub mod arith;
pub mod charsum;
pub mod counting;
pub mod gauss;
pub mod report;
pub mod series;

/// Errors for invalid inputs across the crate. All operations are total on
/// their stated domains; anything outside comes back as one of these.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("value must be nonzero")]
    Zero,
    #[error("value {0} exceeds the supported range (< 2^63)")]
    TooLarge(u64),
    #[error("modulus must be odd, got {0}")]
    EvenModulus(u64),
    #[error("argument must be odd, got {0}")]
    EvenArgument(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("threshold must satisfy 0 <= num/den < 1/2, got {num}/{den}")]
    ThresholdOutOfRange { num: u64, den: u64 },
    #[error("threshold must be positive for this operation")]
    ZeroThreshold,
    #[error("q1 must not be a perfect square, got {0}")]
    SquareModulus(u64),
    #[error("a mod-4 twist applies only to even q1, got odd {0}")]
    TwistWithOddModulus(u64),
    #[error("even q1 = {0} requires a mod-4 twist (principal or quadratic)")]
    MissingTwist(u64),
    #[error("s must lie in ({lo}, {hi}], got {s}")]
    SOutOfRange { s: f64, lo: f64, hi: f64 },
    #[error("alpha must lie in (0, 1/2]")]
    AlphaOutOfRange,
    #[error("interval endpoints must satisfy 0 <= c <= d <= 1")]
    BadInterval,
    #[error("scan range [{lo}, {hi}] exceeds the supported work cap {cap}")]
    RangeTooLarge { lo: u64, hi: u64, cap: u64 },
    #[error("lambda denominator times q must stay below 2^63")]
    ModulusOverflow,
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
