//! Counting rational points with fixed denominator near the parabola.
//!
//! The central quantity is A(q, δ) = #{a ∈ {1, …, q} : ‖a²/q‖ < δ}. With
//! δ = num/den and m = a² mod q the condition is the integer comparison
//! den·min(m, q−m) < num·q, so every count is exact and boundary ties are
//! excluded by the strict inequality.
//!
//! Three independent routes are provided: direct enumeration over a
//! ([`count_bruteforce`]), enumeration of admissible residues m combined with
//! modular square roots ([`count_modular`]), and the Fejér-kernel majorant
//! evaluated through exact Gauss sums ([`fejer_majorant`]). The bound to test
//! against is δq + r^{1+ε} + δ^{1/2}q^{11/16+ε} with r the square part of q;
//! the exponent 11/16 can be overridden (1/2 under the conjectural character
//! sum bound).

use crate::arith::{gcd, mulmod, sqrt_mod, FactoredInteger, SpfSieve};
use crate::gauss::gauss_sum_exact;
use crate::report::fmt_real;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

/// Default ε in bound comparisons.
pub const DEFAULT_EPSILON: f64 = 0.05;
/// The proven exponent of the character-sum term.
pub const DEFAULT_EXPONENT: f64 = 11.0 / 16.0;
/// Work cap for scans (total q, and per-q modular work stays polylog).
pub const SCAN_CAP: u64 = 10_000_000;

/// δ as an exact fraction num/den with 0 ≤ δ < 1/2 and gcd(num, den) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RationalThreshold {
    num: u64,
    den: u64,
}

impl RationalThreshold {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Zero);
        }
        if 2 * num as u128 >= den as u128 {
            return Err(Error::ThresholdOutOfRange { num, den });
        }
        let g = gcd(num, den).max(1);
        Ok(RationalThreshold {
            num: num / g,
            den: den / g,
        })
    }

    /// The capped stand-in for a threshold num/den ≥ 1/2: (den−1)/(2·den),
    /// the largest valid value on a doubled denominator.
    pub fn capped(den: u64) -> Self {
        let den = den.max(1);
        RationalThreshold::new(den - 1, 2 * den).expect("2(den-1) < 2den")
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl std::str::FromStr for RationalThreshold {
    type Err = Error;

    /// Exact fractions only, e.g. `1/100`. Decimals are rejected so that the
    /// boundary of the strict inequality stays reproducible.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "threshold (expected NUM/DEN)",
            input: s.to_string(),
        };
        let (n, d) = s.split_once('/').ok_or_else(err)?;
        let num: u64 = n.trim().parse().map_err(|_| err())?;
        let den: u64 = d.trim().parse().map_err(|_| err())?;
        RationalThreshold::new(num, den)
    }
}

impl std::fmt::Display for RationalThreshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A signed rational in lowest terms, used for λ, interval endpoints, and α.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rational {
    num: i64,
    den: u64,
}

impl Rational {
    pub fn new(num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Zero);
        }
        let g = gcd(num.unsigned_abs(), den).max(1);
        Ok(Rational {
            num: num / g as i64,
            den: den / g,
        })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn one() -> Self {
        Rational { num: 1, den: 1 }
    }

    pub fn zero() -> Self {
        Rational { num: 0, den: 1 }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    fn cmp_to(&self, other: &Rational) -> std::cmp::Ordering {
        // num/den vs num'/den' by cross multiplication in i128
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl std::str::FromStr for Rational {
    type Err = Error;

    /// `U/V` or a bare integer `U`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "rational (expected U/V or integer)",
            input: s.to_string(),
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let num: i64 = n.trim().parse().map_err(|_| err())?;
                let den: u64 = d.trim().parse().map_err(|_| err())?;
                Rational::new(num, den)
            }
            None => {
                let num: i64 = s.trim().parse().map_err(|_| err())?;
                Rational::new(num, 1)
            }
        }
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[inline]
fn accepted(min_dist: u128, modulus: u128, delta: &RationalThreshold) -> bool {
    delta.den() as u128 * min_dist < delta.num() as u128 * modulus
}

/// A(q, δ) by direct enumeration of a = 1..q.
pub fn count_bruteforce(q: u64, delta: &RationalThreshold) -> u64 {
    assert!(q >= 1);
    let mut count = 0u64;
    for a in 1..=q {
        let m = mulmod(a, a, q);
        if accepted(m.min(q - m) as u128, q as u128, delta) {
            count += 1;
        }
    }
    count
}

/// Number of residues m in [0, q) with den·m < num·q, i.e. the size of the
/// low admissible band. The high band is its mirror, one element shorter.
fn low_band(q: u64, delta: &RationalThreshold) -> u64 {
    // L = ceil(num·q / den)
    ((delta.num() as u128 * q as u128).div_ceil(delta.den() as u128)) as u64
}

/// A(q, δ) via modular square roots: enumerate admissible residues m and sum
/// the root counts. When more than half of all residues are admissible the
/// complement band is enumerated instead and subtracted from q, keeping the
/// cost at O(min(δ, 1/2−δ)·q · polylog q).
pub fn count_modular(q: &FactoredInteger, delta: &RationalThreshold) -> u64 {
    let n = q.n();
    let band = low_band(n, delta);
    if band == 0 {
        return 0;
    }
    let admissible = 2 * band - 1;
    let inadmissible = n - admissible;
    if admissible <= inadmissible {
        let mut count = 0u64;
        for m in 0..band {
            count += sqrt_mod(m, q).len() as u64;
        }
        for m in n - band + 1..n {
            count += sqrt_mod(m, q).len() as u64;
        }
        count
    } else {
        let mut count = n;
        for m in band..=n - band {
            count -= sqrt_mod(m, q).len() as u64;
        }
        count
    }
}

/// Σ_{a ≤ q} F_J(a²/q) with J = ⌊1/(2δ)⌋, via exact Gauss sums:
///
/// ```text
/// q/J + 2·Σ_{j=1}^{J−1} ((J−j)/J²)·Re G(j, q).
/// ```
///
/// Multiplying by π²/4 gives an upper bound for A(q, δ), since the kernel is
/// at least 4/π² wherever ‖x‖ ≤ δ and non-negative everywhere.
pub fn fejer_majorant(q: u64, delta: &RationalThreshold) -> Result<f64> {
    assert!(q >= 1);
    if delta.is_zero() {
        return Err(Error::ZeroThreshold);
    }
    let j_cap = delta.den() / (2 * delta.num());
    debug_assert!(j_cap >= 1, "valid thresholds give J >= 1");
    let jf = j_cap as f64;
    let mut acc = q as f64 / jf;
    for j in 1..j_cap {
        let g = gauss_sum_exact(j, q)?;
        acc += 2.0 * ((j_cap - j) as f64 / (jf * jf)) * g.re();
    }
    Ok(acc)
}

/// The same kernel sum evaluated pointwise: F_J(x) = (sin(πJx)/sin(πx))²/J²
/// for x ∉ ℤ and 1 at integers, with x = (a² mod q)/q exact.
pub fn fejer_majorant_direct(q: u64, delta: &RationalThreshold) -> Result<f64> {
    assert!(q >= 1);
    if delta.is_zero() {
        return Err(Error::ZeroThreshold);
    }
    let j_cap = delta.den() / (2 * delta.num());
    let jf = j_cap as f64;
    let mut acc = 0.0f64;
    for a in 1..=q {
        let m = mulmod(a, a, q);
        if m == 0 {
            acc += 1.0;
        } else {
            let x = m as f64 / q as f64;
            let s = (PI * x).sin();
            let sj = (PI * jf * x).sin();
            acc += (sj / s) * (sj / s) / (jf * jf);
        }
    }
    Ok(acc)
}

/// The three terms of the counting bound: (δq, r^{1+ε}, δ^{1/2}·q^{x+ε})
/// where r is the square part of q and x defaults to 11/16.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundTerms {
    pub linear: f64,
    pub square_part: f64,
    pub character: f64,
}

impl BoundTerms {
    pub fn sum(&self) -> f64 {
        self.linear + self.square_part + self.character
    }
}

pub fn bound_terms(
    q: &FactoredInteger,
    delta: &RationalThreshold,
    epsilon: f64,
    exponent: f64,
) -> BoundTerms {
    let qf = q.n() as f64;
    let d = delta.as_f64();
    let r = q.square_part() as f64;
    BoundTerms {
        linear: d * qf,
        square_part: r.powf(1.0 + epsilon),
        character: d.sqrt() * qf.powf(exponent + epsilon),
    }
}

/// How a count was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Brute,
    Modular,
    /// The integer ceiling of (π²/4)·Σ F_J — an upper bound, not the count.
    FejerMajorant,
}

impl std::fmt::Display for CountMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CountMethod::Brute => f.write_str("brute"),
            CountMethod::Modular => f.write_str("modular"),
            CountMethod::FejerMajorant => f.write_str("fejer_majorant"),
        }
    }
}

/// One counting result with its bound comparison.
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub q: u64,
    pub delta: RationalThreshold,
    pub count: u64,
    pub method: CountMethod,
    pub r: u64,
    pub terms: BoundTerms,
    pub ratio: f64,
}

impl CountReport {
    pub fn csv_header() -> &'static str {
        "# schema=1\nq,num,den,count,r,term1,term2,term3,ratio\n"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}\n",
            self.q,
            self.delta.num(),
            self.delta.den(),
            self.count,
            self.r,
            fmt_real(self.terms.linear),
            fmt_real(self.terms.square_part),
            fmt_real(self.terms.character),
            fmt_real(self.ratio)
        )
    }

    pub fn to_csv(&self) -> String {
        let mut s = Self::csv_header().to_string();
        s.push_str(&self.csv_row());
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Count by the chosen method and compare against the bound.
pub fn count_report(
    q: &FactoredInteger,
    delta: &RationalThreshold,
    method: CountMethod,
    epsilon: f64,
    exponent: f64,
) -> Result<CountReport> {
    let count = match method {
        CountMethod::Brute => count_bruteforce(q.n(), delta),
        CountMethod::Modular => count_modular(q, delta),
        CountMethod::FejerMajorant => {
            let maj = fejer_majorant(q.n(), delta)?;
            (PI * PI / 4.0 * maj).ceil() as u64
        }
    };
    let terms = bound_terms(q, delta, epsilon, exponent);
    Ok(CountReport {
        q: q.n(),
        delta: *delta,
        count,
        method,
        r: q.square_part(),
        ratio: count as f64 / terms.sum(),
        terms,
    })
}

/// Threshold selection for scans.
#[derive(Debug, Clone, Copy, Serialize)]
pub enum DeltaRule {
    /// δ(q) = ⌊q^{1−τ}⌋ / q, the rational form of q^{−τ}.
    Power { tau: f64 },
    /// The same δ for every q.
    Fixed(RationalThreshold),
}

impl DeltaRule {
    /// The threshold for one q. A value at or above 1/2 (only possible for
    /// tiny q) is capped to (q−1)/(2q); `capped` reports when that happened.
    /// num = 0 is rejected unless zero thresholds were explicitly allowed.
    pub fn apply(&self, q: u64, allow_zero: bool) -> Result<(RationalThreshold, bool)> {
        match self {
            DeltaRule::Fixed(d) => {
                if d.is_zero() && !allow_zero {
                    return Err(Error::ZeroThreshold);
                }
                Ok((*d, false))
            }
            DeltaRule::Power { tau } => {
                let num = (q as f64).powf(1.0 - tau).floor() as u64;
                if num == 0 && !allow_zero {
                    return Err(Error::ZeroThreshold);
                }
                if 2 * num as u128 >= q as u128 {
                    Ok((RationalThreshold::capped(q), true))
                } else {
                    Ok((RationalThreshold::new(num, q)?, false))
                }
            }
        }
    }
}

impl std::str::FromStr for DeltaRule {
    type Err = Error;

    /// `pow:TAU` (e.g. `pow:0.75`) or `fixed:NUM/DEN`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "delta rule (expected pow:TAU or fixed:NUM/DEN)",
            input: s.to_string(),
        };
        let (kind, rest) = s.split_once(':').ok_or_else(err)?;
        match kind.trim() {
            "pow" => {
                let tau: f64 = rest.trim().parse().map_err(|_| err())?;
                if !tau.is_finite() {
                    return Err(err());
                }
                Ok(DeltaRule::Power { tau })
            }
            "fixed" => Ok(DeltaRule::Fixed(rest.parse()?)),
            _ => Err(err()),
        }
    }
}

/// Extremal counting ratios over a q range.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub q_lo: u64,
    pub q_hi: u64,
    pub epsilon: f64,
    pub exponent: f64,
    pub processed: u64,
    /// Number of q whose threshold had to be capped below 1/2.
    pub capped: u64,
    /// Per-dyadic-block maxima, ascending in q.
    pub blocks: Vec<CountReport>,
    pub sup: Option<CountReport>,
}

impl ScanReport {
    pub fn to_csv(&self) -> String {
        let mut out = CountReport::csv_header().to_string();
        for r in &self.blocks {
            out.push_str(&r.csv_row());
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn better_count(a: CountReport, b: CountReport) -> CountReport {
    // larger ratio wins; ties resolved toward smaller q for determinism
    if (b.ratio, a.q) > (a.ratio, b.q) {
        b
    } else {
        a
    }
}

/// Scan q over [lo, hi] with a threshold rule, counting via [`count_modular`]
/// and comparing against the bound. Deterministic for any thread count: work
/// is partitioned in fixed chunks and reduced with an associative max.
pub fn scan_count_bound(
    q_lo: u64,
    q_hi: u64,
    rule: &DeltaRule,
    epsilon: f64,
    exponent: f64,
    allow_zero_delta: bool,
) -> Result<ScanReport> {
    if q_hi > SCAN_CAP {
        return Err(Error::RangeTooLarge {
            lo: q_lo,
            hi: q_hi,
            cap: SCAN_CAP,
        });
    }
    let mut report = ScanReport {
        q_lo,
        q_hi,
        epsilon,
        exponent,
        processed: 0,
        capped: 0,
        blocks: Vec::new(),
        sup: None,
    };
    if q_lo > q_hi || q_lo == 0 {
        if q_lo == 0 {
            return Err(Error::Zero);
        }
        return Ok(report);
    }
    // validate the rule at both endpoints; the power rule is monotone in q,
    // so zero thresholds cannot appear only in the interior
    rule.apply(q_lo, allow_zero_delta)?;
    rule.apply(q_hi, allow_zero_delta)?;
    let sieve = SpfSieve::new(q_hi)?;

    const CHUNK: u64 = 4096;
    let n_chunks = (q_hi - q_lo) / CHUNK + 1;
    let partials: Vec<(u64, u64, Vec<(u32, CountReport)>)> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = q_lo + c * CHUNK;
            let hi = (lo + CHUNK - 1).min(q_hi);
            let mut capped = 0u64;
            let mut processed = 0u64;
            let mut best: Vec<(u32, CountReport)> = Vec::new();
            for q in lo..=hi {
                let (delta, was_capped) = match rule.apply(q, allow_zero_delta) {
                    Ok(x) => x,
                    Err(_) => continue,
                };
                capped += was_capped as u64;
                processed += 1;
                let f = sieve.factorize(q);
                let count = if delta.is_zero() {
                    sqrt_mod(0, &f).len() as u64
                } else {
                    count_modular(&f, &delta)
                };
                let terms = bound_terms(&f, &delta, epsilon, exponent);
                let rep = CountReport {
                    q,
                    delta,
                    count,
                    method: CountMethod::Modular,
                    r: f.square_part(),
                    ratio: count as f64 / terms.sum(),
                    terms,
                };
                let block = 63 - q.leading_zeros();
                match best.iter_mut().find(|(b, _)| *b == block) {
                    Some((_, cur)) => *cur = better_count(cur.clone(), rep),
                    None => best.push((block, rep)),
                }
            }
            (processed, capped, best)
        })
        .collect();

    let mut blocks: std::collections::BTreeMap<u32, CountReport> = Default::default();
    for (processed, capped, best) in partials {
        report.processed += processed;
        report.capped += capped;
        for (b, rep) in best {
            blocks
                .entry(b)
                .and_modify(|cur| *cur = better_count(cur.clone(), rep.clone()))
                .or_insert(rep);
        }
    }
    report.sup = blocks.values().cloned().reduce(better_count);
    report.blocks = blocks.into_values().collect();
    Ok(report)
}

/// A twisted counting query: a ∈ {1,…,q} restricted to a/q ∈ [c, d], with the
/// distance condition on λ·a²/q instead of a²/q, and an optional moment
/// exponent α ∈ (0, 1/2].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistedQuery {
    pub q: u64,
    pub delta: RationalThreshold,
    pub lambda: Rational,
    pub interval: (Rational, Rational),
    pub alpha: Option<Rational>,
}

impl TwistedQuery {
    pub fn new(
        q: u64,
        delta: RationalThreshold,
        lambda: Rational,
        interval: (Rational, Rational),
        alpha: Option<Rational>,
    ) -> Result<Self> {
        if q == 0 {
            return Err(Error::Zero);
        }
        let (c, d) = interval;
        let zero = Rational::zero();
        let one = Rational::one();
        if c.cmp_to(&zero).is_lt() || d.cmp_to(&one).is_gt() || c.cmp_to(&d).is_gt() {
            return Err(Error::BadInterval);
        }
        if (lambda.den() as u128) * (q as u128) >= 1 << 63 {
            return Err(Error::ModulusOverflow);
        }
        if let Some(a) = alpha {
            // α ∈ (0, 1/2]
            if a.num() <= 0 || a.num() as u128 * 2 > a.den() as u128 {
                return Err(Error::AlphaOutOfRange);
            }
        }
        Ok(TwistedQuery {
            q,
            delta,
            lambda,
            interval,
            alpha,
        })
    }

    /// Inclusive a-range determined by a/q ∈ [c, d] intersected with {1,…,q};
    /// endpoints decided by cross multiplication.
    fn a_range(&self) -> Option<(u64, u64)> {
        let q = self.q as u128;
        let (c, d) = self.interval;
        // a >= c·q  ⟺  a·c_den >= c_num·q
        let lo_num = c.num().max(0) as u128 * q;
        let lo = lo_num.div_ceil(c.den() as u128) as u64;
        // a <= d·q
        let hi = (d.num().max(0) as u128 * q / d.den() as u128) as u64;
        let lo = lo.max(1);
        let hi = hi.min(self.q);
        if lo > hi {
            None
        } else {
            Some((lo, hi))
        }
    }

    /// The exact distance ‖λa²/q‖ as (min residue, modulus).
    #[inline]
    fn distance(&self, a: u64) -> (u128, u128) {
        let modulus = self.lambda.den() as u128 * self.q as u128;
        let a2 = (a as u128 * a as u128) % modulus;
        let u = self.lambda.num().unsigned_abs() as u128 % modulus;
        let m = u * a2 % modulus;
        (m.min(modulus - m), modulus)
    }
}

/// Count of a with a/q ∈ [c, d] and ‖λa²/q‖ < δ, decided in integers.
pub fn count_twisted(query: &TwistedQuery) -> u64 {
    let Some((lo, hi)) = query.a_range() else {
        return 0;
    };
    let mut count = 0u64;
    for a in lo..=hi {
        let (min_dist, modulus) = query.distance(a);
        if accepted(min_dist, modulus, &query.delta) {
            count += 1;
        }
    }
    count
}

/// The rational distances ‖λa²/q‖ of the terms included in the moment sum:
/// a in the interval range, distance at least δ, and distance nonzero (a
/// zero distance would make the term infinite). Ascending in a.
pub fn moment_terms(query: &TwistedQuery) -> Vec<(u128, u128)> {
    let Some((lo, hi)) = query.a_range() else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for a in lo..=hi {
        let (min_dist, modulus) = query.distance(a);
        if min_dist > 0 && !accepted(min_dist, modulus, &query.delta) {
            out.push((min_dist, modulus));
        }
    }
    out
}

/// Σ ‖λa²/q‖^{−α} over a with a/q ∈ [c, d] and ‖λa²/q‖ ≥ δ. Requires α in
/// the query. Distances are exact rationals; only the final power is floating
/// point, summed in ascending a for determinism.
pub fn moment_sum(query: &TwistedQuery) -> Result<f64> {
    let alpha = query.alpha.ok_or(Error::AlphaOutOfRange)?.as_f64();
    Ok(moment_terms(query)
        .iter()
        .map(|&(m, md)| (m as f64 / md as f64).powf(-alpha))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fi(n: u64) -> FactoredInteger {
        FactoredInteger::factorize(n).unwrap()
    }

    fn delta(num: u64, den: u64) -> RationalThreshold {
        RationalThreshold::new(num, den).unwrap()
    }

    #[test]
    fn threshold_validation() {
        assert!(RationalThreshold::new(1, 2).is_err());
        assert!(RationalThreshold::new(3, 4).is_err());
        assert!(RationalThreshold::new(1, 0).is_err());
        assert_eq!(delta(2, 6), delta(1, 3));
        assert_eq!(delta(0, 5).num(), 0);
        assert_eq!(RationalThreshold::capped(2), delta(1, 4));
        assert_eq!("49/100".parse::<RationalThreshold>().unwrap(), delta(49, 100));
        assert!("0.49".parse::<RationalThreshold>().is_err());
    }

    #[test]
    fn brute_examples() {
        assert_eq!(count_bruteforce(5, &delta(3, 10)), 5);
        assert_eq!(count_bruteforce(4, &delta(1, 8)), 2);
        assert_eq!(count_bruteforce(7, &delta(1, 10)), 1);
    }

    #[test]
    fn modular_examples() {
        assert_eq!(count_modular(&fi(5), &delta(3, 10)), 5);
        assert_eq!(count_modular(&fi(9), &delta(1, 9)), 3);
        assert_eq!(count_modular(&fi(1), &delta(1, 3)), 1);
    }

    #[test]
    fn modular_matches_brute_small() {
        let deltas = [
            delta(1, 1000),
            delta(1, 100),
            delta(1, 20),
            delta(1, 10),
            delta(1, 4),
            delta(49, 100),
        ];
        for q in 1u64..=400 {
            let f = fi(q);
            for d in &deltas {
                assert_eq!(
                    count_modular(&f, d),
                    count_bruteforce(q, d),
                    "q={q} delta={d}"
                );
            }
        }
    }

    #[test]
    fn zero_threshold_counts_nothing() {
        let d = delta(0, 7);
        assert_eq!(count_bruteforce(100, &d), 0);
        assert_eq!(count_modular(&fi(100), &d), 0);
    }

    #[test]
    fn fejer_examples() {
        // J = 1 kills the j-sum entirely
        let m = fejer_majorant(5, &delta(3, 10)).unwrap();
        assert!((m - 5.0).abs() < 1e-12);
        // exact Gauss sums: 1 + 2·(3/16·2 + 1/16·2) = 2
        let m = fejer_majorant(4, &delta(1, 8)).unwrap();
        assert!((m - 2.0).abs() < 1e-12);
        assert_eq!(fejer_majorant(4, &delta(0, 3)), Err(Error::ZeroThreshold));
    }

    #[test]
    fn fejer_two_routes_agree() {
        for q in 1u64..=200 {
            for d in [delta(1, 100), delta(1, 10)] {
                let a = fejer_majorant(q, &d).unwrap();
                let b = fejer_majorant_direct(q, &d).unwrap();
                assert!(
                    (a - b).abs() <= 1e-6 * a.abs().max(1.0),
                    "q={q} delta={d}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn fejer_dominates_count() {
        for q in 1u64..=300 {
            for d in [delta(1, 100), delta(1, 10)] {
                let a = count_bruteforce(q, &d) as f64;
                let m = fejer_majorant(q, &d).unwrap();
                assert!(
                    a <= PI * PI / 4.0 * m + 1e-9,
                    "q={q} delta={d}: A={a} majorant={m}"
                );
            }
        }
    }

    #[test]
    fn bound_examples() {
        let t = bound_terms(&fi(100), &delta(1, 100), 0.0, DEFAULT_EXPONENT);
        assert!((t.linear - 1.0).abs() < 1e-12);
        assert!((t.square_part - 10.0).abs() < 1e-12);
        assert!((t.character - 0.1 * 100f64.powf(0.6875)).abs() < 1e-9);
        assert!((t.character - 2.371).abs() < 1e-3);

        let t = bound_terms(&fi(7), &delta(1, 10), 0.0, DEFAULT_EXPONENT);
        assert!((t.linear - 0.7).abs() < 1e-12);
        assert!((t.square_part - 1.0).abs() < 1e-12);
        assert!((t.character - 0.1f64.sqrt() * 7f64.powf(0.6875)).abs() < 1e-9);
        assert!((t.character - 1.2).abs() < 1e-2);

        let t = bound_terms(&fi(1), &delta(1, 3), 0.0, DEFAULT_EXPONENT);
        assert!((t.linear - 1.0 / 3.0).abs() < 1e-12);
        assert!((t.square_part - 1.0).abs() < 1e-12);
        assert!((t.character - 3f64.powf(-0.5)).abs() < 1e-9);
    }

    #[test]
    fn scan_power_rule() {
        let rule = DeltaRule::Power { tau: 0.75 };
        let rep = scan_count_bound(2, 500, &rule, DEFAULT_EPSILON, DEFAULT_EXPONENT, false)
            .unwrap();
        assert_eq!(rep.processed, 499);
        assert_eq!(rep.capped, 1); // only q = 2 hits δ = 1/2
        let sup = rep.sup.unwrap();
        assert!(sup.ratio.is_finite() && sup.ratio > 0.0);
        // blocks ascend and each block ratio is at most the sup
        for w in rep.blocks.windows(2) {
            assert!(w[0].q < w[1].q);
        }
        for b in &rep.blocks {
            assert!(b.ratio <= sup.ratio);
        }
    }

    #[test]
    fn scan_empty_and_errors() {
        let rule = DeltaRule::Power { tau: 0.75 };
        let rep =
            scan_count_bound(10, 9, &rule, DEFAULT_EPSILON, DEFAULT_EXPONENT, false).unwrap();
        assert!(rep.blocks.is_empty() && rep.sup.is_none());
        assert!(scan_count_bound(
            2,
            SCAN_CAP + 1,
            &rule,
            DEFAULT_EPSILON,
            DEFAULT_EXPONENT,
            false
        )
        .is_err());
        // τ > 1 makes every threshold zero
        let rule = DeltaRule::Power { tau: 2.0 };
        assert_eq!(
            scan_count_bound(2, 100, &rule, 0.05, DEFAULT_EXPONENT, false).unwrap_err(),
            Error::ZeroThreshold
        );
        // ...unless explicitly allowed, in which case only a² ≡ 0 counts
        let rep = scan_count_bound(2, 100, &rule, 0.05, DEFAULT_EXPONENT, true).unwrap();
        assert_eq!(rep.processed, 99);
    }

    #[test]
    fn perfect_squares_count_at_least_r() {
        let d = delta(1, 1000);
        for r in 2u64..=40 {
            let q = r * r;
            assert!(count_modular(&fi(q), &d) >= r, "q={q}");
        }
    }

    #[test]
    fn twisted_examples() {
        let q5 = TwistedQuery::new(
            5,
            delta(3, 10),
            Rational::one(),
            (Rational::zero(), Rational::one()),
            None,
        )
        .unwrap();
        assert_eq!(count_twisted(&q5), 5);

        let q5i = TwistedQuery::new(
            5,
            delta(3, 10),
            Rational::one(),
            (Rational::zero(), Rational::new(2, 5).unwrap()),
            None,
        )
        .unwrap();
        assert_eq!(count_twisted(&q5i), 2);

        let q4 = TwistedQuery::new(
            4,
            delta(1, 8),
            Rational::new(1, 2).unwrap(),
            (Rational::zero(), Rational::one()),
            None,
        )
        .unwrap();
        assert_eq!(count_twisted(&q4), 1);
    }

    #[test]
    fn twisted_reduces_to_plain_count() {
        let deltas = [delta(1, 100), delta(1, 10), delta(1, 4)];
        for q in 1u64..=200 {
            for d in &deltas {
                let query = TwistedQuery::new(
                    q,
                    *d,
                    Rational::one(),
                    (Rational::zero(), Rational::one()),
                    None,
                )
                .unwrap();
                assert_eq!(count_twisted(&query), count_bruteforce(q, d));
            }
        }
    }

    #[test]
    fn moment_examples() {
        let q = TwistedQuery::new(
            5,
            delta(1, 10),
            Rational::one(),
            (Rational::zero(), Rational::one()),
            Some(Rational::new(1, 2).unwrap()),
        )
        .unwrap();
        let s = moment_sum(&q).unwrap();
        assert!((s - 4.0 * 5f64.sqrt()).abs() < 1e-9, "{s}");

        let q = TwistedQuery::new(
            2,
            delta(1, 4),
            Rational::one(),
            (Rational::zero(), Rational::one()),
            Some(Rational::new(1, 2).unwrap()),
        )
        .unwrap();
        let s = moment_sum(&q).unwrap();
        assert!((s - 2f64.sqrt()).abs() < 1e-12);

        let q = TwistedQuery::new(
            7,
            delta(1, 10),
            Rational::one(),
            (Rational::zero(), Rational::zero()),
            Some(Rational::new(1, 2).unwrap()),
        )
        .unwrap();
        assert_eq!(moment_sum(&q).unwrap(), 0.0);
    }

    #[test]
    fn query_validation() {
        let bad = TwistedQuery::new(
            5,
            delta(1, 10),
            Rational::one(),
            (Rational::one(), Rational::zero()),
            None,
        );
        assert_eq!(bad, Err(Error::BadInterval));
        let bad = TwistedQuery::new(
            5,
            delta(1, 10),
            Rational::one(),
            (Rational::zero(), Rational::one()),
            Some(Rational::new(3, 4).unwrap()),
        );
        assert_eq!(bad, Err(Error::AlphaOutOfRange));
    }

    #[test]
    fn count_monotone_in_delta() {
        for q in [7u64, 12, 36, 97, 100] {
            let mut prev = 0;
            for num in 1..=49 {
                let d = delta(num, 100);
                let c = count_bruteforce(q, &d);
                assert!(c >= prev);
                prev = c;
            }
            assert!(prev >= 1, "a = q always contributes");
        }
    }
}
