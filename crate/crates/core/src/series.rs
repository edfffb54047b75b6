//! Partial-sum diagnostics for the convergence series behind the
//! measure-zero statements.
//!
//! For an approximation function ψ and a Hausdorff exponent s, the count
//! bound splits the driving series into three pieces:
//!
//! ```text
//! Σ A(q, 3ψ(q))·(ψ(q)/q)^s  ≪  Σ ψ^{s+1}q^{1−s}            (S1, main)
//!                            +  Σ r^{1+ε}(ψ/q)^s            (S2, square part)
//!                            +  Σ ψ^{1/2}q^{11/16+ε}(ψ/q)^s (S3, character)
//! ```
//!
//! [`three_series`] tracks the right side, [`full_series`] the left side by
//! exact counting, [`holder_split`] verifies the Hölder factorization that
//! controls S2, and [`dual_series`] tracks the dual-approximation condition
//! Σ ψ^s q^{2−s}. Convergence cannot be proven by finite sums; a flag based
//! on the decay rate of dyadic-block increments is reported instead.

use crate::arith::SpfSieve;
use crate::counting::{count_modular, RationalThreshold};
use crate::report::fmt_real;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Work cap for series cutoffs.
pub const SERIES_CAP: u64 = 10_000_000;
/// Denominator used when rationalizing 3ψ(q) for exact counting.
const RATIONALIZE_DEN: u64 = 1_000_000;
/// Dyadic increments must decay at least this fast (in log2 per block) for a
/// series to be regarded as converging. Heuristic, never a proof.
const DIVERGENCE_SLOPE: f64 = -0.05;

/// An approximation function model: a power law c·q^{−τ}, an explicit table
/// (zero beyond its support), or a power law clamped from below by
/// q^{−5/8+η} — the normalized form the convergence argument assumes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum PsiFunction {
    PowerLaw { c: f64, tau: f64 },
    Table(Vec<(u64, f64)>),
    Clamped { c: f64, tau: f64, eta: f64 },
}

impl PsiFunction {
    pub fn power(c: f64, tau: f64) -> Result<Self> {
        if c.is_nan() || c < 0.0 || !tau.is_finite() {
            return Err(Error::Parse {
                what: "power law (need c >= 0, finite tau)",
                input: format!("c={c}, tau={tau}"),
            });
        }
        Ok(PsiFunction::PowerLaw { c, tau })
    }

    pub fn clamped(c: f64, tau: f64, eta: f64) -> Result<Self> {
        if c.is_nan() || c < 0.0 || !tau.is_finite() || eta.is_nan() || eta <= 0.0 {
            return Err(Error::Parse {
                what: "clamped power law (need c >= 0, finite tau, eta > 0)",
                input: format!("c={c}, tau={tau}, eta={eta}"),
            });
        }
        Ok(PsiFunction::Clamped { c, tau, eta })
    }

    /// Table entries must be non-negative; they are sorted by q and ψ is 0
    /// outside the listed support.
    pub fn table(mut entries: Vec<(u64, f64)>) -> Result<Self> {
        if entries.iter().any(|&(q, v)| q == 0 || v.is_nan() || v < 0.0) {
            return Err(Error::Parse {
                what: "psi table (need q >= 1 and values >= 0)",
                input: format!("{} entries", entries.len()),
            });
        }
        entries.sort_unstable_by_key(|&(q, _)| q);
        entries.dedup_by_key(|&mut (q, _)| q);
        Ok(PsiFunction::Table(entries))
    }

    pub fn eval(&self, q: u64) -> f64 {
        debug_assert!(q >= 1);
        match self {
            PsiFunction::PowerLaw { c, tau } => c * (q as f64).powf(-tau),
            PsiFunction::Table(entries) => entries
                .binary_search_by_key(&q, |&(k, _)| k)
                .map(|i| entries[i].1)
                .unwrap_or(0.0),
            PsiFunction::Clamped { c, tau, eta } => {
                let floor = (q as f64).powf(-0.625 + eta);
                (c * (q as f64).powf(-tau)).max(floor)
            }
        }
    }

    /// Parse the config grammar: `power:c=1,tau=0.75`,
    /// `clamped:c=1,tau=0.75,eta=0.05`, or `table:PATH` with one
    /// whitespace- or comma-separated `q value` pair per line.
    pub fn parse(text: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "psi model (power:c=..,tau=.. | clamped:c=..,tau=..,eta=.. | table:path)",
            input: text.to_string(),
        };
        let (kind, rest) = text.split_once(':').ok_or_else(err)?;
        match kind.trim() {
            "power" | "clamped" => {
                let mut c = None;
                let mut tau = None;
                let mut eta = None;
                for part in rest.split(',') {
                    let (k, v) = part.split_once('=').ok_or_else(err)?;
                    let v: f64 = v.trim().parse().map_err(|_| err())?;
                    match k.trim() {
                        "c" => c = Some(v),
                        "tau" => tau = Some(v),
                        "eta" => eta = Some(v),
                        _ => return Err(err()),
                    }
                }
                let (c, tau) = (c.ok_or_else(err)?, tau.ok_or_else(err)?);
                if kind.trim() == "power" {
                    if eta.is_some() {
                        return Err(err());
                    }
                    PsiFunction::power(c, tau)
                } else {
                    PsiFunction::clamped(c, tau, eta.ok_or_else(err)?)
                }
            }
            "table" => {
                let text = std::fs::read_to_string(rest.trim()).map_err(|_| Error::Parse {
                    what: "psi table file",
                    input: rest.trim().to_string(),
                })?;
                let mut entries = Vec::new();
                for line in text.lines() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    let mut it = line.split(|ch: char| ch == ',' || ch.is_whitespace())
                        .filter(|t| !t.is_empty());
                    let q: u64 = it.next().ok_or_else(err)?.parse().map_err(|_| err())?;
                    let v: f64 = it.next().ok_or_else(err)?.parse().map_err(|_| err())?;
                    entries.push((q, v));
                }
                PsiFunction::table(entries)
            }
            _ => Err(err()),
        }
    }
}

/// Valid η interval (0, 5/8 − (2−s)/(s+1)) for the normalization ψ(q) ≥
/// q^{−5/8+η}. Nonempty exactly for s in (11/13, 1].
pub fn eta_range(s: f64) -> Result<(f64, f64)> {
    if !(s > 11.0 / 13.0 && s <= 1.0) {
        return Err(Error::SOutOfRange {
            s,
            lo: 11.0 / 13.0,
            hi: 1.0,
        });
    }
    Ok((0.0, 0.625 - (2.0 - s) / (s + 1.0)))
}

/// Parameters shared by the series diagnostics.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesParams {
    pub s: f64,
    pub epsilon: f64,
    /// Exponent of the character term; 11/16 proven, 1/2 conjectural.
    pub exponent: f64,
    pub q_max: u64,
}

impl SeriesParams {
    pub fn new(s: f64, epsilon: f64, exponent: f64, q_max: u64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::SOutOfRange { s, lo: 0.0, hi: 1.0 });
        }
        if q_max > SERIES_CAP {
            return Err(Error::RangeTooLarge {
                lo: 1,
                hi: q_max,
                cap: SERIES_CAP,
            });
        }
        Ok(SeriesParams {
            s,
            epsilon,
            exponent,
            q_max,
        })
    }
}

/// Partial sums at one dyadic checkpoint. `slope` is the log2 ratio of the
/// last two dyadic-block increments of the total (0 while undefined).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SeriesCheckpoint {
    pub q: u64,
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub s_full: f64,
    pub slope: f64,
    /// Ratio of the full-series block increment to the three-series block
    /// increment (full_series only; 0 when not applicable).
    pub block_ratio: f64,
}

/// Running diagnostics for one series computation.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub s: f64,
    pub epsilon: f64,
    pub exponent: f64,
    pub q_max: u64,
    pub checkpoints: Vec<SeriesCheckpoint>,
    /// Divergence flags for (S1, S2, S3, S_full), from the last block slope.
    pub divergent: [bool; 4],
    /// Number of q whose threshold 3ψ(q) had to be capped below 1/2.
    pub capped: u64,
    /// Number of q whose 3ψ(q) rationalized to zero (ψ too small for the
    /// 10^{-6} grid; their count contribution is dropped).
    pub underflowed: u64,
}

impl SeriesReport {
    pub fn totals(&self) -> (f64, f64, f64, f64) {
        match self.checkpoints.last() {
            Some(c) => (c.s1, c.s2, c.s3, c.s_full),
            None => (0.0, 0.0, 0.0, 0.0),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("# schema=1\nQ_checkpoint,S1,S2,S3,S_full,slope\n");
        for c in &self.checkpoints {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                c.q,
                fmt_real(c.s1),
                fmt_real(c.s2),
                fmt_real(c.s3),
                fmt_real(c.s_full),
                fmt_real(c.slope)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Four accumulating sums per q.
type Terms = [f64; 4];

/// Deterministic dyadic accumulation: terms are computed in parallel over
/// fixed chunks inside each dyadic block, then reduced in ascending order, so
/// the reported partial sums do not depend on the thread count. Each block is
/// marked complete when it spans a full octave [2^k, 2^{k+1}); a truncated
/// final block is excluded from slope fitting.
fn accumulate<F>(q_max: u64, term: F) -> (Vec<(u64, bool, Terms)>, [Vec<f64>; 4])
where
    F: Fn(u64) -> Terms + Sync,
{
    const CHUNK: u64 = 1 << 14;
    let mut checkpoints: Vec<(u64, bool, Terms)> = Vec::new();
    let mut block_incr: [Vec<f64>; 4] = Default::default();
    let mut totals = [0.0f64; 4];
    let mut block_lo = 1u64;
    while block_lo <= q_max {
        let full_hi = 2 * block_lo - 1;
        let block_hi = full_hi.min(q_max);
        let n_chunks = (block_hi - block_lo) / CHUNK + 1;
        let chunk_sums: Vec<Terms> = (0..n_chunks)
            .into_par_iter()
            .map(|c| {
                let lo = block_lo + c * CHUNK;
                let hi = (lo + CHUNK - 1).min(block_hi);
                let mut acc = [0.0f64; 4];
                for q in lo..=hi {
                    let t = term(q);
                    for i in 0..4 {
                        acc[i] += t[i];
                    }
                }
                acc
            })
            .collect();
        let mut incr = [0.0f64; 4];
        for cs in chunk_sums {
            for i in 0..4 {
                incr[i] += cs[i];
            }
        }
        for i in 0..4 {
            totals[i] += incr[i];
            block_incr[i].push(incr[i]);
        }
        checkpoints.push((block_hi, block_hi == full_hi, totals));
        block_lo = block_hi + 1;
    }
    (checkpoints, block_incr)
}

/// log2 of the ratio of consecutive block increments; 0 when undefined.
fn incr_slope(prev: f64, cur: f64) -> f64 {
    if prev > 0.0 && cur > 0.0 {
        (cur / prev).log2()
    } else {
        0.0
    }
}

/// Slope over the most recent pair of complete blocks at index <= k.
fn slope_at(incr: &[f64], complete: &[bool], k: usize) -> f64 {
    let mut idx: Vec<usize> = (0..=k).filter(|&i| complete[i]).collect();
    if idx.len() < 2 {
        return 0.0;
    }
    let b = idx.pop().unwrap();
    let a = idx.pop().unwrap();
    incr_slope(incr[a], incr[b])
}

fn build_report(
    params: &SeriesParams,
    checkpoints: Vec<(u64, bool, Terms)>,
    block_incr: [Vec<f64>; 4],
    capped: u64,
    underflowed: u64,
) -> SeriesReport {
    let n_blocks = block_incr[0].len();
    let complete: Vec<bool> = checkpoints.iter().map(|&(_, c, _)| c).collect();
    let total_incr: Vec<f64> = (0..n_blocks)
        .map(|k| (0..4).map(|i| block_incr[i][k]).sum())
        .collect();
    let rows = checkpoints
        .iter()
        .enumerate()
        .map(|(k, &(q, _, t))| {
            let three = block_incr[0][k] + block_incr[1][k] + block_incr[2][k];
            let block_ratio = if three > 0.0 {
                block_incr[3][k] / three
            } else {
                0.0
            };
            SeriesCheckpoint {
                q,
                s1: t[0],
                s2: t[1],
                s3: t[2],
                s_full: t[3],
                slope: slope_at(&total_incr, &complete, k),
                block_ratio,
            }
        })
        .collect();
    let mut divergent = [false; 4];
    for i in 0..4 {
        let slope = slope_at(&block_incr[i], &complete, n_blocks.saturating_sub(1));
        // a series with vanishing tail increments is not flagged
        let has_tail = complete
            .iter()
            .enumerate()
            .rev()
            .find(|&(_, &c)| c)
            .map(|(k, _)| block_incr[i][k] > 0.0)
            .unwrap_or(false);
        divergent[i] = has_tail && slope > DIVERGENCE_SLOPE;
    }
    SeriesReport {
        s: params.s,
        epsilon: params.epsilon,
        exponent: params.exponent,
        q_max: params.q_max,
        checkpoints: rows,
        divergent,
        capped,
        underflowed,
    }
}

/// Square parts r(q) for q in [1, limit], by marking multiples of d².
fn square_part_table(limit: u64) -> Vec<u32> {
    let n = limit as usize;
    let mut r = vec![1u32; n + 1];
    let mut d = 2u64;
    while d * d <= limit {
        let mut m = (d * d) as usize;
        while m <= n {
            r[m] = d as u32;
            m += (d * d) as usize;
        }
        d += 1;
    }
    r
}

/// Partial sums of the three bound-side series S1, S2, S3.
pub fn three_series(psi: &PsiFunction, params: &SeriesParams) -> Result<SeriesReport> {
    let rtab = square_part_table(params.q_max);
    let (s, eps, expo) = (params.s, params.epsilon, params.exponent);
    let (checkpoints, incr) = accumulate(params.q_max, |q| {
        let p = psi.eval(q);
        let qf = q as f64;
        if p <= 0.0 {
            return [0.0; 4];
        }
        let ratio_s = (p / qf).powf(s);
        let r = rtab[q as usize] as f64;
        [
            p.powf(s + 1.0) * qf.powf(1.0 - s),
            r.powf(1.0 + eps) * ratio_s,
            p.sqrt() * qf.powf(expo + eps) * ratio_s,
            0.0,
        ]
    });
    Ok(build_report(params, checkpoints, incr, 0, 0))
}

/// Rationalize a threshold x ∈ [0, ∞) onto the 10^{-6} grid, capping values
/// at or above 1/2 to just below it. Returns (threshold, capped, underflowed).
fn rationalize_threshold(x: f64) -> (RationalThreshold, bool, bool) {
    let num = (x * RATIONALIZE_DEN as f64).round() as u64;
    if 2 * num >= RATIONALIZE_DEN {
        (RationalThreshold::capped(RATIONALIZE_DEN), true, false)
    } else if num == 0 {
        (
            RationalThreshold::new(0, RATIONALIZE_DEN).expect("zero is valid"),
            false,
            x > 0.0,
        )
    } else {
        (
            RationalThreshold::new(num, RATIONALIZE_DEN).expect("below 1/2"),
            false,
            false,
        )
    }
}

/// Partial sums of the counted series Σ A(q, 3ψ(q))·(ψ(q)/q)^s, with the
/// three bound-side series accumulated alongside for per-block comparison.
/// A(q, 0) is 0 by convention, so ψ ≡ 0 contributes nothing.
pub fn full_series(psi: &PsiFunction, params: &SeriesParams) -> Result<SeriesReport> {
    let sieve = SpfSieve::new(params.q_max)?;
    let rtab = square_part_table(params.q_max);
    let (s, eps, expo) = (params.s, params.epsilon, params.exponent);
    use std::sync::atomic::{AtomicU64, Ordering};
    let capped = AtomicU64::new(0);
    let underflowed = AtomicU64::new(0);
    let (checkpoints, incr) = accumulate(params.q_max, |q| {
        let p = psi.eval(q);
        let qf = q as f64;
        if p <= 0.0 {
            return [0.0; 4];
        }
        let ratio_s = (p / qf).powf(s);
        let r = rtab[q as usize] as f64;
        let (delta, was_capped, was_under) = rationalize_threshold(3.0 * p);
        if was_capped {
            capped.fetch_add(1, Ordering::Relaxed);
        }
        if was_under {
            underflowed.fetch_add(1, Ordering::Relaxed);
        }
        let count = if delta.is_zero() {
            0
        } else {
            count_modular(&sieve.factorize(q), &delta)
        };
        [
            p.powf(s + 1.0) * qf.powf(1.0 - s),
            r.powf(1.0 + eps) * ratio_s,
            p.sqrt() * qf.powf(expo + eps) * ratio_s,
            count as f64 * ratio_s,
        ]
    });
    Ok(build_report(
        params,
        checkpoints,
        incr,
        capped.into_inner(),
        underflowed.into_inner(),
    ))
}

/// One checkpoint of the Hölder factorization of the square-part series.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HolderCheckpoint {
    pub q: u64,
    /// (Σ (r^{1+ε}·q^{−2s/(s+1)})^{s+1})^{1/(s+1)}
    pub factor_square: f64,
    /// (Σ ψ^{s+1}·q^{1−s})^{s/(s+1)}
    pub factor_main: f64,
    pub product: f64,
    /// Direct partial sum Σ r^{1+ε}(ψ/q)^s the product must dominate.
    pub direct: f64,
}

/// The Hölder split of the square-part series plus the exponent bookkeeping
/// that makes the first factor converge.
#[derive(Debug, Clone, Serialize)]
pub struct HolderReport {
    pub s: f64,
    pub epsilon: f64,
    pub q_max: u64,
    pub checkpoints: Vec<HolderCheckpoint>,
    /// (1+ε)(s+1) − 4s; must be < −3/2.
    pub exponent_r: f64,
    /// 2s; must be > 22/13.
    pub exponent_t: f64,
    pub conditions_hold: bool,
    /// Σ_{r≤Q} r^{(1+ε)(s+1)−4s} · Σ_{t≤Q} t^{−2s}, the comparison value
    /// dominating Σ (r^{1+ε}q^{−2s/(s+1)})^{s+1}.
    pub comparison: f64,
}

impl HolderReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Verify the Hölder step: the product of the two factors dominates the
/// direct square-part series at every dyadic checkpoint. Requires the
/// Hausdorff range s ∈ (11/13, 1].
pub fn holder_split(psi: &PsiFunction, params: &SeriesParams) -> Result<HolderReport> {
    let s = params.s;
    if !(s > 11.0 / 13.0 && s <= 1.0) {
        return Err(Error::SOutOfRange {
            s,
            lo: 11.0 / 13.0,
            hi: 1.0,
        });
    }
    let eps = params.epsilon;
    let rtab = square_part_table(params.q_max);
    let (checkpoints, _) = accumulate(params.q_max, |q| {
        let p = psi.eval(q);
        let qf = q as f64;
        let r = rtab[q as usize] as f64;
        let u = r.powf(1.0 + eps) * qf.powf(-2.0 * s / (s + 1.0));
        let main = if p > 0.0 {
            p.powf(s + 1.0) * qf.powf(1.0 - s)
        } else {
            0.0
        };
        let direct = if p > 0.0 {
            r.powf(1.0 + eps) * (p / qf).powf(s)
        } else {
            0.0
        };
        [u.powf(s + 1.0), main, direct, 0.0]
    });
    let rows: Vec<HolderCheckpoint> = checkpoints
        .iter()
        .map(|&(q, _, t)| {
            let f1 = t[0].powf(1.0 / (s + 1.0));
            let f2 = t[1].powf(s / (s + 1.0));
            HolderCheckpoint {
                q,
                factor_square: f1,
                factor_main: f2,
                product: f1 * f2,
                direct: t[2],
            }
        })
        .collect();
    let exponent_r = (1.0 + eps) * (s + 1.0) - 4.0 * s;
    let exponent_t = 2.0 * s;
    let mut sum_r = 0.0;
    let mut sum_t = 0.0;
    for k in 1..=params.q_max {
        let kf = k as f64;
        sum_r += kf.powf(exponent_r);
        sum_t += kf.powf(-exponent_t);
    }
    Ok(HolderReport {
        s,
        epsilon: eps,
        q_max: params.q_max,
        checkpoints: rows,
        exponent_r,
        exponent_t,
        conditions_hold: exponent_r < -1.5 && exponent_t > 22.0 / 13.0,
        comparison: sum_r * sum_t,
    })
}

/// Partial sums of the dual-approximation condition Σ ψ(q)^s·q^{2−s},
/// reported in the S1 column.
pub fn dual_series(psi: &PsiFunction, params: &SeriesParams) -> Result<SeriesReport> {
    let s = params.s;
    let (checkpoints, incr) = accumulate(params.q_max, |q| {
        let p = psi.eval(q);
        if p <= 0.0 {
            return [0.0; 4];
        }
        let qf = q as f64;
        [p.powf(s) * qf.powf(2.0 - s), 0.0, 0.0, 0.0]
    });
    Ok(build_report(params, checkpoints, incr, 0, 0))
}
