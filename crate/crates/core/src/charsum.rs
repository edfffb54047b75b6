//! Real Dirichlet characters and short character sums.
//!
//! The characters built here are the ones the Gauss-sum cancellation argument
//! needs: (·|q₁) for odd q₁, and χ·(q₁|·) for even q₁ where χ is the
//! principal or quadratic character mod 4. In every case the result is a
//! non-principal real character of modulus at most 4q₁, so the short sum
//! Σ_{M<n≤M+N} χ(n) can be measured against the N^{1/2}·Q^{3/16} shape with
//! Q an upper bound for the modulus.
//!
//! (q₁|n) at even n is defined by complete multiplicativity from its value at
//! 2: (q₁|2) = 0 for even q₁, +1 for q₁ ≡ ±1 (mod 8) and −1 for
//! q₁ ≡ ±3 (mod 8). This is the standard supplement; it keeps n ↦ (q₁|n)
//! periodic with period dividing 4q₁.

use crate::arith::{jacobi, FactoredInteger};
use crate::report::fmt_real;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Default exponent in the ratio denominator N^{1/2}·Q^{3/16}.
pub const BURGESS_EXPONENT: f64 = 3.0 / 16.0;

/// Which character mod 4 multiplies (q₁|·) when q₁ is even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mod4Twist {
    Principal,
    Quadratic,
}

impl std::fmt::Display for Mod4Twist {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mod4Twist::Principal => f.write_str("principal"),
            Mod4Twist::Quadratic => f.write_str("quadratic"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CharacterKind {
    /// n ↦ (n|q₁), q₁ odd.
    JacobiTop { q1: u64 },
    /// n ↦ (q₁|n), extended to even n via the value at 2.
    JacobiBottom { q1: u64 },
    /// Principal character mod 4.
    Mod4Principal,
    /// Quadratic character mod 4.
    Mod4Quadratic,
    /// twist(n)·(q₁|n).
    TwistedBottom { twist: Mod4Twist, q1: u64 },
}

/// A completely multiplicative function with values in {−1, 0, 1}, together
/// with an upper bound for the modulus of the character it induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealCharacter {
    kind: CharacterKind,
    modulus_bound: u64,
}

fn mod4_value(twist: Mod4Twist, n: u64) -> i64 {
    if n % 2 == 0 {
        return 0;
    }
    match twist {
        Mod4Twist::Principal => 1,
        Mod4Twist::Quadratic => {
            if n % 4 == 1 {
                1
            } else {
                -1
            }
        }
    }
}

/// (q₁|2) by the standard supplement; 0 for even q₁.
fn bottom_at_two(q1: u64) -> i64 {
    if q1 % 2 == 0 {
        0
    } else if matches!(q1 % 8, 1 | 7) {
        1
    } else {
        -1
    }
}

fn bottom_value(q1: u64, n: u64) -> i64 {
    debug_assert!(n >= 1);
    let two = n.trailing_zeros();
    let odd = n >> two;
    let mut v = jacobi((q1 % odd) as i64, odd).expect("odd part is odd");
    if two > 0 {
        let at2 = bottom_at_two(q1);
        if at2 == 0 {
            return 0;
        }
        if two % 2 == 1 && at2 == -1 {
            v = -v;
        }
    }
    v
}

impl RealCharacter {
    /// n ↦ (n|q₁) for odd q₁; a character modulo q₁.
    pub fn jacobi_top(q1: u64) -> Result<Self> {
        if q1 % 2 == 0 {
            return Err(Error::EvenModulus(q1));
        }
        Ok(RealCharacter {
            kind: CharacterKind::JacobiTop { q1 },
            modulus_bound: q1,
        })
    }

    /// n ↦ (q₁|n); induces a character of conductor dividing 4q₁.
    pub fn jacobi_bottom(q1: u64) -> Result<Self> {
        if q1 == 0 {
            return Err(Error::Zero);
        }
        Ok(RealCharacter {
            kind: CharacterKind::JacobiBottom { q1 },
            modulus_bound: 4 * q1,
        })
    }

    pub fn mod4_principal() -> Self {
        RealCharacter {
            kind: CharacterKind::Mod4Principal,
            modulus_bound: 4,
        }
    }

    pub fn mod4_quadratic() -> Self {
        RealCharacter {
            kind: CharacterKind::Mod4Quadratic,
            modulus_bound: 4,
        }
    }

    /// n ↦ twist(n)·(q₁|n) for even q₁.
    pub fn twisted_bottom(twist: Mod4Twist, q1: u64) -> Result<Self> {
        if q1 == 0 {
            return Err(Error::Zero);
        }
        Ok(RealCharacter {
            kind: CharacterKind::TwistedBottom { twist, q1 },
            modulus_bound: 4 * q1,
        })
    }

    /// Evaluate at n >= 1.
    pub fn eval(&self, n: u64) -> i64 {
        debug_assert!(n >= 1);
        match self.kind {
            CharacterKind::JacobiTop { q1 } => {
                jacobi((n % q1) as i64, q1).expect("q1 is odd")
            }
            CharacterKind::JacobiBottom { q1 } => bottom_value(q1, n),
            CharacterKind::Mod4Principal => mod4_value(Mod4Twist::Principal, n),
            CharacterKind::Mod4Quadratic => mod4_value(Mod4Twist::Quadratic, n),
            CharacterKind::TwistedBottom { twist, q1 } => {
                if n % 2 == 0 {
                    0
                } else {
                    mod4_value(twist, n) * bottom_value(q1, n)
                }
            }
        }
    }

    /// Upper bound for the modulus of the induced character (at most 4q₁).
    pub fn modulus_bound(&self) -> u64 {
        self.modulus_bound
    }

    /// Short label for reports.
    pub fn label(&self) -> String {
        match self.kind {
            CharacterKind::JacobiTop { q1 } => format!("(n|{q1})"),
            CharacterKind::JacobiBottom { q1 } => format!("({q1}|n)"),
            CharacterKind::Mod4Principal => "chi0 mod 4".to_string(),
            CharacterKind::Mod4Quadratic => "chi1 mod 4".to_string(),
            CharacterKind::TwistedBottom { twist, q1 } => format!("{twist}*({q1}|n)"),
        }
    }
}

/// The non-principal character used to detect cancellation for a given q₁:
/// (·|q₁) when q₁ is odd (no twist allowed), twist·(q₁|·) when q₁ is even
/// (twist required). Perfect-square q₁ is rejected since the resulting
/// character could be principal.
pub fn character_for(q1: &FactoredInteger, twist: Option<Mod4Twist>) -> Result<RealCharacter> {
    if q1.is_perfect_square() {
        return Err(Error::SquareModulus(q1.n()));
    }
    let n = q1.n();
    if n % 2 == 1 {
        if twist.is_some() {
            return Err(Error::TwistWithOddModulus(n));
        }
        // modulus is exactly q1 here; the 4q1 bound is only needed for the
        // even case, so keep the tight value.
        RealCharacter::jacobi_top(n)
    } else {
        let Some(twist) = twist else {
            return Err(Error::MissingTwist(n));
        };
        RealCharacter::twisted_bottom(twist, n)
    }
}

/// Exact value of Σ_{M < n ≤ M+N} χ(n).
pub fn char_sum(chi: &RealCharacter, m_start: u64, n_len: u64) -> i64 {
    let mut acc = 0i64;
    for n in m_start + 1..=m_start + n_len {
        acc += chi.eval(n);
    }
    acc
}

/// |S| / (N^{1/2} · Q^{exponent}) with Q = modulus_bound(χ).
pub fn burgess_ratio_with(chi: &RealCharacter, m_start: u64, n_len: u64, exponent: f64) -> f64 {
    let s = char_sum(chi, m_start, n_len) as f64;
    s.abs() / ((n_len as f64).sqrt() * (chi.modulus_bound() as f64).powf(exponent))
}

/// The ratio at the canonical exponent 3/16.
pub fn burgess_ratio(chi: &RealCharacter, m_start: u64, n_len: u64) -> f64 {
    burgess_ratio_with(chi, m_start, n_len, BURGESS_EXPONENT)
}

/// One extremal window found by a scan.
#[derive(Debug, Clone, Serialize)]
pub struct BurgessRecord {
    pub q1: u64,
    /// None means the odd-q₁ character (·|q₁).
    pub twist: Option<Mod4Twist>,
    pub m_start: u64,
    pub n_len: u64,
    pub sum: i64,
    pub ratio: f64,
}

impl BurgessRecord {
    fn better(self, other: Self) -> Self {
        // Total order: larger ratio, then smaller q1, n_len, twist index.
        let key = |r: &BurgessRecord| {
            (
                -r.ratio,
                r.q1,
                r.n_len,
                match r.twist {
                    None => 0u8,
                    Some(Mod4Twist::Principal) => 1,
                    Some(Mod4Twist::Quadratic) => 2,
                },
            )
        };
        if key(&other) < key(&self) {
            other
        } else {
            self
        }
    }
}

/// Window rule for a scan: M = 0 and N running over 1..=cap·q₁.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WindowRule {
    pub n_cap_multiple: u64,
}

impl Default for WindowRule {
    fn default() -> Self {
        WindowRule { n_cap_multiple: 4 }
    }
}

/// Extremal Burgess ratios over a q₁ range.
///
/// The ratio here is normalized uniformly by (4q₁)^{exponent} for every
/// character, including the odd-q₁ ones whose modulus is exactly q₁: using
/// the upper bound only lowers the ratio, keeping the frozen empirical
/// constant conservative.
#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub q1_lo: u64,
    pub q1_hi: u64,
    pub window: WindowRule,
    pub exponent: f64,
    pub characters_scanned: u64,
    /// Per-dyadic-block maxima, ascending in q₁.
    pub blocks: Vec<BurgessRecord>,
    pub sup: Option<BurgessRecord>,
}

impl ScanReport {
    /// CSV rows are the per-block maxima; the sup is the best row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("# schema=1\nq1,M,N,sum,ratio\n");
        for r in &self.blocks {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.q1,
                r.m_start,
                r.n_len,
                r.sum,
                fmt_real(r.ratio)
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Characters scanned for one q₁: one for odd q₁, both twists for even q₁,
/// nothing for perfect squares.
fn q1_characters(q1: &FactoredInteger) -> Vec<(Option<Mod4Twist>, RealCharacter)> {
    if q1.is_perfect_square() || q1.n() < 2 {
        return Vec::new();
    }
    if q1.n() % 2 == 1 {
        vec![(None, character_for(q1, None).expect("odd non-square"))]
    } else {
        [Mod4Twist::Principal, Mod4Twist::Quadratic]
            .into_iter()
            .map(|t| {
                (
                    Some(t),
                    character_for(q1, Some(t)).expect("even non-square"),
                )
            })
            .collect()
    }
}

/// Best window for a single character by a prefix-sum sweep over N.
fn best_window(
    q1: u64,
    twist: Option<Mod4Twist>,
    chi: &RealCharacter,
    cap: u64,
    exponent: f64,
) -> BurgessRecord {
    let norm = (4 * q1) as f64;
    let qpow = norm.powf(exponent);
    let mut acc = 0i64;
    let mut best = BurgessRecord {
        q1,
        twist,
        m_start: 0,
        n_len: 1,
        sum: 0,
        ratio: -1.0,
    };
    for n in 1..=cap {
        acc += chi.eval(n);
        let ratio = (acc as f64).abs() / ((n as f64).sqrt() * qpow);
        if ratio > best.ratio {
            best = BurgessRecord {
                q1,
                twist,
                m_start: 0,
                n_len: n,
                sum: acc,
                ratio,
            };
        }
    }
    best
}

/// Scan q₁ over [lo, hi], windows M = 0, N ≤ cap·q₁, with the uniform
/// (4q₁)^{exponent} normalization. The workload cap keeps the total number of
/// character evaluations near 10^9.
pub fn burgess_scan(
    q1_lo: u64,
    q1_hi: u64,
    window: WindowRule,
    exponent: f64,
) -> Result<ScanReport> {
    if window.n_cap_multiple == 0 {
        return Err(Error::Zero);
    }
    if q1_hi >= q1_lo {
        let work = (q1_hi - q1_lo + 1) as u128
            * q1_hi as u128
            * window.n_cap_multiple as u128;
        if work > 2_000_000_000u128 {
            return Err(Error::RangeTooLarge {
                lo: q1_lo,
                hi: q1_hi,
                cap: 2_000_000_000,
            });
        }
    }
    let mut blocks: std::collections::BTreeMap<u32, BurgessRecord> = Default::default();
    let mut scanned = 0u64;
    if q1_hi >= q1_lo {
        let results: Vec<(u32, BurgessRecord)> = (q1_lo..=q1_hi)
            .into_par_iter()
            .flat_map_iter(|q1| {
                let f = FactoredInteger::factorize(q1).expect("q1 >= 1");
                let block = 63 - q1.leading_zeros();
                q1_characters(&f)
                    .into_iter()
                    .map(move |(twist, chi)| {
                        (
                            block,
                            best_window(q1, twist, &chi, window.n_cap_multiple * q1, exponent),
                        )
                    })
                    .collect::<Vec<_>>()
                    .into_iter()
            })
            .collect();
        for (block, rec) in results {
            scanned += 1;
            blocks
                .entry(block)
                .and_modify(|cur| *cur = cur.clone().better(rec.clone()))
                .or_insert(rec);
        }
    }
    let sup = blocks
        .values()
        .cloned()
        .reduce(|a, b| a.better(b));
    Ok(ScanReport {
        q1_lo,
        q1_hi,
        window,
        exponent,
        characters_scanned: scanned,
        blocks: blocks.into_values().collect(),
        sup,
    })
}
