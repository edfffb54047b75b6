//! Exact evaluation of the quadratic Gauss sums
//!
//! ```text
//! G(j, q) = Σ_{a=1}^{q} e(j a² / q),    e(x) = exp(2πi x).
//! ```
//!
//! With d = gcd(j, q), q₁ = q/d, j₁ = j/d the sum reduces to d·G(j₁, q₁), and
//! G at coprime arguments has a closed form: zero when q₁ ≡ 2 (mod 4),
//! ε_{q₁}·(j₁|q₁)·√q₁ for odd q₁, and (1+i)·ε_{j₁}^{−1}·(q₁|j₁)·√q₁ when
//! 4 | q₁ (forcing j₁ odd). Here ε_m is 1 for m ≡ 1 (mod 4) and i for
//! m ≡ 3 (mod 4), and (·|·) is the Jacobi symbol.
//!
//! The value is kept symbolic as scale · unit · √radicand, so magnitudes and
//! comparisons stay exact; [`gauss_sum_direct`] is the floating-point
//! summation oracle.

use crate::arith::{gcd, jacobi, mulmod};
use crate::{Error, Result};
use num_complex::Complex64;

/// A Gaussian integer of norm 0, 1, or 2: exactly the unit factors that can
/// appear in the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussianUnit {
    Zero,
    One,
    I,
    MinusOne,
    MinusI,
    OnePlusI,
    OneMinusI,
    MinusOnePlusI,
    MinusOneMinusI,
}

impl GaussianUnit {
    pub fn re(self) -> i8 {
        use GaussianUnit::*;
        match self {
            Zero | I | MinusI => 0,
            One | OnePlusI | OneMinusI => 1,
            MinusOne | MinusOnePlusI | MinusOneMinusI => -1,
        }
    }

    pub fn im(self) -> i8 {
        use GaussianUnit::*;
        match self {
            Zero | One | MinusOne => 0,
            I | OnePlusI | MinusOnePlusI => 1,
            MinusI | OneMinusI | MinusOneMinusI => -1,
        }
    }

    /// Squared modulus: 0, 1, or 2.
    pub fn norm(self) -> u8 {
        (self.re() * self.re() + self.im() * self.im()) as u8
    }

    pub fn is_zero(self) -> bool {
        self == GaussianUnit::Zero
    }

    fn from_re_im(re: i8, im: i8) -> Self {
        use GaussianUnit::*;
        match (re, im) {
            (0, 0) => Zero,
            (1, 0) => One,
            (0, 1) => I,
            (-1, 0) => MinusOne,
            (0, -1) => MinusI,
            (1, 1) => OnePlusI,
            (1, -1) => OneMinusI,
            (-1, 1) => MinusOnePlusI,
            (-1, -1) => MinusOneMinusI,
            _ => unreachable!("components out of range"),
        }
    }

    /// Multiply by +1 or −1.
    pub fn mul_sign(self, sign: i64) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        if sign == 1 {
            self
        } else {
            Self::from_re_im(-self.re(), -self.im())
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re() as f64, self.im() as f64)
    }
}

impl std::fmt::Display for GaussianUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use GaussianUnit::*;
        let s = match self {
            Zero => "0",
            One => "1",
            I => "i",
            MinusOne => "-1",
            MinusI => "-i",
            OnePlusI => "1+i",
            OneMinusI => "1-i",
            MinusOnePlusI => "-1+i",
            MinusOneMinusI => "-1-i",
        };
        f.write_str(s)
    }
}

/// ε_m for odd m: 1 when m ≡ 1 (mod 4), i when m ≡ 3 (mod 4).
pub fn epsilon(m: u64) -> Result<GaussianUnit> {
    if m % 2 == 0 {
        return Err(Error::EvenArgument(m));
    }
    Ok(if m % 4 == 1 {
        GaussianUnit::One
    } else {
        GaussianUnit::I
    })
}

/// ε_m^{−1} for odd m: 1 when m ≡ 1 (mod 4), −i when m ≡ 3 (mod 4).
pub fn epsilon_inv(m: u64) -> Result<GaussianUnit> {
    if m % 2 == 0 {
        return Err(Error::EvenArgument(m));
    }
    Ok(if m % 4 == 1 {
        GaussianUnit::One
    } else {
        GaussianUnit::MinusI
    })
}

/// The exact value of G(j, q) as scale · unit · √radicand.
///
/// `unit` is `Zero` exactly when the sum vanishes (and then the radicand is
/// stored as 0); otherwise |G|² = scale² · radicand · norm(unit) is an exact
/// integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ExactGaussSum {
    scale: u64,
    radicand: u64,
    unit: GaussianUnit,
}

impl ExactGaussSum {
    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn unit(&self) -> GaussianUnit {
        self.unit
    }

    /// |G|² as an exact integer.
    pub fn abs_squared(&self) -> u128 {
        self.scale as u128 * self.scale as u128 * self.radicand as u128 * self.unit.norm() as u128
    }

    /// Render to floating point for comparison against the direct oracle.
    pub fn to_complex(&self) -> Complex64 {
        self.unit.to_complex() * (self.scale as f64) * (self.radicand as f64).sqrt()
    }

    /// Real part, exact up to one square root.
    pub fn re(&self) -> f64 {
        self.unit.re() as f64 * self.scale as f64 * (self.radicand as f64).sqrt()
    }

    /// Human-readable value: a Gaussian integer like `2+2i` when the radicand
    /// is a perfect square, otherwise a `scale*unit*sqrt(radicand)` product.
    pub fn value_string(&self) -> String {
        if self.unit.is_zero() {
            return "0".to_string();
        }
        let k = crate::arith::isqrt(self.radicand);
        if k * k == self.radicand {
            let s = (self.scale * k) as i128;
            return format_gaussian_int(s * self.unit.re() as i128, s * self.unit.im() as i128);
        }
        let unit_part = match self.unit {
            GaussianUnit::One => String::new(),
            GaussianUnit::MinusOne => "-".to_string(),
            GaussianUnit::I => "i*".to_string(),
            GaussianUnit::MinusI => "-i*".to_string(),
            u => format!("({u})*"),
        };
        if self.scale == 1 {
            format!("{unit_part}sqrt({})", self.radicand)
        } else {
            format!("{}*{unit_part}sqrt({})", self.scale, self.radicand)
        }
    }

    /// Full description used by the command-line front end, e.g.
    /// `2+2i (scale=1, unit=1+i, radicand=4)`.
    pub fn describe(&self) -> String {
        format!(
            "{} (scale={}, unit={}, radicand={})",
            self.value_string(),
            self.scale,
            self.unit,
            self.radicand
        )
    }
}

fn format_gaussian_int(re: i128, im: i128) -> String {
    match (re, im) {
        (0, 0) => "0".to_string(),
        (r, 0) => format!("{r}"),
        (0, 1) => "i".to_string(),
        (0, -1) => "-i".to_string(),
        (0, i) => format!("{i}i"),
        (r, 1) => format!("{r}+i"),
        (r, -1) => format!("{r}-i"),
        (r, i) if i > 0 => format!("{r}+{i}i"),
        (r, i) => format!("{r}{i}i"),
    }
}

impl std::fmt::Display for ExactGaussSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.value_string())
    }
}

/// Closed-form evaluation of G(j, q) for j, q >= 1.
///
/// After the gcd reduction the three cases apply; the third requires j₁ odd,
/// which is automatic since gcd(j₁, q₁) = 1 and 4 | q₁ — asserted at runtime
/// rather than assumed.
pub fn gauss_sum_exact(j: u64, q: u64) -> Result<ExactGaussSum> {
    if j == 0 || q == 0 {
        return Err(Error::Zero);
    }
    let d = gcd(j, q);
    let q1 = q / d;
    let j1 = j / d;
    if q1 % 4 == 2 {
        return Ok(ExactGaussSum {
            scale: d,
            radicand: 0,
            unit: GaussianUnit::Zero,
        });
    }
    if q1 % 2 == 1 {
        let sign = jacobi(j1 as i64, q1)?;
        assert!(sign != 0, "j1 and q1 are coprime");
        let unit = epsilon(q1)?.mul_sign(sign);
        return Ok(ExactGaussSum {
            scale: d,
            radicand: q1,
            unit,
        });
    }
    // 4 | q1
    assert!(j1 % 2 == 1, "gcd(j1, q1) = 1 with 4 | q1 forces j1 odd");
    let base = if j1 % 4 == 1 {
        GaussianUnit::OnePlusI
    } else {
        // (1+i)·ε_{j₁}^{−1} = (1+i)(−i) = 1−i
        GaussianUnit::OneMinusI
    };
    let sign = jacobi((q1 % j1) as i64, j1)?;
    assert!(sign != 0, "q1 and j1 are coprime");
    Ok(ExactGaussSum {
        scale: d,
        radicand: q1,
        unit: base.mul_sign(sign),
    })
}

/// Direct floating-point summation of G(j, q). The residue j·a² mod q is
/// computed exactly in integers first, then a single trigonometric call per
/// term, so the phase carries no accumulation error even near q = 10^7.
pub fn gauss_sum_direct(j: u64, q: u64) -> Complex64 {
    assert!(q >= 1, "q must be positive");
    let jm = j % q;
    let mut acc = Complex64::new(0.0, 0.0);
    let scale = 2.0 * std::f64::consts::PI / q as f64;
    for a in 1..=q {
        let r = mulmod(jm, mulmod(a, a, q), q);
        let (s, c) = (scale * r as f64).sin_cos();
        acc += Complex64::new(c, s);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(1).unwrap(), GaussianUnit::One);
        assert_eq!(epsilon(7).unwrap(), GaussianUnit::I);
        assert_eq!(epsilon(5).unwrap(), GaussianUnit::One);
        assert_eq!(epsilon(2), Err(Error::EvenArgument(2)));
    }

    #[test]
    fn exact_examples() {
        let g = gauss_sum_exact(1, 2).unwrap();
        assert!(g.unit().is_zero());
        assert_eq!(g.radicand(), 0);

        let g = gauss_sum_exact(1, 1).unwrap();
        assert_eq!((g.scale(), g.radicand(), g.unit()), (1, 1, GaussianUnit::One));

        let g = gauss_sum_exact(1, 3).unwrap();
        assert_eq!((g.scale(), g.radicand(), g.unit()), (1, 3, GaussianUnit::I));

        let g = gauss_sum_exact(1, 4).unwrap();
        assert_eq!(
            (g.scale(), g.radicand(), g.unit()),
            (1, 4, GaussianUnit::OnePlusI)
        );
        assert!(close(g.to_complex(), Complex64::new(2.0, 2.0), 1e-12));
        assert_eq!(g.describe(), "2+2i (scale=1, unit=1+i, radicand=4)");

        let g = gauss_sum_exact(3, 4).unwrap();
        assert!(close(g.to_complex(), Complex64::new(2.0, -2.0), 1e-12));

        assert_eq!(gauss_sum_exact(0, 4), Err(Error::Zero));
        assert_eq!(gauss_sum_exact(4, 0), Err(Error::Zero));
    }

    #[test]
    fn direct_examples() {
        assert!(close(gauss_sum_direct(1, 2), Complex64::new(0.0, 0.0), 1e-9));
        assert!(close(
            gauss_sum_direct(1, 5),
            Complex64::new(5f64.sqrt(), 0.0),
            1e-9
        ));
        assert!(close(gauss_sum_direct(0, 7), Complex64::new(7.0, 0.0), 1e-9));
    }

    #[test]
    fn exact_matches_direct_small() {
        for q in 1u64..=60 {
            for j in 1u64..=12 {
                let exact = gauss_sum_exact(j, q).unwrap().to_complex();
                let direct = gauss_sum_direct(j, q);
                assert!(
                    close(exact, direct, 1e-6 * (q as f64).sqrt().max(1.0)),
                    "G({j},{q}): exact={exact} direct={direct}"
                );
            }
        }
    }

    #[test]
    fn magnitude_law_exact() {
        for q in 1u64..=300 {
            for j in 1u64..=20 {
                let d = gcd(j, q);
                let q1 = q / d;
                let g = gauss_sum_exact(j, q).unwrap();
                let expected = if q1 % 4 == 2 {
                    0
                } else if q1 % 2 == 1 {
                    d as u128 * d as u128 * q1 as u128
                } else {
                    d as u128 * d as u128 * 2 * q1 as u128
                };
                assert_eq!(g.abs_squared(), expected, "G({j},{q})");
            }
        }
    }

    #[test]
    fn direct_periodicity() {
        for q in 1u64..=40 {
            for j in 1u64..=10 {
                let a = gauss_sum_direct(j, q);
                let b = gauss_sum_direct(j + q, q);
                assert!(close(a, b, 1e-12));
            }
        }
    }

    #[test]
    fn epsilon_inverse_identity() {
        // ε_m^{−1} = (1−i)/2·χ₀(m) + (1+i)/2·χ₁(m) for odd m,
        // with χ₀, χ₁ the principal and quadratic characters mod 4.
        for m in (1u64..=99).step_by(2) {
            let chi0 = 1.0;
            let chi1 = if m % 4 == 1 { 1.0 } else { -1.0 };
            let rhs = Complex64::new(0.5, -0.5) * chi0 + Complex64::new(0.5, 0.5) * chi1;
            let lhs = epsilon_inv(m).unwrap().to_complex();
            assert!(close(lhs, rhs, 1e-15), "m={m}");
            // and it really is the inverse of ε_m
            let prod = epsilon(m).unwrap().to_complex() * lhs;
            assert!(close(prod, Complex64::new(1.0, 0.0), 1e-15));
        }
    }

    #[test]
    fn value_strings() {
        assert_eq!(gauss_sum_exact(1, 3).unwrap().value_string(), "i*sqrt(3)");
        assert_eq!(gauss_sum_exact(1, 5).unwrap().value_string(), "sqrt(5)");
        assert_eq!(gauss_sum_exact(1, 2).unwrap().value_string(), "0");
        assert_eq!(gauss_sum_exact(2, 6).unwrap().value_string(), "2*i*sqrt(3)");
        assert_eq!(gauss_sum_exact(1, 8).unwrap().value_string(), "(1+i)*sqrt(8)");
    }
}
