//! Exact integer arithmetic: factorization, Jacobi symbols, multiplicative
//! functions, and square roots modulo prime powers and arbitrary moduli.
//!
//! Everything here is a pure function of its inputs. Products are widened to
//! 128 bits before reduction, so no intermediate can overflow for moduli
//! below 2^63.

use crate::{Error, Result};

/// Multiply two residues modulo `m` without overflow.
#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Modular exponentiation by squaring.
pub fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Inverse of `a` modulo `m` for gcd(a, m) = 1.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (a as i128 % m as i128, m as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// Integer square root: the largest `r` with `r*r <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r > 0 && r.checked_mul(r).map_or(true, |rr| rr > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |rr| rr <= n) {
        r += 1;
    }
    r
}

/// Deterministic Miller–Rabin. The witness set is exact for all n < 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of an odd
/// composite `n`.
fn pollard_brent(n: u64) -> u64 {
    debug_assert!(n > 3 && n & 1 == 1 && !is_prime(n));
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = y;
        'outer: while d == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && d == 1 {
                ys = y;
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                d = gcd(q, n);
                k += batch;
            }
            r *= 2;
            if r > 1 << 40 {
                break 'outer;
            }
        }
        if d == n || d == 1 {
            // Backtrack one step at a time from the last checkpoint.
            d = 1;
            while d == 1 {
                ys = f(ys);
                d = gcd(x.abs_diff(ys), n);
                if ys == x {
                    break;
                }
            }
        }
        if d != 1 && d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// A positive integer with its full prime factorization and the arithmetic
/// functions derived from it. Exponents are at least 1 and primes are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    /// Complete factorization of `n`, 1 <= n < 2^63. Small primes by trial
    /// division, Miller–Rabin plus Pollard–Brent rho for the rest.
    pub fn factorize(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Zero);
        }
        if n >= 1 << 63 {
            return Err(Error::TooLarge(n));
        }
        let mut rest = n;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            if p * p > rest {
                break;
            }
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        }
        if rest > 1 {
            if is_prime(rest) {
                factors.push((rest, 1));
            } else {
                let mut primes = Vec::new();
                factor_into(rest, &mut primes);
                primes.sort_unstable();
                let mut i = 0;
                while i < primes.len() {
                    let p = primes[i];
                    let mut e = 0u32;
                    while i < primes.len() && primes[i] == p {
                        e += 1;
                        i += 1;
                    }
                    factors.push((p, e));
                }
            }
        }
        factors.sort_unstable_by_key(|&(p, _)| p);
        debug_assert_eq!(
            factors
                .iter()
                .map(|&(p, e)| (p as u128).pow(e))
                .product::<u128>(),
            n as u128
        );
        Ok(FactoredInteger { n, factors })
    }

    /// Rebuild from known factors. Used by the sieve path; validated in debug.
    fn from_parts(n: u64, factors: Vec<(u64, u32)>) -> Self {
        debug_assert_eq!(
            factors
                .iter()
                .map(|&(p, e)| (p as u128).pow(e))
                .product::<u128>(),
            n as u128
        );
        FactoredInteger { n, factors }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The largest r with r² | n, i.e. the product of p^⌊e/2⌋.
    pub fn square_part(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e / 2))
            .product()
    }

    pub fn is_perfect_square(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e % 2 == 0)
    }

    /// Sum of divisors σ(n) = Π (p^{e+1} − 1)/(p − 1). Widened to u128 since
    /// σ(n) can exceed 2^64 for n close to 2^63.
    pub fn sigma(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| {
                let mut s = 1u128;
                let mut pw = 1u128;
                for _ in 0..e {
                    pw *= p as u128;
                    s += pw;
                }
                s
            })
            .product()
    }

    /// d(n), the number of divisors.
    pub fn num_divisors(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    /// Möbius function: 0 on square factors, else (−1)^{#primes}.
    pub fn mobius(&self) -> i8 {
        if self.factors.iter().any(|&(_, e)| e > 1) {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All divisors, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let base = out.clone();
            let mut pw = 1u64;
            for _ in 0..e {
                pw *= p;
                out.extend(base.iter().map(|&d| d * pw));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Jacobi symbol (a | n) for odd n >= 1, by binary reciprocity; no
/// factorization of `n` is needed. Fully multiplicative in `a` and depends
/// only on `a mod n`.
pub fn jacobi(a: i64, n: u64) -> Result<i64> {
    if n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let mut num = (a.rem_euclid(n as i64)) as u64;
    let mut den = n;
    let mut sign = 1i64;
    while num != 0 {
        while num % 2 == 0 {
            num /= 2;
            // (2|den) = −1 exactly when den ≡ 3, 5 (mod 8)
            if matches!(den % 8, 3 | 5) {
                sign = -sign;
            }
        }
        // reciprocity: both ≡ 3 (mod 4) flips the sign
        if num % 4 == 3 && den % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut num, &mut den);
        num %= den;
    }
    if den == 1 {
        Ok(sign)
    } else {
        Ok(0)
    }
}

/// Tonelli–Shanks: one square root of `m` modulo an odd prime `p`, or None
/// when `m` is a non-residue. `m` must be a unit mod p.
fn tonelli_shanks(m: u64, p: u64) -> Option<u64> {
    debug_assert!(p % 2 == 1 && m % p != 0);
    let m = m % p;
    if powmod(m, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(m, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q & 1 == 0 {
        q >>= 1;
        s += 1;
    }
    let z = (2..p).find(|&z| powmod(z, (p - 1) / 2, p) == p - 1)?;
    let mut c = powmod(z, q, p);
    let mut t = powmod(m, q, p);
    let mut r = powmod(m, q.div_ceil(2), p);
    let mut e = s;
    while t != 1 {
        let mut t2 = t;
        let mut i = 0u32;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
            if i == e {
                return None;
            }
        }
        let b = powmod(c, 1 << (e - i - 1), p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
        e = i;
    }
    debug_assert_eq!(mulmod(r, r, p), m);
    Some(r)
}

/// Roots of x² ≡ m (mod p^e) for odd p and m a unit mod p, by Hensel lifting
/// the Tonelli–Shanks root. Returns 0 or 2 roots.
fn unit_sqrt_odd(m: u64, p: u64, e: u32) -> Vec<u64> {
    let pe = p.pow(e);
    let Some(mut x) = tonelli_shanks(m % p, p) else {
        return Vec::new();
    };
    let mut pk = p;
    for _ in 1..e {
        let pk1 = pk * p;
        // Newton step: x ← x − (x² − m) / (2x)  (mod p^{k+1})
        let fx = (x as u128 * x as u128 + (pk1 - m % pk1) as u128) % pk1 as u128;
        let inv = inv_mod(2 * x % pk1 % p, p).expect("2x is a unit mod p");
        let t = (fx / pk as u128 % p as u128) as u64;
        let corr = mulmod(t, (p - inv % p) % p, p);
        x = (x as u128 + corr as u128 * pk as u128) as u64 % pk1;
        pk = pk1;
    }
    debug_assert_eq!(mulmod(x, x, pe), m % pe);
    let mut roots = vec![x, pe - x];
    roots.sort_unstable();
    roots.dedup();
    roots
}

/// Roots of x² ≡ m (mod 2^e) for odd m, by doubling the modulus and keeping
/// the candidates that survive. Hensel's lemma degenerates at 2, so the
/// lifting is explicit: mod 2 one root, mod 4 two when m ≡ 1, mod 8 four when
/// m ≡ 1, and each further doubling preserves the count.
fn unit_sqrt_two(m: u64, e: u32) -> Vec<u64> {
    debug_assert!(m % 2 == 1);
    if e == 1 {
        return vec![1];
    }
    if m % 4 != 1 {
        return Vec::new();
    }
    if e == 2 {
        return vec![1, 3];
    }
    if m % 8 != 1 {
        return Vec::new();
    }
    let mut roots: Vec<u64> = vec![1, 3, 5, 7];
    let mut k = 3u32;
    while k < e {
        let next = 1u64 << (k + 1);
        let mm = m % next;
        let mut lifted: Vec<u64> = Vec::with_capacity(4);
        for &r in &roots {
            for cand in [r, r + (1 << k)] {
                if mulmod(cand, cand, next) == mm {
                    lifted.push(cand);
                }
            }
        }
        lifted.sort_unstable();
        lifted.dedup();
        roots = lifted;
        k += 1;
    }
    roots
}

/// All roots of x² ≡ m (mod p^e), 0 <= m < p^e, sorted ascending. Handles
/// non-unit m by stripping the even power of p and re-attaching every lift.
fn prime_power_sqrt(m: u64, p: u64, e: u32) -> Vec<u64> {
    let pe = p.pow(e);
    debug_assert!(m < pe);
    if m == 0 {
        // x ≡ 0 (mod p^⌈e/2⌉)
        let step = p.pow(e.div_ceil(2));
        return (0..pe).step_by(step as usize).collect();
    }
    let mut f = 0u32;
    let mut m1 = m;
    while m1 % p == 0 {
        m1 /= p;
        f += 1;
    }
    if f % 2 == 1 {
        return Vec::new();
    }
    let e1 = e - f;
    let unit_roots = if p == 2 {
        unit_sqrt_two(m1, e1)
    } else {
        unit_sqrt_odd(m1 % p.pow(e1), p, e1)
    };
    if unit_roots.is_empty() {
        return Vec::new();
    }
    // x = p^{f/2}·z + j·p^{e−f/2} for each root z mod p^{e−f}
    let half = p.pow(f / 2);
    let stride = p.pow(e - f / 2);
    let mut out = Vec::with_capacity(unit_roots.len() * half as usize);
    for &z in &unit_roots {
        let base = half * z;
        let mut x = base;
        for _ in 0..half {
            out.push(x % pe);
            x += stride;
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// All x in [0, pk) with x² ≡ m (mod pk), for a prime power pk. The list is
/// empty when no root exists.
pub fn mod_sqrt(m: u64, pk: u64) -> Result<Vec<u64>> {
    if pk == 0 {
        return Err(Error::Zero);
    }
    if pk == 1 {
        return Ok(vec![0]);
    }
    let f = FactoredInteger::factorize(pk)?;
    if f.factors().len() != 1 {
        return Err(Error::NotPrimePower(pk));
    }
    let (p, e) = f.factors()[0];
    Ok(prime_power_sqrt(m % pk, p, e))
}

/// All x in [0, q) with x² ≡ m (mod q), via roots modulo each prime power
/// combined by the Chinese remainder theorem. Sorted ascending.
pub fn sqrt_mod(m: u64, q: &FactoredInteger) -> Vec<u64> {
    let n = q.n();
    if n == 1 {
        return vec![0];
    }
    let m = m % n;
    let mut acc: Vec<u64> = vec![0];
    let mut modulus = 1u64;
    for &(p, e) in q.factors() {
        let pe = p.pow(e);
        let local = prime_power_sqrt(m % pe, p, e);
        if local.is_empty() {
            return Vec::new();
        }
        let inv = inv_mod(modulus % pe, pe).expect("moduli are coprime");
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for &x in &acc {
            for &r in &local {
                // x + modulus·t ≡ r (mod pe)
                let t = mulmod((pe + r % pe - x % pe) % pe, inv, pe);
                next.push(x + modulus * t);
            }
        }
        modulus *= pe;
        acc = next;
    }
    acc.sort_unstable();
    acc
}

/// Smallest-prime-factor sieve for fast factorization over a scan range.
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    /// Sieve limit is capped at 10^8 to bound memory to a few hundred MB.
    pub fn new(limit: u64) -> Result<Self> {
        const CAP: u64 = 100_000_000;
        if limit > CAP {
            return Err(Error::RangeTooLarge {
                lo: 1,
                hi: limit,
                cap: CAP,
            });
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut i = 2usize;
        while i * i <= n {
            if spf[i] == 0 {
                let mut j = i * i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        Ok(SpfSieve { spf })
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn factorize(&self, n: u64) -> FactoredInteger {
        assert!(n >= 1 && n < self.spf.len() as u64);
        let mut rest = n;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while rest > 1 {
            let p = match self.spf[rest as usize] {
                0 => rest,
                p => p as u64,
            };
            let mut e = 0u32;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        factors.sort_unstable_by_key(|&(p, _)| p);
        FactoredInteger::from_parts(n, factors)
    }
}
