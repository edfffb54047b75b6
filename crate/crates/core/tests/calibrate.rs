//! Regenerates the frozen regression constants asserted by the acceptance
//! suite. Run manually when the underlying definitions change:
//!
//! ```text
//! cargo test -p parabola-points --test calibrate -- --ignored --nocapture
//! ```

use parabola_points::charsum::{burgess_scan, WindowRule, BURGESS_EXPONENT};
use parabola_points::counting::{
    count_bruteforce, scan_count_bound, bound_terms, DeltaRule, RationalThreshold,
    DEFAULT_EPSILON, DEFAULT_EXPONENT,
};
use parabola_points::arith::FactoredInteger;
use parabola_points::series::{full_series, PsiFunction, SeriesParams};

#[test]
#[ignore = "calibration tool, not a check"]
fn regenerate_frozen_constants() {
    // --- counting: sup ratio over q <= 1e4 by brute force -----------------
    let rule = DeltaRule::Power { tau: 0.75 };
    let mut sup = 0.0f64;
    let mut arg = 0u64;
    for q in 2u64..=10_000 {
        let (delta, _) = rule.apply(q, false).unwrap();
        let f = FactoredInteger::factorize(q).unwrap();
        let count = count_bruteforce(q, &delta) as f64;
        let ratio = count / bound_terms(&f, &delta, DEFAULT_EPSILON, DEFAULT_EXPONENT).sum();
        if ratio > sup {
            sup = ratio;
            arg = q;
        }
    }
    println!("count ratio sup over q<=1e4 (brute): {sup:.12} at q={arg}");

    let rep = scan_count_bound(2, 10_000, &rule, DEFAULT_EPSILON, DEFAULT_EXPONENT, false)
        .unwrap();
    let s = rep.sup.unwrap();
    println!(
        "count ratio sup over q<=1e4 (modular scan): {:.12} at q={}",
        s.ratio, s.q
    );

    let rep = scan_count_bound(2, 100_000, &rule, DEFAULT_EPSILON, DEFAULT_EXPONENT, false)
        .unwrap();
    let s = rep.sup.unwrap();
    println!(
        "count ratio sup over q<=1e5 (modular scan): {:.12} at q={}",
        s.ratio, s.q
    );

    let t0 = std::time::Instant::now();
    let rep = scan_count_bound(2, 1_000_000, &rule, DEFAULT_EPSILON, DEFAULT_EXPONENT, false)
        .unwrap();
    let s = rep.sup.unwrap();
    println!(
        "count ratio sup over q<=1e6 (modular scan): {:.12} at q={} [{:?}]",
        s.ratio,
        s.q,
        t0.elapsed()
    );
    for b in &rep.blocks {
        println!("  block q={} ratio={:.6}", b.q, b.ratio);
    }

    // --- charsum: burgess sup over q1 <= 300, N <= 4q1 --------------------
    let rep = burgess_scan(2, 300, WindowRule { n_cap_multiple: 4 }, BURGESS_EXPONENT).unwrap();
    let s = rep.sup.unwrap();
    println!(
        "burgess sup q1<=300 N<=4q1: {:.12} at q1={} N={} twist={:?}",
        s.ratio, s.q1, s.n_len, s.twist
    );

    let t0 = std::time::Instant::now();
    let rep = burgess_scan(2, 3000, WindowRule { n_cap_multiple: 4 }, BURGESS_EXPONENT).unwrap();
    let s = rep.sup.unwrap();
    println!(
        "burgess sup q1<=3000 N<=4q1: {:.12} at q1={} N={} twist={:?} [{:?}]",
        s.ratio,
        s.q1,
        s.n_len,
        s.twist,
        t0.elapsed()
    );

    // --- charsum: the odd-q1, N <= q1 example range ------------------------
    let rep = burgess_scan(3, 100, WindowRule { n_cap_multiple: 1 }, BURGESS_EXPONENT).unwrap();
    let s = rep.sup.unwrap();
    println!(
        "burgess sup q1 in [3,100] N<=q1: {:.12} at q1={} N={} twist={:?}",
        s.ratio, s.q1, s.n_len, s.twist
    );

    // --- series: full series regression value ------------------------------
    let psi = PsiFunction::power(1.0, 0.75).unwrap();
    let params = SeriesParams::new(1.0, DEFAULT_EPSILON, DEFAULT_EXPONENT, 10_000).unwrap();
    let rep = full_series(&psi, &params).unwrap();
    let (s1, s2, s3, sf) = rep.totals();
    println!("full series Q=1e4: S1={s1:.12} S2={s2:.12} S3={s3:.12} S_full={sf:.12}");
    // per-block ratio of full to three-series bound
    for c in &rep.checkpoints {
        println!("  Q={} block_ratio={:.6}", c.q, c.block_ratio);
    }

    // --- zeta(3/2) cross-check via partial sum plus tail correction -------
    let psi = PsiFunction::power(1.0, 0.75).unwrap();
    let params = SeriesParams::new(1.0, DEFAULT_EPSILON, DEFAULT_EXPONENT, 1_000_000).unwrap();
    let rep = parabola_points::series::three_series(&psi, &params).unwrap();
    let s1 = rep.totals().0;
    let n = 1e6f64;
    // Euler–Maclaurin tail: 2/sqrt(N) − N^{−3/2}/2 + (1/8)N^{−5/2}
    let tail = 2.0 / n.sqrt() - 0.5 * n.powf(-1.5) + 0.125 * n.powf(-2.5);
    println!("S1(1e6)={s1:.15}  S1+tail={:.15}  (zeta(3/2) reference)", s1 + tail);
    println!("|S1(1e6) - zeta| = {:.9}", (s1 - 2.612375348685488).abs());

    // --- timing probes for the acceptance runtime targets ------------------
    let t0 = std::time::Instant::now();
    let mut worst = 0.0f64;
    for q in 1..=500u64 {
        for j in 1..=50u64 {
            let exact = parabola_points::gauss::gauss_sum_exact(j, q).unwrap().to_complex();
            let direct = parabola_points::gauss::gauss_sum_direct(j, q);
            worst = worst.max((exact - direct).norm() / (q as f64).sqrt());
        }
    }
    println!(
        "gauss oracle q<=500 block: worst scaled err {worst:.3e}, {:?} (x16 for q<=2000)",
        t0.elapsed()
    );

    let t0 = std::time::Instant::now();
    let sieve = parabola_points::arith::SpfSieve::new(2000).unwrap();
    let deltas: Vec<RationalThreshold> = ["1/1000", "1/100", "1/20", "1/10", "1/4", "49/100"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for q in 1..=2000u64 {
        let f = sieve.factorize(q);
        for d in &deltas {
            assert_eq!(
                parabola_points::counting::count_modular(&f, d),
                count_bruteforce(q, d)
            );
        }
    }
    println!(
        "count equivalence q<=2000 block: {:?} (x~25 naive for q<=1e4)",
        t0.elapsed()
    );
}
