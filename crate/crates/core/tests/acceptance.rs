//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p skewcode --test acceptance -- --nocapture --test-threads 1`
//! to see them in order.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skewcode::capacity::{
    aas_sandwich, binet_gap_lower, binet_residual, capacity_1w, capacity_dd,
    exceeds_phi_power_exact, fibonacci, log2_phi, log2_phi_dd,
};
use skewcode::channel::{enumerate_skews, transmit, SkewMode, SkewPattern};
use skewcode::code::{build_codebook, Message};
use skewcode::graph::{build_component, max_independent_set, oracle_component};

fn report(id: u32, name: &str, pass: bool, detail: &str) {
    let status = if pass { "PASS" } else { "FAIL" };
    println!("criterion {id} [{status}] {name}: {detail}");
    assert!(pass, "criterion {id} failed: {detail}");
}

/// `sum_h C(h + floor((w-h)/2), h)` from a Pascal triangle.
fn binomial_sum(w: usize) -> BigUint {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 1..=w {
        let prev = &rows[n - 1];
        let mut row = vec![BigUint::one(); n + 1];
        for k in 1..n {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    (0..=w).map(|h| rows[h + (w - h) / 2][h].clone()).sum()
}

#[test]
fn criterion_1_fibonacci_identity() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for w in 0..=60 {
        if fibonacci(w) != binomial_sum(w) {
            bad.push(format!("S_{w}"));
        }
    }
    for w in 1..=30 {
        // Count by walking the codebook, not from its stored class sizes.
        let cb = build_codebook(w).unwrap();
        let listed = cb.codewords().count() as u128;
        if BigUint::from(listed) != fibonacci(w) || cb.len() != listed {
            bad.push(format!("codebook_{w}"));
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(1);
    report(
        1,
        "F_w = binomial sum (w <= 60) = codebook size (w <= 30)",
        pass,
        &format!("mismatches {bad:?}, {elapsed:.2?} (limit 1 s)"),
    );
}

#[test]
fn criterion_2_oracle_equivalence() {
    let start = Instant::now();
    let mut discrepancies = 0usize;
    let mut compared = 0usize;
    for w in 2..=8 {
        for h in 0..=w {
            let analytic = build_component(w, h).unwrap().edges();
            for mode in SkewMode::ALL {
                let oracle = oracle_component(w, h, mode).unwrap().edges();
                compared += 1;
                discrepancies += analytic.iter().filter(|e| !oracle.contains(e)).count()
                    + oracle.iter().filter(|e| !analytic.contains(e)).count();
            }
        }
    }
    report(
        2,
        "brute-force edges = L-infinity edges, w in 2..=8, all modes",
        discrepancies == 0,
        &format!(
            "{compared} component/mode pairs, {discrepancies} discrepancies, {:.2?}",
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_3_independence_numbers() {
    let mut bad = Vec::new();
    for w in 2..=8 {
        let cb = build_codebook(w).unwrap();
        let mut total = 0u128;
        for h in 0..=w {
            let component = build_component(w, h).unwrap();
            let mis = max_independent_set(&component).unwrap();
            assert!(component.is_independent(&mis));
            let class: Vec<_> = cb.class(h).collect();
            if !component.is_independent(&class) || class.len() != mis.len() {
                bad.push((w, h));
            }
            total += mis.len() as u128;
        }
        if BigUint::from(total) != fibonacci(w) {
            bad.push((w, usize::MAX));
        }
    }
    report(
        3,
        "sum of independence numbers = F_w; codebook classes are maximum",
        bad.is_empty(),
        &format!("failures {bad:?}"),
    );
}

#[test]
fn criterion_4_zero_error_round_trip() {
    let start = Instant::now();
    let mut trials = 0u64;
    let mut failures = 0u64;
    for w in 2..=8 {
        let cb = build_codebook(w).unwrap();
        for mode in SkewMode::ALL {
            let skews: Vec<_> = enumerate_skews(w, mode).unwrap().collect();
            for m in 0..cb.len() {
                let word = cb.encode(Message(m)).unwrap();
                for s in &skews {
                    trials += 1;
                    if cb.decode(&transmit(&word, s).unwrap()).ok() != Some(Message(m)) {
                        failures += 1;
                    }
                }
            }
        }
    }
    let exhaustive = trials;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for w in [10, 20, 30] {
        let cb = build_codebook(w).unwrap();
        for mode in [SkewMode::Binary, SkewMode::Ternary] {
            for _ in 0..10_000 {
                let m = Message(rng.random_range(0..cb.len()));
                let s = SkewPattern::from_choices(w, mode, |_, c| c[rng.random_range(0..c.len())])
                    .unwrap();
                trials += 1;
                if cb
                    .decode(&transmit(&cb.encode(m).unwrap(), &s).unwrap())
                    .ok()
                    != Some(m)
                {
                    failures += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        4,
        "decode(transmit(encode(m), s)) = m",
        failures == 0 && elapsed < Duration::from_secs(60),
        &format!(
            "{exhaustive} exhaustive + {} random trials, {failures} failures, {elapsed:.2?} (limit 60 s)",
            trials - exhaustive
        ),
    );
}

#[test]
#[allow(clippy::excessive_precision)]
fn criterion_5_capacity_values() {
    // log2(3)/2 to 20 digits.
    let c2 = capacity_1w(2);
    let c2_ok = (c2 - 0.79248125036057809073).abs() <= f64::EPSILON * c2;
    let c4_ok = capacity_1w(4) == 0.75;
    let uncertified: Vec<usize> = (2..=1000)
        .filter(|&w| !(exceeds_phi_power_exact(w) && binet_gap_lower(w) > 0.0))
        .collect();
    let float_agrees = (2..=1000).all(|w| capacity_1w(w) >= log2_phi());
    report(
        5,
        "C_1,2 = log2(3)/2, C_1,4 = 0.75, C_1w >= log2(phi) certified for 2 <= w <= 1000",
        c2_ok && c4_ok && uncertified.is_empty() && float_agrees,
        &format!(
            "C_1,2 = {c2}, C_1,4 = {}, uncertified w: {uncertified:?}",
            capacity_1w(4)
        ),
    );
}

#[test]
fn criterion_6_convergence() {
    let min_gap = (2..=1000)
        .map(|w| capacity_dd(w) - log2_phi_dd())
        .map(|g| g.hi())
        .fold(f64::INFINITY, f64::min);
    let worst_residual = (0..=60)
        .map(|w| binet_residual(w).unwrap())
        .fold(0.0, f64::max);
    report(
        6,
        "0 < min_{w<=1000} C_1w - log2(phi) < 3.3e-4; Binet residual < 1e-6 for w <= 60",
        min_gap > 0.0 && min_gap < 3.3e-4 && worst_residual < 1e-6,
        &format!("min gap {min_gap:.6e}, worst residual {worst_residual:.3e}"),
    );
}

#[test]
fn criterion_7_aas_resolution() {
    let lp = log2_phi();
    let uppers: Vec<f64> = [2, 4, 8, 16, 32, 64, 128, 256, 512, 1000]
        .into_iter()
        .map(|w_max| aas_sandwich(w_max).upper)
        .collect();
    let decreasing = uppers.windows(2).all(|p| p[1] < p[0]);
    let last = aas_sandwich(1000);
    let summary = last.summary();
    let pass = last.lower == lp
        && last.resolved == lp
        && (lp - 0.694241913631).abs() < 1e-12
        && decreasing
        && uppers.iter().all(|&u| u > lp)
        && summary.contains("C_AAS = log2(phi)")
        && summary.contains("exactly");
    report(
        7,
        "AAS sandwich: lower = resolved = log2(phi), upper decreasing toward it",
        pass,
        &summary,
    );
}
