//! Acceptance gate: one test per criterion, each printing a single
//! `criterion N: PASS/FAIL` line (visible under --nocapture) and enforcing
//! its runtime budget. Tolerances are pinned here, not configurable.

use std::process::Command;
use std::time::{Duration, Instant};

use zetalab::contour::{bose_mellin_integral, middle_term_decay, reconstruct_zeta, ContourSpec};
use zetalab::gamma::{euler_gamma, gamma, weierstrass_gamma, EulerGammaMethod};
use zetalab::rearrange::{rearrange_to_diverge, rearrange_to_target, split_by_sign};
use zetalab::renorm::{
    alpha_from_bare, bare_from_alpha, scheme_divergence, RenormParams, SchemeFactor,
};
use zetalab::series::{partial_sum, ConvergenceClass, TermStream};
use zetalab::zeta::{
    dirichlet_suggested_terms, find_critical_zeros, zeta_dirichlet, zeta_eta, zeta_functional,
};
use zetalab::Complex64;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gate(criterion: usize, label: &str, budget: Duration, check: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        if elapsed <= budget {
            Ok(())
        } else {
            Err(format!("runtime {elapsed:?} exceeds budget {budget:?}"))
        }
    });
    match &outcome {
        Ok(()) => println!("criterion {criterion} ({label}): PASS in {elapsed:.2?}"),
        Err(why) => println!("criterion {criterion} ({label}): FAIL in {elapsed:.2?} ({why})"),
    }
    if let Err(why) = outcome {
        panic!("criterion {criterion} failed: {why}");
    }
}

fn ensure(cond: bool, why: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why.into())
    }
}

/// Alternating-sum oracle: repeated averaging of adjacent partial sums
/// (Euler transform), independent of every engine under test.
fn averaged_alternating_sum(term: impl Fn(u64) -> f64, terms: usize, rounds: usize) -> f64 {
    let mut sums = Vec::with_capacity(terms);
    let mut acc = 0.0;
    for n in 1..=terms as u64 {
        acc += term(n);
        sums.push(acc);
    }
    for _ in 0..rounds {
        for i in 0..sums.len() - 1 {
            sums[i] = 0.5 * (sums[i] + sums[i + 1]);
        }
        sums.pop();
    }
    *sums.last().expect("rounds < terms")
}

#[test]
fn criterion_1_euler_constant_three_ways() {
    gate(1, "euler constant, three forms", Duration::from_secs(5), || {
        let n = 1_000_000;
        let values: Vec<f64> = [
            EulerGammaMethod::HarmonicMinusLog,
            EulerGammaMethod::TailPlusLogDiff,
            EulerGammaMethod::FullLogDiffSeries,
        ]
        .into_iter()
        .map(|m| euler_gamma(m, n))
        .collect();
        for &v in &values {
            // leading printed digits 0.57721
            ensure((0.57721..0.57722).contains(&v), format!("value {v} outside 0.57721x"))?;
        }
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                let d = (values[i] - values[j]).abs();
                ensure(d <= 2e-6, format!("pairwise spread {d:.3e} > 2e-6"))?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_2_gamma_prime_at_one() {
    gate(2, "gamma'(1) = -euler", Duration::from_secs(10), || {
        let n = 200_000;
        let h = 1e-4;
        let up = weierstrass_gamma(Complex64::new(1.0 + h, 0.0), n)
            .map_err(|e| e.to_string())?
            .value;
        let dn = weierstrass_gamma(Complex64::new(1.0 - h, 0.0), n)
            .map_err(|e| e.to_string())?
            .value;
        let derivative = ((up - dn) / (2.0 * h)).re;
        let euler = 0.5772156649015329;
        let dev = (derivative + euler).abs();
        ensure(dev <= 1e-4, format!("|Gamma'(1) + euler| = {dev:.3e} > 1e-4"))
    });
}

#[test]
fn criterion_3_rearrangement() {
    gate(3, "rearrangement", Duration::from_secs(2), || {
        let stream = TermStream::<f64>::alternating_reciprocal_power(Complex64::new(1.0, 0.0));
        let split = split_by_sign(&stream, 400_000).map_err(|e| e.to_string())?;

        let target = 2.0;
        let plan = rearrange_to_target(&split, target, 100_000).map_err(|e| e.to_string())?;
        for sw in &plan.switches {
            let err = (sw.sum - target).abs();
            ensure(
                err <= sw.crossing_term.abs() + 1e-15,
                format!("switch at step {} breaks the crossing bound", sw.step),
            )?;
        }
        let final_err = (plan.final_sum() - target).abs();
        ensure(final_err <= 1e-3, format!("final error {final_err:.3e} > 1e-3"))?;

        let diverge =
            rearrange_to_diverge(&split, &[2.0, 3.0, 4.0], 100_000).map_err(|e| e.to_string())?;
        ensure(
            diverge.complete && diverge.crossings.len() == 3,
            "divergence schedule incomplete",
        )?;

        let ln2_oracle = averaged_alternating_sum(
            |n| {
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                sign / n as f64
            },
            48,
            40,
        );
        let natural = partial_sum(&stream, 10_000).map_err(|e| e.to_string())?;
        let natural = natural.last_sum().expect("nonempty").re;
        let dev = (natural - ln2_oracle).abs();
        ensure(dev <= 1e-4, format!("natural-order deviation {dev:.3e} > 1e-4"))
    });
}

#[test]
fn criterion_4_tri_method_agreement_sampled() {
    gate(4, "sampled tri-method agreement", Duration::from_secs(30), || {
        let mut rng = ChaCha8Rng::seed_from_u64(12345);
        for _ in 0..100 {
            let s = Complex64::new(
                1.1 + 3.9 * rng.gen::<f64>(),
                -5.0 + 10.0 * rng.gen::<f64>(),
            );
            let a = zeta_dirichlet(s, dirichlet_suggested_terms(s, 1e-9))
                .value
                .ok_or("dirichlet produced no value in its half-plane")?;
            let b = zeta_eta(s)
                .map_err(|e| e.to_string())?
                .value
                .ok_or("eta produced no value")?;
            let c = zeta_functional(s, 0)
                .map_err(|e| e.to_string())?
                .value
                .ok_or("functional produced no value")?;
            for (x, y) in [(a, b), (a, c), (b, c)] {
                let d = (x - y).norm();
                ensure(d <= 1e-8, format!("pairwise delta {d:.3e} > 1e-8 at s = {s}"))?;
            }
        }
        for _ in 0..100 {
            let s = Complex64::new(
                -3.0 + 4.0 * rng.gen::<f64>(),
                -5.0 + 10.0 * rng.gen::<f64>(),
            );
            let verdict = zeta_dirichlet(s, 64).verdict;
            ensure(
                verdict.class == ConvergenceClass::Divergent,
                format!("non-divergent verdict at s = {s}"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_5_continuation_values() {
    gate(5, "continuation values", Duration::from_secs(5), || {
        // oracle for zeta(-1): assemble chi(-1) zeta(2) by hand
        let zeta2 = zeta_eta(Complex64::new(2.0, 0.0))
            .map_err(|e| e.to_string())?
            .value
            .expect("eta at 2");
        let chi = 0.5 * std::f64::consts::PI.powi(-2)
            * (-std::f64::consts::FRAC_PI_2).sin()
            * gamma(Complex64::new(2.0, 0.0)).map_err(|e| e.to_string())?.re;
        let oracle = chi * zeta2.re;

        let at_minus_one = zeta_functional(Complex64::new(-1.0, 0.0), 0)
            .map_err(|e| e.to_string())?
            .value
            .expect("continuation value");
        ensure(
            (at_minus_one.re - oracle).abs() <= 1e-9 && at_minus_one.im.abs() <= 1e-12,
            "zeta(-1) disagrees with the assembled reflection oracle",
        )?;
        let d = (at_minus_one.re + 1.0 / 12.0).abs();
        ensure(d <= 1e-6, format!("|zeta(-1) + 1/12| = {d:.3e} > 1e-6"))?;

        // sin(pi s / 2) vanishes at s = -2: the exact-zero oracle
        let at_minus_two = zeta_functional(Complex64::new(-2.0, 0.0), 0)
            .map_err(|e| e.to_string())?
            .value
            .expect("continuation value");
        ensure(
            at_minus_two.norm() <= 1e-6,
            format!("|zeta(-2)| = {:.3e} > 1e-6", at_minus_two.norm()),
        )?;

        // accelerated eta oracle for zeta(1/2)
        let eta_half = averaged_alternating_sum(
            |n| {
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                sign / (n as f64).sqrt()
            },
            64,
            56,
        );
        let oracle_half = eta_half / (1.0 - 2.0f64.sqrt());
        ensure(
            (oracle_half - (-1.4603545)).abs() <= 1e-6,
            "independent oracle itself drifted from -1.4603545",
        )?;
        let at_half = zeta_functional(Complex64::new(0.5, 0.0), 0)
            .map_err(|e| e.to_string())?
            .value
            .expect("critical-line value");
        let d = (at_half.re - (-1.4603545)).abs();
        ensure(
            d <= 1e-6 && at_half.im.abs() <= 1e-12,
            format!("|zeta(1/2) + 1.4603545| = {d:.3e} > 1e-6"),
        )
    });
}

#[test]
fn criterion_6_contour_reconstruction() {
    gate(6, "contour reconstruction", Duration::from_secs(60), || {
        let spec = ContourSpec::default();
        for re in [1.5, 2.5] {
            let s = Complex64::new(re, 0.0);
            let recon = reconstruct_zeta(s, &spec)
                .map_err(|e| e.to_string())?
                .value
                .expect("contour value");
            let series = zeta_eta(s)
                .map_err(|e| e.to_string())?
                .value
                .expect("eta value");
            let d = (recon - series).norm();
            ensure(d <= 1e-5, format!("contour vs series delta {d:.3e} > 1e-5 at s = {re}"))?;
        }

        let deltas = [0.2f64, 0.1, 0.05];
        let magnitudes = middle_term_decay(1.5, &deltas);
        ensure(
            magnitudes.windows(2).all(|p| p[0] > p[1]),
            "circle magnitudes not strictly decreasing",
        )?;
        let slope = (magnitudes[2].ln() - magnitudes[0].ln()) / (deltas[2].ln() - deltas[0].ln());
        let expected = 1.5 - 1.0;
        ensure(
            (slope - expected).abs() <= 0.25 * expected,
            format!("decay exponent {slope:.4} outside 0.5 +- 25%"),
        )?;

        let s = Complex64::new(2.0, 0.0);
        let integral = bose_mellin_integral(s, 40.0, 512).map_err(|e| e.to_string())?;
        // Gamma(2) zeta(2) = pi^2/6
        let expected = std::f64::consts::PI.powi(2) / 6.0;
        let d = (integral.re - expected).abs().max(integral.im.abs());
        ensure(d <= 1e-6, format!("real-integral identity off by {d:.3e} > 1e-6"))
    });
}

#[test]
fn criterion_7_critical_line_scan() {
    gate(7, "critical-line scan", Duration::from_secs(60), || {
        let brackets = find_critical_zeros(26.0, 1e-4).map_err(|e| e.to_string())?;
        ensure(
            brackets.len() == 3,
            format!("{} brackets instead of 3", brackets.len()),
        )?;
        let expected = [14.13f64, 21.02, 25.01];
        for (b, want) in brackets.iter().zip(expected) {
            let mid = 0.5 * (b.t_low + b.t_high);
            ensure(
                (mid - want).abs() <= 0.01,
                format!("bracket midpoint {mid:.4} not within 0.01 of {want}"),
            )?;
            ensure(b.z_low * b.z_high < 0.0, "bracket endpoints do not straddle zero")?;
        }
        Ok(())
    });
}

#[test]
fn criterion_8_renormalization() {
    gate(8, "renormalization bookkeeping", Duration::from_secs(1), || {
        let at_zero = RenormParams::new(1.0, 0.0, 1.0).map_err(|e| e.to_string())?;
        let closed_form = 1.0 / (4.0 * std::f64::consts::PI).powi(2);
        for factor in SchemeFactor::ALL {
            let d = (alpha_from_bare(&at_zero, factor) - closed_form).abs();
            ensure(d <= 1e-12, format!("epsilon = 0 value off by {d:.3e}"))?;
        }

        let epsilons = [1e-3, 3.162e-3, 1e-2, 3.162e-2, 1e-1];
        let table = scheme_divergence(&epsilons).map_err(|e| e.to_string())?;
        for slope in table.slopes {
            let slope = slope.ok_or("slope not fitted")?;
            ensure(
                (1.8..=2.2).contains(&slope),
                format!("scheme-difference slope {slope:.3} outside 2.0 +- 0.2"),
            )?;
        }

        let params = RenormParams::new(2.0, 0.05, 1.3).map_err(|e| e.to_string())?;
        let bare_true = 1.3f64.powi(2) / (4.0 * std::f64::consts::PI).powf(params.d() / 2.0);
        for factor in SchemeFactor::ALL {
            let alpha = alpha_from_bare(&params, factor);
            let back = bare_from_alpha(alpha, &params, 1.0, factor).map_err(|e| e.to_string())?;
            let defect = (back - bare_true).abs() / bare_true;
            ensure(
                defect < 1e-12,
                format!("matched roundtrip defect {defect:.3e} >= 1e-12"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_9_cli_determinism() {
    gate(9, "deterministic reports", Duration::from_secs(30), || {
        for format in ["csv", "json"] {
            let args = [
                "zeta", "--sample", "25", "--seed", "271828", "--format", format,
            ];
            let runs: Vec<_> = (0..2)
                .map(|_| {
                    Command::new(env!("CARGO_BIN_EXE_zetalab"))
                        .args(args)
                        .output()
                        .expect("binary runs")
                })
                .collect();
            ensure(
                runs[0].status.code() == Some(0),
                "sampling run did not succeed",
            )?;
            ensure(
                runs[0].stdout == runs[1].stdout,
                format!("{format} reports differ between identical runs"),
            )?;
        }
        Ok(())
    });
}
