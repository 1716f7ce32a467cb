//! `gamma`: Euler-constant approximants, Gamma by limit and product forms,
//! and the near-origin digamma asymptotic.

use zetalab::gamma::{
    digamma_near_origin, euler_gamma, euler_gamma_refined, gauss_gamma, log_gamma,
    weierstrass_gamma, EulerGammaMethod,
};
use zetalab::Complex64;

use super::{CmdError, CmdResult};
use crate::config::RunConfig;
use crate::report::{Cell, Report};

pub struct GammaArgs {
    pub euler: bool,
    pub at: Option<f64>,
    pub digamma: Option<f64>,
    pub n: Option<u64>,
}

const COLUMNS: [&str; 5] = ["method", "n", "value_re", "value_im", "err"];

pub fn run(args: &GammaArgs, cfg: &RunConfig) -> CmdResult {
    if !args.euler && args.at.is_none() && args.digamma.is_none() {
        return Err(CmdError::usage(
            "gamma: pass at least one of --euler, --at X, --digamma Z",
        ));
    }
    let n = args.n.unwrap_or(cfg.gamma_n);
    if n == 0 {
        return Err(CmdError::usage("gamma: --n must be positive"));
    }

    let mut report = Report::new(COLUMNS.to_vec());
    report.add_summary("n", n);

    if args.euler {
        let reference: f64 = euler_gamma_refined(2048);
        let methods = [
            EulerGammaMethod::HarmonicMinusLog,
            EulerGammaMethod::TailPlusLogDiff,
            EulerGammaMethod::FullLogDiffSeries,
        ];
        let mut values = Vec::new();
        for method in methods {
            let value: f64 = euler_gamma(method, n);
            values.push(value);
            report.push_row(vec![
                Cell::from(method.label()),
                Cell::from(n),
                Cell::from(value),
                Cell::from(0.0),
                Cell::from((value - reference).abs()),
            ]);
        }
        let mut spread = 0.0f64;
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                spread = spread.max((values[i] - values[j]).abs());
            }
        }
        report.add_summary("euler_reference", reference);
        report.add_summary("euler_pairwise_spread", spread);
        report.add_check("euler-pairwise-spread", spread <= 2e-6);
    }

    if let Some(x) = args.at {
        let gauss = gauss_gamma(x, n).map_err(|e| CmdError::usage(format!("gamma: {e}")))?;
        let weier = weierstrass_gamma(Complex64::new(x, 0.0), n)
            .map_err(|e| CmdError::usage(format!("gamma: {e}")))?;
        for result in [&gauss, &weier] {
            report.push_row(vec![
                Cell::from(result.method.label()),
                Cell::from(result.n_used),
                Cell::from(result.value.re),
                Cell::from(result.value.im),
                Cell::from(result.error_estimate),
            ]);
        }
        let delta = (gauss.value - weier.value).norm();
        report.add_summary("at", x);
        report.add_summary("definitions_delta", delta);
        report.add_check(
            "definitions-agree",
            delta <= 2.0 * (gauss.error_estimate + weier.error_estimate) + 1e-12,
        );
    }

    if let Some(z) = args.digamma {
        let zc = Complex64::new(z, 0.0);
        let model =
            digamma_near_origin(zc).map_err(|e| CmdError::usage(format!("gamma: {e}")))?;
        // centered difference of log Gamma as the ground truth; the model
        // omits terms of order |z|, which is the deviation being measured
        let h = 1e-7;
        let truth = (log_gamma(zc + h).unwrap() - log_gamma(zc - h).unwrap()) / (2.0 * h);
        let deviation = (model - truth).norm();
        report.push_row(vec![
            Cell::from("digamma-asymptotic"),
            Cell::Empty,
            Cell::from(model.re),
            Cell::from(model.im),
            Cell::from(deviation),
        ]);
        report.add_summary("digamma_at", z);
        report.add_summary("digamma_deviation", deviation);
        // the first neglected term is (pi^2/6) z
        report.add_check(
            "digamma-deviation-first-order",
            deviation <= 2.0 * 1.6449340668482264 * z.abs() + 1e-9,
        );
    }

    Ok(report)
}
