//! `contour`: the loop-integral zeta engine, the circle-term decay table,
//! and the real-axis integral cross-check.

use zetalab::contour::{
    bose_mellin_integral, integrate_contour, middle_term_decay, reconstruct_zeta, ContourError,
    ContourSpec,
};
use zetalab::gamma::log_gamma;
use zetalab::zeta::zeta_eta;
use zetalab::Complex64;

use super::{parse_complex, parse_f64_list, CmdError, CmdResult};
use crate::config::RunConfig;
use crate::report::{Cell, Report};

pub struct ContourArgs {
    pub s: String,
    pub decay: bool,
    pub deltas: Option<String>,
    pub mellin: bool,
    pub delta: Option<f64>,
    pub offset: Option<f64>,
    pub xmax: Option<f64>,
    pub nodes_ray: Option<usize>,
    pub nodes_circle: Option<usize>,
    pub nodes: Option<usize>,
}

const COLUMNS: [&str; 4] = ["kind", "value_re", "value_im", "err"];

fn error_slug(e: &ContourError) -> &'static str {
    match e {
        ContourError::InvalidSpec(_) => "invalid-spec",
        ContourError::SingularPoint => "singular-point",
        ContourError::IndeterminateForm => "indeterminate-form",
        ContourError::PoleAtOne => "pole-at-one",
        ContourError::InvalidParameter(_) => "invalid-parameter",
    }
}

fn build_spec(args: &ContourArgs) -> ContourSpec<f64> {
    let mut spec = ContourSpec::default();
    if let Some(v) = args.delta {
        spec.delta = v;
    }
    if let Some(v) = args.offset {
        spec.offset = v;
    }
    if let Some(v) = args.xmax {
        spec.x_max = v;
    }
    if let Some(v) = args.nodes_ray {
        spec.nodes_ray = v;
    }
    if let Some(v) = args.nodes_circle {
        spec.nodes_circle = v;
    }
    spec
}

/// Reference value from the alternating-series engine, where its accuracy
/// contract applies.
fn series_reference(s: Complex64) -> Option<Complex64> {
    if s.re < 0.05 || s.re > 10.0 || s.im.abs() > 100.0 {
        return None;
    }
    zeta_eta(s).ok().and_then(|r| r.value)
}

pub fn run(args: &ContourArgs, _cfg: &RunConfig) -> CmdResult {
    let s = parse_complex(&args.s).map_err(|e| CmdError::usage(format!("contour: {e}")))?;
    if args.decay && args.mellin {
        return Err(CmdError::usage(
            "contour: --decay and --mellin are mutually exclusive",
        ));
    }
    if args.decay {
        return run_decay(s, args);
    }
    if args.mellin {
        return run_mellin(s, args);
    }
    run_reconstruct(s, args)
}

fn run_reconstruct(s: Complex64, args: &ContourArgs) -> CmdResult {
    let spec = build_spec(args);
    let mut report = Report::new(COLUMNS.to_vec());
    report.add_summary("s_re", s.re);
    report.add_summary("s_im", s.im);
    report.add_summary("delta", spec.delta);
    report.add_summary("offset", spec.offset);
    report.add_summary("x_max", spec.x_max);
    report.add_summary("nodes_ray", spec.nodes_ray);
    report.add_summary("nodes_circle", spec.nodes_circle);

    let segments = match integrate_contour(s, &spec) {
        Ok(r) => r,
        Err(e) => {
            report.push_row(vec![
                Cell::from(format!("error-{}", error_slug(&e))),
                Cell::Empty,
                Cell::Empty,
                Cell::from(f64::INFINITY),
            ]);
            return Err(CmdError::with_report(format!("contour: {e}"), report));
        }
    };
    for (kind, v) in [
        ("upper_ray", segments.upper_ray),
        ("circle", segments.circle),
        ("lower_ray", segments.lower_ray),
    ] {
        report.push_row(vec![
            Cell::from(kind),
            Cell::from(v.re),
            Cell::from(v.im),
            Cell::Empty,
        ]);
    }
    report.push_row(vec![
        Cell::from("total"),
        Cell::from(segments.total.re),
        Cell::from(segments.total.im),
        Cell::from(segments.truncation_estimate),
    ]);

    match reconstruct_zeta(s, &spec) {
        Ok(result) => {
            let value = result.value.expect("reconstruction always carries a value");
            report.push_row(vec![
                Cell::from("reconstruction"),
                Cell::from(value.re),
                Cell::from(value.im),
                Cell::from(result.error_estimate),
            ]);
            report.add_summary("class", result.verdict.class.label());
            if let Some(reference) = series_reference(s) {
                let delta = (value - reference).norm();
                report.add_summary("series_reference_re", reference.re);
                report.add_summary("series_reference_im", reference.im);
                report.add_summary("series_delta", delta);
                report.add_check(
                    "matches-series-engine",
                    delta <= (4.0 * result.error_estimate).max(1e-5),
                );
            }
            Ok(report)
        }
        Err(e) => {
            report.push_row(vec![
                Cell::from(format!("error-{}", error_slug(&e))),
                Cell::Empty,
                Cell::Empty,
                Cell::from(f64::INFINITY),
            ]);
            Err(CmdError::with_report(format!("contour: {e}"), report))
        }
    }
}

fn run_decay(s: Complex64, args: &ContourArgs) -> CmdResult {
    if s.im != 0.0 || s.re <= 1.0 {
        return Err(CmdError::usage("contour: --decay needs real --s greater than 1"));
    }
    let text = args
        .deltas
        .as_deref()
        .ok_or_else(|| CmdError::usage("contour: --decay needs --deltas D1,D2,..."))?;
    let deltas =
        parse_f64_list(text).map_err(|e| CmdError::usage(format!("contour: {e}")))?;
    if deltas.is_empty() || deltas.iter().any(|&d| !(d > 0.0 && d < 1.0)) {
        return Err(CmdError::usage("contour: deltas must lie in (0, 1)"));
    }
    if deltas.windows(2).any(|p| p[0] <= p[1]) {
        return Err(CmdError::usage(
            "contour: deltas must be strictly decreasing",
        ));
    }

    let magnitudes = middle_term_decay(s.re, &deltas);
    let mut report = Report::new(vec!["delta", "magnitude"]);
    for (&d, &m) in deltas.iter().zip(&magnitudes) {
        report.push_row(vec![Cell::from(d), Cell::from(m)]);
    }
    report.add_summary("s", s.re);
    report.add_summary("count", deltas.len());

    let decreasing = magnitudes.windows(2).all(|p| p[0] > p[1]);
    report.add_check("strictly-decreasing", decreasing);
    if deltas.len() >= 2 {
        let span = deltas.len() - 1;
        let slope = (magnitudes[span].ln() - magnitudes[0].ln())
            / (deltas[span].ln() - deltas[0].ln());
        report.add_summary("fitted_exponent", slope);
        // the circle term scales like delta^(s-1)
        report.add_check(
            "decay-exponent",
            (slope - (s.re - 1.0)).abs() <= 0.25 * (s.re - 1.0),
        );
    }
    Ok(report)
}

fn run_mellin(s: Complex64, args: &ContourArgs) -> CmdResult {
    let x_max = args.xmax.unwrap_or(40.0);
    let nodes = args.nodes.unwrap_or(512);
    let value = bose_mellin_integral(s, x_max, nodes)
        .map_err(|e| CmdError::usage(format!("contour: {e}")))?;

    let mut report = Report::new(COLUMNS.to_vec());
    let tail = x_max.powf(s.re - 1.0) * (-x_max).exp() * 8.0;
    report.push_row(vec![
        Cell::from("mellin"),
        Cell::from(value.re),
        Cell::from(value.im),
        Cell::from(tail),
    ]);
    report.add_summary("s_re", s.re);
    report.add_summary("s_im", s.im);
    report.add_summary("x_max", x_max);
    report.add_summary("nodes", nodes);

    // the integral equals Gamma(s) zeta(s) up to the cut-off tail
    if let (Ok(lg), Some(zeta)) = (log_gamma(s), series_reference(s)) {
        let product = lg.exp() * zeta;
        let delta = (value - product).norm();
        report.add_summary("gamma_zeta_re", product.re);
        report.add_summary("gamma_zeta_im", product.im);
        report.add_summary("product_delta", delta);
        report.add_check("matches-gamma-zeta", delta <= tail.max(1e-6));
    }
    Ok(report)
}
