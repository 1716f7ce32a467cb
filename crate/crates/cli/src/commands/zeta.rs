//! `zeta`: single-point evaluation, the three-engine agreement grid, the
//! critical-line zero scan, and the seeded sampled invariant suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use zetalab::series::ConvergenceClass;
use zetalab::zeta::{
    dirichlet_suggested_terms, find_critical_zeros, zeta_dirichlet, zeta_eta_with_depth,
    zeta_functional, agreement_grid, Axis, EvalResult, ZetaError, ZetaMethod,
};
use zetalab::Complex64;

use super::{parse_complex, CmdError, CmdResult};
use crate::config::RunConfig;
use crate::report::{Cell, Report};

pub struct ZetaArgs {
    pub eval: Option<String>,
    pub methods: Vec<ZetaMethod>,
    pub grid: Option<Vec<String>>,
    pub zeros: bool,
    pub tmax: Option<f64>,
    pub tol: Option<f64>,
    pub sample: Option<usize>,
    pub terms: Option<usize>,
    pub depth: Option<usize>,
}

const POINT_COLUMNS: [&str; 10] = [
    "re", "im", "method", "value_re", "value_im", "err", "class", "test", "bound", "max_delta",
];

fn error_slug(e: &ZetaError) -> &'static str {
    match e {
        ZetaError::PoleAtOne => "pole-at-one",
        ZetaError::EtaPrefactorSingularity => "eta-prefactor-singularity",
        ZetaError::InvalidParameter(_) => "invalid-parameter",
    }
}

fn result_row(r: &EvalResult<f64>, max_delta: Option<f64>) -> Vec<Cell> {
    vec![
        Cell::from(r.s.re),
        Cell::from(r.s.im),
        Cell::from(r.method.label()),
        r.value.map(|v| v.re).into(),
        r.value.map(|v| v.im).into(),
        Cell::from(r.error_estimate),
        Cell::from(r.verdict.class.label()),
        Cell::from(r.verdict.evidence.test.label()),
        r.verdict.evidence.bound.into(),
        max_delta.into(),
    ]
}

fn error_row(s: Complex64, method: ZetaMethod, e: &ZetaError) -> Vec<Cell> {
    vec![
        Cell::from(s.re),
        Cell::from(s.im),
        Cell::from(method.label()),
        Cell::Empty,
        Cell::Empty,
        Cell::from(f64::INFINITY),
        Cell::from("error"),
        Cell::from(error_slug(e)),
        Cell::Empty,
        Cell::Empty,
    ]
}

fn max_pairwise(values: &[Complex64]) -> Option<f64> {
    let mut best: Option<f64> = None;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let d = (values[i] - values[j]).norm();
            best = Some(best.map_or(d, |b: f64| b.max(d)));
        }
    }
    best
}

fn parse_axis(text: &str) -> Result<Axis<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("axis {text:?} must be lo:hi:step"));
    }
    let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.trim().parse::<f64>()).collect();
    let nums = nums.map_err(|_| format!("axis {text:?} must be lo:hi:step"))?;
    Axis::new(nums[0], nums[1], nums[2]).map_err(|e| e.to_string())
}

pub fn run(args: &ZetaArgs, cfg: &RunConfig) -> CmdResult {
    let actions = usize::from(args.eval.is_some())
        + usize::from(args.grid.is_some())
        + usize::from(args.zeros)
        + usize::from(args.sample.is_some());
    if actions != 1 {
        return Err(CmdError::usage(
            "zeta: pass exactly one of --eval S, --grid RE IM, --zeros, --sample N",
        ));
    }

    if let Some(text) = &args.eval {
        return run_eval(text, args, cfg);
    }
    if let Some(axes) = &args.grid {
        return run_grid(axes, cfg);
    }
    if args.zeros {
        return run_zeros(args, cfg);
    }
    run_sample(args.sample.unwrap(), cfg)
}

fn run_eval(text: &str, args: &ZetaArgs, cfg: &RunConfig) -> CmdResult {
    let s = parse_complex(text).map_err(|e| CmdError::usage(format!("zeta: {e}")))?;
    let methods = if args.methods.is_empty() {
        vec![
            ZetaMethod::DirichletSeries,
            ZetaMethod::EtaThirdDefinition,
            ZetaMethod::FunctionalEquation,
        ]
    } else {
        args.methods.clone()
    };
    let terms = args.terms.unwrap_or(cfg.dirichlet_terms);
    let depth = args.depth.unwrap_or(cfg.eta_depth);

    let mut report = Report::new(POINT_COLUMNS.to_vec());
    report.add_summary("terms", terms);
    report.add_summary("depth", depth);

    let mut values = Vec::new();
    let mut first_error: Option<ZetaError> = None;
    let mut rows = Vec::new();
    for &method in &methods {
        let outcome = match method {
            ZetaMethod::DirichletSeries => Ok(zeta_dirichlet(s, terms)),
            ZetaMethod::EtaThirdDefinition => zeta_eta_with_depth(s, depth),
            ZetaMethod::FunctionalEquation => zeta_functional(s, depth),
            ZetaMethod::HankelContour => {
                return Err(CmdError::usage(
                    "zeta: the contour engine lives under the contour subcommand",
                ))
            }
        };
        match outcome {
            Ok(result) => {
                if let Some(v) = result.value {
                    values.push(v);
                }
                rows.push(RowKind::Result(result));
            }
            Err(e) => {
                first_error.get_or_insert(e);
                rows.push(RowKind::Error(method, e));
            }
        }
    }

    let max_delta = max_pairwise(&values);
    for row in rows {
        match row {
            RowKind::Result(r) => {
                let row = result_row(&r, max_delta);
                report.push_row(row);
            }
            RowKind::Error(method, e) => report.push_row(error_row(s, method, &e)),
        }
    }
    if let Some(d) = max_delta {
        report.add_summary("max_delta", d);
        report.add_check("engines-agree", d <= cfg.agreement_tol);
    }

    match first_error {
        Some(e) => Err(CmdError::with_report(format!("zeta: {e}"), report)),
        None => Ok(report),
    }
}

enum RowKind {
    Result(EvalResult<f64>),
    Error(ZetaMethod, ZetaError),
}

fn run_grid(axes: &[String], cfg: &RunConfig) -> CmdResult {
    if axes.len() != 2 {
        return Err(CmdError::usage("zeta: --grid needs two axes, RE IM"));
    }
    let re_axis = parse_axis(&axes[0]).map_err(|e| CmdError::usage(format!("zeta: {e}")))?;
    let im_axis = parse_axis(&axes[1]).map_err(|e| CmdError::usage(format!("zeta: {e}")))?;
    let grid = agreement_grid(re_axis, im_axis)
        .map_err(|e| CmdError::usage(format!("zeta: {e}")))?;

    let mut report = Report::new(POINT_COLUMNS.to_vec());
    let mut divergent_left = true;
    for point in &grid.points {
        for result in point.results() {
            if result.method == ZetaMethod::DirichletSeries
                && result.s.re <= 1.0
                && result.verdict.class != ConvergenceClass::Divergent
            {
                divergent_left = false;
            }
            report.push_row(result_row(result, point.max_pairwise_delta));
        }
    }
    report.add_summary("points", grid.points.len());
    report.add_summary("offset_applied", grid.offset_applied);
    report.add_summary("max_delta", grid.max_pairwise_delta);
    if let Some(d) = grid.max_pairwise_delta {
        report.add_check("grid-agreement", d <= cfg.agreement_tol);
    }
    report.add_check("dirichlet-divergent-left", divergent_left);
    Ok(report)
}

fn run_zeros(args: &ZetaArgs, cfg: &RunConfig) -> CmdResult {
    let t_max = args.tmax.unwrap_or(26.0);
    let tol = args.tol.unwrap_or(cfg.zero_tol);
    let brackets =
        find_critical_zeros(t_max, tol).map_err(|e| CmdError::usage(format!("zeta: {e}")))?;

    let mut report = Report::new(vec![
        "index", "t_low", "t_high", "z_low", "z_high", "width",
    ]);
    let mut refined = true;
    let mut straddle = true;
    for (i, b) in brackets.iter().enumerate() {
        let width = b.t_high - b.t_low;
        refined &= width <= tol;
        straddle &= b.z_low * b.z_high < 0.0;
        report.push_row(vec![
            Cell::from(i + 1),
            Cell::from(b.t_low),
            Cell::from(b.t_high),
            Cell::from(b.z_low),
            Cell::from(b.z_high),
            Cell::from(width),
        ]);
    }
    report.add_summary("t_max", t_max);
    report.add_summary("tol", tol);
    report.add_summary("brackets", brackets.len());
    report.add_check("brackets-refined", refined);
    report.add_check("endpoints-straddle", straddle);
    Ok(report)
}

/// Two seeded suites: tri-engine agreement where the defining series
/// converges absolutely, and the Dirichlet domain verdict left of the
/// boundary line.
fn run_sample(count: usize, cfg: &RunConfig) -> CmdResult {
    if count == 0 {
        return Err(CmdError::usage("zeta: --sample needs a positive count"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut report = Report::new(vec!["suite", "re", "im", "max_delta", "class"]);

    let mut worst: Option<f64> = None;
    let mut agree = true;
    for _ in 0..count {
        let re = 1.1 + 3.9 * rng.gen::<f64>();
        let im = -5.0 + 10.0 * rng.gen::<f64>();
        let s = Complex64::new(re, im);
        let mut values = Vec::new();
        if let Some(v) = zeta_dirichlet(s, dirichlet_suggested_terms(s, 1e-9)).value {
            values.push(v);
        }
        if let Ok(r) = zeta_eta_with_depth(s, cfg.eta_depth) {
            values.extend(r.value);
        }
        if let Ok(r) = zeta_functional(s, cfg.eta_depth) {
            values.extend(r.value);
        }
        let max_delta = max_pairwise(&values);
        match max_delta {
            Some(d) => {
                agree &= d <= cfg.agreement_tol;
                worst = Some(worst.map_or(d, |w: f64| w.max(d)));
            }
            None => agree = false,
        }
        report.push_row(vec![
            Cell::from("agreement"),
            Cell::from(re),
            Cell::from(im),
            max_delta.into(),
            Cell::Empty,
        ]);
    }

    let mut divergent = 0usize;
    for _ in 0..count {
        let re = -3.0 + 4.0 * rng.gen::<f64>();
        let im = -5.0 + 10.0 * rng.gen::<f64>();
        let s = Complex64::new(re, im);
        let verdict = zeta_dirichlet(s, 64).verdict;
        if verdict.class == ConvergenceClass::Divergent {
            divergent += 1;
        }
        report.push_row(vec![
            Cell::from("domain"),
            Cell::from(re),
            Cell::from(im),
            Cell::Empty,
            Cell::from(verdict.class.label()),
        ]);
    }

    report.add_summary("count", count);
    report.add_summary("max_delta", worst);
    report.add_summary(
        "divergent_fraction",
        divergent as f64 / count as f64,
    );
    report.add_check("tri-agreement", agree);
    report.add_check("dirichlet-divergent-left", divergent == count);
    Ok(report)
}
