//! `renorm`: dimensional-continuation coupling bookkeeping, the scheme
//! divergence table, and conversion roundtrips.

use zetalab::renorm::{
    alpha_from_bare, bare_from_alpha, scheme_divergence, RenormParams, SchemeDivergenceTable,
    SchemeFactor,
};

use super::{parse_f64_list, CmdError, CmdResult};
use crate::config::RunConfig;
use crate::report::{Cell, Report};

pub struct RenormArgs {
    pub eps: String,
    pub mu: f64,
    pub e0: f64,
    pub factor: Option<String>,
    pub scheme_table: bool,
    pub roundtrip: bool,
    pub zalpha: f64,
}

fn pick_factors(name: Option<&str>) -> Result<Vec<SchemeFactor>, String> {
    match name {
        None | Some("all") => Ok(SchemeFactor::ALL.to_vec()),
        Some(other) => SchemeFactor::ALL
            .iter()
            .copied()
            .find(|f| f.label() == other)
            .map(|f| vec![f])
            .ok_or_else(|| {
                format!(
                    "unknown factor {other:?}; expected all, exp-gamma-eps, \
                     gamma-one-plus, inv-gamma-one-minus"
                )
            }),
    }
}

pub fn run(args: &RenormArgs, _cfg: &RunConfig) -> CmdResult {
    if args.scheme_table && args.roundtrip {
        return Err(CmdError::usage(
            "renorm: --scheme-table and --roundtrip are mutually exclusive",
        ));
    }
    let factors =
        pick_factors(args.factor.as_deref()).map_err(|e| CmdError::usage(format!("renorm: {e}")))?;
    let eps_list =
        parse_f64_list(&args.eps).map_err(|e| CmdError::usage(format!("renorm: {e}")))?;

    if args.scheme_table {
        return run_table(&eps_list);
    }
    if eps_list.len() != 1 {
        return Err(CmdError::usage(
            "renorm: pass a single --eps here (lists are for --scheme-table)",
        ));
    }
    let params = RenormParams::new(args.mu, eps_list[0], args.e0)
        .map_err(|e| CmdError::usage(format!("renorm: {e}")))?;

    if args.roundtrip {
        return run_roundtrip(&params, &factors, args.zalpha);
    }
    run_alpha(&params, &factors)
}

fn run_alpha(params: &RenormParams<f64>, factors: &[SchemeFactor]) -> CmdResult {
    let mut report = Report::new(vec!["factor", "alpha_over_4pi"]);
    let mut values = Vec::new();
    for &factor in factors {
        let alpha = alpha_from_bare(params, factor);
        values.push(alpha);
        report.push_row(vec![Cell::from(factor.label()), Cell::from(alpha)]);
    }
    report.add_summary("mu", params.mu());
    report.add_summary("epsilon", params.epsilon());
    report.add_summary("e0", params.e0());
    report.add_summary("d", params.d());

    let mut spread = 0.0f64;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            spread = spread.max((values[i] - values[j]).abs());
        }
    }
    report.add_summary("scheme_spread", spread);
    if values.len() > 1 {
        // the factors share value and first derivative at epsilon = 0, so
        // the spread is quadratic in epsilon
        let eps = params.epsilon();
        let scale = values[0].abs().max(1e-300);
        let band = if eps == 0.0 {
            0.0
        } else {
            scale * eps * eps * 2.0 + 1e-15
        };
        report.add_check("scheme-spread-quadratic", spread <= band);
    }
    Ok(report)
}

fn run_table(eps_list: &[f64]) -> CmdResult {
    let table = scheme_divergence(eps_list).map_err(|e| CmdError::usage(format!("renorm: {e}")))?;
    let mut report = Report::new(vec!["epsilon", "gap_eg", "gap_ei", "gap_gi"]);
    for (eps, gaps) in table.epsilons.iter().zip(&table.differences) {
        report.push_row(vec![
            Cell::from(*eps),
            Cell::from(gaps[0]),
            Cell::from(gaps[1]),
            Cell::from(gaps[2]),
        ]);
    }
    for (pair, slope) in SchemeDivergenceTable::<f64>::PAIRS.iter().zip(&table.slopes) {
        match pair {
            p if p.starts_with("exp-gamma-eps|gamma") => {
                report.add_summary("slope_eg", *slope)
            }
            p if p.starts_with("exp-gamma-eps|inv") => report.add_summary("slope_ei", *slope),
            _ => report.add_summary("slope_gi", *slope),
        }
    }
    let in_band = table
        .slopes
        .iter()
        .all(|s| s.is_none_or(|v| (1.8..=2.2).contains(&v)));
    report.add_check("slopes-quadratic", in_band);
    Ok(report)
}

fn run_roundtrip(
    params: &RenormParams<f64>,
    factors: &[SchemeFactor],
    z_alpha: f64,
) -> CmdResult {
    let mut report = Report::new(vec!["factor", "alpha_over_4pi", "bare", "defect"]);
    let four_pi = 4.0 * std::f64::consts::PI;
    let bare_true = params.e0() * params.e0() / four_pi.powf(params.d() / 2.0);
    let mut worst = 0.0f64;
    for &factor in factors {
        let alpha = alpha_from_bare(params, factor);
        let bare = bare_from_alpha(alpha, params, z_alpha, factor)
            .map_err(|e| CmdError::usage(format!("renorm: {e}")))?;
        let defect = (bare - z_alpha * bare_true).abs() / bare_true.abs().max(1e-300);
        worst = worst.max(defect);
        report.push_row(vec![
            Cell::from(factor.label()),
            Cell::from(alpha),
            Cell::from(bare),
            Cell::from(defect),
        ]);
    }
    report.add_summary("mu", params.mu());
    report.add_summary("epsilon", params.epsilon());
    report.add_summary("e0", params.e0());
    report.add_summary("z_alpha", z_alpha);
    report.add_summary("max_defect", worst);
    report.add_check("roundtrip-exact", worst < 1e-12);
    Ok(report)
}
