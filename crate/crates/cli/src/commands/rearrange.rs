//! `rearrange`: greedy rearrangements of conditionally convergent series,
//! either steering to a target or marching past divergence thresholds.

use zetalab::rearrange::{rearrange_to_diverge, rearrange_to_target, split_by_sign};
use zetalab::series::TermStream;
use zetalab::Complex64;

use super::{parse_f64_list, CmdError, CmdResult};
use crate::config::RunConfig;
use crate::report::{Cell, Report};

pub struct RearrangeArgs {
    pub series: String,
    pub target: Option<f64>,
    pub diverge: Option<String>,
    pub steps: Option<usize>,
    pub horizon: Option<u64>,
    pub every: Option<usize>,
}

fn make_stream(name: &str) -> Result<TermStream<f64>, String> {
    match name {
        "altharmonic" => Ok(TermStream::alternating_reciprocal_power(Complex64::new(
            1.0, 0.0,
        ))),
        "harmonic" => Ok(TermStream::reciprocal_power(Complex64::new(1.0, 0.0))),
        "logdiff" => Ok(TermStream::log_difference()),
        _ => {
            if let Some(p) = name.strip_prefix("altpower:") {
                let p: f64 = p
                    .parse()
                    .map_err(|_| format!("bad exponent in series {name:?}"))?;
                Ok(TermStream::alternating_reciprocal_power(Complex64::new(
                    p, 0.0,
                )))
            } else {
                Err(format!(
                    "unknown series {name:?}; expected altharmonic, harmonic, logdiff, or altpower:P"
                ))
            }
        }
    }
}

pub fn run(args: &RearrangeArgs, _cfg: &RunConfig) -> CmdResult {
    if args.target.is_some() == args.diverge.is_some() {
        return Err(CmdError::usage(
            "rearrange: pass exactly one of --target T, --diverge T1,T2,...",
        ));
    }
    let stream = make_stream(&args.series).map_err(|e| CmdError::usage(format!("rearrange: {e}")))?;
    let steps = args.steps.unwrap_or(100_000);
    if steps == 0 {
        return Err(CmdError::usage("rearrange: --steps must be positive"));
    }
    let horizon = args.horizon.unwrap_or((steps as u64).saturating_mul(4));
    let every = args.every.unwrap_or(1).max(1);
    let split = split_by_sign(&stream, horizon)
        .map_err(|e| CmdError::usage(format!("rearrange: {e}")))?;

    if let Some(target) = args.target {
        let plan = rearrange_to_target(&split, target, steps)
            .map_err(|e| CmdError::usage(format!("rearrange: {e}")))?;
        let mut report = Report::new(vec!["step", "index", "term", "partial_sum", "event"]);
        let switch_steps: std::collections::BTreeSet<usize> =
            plan.switches.iter().map(|sw| sw.step).collect();
        let indices = plan.trace.indices();
        let sums = plan.trace.sums();
        for (step, (&index, sum)) in indices.iter().zip(sums).enumerate() {
            let is_switch = switch_steps.contains(&step);
            if step % every != 0 && !is_switch && step + 1 != indices.len() {
                continue;
            }
            report.push_row(vec![
                Cell::from(step),
                Cell::from(index),
                Cell::from(stream.term(index).re),
                Cell::from(sum.re),
                Cell::from(if is_switch { "switch" } else { "" }),
            ]);
        }

        let final_sum = plan.final_sum();
        let abs_error = (final_sum - target).abs();
        // |sum - target| <= |crossing term| must hold at every switch
        let invariant = plan
            .switches
            .iter()
            .all(|sw| (sw.sum - target).abs() <= sw.crossing_term.abs() + 1e-15);
        let last_bound = plan
            .switches
            .last()
            .map(|sw| sw.crossing_term.abs())
            .or_else(|| indices.last().map(|&i| stream.term(i).re.abs()));

        report.add_summary("series", args.series.clone());
        report.add_summary("target", target);
        report.add_summary("steps", steps);
        report.add_summary("horizon", horizon);
        report.add_summary("final_sum", final_sum);
        report.add_summary("abs_error", abs_error);
        report.add_summary("switches", plan.switches.len());
        report.add_summary("last_crossing_term", last_bound);
        report.add_check("crossing-invariant", invariant);
        report.add_check(
            "final-within-last-crossing",
            last_bound.is_some_and(|b| abs_error <= b),
        );
        return Ok(report);
    }

    let thresholds = parse_f64_list(args.diverge.as_deref().unwrap())
        .map_err(|e| CmdError::usage(format!("rearrange: {e}")))?;
    let plan = rearrange_to_diverge(&split, &thresholds, steps)
        .map_err(|e| CmdError::usage(format!("rearrange: {e}")))?;
    let mut report = Report::new(vec![
        "step", "index", "term", "partial_sum", "threshold", "reached",
    ]);
    let crossing_at: std::collections::BTreeMap<usize, f64> = plan
        .crossings
        .iter()
        .map(|c| (c.step, c.threshold))
        .collect();
    let indices = plan.trace.indices();
    let sums = plan.trace.sums();
    for (step, (&index, sum)) in indices.iter().zip(sums).enumerate() {
        let crossed = crossing_at.get(&step);
        if step % every != 0 && crossed.is_none() && step + 1 != indices.len() {
            continue;
        }
        report.push_row(vec![
            Cell::from(step),
            Cell::from(index),
            Cell::from(stream.term(index).re),
            Cell::from(sum.re),
            crossed.copied().into(),
            Cell::from(if crossed.is_some() { "reached" } else { "" }),
        ]);
    }

    report.add_summary("series", args.series.clone());
    report.add_summary("steps", steps);
    report.add_summary("horizon", horizon);
    report.add_summary("steps_used", plan.trace.consumed_count());
    report.add_summary("final_sum", plan.final_sum());
    report.add_summary("thresholds", thresholds.len());
    report.add_summary("crossings", plan.crossings.len());
    report.add_summary("complete", plan.complete);
    report.add_check(
        "all-thresholds-reached",
        plan.complete && plan.crossings.len() == thresholds.len(),
    );
    Ok(report)
}
