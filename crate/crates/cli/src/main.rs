//! zetalab command-line laboratory.
//!
//! Exit codes: 0 on success, 1 when a report's invariant checks fail,
//! 2 on usage or domain errors.

// validation uses !(x > 0) instead of x <= 0 so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{contour, gamma, rearrange, renorm, zeta, CmdError};
use config::RunConfig;
use report::Format;
use zetalab::zeta::ZetaMethod;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Dirichlet,
    Eta,
    Functional,
}

impl From<MethodArg> for ZetaMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dirichlet => ZetaMethod::DirichletSeries,
            MethodArg::Eta => ZetaMethod::EtaThirdDefinition,
            MethodArg::Functional => ZetaMethod::FunctionalEquation,
        }
    }
}

#[derive(Parser)]
#[command(name = "zetalab", version, about = "numerical laboratory for series, Gamma, zeta, and scheme factors", disable_help_subcommand = true)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for sampled suites
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// key=value config file applied between defaults and flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler constant, Gamma limit/product forms, digamma asymptotic
    Gamma {
        /// Approximate the Euler constant by all three series/limit forms
        #[arg(long)]
        euler: bool,
        /// Evaluate Gamma(x) by the Gauss limit and the Weierstrass product
        #[arg(long, allow_hyphen_values = true)]
        at: Option<f64>,
        /// Evaluate the near-origin digamma asymptotic at z (real, |z| <= 1/2)
        #[arg(long, allow_hyphen_values = true)]
        digamma: Option<f64>,
        /// Truncation index
        #[arg(long)]
        n: Option<u64>,
    },
    /// Zeta engines: point evaluation, agreement grid, zero scan, sampling
    Zeta {
        /// Evaluate at s (forms: "2", "0.5,14.1", "1.5+2i")
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<String>,
        /// Engines for --eval (default: all three)
        #[arg(long, value_enum, value_delimiter = ',')]
        method: Vec<MethodArg>,
        /// Agreement grid over two axes, each lo:hi:step
        #[arg(long, num_args = 2, allow_hyphen_values = true)]
        grid: Option<Vec<String>>,
        /// Scan the critical line for sign-change brackets
        #[arg(long)]
        zeros: bool,
        /// Scan ceiling for --zeros (default 26)
        #[arg(long)]
        tmax: Option<f64>,
        /// Bracket width target for --zeros
        #[arg(long)]
        tol: Option<f64>,
        /// Run the seeded sampled invariant suites with N points each
        #[arg(long)]
        sample: Option<usize>,
        /// Dirichlet truncation for --eval
        #[arg(long)]
        terms: Option<usize>,
        /// Extra acceleration depth for the alternating engine
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Greedy rearrangements of conditionally convergent series
    Rearrange {
        /// altharmonic, harmonic, logdiff, or altpower:P
        #[arg(long)]
        series: String,
        /// Steer the rearranged sum to this value
        #[arg(long, allow_hyphen_values = true)]
        target: Option<f64>,
        /// March past these increasing thresholds instead
        #[arg(long, allow_hyphen_values = true)]
        diverge: Option<String>,
        /// Schedule length (default 100000)
        #[arg(long)]
        steps: Option<usize>,
        /// How many leading terms to split by sign (default 4 * steps)
        #[arg(long)]
        horizon: Option<u64>,
        /// Keep every K-th trace row (switch/crossing rows always kept)
        #[arg(long)]
        every: Option<usize>,
    },
    /// Loop-integral zeta engine and circle-term decay
    Contour {
        /// Evaluation point (forms: "1.5", "0.5,1", "1.5+2i")
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Tabulate the circle-term magnitude over --deltas instead
        #[arg(long)]
        decay: bool,
        /// Circle radii for --decay, strictly decreasing in (0, 1)
        #[arg(long)]
        deltas: Option<String>,
        /// Evaluate the real-axis integral form instead
        #[arg(long)]
        mellin: bool,
        /// Circle radius
        #[arg(long)]
        delta: Option<f64>,
        /// Ray offset above/below the axis
        #[arg(long)]
        offset: Option<f64>,
        /// Ray truncation
        #[arg(long)]
        xmax: Option<f64>,
        /// Quadrature nodes per ray
        #[arg(long)]
        nodes_ray: Option<usize>,
        /// Quadrature nodes on the circle
        #[arg(long)]
        nodes_circle: Option<usize>,
        /// Quadrature nodes for --mellin
        #[arg(long)]
        nodes: Option<usize>,
    },
    /// Coupling bookkeeping in d = 4 - 2 eps and scheme comparisons
    Renorm {
        /// Epsilon (a comma list with --scheme-table)
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        /// Reference scale
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        /// Bare charge
        #[arg(long, default_value_t = 1.0)]
        e0: f64,
        /// Scheme factor: all, exp-gamma-eps, gamma-one-plus, inv-gamma-one-minus
        #[arg(long)]
        factor: Option<String>,
        /// Tabulate pairwise factor gaps and their log-log slopes
        #[arg(long)]
        scheme_table: bool,
        /// Convert to alpha and back, reporting the defect
        #[arg(long)]
        roundtrip: bool,
        /// Coupling renormalization constant for --roundtrip
        #[arg(long, default_value_t = 1.0)]
        zalpha: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        if let Err(e) = cfg.load_file(path) {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    if let Some(format) = cli.format {
        cfg.format = match format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }

    let command_echo = std::env::args().collect::<Vec<_>>().join(" ");

    let outcome = match &cli.command {
        Command::Gamma {
            euler,
            at,
            digamma,
            n,
        } => gamma::run(
            &gamma::GammaArgs {
                euler: *euler,
                at: *at,
                digamma: *digamma,
                n: *n,
            },
            &cfg,
        ),
        Command::Zeta {
            eval,
            method,
            grid,
            zeros,
            tmax,
            tol,
            sample,
            terms,
            depth,
        } => zeta::run(
            &zeta::ZetaArgs {
                eval: eval.clone(),
                methods: method.iter().map(|&m| m.into()).collect(),
                grid: grid.clone(),
                zeros: *zeros,
                tmax: *tmax,
                tol: *tol,
                sample: *sample,
                terms: *terms,
                depth: *depth,
            },
            &cfg,
        ),
        Command::Rearrange {
            series,
            target,
            diverge,
            steps,
            horizon,
            every,
        } => rearrange::run(
            &rearrange::RearrangeArgs {
                series: series.clone(),
                target: *target,
                diverge: diverge.clone(),
                steps: *steps,
                horizon: *horizon,
                every: *every,
            },
            &cfg,
        ),
        Command::Contour {
            s,
            decay,
            deltas,
            mellin,
            delta,
            offset,
            xmax,
            nodes_ray,
            nodes_circle,
            nodes,
        } => contour::run(
            &contour::ContourArgs {
                s: s.clone(),
                decay: *decay,
                deltas: deltas.clone(),
                mellin: *mellin,
                delta: *delta,
                offset: *offset,
                xmax: *xmax,
                nodes_ray: *nodes_ray,
                nodes_circle: *nodes_circle,
                nodes: *nodes,
            },
            &cfg,
        ),
        Command::Renorm {
            eps,
            mu,
            e0,
            factor,
            scheme_table,
            roundtrip,
            zalpha,
        } => renorm::run(
            &renorm::RenormArgs {
                eps: eps.clone(),
                mu: *mu,
                e0: *e0,
                factor: factor.clone(),
                scheme_table: *scheme_table,
                roundtrip: *roundtrip,
                zalpha: *zalpha,
            },
            &cfg,
        ),
    };

    match outcome {
        Ok(report) => {
            let rendered = report.render(cfg.format, &command_echo, cfg.seed);
            if let Err(e) = report::emit(&rendered, cfg.out.as_deref()) {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            let failed = report.failed_checks();
            if failed > 0 {
                eprintln!("error: {failed} invariant check(s) failed");
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(CmdError { message, report }) => {
            if let Some(report) = report {
                let rendered = report.render(cfg.format, &command_echo, cfg.seed);
                if let Err(e) = report::emit(&rendered, cfg.out.as_deref()) {
                    eprintln!("error: cannot write report: {e}");
                }
            }
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
