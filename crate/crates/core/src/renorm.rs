//! Renormalization-scale bookkeeping in dimensional regularization
//! (d = 4 - 2 epsilon) and the family of minimal-subtraction scheme
//! factors e^(-gamma eps), Gamma(1 + eps), 1/Gamma(1 - eps).
//!
//! The three factors agree to first order in epsilon; their pairwise
//! differences open up at order epsilon^2, which is what
//! [`scheme_divergence`] measures.

use std::fmt;

use num_complex::Complex;

use crate::gamma::{euler_gamma_precise, log_gamma};
use crate::{t, FloatScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenormError {
    InvalidParameter(&'static str),
}

impl fmt::Display for RenormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenormError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl std::error::Error for RenormError {}

/// Scale, regulator, and bare-charge inputs. The spacetime dimension is
/// derived, never stored, so d + 2 epsilon = 4 holds identically.
#[derive(Clone, Copy, Debug)]
pub struct RenormParams<T: FloatScalar> {
    mu: T,
    epsilon: T,
    e0: T,
}

impl<T: FloatScalar> RenormParams<T> {
    pub fn new(mu: T, epsilon: T, e0: T) -> Result<Self, RenormError> {
        if !(mu > T::zero()) || !mu.is_finite() {
            return Err(RenormError::InvalidParameter("mu must be finite and > 0"));
        }
        if !(epsilon.abs() < t::<T>(0.5)) {
            return Err(RenormError::InvalidParameter("|epsilon| must be < 1/2"));
        }
        if !e0.is_finite() {
            return Err(RenormError::InvalidParameter("e0 must be finite"));
        }
        Ok(RenormParams { mu, epsilon, e0 })
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn e0(&self) -> T {
        self.e0
    }

    /// Spacetime dimension 4 - 2 epsilon.
    pub fn d(&self) -> T {
        t::<T>(4.0) - t::<T>(2.0) * self.epsilon
    }
}

/// The three interchangeable subtraction-scheme factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeFactor {
    /// e^(-gamma epsilon)
    ExpGammaEps,
    /// Gamma(1 + epsilon)
    GammaOnePlus,
    /// 1 / Gamma(1 - epsilon)
    InvGammaOneMinus,
}

impl SchemeFactor {
    pub const ALL: [SchemeFactor; 3] = [
        SchemeFactor::ExpGammaEps,
        SchemeFactor::GammaOnePlus,
        SchemeFactor::InvGammaOneMinus,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SchemeFactor::ExpGammaEps => "exp-gamma-eps",
            SchemeFactor::GammaOnePlus => "gamma-one-plus",
            SchemeFactor::InvGammaOneMinus => "inv-gamma-one-minus",
        }
    }

    /// Evaluate the factor at `epsilon` (|epsilon| < 1/2 keeps the Gamma
    /// arguments away from the poles). All three are exactly 1 at zero.
    pub fn eval<T: FloatScalar>(self, epsilon: T) -> T {
        if epsilon.is_zero() {
            return T::one();
        }
        let gamma_arg = |x: T| Complex::new(x, T::zero());
        match self {
            SchemeFactor::ExpGammaEps => (-euler_gamma_precise::<T>() * epsilon).exp(),
            SchemeFactor::GammaOnePlus => log_gamma(gamma_arg(T::one() + epsilon))
                .expect("1 + eps stays off the poles for |eps| < 1/2")
                .exp()
                .re,
            SchemeFactor::InvGammaOneMinus => (-log_gamma(gamma_arg(T::one() - epsilon))
                .expect("1 - eps stays off the poles for |eps| < 1/2"))
            .exp()
            .re,
        }
    }
}

/// alpha(mu)/4pi = mu^(-2 eps) e0^2 / (4 pi)^(d/2) * factor(eps).
pub fn alpha_from_bare<T: FloatScalar>(p: &RenormParams<T>, factor: SchemeFactor) -> T {
    let four_pi = t::<T>(4.0) * T::PI();
    let bare = p.e0 * p.e0 / four_pi.powf(p.d() / t::<T>(2.0));
    p.mu.powf(-t::<T>(2.0) * p.epsilon) * bare * factor.eval(p.epsilon)
}

/// Inverse relation: e0^2/(4 pi)^(d/2) = mu^(2 eps) * alpha/4pi * Z_alpha /
/// factor(eps). `z_alpha` is the caller-supplied coupling renormalization
/// (1 at tree level).
pub fn bare_from_alpha<T: FloatScalar>(
    alpha_over_4pi: T,
    p: &RenormParams<T>,
    z_alpha: T,
    factor: SchemeFactor,
) -> Result<T, RenormError> {
    if !(z_alpha > T::zero()) || !z_alpha.is_finite() {
        return Err(RenormError::InvalidParameter(
            "z_alpha must be finite and > 0",
        ));
    }
    Ok(p.mu.powf(t::<T>(2.0) * p.epsilon) * alpha_over_4pi * z_alpha / factor.eval(p.epsilon))
}

/// Pairwise scheme-factor gaps at each requested epsilon, with log-log
/// slopes fitted over the positive entries.
#[derive(Clone, Debug)]
pub struct SchemeDivergenceTable<T: FloatScalar> {
    pub epsilons: Vec<T>,
    /// Per epsilon: |f_i - f_j| for the pairs named by [`Self::PAIRS`].
    pub differences: Vec<[T; 3]>,
    /// Fitted log-log slope of each column over epsilon > 0, when at least
    /// two usable points exist. The factors agree through first order, so
    /// the slopes sit near 2.
    pub slopes: [Option<T>; 3],
}

impl<T: FloatScalar> SchemeDivergenceTable<T> {
    pub const PAIRS: [&'static str; 3] = [
        "exp-gamma-eps|gamma-one-plus",
        "exp-gamma-eps|inv-gamma-one-minus",
        "gamma-one-plus|inv-gamma-one-minus",
    ];
}

fn fit_slope<T: FloatScalar>(points: &[(T, T)]) -> Option<T> {
    if points.len() < 2 {
        return None;
    }
    let n = t::<T>(points.len() as f64);
    let mut sx = T::zero();
    let mut sy = T::zero();
    for &(x, y) in points {
        sx = sx + x;
        sy = sy + y;
    }
    let (mx, my) = (sx / n, sy / n);
    let mut sxy = T::zero();
    let mut sxx = T::zero();
    for &(x, y) in points {
        sxy = sxy + (x - mx) * (y - my);
        sxx = sxx + (x - mx) * (x - mx);
    }
    if sxx == T::zero() {
        return None;
    }
    Some(sxy / sxx)
}

pub fn scheme_divergence<T: FloatScalar>(
    epsilons: &[T],
) -> Result<SchemeDivergenceTable<T>, RenormError> {
    if epsilons.iter().any(|e| !(e.abs() < t::<T>(0.5))) {
        return Err(RenormError::InvalidParameter("each |epsilon| must be < 1/2"));
    }
    let mut differences = Vec::with_capacity(epsilons.len());
    let mut logs: [Vec<(T, T)>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for &eps in epsilons {
        let f: Vec<T> = SchemeFactor::ALL.iter().map(|s| s.eval(eps)).collect();
        let row = [
            (f[0] - f[1]).abs(),
            (f[0] - f[2]).abs(),
            (f[1] - f[2]).abs(),
        ];
        for (col, &d) in row.iter().enumerate() {
            if eps > T::zero() && d > T::zero() {
                logs[col].push((eps.ln(), d.ln()));
            }
        }
        differences.push(row);
    }
    let slopes = [
        fit_slope(&logs[0]),
        fit_slope(&logs[1]),
        fit_slope(&logs[2]),
    ];
    Ok(SchemeDivergenceTable {
        epsilons: epsilons.to_vec(),
        differences,
        slopes,
    })
}
