//! Three independent Riemann zeta evaluators plus critical-line zero
//! bracketing.
//!
//! * [`zeta_dirichlet`]: the defining series, tail-corrected, valid only for
//!   Re(s) > 1; elsewhere it reports a divergence verdict and no value.
//! * [`zeta_eta`]: the alternating (eta) series accelerated with the
//!   Cohen-Villegas-Zagier binomial scheme, divided by the prefactor
//!   (1 - 2^(1-s)); valid for Re(s) > 0 away from s = 1 and the prefactor's
//!   zero lattice.
//! * [`zeta_functional`]: reflection through chi(s) = 2^s pi^(s-1)
//!   sin(pi s/2) Gamma(1-s) for Re(s) < 1/2, delegation to the eta engine
//!   otherwise.
//!
//! Every result carries the verdict of the underlying series at that point,
//! so a caller can always distinguish "the series converges to this" from
//! "this is the continued value; the series itself diverges here".

use std::fmt;

use num_complex::Complex;

use crate::gamma::{log_gamma, GammaError};
use crate::kahan::{KahanComplex, KahanSum};
use crate::series::{
    dirichlet_domain_verdict, recip_pow, ConvergenceClass, ConvergenceTest, ConvergenceVerdict,
    Evidence,
};
use crate::{t, tu, FloatScalar};

/// Which engine produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaMethod {
    DirichletSeries,
    EtaThirdDefinition,
    FunctionalEquation,
    HankelContour,
}

impl ZetaMethod {
    pub fn label(self) -> &'static str {
        match self {
            ZetaMethod::DirichletSeries => "dirichlet",
            ZetaMethod::EtaThirdDefinition => "eta",
            ZetaMethod::FunctionalEquation => "functional",
            ZetaMethod::HankelContour => "contour",
        }
    }
}

/// A zeta evaluation: value (when the method can produce one), an error
/// estimate, and the convergence verdict of the series at that point.
///
/// `value` is `None` exactly when the method is out of its domain; the
/// series engines additionally leave it `None` wherever the series verdict
/// is Divergent. `error_estimate` is positive infinity for valueless
/// results.
#[derive(Clone, Debug)]
pub struct EvalResult<T: FloatScalar> {
    pub s: Complex<T>,
    pub value: Option<Complex<T>>,
    pub error_estimate: T,
    pub method: ZetaMethod,
    pub verdict: ConvergenceVerdict<T>,
}

/// Errors from the zeta engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaError {
    /// s = 1, the pole of zeta.
    PoleAtOne,
    /// The eta identity's prefactor 1 - 2^(1-s) vanishes near this point;
    /// the singularity is removable but this engine cannot cross it.
    EtaPrefactorSingularity,
    InvalidParameter(&'static str),
}

impl fmt::Display for ZetaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaError::PoleAtOne => write!(f, "zeta has a pole at s = 1"),
            ZetaError::EtaPrefactorSingularity => write!(
                f,
                "eta prefactor 1 - 2^(1-s) vanishes here (removable singularity \
                 of the identity); use the functional-equation method instead"
            ),
            ZetaError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl std::error::Error for ZetaError {}

pub(crate) fn absolute_verdict<T: FloatScalar>(sigma: T) -> ConvergenceVerdict<T> {
    ConvergenceVerdict::new(
        ConvergenceClass::Absolute,
        Evidence {
            test: ConvergenceTest::IntegralComparison,
            bound: Some(sigma),
            growth_record: None,
        },
    )
}

fn conditional_verdict<T: FloatScalar>() -> ConvergenceVerdict<T> {
    ConvergenceVerdict::new(
        ConvergenceClass::Conditional,
        Evidence {
            test: ConvergenceTest::CoefficientBound,
            bound: Some(t(2.0)),
            growth_record: None,
        },
    )
}

/// Zeta via the defining series, truncated at `n_terms` with the integral
/// tail N^(1-s)/(s-1) and the half-term -N^(-s)/2 added back.
///
/// Outside the convergence half-plane Re(s) > 1 the series defines nothing:
/// the result carries the divergence verdict and no value. The reported
/// error estimate is the coarse bound N^(-Re s); the corrected truncation
/// error is actually O(|s| N^(-Re s - 1)).
pub fn zeta_dirichlet<T: FloatScalar>(s: Complex<T>, n_terms: usize) -> EvalResult<T> {
    assert!(n_terms >= 1, "term count must be >= 1");
    let verdict = dirichlet_domain_verdict(s);
    if !(s.re > T::one()) {
        return EvalResult {
            s,
            value: None,
            error_estimate: T::infinity(),
            method: ZetaMethod::DirichletSeries,
            verdict,
        };
    }
    let n = n_terms as u64;
    let mut acc = KahanComplex::new();
    for k in 1..=n {
        acc.add(recip_pow(k, s));
    }
    let one = Complex::new(T::one(), T::zero());
    let nf = tu::<T>(n);
    // integral tail: N^(1-s)/(s-1); half-term: -N^(-s)/2
    let tail = recip_pow(n, s - one) / (s - one) - recip_pow(n, s) / t::<T>(2.0);
    let value = acc.value() + tail;
    EvalResult {
        s,
        value: Some(value),
        error_estimate: nf.powf(-s.re),
        method: ZetaMethod::DirichletSeries,
        verdict,
    }
}

/// Truncation index for [`zeta_dirichlet`] targeting absolute accuracy
/// `target` at `s` (Re(s) > 1); the corrected error is ~|s| N^(-Re s - 1)/12.
pub fn dirichlet_suggested_terms<T: FloatScalar>(s: Complex<T>, target: T) -> usize {
    let sigma = s.re.to_f64().unwrap_or(2.0).max(1.0001);
    let modulus = s.norm().to_f64().unwrap_or(1.0).max(1.0);
    let target = target.to_f64().unwrap_or(1e-9).max(1e-15);
    let n = (modulus / (12.0 * target)).powf(1.0 / (sigma + 1.0));
    (n.ceil() as usize).clamp(64, 400_000)
}

/// Cohen-Villegas-Zagier acceleration of sum_{k>=1} (-1)^(k-1) k^(-s).
/// Returns the eta value and the magnitude scale of the summed terms (for
/// the roundoff floor of the error estimate).
fn eta_cvz<T: FloatScalar>(s: Complex<T>, n: usize) -> (Complex<T>, T) {
    let base = t::<T>(3.0) + t::<T>(8.0).sqrt();
    let mut d = base.powi(n as i32);
    d = (d + d.recip()) / t::<T>(2.0);
    let nf = t::<T>(n as f64);
    let mut b = -T::one();
    let mut c = -d;
    let mut acc = KahanComplex::new();
    let mut scale = KahanSum::new();
    for k in 0..n {
        let kf = t::<T>(k as f64);
        c = b - c;
        let term = recip_pow(k as u64 + 1, s) * c;
        acc.add(term);
        scale.add(term.norm());
        b = b * (kf + nf) * (kf - nf) / ((kf + t::<T>(0.5)) * (kf + T::one()));
    }
    (acc.value() / d, scale.value() / d)
}

/// Largest acceleration order whose weight (3+sqrt 8)^n stays finite in T.
fn eta_max_order<T: FloatScalar>() -> usize {
    let base = 3.0 + 8.0f64.sqrt();
    let max = T::max_value().to_f64().unwrap_or(f64::MAX);
    ((max.ln() / base.ln()) as usize).saturating_sub(2)
}

pub(crate) fn eta_engine<T: FloatScalar>(
    s: Complex<T>,
    depth: usize,
) -> Result<EvalResult<T>, ZetaError> {
    if s.re == T::one() && s.im == T::zero() {
        return Err(ZetaError::PoleAtOne);
    }
    let sigma = s.re;
    if sigma <= T::zero() {
        // the alternating series itself converges only for Re(s) > 0
        return Ok(EvalResult {
            s,
            value: None,
            error_estimate: T::infinity(),
            method: ZetaMethod::EtaThirdDefinition,
            verdict: ConvergenceVerdict::new(
                ConvergenceClass::OutOfDomain,
                Evidence {
                    test: ConvergenceTest::FamilyRule,
                    bound: None,
                    growth_record: None,
                },
            ),
        });
    }
    let one = Complex::new(T::one(), T::zero());
    let prefactor = one - (-(s - one) * t::<T>(std::f64::consts::LN_2)).exp();
    if prefactor.norm() < t::<T>(1e-6) {
        return Err(ZetaError::EtaPrefactorSingularity);
    }

    let abs_t = s.im.abs().to_f64().unwrap_or(0.0);
    let n = (32 + (1.1 * abs_t).ceil() as usize + depth).min(eta_max_order::<T>());
    let (eta, scale) = eta_cvz(s, n);
    let value = eta / prefactor;

    // convergence of the binomial scheme: ~ (3+sqrt 8)^-n, inflated by
    // e^(pi |t| / 2) off the real axis; floored at the roundoff of the sum
    let base_ln = t::<T>(3.0 + 8.0f64.sqrt()).ln();
    let exponent = T::FRAC_PI_2() * s.im.abs() - t::<T>(n as f64) * base_ln + t::<T>(8.0).ln();
    let max_ln = T::max_value().ln() - t::<T>(2.0);
    let accel_err = if exponent > max_ln {
        T::max_value() / t::<T>(4.0)
    } else {
        exponent.exp()
    };
    let floor = scale * T::epsilon() * t::<T>(4.0);
    let error_estimate = (accel_err + floor) / prefactor.norm();

    let verdict = if sigma > T::one() {
        absolute_verdict(sigma)
    } else {
        conditional_verdict()
    };
    Ok(EvalResult {
        s,
        value: Some(value),
        error_estimate,
        method: ZetaMethod::EtaThirdDefinition,
        verdict,
    })
}

/// Zeta from the alternating series: eta(s) / (1 - 2^(1-s)).
///
/// Contract: for 0.05 <= Re(s) <= 10 and |Im(s)| <= 100 the error estimate
/// stays below 1e-10 (binary64). For Re(s) <= 0 the result is out of domain
/// with no value; s = 1 and the prefactor zeros s = 1 + 2 pi i k / ln 2 are
/// errors.
pub fn zeta_eta<T: FloatScalar>(s: Complex<T>) -> Result<EvalResult<T>, ZetaError> {
    eta_engine(s, 0)
}

/// [`zeta_eta`] with `depth` extra acceleration orders on top of the
/// heuristic choice (subject to the overflow cap on the order).
pub fn zeta_eta_with_depth<T: FloatScalar>(
    s: Complex<T>,
    depth: usize,
) -> Result<EvalResult<T>, ZetaError> {
    eta_engine(s, depth)
}

/// log sin(pi s / 2), computed without overflow for large |Im(s)|.
fn log_sin_half<T: FloatScalar>(s: Complex<T>) -> Complex<T> {
    let one = T::one();
    if s.im > one {
        // sin w = (i/2) e^(-iw) (1 - e^(2iw)) with w = pi s / 2; the second
        // factor stays in the unit disc for Im w > 0
        let i = Complex::new(T::zero(), one);
        let w = s * T::FRAC_PI_2();
        let unit = Complex::new(one, T::zero());
        Complex::new(-t::<T>(std::f64::consts::LN_2), T::FRAC_PI_2()) - i * w
            + (unit - (i * w * t::<T>(2.0)).exp()).ln()
    } else if s.im < -one {
        log_sin_half(s.conj()).conj()
    } else {
        (s * T::FRAC_PI_2()).sin().ln()
    }
}

/// log of chi(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s), the reflection
/// factor of the functional equation. The imaginary part is continuous only
/// locally; callers tracking the argument along a path must unwrap modulo
/// 2 pi themselves.
pub(crate) fn log_chi<T: FloatScalar>(s: Complex<T>) -> Result<Complex<T>, GammaError> {
    let one = Complex::new(T::one(), T::zero());
    let ln2 = t::<T>(std::f64::consts::LN_2);
    let lnpi = T::PI().ln();
    Ok(s * ln2 + (s - one) * lnpi + log_sin_half(s) + log_gamma(one - s)?)
}

/// Zeta by reflection: chi(s) zeta(1-s) for Re(s) < 1/2, delegation to the
/// eta engine for Re(s) >= 1/2. `depth` adds acceleration order to every
/// underlying eta evaluation.
///
/// The trivial zeros at negative even integers come out exactly zero (the
/// sin factor vanishes identically there), and s = 0 evaluates to the limit
/// value of the 0 times pole product.
pub fn zeta_functional<T: FloatScalar>(
    s: Complex<T>,
    depth: usize,
) -> Result<EvalResult<T>, ZetaError> {
    if s.re == T::one() && s.im == T::zero() {
        return Err(ZetaError::PoleAtOne);
    }
    let half = t::<T>(0.5);
    if s.re >= half {
        let mut r = eta_engine(s, depth)?;
        r.method = ZetaMethod::FunctionalEquation;
        return Ok(r);
    }

    let verdict = dirichlet_domain_verdict(s);
    if s.re == T::zero() && s.im == T::zero() {
        // chi(s) ~ s/2 and zeta(1-s) ~ -1/s as s -> 0; the product tends to
        // -1/2 (the continued value at the origin)
        return Ok(EvalResult {
            s,
            value: Some(Complex::new(-half, T::zero())),
            error_estimate: T::epsilon() * t::<T>(4.0),
            method: ZetaMethod::FunctionalEquation,
            verdict,
        });
    }

    let one = Complex::new(T::one(), T::zero());
    let reflected = eta_engine(one - s, depth)?;
    let zeta_reflected = reflected
        .value
        .expect("1 - s has real part > 1/2, inside the eta domain");

    // Gamma(1-s) cannot hit a pole here: Re(1-s) > 1/2
    let half_re = s.re / t::<T>(2.0);
    if s.im == T::zero() && s.re < T::zero() && half_re.fract() == T::zero() {
        // trivial zero: sin(pi s / 2) = 0 exactly
        let rest = (s * t::<T>(std::f64::consts::LN_2) + (s - one) * T::PI().ln()
            + log_gamma(one - s).expect("no pole for Re(1-s) > 1/2"))
        .exp();
        let scale = rest.norm() * zeta_reflected.norm();
        return Ok(EvalResult {
            s,
            value: Some(Complex::new(T::zero(), T::zero())),
            error_estimate: scale * T::epsilon() * t::<T>(8.0),
            method: ZetaMethod::FunctionalEquation,
            verdict,
        });
    }

    let chi = log_chi(s)
        .expect("no Gamma pole for Re(1-s) > 1/2")
        .exp();
    let value = chi * zeta_reflected;
    let error_estimate =
        chi.norm() * reflected.error_estimate + value.norm() * T::epsilon() * t::<T>(64.0);
    Ok(EvalResult {
        s,
        value: Some(value),
        error_estimate,
        method: ZetaMethod::FunctionalEquation,
        verdict,
    })
}

/// A sign-change bracket of the real-rotated zeta on the critical line.
#[derive(Clone, Copy, Debug)]
pub struct ZeroBracket<T: FloatScalar> {
    pub t_low: T,
    pub t_high: T,
    /// Witness values of the rotated function at the bracket ends; they have
    /// opposite signs.
    pub z_low: T,
    pub z_high: T,
}

/// Rotated critical-line value Z(t) = Re[e^(i theta) zeta(1/2 + it)], where
/// theta is minus half the continuously tracked argument of chi(1/2 + it).
/// `phi_anchor` is (raw, continuous) argument data at a nearby point.
fn rotated_z<T: FloatScalar>(
    tt: T,
    phi_anchor: (T, T),
) -> Result<(T, (T, T)), ZetaError> {
    let s = Complex::new(t::<T>(0.5), tt);
    let phi_raw = log_chi(s)
        .expect("no Gamma pole on the critical line")
        .im;
    let two_pi = T::PI() * t::<T>(2.0);
    let mut d = phi_raw - phi_anchor.0;
    d = d - two_pi * (d / two_pi).round();
    let phi_cont = phi_anchor.1 + d;
    let theta = -phi_cont / t::<T>(2.0);
    let zv = eta_engine(s, 0)?
        .value
        .expect("eta is defined on the critical line");
    let rotated = Complex::new(T::zero(), theta).exp() * zv;
    Ok((rotated.re, (phi_raw, phi_cont)))
}

/// Scan the critical line for sign changes of the rotated zeta and refine
/// each bracket by bisection to width <= tol.
///
/// Envelope: t_max <= 100 (the eta engine's accuracy contract) and
/// tol >= 1e-6. Returns the (possibly empty) bracket list in ascending
/// order; finding none is a result, not an error.
pub fn find_critical_zeros<T: FloatScalar>(
    t_max: T,
    tol: T,
) -> Result<Vec<ZeroBracket<T>>, ZetaError> {
    if !(t_max > T::zero()) || t_max > t::<T>(100.0) {
        return Err(ZetaError::InvalidParameter("t_max must lie in (0, 100]"));
    }
    if !(tol >= t::<T>(1e-6)) {
        return Err(ZetaError::InvalidParameter("tol must be >= 1e-6"));
    }
    let step = t::<T>(0.05);
    // chi(1/2) = 1 exactly: the argument starts at zero
    let (mut z_prev, mut phi_prev) = rotated_z(T::zero(), (T::zero(), T::zero()))?;
    let mut t_prev = T::zero();
    let mut brackets = Vec::new();
    let mut k = 1u64;
    loop {
        let tt = (step * tu::<T>(k)).min(t_max);
        let (z, phi) = rotated_z(tt, phi_prev)?;
        if z_prev * z < T::zero() {
            // bisection; argument tracking re-anchored at each kept endpoint
            let mut lo = (t_prev, z_prev, phi_prev);
            let mut hi = (tt, z);
            while hi.0 - lo.0 > tol {
                let mid = (lo.0 + hi.0) / t::<T>(2.0);
                let (zm, phim) = rotated_z(mid, lo.2)?;
                if zm * lo.1 > T::zero() {
                    lo = (mid, zm, phim);
                } else {
                    hi = (mid, zm);
                }
            }
            brackets.push(ZeroBracket {
                t_low: lo.0,
                t_high: hi.0,
                z_low: lo.1,
                z_high: hi.1,
            });
        }
        if tt >= t_max {
            break;
        }
        t_prev = tt;
        z_prev = z;
        phi_prev = phi;
        k += 1;
    }
    Ok(brackets)
}

/// One axis of an evaluation grid: nodes lo, lo+step, ..., up to hi.
#[derive(Clone, Copy, Debug)]
pub struct Axis<T: FloatScalar> {
    pub lo: T,
    pub hi: T,
    pub step: T,
}

impl<T: FloatScalar> Axis<T> {
    pub fn new(lo: T, hi: T, step: T) -> Result<Self, ZetaError> {
        if !(step > T::zero()) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(ZetaError::InvalidParameter(
                "axis needs finite lo <= hi and step > 0",
            ));
        }
        Ok(Axis { lo, hi, step })
    }

    fn nodes(&self) -> Vec<T> {
        let count = ((self.hi - self.lo) / self.step + t::<T>(1e-9))
            .to_f64()
            .unwrap_or(0.0)
            .floor() as usize
            + 1;
        (0..count)
            .map(|k| self.lo + self.step * t::<T>(k as f64))
            .collect()
    }
}

/// All three engines at one grid point, plus the largest pairwise
/// disagreement among the values actually produced.
#[derive(Clone, Debug)]
pub struct GridPoint<T: FloatScalar> {
    pub s: Complex<T>,
    pub dirichlet: EvalResult<T>,
    pub eta: EvalResult<T>,
    pub functional: EvalResult<T>,
    pub max_pairwise_delta: Option<T>,
}

impl<T: FloatScalar> GridPoint<T> {
    pub fn results(&self) -> [&EvalResult<T>; 3] {
        [&self.dirichlet, &self.eta, &self.functional]
    }
}

/// Engine comparison over a rectangular grid.
#[derive(Clone, Debug)]
pub struct AgreementGrid<T: FloatScalar> {
    pub points: Vec<GridPoint<T>>,
    /// True when the node lattice was shifted by step/2 to dodge s = 1 or an
    /// eta prefactor zero.
    pub offset_applied: bool,
    pub max_pairwise_delta: Option<T>,
}

/// Result shell for a point where an engine reported an error (pole or
/// prefactor singularity): no value, no classification.
fn unavailable<T: FloatScalar>(s: Complex<T>, method: ZetaMethod) -> EvalResult<T> {
    EvalResult {
        s,
        value: None,
        error_estimate: T::infinity(),
        method,
        verdict: ConvergenceVerdict::new(
            ConvergenceClass::Inconclusive,
            Evidence {
                test: ConvergenceTest::Unclassified,
                bound: None,
                growth_record: None,
            },
        ),
    }
}

/// Evaluate all three engines over the rectangle and record pairwise
/// disagreements. Row-major: the real axis varies in the outer loop.
///
/// If a lattice node would land on s = 1 or on an eta prefactor zero, the
/// whole real-axis lattice is shifted by step/2 so every point is evaluable.
pub fn agreement_grid<T: FloatScalar>(
    re_axis: Axis<T>,
    im_axis: Axis<T>,
) -> Result<AgreementGrid<T>, ZetaError> {
    let mut re_nodes = re_axis.nodes();
    let im_nodes = im_axis.nodes();

    let lattice_spacing = T::PI() * t::<T>(2.0) / t::<T>(std::f64::consts::LN_2);
    let near = re_axis.step * t::<T>(1e-6);
    let collides = |re_nodes: &[T]| {
        re_nodes.iter().any(|&re| {
            if (re - T::one()).abs() > near {
                return false;
            }
            im_nodes.iter().any(|&im| {
                let k = (im / lattice_spacing).round();
                (im - k * lattice_spacing).abs() <= near
            })
        })
    };
    let offset_applied = collides(&re_nodes);
    if offset_applied {
        let half = re_axis.step / t::<T>(2.0);
        for re in &mut re_nodes {
            *re = *re + half;
        }
    }

    let mut points = Vec::with_capacity(re_nodes.len() * im_nodes.len());
    let mut grid_max: Option<T> = None;
    for &re in &re_nodes {
        for &im in &im_nodes {
            let s = Complex::new(re, im);
            let dirichlet = zeta_dirichlet(s, dirichlet_suggested_terms(s, t::<T>(1e-9)));
            let eta =
                eta_engine(s, 0).unwrap_or_else(|_| unavailable(s, ZetaMethod::EtaThirdDefinition));
            let functional = zeta_functional(s, 0)
                .unwrap_or_else(|_| unavailable(s, ZetaMethod::FunctionalEquation));

            let values: Vec<Complex<T>> = [&dirichlet, &eta, &functional]
                .iter()
                .filter_map(|r| r.value)
                .collect();
            let mut max_delta: Option<T> = None;
            for i in 0..values.len() {
                for j in (i + 1)..values.len() {
                    let d = (values[i] - values[j]).norm();
                    max_delta = Some(max_delta.map_or(d, |m| m.max(d)));
                }
            }
            if let Some(d) = max_delta {
                grid_max = Some(grid_max.map_or(d, |m| m.max(d)));
            }
            points.push(GridPoint {
                s,
                dirichlet,
                eta,
                functional,
                max_pairwise_delta: max_delta,
            });
        }
    }
    Ok(AgreementGrid {
        points,
        offset_applied,
        max_pairwise_delta: grid_max,
    })
}
