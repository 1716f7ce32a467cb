//! Term streams, partial-sum traces, and convergence classification.
//!
//! A [`TermStream`] is a pure map from a 1-based index to a term value. The
//! built-in families cover the reciprocal powers n^-s, their alternating
//! variant (-1)^(n-1) n^-s, and the logarithmic-difference terms
//! 1/n - log(1 + 1/n) whose full sum is the Euler-Mascheroni constant.
//!
//! Classification distinguishes absolute convergence, conditional
//! convergence, divergence, and out-of-domain parameters; anything the
//! implemented tests cannot settle is reported as [`ConvergenceClass::Inconclusive`],
//! never guessed. The boundary line Re(s) = 1 of the reciprocal-power family
//! is classified divergent everywhere: the series converges at no point of
//! the line, even though it is the abscissa that convergence is usually named
//! after.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::kahan::KahanComplex;
use crate::{t, tu, FloatScalar};

/// Term families the laboratory knows how to classify analytically.
#[derive(Clone)]
pub enum TermKind<T: FloatScalar> {
    /// term(n) = n^-s
    ReciprocalPower { exponent: Complex<T> },
    /// term(n) = (-1)^(n-1) n^-s
    AlternatingReciprocalPower { exponent: Complex<T> },
    /// term(n) = 1/n - log(1 + 1/n); positive, summing to the Euler constant
    LogDifference,
    /// Arbitrary caller-supplied terms; classified only with a certificate.
    User(Arc<dyn Fn(u64) -> Complex<T> + Send + Sync>),
}

/// A deterministic stream of series terms indexed from 1.
#[derive(Clone)]
pub struct TermStream<T: FloatScalar> {
    kind: TermKind<T>,
}

impl<T: FloatScalar> fmt::Debug for TermStream<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TermKind::ReciprocalPower { exponent } => {
                write!(f, "TermStream(n^-({}+{}i))", exponent.re, exponent.im)
            }
            TermKind::AlternatingReciprocalPower { exponent } => {
                write!(f, "TermStream(+-n^-({}+{}i))", exponent.re, exponent.im)
            }
            TermKind::LogDifference => write!(f, "TermStream(1/n - log(1+1/n))"),
            TermKind::User(_) => write!(f, "TermStream(user)"),
        }
    }
}

/// n^-s evaluated as exp(-s log n); exact real result for real s.
pub(crate) fn recip_pow<T: FloatScalar>(n: u64, s: Complex<T>) -> Complex<T> {
    (-s * tu::<T>(n).ln()).exp()
}

impl<T: FloatScalar> TermStream<T> {
    pub fn reciprocal_power(exponent: Complex<T>) -> Self {
        TermStream {
            kind: TermKind::ReciprocalPower { exponent },
        }
    }

    pub fn alternating_reciprocal_power(exponent: Complex<T>) -> Self {
        TermStream {
            kind: TermKind::AlternatingReciprocalPower { exponent },
        }
    }

    pub fn log_difference() -> Self {
        TermStream {
            kind: TermKind::LogDifference,
        }
    }

    pub fn user<F>(f: F) -> Self
    where
        F: Fn(u64) -> Complex<T> + Send + Sync + 'static,
    {
        TermStream {
            kind: TermKind::User(Arc::new(f)),
        }
    }

    pub fn kind(&self) -> &TermKind<T> {
        &self.kind
    }

    /// Evaluate the term at 1-based index `n`. Pure: same index, same value.
    pub fn term(&self, n: u64) -> Complex<T> {
        assert!(n >= 1, "term indices are 1-based");
        match &self.kind {
            TermKind::ReciprocalPower { exponent } => recip_pow(n, *exponent),
            TermKind::AlternatingReciprocalPower { exponent } => {
                let v = recip_pow(n, *exponent);
                if n % 2 == 1 {
                    v
                } else {
                    -v
                }
            }
            TermKind::LogDifference => {
                let inv = T::one() / tu::<T>(n);
                // ln_1p keeps the ~1/(2n^2) difference fully significant
                Complex::new(inv - inv.ln_1p(), T::zero())
            }
            TermKind::User(f) => f(n),
        }
    }

    /// The term as a real number, if its imaginary part is exactly zero.
    pub fn real_term(&self, n: u64) -> Option<T> {
        let v = self.term(n);
        if v.im == T::zero() {
            Some(v.re)
        } else {
            None
        }
    }
}

/// Errors from partial-sum evaluation.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesError {
    /// A term evaluated to a non-finite value at the given index.
    TermEvaluation { index: u64 },
    /// A parameter outside the documented domain of the operation.
    InvalidParameter(&'static str),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::TermEvaluation { index } => {
                write!(f, "term evaluation failed (non-finite) at index {index}")
            }
            SeriesError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl std::error::Error for SeriesError {}

/// Running partial sums, paired with the original index of every term taken.
///
/// The index sequence is duplicate-free (a prefix of a permutation of the
/// naturals), so the trace doubles as the record of a rearrangement schedule.
#[derive(Clone, Debug)]
pub struct PartialSumTrace<T: FloatScalar> {
    indices: Vec<u64>,
    sums: Vec<Complex<T>>,
}

impl<T: FloatScalar> PartialSumTrace<T> {
    pub(crate) fn with_capacity(n: usize) -> Self {
        PartialSumTrace {
            indices: Vec::with_capacity(n),
            sums: Vec::with_capacity(n),
        }
    }

    pub(crate) fn push(&mut self, index: u64, sum: Complex<T>) {
        self.indices.push(index);
        self.sums.push(sum);
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn sums(&self) -> &[Complex<T>] {
        &self.sums
    }

    /// Number of terms consumed.
    pub fn consumed_count(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn last_sum(&self) -> Option<Complex<T>> {
        self.sums.last().copied()
    }
}

/// Partial sum of the first `count` terms in natural order, with full trace.
///
/// Every non-finite term value aborts the run and is reported with its index.
pub fn partial_sum<T: FloatScalar>(
    stream: &TermStream<T>,
    count: usize,
) -> Result<PartialSumTrace<T>, SeriesError> {
    let mut trace = PartialSumTrace::with_capacity(count);
    let mut acc = KahanComplex::new();
    for n in 1..=count as u64 {
        let term = stream.term(n);
        if !term.re.is_finite() || !term.im.is_finite() {
            return Err(SeriesError::TermEvaluation { index: n });
        }
        acc.add(term);
        trace.push(n, acc.value());
    }
    Ok(trace)
}

/// Mutually exclusive convergence classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvergenceClass {
    Absolute,
    Conditional,
    Divergent,
    OutOfDomain,
    Inconclusive,
}

impl ConvergenceClass {
    pub fn label(self) -> &'static str {
        match self {
            ConvergenceClass::Absolute => "absolute",
            ConvergenceClass::Conditional => "conditional",
            ConvergenceClass::Divergent => "divergent",
            ConvergenceClass::OutOfDomain => "out-of-domain",
            ConvergenceClass::Inconclusive => "inconclusive",
        }
    }
}

/// Which test produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvergenceTest {
    /// Comparison of |term(n)| with the integral of x^-p.
    IntegralComparison,
    /// Bounded partial sums of the coefficients with terms n^-s, Re(s) > 0.
    CoefficientBound,
    /// Harmonic series or a slower-decaying positive relative of it.
    HarmonicComparison,
    /// Terms do not tend to zero.
    TermsDoNotVanish,
    /// |partial sums| observed growing without bound along a sample.
    UnboundedPartialSums,
    /// Bounded oscillation on the boundary line of a power family.
    BoundedOscillation,
    /// Closed-form domain rule for a known family.
    FamilyRule,
    /// A caller-supplied decay certificate, spot-checked numerically.
    CertificateCheck,
    /// No implemented test applies.
    Unclassified,
}

impl ConvergenceTest {
    pub fn label(self) -> &'static str {
        match self {
            ConvergenceTest::IntegralComparison => "integral-comparison",
            ConvergenceTest::CoefficientBound => "coefficient-bound",
            ConvergenceTest::HarmonicComparison => "harmonic-comparison",
            ConvergenceTest::TermsDoNotVanish => "terms-do-not-vanish",
            ConvergenceTest::UnboundedPartialSums => "unbounded-partial-sums",
            ConvergenceTest::BoundedOscillation => "bounded-oscillation",
            ConvergenceTest::FamilyRule => "family-rule",
            ConvergenceTest::CertificateCheck => "certificate-check",
            ConvergenceTest::Unclassified => "unclassified",
        }
    }
}

/// Witness data accompanying a verdict.
#[derive(Clone, Debug)]
pub struct Evidence<T: FloatScalar> {
    pub test: ConvergenceTest,
    /// Test-specific bound: comparison exponent, coefficient bound K, ...
    pub bound: Option<T>,
    /// Sampled |partial sum| record for growth-based verdicts.
    pub growth_record: Option<Vec<T>>,
}

impl<T: FloatScalar> Evidence<T> {
    fn rule(test: ConvergenceTest) -> Self {
        Evidence {
            test,
            bound: None,
            growth_record: None,
        }
    }

    fn with_bound(test: ConvergenceTest, bound: T) -> Self {
        Evidence {
            test,
            bound: Some(bound),
            growth_record: None,
        }
    }
}

/// Outcome of classification: a class plus the evidence for it.
#[derive(Clone, Debug)]
pub struct ConvergenceVerdict<T: FloatScalar> {
    pub class: ConvergenceClass,
    pub evidence: Evidence<T>,
}

impl<T: FloatScalar> ConvergenceVerdict<T> {
    pub(crate) fn new(class: ConvergenceClass, evidence: Evidence<T>) -> Self {
        ConvergenceVerdict { class, evidence }
    }

    pub(crate) fn rule(class: ConvergenceClass, test: ConvergenceTest) -> Self {
        ConvergenceVerdict::new(class, Evidence::rule(test))
    }
}

/// A claim about a user-supplied stream that classification may verify.
#[derive(Clone, Copy, Debug)]
pub enum DecayCertificate<T: FloatScalar> {
    /// |term(n)| <= c n^-p with p > 1: absolute convergence by comparison.
    DominatedByPower { c: T, p: T },
    /// Signs alternate, magnitudes decrease to zero, magnitudes not summable:
    /// conditional convergence by the alternating-series test.
    AlternatingDecay,
}

/// Tunables for [`classify`].
#[derive(Clone, Copy, Debug)]
pub struct ClassifyParams<T: FloatScalar> {
    /// Number of leading terms sampled when a numeric spot-check is needed.
    pub probe_len: usize,
    /// Optional certificate for user-supplied streams.
    pub certificate: Option<DecayCertificate<T>>,
}

impl<T: FloatScalar> Default for ClassifyParams<T> {
    fn default() -> Self {
        ClassifyParams {
            probe_len: 64,
            certificate: None,
        }
    }
}

/// Convergence class of the series given by `stream`.
///
/// Known families are settled by the appropriate test with witness data;
/// user streams need a [`DecayCertificate`] that survives a numeric
/// spot-check over `probe_len` terms, otherwise the verdict is
/// `Inconclusive`. Never errors and never guesses.
pub fn classify<T: FloatScalar>(
    stream: &TermStream<T>,
    params: &ClassifyParams<T>,
) -> ConvergenceVerdict<T> {
    match stream.kind() {
        TermKind::ReciprocalPower { exponent } => classify_reciprocal_power(*exponent),
        TermKind::AlternatingReciprocalPower { exponent } => {
            classify_alternating_power(*exponent)
        }
        TermKind::LogDifference => {
            // 0 < 1/n - log(1+1/n) < 1/(2n^2): comparison with p = 2
            ConvergenceVerdict::new(
                ConvergenceClass::Absolute,
                Evidence::with_bound(ConvergenceTest::IntegralComparison, t(2.0)),
            )
        }
        TermKind::User(_) => classify_user(stream, params),
    }
}

fn classify_reciprocal_power<T: FloatScalar>(s: Complex<T>) -> ConvergenceVerdict<T> {
    let sigma = s.re;
    let one = T::one();
    if sigma > one {
        // integral test: integral of x^-sigma converges iff sigma > 1
        return ConvergenceVerdict::new(
            ConvergenceClass::Absolute,
            Evidence::with_bound(ConvergenceTest::IntegralComparison, sigma),
        );
    }
    if sigma <= T::zero() {
        return ConvergenceVerdict::new(
            ConvergenceClass::Divergent,
            Evidence::rule(ConvergenceTest::TermsDoNotVanish),
        );
    }
    if sigma == one {
        if s.im == T::zero() {
            return ConvergenceVerdict::new(
                ConvergenceClass::Divergent,
                Evidence::rule(ConvergenceTest::HarmonicComparison),
            );
        }
        // boundary line, Im != 0: divergent with bounded oscillating terms
        return ConvergenceVerdict::new(
            ConvergenceClass::Divergent,
            Evidence::rule(ConvergenceTest::BoundedOscillation),
        );
    }
    // 0 < sigma < 1: |S_N| ~ N^(1-sigma)/|1-s| grows without bound
    let growth = sample_abs_partial_sums(&TermStream::reciprocal_power(s), &[10, 100, 1000, 10000]);
    ConvergenceVerdict::new(
        ConvergenceClass::Divergent,
        Evidence {
            test: ConvergenceTest::UnboundedPartialSums,
            bound: None,
            growth_record: Some(growth),
        },
    )
}

fn classify_alternating_power<T: FloatScalar>(s: Complex<T>) -> ConvergenceVerdict<T> {
    let sigma = s.re;
    if sigma > T::one() {
        return ConvergenceVerdict::new(
            ConvergenceClass::Absolute,
            Evidence::with_bound(ConvergenceTest::IntegralComparison, sigma),
        );
    }
    if sigma > T::zero() {
        // coefficients 1,-1,1,... have partial sums bounded by K = 2,
        // so sum a_n n^-s converges for Re(s) > 0; |terms| are not summable
        return ConvergenceVerdict::new(
            ConvergenceClass::Conditional,
            Evidence::with_bound(ConvergenceTest::CoefficientBound, t(2.0)),
        );
    }
    ConvergenceVerdict::new(
        ConvergenceClass::Divergent,
        Evidence::rule(ConvergenceTest::TermsDoNotVanish),
    )
}

fn classify_user<T: FloatScalar>(
    stream: &TermStream<T>,
    params: &ClassifyParams<T>,
) -> ConvergenceVerdict<T> {
    let Some(cert) = params.certificate else {
        return ConvergenceVerdict::rule(
            ConvergenceClass::Inconclusive,
            ConvergenceTest::Unclassified,
        );
    };
    let probe = params.probe_len.max(2);
    match cert {
        DecayCertificate::DominatedByPower { c, p } => {
            if !(p > T::one()) || !(c > T::zero()) {
                return ConvergenceVerdict::rule(
                    ConvergenceClass::Inconclusive,
                    ConvergenceTest::Unclassified,
                );
            }
            // the certificate is an exact inequality; the spot check of it
            // runs in floating point, so allow a few ulps of slack
            let slack = T::one() + T::epsilon() * t::<T>(128.0);
            for n in 1..=probe as u64 {
                let mag = stream.term(n).norm();
                let cap = c * recip_pow(n, Complex::new(p, T::zero())).re * slack;
                if !(mag <= cap) {
                    return ConvergenceVerdict::rule(
                        ConvergenceClass::Inconclusive,
                        ConvergenceTest::Unclassified,
                    );
                }
            }
            ConvergenceVerdict::new(
                ConvergenceClass::Absolute,
                Evidence::with_bound(ConvergenceTest::CertificateCheck, p),
            )
        }
        DecayCertificate::AlternatingDecay => {
            let mut prev_mag = T::infinity();
            let mut prev_sign = T::zero();
            for n in 1..=probe as u64 {
                let v = stream.term(n);
                if v.im != T::zero() {
                    return ConvergenceVerdict::rule(
                        ConvergenceClass::Inconclusive,
                        ConvergenceTest::Unclassified,
                    );
                }
                let sign = v.re.signum();
                if n > 1 && (sign == prev_sign || v.re == T::zero()) {
                    return ConvergenceVerdict::rule(
                        ConvergenceClass::Inconclusive,
                        ConvergenceTest::Unclassified,
                    );
                }
                let mag = v.re.abs();
                if mag > prev_mag {
                    return ConvergenceVerdict::rule(
                        ConvergenceClass::Inconclusive,
                        ConvergenceTest::Unclassified,
                    );
                }
                prev_mag = mag;
                prev_sign = sign;
            }
            ConvergenceVerdict::new(
                ConvergenceClass::Conditional,
                Evidence::with_bound(ConvergenceTest::CertificateCheck, t(2.0)),
            )
        }
    }
}

fn sample_abs_partial_sums<T: FloatScalar>(stream: &TermStream<T>, counts: &[usize]) -> Vec<T> {
    let mut out = Vec::with_capacity(counts.len());
    let max = *counts.iter().max().unwrap_or(&0);
    let mut acc = KahanComplex::new();
    let mut next = 0usize;
    for n in 1..=max as u64 {
        acc.add(stream.term(n));
        if next < counts.len() && n as usize == counts[next] {
            out.push(acc.value().norm());
            next += 1;
        }
    }
    out
}

/// Domain rule for the Dirichlet series sum n^-s: absolutely convergent in
/// the open half-plane Re(s) > 1 and divergent everywhere else, including
/// the whole boundary line Re(s) = 1.
pub fn dirichlet_domain_verdict<T: FloatScalar>(s: Complex<T>) -> ConvergenceVerdict<T> {
    let one = T::one();
    if s.re > one {
        ConvergenceVerdict::new(
            ConvergenceClass::Absolute,
            Evidence::with_bound(ConvergenceTest::FamilyRule, s.re),
        )
    } else if s.re == one && s.im == T::zero() {
        ConvergenceVerdict::rule(ConvergenceClass::Divergent, ConvergenceTest::HarmonicComparison)
    } else if s.re == one {
        ConvergenceVerdict::rule(ConvergenceClass::Divergent, ConvergenceTest::BoundedOscillation)
    } else {
        ConvergenceVerdict::rule(ConvergenceClass::Divergent, ConvergenceTest::FamilyRule)
    }
}
