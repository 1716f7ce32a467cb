//! Riemann rearrangements of conditionally convergent real series.
//!
//! The classical construction: split the terms by sign, then consume greedily
//! from one side or the other. Aimed at a finite target the partial sums can
//! be steered arbitrarily close to it; aimed at an increasing threshold list
//! they can be driven upward without bound, one lonely negative term inserted
//! after each threshold is cleared.
//!
//! Streams here are horizon-bounded prefixes, so every operation is total:
//! running out of one sign is reported explicitly instead of looping forever.

use std::fmt;

use num_complex::Complex;

use crate::kahan::KahanSum;
use crate::series::{PartialSumTrace, TermStream};
use crate::FloatScalar;

/// A term together with its index in the original series.
#[derive(Clone, Copy, Debug)]
pub struct IndexedTerm<T: FloatScalar> {
    pub index: u64,
    pub value: T,
}

/// Sign partition of the first `horizon` terms of a real series.
///
/// Every index in `1..=horizon` lands in exactly one side; original order is
/// preserved within each side. Zero terms are assigned to the positive side
/// (arbitrary but fixed; they cannot move any partial sum).
#[derive(Clone, Debug)]
pub struct SignSplitStream<T: FloatScalar> {
    positives: Vec<IndexedTerm<T>>,
    negatives: Vec<IndexedTerm<T>>,
    horizon: u64,
}

impl<T: FloatScalar> SignSplitStream<T> {
    pub fn positives(&self) -> &[IndexedTerm<T>] {
        &self.positives
    }

    pub fn negatives(&self) -> &[IndexedTerm<T>] {
        &self.negatives
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }
}

/// Which sign stream an operation ran out of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermSign {
    Positive,
    Negative,
}

impl fmt::Display for TermSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermSign::Positive => write!(f, "positive"),
            TermSign::Negative => write!(f, "negative"),
        }
    }
}

/// Errors from splitting and plan construction.
#[derive(Clone, Debug, PartialEq)]
pub enum RearrangeError {
    InvalidParameter(&'static str),
    /// Rearrangement is implemented for real series only.
    ComplexTerm { index: u64 },
    NonFiniteTerm { index: u64 },
    /// One sign ran dry at the given schedule step: over this horizon the
    /// series is not conditionally convergent (or the horizon is too short).
    StreamExhausted { sign: TermSign, step: usize },
}

impl fmt::Display for RearrangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RearrangeError::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            RearrangeError::ComplexTerm { index } => {
                write!(f, "term {index} is complex-valued; rearrangement handles real series only")
            }
            RearrangeError::NonFiniteTerm { index } => {
                write!(f, "term {index} is not finite")
            }
            RearrangeError::StreamExhausted { sign, step } => write!(
                f,
                "{sign} terms exhausted at schedule step {step}: \
                 series not conditionally convergent over the horizon"
            ),
        }
    }
}

impl std::error::Error for RearrangeError {}

/// Partition the first `horizon` terms of `stream` by sign.
pub fn split_by_sign<T: FloatScalar>(
    stream: &TermStream<T>,
    horizon: u64,
) -> Result<SignSplitStream<T>, RearrangeError> {
    if horizon == 0 {
        return Err(RearrangeError::InvalidParameter("horizon must be >= 1"));
    }
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for index in 1..=horizon {
        let v = stream.term(index);
        if v.im != T::zero() {
            return Err(RearrangeError::ComplexTerm { index });
        }
        if !v.re.is_finite() {
            return Err(RearrangeError::NonFiniteTerm { index });
        }
        let entry = IndexedTerm { index, value: v.re };
        if v.re < T::zero() {
            negatives.push(entry);
        } else {
            positives.push(entry);
        }
    }
    Ok(SignSplitStream {
        positives,
        negatives,
        horizon,
    })
}

/// What a rearrangement plan was steering toward.
#[derive(Clone, Debug)]
pub enum RearrangementMode<T: FloatScalar> {
    TargetSeeking { target: T },
    DivergenceSeeking { thresholds: Vec<T> },
}

/// A direction switch in a target-seeking plan: the greedy walk crossed the
/// target and turned around.
#[derive(Clone, Copy, Debug)]
pub struct DirectionSwitch<T: FloatScalar> {
    /// 0-based schedule position of the term that carried the sum across.
    pub step: usize,
    /// Running sum immediately after that term.
    pub sum: T,
    /// The crossing term itself; |sum - target| <= |crossing_term| here.
    pub crossing_term: T,
}

/// A cleared threshold in a divergence-seeking plan.
#[derive(Clone, Copy, Debug)]
pub struct ThresholdCrossing<T: FloatScalar> {
    pub threshold: T,
    /// 0-based schedule position of the term whose partial sum first exceeded
    /// the threshold.
    pub step: usize,
    pub sum: T,
}

/// An explicit rearrangement: a duplicate-free schedule of original indices
/// plus the partial-sum trace it produces.
#[derive(Clone, Debug)]
pub struct RearrangementPlan<T: FloatScalar> {
    pub mode: RearrangementMode<T>,
    pub trace: PartialSumTrace<T>,
    /// Direction switches (target-seeking mode only).
    pub switches: Vec<DirectionSwitch<T>>,
    /// Threshold crossings (divergence-seeking mode only).
    pub crossings: Vec<ThresholdCrossing<T>>,
    /// False when the step budget ran out before the construction finished
    /// (divergence-seeking plans only; target-seeking plans always run their
    /// full step budget).
    pub complete: bool,
}

impl<T: FloatScalar> RearrangementPlan<T> {
    /// Original indices in consumption order (prefix of a permutation).
    pub fn schedule(&self) -> &[u64] {
        self.trace.indices()
    }

    pub fn final_sum(&self) -> T {
        self.trace.last_sum().map(|c| c.re).unwrap_or_else(T::zero)
    }
}

/// Greedy target-seeking rearrangement: append positive terms while the sum
/// is at or below `target`, negative terms while above, for exactly `steps`
/// terms.
///
/// At every direction switch the invariant |sum − target| ≤ |crossing term|
/// holds by construction; since term magnitudes shrink for conditionally
/// convergent families, the walk converges to `target`.
pub fn rearrange_to_target<T: FloatScalar>(
    split: &SignSplitStream<T>,
    target: T,
    steps: usize,
) -> Result<RearrangementPlan<T>, RearrangeError> {
    if steps == 0 {
        return Err(RearrangeError::InvalidParameter("steps must be >= 1"));
    }
    if !target.is_finite() {
        return Err(RearrangeError::InvalidParameter("target must be finite"));
    }
    let mut trace = PartialSumTrace::with_capacity(steps);
    let mut switches = Vec::new();
    let mut acc = KahanSum::new();
    let mut pos_cursor = 0usize;
    let mut neg_cursor = 0usize;
    let mut prev_dir: Option<bool> = None;
    let mut prev_term = T::zero();

    for step in 0..steps {
        let sum = acc.value();
        let take_positive = sum <= target;
        if let Some(p) = prev_dir {
            if p != take_positive {
                // the previous term crossed the target line
                switches.push(DirectionSwitch {
                    step: step - 1,
                    sum,
                    crossing_term: prev_term,
                });
            }
        }
        let entry = if take_positive {
            let e = split.positives.get(pos_cursor).copied().ok_or(
                RearrangeError::StreamExhausted {
                    sign: TermSign::Positive,
                    step,
                },
            )?;
            pos_cursor += 1;
            e
        } else {
            let e = split.negatives.get(neg_cursor).copied().ok_or(
                RearrangeError::StreamExhausted {
                    sign: TermSign::Negative,
                    step,
                },
            )?;
            neg_cursor += 1;
            e
        };
        acc.add(entry.value);
        trace.push(entry.index, Complex::new(acc.value(), T::zero()));
        prev_dir = Some(take_positive);
        prev_term = entry.value;
    }

    Ok(RearrangementPlan {
        mode: RearrangementMode::TargetSeeking { target },
        trace,
        switches,
        crossings: Vec::new(),
        complete: true,
    })
}

/// Divergence-seeking rearrangement: for each threshold in turn, append
/// positive terms until the running sum exceeds it, then append exactly one
/// negative term, continuing until the threshold list or the step budget is
/// spent.
///
/// A spent budget yields `Ok` with `complete == false` and the crossings
/// achieved so far; a dry sign stream is an error (the precondition that the
/// positive terms alone diverge failed over this horizon).
pub fn rearrange_to_diverge<T: FloatScalar>(
    split: &SignSplitStream<T>,
    thresholds: &[T],
    steps: usize,
) -> Result<RearrangementPlan<T>, RearrangeError> {
    if steps == 0 {
        return Err(RearrangeError::InvalidParameter("steps must be >= 1"));
    }
    if thresholds.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(RearrangeError::InvalidParameter(
            "thresholds must be strictly increasing",
        ));
    }
    if thresholds.iter().any(|t| !t.is_finite()) {
        return Err(RearrangeError::InvalidParameter("thresholds must be finite"));
    }

    let mode = RearrangementMode::DivergenceSeeking {
        thresholds: thresholds.to_vec(),
    };
    let mut trace = PartialSumTrace::with_capacity(steps.min(1 << 20));
    let mut crossings = Vec::with_capacity(thresholds.len());
    let mut acc = KahanSum::new();
    let mut pos_cursor = 0usize;
    let mut neg_cursor = 0usize;

    for &threshold in thresholds {
        while acc.value() <= threshold {
            if trace.consumed_count() == steps {
                return Ok(RearrangementPlan {
                    mode,
                    trace,
                    switches: Vec::new(),
                    crossings,
                    complete: false,
                });
            }
            let e = split.positives.get(pos_cursor).copied().ok_or(
                RearrangeError::StreamExhausted {
                    sign: TermSign::Positive,
                    step: trace.consumed_count(),
                },
            )?;
            pos_cursor += 1;
            acc.add(e.value);
            trace.push(e.index, Complex::new(acc.value(), T::zero()));
        }
        crossings.push(ThresholdCrossing {
            threshold,
            step: trace.consumed_count() - 1,
            sum: acc.value(),
        });
        // the construction's single negative term after each crossing
        if trace.consumed_count() == steps {
            return Ok(RearrangementPlan {
                mode,
                trace,
                switches: Vec::new(),
                crossings,
                complete: false,
            });
        }
        let e = split.negatives.get(neg_cursor).copied().ok_or(
            RearrangeError::StreamExhausted {
                sign: TermSign::Negative,
                step: trace.consumed_count(),
            },
        )?;
        neg_cursor += 1;
        acc.add(e.value);
        trace.push(e.index, Complex::new(acc.value(), T::zero()));
    }

    Ok(RearrangementPlan {
        mode,
        trace,
        switches: Vec::new(),
        crossings,
        complete: true,
    })
}
