//! Numerical laboratory for the arithmetic of conditionally convergent series
//! and the classical special-function limits built on top of them.
//!
//! The crate measures, with explicit error estimates, what a family of textbook
//! formulas actually does in IEEE binary64 arithmetic:
//!
//! * partial sums and convergence classification of simple series families
//!   ([`series`]),
//! * Riemann rearrangements of conditionally convergent series, both
//!   target-seeking and divergence-seeking ([`rearrange`]),
//! * the Euler-Mascheroni constant in three algebraically equivalent forms and
//!   the Gamma function as a Gauss limit or Weierstrass product ([`gamma`]),
//! * three numerically distinct evaluation routes for the Riemann zeta
//!   function, plus sign-change bracketing of critical-line zeros ([`zeta`]),
//! * quadrature over a Hankel-style keyhole contour reproducing the zeta
//!   values by an independent path ([`contour`]),
//! * dimensional-regularization scheme factors and their O(eps^2) divergence
//!   ([`renorm`]).
//!
//! All numeric code is generic over the scalar type through [`FloatScalar`];
//! the concrete aliases [`Real`], [`Complex64`] pin the default binary64
//! instantiation used by the command-line tool and the test suite. There is
//! deliberately no arbitrary-precision backend: the point of the crate is to
//! observe finite-precision behavior, so every engine reports an error
//! estimate alongside its value.

// validation uses !(x > 0) instead of x <= 0 so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

pub mod contour;
pub mod gamma;
pub mod quadrature;
pub mod rearrange;
pub mod renorm;
pub mod series;
pub mod zeta;

mod kahan;

/// Scalar type the whole laboratory is generic over.
///
/// Implemented by `f32` and `f64` (and anything else that provides IEEE-style
/// float semantics plus the usual constants). Blanket-implemented; never
/// implement it manually.
pub trait FloatScalar:
    Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

impl<T> FloatScalar for T where
    T: Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

/// Default real scalar used by the CLI and acceptance tests.
pub type Real = f64;

pub use num_complex::Complex;
/// Default complex scalar (binary64 components).
pub type Complex64 = num_complex::Complex<f64>;
/// Single-precision complex scalar, mostly for generic smoke tests.
pub type Complex32 = num_complex::Complex<f32>;

pub(crate) fn t<T: FloatScalar>(x: f64) -> T {
    T::from_f64(x).expect("scalar must represent small f64 constants")
}

pub(crate) fn tu<T: FloatScalar>(n: u64) -> T {
    // u64 -> scalar; exact for the index ranges used here (f64 below 2^53)
    T::from_u64(n).expect("scalar must represent term indices")
}
