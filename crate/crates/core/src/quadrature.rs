//! Gauss-Legendre quadrature with fixed node ordering.
//!
//! Nodes are computed by Newton iteration on the Legendre polynomial (no
//! tables), stored ascending, and summed in ascending order with compensated
//! accumulation, so every integral here is bit-deterministic for a given
//! rule size and panel layout.

use num_complex::Complex;

use crate::kahan::{KahanComplex, KahanSum};
use crate::{t, FloatScalar};

/// An m-point Gauss-Legendre rule on [-1, 1]; exact through degree 2m-1.
#[derive(Clone, Debug)]
pub struct GaussLegendre<T: FloatScalar> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

/// Legendre P_m and its derivative at x by the three-term recurrence.
fn legendre_pair<T: FloatScalar>(m: usize, x: T) -> (T, T) {
    let mut p_prev = T::one();
    let mut p = x;
    for k in 1..m {
        let kf = t::<T>(k as f64);
        let next = ((t::<T>(2.0) * kf + T::one()) * x * p - kf * p_prev) / (kf + T::one());
        p_prev = p;
        p = next;
    }
    let mf = t::<T>(m as f64);
    let dp = mf * (x * p - p_prev) / (x * x - T::one());
    (p, dp)
}

impl<T: FloatScalar> GaussLegendre<T> {
    /// Build the m-point rule (m >= 1).
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "rule size must be >= 1");
        if m == 1 {
            return GaussLegendre {
                nodes: vec![T::zero()],
                weights: vec![t(2.0)],
            };
        }
        let mut nodes = vec![T::zero(); m];
        let mut weights = vec![T::zero(); m];
        let tol = T::epsilon() * t::<T>(4.0);
        for i in 0..m.div_ceil(2) {
            // descending root of P_m, standard asymptotic initial guess
            let mut x = t::<T>(
                (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos(),
            );
            for _ in 0..100 {
                let (p, dp) = legendre_pair(m, x);
                let dx = p / dp;
                x = x - dx;
                if dx.abs() <= tol {
                    break;
                }
            }
            let (_, dp) = legendre_pair(m, x);
            let w = t::<T>(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[m - 1 - i] = x;
            weights[m - 1 - i] = w;
            nodes[i] = -x;
            weights[i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes in ascending order on [-1, 1].
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// Integral of a complex-valued function over [a, b], single panel.
    pub fn integrate<F>(&self, a: T, b: T, mut f: F) -> Complex<T>
    where
        F: FnMut(T) -> Complex<T>,
    {
        let half = (b - a) / t::<T>(2.0);
        let mid = (a + b) / t::<T>(2.0);
        let mut acc = KahanComplex::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(mid + half * *x) * (*w * half));
        }
        acc.value()
    }

    /// Integral of a real-valued function over [a, b], single panel.
    pub fn integrate_real<F>(&self, a: T, b: T, mut f: F) -> T
    where
        F: FnMut(T) -> T,
    {
        let half = (b - a) / t::<T>(2.0);
        let mid = (a + b) / t::<T>(2.0);
        let mut acc = KahanSum::new();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc.add(f(mid + half * *x) * *w * half);
        }
        acc.value()
    }

    /// Composite integral over consecutive panel edges (ascending).
    pub fn integrate_panels<F>(&self, edges: &[T], mut f: F) -> Complex<T>
    where
        F: FnMut(T) -> Complex<T>,
    {
        let mut acc = KahanComplex::new();
        for pair in edges.windows(2) {
            acc.add(self.integrate(pair[0], pair[1], &mut f));
        }
        acc.value()
    }

    /// Like [`integrate_panels`](Self::integrate_panels), but also returns
    /// the sum of the weighted sample magnitudes, the natural scale for a
    /// roundoff floor on the quadrature result.
    pub fn integrate_panels_scaled<F>(&self, edges: &[T], mut f: F) -> (Complex<T>, T)
    where
        F: FnMut(T) -> Complex<T>,
    {
        let mut acc = KahanComplex::new();
        let mut scale = KahanSum::new();
        for pair in edges.windows(2) {
            let half = (pair[1] - pair[0]) / t::<T>(2.0);
            let mid = (pair[0] + pair[1]) / t::<T>(2.0);
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                let term = f(mid + half * *x) * (*w * half);
                acc.add(term);
                scale.add(term.norm());
            }
        }
        (acc.value(), scale.value())
    }
}

/// count+1 geometrically spaced edges from a to b (both > 0).
pub fn geometric_edges<T: FloatScalar>(a: T, b: T, count: usize) -> Vec<T> {
    assert!(count >= 1 && a > T::zero() && b > a, "need b > a > 0");
    let ratio = (b / a).powf(T::one() / t::<T>(count as f64));
    let mut edges = Vec::with_capacity(count + 1);
    let mut x = a;
    edges.push(a);
    for _ in 1..count {
        x = x * ratio;
        edges.push(x);
    }
    edges.push(b);
    edges
}

/// count+1 uniformly spaced edges from a to b.
pub fn uniform_edges<T: FloatScalar>(a: T, b: T, count: usize) -> Vec<T> {
    assert!(count >= 1, "need at least one panel");
    let h = (b - a) / t::<T>(count as f64);
    let mut edges = Vec::with_capacity(count + 1);
    for i in 0..count {
        edges.push(a + h * t::<T>(i as f64));
    }
    edges.push(b);
    edges
}
