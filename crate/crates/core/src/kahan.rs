//! Compensated (Kahan) accumulation used by the long summation loops.

use num_complex::Complex;

use crate::FloatScalar;

/// Kahan-compensated real accumulator.
#[derive(Clone, Copy, Debug)]
pub(crate) struct KahanSum<T> {
    sum: T,
    c: T,
}

impl<T: FloatScalar> KahanSum<T> {
    pub(crate) fn new() -> Self {
        KahanSum {
            sum: T::zero(),
            c: T::zero(),
        }
    }

    pub(crate) fn add(&mut self, x: T) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> T {
        self.sum
    }
}

/// Componentwise Kahan accumulator for complex terms.
#[derive(Clone, Copy, Debug)]
pub(crate) struct KahanComplex<T> {
    re: KahanSum<T>,
    im: KahanSum<T>,
}

impl<T: FloatScalar> KahanComplex<T> {
    pub(crate) fn new() -> Self {
        KahanComplex {
            re: KahanSum::new(),
            im: KahanSum::new(),
        }
    }

    pub(crate) fn add(&mut self, z: Complex<T>) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub(crate) fn value(&self) -> Complex<T> {
        Complex::new(self.re.value(), self.im.value())
    }
}
