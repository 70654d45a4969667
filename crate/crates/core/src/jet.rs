//! Truncated Taylor series ("jets") for forward-mode differentiation to
//! arbitrary order in a single variable.
//!
//! `c[k]` holds `f^(k)(t0) / k!`. Every operation is exact on the truncated
//! series, so derivatives come out to machine precision without step sizes.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

/// Number of Taylor coefficients carried along the circle parameter.
/// The developable's `k` needs fourth derivatives of the image curve; two
/// spare orders keep every quantity read out well inside the valid range.
pub const ORDER: usize = 7;

pub type ThetaJet = Jet<ORDER>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<const N: usize> {
    pub c: [f64; N],
}

impl<const N: usize> Jet<N> {
    pub fn constant(x: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = x;
        Jet { c }
    }

    /// The independent variable expanded around `t0`.
    pub fn variable(t0: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = t0;
        if N > 1 {
            c[1] = 1.0;
        }
        Jet { c }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative at the expansion point.
    pub fn derivative_at(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for i in 2..=k {
            f *= i as f64;
        }
        self.c[k] * f
    }

    /// Jet of the derivative; the top coefficient is lost.
    pub fn deriv(&self) -> Self {
        let mut c = [0.0; N];
        for k in 0..N - 1 {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Jet { c }
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut c = self.c;
        for x in &mut c {
            *x *= k;
        }
        Jet { c }
    }

    pub fn recip(&self) -> Self {
        let b0 = self.c[0];
        let mut q = [0.0; N];
        q[0] = 1.0 / b0;
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| self.c[j] * q[k - j]).sum();
            q[k] = -s / b0;
        }
        Jet { c: q }
    }

    pub fn sqrt(&self) -> Self {
        let mut s = [0.0; N];
        s[0] = self.c[0].sqrt();
        for k in 1..N {
            let acc: f64 = (1..k).map(|j| s[j] * s[k - j]).sum();
            s[k] = (self.c[k] - acc) / (2.0 * s[0]);
        }
        Jet { c: s }
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let mut s = [0.0; N];
        let mut co = [0.0; N];
        s[0] = self.c[0].sin();
        co[0] = self.c[0].cos();
        for k in 1..N {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for j in 1..=k {
                let jx = j as f64 * self.c[j];
                ds += jx * co[k - j];
                dc -= jx * s[k - j];
            }
            s[k] = ds / k as f64;
            co[k] = dc / k as f64;
        }
        (Jet { c: s }, Jet { c: co })
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = Self::constant(1.0);
        for _ in 0..e {
            acc = acc * *self;
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|x| x.is_finite())
    }
}

impl<const N: usize> Add for Jet<N> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for k in 0..N {
            self.c[k] += o.c[k];
        }
        self
    }
}

impl<const N: usize> AddAssign for Jet<N> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<const N: usize> Sub for Jet<N> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for k in 0..N {
            self.c[k] -= o.c[k];
        }
        self
    }
}

impl<const N: usize> Neg for Jet<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Jet<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; N];
        for i in 0..N {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..N - i {
                c[i + j] += self.c[i] * o.c[j];
            }
        }
        Jet { c }
    }
}

impl<const N: usize> Div for Jet<N> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

/// Arithmetic shared by plain floats and jets, so surface and curve code can
/// be written once and differentiated for free.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn from_f64(x: f64) -> Self;
    fn value(&self) -> f64;
    fn sqrt(self) -> Self;
    fn scale(self, k: f64) -> Self;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn scale(self, k: f64) -> Self {
        self * k
    }
}

impl<const N: usize> Scalar for Jet<N> {
    fn from_f64(x: f64) -> Self {
        Jet::constant(x)
    }
    fn value(&self) -> f64 {
        self.c[0]
    }
    fn sqrt(self) -> Self {
        Jet::sqrt(&self)
    }
    fn scale(self, k: f64) -> Self {
        Jet::scale(&self, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type J = Jet<6>;

    #[test]
    fn derivatives_of_elementary_functions() {
        let t = J::variable(0.7);
        let (s, c) = t.sin_cos();
        for k in 0..6 {
            let want = match k % 4 {
                0 => 0.7f64.sin(),
                1 => 0.7f64.cos(),
                2 => -0.7f64.sin(),
                _ => -0.7f64.cos(),
            };
            assert!((s.derivative_at(k) - want).abs() < 1e-13, "k={k}");
        }
        // d/dt sqrt(1 + t^2) = t / sqrt(1 + t^2)
        let q = (J::constant(1.0) + t * t).sqrt();
        assert!((q.derivative_at(1) - 0.7 / (1.49f64).sqrt()).abs() < 1e-14);
        // (1/c)' = s / c^2
        let r = c.recip();
        assert!((r.derivative_at(1) - 0.7f64.sin() / 0.7f64.cos().powi(2)).abs() < 1e-13);
    }

    #[test]
    fn deriv_shifts_coefficients() {
        let t = J::variable(2.0);
        let p = t.powi(3); // t^3
        let d = p.deriv();
        assert!((d.value() - 12.0).abs() < 1e-14);
        assert!((d.derivative_at(1) - 12.0).abs() < 1e-14);
        assert!((d.derivative_at(2) - 6.0).abs() < 1e-14);
    }

    #[test]
    fn quotient_rule() {
        let t = J::variable(0.3);
        let f = (t * t + J::constant(1.0)) / (t + J::constant(2.0));
        // f' = (t^2 + 4t - 1) / (t + 2)^2
        let want = (0.09 + 1.2 - 1.0) / 2.3f64.powi(2);
        assert!((f.derivative_at(1) - want).abs() < 1e-14);
    }
}
