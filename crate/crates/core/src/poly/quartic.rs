//! Discriminant and companion invariants of a quartic
//! `a x^4 + b x^3 + c x^2 + d x + e`.
//!
//! With `a != 0`: `Δ < 0` means two real and two complex roots, `Δ = 0` means
//! a repeated root, and `Δ = Δ0 = 0` forces a root of multiplicity at least 3
//! or a pair of double roots.

use num_traits::Zero;

use super::multipoly::MultiPoly;
use super::rational::{self, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Ring operations needed to evaluate the invariant formulas.
pub trait QuarticCoeff: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn times(&self, k: i64) -> Self;
}

impl QuarticCoeff for Rational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn times(&self, k: i64) -> Self {
        self * rational::int(k)
    }
}

impl QuarticCoeff for MultiPoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn times(&self, k: i64) -> Self {
        self.scale(&rational::int(k))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuarticInvariants<T = Rational> {
    pub delta: T,
    pub delta0: T,
    pub p_inv: T,
    pub r_inv: T,
}

fn prod<T: QuarticCoeff>(k: i64, fs: &[&T]) -> T {
    let mut acc = fs[0].clone();
    for f in &fs[1..] {
        acc = acc.mul(f);
    }
    acc.times(k)
}

/// Invariants of the quartic with the given coefficients (leading first).
pub fn invariants_of<T: QuarticCoeff>(a: &T, b: &T, c: &T, d: &T, e: &T) -> QuarticInvariants<T> {
    let terms: [T; 16] = [
        prod(256, &[a, a, a, e, e, e]),
        prod(-192, &[a, a, b, d, e, e]),
        prod(-128, &[a, a, c, c, e, e]),
        prod(144, &[a, a, c, d, d, e]),
        prod(-27, &[a, a, d, d, d, d]),
        prod(144, &[a, b, b, c, e, e]),
        prod(-6, &[a, b, b, d, d, e]),
        prod(-80, &[a, b, c, c, d, e]),
        prod(18, &[a, b, c, d, d, d]),
        prod(16, &[a, c, c, c, c, e]),
        prod(-4, &[a, c, c, c, d, d]),
        prod(-27, &[b, b, b, b, e, e]),
        prod(18, &[b, b, b, c, d, e]),
        prod(-4, &[b, b, b, d, d, d]),
        prod(-4, &[b, b, c, c, c, e]),
        prod(1, &[b, b, c, c, d, d]),
    ];
    let mut delta = terms[0].clone();
    for t in &terms[1..] {
        delta = delta.add(t);
    }
    let delta0 = prod(1, &[c, c]).sub(&prod(3, &[b, d])).add(&prod(12, &[a, e]));
    let p_inv = prod(8, &[a, c]).sub(&prod(3, &[b, b]));
    let r_inv = prod(1, &[b, b, b]).add(&prod(8, &[a, a, d])).sub(&prod(4, &[a, b, c]));
    QuarticInvariants { delta, delta0, p_inv, r_inv }
}

pub fn quartic_invariants(q: &UniPoly) -> Result<QuarticInvariants> {
    if q.degree() != 4 {
        return Err(Error::Degree { expected: 4, found: q.degree() });
    }
    let k = |i| q.coeff(i);
    Ok(invariants_of(&k(4), &k(3), &k(2), &k(1), &k(0)))
}

/// Discriminant through the Sylvester resultant `Res(q, q') / lc(q)`,
/// with sign `(-1)^(n(n-1)/2)`. Independent of the closed formula above.
pub fn discriminant_by_resultant(q: &UniPoly) -> Result<Rational> {
    let n = q.degree();
    if n < 1 {
        return Err(Error::Degree { expected: 1, found: n });
    }
    let res = resultant(q, &q.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 };
    Ok(res * rational::int(sign) / q.leading())
}

/// Resultant of two polynomials as the Sylvester determinant.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Rational {
    let (m, n) = (p.degree(), q.degree());
    if m < 0 || n < 0 {
        return Rational::zero();
    }
    let (m, n) = (m as usize, n as usize);
    let size = m + n;
    if size == 0 {
        return Rational::from_integer(1.into());
    }
    let mut mat = vec![vec![Rational::zero(); size]; size];
    for row in 0..n {
        for k in 0..=m {
            mat[row][row + k] = p.coeff(m - k);
        }
    }
    for row in 0..m {
        for k in 0..=n {
            mat[n + row][row + k] = q.coeff(n - k);
        }
    }
    determinant(mat)
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn determinant(mut mat: Vec<Vec<Rational>>) -> Rational {
    let n = mat.len();
    let mut det = Rational::from_integer(1.into());
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !mat[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            mat.swap(piv, col);
            det = -det;
        }
        let p = mat[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if mat[r][col].is_zero() {
                continue;
            }
            let f = &mat[r][col] / &p;
            for k in col..n {
                let v = &f * &mat[col][k];
                mat[r][k] -= v;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_root_kills_discriminant() {
        // s^2 (s^2 + 3)
        let q = UniPoly::from_ints(&[0, 0, 3, 0, 1]);
        let inv = quartic_invariants(&q).unwrap();
        assert!(inv.delta.is_zero());
        assert_eq!(discriminant_by_resultant(&q).unwrap(), inv.delta);
    }

    #[test]
    fn pure_fourth_power_has_all_invariants_zero() {
        let inv = quartic_invariants(&UniPoly::from_ints(&[0, 0, 0, 0, 1])).unwrap();
        assert!(inv.delta.is_zero() && inv.delta0.is_zero() && inv.p_inv.is_zero() && inv.r_inv.is_zero());
    }

    #[test]
    fn rejects_non_quartics() {
        let err = quartic_invariants(&UniPoly::from_ints(&[1, 0, 1])).unwrap_err();
        assert_eq!(err, Error::Degree { expected: 4, found: 2 });
    }

    #[test]
    fn formula_matches_resultant_on_a_generic_quartic() {
        let q = UniPoly::from_ints(&[7, -3, 2, 5, -4]);
        assert_eq!(quartic_invariants(&q).unwrap().delta, discriminant_by_resultant(&q).unwrap());
    }
}
