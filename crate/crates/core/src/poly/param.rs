//! Polynomials in one distinguished variable whose coefficients are
//! polynomials in the remaining parameters, with fraction-free pseudo-division.

use num_traits::Zero;

use super::multipoly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamPoly {
    poly: MultiPoly,
    var: usize,
}

/// Outcome of `dividend.pseudo_rem(divisor)`:
/// `multiplier * dividend = quotient * divisor + remainder`.
#[derive(Clone, Debug)]
pub struct PseudoDivision {
    pub quotient: ParamPoly,
    pub remainder: ParamPoly,
    /// `lc(divisor)^k`; free of the distinguished variable.
    pub multiplier: MultiPoly,
    pub exponent: u32,
}

impl ParamPoly {
    pub fn new(poly: MultiPoly, var: usize) -> Self {
        assert!(var < poly.nvars(), "distinguished variable out of range");
        ParamPoly { poly, var }
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn degree(&self) -> i64 {
        self.poly.degree_in(self.var)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Coefficient of `var^k` (a polynomial in the other variables).
    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.poly.coefficients_in(self.var).into_iter().nth(k).unwrap_or_else(|| MultiPoly::zero(self.poly.nvars()))
    }

    pub fn leading(&self) -> MultiPoly {
        let d = self.degree();
        if d < 0 {
            MultiPoly::zero(self.poly.nvars())
        } else {
            self.coeff(d as usize)
        }
    }

    /// Substitutes numeric values for the non-distinguished variables.
    pub fn specialize(&self, values: &[(usize, Rational)]) -> ParamPoly {
        let mut p = self.poly.clone();
        for (i, v) in values {
            p = p.substitute(*i, v);
        }
        ParamPoly { poly: p, var: self.var }
    }

    pub fn pseudo_rem(&self, divisor: &ParamPoly) -> Result<PseudoDivision> {
        if divisor.var != self.var || divisor.poly.nvars() != self.poly.nvars() {
            return Err(Error::Division("operands disagree on the distinguished variable".into()));
        }
        let dd = divisor.degree();
        if dd < 1 {
            return Err(Error::Division("divisor has no positive degree in the distinguished variable".into()));
        }
        let n = self.poly.nvars();
        let lc = divisor.leading();
        let x = MultiPoly::var(n, self.var);
        let mut rem = self.poly.clone();
        let mut quot = MultiPoly::zero(n);
        let mut exponent = 0u32;
        while rem.degree_in(self.var) >= dd {
            let rd = rem.degree_in(self.var);
            let rc = rem.coefficients_in(self.var).pop().expect("nonzero remainder");
            let shift = x.pow((rd - dd) as u32);
            let term = &rc * &shift;
            rem = &(&rem * &lc) - &(&term * &divisor.poly);
            quot = &(&quot * &lc) + &term;
            exponent += 1;
        }
        // Pad to the textbook exponent deg(a) - deg(b) + 1 so the multiplier
        // does not depend on cancellations along the way.
        let full = (self.degree() - dd + 1).max(0) as u32;
        while exponent < full {
            rem = &rem * &lc;
            quot = &quot * &lc;
            exponent += 1;
        }
        let multiplier = lc.pow(exponent);
        debug_assert!(
            (&(&multiplier * &self.poly) - &(&(&quot * &divisor.poly) + &rem)).is_zero(),
            "pseudo-division identity failed"
        );
        Ok(PseudoDivision {
            quotient: ParamPoly { poly: quot, var: self.var },
            remainder: ParamPoly { poly: rem, var: self.var },
            multiplier,
            exponent,
        })
    }
}

impl PseudoDivision {
    /// Remainder over the field of rational functions, evaluated at a point
    /// where the multiplier does not vanish.
    pub fn true_remainder_at(&self, point: &[Rational]) -> Result<Rational> {
        let m = self.multiplier.eval(point);
        if m.is_zero() {
            return Err(Error::Division("pseudo-division multiplier vanishes at this point".into()));
        }
        Ok(self.remainder.poly().eval(point) / m)
    }
}
