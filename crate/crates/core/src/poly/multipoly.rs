use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::{self, Rational};
use super::unipoly::UniPoly;

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial over the rationals.
///
/// Terms are kept in a `BTreeMap`, so the monomial order is canonical
/// (lexicographic on exponent vectors) and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree_in(&self, var: usize) -> i64 {
        self.terms.keys().map(|m| m[var] as i64).max().unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.iter().map(|&e| e as i64).sum()).max().unwrap_or(-1)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                if e > 0 {
                    t *= rational::pow(x, e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                point.iter().zip(m).fold(rational::to_f64(c), |acc, (x, &e)| acc * x.powi(e as i32))
            })
            .sum()
    }

    pub fn diff(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[var] > 0 {
                let mut m2 = m.clone();
                m2[var] -= 1;
                out.add_term(m2, c * rational::int(m[var] as i64));
            }
        }
        out
    }

    /// Replaces variable `var` by the constant `value` (arity is kept).
    pub fn substitute(&self, var: usize, value: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2[var] = 0;
            out.add_term(m2, c * rational::pow(value, m[var]));
        }
        out
    }

    /// Replaces variable `var` by the polynomial `p` (same arity).
    pub fn compose(&self, var: usize, p: &MultiPoly) -> Self {
        assert_eq!(p.nvars, self.nvars);
        let deg = self.degree_in(var).max(0) as usize;
        let mut powers = vec![MultiPoly::one(self.nvars)];
        for k in 1..=deg {
            let next = &powers[k - 1] * p;
            powers.push(next);
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            rest[var] = 0;
            let mono = MultiPoly::from_terms(self.nvars, [(rest, c.clone())]);
            out = &out + &(&mono * &powers[m[var] as usize]);
        }
        out
    }

    /// Coefficients in powers of `var`: entry k is the coefficient of var^k,
    /// itself a polynomial not involving `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var);
        if deg < 0 {
            return Vec::new();
        }
        let mut out = vec![MultiPoly::zero(self.nvars); deg as usize + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let k = m2[var] as usize;
            m2[var] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    /// Views a polynomial that involves only `var` as a univariate polynomial.
    pub fn to_univariate(&self, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(var).max(0) as usize + 1];
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(i, &e)| i != var && e != 0) {
                return None;
            }
            coeffs[m[var] as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn from_univariate(nvars: usize, var: usize, p: &UniPoly) -> Self {
        MultiPoly::from_terms(
            nvars,
            p.coeffs().iter().enumerate().map(|(k, c)| {
                let mut m = vec![0; nvars];
                m[var] = k as u32;
                (m, c.clone())
            }),
        )
    }

    /// Exact division when `divisor` divides `self` (multivariate long
    /// division in the lex order); `None` if a nonzero remainder appears.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (lm, lc) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while let Some((m, c)) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if m.iter().zip(lm).any(|(a, b)| a < b) {
                return None;
            }
            let qm: Monomial = m.iter().zip(lm).map(|(a, b)| a - b).collect();
            let qc = c / lc;
            let t = MultiPoly::from_terms(self.nvars, [(qm, qc)]);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    pub fn fmt_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut s = format!("({c})");
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&format!("*{}", names[i])),
                    _ => s.push_str(&format!("*{}^{e}", names[i])),
                }
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{}", self.fmt_with(&refs))
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
