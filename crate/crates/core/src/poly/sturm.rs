//! Sturm sequences over the rationals: exact distinct-real-root counting and
//! root isolation. No floating point is involved until `refine_f64`.

use num_traits::Zero;

use super::rational::{self, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPoly);
        }
        // positive rescaling keeps every sign, and primitive integer
        // coefficients stop the rationals from growing along the chain
        let mut chain = vec![p.primitive()];
        let d = p.derivative().primitive();
        if !d.is_zero() {
            chain.push(d);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1])?;
                if r.is_zero() {
                    break;
                }
                chain.push(-&r.primitive());
            }
        }
        Ok(SturmChain { chain })
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.chain
    }

    fn variations(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| rational::sign(&p.eval(x))))
    }

    fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| rational::sign(&p.leading())))
    }

    fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = rational::sign(&p.leading());
            if p.degree() % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Number of distinct real roots over all of R.
    pub fn count_real_roots(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

/// Exact count of distinct real roots of a nonzero polynomial.
pub fn distinct_real_roots(p: &UniPoly) -> Result<usize> {
    Ok(SturmChain::new(p)?.count_real_roots())
}

/// Disjoint half-open intervals `(lo, hi]`, each containing exactly one
/// distinct real root, sorted ascending.
pub fn isolate_roots(p: &UniPoly) -> Result<Vec<(Rational, Rational)>> {
    let chain = SturmChain::new(p)?;
    let total = chain.count_real_roots();
    if total == 0 {
        return Ok(Vec::new());
    }
    let bound = p.cauchy_bound();
    let mut out = Vec::with_capacity(total);
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        match chain.count_in(&lo, &hi) {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / rational::int(2);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Narrows an isolating interval `(lo, hi]` of a square-free polynomial until
/// the root is pinned to double precision, returning the midpoint.
pub fn refine_f64(sqfree: &UniPoly, lo: &Rational, hi: &Rational) -> f64 {
    if sqfree.eval(hi).is_zero() {
        return rational::to_f64(hi);
    }
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let s_hi = rational::sign(&sqfree.eval(&hi));
    for _ in 0..200 {
        let mid = (&lo + &hi) / rational::int(2);
        let s = rational::sign(&sqfree.eval(&mid));
        if s == 0 {
            return rational::to_f64(&mid);
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
        let (a, b) = (rational::to_f64(&lo), rational::to_f64(&hi));
        if (b - a).abs() <= f64::EPSILON * a.abs().max(b.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
    }
    rational::to_f64(&((&lo + &hi) / rational::int(2)))
}

/// A real root located to double precision, with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: usize,
    /// Exact value when the root is rational and was hit exactly.
    pub exact: Option<Rational>,
}

/// All distinct real roots with multiplicities (via square-free decomposition).
pub fn real_roots(p: &UniPoly) -> Result<Vec<RealRoot>> {
    if p.is_zero() {
        return Err(Error::ZeroPoly);
    }
    let mut out = Vec::new();
    for (mult, factor) in p.squarefree_decomposition() {
        for (lo, hi) in isolate_roots(&factor)? {
            let value = refine_f64(&factor, &lo, &hi);
            let exact = if factor.eval(&hi).is_zero() {
                Some(hi.clone())
            } else {
                rational::convergents(value, 1_000_000_000)
                    .into_iter()
                    .find(|q| contains(&lo, &hi, q) && factor.eval(q).is_zero())
            };
            out.push(RealRoot { value, multiplicity: mult, exact });
        }
    }
    out.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(out)
}

/// `(multiplicity, number of distinct real roots with it)`, without
/// locating the roots.
pub fn count_by_multiplicity(p: &UniPoly) -> Result<Vec<(usize, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPoly);
    }
    // the chain ends in gcd(p, p'); a constant there means p is square-free
    let chain = SturmChain::new(p)?;
    if chain.chain.last().is_some_and(|g| g.degree() < 1) {
        return Ok(vec![(1, chain.count_real_roots())]);
    }
    p.squarefree_decomposition()
        .into_iter()
        .map(|(m, f)| Ok((m, distinct_real_roots(&f)?)))
        .collect()
}

/// Largest multiplicity among the complex roots, via `gcd(p, p')`.
pub fn max_multiplicity(p: &UniPoly) -> usize {
    p.squarefree_decomposition().iter().map(|(m, _)| *m).max().unwrap_or(0)
}

/// True when `x` lies within the rational interval.
pub fn contains(lo: &Rational, hi: &Rational, x: &Rational) -> bool {
    lo < x && x <= hi
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::int;

    #[test]
    fn counts_from_the_root_table() {
        // (s^2 + 4)(s^2 - 1)
        assert_eq!(distinct_real_roots(&UniPoly::from_ints(&[-4, 0, 3, 0, 1])).unwrap(), 2);
        assert_eq!(distinct_real_roots(&UniPoly::from_ints(&[1, 0, 3, 0, 1])).unwrap(), 0);
        // s^2 (s^2 + 3): only s = 0
        assert_eq!(distinct_real_roots(&UniPoly::from_ints(&[0, 0, 3, 0, 1])).unwrap(), 1);
        assert_eq!(distinct_real_roots(&UniPoly::zero()), Err(Error::ZeroPoly));
        assert_eq!(distinct_real_roots(&UniPoly::from_ints(&[5])).unwrap(), 0);
    }

    #[test]
    fn roots_with_multiplicity() {
        // (x - 1)^2 (x + 2)
        let p = UniPoly::from_ints(&[2, -3, 0, 1]);
        let roots = real_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].multiplicity, 1);
        assert!((roots[0].value + 2.0).abs() < 1e-15);
        assert_eq!(roots[1].multiplicity, 2);
        assert!((roots[1].value - 1.0).abs() < 1e-15);
        assert_eq!(max_multiplicity(&p), 2);
    }

    #[test]
    fn irrational_roots_refine_to_double_precision() {
        // x^2 - 2
        let roots = real_roots(&UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[1].value - 2f64.sqrt()).abs() < 4e-16);
        assert!(roots[1].exact.is_none());
    }

    #[test]
    fn isolating_intervals_are_disjoint() {
        let p = UniPoly::from_ints(&[0, -1, 0, 0, 0, 1]); // x^5 - x
        let iv = isolate_roots(&p).unwrap();
        assert_eq!(iv.len(), 3);
        for w in iv.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
        assert!(contains(&iv[1].0, &iv[1].1, &int(0)));
    }
}
