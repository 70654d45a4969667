//! Root counts and locations of the first-term polynomials in `s = cotθ`,
//! and the discriminant chain behind the geodesic-curvature quartic.

use std::f64::consts::{FRAC_PI_2, PI};

use num_traits::{Signed, Zero};

use crate::asymptotics::{leading_terms, FlippedTable};
use crate::circle::FrameChoice;
use crate::error::{Error, Result};
use crate::normal_form::NormalFormCoeffs;
use crate::poly::quartic::invariants_of;
use crate::poly::rational::{self, frac, int};
use crate::poly::sturm::{count_by_multiplicity, max_multiplicity};
use crate::poly::{distinct_real_roots, parse_poly, real_roots, MultiPoly, ParamPoly, Rational, UniPoly};

/// `θ = arccot(s)` in `(0, π)`.
pub fn s_to_theta(s: f64) -> f64 {
    1.0f64.atan2(s)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    pub distinct_real_count: usize,
    /// Distinct real roots in `s`, ascending.
    pub roots: Vec<f64>,
    pub exact_roots: Vec<Option<Rational>>,
    pub multiplicities: Vec<usize>,
    /// `arccot` of each root, so descending.
    pub theta_values: Vec<f64>,
}

impl RootReport {
    pub fn of(p: &UniPoly) -> Result<Self> {
        let rr = real_roots(p)?;
        Ok(RootReport {
            distinct_real_count: rr.len(),
            roots: rr.iter().map(|r| r.value).collect(),
            exact_roots: rr.iter().map(|r| r.exact.clone()).collect(),
            multiplicities: rr.iter().map(|r| r.multiplicity).collect(),
            theta_values: rr.iter().map(|r| s_to_theta(r.value)).collect(),
        })
    }

    /// Largest `|p(root)|` relative to the sum of coefficient magnitudes
    /// times `max(1, |root|)^deg`.
    pub fn max_scaled_residual(&self, p: &UniPoly) -> f64 {
        let deg = p.degree().max(0) as i32;
        let csum: f64 = p.coeffs().iter().map(|c| rational::to_f64(c).abs()).sum();
        self.roots
            .iter()
            .map(|&s| p.eval_f64(s).abs() / (csum * s.abs().max(1.0).powi(deg)).max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max)
    }
}

fn coeffs3(c: &NormalFormCoeffs) -> (Rational, Rational, Rational) {
    (c.a20.clone(), c.a11.clone(), c.a02.clone())
}

/// `(a11²+1)s⁴ + a11 a02 s³ + 3(a11²+1)s² + a11(4a02−a20)s + a02(a02−a20)`.
pub fn g_poly(c: &NormalFormCoeffs) -> UniPoly {
    let (a20, a11, a02) = coeffs3(c);
    let p = &a11 * &a11 + int(1);
    UniPoly::new(vec![
        &a02 * (&a02 - &a20),
        &a11 * (int(4) * &a02 - &a20),
        int(3) * &p,
        &a11 * &a02,
        p,
    ])
}

pub fn gsol_report(c: &NormalFormCoeffs) -> Result<RootReport> {
    RootReport::of(&g_poly(c))
}

/// Degree of `gcd(g, g')`; at most 1 means no root of multiplicity three or
/// more and at most one double root.
pub fn g_gcd_degree(c: &NormalFormCoeffs) -> i64 {
    let g = g_poly(c);
    g.gcd(&g.derivative()).degree()
}

pub fn g_max_multiplicity(c: &NormalFormCoeffs) -> usize {
    max_multiplicity(&g_poly(c))
}

/// `(4a02+a20)s⁴ + (a02−a20)s² + (a02+2a20)`.
pub fn fk_poly(c: &NormalFormCoeffs) -> UniPoly {
    let (a20, _, a02) = coeffs3(c);
    UniPoly::new(vec![
        &a02 + int(2) * &a20,
        Rational::zero(),
        &a02 - &a20,
        Rational::zero(),
        int(4) * &a02 + &a20,
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FkCase {
    /// `-4a02 < a20 < -a02/2`: `s = ±sqrt((a20 - a02 + √T)/(4a02 + a20))`.
    TwoRoots,
    /// `-5a02 ≤ a20 < -4a02`: both signs of `√T`.
    FourRoots,
    /// `a20 = -a02/2`: double root `s = 0`.
    DoubleZero,
    /// `4a02 + a20 = 0`: `s = ±sqrt(7/5)`.
    DegreeDrop,
    NoRealRoot,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FkRoots {
    pub case: FkCase,
    /// Roots from the case formulas, ascending, deduplicated.
    pub roots: Vec<f64>,
    pub theta_values: Vec<f64>,
    /// Independent count from a Sturm chain on `fk_poly`.
    pub sturm_count: usize,
}

impl FkRoots {
    pub fn agrees_with_sturm(&self) -> bool {
        self.roots.len() == self.sturm_count
    }
}

/// `T = -(3a02 + 7a20)(5a02 + a20)`.
pub fn fk_t(c: &NormalFormCoeffs) -> Rational {
    let (a20, _, a02) = coeffs3(c);
    -(int(3) * &a02 + int(7) * &a20) * (int(5) * &a02 + &a20)
}

/// Case analysis for the zeros of the `k` first term, with the root formula
/// as displayed: `s² = (a20 - a02 ± √T) / (4a02 + a20)`. The band edge is
/// read as `-a02/2`.
pub fn fk_roots(c: &NormalFormCoeffs) -> Result<FkRoots> {
    fk_roots_scaled(c, 1.0)
}

/// Same cases with the quadratic-formula denominator `2(4a02 + a20)`, which
/// is what solving `fk_poly` in `s²` gives. Counts agree with `fk_roots`.
pub fn fk_roots_corrected(c: &NormalFormCoeffs) -> Result<FkRoots> {
    fk_roots_scaled(c, 2.0)
}

fn fk_roots_scaled(c: &NormalFormCoeffs, den_factor: f64) -> Result<FkRoots> {
    let (a20, _, a02) = coeffs3(c);
    if a20 == a02 {
        return Err(Error::Hypothesis("a02 = a20 is excluded; count the roots of fk_poly with a Sturm chain".into()));
    }
    let lead = int(4) * &a02 + &a20;
    let half = -(&a02 / int(2));
    let t = fk_t(c);
    let (a20f, a02f, tf) = (rational::to_f64(&a20), rational::to_f64(&a02), rational::to_f64(&t));
    let leadf = den_factor * rational::to_f64(&lead);
    let pm = |s2: f64| vec![-s2.sqrt(), s2.sqrt()];
    let (case, mut roots) = if lead.is_zero() {
        (FkCase::DegreeDrop, pm(7.0 / 5.0))
    } else if a20 == half {
        (FkCase::DoubleZero, vec![0.0])
    } else if -(int(4) * &a02) < a20 && a20 < half {
        (FkCase::TwoRoots, pm((a20f - a02f + tf.sqrt()) / leadf))
    } else if -(int(5) * &a02) <= a20 && a20 < -(int(4) * &a02) {
        let mut r = pm((a20f - a02f + tf.sqrt()) / leadf);
        if !t.is_zero() {
            r.extend(pm((a20f - a02f - tf.sqrt()) / leadf));
        }
        (FkCase::FourRoots, r)
    } else {
        (FkCase::NoRealRoot, vec![])
    };
    roots.sort_by(f64::total_cmp);
    let sturm_count = distinct_real_roots(&fk_poly(c))?;
    let theta_values = roots.iter().map(|&s| s_to_theta(s)).collect();
    Ok(FkRoots { case, roots, theta_values, sturm_count })
}

/// `F_δ(θ) / sin⁴θ` as a quartic in `s = cotθ`.
pub fn fdelta_poly(c: &NormalFormCoeffs) -> UniPoly {
    let (a20, a11, a02) = coeffs3(c);
    let p = &a11 * &a11 + int(1);
    let u = int(2) * &a02 + &a20;
    let w = &a02 + int(2) * &a20;
    let a02sq = &a02 * &a02;
    UniPoly::new(vec![
        -(&a02sq * &w),
        -(int(2) * &a02 * &a11 * &w),
        &a02sq * &u - &p * &w,
        int(2) * &a02 * &a11 * &u,
        &p * &u,
    ])
}

pub fn fdelta_report(c: &NormalFormCoeffs) -> Result<RootReport> {
    RootReport::of(&fdelta_poly(c))
}

fn half_angle_pair(x: f64) -> Vec<f64> {
    if !(-1.0..=1.0).contains(&x) {
        return vec![];
    }
    let t = 0.5 * x.acos();
    [t, PI - t].into_iter().filter(|&th| th > 0.0 && th < PI && th != FRAC_PI_2).collect()
}

/// Angles with `cos2θ = 2a02/(a02+a20)` in `(0,π)` minus `π/2`, from the
/// displayed normal-curvature first term.
pub fn kn_zero_angles(c: &NormalFormCoeffs) -> Vec<f64> {
    let (a20, _, a02) = c.params();
    if a02 + a20 == 0.0 {
        return vec![];
    }
    dedup_sorted(half_angle_pair(2.0 * a02 / (a02 + a20)))
}

/// Zeros in `(0,π)` minus `π/2` of the recomputed normal-curvature first
/// term `F2/(A s²)`: `cos2θ = (3a02+a20)/(a02+a20)`.
pub fn kn_zero_angles_rederived(c: &NormalFormCoeffs) -> Vec<f64> {
    let (a20, _, a02) = c.params();
    if a02 + a20 == 0.0 {
        return vec![];
    }
    dedup_sorted(half_angle_pair((3.0 * a02 + a20) / (a02 + a20)))
}

/// `π/2` together with the angles where `cos2θ = (3a02+a20)/(a02+a20)`.
pub fn beta_zero_angles(c: &NormalFormCoeffs) -> Vec<f64> {
    let mut out = kn_zero_angles_rederived(c);
    out.push(FRAC_PI_2);
    dedup_sorted(out)
}

fn dedup_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    v
}

/// Zeros of the `κ̂2` first term off `θ = π/2`: two exactly when
/// `2a02 + a20 < 0`.
pub fn fkappa2_offaxis_count(c: &NormalFormCoeffs) -> usize {
    let (a20, _, a02) = coeffs3(c);
    let a = a02.clone();
    let u = int(2) * &a02 + &a20;
    // a02 cos² + (2a02+a20) sin² = 0 has a solution off the axis iff the
    // two coefficients have strictly opposite signs
    if (a.is_positive() && u.is_negative()) || (a.is_negative() && u.is_positive()) {
        2
    } else {
        0
    }
}

fn table_point(c: &NormalFormCoeffs) -> [Rational; 3] {
    [c.a20.clone(), c.a11.clone(), c.a02.clone()]
}

/// The flipped-frame `δ` bracket divided by `sin⁷θ`, as a degree-7
/// polynomial in `s = cotθ`.
pub fn flipped_delta_poly(c: &NormalFormCoeffs, table: &FlippedTable) -> UniPoly {
    let pt = table_point(c);
    let n = table.delta.len() - 1;
    UniPoly::new((0..=n).map(|deg| table.delta[n - deg].eval(&pt)).collect())
}

/// The flipped-frame `k` bracket divided by `sin¹⁴θ`.
pub fn flipped_k_poly(c: &NormalFormCoeffs, table: &FlippedTable) -> UniPoly {
    let pt = table_point(c);
    let n = table.k.len() - 1;
    UniPoly::new((0..=n).map(|deg| table.k[n - deg].eval(&pt)).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlippedCounts {
    pub delta_zero_count: usize,
    pub k_zero_count: usize,
    /// Parity of sign changes predicted from the bracket's limits at
    /// `θ → 0⁺` and `θ → π⁻` agrees with the multiplicity-weighted count.
    pub delta_parity_ok: bool,
    pub k_parity_ok: bool,
    /// The `cos^n` coefficient vanishes, so a zero sits on the boundary.
    pub delta_degree_drop: bool,
    pub k_degree_drop: bool,
}

fn parity_check(p: &UniPoly, n: usize) -> Result<(usize, bool, bool)> {
    let counts = count_by_multiplicity(p)?;
    let distinct = counts.iter().map(|(_, n)| n).sum();
    let odd_mult: usize = counts.iter().filter(|(m, _)| m % 2 == 1).map(|(_, n)| n).sum();
    let drop = p.degree() < n as i64;
    // s → +∞ is θ → 0⁺, s → -∞ is θ → π⁻
    let lead = rational::sign(&p.leading());
    let at_zero = lead;
    let at_pi = if p.degree() % 2 == 0 { lead } else { -lead };
    let boundary_changes = usize::from(at_zero != at_pi);
    Ok((distinct, odd_mult % 2 == boundary_changes, drop))
}

pub fn flipped_counts(c: &NormalFormCoeffs) -> Result<FlippedCounts> {
    flipped_counts_with(c, FlippedTable::published())
}

pub fn flipped_counts_with(c: &NormalFormCoeffs, table: &FlippedTable) -> Result<FlippedCounts> {
    let (dc, dp, dd) = parity_check(&flipped_delta_poly(c, table), 7)?;
    let (kc, kp, kd) = parity_check(&flipped_k_poly(c, table), 14)?;
    Ok(FlippedCounts {
        delta_zero_count: dc,
        k_zero_count: kc,
        delta_parity_ok: dp,
        k_parity_ok: kp,
        delta_degree_drop: dd,
        k_degree_drop: kd,
    })
}

/// Sign changes on a grid in `(0,π)` of the recomputed flipped-frame `δ`
/// and `k` first terms.
pub fn flipped_counts_rederived(c: &NormalFormCoeffs, n: usize) -> Result<(usize, usize)> {
    let h = PI / n as f64;
    let mut prev: Option<(f64, f64)> = None;
    let (mut dc, mut kc) = (0, 0);
    for i in 0..n {
        let lt = leading_terms((i as f64 + 0.5) * h, c, FrameChoice::FlippedBinormal)?;
        if let Some((d, k)) = prev {
            dc += usize::from(d * lt.delta < 0.0);
            kc += usize::from(k * lt.k < 0.0);
        }
        prev = Some((lt.delta, lt.k));
    }
    Ok((dc, kc))
}

/// One row of the parameter-space root atlas. The flipped-frame counts are
/// optional because they cost far more than the quartic counts.
#[derive(Clone, Debug, PartialEq)]
pub struct AtlasRow {
    pub coeffs: NormalFormCoeffs,
    pub g_count: usize,
    pub fdelta_count: usize,
    pub fk_count: usize,
    pub delta_flip_count: Option<usize>,
    pub k_flip_count: Option<usize>,
}

pub const ATLAS_HEADER: &str = "a20,a11,a02,g_count,fdelta_count,fk_count,delta_flip_count,k_flip_count";

impl AtlasRow {
    /// Quartic counts only; the flipped columns stay empty.
    pub fn compute_quartics(c: &NormalFormCoeffs) -> Result<Self> {
        Ok(AtlasRow {
            coeffs: c.clone(),
            g_count: distinct_real_roots(&g_poly(c))?,
            fdelta_count: distinct_real_roots(&fdelta_poly(c))?,
            fk_count: distinct_real_roots(&fk_poly(c))?,
            delta_flip_count: None,
            k_flip_count: None,
        })
    }

    pub fn compute(c: &NormalFormCoeffs) -> Result<Self> {
        let fl = flipped_counts(c)?;
        Ok(AtlasRow {
            delta_flip_count: Some(fl.delta_zero_count),
            k_flip_count: Some(fl.k_zero_count),
            ..Self::compute_quartics(c)?
        })
    }

    /// Coefficients in shortest round-trip decimal; absent counts are empty.
    pub fn csv(&self) -> String {
        let (a20, a11, a02) = self.coeffs.params();
        let opt = |x: Option<usize>| x.map_or(String::new(), |v| v.to_string());
        format!(
            "{},{},{},{},{},{},{},{}",
            a20,
            a11,
            a02,
            self.g_count,
            self.fdelta_count,
            self.fk_count,
            opt(self.delta_flip_count),
            opt(self.k_flip_count)
        )
    }
}

/// Invariants of `g` with `a02 = 1`, as polynomials in `(a20, a11)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantChain {
    pub delta: MultiPoly,
    pub delta0: MultiPoly,
    pub p_inv: MultiPoly,
    pub r_inv: MultiPoly,
}

pub const CHAIN_VARS: [&str; 2] = ["a20", "a11"];

pub fn g_chain() -> DiscriminantChain {
    let a20 = MultiPoly::var(2, 0);
    let a11 = MultiPoly::var(2, 1);
    let one = MultiPoly::one(2);
    let k = |n: i64| MultiPoly::constant(2, int(n));
    let p = &(&a11 * &a11) + &one;
    let a = p.clone();
    let b = a11.clone();
    let c = &k(3) * &p;
    let d = &a11 * &(&k(4) - &a20);
    let e = &one - &a20;
    let inv = invariants_of(&a, &b, &c, &d, &e);
    DiscriminantChain { delta: inv.delta, delta0: inv.delta0, p_inv: inv.p_inv, r_inv: inv.r_inv }
}

fn chain_poly(src: &str) -> MultiPoly {
    parse_poly(src, &CHAIN_VARS).expect("fixed expression parses")
}

/// The closed form of `Δ` quoted for `g` with `a02 = 1`.
pub fn displayed_delta() -> MultiPoly {
    chain_poly(
        "-108*a11^10*(2 + a20)^2 \
         - 27*a11^8*(36 + 116*a20 + 13*a20^2 + 2*a20^3 + a20^4) \
         - 54*a11^6*(-54 + 183*a20 - 7*a20^2 + 11*a20^3 + a20^4) \
         - 9*a11^4*(-865 + 1340*a20 - 118*a20^2 + 144*a20^3 + 3*a20^4) \
         - 36*a11^2*(-125 + 125*a20 - a20^2 + 28*a20^3) \
         - 16*(-1 + a20)*(5 + 4*a20)^2",
    )
}

pub fn displayed_r() -> MultiPoly {
    chain_poly("a11^3 - 12*a11*(1 + a11^2)^2 - 8*a11*(1 + a11^2)^2*(-4 + a20)")
}

pub fn displayed_delta0() -> MultiPoly {
    chain_poly("21 - 12*a20 + (18 - 9*a20)*a11^2 + 9*a11^4")
}

pub fn displayed_p() -> MultiPoly {
    chain_poly("24*a11^4 + 45*a11^2 + 24")
}

/// `Rem_{a20}(num, den)` at a given `a11`, divided by the pseudo-division
/// multiplier so its sign is that of the true remainder.
pub fn normalized_remainder(num: &MultiPoly, den: &MultiPoly, a11: &Rational) -> Result<Rational> {
    let pd = ParamPoly::new(num.clone(), 0).pseudo_rem(&ParamPoly::new(den.clone(), 0))?;
    let point = [Rational::zero(), a11.clone()];
    let m = pd.multiplier.eval(&point);
    if m.is_zero() {
        return Err(Error::Division(format!("leading coefficient vanishes at a11 = {a11}")));
    }
    Ok(pd.remainder.poly().eval(&point) / m)
}

pub fn rem_delta_r(a11: &Rational) -> Result<Rational> {
    let ch = g_chain();
    normalized_remainder(&ch.delta, &ch.r_inv, a11)
}

pub fn rem_delta_delta0(a11: &Rational) -> Result<Rational> {
    let ch = g_chain();
    normalized_remainder(&ch.delta, &ch.delta0, a11)
}

fn eval1(src: &str, a11: &Rational) -> Rational {
    chain_poly(src).eval(&[Rational::zero(), a11.clone()])
}

/// The quoted `Rem_{a20}(Δ, R)` including its denominator `4096(a11²+1)`.
pub fn displayed_rem_delta_r(a11: &Rational) -> Rational {
    let num = eval1(
        "-(384 + 1232*a11^2 + 1275*a11^4 + 432*a11^6)*(240 + 848*a11^2 + 1113*a11^4 + 648*a11^6 + 144*a11^8)^2",
        a11,
    );
    num / (int(4096) * (a11 * a11 + int(1)))
}

/// Same numerator over `4096(a11²+1)⁶`, which is what the division gives.
pub fn corrected_rem_delta_r(a11: &Rational) -> Rational {
    displayed_rem_delta_r(a11) / rational::pow(&(a11 * a11 + int(1)), 5)
}

pub fn displayed_rem_delta_delta0(a11: &Rational) -> Rational {
    let num = eval1(
        "-27*(128 + 537*a11^2 + 939*a11^4 + 818*a11^6 + 354*a11^8 + 72*a11^10 + 9*a11^12)^2",
        a11,
    );
    num / rational::pow(&(int(4) + int(3) * a11 * a11), 4)
}

/// Coefficients of `P` in `a11` all positive with only even powers, so
/// `P > 0` identically.
pub fn p_is_positive_identically(p: &MultiPoly) -> bool {
    p.degree_in(0) <= 0 && p.terms().all(|(m, c)| c.is_positive() && m[1] % 2 == 0) && !p.is_zero()
}

/// Convenience: a rational `a11` with `a11 ≠ 0`.
pub fn nonzero_a11_samples(n: usize) -> Vec<Rational> {
    (1..=n as i64).map(|k| frac(if k % 2 == 0 { k } else { -k } * 7, 13 * (1 + k % 5))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::frac;

    fn nf(a20: i64, a11: i64, a02: i64) -> NormalFormCoeffs {
        NormalFormCoeffs::from_ints(a20, a11, a02).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn g_for_symmetric_umbrellas() {
        assert_eq!(g_poly(&nf(5, 0, 1)), UniPoly::from_ints(&[-4, 0, 3, 0, 1]));
        let r = gsol_report(&nf(5, 0, 1)).unwrap();
        assert_eq!(r.distinct_real_count, 2);
        assert_eq!(r.exact_roots, vec![Some(int(-1)), Some(int(1))]);
        let r = gsol_report(&nf(1, 0, 1)).unwrap();
        assert_eq!(r.distinct_real_count, 1);
        assert_eq!(r.multiplicities, vec![2]);
        assert!(close(r.theta_values[0], FRAC_PI_2));
        assert_eq!(gsol_report(&nf(0, 0, 1)).unwrap().distinct_real_count, 0);
    }

    #[test]
    fn fk_cases() {
        let r = fk_roots(&nf(-4, 0, 1)).unwrap();
        assert_eq!(r.case, FkCase::DegreeDrop);
        let s = (7.0f64 / 5.0).sqrt();
        assert!(close(r.roots[0], -s) && close(r.roots[1], s));
        assert!(close(r.theta_values[1], (1.0 / s).atan()));
        assert!(r.agrees_with_sturm());

        let c = NormalFormCoeffs::new(frac(-1, 2), int(0), int(1)).unwrap();
        let r = fk_roots(&c).unwrap();
        assert_eq!((r.case, r.roots.clone()), (FkCase::DoubleZero, vec![0.0]));
        assert!(r.agrees_with_sturm());

        let r = fk_roots(&nf(1, 0, 1));
        assert!(matches!(r, Err(Error::Hypothesis(_))));
        let r = fk_roots(&nf(2, 0, 1)).unwrap();
        assert_eq!(r.case, FkCase::NoRealRoot);
        assert_eq!(r.sturm_count, 0);

        let r = fk_roots(&nf(-2, 0, 1)).unwrap();
        assert_eq!(r.case, FkCase::TwoRoots);
        assert!(r.agrees_with_sturm());
        let r = fk_roots(&NormalFormCoeffs::new(frac(-9, 2), int(0), int(1)).unwrap()).unwrap();
        assert_eq!(r.case, FkCase::FourRoots);
        assert_eq!(r.roots.len(), 4);
        assert!(r.agrees_with_sturm());
        // T = 0 collapses the four roots to two double ones
        let r = fk_roots(&nf(-5, 0, 1)).unwrap();
        assert_eq!((r.roots.len(), r.sturm_count), (2, 2));
    }

    #[test]
    fn fk_root_values() {
        // 2s⁴ + 3s² - 3: s² = (-3 + √33)/4
        let c = nf(-2, 0, 1);
        let want = ((33f64.sqrt() - 3.0) / 4.0).sqrt();
        let fixed = fk_roots_corrected(&c).unwrap();
        assert!(close(fixed.roots[1], want));
        let shown = fk_roots(&c).unwrap();
        assert!(close(shown.roots[1], want * 2f64.sqrt()));
        for c in [nf(-4, 0, 1), NormalFormCoeffs::new(frac(-9, 2), int(0), int(1)).unwrap()] {
            let exact: Vec<f64> = real_roots(&fk_poly(&c)).unwrap().iter().map(|r| r.value).collect();
            let got = fk_roots_corrected(&c).unwrap().roots;
            assert_eq!(exact.len(), got.len());
            assert!(exact.iter().zip(&got).all(|(a, b)| (a - b).abs() < 1e-12));
        }
    }

    #[test]
    fn fdelta_never_vanishes_on_the_balanced_line() {
        assert_eq!(fdelta_report(&nf(-2, 0, 1)).unwrap().distinct_real_count, 0);
        assert_eq!(fdelta_report(&nf(-4, 3, 2)).unwrap().distinct_real_count, 0);
    }

    #[test]
    fn fdelta_poly_matches_trig_form() {
        let c = NormalFormCoeffs::from_f64(0.7, 0.3, 1.3).unwrap();
        let p = fdelta_poly(&c);
        let th: f64 = 1.1;
        let (s, co) = th.sin_cos();
        let (a20, a11, a02) = (0.7, 0.3, 1.3);
        let (u, w, q) = (2.0 * a02 + a20, a02 + 2.0 * a20, 1.0 + a11 * a11);
        let trig = q * u * co.powi(4) + 2.0 * a02 * a11 * u * co.powi(3) * s + (a02 * a02 * u - q * w) * co * co * s * s
            - 2.0 * a02 * a11 * w * co * s.powi(3)
            - a02 * a02 * w * s.powi(4);
        assert!((p.eval_f64(co / s) * s.powi(4) - trig).abs() < 1e-12);
    }

    #[test]
    fn normal_curvature_and_striction_angles() {
        let a = kn_zero_angles(&nf(3, 0, 1));
        assert!(close(a[0], PI / 6.0) && close(a[1], 5.0 * PI / 6.0));
        assert!(kn_zero_angles(&nf(-1, 0, 1)).is_empty());
        assert!(kn_zero_angles(&nf(1, 0, 1)).is_empty());
        assert_eq!(beta_zero_angles(&nf(1, 0, 1)), vec![FRAC_PI_2]);
        let b = beta_zero_angles(&nf(-3, 0, 1));
        assert_eq!(b.len(), 3);
        assert!(close(b[0], PI / 4.0) && close(b[1], FRAC_PI_2) && close(b[2], 3.0 * PI / 4.0));
        assert_eq!(fkappa2_offaxis_count(&nf(-3, 0, 1)), 2);
        assert_eq!(fkappa2_offaxis_count(&nf(-1, 0, 1)), 0);
    }

    #[test]
    fn chain_matches_displayed_forms() {
        let ch = g_chain();
        assert_eq!(ch.delta, displayed_delta());
        assert_eq!(ch.r_inv, displayed_r());
        assert_eq!(ch.delta0, displayed_delta0());
        assert_eq!(ch.p_inv, displayed_p());
        assert!(p_is_positive_identically(&ch.p_inv));
    }

    #[test]
    fn chain_remainders() {
        for a11 in nonzero_a11_samples(6) {
            let r = rem_delta_r(&a11).unwrap();
            assert!(r < Rational::zero());
            assert_eq!(r, corrected_rem_delta_r(&a11));
            let r0 = rem_delta_delta0(&a11).unwrap();
            assert!(r0 < Rational::zero());
            assert_eq!(r0, displayed_rem_delta_delta0(&a11));
        }
        assert!(rem_delta_r(&Rational::zero()).is_err());
    }

    #[test]
    fn flipped_counts_have_generic_parity() {
        for c in crate::sampling::random_coeff_sets(11, 20) {
            let fc = flipped_counts(&c).unwrap();
            assert!(fc.delta_parity_ok && fc.k_parity_ok);
            assert!(fc.delta_zero_count <= 7 && fc.k_zero_count <= 14);
        }
    }

    #[test]
    fn atlas_row_csv() {
        let row = AtlasRow::compute(&nf(5, 0, 1)).unwrap();
        assert!(row.csv().starts_with("5,0,1,2,"));
        assert_eq!(ATLAS_HEADER.split(',').count(), row.csv().split(',').count());
        let q = AtlasRow::compute_quartics(&NormalFormCoeffs::new(frac(-1, 4), int(0), int(1)).unwrap()).unwrap();
        assert!(q.csv().starts_with("-0.25,0,1,"));
        assert!(q.csv().ends_with(",,"));
    }

    #[test]
    fn residuals_are_small() {
        let c = NormalFormCoeffs::from_f64(2.5, -1.25, 0.5).unwrap();
        let p = g_poly(&c);
        let r = RootReport::of(&p).unwrap();
        assert!(r.max_scaled_residual(&p) < 1e-8);
    }
}
