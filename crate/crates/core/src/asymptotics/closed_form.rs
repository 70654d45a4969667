//! Closed-form leading coefficients along small circles, as displayed
//! ("stated") and as recomputed here ("rederived"), plus the pipeline
//! quantity each one describes.
//!
//! Notation: `c = cosθ`, `s = sinθ`, `A = sqrt(c² + (a11 c + a02 s)²)`,
//! `F1 = s⁴ g(c/s)` and `F2 = c (a02 c² + (2 a02 + a20) s²)`.

use std::fmt;
use std::sync::OnceLock;

use crate::circle::{CircleCurve, FrameChoice, Umbrella};
use crate::error::{Error, Result};
use crate::jet::ThetaJet;
use crate::normal_form::NormalFormCoeffs;
use crate::poly::rational::int;
use crate::poly::{parse_poly, MultiPoly};
use crate::ruled::NormalLineSurface;

/// Fixed ruling parameter at which the normal-line curvature is sampled.
pub const NORMAL_LINE_BETA: f64 = 0.5;

const TABLE_SRC: &str = include_str!("../../data/flipped_first_terms.txt");
const TABLE_VARS: [&str; 3] = ["a20", "a11", "a02"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedFormId {
    KappaG,
    KappaN,
    BetaStriction,
    KNormalLine,
    Kappa1Hat,
    Kappa2Hat,
    Kappa3Hat,
    Delta,
    K,
    Kappa2Flipped,
    DeltaFlipped,
    KFlipped,
}

use ClosedFormId::*;

impl ClosedFormId {
    pub const ALL: [ClosedFormId; 12] = [
        KappaG,
        KappaN,
        BetaStriction,
        KNormalLine,
        Kappa1Hat,
        Kappa2Hat,
        Kappa3Hat,
        Delta,
        K,
        Kappa2Flipped,
        DeltaFlipped,
        KFlipped,
    ];

    pub fn name(self) -> &'static str {
        match self {
            KappaG => "KappaG_g",
            KappaN => "KappaN",
            BetaStriction => "BetaStriction",
            KNormalLine => "K_NormalLine",
            Kappa1Hat => "F_k1hat",
            Kappa2Hat => "F_k2hat",
            Kappa3Hat => "F_k3hat",
            Delta => "F_delta",
            K => "F_k",
            Kappa2Flipped => "Kappa2_Flipped",
            DeltaFlipped => "Delta_Flipped",
            KFlipped => "K_Flipped",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|id| id.name().eq_ignore_ascii_case(s))
    }

    /// What the pipeline computes for this id.
    pub fn quantity(self) -> &'static str {
        match self {
            KappaG => "geodesic curvature",
            KappaN => "normal curvature",
            BetaStriction => "striction offset of the normal lines",
            KNormalLine => "Gaussian curvature of the normal lines at beta = 0.5",
            Kappa1Hat => "l^2 kappa1 (n = normal)",
            Kappa2Hat => "l kappa2 (n = normal)",
            Kappa3Hat => "l kappa3 (n = normal)",
            Delta => "delta (n = normal)",
            K => "k (n = normal)",
            Kappa2Flipped => "l^2 kappa2 (n = flipped)",
            DeltaFlipped => "delta (n = flipped)",
            KFlipped => "k (n = flipped)",
        }
    }

    /// Power of `r` attached to the displayed closed form.
    pub fn stated_order(self) -> i32 {
        match self {
            KappaG | KappaN | KNormalLine => 0,
            Kappa3Hat => 1,
            BetaStriction | Kappa2Hat | DeltaFlipped => 2,
            Kappa1Hat | Delta | Kappa2Flipped => 3,
            KFlipped => 4,
            K => 6,
        }
    }

    /// Power of `r` actually observed and recomputed here.
    pub fn rederived_order(self) -> i32 {
        match self {
            KNormalLine => 2,
            DeltaFlipped => 3,
            KFlipped => 6,
            other => other.stated_order(),
        }
    }

    /// True when the displayed form and the recomputed form differ.
    pub fn is_corrected(self) -> bool {
        matches!(self, KappaN | BetaStriction | KNormalLine | Delta | K | DeltaFlipped | KFlipped)
    }

    /// The pipeline quantity at `(r, θ)`.
    pub fn pipeline(self, umbrella: &Umbrella, r: f64, theta: f64) -> Result<f64> {
        let curve = umbrella.circle(r)?;
        let guard = 0.0;
        match self {
            KappaG => curve.kappa_g(theta, guard),
            KappaN => curve.kappa_n(theta, guard),
            BetaStriction => NormalLineSurface::new(curve).beta_striction(theta),
            KNormalLine => NormalLineSurface::new(curve).k_at(theta, NORMAL_LINE_BETA),
            Kappa1Hat => frame_value(&curve, theta, FrameChoice::NormalTilde, |j| (j.l * j.l * j.kappa1).value()),
            Kappa2Hat => frame_value(&curve, theta, FrameChoice::NormalTilde, |j| j.kappa2_hat().value()),
            Kappa3Hat => frame_value(&curve, theta, FrameChoice::NormalTilde, |j| j.kappa3_hat().value()),
            Delta => frame_value(&curve, theta, FrameChoice::NormalTilde, |j| j.delta().value()),
            K => frame_value(&curve, theta, FrameChoice::NormalTilde, |j| j.k().value()),
            Kappa2Flipped => {
                frame_value(&curve, theta, FrameChoice::FlippedBinormal, |j| (j.l * j.l * j.kappa2).value())
            }
            DeltaFlipped => frame_value(&curve, theta, FrameChoice::FlippedBinormal, |j| j.delta().value()),
            KFlipped => frame_value(&curve, theta, FrameChoice::FlippedBinormal, |j| j.k().value()),
        }
    }

    /// The displayed closed form, prefactor included.
    pub fn stated(self, theta: f64, c: &NormalFormCoeffs) -> Result<f64> {
        let t = Trig::new(theta, c)?;
        let (a20, a02) = (t.a20, t.a02);
        let (s, co, a) = (t.s, t.c, t.a);
        Ok(match self {
            KappaG => s * t.g_of_cot() / a,
            KappaN => co / (a * s * s) * ((3.0 * a02 + a20) * s * s + (a02 - a20) * co * co),
            BetaStriction => 2.0 * t.f2() * a.powi(3) / (a02 * a02),
            KNormalLine => -s * s / (NORMAL_LINE_BETA * NORMAL_LINE_BETA),
            Kappa1Hat | Kappa2Flipped => t.f1() / a,
            Kappa2Hat => t.f2() / a,
            Kappa3Hat => t.kappa3_hat(),
            Delta => 4.0 * a02 * s * s * t.f_delta() / a.powi(5),
            K => -12.0 * a02 * (a02 - a20) * s.powi(4) * t.f_k() / t.k_den().powi(2),
            DeltaFlipped => {
                let table = FlippedTable::published();
                a02 / (s * s * a.powi(5)) * table.delta_bracket(theta, c)
            }
            KFlipped => {
                let table = FlippedTable::published();
                -64.0 * a02 / (s.powi(4) * a.powi(4)) * table.k_bracket(theta, c)
            }
        })
    }

    /// The recomputed closed form, at `rederived_order`.
    pub fn rederived(self, theta: f64, c: &NormalFormCoeffs) -> Result<f64> {
        let t = Trig::new(theta, c)?;
        let (a20, a02) = (t.a20, t.a02);
        let (s, a) = (t.s, t.a);
        Ok(match self {
            KappaN => t.f2() / (a * s * s),
            BetaStriction => t.f2() * a.powi(3) / (a02 * a02),
            KNormalLine => -s * s * a.powi(4) / (a02 * a02 * NORMAL_LINE_BETA.powi(4)),
            Delta => a02 * s * s * t.f_delta() / a.powi(5),
            K => -12.0 * a02 * (a02 + a20) * s.powi(4) * t.f_k() / t.k_den().powi(2),
            DeltaFlipped => leading_terms(theta, c, FrameChoice::FlippedBinormal)?.delta,
            KFlipped => leading_terms(theta, c, FrameChoice::FlippedBinormal)?.k,
            other => other.stated(theta, c)?,
        })
    }
}

impl fmt::Display for ClosedFormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn frame_value(
    curve: &CircleCurve<'_>,
    theta: f64,
    choice: FrameChoice,
    pick: impl Fn(&crate::circle::FrameJets) -> f64,
) -> Result<f64> {
    Ok(pick(&curve.jets(theta, choice)?))
}

/// Shared trigonometric pieces; rejects θ outside `(0, π)`.
struct Trig {
    a20: f64,
    a11: f64,
    a02: f64,
    s: f64,
    c: f64,
    a: f64,
}

impl Trig {
    fn new(theta: f64, coeffs: &NormalFormCoeffs) -> Result<Self> {
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(Error::Domain(format!("closed forms are evaluated on 0 < theta < pi, got {theta}")));
        }
        let (a20, a11, a02) = coeffs.params();
        let (s, c) = theta.sin_cos();
        if s == 0.0 {
            return Err(Error::Domain(format!("sin(theta) vanishes at {theta}")));
        }
        let a = (c * c + (a11 * c + a02 * s).powi(2)).sqrt();
        Ok(Trig { a20, a11, a02, s, c, a })
    }

    fn g_of_cot(&self) -> f64 {
        self.f1() / self.s.powi(4)
    }

    fn f1(&self) -> f64 {
        let (a20, a11, a02, s, c) = (self.a20, self.a11, self.a02, self.s, self.c);
        let p = 1.0 + a11 * a11;
        p * c.powi(4) + a02 * a11 * c.powi(3) * s + 3.0 * p * c * c * s * s + a11 * (4.0 * a02 - a20) * c * s.powi(3)
            + a02 * (a02 - a20) * s.powi(4)
    }

    fn f2(&self) -> f64 {
        let (a20, a02, s, c) = (self.a20, self.a02, self.s, self.c);
        c * (a02 * c * c + (2.0 * a02 + a20) * s * s)
    }

    fn kappa3_hat(&self) -> f64 {
        let (a11, a02, s, c) = (self.a11, self.a02, self.s, self.c);
        -a02 * s / ((1.0 + a11 * a11) * c * c + a02 * s * (2.0 * a11 * c + a02 * s))
    }

    fn f_delta(&self) -> f64 {
        let (a20, a11, a02, s, c) = (self.a20, self.a11, self.a02, self.s, self.c);
        let p = 1.0 + a11 * a11;
        let (u, w) = (2.0 * a02 + a20, a02 + 2.0 * a20);
        p * u * c.powi(4) + 2.0 * a02 * a11 * u * c.powi(3) * s + (a02 * a02 * u - p * w) * c * c * s * s
            - 2.0 * a02 * a11 * w * c * s.powi(3)
            - a02 * a02 * w * s.powi(4)
    }

    fn f_k(&self) -> f64 {
        let (a20, a02, s, c) = (self.a20, self.a02, self.s, self.c);
        (4.0 * a02 + a20) * c.powi(4) + (a02 - a20) * c * c * s * s + (a02 + 2.0 * a20) * s.powi(4)
    }

    /// `1 + a02² + a11² + (1 - a02² + a11²) cos2θ + 2 a02 a11 sin2θ`, equal to `2A²`.
    fn k_den(&self) -> f64 {
        let (a11, a02, s, c) = (self.a11, self.a02, self.s, self.c);
        1.0 + a02 * a02 + a11 * a11 + (1.0 - a02 * a02 + a11 * a11) * (c * c - s * s) + 4.0 * a02 * a11 * s * c
    }
}

/// Leading coefficients of `δ` and `k` assembled from the leading
/// coefficients of `l`, `κ1`, `κ̂2`, `κ̂3` as functions of θ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeadingTerms {
    /// Coefficient of `r³` in `δ`.
    pub delta: f64,
    /// Coefficient of `r⁶` in `k`.
    pub k: f64,
}

/// With `l ~ L r`, `κ1 ~ k1 r`, `κ̂2 ~ h2 r²`, `κ̂3 ~ h3 r`, only the
/// `κ1 κ̂3²`, `κ̂2' κ̂3`, `κ̂2 κ̂3'` parts of `δ` survive at `r³`, and every
/// part of `k` contributes at `r⁶`. Derivatives come from the θ-jets.
pub fn leading_terms(theta: f64, coeffs: &NormalFormCoeffs, choice: FrameChoice) -> Result<LeadingTerms> {
    Trig::new(theta, coeffs)?;
    let (a20, a11, a02) = coeffs.params();
    let (s, c) = ThetaJet::variable(theta).sin_cos();
    let lin = c.scale(a11) + s.scale(a02);
    let a2 = c * c + lin * lin;
    let a = a2.sqrt();
    let p = 1.0 + a11 * a11;
    let f1 = c.powi(4).scale(p)
        + (c.powi(3) * s).scale(a02 * a11)
        + (c * c * s * s).scale(3.0 * p)
        + (c * s.powi(3)).scale(a11 * (4.0 * a02 - a20))
        + s.powi(4).scale(a02 * (a02 - a20));
    let f2 = c * (c * c).scale(a02) + c * (s * s).scale(2.0 * a02 + a20);
    let l = s;
    let h3 = -(s.scale(a02) / a2);
    let (k1, h2) = match choice {
        FrameChoice::NormalTilde => (f1 / (a * s * s), f2 / a),
        FrameChoice::FlippedBinormal => (-(f2 / (a * s)), f1 / (a * s)),
    };
    let d0 = k1 * h3 * h3 - h2.deriv() * h3 + h2 * h3.deriv();
    let k0 = d0 * (l * k1 * h3 - (l * h2.deriv()).scale(2.0) - l.deriv() * h2) + l * h2 * d0.deriv();
    Ok(LeadingTerms { delta: d0.value(), k: k0.value() })
}

/// The transcribed coefficient tables of the flipped-frame `δ` and `k`
/// first terms: `d[7-j, j]` and `k[i, 14-i]` as polynomials in
/// `(a20, a11, a02)`, indexed by the power of `sinθ`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlippedTable {
    pub delta: Vec<MultiPoly>,
    pub k: Vec<MultiPoly>,
}

impl FlippedTable {
    /// Parses the `name[i,j] = expr` format.
    pub fn parse(src: &str) -> Result<Self> {
        let mut delta: Vec<Option<MultiPoly>> = vec![None; 8];
        let mut k: Vec<Option<MultiPoly>> = vec![None; 15];
        for (lineno, raw) in src.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| bad("missing '='"))?;
            let lhs = lhs.trim();
            let open = lhs.find('[').ok_or_else(|| bad("missing '['"))?;
            let name = &lhs[..open];
            let idx = lhs[open + 1..].strip_suffix(']').ok_or_else(|| bad("missing ']'"))?;
            let (i, j) = idx.split_once(',').ok_or_else(|| bad("index must be i,j"))?;
            let i: usize = i.trim().parse().map_err(|_| bad("bad index"))?;
            let j: usize = j.trim().parse().map_err(|_| bad("bad index"))?;
            let (slots, total) = match name {
                "d" => (&mut delta, 7),
                "k" => (&mut k, 14),
                _ => return Err(bad("unknown table name")),
            };
            if i + j != total {
                return Err(bad(&format!("indices must sum to {total}")));
            }
            if slots[j].is_some() {
                return Err(bad("duplicate entry"));
            }
            slots[j] = Some(parse_poly(rhs.trim(), &TABLE_VARS).map_err(|e| bad(&e.to_string()))?);
        }
        let collect = |v: Vec<Option<MultiPoly>>, name: &str| -> Result<Vec<MultiPoly>> {
            v.into_iter()
                .enumerate()
                .map(|(j, e)| e.ok_or_else(|| Error::Parse(format!("missing entry {name} with sin power {j}"))))
                .collect()
        };
        Ok(FlippedTable { delta: collect(delta, "d")?, k: collect(k, "k")? })
    }

    /// The bundled transcription.
    pub fn published() -> &'static FlippedTable {
        static TABLE: OnceLock<FlippedTable> = OnceLock::new();
        TABLE.get_or_init(|| FlippedTable::parse(TABLE_SRC).expect("bundled coefficient table parses"))
    }

    /// `Σ d[7-j, j] cos^(7-j) sin^j`.
    pub fn delta_bracket(&self, theta: f64, c: &NormalFormCoeffs) -> f64 {
        bracket(&self.delta, theta, c)
    }

    /// `Σ k[14-j, j] cos^(14-j) sin^j`.
    pub fn k_bracket(&self, theta: f64, c: &NormalFormCoeffs) -> f64 {
        bracket(&self.k, theta, c)
    }

    /// Copy with `amount` added to the `k` entry of sin power `j`, for
    /// checking that a single wrong entry is detected.
    pub fn perturbed_k(&self, j: usize, amount: i64) -> Self {
        let mut out = self.clone();
        out.k[j] = &out.k[j] + &MultiPoly::constant(3, int(amount));
        out
    }

    /// Entries evaluated exactly at a parameter point, sin power ascending.
    pub fn k_entries_at(&self, point: &[crate::poly::Rational; 3]) -> Vec<crate::poly::Rational> {
        self.k.iter().map(|p| p.eval(point)).collect()
    }
}

fn bracket(entries: &[MultiPoly], theta: f64, c: &NormalFormCoeffs) -> f64 {
    let (a20, a11, a02) = c.params();
    let (s, co) = theta.sin_cos();
    let n = entries.len() as i32 - 1;
    entries
        .iter()
        .enumerate()
        .map(|(j, p)| p.eval_f64(&[a20, a11, a02]) * co.powi(n - j as i32) * s.powi(j as i32))
        .sum()
}

/// Displayed flipped-frame forms evaluated against an arbitrary table.
pub fn stated_flipped_with(table: &FlippedTable, id: ClosedFormId, theta: f64, c: &NormalFormCoeffs) -> Result<f64> {
    let t = Trig::new(theta, c)?;
    match id {
        DeltaFlipped => Ok(t.a02 / (t.s * t.s * t.a.powi(5)) * table.delta_bracket(theta, c)),
        KFlipped => Ok(-64.0 * t.a02 / (t.s.powi(4) * t.a.powi(4)) * table.k_bracket(theta, c)),
        other => other.stated(theta, c),
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::poly::rational::frac;
    use std::f64::consts::FRAC_PI_2;

    fn sample() -> NormalFormCoeffs {
        NormalFormCoeffs::new(frac(7, 10), frac(3, 10), frac(13, 10)).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn table_has_all_entries_and_known_values() {
        let t = FlippedTable::published();
        assert_eq!(t.delta.len(), 8);
        assert_eq!(t.k.len(), 15);
        let pt = [frac(7, 10), frac(3, 10), frac(13, 10)];
        let ks = t.k_entries_at(&pt);
        assert_eq!(ks[7], frac(-200668197, 25000000));
        assert_eq!(ks[14], frac(6940323, 781250));
        assert_eq!(ks[0], frac(-423474483, 100000000));
    }

    #[test]
    fn table_parse_errors() {
        assert!(FlippedTable::parse("d[7,0] = 1").is_err());
        assert!(FlippedTable::parse("x[7,0] = 1").is_err());
        assert!(FlippedTable::parse("d[6,0] = 1").is_err());
    }

    #[test]
    fn stated_flipped_reference_values() {
        let c = sample();
        let d = DeltaFlipped.stated(1.1, &c).unwrap();
        let k = KFlipped.stated(1.1, &c).unwrap();
        assert!(close(d, 2.045_260_426_302_075, 1e-12), "{d}");
        assert!(close(k, 911.781_815_169_642_1, 1e-12), "{k}");
    }

    #[test]
    fn composition_reference_values() {
        let c = sample();
        let n = leading_terms(1.1, &c, FrameChoice::NormalTilde).unwrap();
        let f = leading_terms(1.1, &c, FrameChoice::FlippedBinormal).unwrap();
        assert!(close(n.delta, -0.586_145_410_982_774_1, 1e-12), "{n:?}");
        assert!(close(n.k, -2.849_789_088_921_241, 1e-12), "{n:?}");
        assert!(close(f.delta, -1.834_639_812_099_323_7, 1e-12), "{f:?}");
        assert!(close(f.k, -4.765_410_305_463_258, 1e-12), "{f:?}");
    }

    #[test]
    fn recomputed_delta_and_k_agree_with_composition() {
        for (a20, a11, a02) in [(1.0, 0.0, 1.0), (-2.0, 0.5, 1.5), (0.7, -1.2, 0.4)] {
            let c = NormalFormCoeffs::from_f64(a20, a11, a02).unwrap();
            for i in 1..20 {
                let th = i as f64 * 0.157;
                let lt = leading_terms(th, &c, FrameChoice::NormalTilde).unwrap();
                assert!(close(Delta.rederived(th, &c).unwrap(), lt.delta, 1e-10));
                assert!(close(K.rederived(th, &c).unwrap(), lt.k, 1e-10));
            }
        }
    }

    #[test]
    fn kappa_g_vanishes_at_double_root() {
        let c = NormalFormCoeffs::from_ints(1, 0, 1).unwrap();
        assert!(KappaG.stated(FRAC_PI_2, &c).unwrap().abs() < 1e-15);
    }

    #[test]
    fn k_first_term_zeros_for_band_edge() {
        // (-4,0,1): zeros where cot^2 = 7/5
        let c = NormalFormCoeffs::from_ints(-4, 0, 1).unwrap();
        let th = (1.0 / (7.0f64 / 5.0).sqrt()).atan();
        assert!(K.stated(th, &c).unwrap().abs() < 1e-12);
        assert!(K.stated(std::f64::consts::PI - th, &c).unwrap().abs() < 1e-12);
    }

    #[test]
    fn den_is_twice_a_squared() {
        let c = sample();
        for i in 1..10 {
            let t = Trig::new(i as f64 * 0.3, &c).unwrap();
            assert!(close(t.k_den(), 2.0 * t.a * t.a, 1e-13));
            assert!(close(t.kappa3_hat(), -t.a02 * t.s / (t.a * t.a), 1e-13));
        }
    }

    #[test]
    fn domain_is_open_half_turn() {
        let c = sample();
        for th in [0.0, std::f64::consts::PI, -0.3, 4.0] {
            assert!(matches!(KappaG.stated(th, &c), Err(Error::Domain(_))));
        }
    }

    #[test]
    fn names_round_trip() {
        for id in ClosedFormId::ALL {
            assert_eq!(ClosedFormId::from_name(id.name()), Some(id));
        }
    }

    #[test]
    fn perturbation_changes_only_one_entry() {
        let t = FlippedTable::published();
        let p = t.perturbed_k(14, 1);
        let diffs = (0..15).filter(|&j| t.k[j] != p.k[j]).count();
        assert_eq!(diffs, 1);
    }
}
