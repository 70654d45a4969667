//! Circles `γ(θ) = (r cosθ, r sinθ)` around the umbrella point, their image
//! curves, adapted frames and curvature functions.
//!
//! Everything along the curve is evaluated on Taylor jets in θ, so
//! θ-derivatives of any order are exact up to rounding.

use crate::error::{Error, Result};
use crate::jet::{Scalar, ThetaJet};
use crate::normal_form::{build_f0, BivarPoly3, NormalFormCoeffs};
use crate::surface::{christoffel, normal_orientation, PolySurface};
use crate::vec3::Vec3;

pub const DEFAULT_THETA_GUARD: f64 = 1e-3;
pub const MIN_SPEED: f64 = 1e-15;

type JVec = Vec3<ThetaJet>;

/// The normal form together with its compiled evaluator and normal sign.
#[derive(Clone, Debug)]
pub struct Umbrella {
    pub coeffs: NormalFormCoeffs,
    pub f0: BivarPoly3,
    pub surface: PolySurface,
    /// `+1` if `f_u × f_v` already converges to the extended normal.
    pub orientation: f64,
}

impl Umbrella {
    pub fn new(coeffs: &NormalFormCoeffs) -> Result<Self> {
        let f0 = build_f0(coeffs)?;
        let surface = f0.compile();
        let orientation = normal_orientation(&surface, coeffs);
        Ok(Umbrella { coeffs: coeffs.clone(), f0, surface, orientation })
    }

    pub fn circle(&self, r: f64) -> Result<CircleCurve<'_>> {
        CircleCurve::new(self, r)
    }

    /// Oriented unit normal at a regular point.
    pub fn unit_normal<T: Scalar>(&self, u: T, v: T) -> Vec3<T> {
        self.surface.normal_direction(u, v).normalized().mul_scalar(T::from_f64(self.orientation))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameChoice {
    /// `n = ñ`, the surface normal.
    NormalTilde,
    /// `n = -e × ñ`, tangent to the surface.
    FlippedBinormal,
}

impl FrameChoice {
    pub const BOTH: [FrameChoice; 2] = [FrameChoice::NormalTilde, FrameChoice::FlippedBinormal];

    pub fn name(&self) -> &'static str {
        match self {
            FrameChoice::NormalTilde => "normal",
            FrameChoice::FlippedBinormal => "flipped",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameState {
    pub theta: f64,
    pub e: Vec3,
    pub b: Vec3,
    pub n: Vec3,
}

impl FrameState {
    /// Largest deviation from an orthonormal triple with `b = -e × n`.
    pub fn orthonormality_residual(&self) -> f64 {
        let (e, b, n) = (self.e, self.b, self.n);
        let checks = [
            e.dot(&e) - 1.0,
            b.dot(&b) - 1.0,
            n.dot(&n) - 1.0,
            e.dot(&b),
            e.dot(&n),
            b.dot(&n),
        ];
        let cross = (b + e.cross(&n)).norm();
        checks.iter().fold(cross, |m, x| m.max(x.abs()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvatureData {
    pub l: f64,
    pub kappa1: f64,
    pub kappa2: f64,
    pub kappa3: f64,
    pub kappa2_hat: f64,
    pub kappa3_hat: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct CircleCurve<'a> {
    pub r: f64,
    pub umbrella: &'a Umbrella,
}

/// All jets along the image curve at one θ for one frame choice.
#[derive(Clone, Copy, Debug)]
pub struct FrameJets {
    pub theta: f64,
    pub gamma: JVec,
    pub dgamma: JVec,
    pub normal_tilde: JVec,
    pub l: ThetaJet,
    pub e: JVec,
    pub b: JVec,
    pub n: JVec,
    pub kappa1: ThetaJet,
    pub kappa2: ThetaJet,
    pub kappa3: ThetaJet,
}

impl<'a> CircleCurve<'a> {
    pub fn new(umbrella: &'a Umbrella, r: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::Domain(format!("circle radius must be positive, got {r}")));
        }
        Ok(CircleCurve { r, umbrella })
    }

    fn uv(&self, theta: f64) -> (ThetaJet, ThetaJet) {
        let (s, c) = ThetaJet::variable(theta).sin_cos();
        (c.scale(self.r), s.scale(self.r))
    }

    /// `γ̂(θ)`, `γ̂'(θ)`, `γ̂''(θ)` (derivatives in θ).
    pub fn image_curve(&self, theta: f64) -> [Vec3; 3] {
        let (u, v) = self.uv(theta);
        let g = self.umbrella.surface.eval(u, v);
        let d1 = g.deriv();
        let d2 = d1.deriv();
        [g.value(), d1.value(), d2.value()]
    }

    /// Oriented unit surface normal along the curve.
    pub fn normal_tilde(&self, theta: f64) -> Vec3 {
        let (u, v) = self.uv(theta);
        self.umbrella.unit_normal(u, v).value()
    }

    pub fn jets(&self, theta: f64, choice: FrameChoice) -> Result<FrameJets> {
        let (u, v) = self.uv(theta);
        let gamma = self.umbrella.surface.eval(u, v);
        let dgamma = gamma.deriv();
        let l = dgamma.norm();
        if !(l.value() >= MIN_SPEED) {
            return Err(Error::DegenerateSpeed(l.value()));
        }
        let normal_tilde = self.umbrella.unit_normal(u, v);
        let e = dgamma.div_scalar(l);
        let n = match choice {
            FrameChoice::NormalTilde => normal_tilde,
            FrameChoice::FlippedBinormal => -e.cross(&normal_tilde),
        };
        let b = -e.cross(&n);
        let de = e.deriv();
        let db = b.deriv();
        Ok(FrameJets {
            theta,
            gamma,
            dgamma,
            normal_tilde,
            l,
            e,
            b,
            n,
            kappa1: de.dot(&b),
            kappa2: de.dot(&n),
            kappa3: db.dot(&n),
        })
    }

    pub fn frame(&self, theta: f64, choice: FrameChoice) -> Result<FrameState> {
        let j = self.jets(theta, choice)?;
        Ok(FrameState { theta, e: j.e.value(), b: j.b.value(), n: j.n.value() })
    }

    pub fn curvature_data(&self, theta: f64, choice: FrameChoice) -> Result<CurvatureData> {
        Ok(self.jets(theta, choice)?.curvature_data())
    }

    fn guard(theta: f64, guard: f64) -> Result<()> {
        if theta.sin().abs() < guard {
            return Err(Error::NearAxis { theta, guard });
        }
        Ok(())
    }

    /// Geodesic curvature `γ̂''·(ñ × e) / l²` of the image curve.
    pub fn kappa_g(&self, theta: f64, guard: f64) -> Result<f64> {
        Self::guard(theta, guard)?;
        let j = self.jets(theta, FrameChoice::NormalTilde)?;
        let d2 = j.dgamma.deriv().value();
        let (nt, e, l) = (j.normal_tilde.value(), j.e.value(), j.l.value());
        Ok(d2.dot(&nt.cross(&e)) / (l * l))
    }

    /// Geodesic curvature from the metric alone (Christoffel symbols of the
    /// first fundamental form), independent of the extrinsic path.
    pub fn kappa_g_intrinsic(&self, theta: f64, guard: f64) -> Result<f64> {
        Self::guard(theta, guard)?;
        let (s, c) = theta.sin_cos();
        let r = self.r;
        let (u, v) = (r * c, r * s);
        let (u1, v1) = (-r * s, r * c);
        let (u2, v2) = (-r * c, -r * s);
        let surf = &self.umbrella.surface;
        let (fu, fv) = (surf.partial(1, 0, u, v), surf.partial(0, 1, u, v));
        let (e, f, g) = (fu.dot(&fu), fu.dot(&fv), fv.dot(&fv));
        let ch = christoffel(surf, u, v)?;
        let speed2 = e * u1 * u1 + 2.0 * f * u1 * v1 + g * v1 * v1;
        if !(speed2.sqrt() >= MIN_SPEED) {
            return Err(Error::DegenerateSpeed(speed2.sqrt()));
        }
        let bracket = ch.v_uu * u1.powi(3) + (2.0 * ch.v_uv - ch.u_uu) * u1 * u1 * v1
            + (ch.v_vv - 2.0 * ch.u_uv) * u1 * v1 * v1
            - ch.u_vv * v1.powi(3)
            + u1 * v2
            - u2 * v1;
        Ok(self.umbrella.orientation * (e * g - f * f).sqrt() * bracket / speed2.powf(1.5))
    }

    /// Normal curvature `γ̂''·ñ / l²`.
    pub fn kappa_n(&self, theta: f64, guard: f64) -> Result<f64> {
        Self::guard(theta, guard)?;
        let j = self.jets(theta, FrameChoice::NormalTilde)?;
        let d2 = j.dgamma.deriv().value();
        let l = j.l.value();
        Ok(d2.dot(&j.normal_tilde.value()) / (l * l))
    }
}

impl FrameJets {
    pub fn curvature_data(&self) -> CurvatureData {
        let l = self.l.value();
        CurvatureData {
            l,
            kappa1: self.kappa1.value(),
            kappa2: self.kappa2.value(),
            kappa3: self.kappa3.value(),
            kappa2_hat: l * self.kappa2.value(),
            kappa3_hat: l * self.kappa3.value(),
        }
    }

    pub fn kappa2_hat(&self) -> ThetaJet {
        self.l * self.kappa2
    }

    pub fn kappa3_hat(&self) -> ThetaJet {
        self.l * self.kappa3
    }

    /// `δ = κ1 (κ̂2² + κ̂3²) - κ̂2' κ̂3 + κ̂2 κ̂3'`.
    pub fn delta(&self) -> ThetaJet {
        let (h2, h3) = (self.kappa2_hat(), self.kappa3_hat());
        self.kappa1 * (h2 * h2 + h3 * h3) - h2.deriv() * h3 + h2 * h3.deriv()
    }

    /// `k = δ (l κ1 κ̂3 - 2 l κ̂2' - l' κ̂2) + l κ̂2 δ'`.
    pub fn k(&self) -> ThetaJet {
        let (h2, h3) = (self.kappa2_hat(), self.kappa3_hat());
        let d = self.delta();
        let l = self.l;
        d * (l * self.kappa1 * h3 - (l * h2.deriv()).scale(2.0) - l.deriv() * h2) + l * h2 * d.deriv()
    }

    /// `max |M + Mᵀ|` for the matrix `M` with `(e, b, n)' = M (e, b, n)`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let frame = [self.e, self.b, self.n];
        let d: Vec<Vec3> = frame.iter().map(|x| x.deriv().value()).collect();
        let f: Vec<Vec3> = frame.iter().map(|x| x.value()).collect();
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((d[i].dot(&f[j]) + d[j].dot(&f[i])).abs());
            }
        }
        worst
    }
}
