//! Ruled surfaces `f(t, β) = γ(t) + β δ(t)` with a unit director: striction
//! curves, classification, curvature, and the two constructions along a
//! circle image (normal lines and the normal developable).

use crate::circle::{CircleCurve, FrameChoice, FrameJets};
use crate::error::{Error, Result};
use crate::jet::{Scalar, ThetaJet};
use crate::vec3::Vec3;

type JVec = Vec3<ThetaJet>;

/// Below this `|δ'|` a ruling is treated as cylindrical.
pub const CYLINDRICAL_TOL: f64 = 1e-12;
/// Below this `|δ|`, relative to the size of its terms, `δ` counts as zero.
pub const DELTA_REL_TOL: f64 = 1e-8;

pub trait RuledSurface {
    /// Base curve and unit director as jets in the curve parameter.
    fn jets(&self, t: f64) -> Result<(JVec, JVec)>;

    fn point(&self, t: f64, beta: f64) -> Result<Vec3> {
        let (g, d) = self.jets(t)?;
        Ok(g.value() + d.value().mul_scalar(beta))
    }

    /// Parameter of the striction point on the ruling through `t`.
    fn striction_offset(&self, t: f64) -> Result<f64> {
        let (g, d) = self.jets(t)?;
        let (g1, d1) = (g.deriv().value(), d.deriv().value());
        let dd = d1.dot(&d1);
        if dd.sqrt() < CYLINDRICAL_TOL {
            return Err(Error::Cylindrical(format!("|director'| = {:e} at t = {t}", dd.sqrt())));
        }
        Ok(-g1.dot(&d1) / dd)
    }

    /// `σ = γ - (γ'·δ' / δ'·δ') δ`.
    fn striction(&self, t: f64) -> Result<Vec3> {
        let beta = self.striction_offset(t)?;
        self.point(t, beta)
    }

    /// Striction curve as a jet, for derivatives of `σ`.
    fn striction_jet(&self, t: f64) -> Result<JVec> {
        let (g, d) = self.jets(t)?;
        let (g1, d1) = (g.deriv(), d.deriv());
        let dd = d1.dot(&d1);
        if dd.value().sqrt() < CYLINDRICAL_TOL {
            return Err(Error::Cylindrical(format!("|director'| = {:e} at t = {t}", dd.value().sqrt())));
        }
        let beta = -(g1.dot(&d1) / dd);
        Ok(g + d.mul_scalar(beta))
    }

    /// Gaussian curvature at `(t, β)`.
    fn gaussian_curvature(&self, t: f64, beta: f64) -> Result<f64> {
        let (g, d) = self.jets(t)?;
        let (g1, dv, d1) = (g.deriv().value(), d.value(), d.deriv().value());
        let ft = g1 + d1.mul_scalar(beta);
        let (e, f, gg) = (ft.dot(&ft), ft.dot(&dv), dv.dot(&dv));
        let det = e * gg - f * f;
        if !(det >= crate::surface::SINGULAR_DET) {
            return Err(Error::SingularPoint { u: t, v: beta, det });
        }
        // f_ββ = 0, so K = -M² / (EG - F²) with M = δ'·ν.
        let m = d1.dot(&ft.cross(&dv).normalized());
        Ok(-m * m / det)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuledClass {
    Cylinder,
    Cone,
    TangentDevelopable,
    NonCylGeneric,
}

/// Classifies on a parameter grid. `tol` is relative to the grid's spatial
/// extent (largest base-point norm, at least 1).
pub fn classify(rs: &impl RuledSurface, grid: &[f64], tol: f64) -> Result<RuledClass> {
    let mut scale: f64 = 1.0;
    let mut max_d1: f64 = 0.0;
    for &t in grid {
        let (g, d) = rs.jets(t)?;
        scale = scale.max(g.value().norm());
        max_d1 = max_d1.max(d.deriv().value().norm());
    }
    let tol = tol * scale;
    if max_d1 < tol {
        return Ok(RuledClass::Cylinder);
    }
    let mut max_s1: f64 = 0.0;
    let mut max_par: f64 = 0.0;
    for &t in grid {
        let s = rs.striction_jet(t)?;
        max_s1 = max_s1.max(s.deriv().value().norm());
        let (g, d) = rs.jets(t)?;
        let g1 = g.deriv().value();
        let n = g1.norm();
        if n > 0.0 {
            max_par = max_par.max(d.value().cross(&g1).norm() / n);
        }
    }
    if max_s1 < tol {
        Ok(RuledClass::Cone)
    } else if max_par < tol {
        Ok(RuledClass::TangentDevelopable)
    } else {
        Ok(RuledClass::NonCylGeneric)
    }
}

/// A ruled surface given by a closure from the parameter jet to base and
/// (not necessarily unit) director jets; the director is normalized here.
pub struct FnRuled<F: Fn(ThetaJet) -> (JVec, JVec)> {
    pub f: F,
}

impl<F: Fn(ThetaJet) -> (JVec, JVec)> RuledSurface for FnRuled<F> {
    fn jets(&self, t: f64) -> Result<(JVec, JVec)> {
        let (g, d) = (self.f)(ThetaJet::variable(t));
        Ok((g, d.normalized()))
    }
}

/// `g(θ, β) = γ̂(θ) + β ñ(θ)`.
#[derive(Clone, Copy, Debug)]
pub struct NormalLineSurface<'a> {
    pub curve: CircleCurve<'a>,
}

impl<'a> NormalLineSurface<'a> {
    pub fn new(curve: CircleCurve<'a>) -> Self {
        NormalLineSurface { curve }
    }

    /// Signed distance along the normal line to the striction point.
    pub fn beta_striction(&self, theta: f64) -> Result<f64> {
        self.striction_offset(theta)
    }

    /// Gaussian curvature off the base curve.
    pub fn k_at(&self, theta: f64, beta: f64) -> Result<f64> {
        if beta == 0.0 {
            return Err(Error::OnCurve);
        }
        self.gaussian_curvature(theta, beta)
    }
}

impl RuledSurface for NormalLineSurface<'_> {
    fn jets(&self, t: f64) -> Result<(JVec, JVec)> {
        let j = self.curve.jets(t, FrameChoice::NormalTilde)?;
        Ok((j.gamma, j.normal_tilde))
    }
}

/// `h(θ, β) = γ̂(θ) + β D(θ)` with `D = (κ3 e - κ2 b) / sqrt(κ2² + κ3²)`.
#[derive(Clone, Copy, Debug)]
pub struct NormalDevelopable<'a> {
    pub curve: CircleCurve<'a>,
    pub choice: FrameChoice,
}

/// Scalar data of the normal developable at one θ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DevelopableData {
    pub director: Vec3,
    pub delta: f64,
    pub k: f64,
    /// Sum of the magnitudes of the terms making up `δ`.
    pub delta_scale: f64,
}

impl<'a> NormalDevelopable<'a> {
    pub fn new(curve: CircleCurve<'a>, choice: FrameChoice) -> Self {
        NormalDevelopable { curve, choice }
    }

    pub fn frame_jets(&self, theta: f64) -> Result<FrameJets> {
        self.curve.jets(theta, self.choice)
    }

    fn director_jet(j: &FrameJets) -> Result<JVec> {
        let norm = (j.kappa2 * j.kappa2 + j.kappa3 * j.kappa3).sqrt();
        if !(norm.value() > CYLINDRICAL_TOL) {
            return Err(Error::UndefinedDirector);
        }
        Ok((j.e.mul_scalar(j.kappa3) - j.b.mul_scalar(j.kappa2)).div_scalar(norm))
    }

    pub fn data(&self, theta: f64) -> Result<DevelopableData> {
        let j = self.frame_jets(theta)?;
        let director = Self::director_jet(&j)?.value();
        Ok(DevelopableData { director, delta: j.delta().value(), k: j.k().value(), delta_scale: delta_scale(&j) })
    }

    pub fn delta(&self, theta: f64) -> Result<f64> {
        Ok(self.frame_jets(theta)?.delta().value())
    }

    /// `k`, refused where `δ` vanishes relative to its terms.
    pub fn k(&self, theta: f64) -> Result<f64> {
        let j = self.frame_jets(theta)?;
        check_delta(&j, theta)?;
        Ok(j.k().value())
    }

    /// `σ = γ̂ - (l κ̂2 / δ)(κ̂3 e - κ̂2 b)`.
    pub fn striction_closed_form(&self, theta: f64) -> Result<Vec3> {
        let j = self.frame_jets(theta)?;
        check_delta(&j, theta)?;
        let (h2, h3) = (j.kappa2_hat().value(), j.kappa3_hat().value());
        let w = j.e.value().mul_scalar(h3) - j.b.value().mul_scalar(h2);
        Ok(j.gamma.value() - w.mul_scalar(j.l.value() * h2 / j.delta().value()))
    }

    /// `κ̂3 e - κ̂2 b`, the direction of `σ'`.
    pub fn striction_direction(&self, theta: f64) -> Result<Vec3> {
        let j = self.frame_jets(theta)?;
        Ok(j.e.value().mul_scalar(j.kappa3_hat().value()) - j.b.value().mul_scalar(j.kappa2_hat().value()))
    }
}

fn delta_scale(j: &FrameJets) -> f64 {
    let (h2, h3) = (j.kappa2_hat(), j.kappa3_hat());
    let (h2v, h3v) = (h2.value(), h3.value());
    (j.kappa1.value() * (h2v * h2v + h3v * h3v)).abs()
        + (h2.deriv().value() * h3v).abs()
        + (h2v * h3.deriv().value()).abs()
}

fn check_delta(j: &FrameJets, theta: f64) -> Result<()> {
    let d = j.delta().value();
    if d.abs() <= DELTA_REL_TOL * delta_scale(j) {
        return Err(Error::Cylindrical(format!("delta = {d:e} vanishes at theta = {theta}")));
    }
    Ok(())
}

impl RuledSurface for NormalDevelopable<'_> {
    fn jets(&self, t: f64) -> Result<(JVec, JVec)> {
        let j = self.frame_jets(t)?;
        Ok((j.gamma, Self::director_jet(&j)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::Umbrella;
    use crate::normal_form::NormalFormCoeffs;

    fn jv(x: ThetaJet, y: ThetaJet, z: ThetaJet) -> JVec {
        Vec3::new(x, y, z)
    }
    fn k(x: f64) -> ThetaJet {
        ThetaJet::constant(x)
    }

    #[test]
    fn helicoid_striction_is_the_axis_circle() {
        // base (cos t, sin t, 0), director (-sin t, cos t, h) / sqrt(1 + h^2)
        let h = 0.7;
        let rs = FnRuled {
            f: |t: ThetaJet| {
                let (s, c) = t.sin_cos();
                (jv(c, s, k(0.0)), jv(-s, c, k(h)))
            },
        };
        for &t in &[0.0, 0.4, 2.0] {
            // γ'·δ' = (-sin, cos, 0)·(-cos, -sin, 0)/√(1+h²) = 0, so σ = γ.
            let s = rs.striction(t).unwrap();
            assert!((s - Vec3::new(t.cos(), t.sin(), 0.0)).norm() < 1e-14);
        }
        assert_eq!(classify(&rs, &[0.0, 0.5, 1.0, 1.5], 1e-8).unwrap(), RuledClass::NonCylGeneric);
    }

    #[test]
    fn classification_examples() {
        let cyl = FnRuled { f: |t: ThetaJet| (jv(t, t * t, k(0.0)), jv(k(0.0), k(0.0), k(1.0))) };
        let grid = [0.1, 0.3, 0.7, 1.2];
        assert_eq!(classify(&cyl, &grid, 1e-8).unwrap(), RuledClass::Cylinder);
        assert!(matches!(cyl.striction(0.3), Err(Error::Cylindrical(_))));

        let cone = FnRuled {
            f: |t: ThetaJet| {
                let (s, c) = t.sin_cos();
                (jv(k(0.0), k(0.0), k(0.0)), jv(c, s, k(1.0)))
            },
        };
        assert_eq!(classify(&cone, &grid, 1e-8).unwrap(), RuledClass::Cone);
        assert!(cone.striction(0.5).unwrap().norm() < 1e-15);

        // twisted cubic with its tangent lines
        let tan = FnRuled { f: |t: ThetaJet| (jv(t, t * t, t * t * t), jv(k(1.0), t.scale(2.0), (t * t).scale(3.0))) };
        assert_eq!(classify(&tan, &grid, 1e-8).unwrap(), RuledClass::TangentDevelopable);
    }

    #[test]
    fn singular_values_sit_on_the_striction_curve() {
        let rs = FnRuled {
            f: |t: ThetaJet| {
                let (s, c) = t.sin_cos();
                (jv(t, t * t, k(0.0)), jv(c, s, t))
            },
        };
        let t = 0.6;
        let beta = rs.striction_offset(t).unwrap();
        let (g, d) = rs.jets(t).unwrap();
        let jac_area = |b: f64| (g.deriv().value() + d.deriv().value().mul_scalar(b)).cross(&d.value()).norm();
        let at = jac_area(beta);
        assert!(at < jac_area(beta + 0.01) && at < jac_area(beta - 0.01));
    }

    fn umb() -> Umbrella {
        Umbrella::new(&NormalFormCoeffs::from_ints(1, 1, 2).unwrap()).unwrap()
    }

    #[test]
    fn developable_is_flat_and_identities_hold() {
        let u = umb();
        for choice in FrameChoice::BOTH {
            let h = NormalDevelopable::new(u.circle(0.1).unwrap(), choice);
            for &th in &[0.4, 1.0, 1.9, 2.6] {
                let beta_s = h.striction_offset(th).unwrap();
                for &b in &[-0.3, -0.05, 0.05, 0.3] {
                    if (b - beta_s).abs() > 0.01 {
                        assert!(h.gaussian_curvature(th, b).unwrap().abs() < 1e-6);
                    }
                }
                let s1 = h.striction(th).unwrap();
                let s2 = h.striction_closed_form(th).unwrap();
                assert!((s1 - s2).norm() < 1e-8, "{choice:?} {th}");
                // σ' = k/δ² (κ̂3 e - κ̂2 b)
                let dsig = h.striction_jet(th).unwrap().deriv().value();
                let w = h.striction_direction(th).unwrap();
                let d = h.data(th).unwrap();
                let want = w.mul_scalar(d.k / (d.delta * d.delta));
                assert!((dsig - want).norm() <= 1e-6 * want.norm().max(1e-300));
                // |D'| = |δ| / (κ̂2² + κ̂3²)
                let (_, dir) = h.jets(th).unwrap();
                let cd = h.curve.curvature_data(th, choice).unwrap();
                let want = d.delta.abs() / (cd.kappa2_hat.powi(2) + cd.kappa3_hat.powi(2));
                assert!((dir.deriv().value().norm() - want).abs() <= 1e-6 * want);
            }
        }
    }

    #[test]
    fn normal_line_surface_needs_an_offset() {
        let u = umb();
        let g = NormalLineSurface::new(u.circle(0.1).unwrap());
        assert_eq!(g.k_at(1.0, 0.0), Err(Error::OnCurve));
        assert!(g.k_at(1.0, 0.1).unwrap().is_finite());
    }
}
