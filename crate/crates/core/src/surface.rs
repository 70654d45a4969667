//! Fundamental forms, Christoffel symbols and curvature at regular points of
//! a parametric surface.

use crate::error::{Error, Result};
use crate::jet::Scalar;
use crate::normal_form::{extended_normal, BivarPoly3, NormalFormCoeffs};
use crate::poly::rational;
use crate::vec3::Vec3;

/// Points with `EG - F^2` below this are treated as singular.
pub const SINGULAR_DET: f64 = 1e-30;

/// Position and partial derivatives up to second order at one point.
#[derive(Clone, Copy, Debug)]
pub struct SurfaceDerivs {
    pub f: Vec3,
    pub fu: Vec3,
    pub fv: Vec3,
    pub fuu: Vec3,
    pub fuv: Vec3,
    pub fvv: Vec3,
}

pub trait ParametricSurface {
    fn derivs(&self, u: f64, v: f64) -> SurfaceDerivs;

    fn point(&self, u: f64, v: f64) -> Vec3 {
        self.derivs(u, v).f
    }
}

/// `(coeff, p, q)` for `coeff u^p v^q`.
type Monomials = Vec<(f64, u32, u32)>;

/// A polynomial map `R^2 -> R^3` with partial derivatives compiled to flat
/// monomial lists for fast evaluation over any `Scalar`.
#[derive(Clone, Debug)]
pub struct PolySurface {
    // partials[du][dv][component]
    partials: Vec<Vec<[Monomials; 3]>>,
    max_deg: u32,
}

const MAX_PARTIAL: usize = 3;

impl PolySurface {
    pub fn new(f: &BivarPoly3) -> Self {
        let mut partials = Vec::new();
        let mut max_deg = 0;
        for du in 0..=MAX_PARTIAL {
            let mut row = Vec::new();
            for dv in 0..=MAX_PARTIAL - du {
                let mut g = f.clone();
                for _ in 0..du {
                    g = g.diff(0);
                }
                for _ in 0..dv {
                    g = g.diff(1);
                }
                let comps = g.comps.map(|p| {
                    p.terms()
                        .map(|(m, c)| {
                            max_deg = max_deg.max(m[0]).max(m[1]);
                            (rational::to_f64(c), m[0], m[1])
                        })
                        .collect::<Vec<_>>()
                });
                row.push(comps);
            }
            partials.push(row);
        }
        PolySurface { partials, max_deg }
    }

    /// `∂^{du+dv} f / ∂u^du ∂v^dv` at `(u, v)`; zero beyond third order.
    pub fn partial<T: Scalar>(&self, du: usize, dv: usize, u: T, v: T) -> Vec3<T> {
        if du + dv > MAX_PARTIAL {
            return Vec3::zero();
        }
        let n = self.max_deg as usize + 1;
        let mut pu = Vec::with_capacity(n);
        let mut pv = Vec::with_capacity(n);
        pu.push(T::from_f64(1.0));
        pv.push(T::from_f64(1.0));
        for k in 1..n {
            pu.push(pu[k - 1] * u);
            pv.push(pv[k - 1] * v);
        }
        let eval = |terms: &[(f64, u32, u32)]| {
            let mut acc = T::from_f64(0.0);
            for &(c, p, q) in terms {
                acc = acc + (pu[p as usize] * pv[q as usize]).scale(c);
            }
            acc
        };
        let comps = &self.partials[du][dv];
        Vec3::new(eval(&comps[0]), eval(&comps[1]), eval(&comps[2]))
    }

    pub fn eval<T: Scalar>(&self, u: T, v: T) -> Vec3<T> {
        self.partial(0, 0, u, v)
    }

    /// `f_u × f_v`, unnormalized.
    pub fn normal_direction<T: Scalar>(&self, u: T, v: T) -> Vec3<T> {
        self.partial(1, 0, u, v).cross(&self.partial(0, 1, u, v))
    }
}

impl ParametricSurface for PolySurface {
    fn derivs(&self, u: f64, v: f64) -> SurfaceDerivs {
        SurfaceDerivs {
            f: self.partial(0, 0, u, v),
            fu: self.partial(1, 0, u, v),
            fv: self.partial(0, 1, u, v),
            fuu: self.partial(2, 0, u, v),
            fuv: self.partial(1, 1, u, v),
            fvv: self.partial(0, 2, u, v),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub n: f64,
}

impl FundForms {
    pub fn det_first(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }
}

/// `Γ^u_{ij}` and `Γ^v_{ij}`; the lower indices are symmetric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Christoffel {
    pub u_uu: f64,
    pub u_uv: f64,
    pub u_vv: f64,
    pub v_uu: f64,
    pub v_uv: f64,
    pub v_vv: f64,
}

fn metric(d: &SurfaceDerivs, u: f64, v: f64) -> Result<(f64, f64, f64, f64)> {
    let (e, f, g) = (d.fu.dot(&d.fu), d.fu.dot(&d.fv), d.fv.dot(&d.fv));
    let det = e * g - f * f;
    if !(det >= SINGULAR_DET) {
        return Err(Error::SingularPoint { u, v, det });
    }
    Ok((e, f, g, det))
}

pub fn unit_normal(s: &impl ParametricSurface, u: f64, v: f64) -> Result<Vec3> {
    let d = s.derivs(u, v);
    metric(&d, u, v)?;
    Ok(d.fu.cross(&d.fv).normalized())
}

pub fn fundamental_forms(s: &impl ParametricSurface, u: f64, v: f64) -> Result<FundForms> {
    let d = s.derivs(u, v);
    let (e, f, g, _) = metric(&d, u, v)?;
    let nu = d.fu.cross(&d.fv).normalized();
    Ok(FundForms { e, f, g, l: d.fuu.dot(&nu), m: d.fuv.dot(&nu), n: d.fvv.dot(&nu) })
}

pub fn christoffel(s: &impl ParametricSurface, u: f64, v: f64) -> Result<Christoffel> {
    let d = s.derivs(u, v);
    let (e, f, g, det) = metric(&d, u, v)?;
    // inverse metric
    let (iuu, iuv, ivv) = (g / det, -f / det, e / det);
    let raise = |x: Vec3| {
        let (a, b) = (x.dot(&d.fu), x.dot(&d.fv));
        (iuu * a + iuv * b, iuv * a + ivv * b)
    };
    let (u_uu, v_uu) = raise(d.fuu);
    let (u_uv, v_uv) = raise(d.fuv);
    let (u_vv, v_vv) = raise(d.fvv);
    Ok(Christoffel { u_uu, u_uv, u_vv, v_uu, v_uv, v_vv })
}

pub fn gaussian_curvature(s: &impl ParametricSurface, u: f64, v: f64) -> Result<f64> {
    let ff = fundamental_forms(s, u, v)?;
    Ok((ff.l * ff.n - ff.m * ff.m) / ff.det_first())
}

/// `+1` when `f_u × f_v` tends to the extended normal as `r -> 0`, `-1`
/// when it tends to its negative. Checked at a few angles off the axis.
pub fn normal_orientation(s: &PolySurface, c: &NormalFormCoeffs) -> f64 {
    let r = 1e-7;
    let mut votes = 0.0;
    for k in 0..8 {
        let th = 0.3 + k as f64 * 0.35;
        let n = s.normal_direction(r * th.cos(), r * th.sin()).normalized();
        votes += n.dot(&extended_normal(th, c)).signum();
    }
    if votes >= 0.0 {
        1.0
    } else {
        -1.0
    }
}
