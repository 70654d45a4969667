//! Triangle meshes of the umbrella and of the ruled surfaces along a circle,
//! written as Wavefront OBJ.

use std::fmt::Write as _;

use crate::circle::{FrameChoice, Umbrella};
use crate::error::{Error, Result};
use crate::ruled::{NormalDevelopable, NormalLineSurface, RuledSurface};
use crate::surface::ParametricSurface;
use crate::vec3::Vec3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshSurface {
    /// The normal form `f0(u, v)`.
    F0,
    /// Normal developable along the circle of radius `r`.
    Developable(FrameChoice),
    /// Ruled surface by the surface normals along the circle.
    NormalLines,
}

impl MeshSurface {
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "f0" => Some(MeshSurface::F0),
            "developable" | "developable-normal" => Some(MeshSurface::Developable(FrameChoice::NormalTilde)),
            "developable-flipped" => Some(MeshSurface::Developable(FrameChoice::FlippedBinormal)),
            "normal-lines" => Some(MeshSurface::NormalLines),
            _ => None,
        }
    }

    pub const NAMES: [&'static str; 4] = ["f0", "developable", "developable-flipped", "normal-lines"];
}

/// Parameter rectangle and resolution. For `F0` the axes are `(u, v)`; for
/// the ruled surfaces they are `(θ, β)` and `r` is the circle radius.
#[derive(Clone, Debug, PartialEq)]
pub struct MeshSpec {
    pub s_range: (f64, f64),
    pub t_range: (f64, f64),
    pub resolution: (usize, usize),
    pub r: f64,
}

impl MeshSpec {
    /// `(u, v) ∈ [-1, 1]²` on an odd grid, so the pinch point is a vertex.
    pub fn f0_default() -> Self {
        MeshSpec { s_range: (-1.0, 1.0), t_range: (-1.0, 1.0), resolution: (41, 41), r: 0.0 }
    }

    /// One full turn of the circle of radius 0.1, rulings of half-length 0.05.
    pub fn ruled_default() -> Self {
        MeshSpec {
            s_range: (0.0, 2.0 * std::f64::consts::PI),
            t_range: (-0.05, 0.05),
            resolution: (181, 11),
            r: 0.1,
        }
    }

    pub fn default_for(surface: MeshSurface) -> Self {
        match surface {
            MeshSurface::F0 => Self::f0_default(),
            _ => Self::ruled_default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution.0 < 2 || self.resolution.1 < 2 {
            return Err(Error::Domain(format!("resolution must be at least 2 per axis, got {:?}", self.resolution)));
        }
        for (lo, hi) in [self.s_range, self.t_range] {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Domain(format!("bad parameter range [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    fn s(&self, i: usize) -> f64 {
        lerp(self.s_range, i, self.resolution.0)
    }

    fn t(&self, j: usize) -> f64 {
        lerp(self.t_range, j, self.resolution.1)
    }
}

fn lerp((lo, hi): (f64, f64), i: usize, n: usize) -> f64 {
    if i + 1 == n {
        hi
    } else {
        lo + (hi - lo) * i as f64 / (n - 1) as f64
    }
}

/// Vertices in row-major order (`s` outer) and counter-clockwise triangles
/// with 0-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    pub params: Vec<(f64, f64)>,
    pub triangles: Vec<[usize; 3]>,
    pub resolution: (usize, usize),
}

impl Mesh {
    /// `v` lines, then `f` lines with 1-based indices.
    pub fn to_obj(&self, comment: &str) -> String {
        let mut out = String::new();
        for line in comment.lines() {
            let _ = writeln!(out, "# {line}");
        }
        for v in &self.vertices {
            let _ = writeln!(out, "v {} {} {}", v.x, v.y, v.z);
        }
        for t in &self.triangles {
            let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
        }
        out
    }

    /// Index of a vertex whose parameters are both zero, if any.
    pub fn origin_vertex(&self) -> Option<usize> {
        self.params.iter().position(|&(s, t)| s == 0.0 && t == 0.0)
    }

    fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        let (ns, nt) = self.resolution;
        (1..ns - 1).flat_map(move |i| (1..nt - 1).map(move |j| i * nt + j))
    }
}

fn build(spec: &MeshSpec, point: impl Fn(f64, f64) -> Result<Vec3>) -> Result<Mesh> {
    spec.validate()?;
    let (ns, nt) = spec.resolution;
    let mut vertices = Vec::with_capacity(ns * nt);
    let mut params = Vec::with_capacity(ns * nt);
    for i in 0..ns {
        for j in 0..nt {
            let (s, t) = (spec.s(i), spec.t(j));
            let p = point(s, t)?;
            if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                return Err(Error::NonFinite(format!("mesh vertex at ({s}, {t})")));
            }
            vertices.push(p);
            params.push((s, t));
        }
    }
    let mut triangles = Vec::with_capacity(2 * (ns - 1) * (nt - 1));
    for i in 0..ns - 1 {
        for j in 0..nt - 1 {
            let a = i * nt + j;
            let (b, c, d) = (a + nt, a + nt + 1, a + 1);
            // quad a-b-c-d runs counter-clockwise in the (s, t) plane
            triangles.push([a, b, c]);
            triangles.push([a, c, d]);
        }
    }
    Ok(Mesh { vertices, params, triangles, resolution: spec.resolution })
}

pub fn mesh(umbrella: &Umbrella, surface: MeshSurface, spec: &MeshSpec) -> Result<Mesh> {
    match surface {
        MeshSurface::F0 => build(spec, |u, v| Ok(umbrella.surface.point(u, v))),
        MeshSurface::Developable(choice) => {
            let h = NormalDevelopable::new(umbrella.circle(spec.r)?, choice);
            build(spec, |t, b| h.point(t, b))
        }
        MeshSurface::NormalLines => {
            let g = NormalLineSurface::new(umbrella.circle(spec.r)?);
            build(spec, |t, b| g.point(t, b))
        }
    }
}

/// Largest `|K|` of the ruled surface over interior vertices, skipping
/// singular points. `None` for `F0`.
pub fn max_interior_curvature(umbrella: &Umbrella, surface: MeshSurface, spec: &MeshSpec, m: &Mesh) -> Result<Option<f64>> {
    let eval = |rs: &dyn Fn(f64, f64) -> Result<f64>| -> Result<f64> {
        let mut worst: f64 = 0.0;
        for k in m.interior() {
            let (t, b) = m.params[k];
            match rs(t, b) {
                Ok(v) => worst = worst.max(v.abs()),
                Err(Error::SingularPoint { .. }) | Err(Error::UndefinedDirector) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(worst)
    };
    match surface {
        MeshSurface::F0 => Ok(None),
        MeshSurface::Developable(choice) => {
            let h = NormalDevelopable::new(umbrella.circle(spec.r)?, choice);
            eval(&|t, b| h.gaussian_curvature(t, b)).map(Some)
        }
        MeshSurface::NormalLines => {
            let g = NormalLineSurface::new(umbrella.circle(spec.r)?);
            eval(&|t, b| g.gaussian_curvature(t, b)).map(Some)
        }
    }
}

/// Singular values of the Jacobian `[f_u f_v]` of `f0` along a ray into
/// the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct PinchReport {
    pub theta: f64,
    pub radii: Vec<f64>,
    pub sigma_max: Vec<f64>,
    pub sigma_min: Vec<f64>,
    /// Smallest singular value at the origin itself.
    pub sigma_min_origin: f64,
}

impl PinchReport {
    /// `log10` ratios of `σ_min` per decade of `r`; close to 1 for a
    /// rank drop that is linear in `r`.
    pub fn decay_slopes(&self) -> Vec<f64> {
        self.sigma_min
            .windows(2)
            .zip(self.radii.windows(2))
            .map(|(s, r)| (s[0] / s[1]).log10() / (r[0] / r[1]).log10())
            .collect()
    }

    /// Rank 2 away from the origin, rank 1 at it, with `σ_min` decaying
    /// linearly and `σ_max` staying bounded away from zero.
    pub fn is_pinch(&self) -> bool {
        let slopes = self.decay_slopes();
        self.sigma_min_origin == 0.0
            && self.sigma_min.iter().all(|&s| s > 0.0)
            && self.sigma_max.iter().all(|&s| s > 0.5)
            && slopes.iter().all(|&k| (k - 1.0).abs() < 0.1)
    }
}

fn singular_values(a: Vec3, b: Vec3) -> (f64, f64) {
    // eigenvalues of the 2×2 Gram matrix
    let (e, f, g) = (a.dot(&a), a.dot(&b), b.dot(&b));
    let tr = e + g;
    let det = (e * g - f * f).max(0.0);
    let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
    let big = tr / 2.0 + disc;
    // det / big avoids cancellation in the small eigenvalue
    let small = if big > 0.0 { det / big } else { 0.0 };
    (big.sqrt(), small.sqrt())
}

pub fn pinch_report(umbrella: &Umbrella, theta: f64, radii: &[f64]) -> PinchReport {
    let s = &umbrella.surface;
    let sv = |u: f64, v: f64| singular_values(s.partial(1, 0, u, v), s.partial(0, 1, u, v));
    let (mut sigma_max, mut sigma_min) = (Vec::new(), Vec::new());
    for &r in radii {
        let (hi, lo) = sv(r * theta.cos(), r * theta.sin());
        sigma_max.push(hi);
        sigma_min.push(lo);
    }
    PinchReport { theta, radii: radii.to_vec(), sigma_max, sigma_min, sigma_min_origin: sv(0.0, 0.0).1 }
}

pub const PINCH_RADII: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_form::NormalFormCoeffs;

    fn umb(a: i64, b: i64, c: i64) -> Umbrella {
        Umbrella::new(&NormalFormCoeffs::from_ints(a, b, c).unwrap()).unwrap()
    }

    #[test]
    fn f0_mesh_shape_and_pinch_vertex() {
        let u = umb(1, 0, 1);
        let spec = MeshSpec { resolution: (5, 5), ..MeshSpec::f0_default() };
        let m = mesh(&u, MeshSurface::F0, &spec).unwrap();
        assert_eq!(m.vertices.len(), 25);
        assert_eq!(m.triangles.len(), 32);
        let o = m.origin_vertex().unwrap();
        assert_eq!(m.vertices[o].norm(), 0.0);
        let obj = m.to_obj("test");
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 25);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 32);
        // all v lines precede all f lines
        let first_f = obj.lines().position(|l| l.starts_with("f ")).unwrap();
        assert!(obj.lines().skip(first_f).all(|l| l.starts_with("f ")));
    }

    #[test]
    fn triangles_are_counter_clockwise_in_parameter_plane() {
        let u = umb(1, 0, 1);
        let spec = MeshSpec { resolution: (3, 4), ..MeshSpec::f0_default() };
        let m = mesh(&u, MeshSurface::F0, &spec).unwrap();
        for t in &m.triangles {
            let [a, b, c] = t.map(|k| m.params[k]);
            let area = (b.0 - a.0) * (c.1 - a.1) - (c.0 - a.0) * (b.1 - a.1);
            assert!(area > 0.0);
        }
    }

    #[test]
    fn developable_mesh_is_flat() {
        let u = umb(-2, 0, 1);
        let spec = MeshSpec { resolution: (40, 5), ..MeshSpec::ruled_default() };
        for choice in FrameChoice::BOTH {
            let s = MeshSurface::Developable(choice);
            let m = mesh(&u, s, &spec).unwrap();
            let k = max_interior_curvature(&u, s, &spec, &m).unwrap().unwrap();
            assert!(k < 1e-6, "{k}");
        }
        let m = mesh(&u, MeshSurface::NormalLines, &spec).unwrap();
        let k = max_interior_curvature(&u, MeshSurface::NormalLines, &spec, &m).unwrap().unwrap();
        assert!(k > 1e-3);
    }

    #[test]
    fn pinch_at_origin_for_figure_sets() {
        for (a, b, c) in [(1, 0, 1), (-2, 0, 1), (-4, 0, 1)] {
            let p = pinch_report(&umb(a, b, c), 0.7, &PINCH_RADII);
            assert!(p.is_pinch(), "{p:?}");
        }
    }

    #[test]
    fn bad_specs_rejected() {
        let u = umb(1, 0, 1);
        let spec = MeshSpec { resolution: (1, 5), ..MeshSpec::f0_default() };
        assert!(mesh(&u, MeshSurface::F0, &spec).is_err());
        assert!(MeshSurface::from_name("nope").is_none());
    }
}
