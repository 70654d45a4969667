//! The Whitney umbrella normal form
//! `f0(u, v) = (u, uv + B(v), sum_j A_j(u, v))` truncated at degree `k`, with
//! `B(v) = sum b_i v^i / i!` and `A_j = sum a_{p,q} u^p v^q / (p! q!)`, `p + q = j`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::poly::rational::{self, Rational};
use crate::poly::MultiPoly;
use crate::surface::PolySurface;
use crate::vec3::Vec3;

#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormCoeffs {
    pub a20: Rational,
    pub a11: Rational,
    pub a02: Rational,
    /// `(p, q) -> a_{p,q}` for `3 <= p + q <= degree_k`.
    pub higher_a: BTreeMap<(u32, u32), Rational>,
    /// `i -> b_i` for `3 <= i <= degree_k`.
    pub higher_b: BTreeMap<u32, Rational>,
    pub degree_k: u32,
}

impl NormalFormCoeffs {
    pub const DEFAULT_DEGREE: u32 = 3;

    pub fn new(a20: Rational, a11: Rational, a02: Rational) -> Result<Self> {
        let c = NormalFormCoeffs {
            a20,
            a11,
            a02,
            higher_a: BTreeMap::new(),
            higher_b: BTreeMap::new(),
            degree_k: Self::DEFAULT_DEGREE,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn from_ints(a20: i64, a11: i64, a02: i64) -> Result<Self> {
        Self::new(rational::int(a20), rational::int(a11), rational::int(a02))
    }

    /// Exact binary values of the given doubles.
    pub fn from_f64(a20: f64, a11: f64, a02: f64) -> Result<Self> {
        Self::new(rational::from_f64(a20)?, rational::from_f64(a11)?, rational::from_f64(a02)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a02.is_positive() {
            return Err(Error::InvalidCoeffs(format!("a02 must be positive, got {}", self.a02)));
        }
        if self.degree_k < 2 {
            return Err(Error::InvalidCoeffs(format!("degree_k must be at least 2, got {}", self.degree_k)));
        }
        for &(p, q) in self.higher_a.keys() {
            if p + q < 3 || p + q > self.degree_k {
                return Err(Error::InvalidCoeffs(format!(
                    "a_{{{p},{q}}} lies outside degrees 3..={}",
                    self.degree_k
                )));
            }
        }
        for &i in self.higher_b.keys() {
            if i < 3 || i > self.degree_k {
                return Err(Error::InvalidCoeffs(format!("b_{i} lies outside degrees 3..={}", self.degree_k)));
            }
        }
        Ok(())
    }

    pub fn with_degree(mut self, k: u32) -> Result<Self> {
        self.degree_k = k;
        self.validate()?;
        Ok(self)
    }

    pub fn with_a(mut self, p: u32, q: u32, value: Rational) -> Result<Self> {
        self.degree_k = self.degree_k.max(p + q);
        self.higher_a.insert((p, q), value);
        self.validate()?;
        Ok(self)
    }

    pub fn with_b(mut self, i: u32, value: Rational) -> Result<Self> {
        self.degree_k = self.degree_k.max(i);
        self.higher_b.insert(i, value);
        self.validate()?;
        Ok(self)
    }

    /// `(a20, a11, a02)` as doubles.
    pub fn params(&self) -> (f64, f64, f64) {
        (rational::to_f64(&self.a20), rational::to_f64(&self.a11), rational::to_f64(&self.a02))
    }

    pub fn has_higher_terms(&self) -> bool {
        self.higher_a.values().any(|v| !v.is_zero()) || self.higher_b.values().any(|v| !v.is_zero())
    }

    /// Parses `a20,a11,a02`, each entry an integer, decimal or `p/q`.
    pub fn parse_triple(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected a20,a11,a02 but got {s:?}")));
        }
        Self::new(rational::parse(parts[0])?, rational::parse(parts[1])?, rational::parse(parts[2])?)
    }

    /// Reads `{"a20": .., "a11": .., "a02": .., "higher": {"p,q": ..},
    /// "b": {"i": ..}, "degree_k": ..}`. Values may be JSON numbers or
    /// strings such as `"-3/7"`.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let obj = doc.as_object().ok_or_else(|| Error::Parse("coefficient file must be a JSON object".into()))?;
        let get = |key: &str| -> Result<Rational> {
            match obj.get(key) {
                Some(v) => json_rational(v),
                None => Err(Error::Parse(format!("missing key {key:?}"))),
            }
        };
        let mut c = NormalFormCoeffs {
            a20: get("a20")?,
            a11: get("a11")?,
            a02: get("a02")?,
            higher_a: BTreeMap::new(),
            higher_b: BTreeMap::new(),
            degree_k: Self::DEFAULT_DEGREE,
        };
        if let Some(h) = obj.get("higher") {
            let h = h.as_object().ok_or_else(|| Error::Parse("\"higher\" must be an object".into()))?;
            for (k, v) in h {
                let (p, q) = k
                    .split_once(',')
                    .and_then(|(p, q)| Some((p.trim().parse().ok()?, q.trim().parse().ok()?)))
                    .ok_or_else(|| Error::Parse(format!("bad key {k:?} in \"higher\"; expected \"p,q\"")))?;
                c.higher_a.insert((p, q), json_rational(v)?);
            }
        }
        if let Some(b) = obj.get("b") {
            let b = b.as_object().ok_or_else(|| Error::Parse("\"b\" must be an object".into()))?;
            for (k, v) in b {
                let i = k.trim().parse().map_err(|_| Error::Parse(format!("bad key {k:?} in \"b\"")))?;
                c.higher_b.insert(i, json_rational(v)?);
            }
        }
        let max_deg = c
            .higher_a
            .keys()
            .map(|(p, q)| p + q)
            .chain(c.higher_b.keys().copied())
            .max()
            .unwrap_or(0);
        c.degree_k = match obj.get("degree_k") {
            Some(v) => v.as_u64().ok_or_else(|| Error::Parse("degree_k must be a non-negative integer".into()))? as u32,
            None => Self::DEFAULT_DEGREE.max(max_deg),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("a20".into(), Value::String(self.a20.to_string()));
        m.insert("a11".into(), Value::String(self.a11.to_string()));
        m.insert("a02".into(), Value::String(self.a02.to_string()));
        if !self.higher_a.is_empty() {
            let h = self.higher_a.iter().map(|((p, q), v)| (format!("{p},{q}"), Value::String(v.to_string())));
            m.insert("higher".into(), Value::Object(h.collect()));
        }
        if !self.higher_b.is_empty() {
            let b = self.higher_b.iter().map(|(i, v)| (i.to_string(), Value::String(v.to_string())));
            m.insert("b".into(), Value::Object(b.collect()));
        }
        m.insert("degree_k".into(), Value::from(self.degree_k));
        Value::Object(m)
    }
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => rational::parse(s),
        // serde_json prints the shortest decimal that round-trips, which is
        // what a user typed in nearly every case.
        Value::Number(n) => rational::parse(&n.to_string()),
        _ => Err(Error::Parse(format!("expected a number or \"p/q\" string, got {v}"))),
    }
}

impl fmt::Display for NormalFormCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a20, self.a11, self.a02)?;
        if self.has_higher_terms() {
            write!(f, " + higher terms to degree {}", self.degree_k)?;
        }
        Ok(())
    }
}

/// The three polynomial components of the truncated normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct BivarPoly3 {
    pub comps: [MultiPoly; 3],
}

impl BivarPoly3 {
    pub fn eval_f64(&self, u: f64, v: f64) -> Vec3 {
        Vec3::new(self.comps[0].eval_f64(&[u, v]), self.comps[1].eval_f64(&[u, v]), self.comps[2].eval_f64(&[u, v]))
    }

    pub fn diff(&self, var: usize) -> BivarPoly3 {
        BivarPoly3 { comps: [self.comps[0].diff(var), self.comps[1].diff(var), self.comps[2].diff(var)] }
    }

    pub fn compile(&self) -> PolySurface {
        PolySurface::new(self)
    }
}

fn monomial(p: u32, q: u32, c: Rational) -> MultiPoly {
    MultiPoly::from_terms(2, [(vec![p, q], c)])
}

/// Builds the truncated normal form as exact polynomials in `(u, v)`.
pub fn build_f0(c: &NormalFormCoeffs) -> Result<BivarPoly3> {
    c.validate()?;
    let x = monomial(1, 0, Rational::one());
    let mut y = monomial(1, 1, Rational::one());
    for (&i, b) in &c.higher_b {
        y = &y + &monomial(0, i, b / rational::factorial(i));
    }
    let mut z = MultiPoly::zero(2);
    let two = rational::int(2);
    z = &z + &monomial(2, 0, &c.a20 / &two);
    z = &z + &monomial(1, 1, c.a11.clone());
    z = &z + &monomial(0, 2, &c.a02 / &two);
    for (&(p, q), a) in &c.higher_a {
        z = &z + &monomial(p, q, a / (rational::factorial(p) * rational::factorial(q)));
    }
    Ok(BivarPoly3 { comps: [x, y, z] })
}

/// Rescales so that `a02 = 1`: divide the map by `a02` and substitute
/// `u -> a02 u`. Coefficients of the result are read back from the composed
/// polynomials, so higher-order terms transform consistently.
pub fn normalize_a02(c: &NormalFormCoeffs) -> Result<NormalFormCoeffs> {
    let f = build_f0(c)?;
    let scaled_u = monomial(1, 0, c.a02.clone());
    let inv = Rational::one() / &c.a02;
    let g: Vec<MultiPoly> = f.comps.iter().map(|p| p.compose(0, &scaled_u).scale(&inv)).collect();
    let z = &g[2];
    let y = &g[1];
    let coeff_a = |p: u32, q: u32| z.coeff(&[p, q]) * rational::factorial(p) * rational::factorial(q);
    let mut out = NormalFormCoeffs::new(coeff_a(2, 0), coeff_a(1, 1), coeff_a(0, 2))?;
    out.degree_k = c.degree_k;
    for (m, _) in z.terms() {
        if m[0] + m[1] >= 3 {
            out.higher_a.insert((m[0], m[1]), coeff_a(m[0], m[1]));
        }
    }
    for (m, v) in y.terms() {
        if m[0] == 0 && m[1] >= 3 {
            out.higher_b.insert(m[1], v * rational::factorial(m[1]));
        }
    }
    debug_assert_eq!(g[0], monomial(1, 0, Rational::one()));
    out.validate()?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DupinClass {
    Circle,
    Ellipse,
    ParallelLines,
    Hyperbola,
    EmptyOrDegenerate,
}

impl fmt::Display for DupinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DupinClass::Circle => "circle",
            DupinClass::Ellipse => "ellipse",
            DupinClass::ParallelLines => "parallel lines",
            DupinClass::Hyperbola => "hyperbola",
            DupinClass::EmptyOrDegenerate => "empty or degenerate",
        };
        f.write_str(s)
    }
}

/// Conic type of `(a20/2) u^2 + a11 uv + (a02/2) v^2 = const`, by the
/// signature of the quadratic form.
pub fn dupin_classify(c: &NormalFormCoeffs) -> DupinClass {
    if c.a11.is_zero() && c.a20 == c.a02 {
        return DupinClass::Circle;
    }
    // 4 det = a20 a02 - a11^2
    let det = &c.a20 * &c.a02 - &c.a11 * &c.a11;
    let trace = &c.a20 + &c.a02;
    if det.is_positive() {
        if trace.is_positive() {
            DupinClass::Ellipse
        } else {
            DupinClass::EmptyOrDegenerate
        }
    } else if det.is_zero() {
        if trace.is_zero() {
            DupinClass::EmptyOrDegenerate
        } else {
            DupinClass::ParallelLines
        }
    } else {
        DupinClass::Hyperbola
    }
}

/// `A(θ) = sqrt(cos²θ + (a11 cosθ + a02 sinθ)²)`.
pub fn cal_a(theta: f64, c: &NormalFormCoeffs) -> f64 {
    let (_, a11, a02) = c.params();
    let (s, co) = theta.sin_cos();
    (co * co + (a11 * co + a02 * s).powi(2)).sqrt()
}

/// Unit normal extended to the blown-up origin:
/// `(0, -a11 cosθ - a02 sinθ, cosθ) / A(θ)`.
pub fn extended_normal(theta: f64, c: &NormalFormCoeffs) -> Vec3 {
    let (_, a11, a02) = c.params();
    let (s, co) = theta.sin_cos();
    let a = cal_a(theta, c);
    Vec3::new(0.0, -(a11 * co + a02 * s) / a, co / a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::{frac, int};
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn round_umbrella_components() {
        let f = build_f0(&NormalFormCoeffs::from_ints(1, 0, 1).unwrap()).unwrap();
        let p = f.eval_f64(0.3, -0.2);
        assert_eq!(p.x, 0.3);
        assert!((p.y + 0.06).abs() < 1e-15);
        assert!((p.z - (0.09 / 2.0 + 0.04 / 2.0)).abs() < 1e-15);
        assert_eq!(f.eval_f64(0.0, 0.0), Vec3::zero());
        assert_eq!(f.diff(1).eval_f64(0.0, 0.0), Vec3::zero());
    }

    #[test]
    fn rejects_nonpositive_a02() {
        assert!(matches!(NormalFormCoeffs::from_ints(1, 0, 0), Err(Error::InvalidCoeffs(_))));
        assert!(matches!(NormalFormCoeffs::from_ints(1, 0, -2), Err(Error::InvalidCoeffs(_))));
    }

    #[test]
    fn normalization_of_the_two_jet() {
        let n = normalize_a02(&NormalFormCoeffs::from_ints(3, 0, 2).unwrap()).unwrap();
        assert_eq!((n.a20.clone(), n.a11.clone(), n.a02.clone()), (int(6), int(0), int(1)));
        let same = NormalFormCoeffs::from_ints(1, 0, 1).unwrap();
        assert_eq!(normalize_a02(&same).unwrap(), same);
    }

    #[test]
    fn normalization_transforms_higher_terms_by_composition() {
        let c = NormalFormCoeffs::from_ints(1, 2, 3)
            .unwrap()
            .with_a(2, 1, frac(1, 2))
            .unwrap()
            .with_a(0, 3, int(-1))
            .unwrap()
            .with_b(3, int(5))
            .unwrap();
        let n = normalize_a02(&c).unwrap();
        let (f, g) = (build_f0(&c).unwrap(), build_f0(&n).unwrap());
        for &(u, v) in &[(0.1, 0.2), (-0.3, 0.05), (0.25, -0.4)] {
            let lhs = g.eval_f64(u, v);
            let rhs = f.eval_f64(3.0 * u, v);
            for (a, b) in lhs.to_array().iter().zip(rhs.to_array()) {
                assert!((a - b / 3.0).abs() < 1e-14);
            }
        }
        assert_eq!(n.higher_a[&(2, 1)], frac(3, 2));
        assert_eq!(n.higher_b[&3], frac(5, 3));
    }

    #[test]
    fn dupin_examples() {
        let cls = |a, b, c| dupin_classify(&NormalFormCoeffs::from_ints(a, b, c).unwrap());
        assert_eq!(cls(1, 0, 1), DupinClass::Circle);
        assert_eq!(cls(0, 0, 1), DupinClass::ParallelLines);
        assert_eq!(cls(-2, 0, 1), DupinClass::Hyperbola);
        assert_eq!(cls(3, 0, 1), DupinClass::Ellipse);
        assert_eq!(cls(1, 1, 1), DupinClass::ParallelLines);
        assert_eq!(cls(1, 2, 1), DupinClass::Hyperbola);
    }

    #[test]
    fn extended_normal_values() {
        let c = NormalFormCoeffs::from_ints(5, 0, 1).unwrap();
        let n = extended_normal(FRAC_PI_2, &c);
        assert!(n.x.abs() < 1e-15 && (n.y + 1.0).abs() < 1e-15 && n.z.abs() < 1e-15);
        let n0 = extended_normal(0.0, &c);
        assert_eq!(n0, Vec3::new(0.0, 0.0, 1.0));
        let c2 = NormalFormCoeffs::from_ints(0, 3, 1).unwrap();
        assert!((cal_a(0.0, &c2) - 10f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"a20": "-3/7", "a11": 0.25, "a02": 2, "higher": {"2,1": "1/3"}, "b": {"3": -1}}"#;
        let c = NormalFormCoeffs::from_json_str(text).unwrap();
        assert_eq!(c.a20, frac(-3, 7));
        assert_eq!(c.a11, frac(1, 4));
        assert_eq!(c.higher_a[&(2, 1)], frac(1, 3));
        assert_eq!(c.higher_b[&3], int(-1));
        assert_eq!(c.degree_k, 3);
        let back = NormalFormCoeffs::from_json_str(&c.to_json().to_string()).unwrap();
        assert_eq!(back, c);
        assert!(NormalFormCoeffs::from_json_str(r#"{"a20": 1, "a11": 0, "a02": 0}"#).is_err());
        assert!(NormalFormCoeffs::from_json_str(r#"{"a20": 1, "a11": 0, "a02": 1, "higher": {"1,1": 2}}"#).is_err());
    }
}
