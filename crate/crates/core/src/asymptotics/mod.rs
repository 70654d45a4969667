//! Leading-order behaviour in the circle radius: estimate the power of `r`
//! and its coefficient function of θ from a sweep over radii.

pub mod battery;
pub mod closed_form;
pub mod compare;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use battery::{estimate_orders, first_term_battery, BatteryEntry};
pub use closed_form::{leading_terms, ClosedFormId, FlippedTable, LeadingTerms};
pub use compare::{compare, compare_fn, reports_to_csv, CompareReport, CompareRow, FormVariant};

/// Radius ladder used by default. Everything along the circle is computed on
/// exact θ-jets, so small radii cost no precision, and they keep the fit
/// well inside the asymptotic regime even for small `a02`.
pub const DEFAULT_RADII: [f64; 7] = [0.01, 0.0075, 0.005, 0.00375, 0.0025, 0.001875, 0.00125];
/// A coarser ladder, twenty times larger.
pub const COARSE_RADII: [f64; 7] = [0.2, 0.15, 0.1, 0.075, 0.05, 0.0375, 0.025];

/// How the radius sweep is laid out and fitted.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    /// Strictly decreasing, at least four values.
    pub radii: Vec<f64>,
    /// Number of terms `1, r, r², ...` in the least-squares fit.
    pub fit_terms: usize,
    /// Use `r = ρ |sinθ|` at each θ instead of `r = ρ`. The expansions are
    /// effectively in `r / |sinθ|`, so this keeps the sweep equally far into
    /// the asymptotic regime at every angle.
    pub theta_scaled: bool,
    /// Tolerance on the log-ratio order estimates.
    pub order_tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { radii: DEFAULT_RADII.to_vec(), fit_terms: 3, theta_scaled: true, order_tol: 0.2 }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radii.len() < 4 {
            return Err(Error::Domain(format!("need at least 4 radii, got {}", self.radii.len())));
        }
        if self.radii.iter().any(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(Error::Domain("radii must be positive and finite".into()));
        }
        if self.radii.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Domain("radii must be strictly decreasing".into()));
        }
        if self.fit_terms == 0 || self.fit_terms > self.radii.len() {
            return Err(Error::Domain(format!("cannot fit {} terms to {} radii", self.fit_terms, self.radii.len())));
        }
        Ok(())
    }

    /// Radius actually used for sweep index `j` at angle θ.
    pub fn radius(&self, j: usize, theta: f64) -> f64 {
        if self.theta_scaled {
            self.radii[j] * theta.sin().abs()
        } else {
            self.radii[j]
        }
    }
}

/// Leading power of `r` and its coefficient sampled on a θ-grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstTerm {
    pub order: i32,
    /// Order suggested by the data (equal to `order` unless a hint overrode it).
    pub estimated_order: Option<i32>,
    pub thetas: Vec<f64>,
    pub coeffs: Vec<f64>,
    /// Successive log-ratio order estimates, largest radii first.
    pub ratios: Vec<f64>,
}

/// Log-ratio order estimates from per-radius magnitudes.
pub fn log_ratios(radii: &[f64], magnitudes: &[f64]) -> Vec<f64> {
    radii
        .windows(2)
        .zip(magnitudes.windows(2))
        .map(|(r, m)| (m[0] / m[1]).ln() / (r[0] / r[1]).ln())
        .collect()
}

/// The nearest integer to the last three ratios, if they all lie within `tol`
/// of it.
pub fn stable_order(ratios: &[f64], tol: f64) -> Result<i32> {
    if ratios.len() < 3 {
        return Err(Error::OrderUnresolved(format!("only {} ratios", ratios.len())));
    }
    let last = &ratios[ratios.len() - 3..];
    if last.iter().any(|x| !x.is_finite()) {
        return Err(Error::OrderUnresolved(format!("non-finite ratios {last:?}")));
    }
    let k = last[last.len() - 1].round();
    if last.iter().all(|x| (x - k).abs() <= tol) {
        Ok(k as i32)
    } else {
        Err(Error::OrderUnresolved(format!("log-ratios {last:?} do not settle on an integer")))
    }
}

/// Least-squares fit of `y_j ≈ c0 + c1 r_j + ... `; returns all coefficients.
pub fn poly_fit(rs: &[f64], ys: &[f64], terms: usize) -> Vec<f64> {
    // Scale r to O(1) for conditioning.
    let scale = rs.iter().fold(0.0f64, |m, r| m.max(r.abs())).max(f64::MIN_POSITIVE);
    let mut ata = vec![vec![0.0; terms]; terms];
    let mut aty = vec![0.0; terms];
    for (&r, &y) in rs.iter().zip(ys) {
        let x = r / scale;
        let mut p = vec![1.0; terms];
        for k in 1..terms {
            p[k] = p[k - 1] * x;
        }
        for i in 0..terms {
            aty[i] += p[i] * y;
            for j in 0..terms {
                ata[i][j] += p[i] * p[j];
            }
        }
    }
    let mut c = solve(ata, aty);
    for (k, ck) in c.iter_mut().enumerate() {
        *ck /= scale.powi(k as i32);
    }
    c
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for k in col..n {
                a[r][k] -= f * a[col][k];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    x
}

/// Samples `f(r, θ)` over the sweep: `samples[i][j]` is θ index `i`, radius `j`.
pub fn sample<F>(f: &F, thetas: &[f64], cfg: &SweepConfig) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    thetas
        .par_iter()
        .map(|&th| {
            (0..cfg.radii.len())
                .map(|j| {
                    let v = f(cfg.radius(j, th), th)?;
                    if v.is_finite() {
                        Ok(v)
                    } else {
                        Err(Error::NonFinite(format!("value {v} at r = {}, theta = {th}", cfg.radius(j, th))))
                    }
                })
                .collect()
        })
        .collect()
}

/// Order and leading coefficient from precomputed samples.
pub fn first_term_from_samples(
    samples: &[Vec<f64>],
    thetas: &[f64],
    cfg: &SweepConfig,
    hinted_order: Option<i32>,
) -> Result<FirstTerm> {
    cfg.validate()?;
    let nr = cfg.radii.len();
    let rms: Vec<f64> = (0..nr)
        .map(|j| (samples.iter().map(|row| row[j] * row[j]).sum::<f64>() / samples.len().max(1) as f64).sqrt())
        .collect();
    let ratios = log_ratios(&cfg.radii, &rms);
    let estimated = stable_order(&ratios, cfg.order_tol);
    let order = match (hinted_order, &estimated) {
        (Some(h), _) => h,
        (None, Ok(k)) => *k,
        (None, Err(e)) => return Err(e.clone()),
    };
    let coeffs = thetas
        .iter()
        .zip(samples)
        .map(|(&th, row)| {
            let rs: Vec<f64> = (0..nr).map(|j| cfg.radius(j, th)).collect();
            let ys: Vec<f64> = rs.iter().zip(row).map(|(r, y)| y / r.powi(order)).collect();
            poly_fit(&rs, &ys, cfg.fit_terms)[0]
        })
        .collect();
    Ok(FirstTerm { order, estimated_order: estimated.ok(), thetas: thetas.to_vec(), coeffs, ratios })
}

pub fn estimate_first_term<F>(f: &F, thetas: &[f64], cfg: &SweepConfig, hinted_order: Option<i32>) -> Result<FirstTerm>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    cfg.validate()?;
    let samples = sample(f, thetas, cfg)?;
    first_term_from_samples(&samples, thetas, cfg, hinted_order)
}

/// Estimated order of `f - c(θ) r^i` over the sweep, for checking that the
/// remainder is genuinely of higher order.
pub fn remainder_order(samples: &[Vec<f64>], ft: &FirstTerm, cfg: &SweepConfig) -> Result<i32> {
    let nr = cfg.radii.len();
    let rms: Vec<f64> = (0..nr)
        .map(|j| {
            let s: f64 = samples
                .iter()
                .zip(&ft.coeffs)
                .zip(&ft.thetas)
                .map(|((row, c), &th)| {
                    let w = cfg.radius(j, th) / cfg.radii[j];
                    // divide out the per-angle scale so the rms has a clean power law
                    let rem = row[j] - c * cfg.radius(j, th).powi(ft.order);
                    (rem / w.powi(ft.order + 1)).powi(2)
                })
                .sum();
            (s / samples.len().max(1) as f64).sqrt()
        })
        .collect();
    stable_order(&log_ratios(&cfg.radii, &rms), 0.35)
}

/// `n` equally spaced angles in `(0, π)` (cell midpoints), dropping those with
/// `|sinθ| < guard`.
pub fn theta_grid(n: usize, guard: f64) -> Vec<f64> {
    let h = std::f64::consts::PI / n as f64;
    (0..n).map(|i| (i as f64 + 0.5) * h).filter(|t| t.sin().abs() >= guard).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_power_series() {
        let f = |r: f64, _t: f64| Ok(2.0 * r * r + r * r * r);
        let grid = [0.5, 1.0, 2.0];
        let ft = estimate_first_term(&f, &grid, &SweepConfig::default(), None).unwrap();
        assert_eq!(ft.order, 2);
        for c in ft.coeffs {
            assert!((c - 2.0).abs() < 1e-6);
        }
    }

    #[test]
    fn theta_dependent_coefficient_with_scaled_radii() {
        let f = |r: f64, t: f64| Ok(t.cos() * r + (r / t.sin()).powi(2));
        let grid = theta_grid(36, 0.05);
        let cfg = SweepConfig { theta_scaled: true, ..SweepConfig::default() };
        let samples = sample(&f, &grid, &cfg).unwrap();
        let ft = first_term_from_samples(&samples, &grid, &cfg, None).unwrap();
        assert_eq!(ft.order, 1);
        for (c, t) in ft.coeffs.iter().zip(&grid) {
            assert!((c - t.cos()).abs() < 1e-9);
        }
        assert!(remainder_order(&samples, &ft, &cfg).unwrap() >= 2);
    }

    #[test]
    fn unresolved_order_is_reported() {
        // oscillating in log r: no stable power
        let f = |r: f64, _t: f64| Ok(r * (2.0 + (40.0 * r.ln()).sin()));
        let err = estimate_first_term(&f, &[1.0], &SweepConfig::default(), None).unwrap_err();
        assert!(matches!(err, Error::OrderUnresolved(_)));
    }

    #[test]
    fn config_validation() {
        let bad = SweepConfig { radii: vec![0.1, 0.2, 0.05, 0.01], ..SweepConfig::default() };
        assert!(bad.validate().is_err());
        let short = SweepConfig { radii: vec![0.1, 0.05, 0.01], ..SweepConfig::default() };
        assert!(short.validate().is_err());
        assert!(SweepConfig::default().validate().is_ok());
    }

    #[test]
    fn fit_recovers_exact_quadratic() {
        let rs = [0.3, 0.2, 0.1, 0.05];
        let ys: Vec<f64> = rs.iter().map(|r| 1.5 - 2.0 * r + 4.0 * r * r).collect();
        let c = poly_fit(&rs, &ys, 3);
        assert!((c[0] - 1.5).abs() < 1e-12 && (c[1] + 2.0).abs() < 1e-10 && (c[2] - 4.0).abs() < 1e-9);
    }
}
