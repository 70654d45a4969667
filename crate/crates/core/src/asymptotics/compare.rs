//! Extracted first term versus a closed form on a θ-grid.

use std::fmt::Write as _;

use super::closed_form::ClosedFormId;
use super::{first_term_from_samples, sample, SweepConfig};
use crate::circle::Umbrella;
use crate::error::Result;

/// Which closed form a comparison is made against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormVariant {
    Stated,
    Rederived,
}

impl FormVariant {
    pub fn name(self) -> &'static str {
        match self {
            FormVariant::Stated => "stated",
            FormVariant::Rederived => "rederived",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareRow {
    pub theta: f64,
    pub pipeline_value: f64,
    pub closed_form_value: f64,
    pub rel_err: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareReport {
    pub label: String,
    pub expected_order: i32,
    pub estimated_order: Option<i32>,
    pub tol: f64,
    pub max_rel_err: f64,
    pub worst_theta: f64,
    pub rows: Vec<CompareRow>,
}

impl CompareReport {
    pub fn order_matches(&self) -> bool {
        self.estimated_order == Some(self.expected_order)
    }

    pub fn passed(&self) -> bool {
        self.order_matches() && self.max_rel_err < self.tol
    }

    pub fn failing_thetas(&self) -> Vec<f64> {
        self.rows.iter().filter(|r| !r.pass).map(|r| r.theta).collect()
    }

    pub fn summary(&self) -> String {
        let order = match self.estimated_order {
            Some(k) => k.to_string(),
            None => "unresolved".into(),
        };
        format!(
            "{} {}: order {} (expected {}), max rel err {:.3e} at theta = {:.4}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.label,
            order,
            self.expected_order,
            self.max_rel_err,
            self.worst_theta
        )
    }

    /// Rows as CSV: `id,theta,pipeline_value,closed_form_value,rel_err,verdict`.
    pub fn write_csv_rows(&self, out: &mut String) {
        for r in &self.rows {
            let verdict = if r.pass && self.order_matches() { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                self.label, r.theta, r.pipeline_value, r.closed_form_value, r.rel_err, verdict
            );
        }
    }
}

pub const CSV_HEADER: &str = "id,theta,pipeline_value,closed_form_value,rel_err,verdict";

pub fn reports_to_csv(reports: &[CompareReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        r.write_csv_rows(&mut out);
    }
    out
}

/// Relative error with a floor at 1% of the closed form's rms, so isolated
/// zeros of the first term don't blow the ratio up.
pub fn relative_errors(pipeline: &[f64], closed: &[f64]) -> Vec<f64> {
    let rms = (closed.iter().map(|c| c * c).sum::<f64>() / closed.len().max(1) as f64).sqrt();
    let floor = (0.01 * rms).max(f64::MIN_POSITIVE);
    pipeline.iter().zip(closed).map(|(p, c)| (p - c).abs() / c.abs().max(floor)).collect()
}

/// Compares the extracted first term of `f` at `expected_order` with
/// `closed(θ)`. The order itself is estimated independently and must agree.
pub fn compare_fn<F, C>(
    label: &str,
    f: &F,
    closed: &C,
    thetas: &[f64],
    cfg: &SweepConfig,
    expected_order: i32,
    tol: f64,
) -> Result<CompareReport>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
    C: Fn(f64) -> Result<f64>,
{
    let samples = sample(f, thetas, cfg)?;
    let ft = first_term_from_samples(&samples, thetas, cfg, Some(expected_order))?;
    let closed_vals: Vec<f64> = thetas.iter().map(|&t| closed(t)).collect::<Result<_>>()?;
    let errs = relative_errors(&ft.coeffs, &closed_vals);
    let mut rows = Vec::with_capacity(thetas.len());
    let (mut max_rel_err, mut worst_theta) = (0.0f64, f64::NAN);
    for i in 0..thetas.len() {
        let e = errs[i];
        // NaN counts as the worst possible error
        if !(e <= max_rel_err) {
            max_rel_err = if e.is_nan() { f64::INFINITY } else { e };
            worst_theta = thetas[i];
        }
        rows.push(CompareRow {
            theta: thetas[i],
            pipeline_value: ft.coeffs[i],
            closed_form_value: closed_vals[i],
            rel_err: e,
            pass: e < tol,
        });
    }
    Ok(CompareReport {
        label: label.to_string(),
        expected_order,
        estimated_order: ft.estimated_order,
        tol,
        max_rel_err,
        worst_theta,
        rows,
    })
}

/// Pipeline quantity for `id` against its stated or rederived closed form.
pub fn compare(
    id: ClosedFormId,
    variant: FormVariant,
    umbrella: &Umbrella,
    thetas: &[f64],
    cfg: &SweepConfig,
    tol: f64,
) -> Result<CompareReport> {
    let f = |r: f64, t: f64| id.pipeline(umbrella, r, t);
    let coeffs = &umbrella.coeffs;
    let (order, label) = match variant {
        FormVariant::Stated => (id.stated_order(), id.name().to_string()),
        FormVariant::Rederived => (id.rederived_order(), format!("{}:rederived", id.name())),
    };
    let closed = |t: f64| match variant {
        FormVariant::Stated => id.stated(t, coeffs),
        FormVariant::Rederived => id.rederived(t, coeffs),
    };
    compare_fn(&label, &f, &closed, thetas, cfg, order, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::closed_form::{stated_flipped_with, FlippedTable};
    use crate::asymptotics::theta_grid;
    use crate::normal_form::NormalFormCoeffs;

    fn umb(a20: f64, a11: f64, a02: f64) -> Umbrella {
        Umbrella::new(&NormalFormCoeffs::from_f64(a20, a11, a02).unwrap()).unwrap()
    }

    fn cfg() -> SweepConfig {
        SweepConfig::default()
    }

    #[test]
    fn kappa2_hat_matches_for_several_sets() {
        let grid = theta_grid(48, 0.05);
        for (a20, a11, a02) in [(1.0, 0.0, 1.0), (-2.0, 0.0, 1.0), (0.3, -0.7, 1.6), (2.5, 1.1, 0.6)] {
            let rep = compare(ClosedFormId::Kappa2Hat, FormVariant::Stated, &umb(a20, a11, a02), &grid, &cfg(), 1e-3)
                .unwrap();
            assert!(rep.passed(), "{}", rep.summary());
        }
    }

    #[test]
    fn kappa_g_matches_for_round_umbrella() {
        let grid = theta_grid(48, 0.05);
        let rep = compare(ClosedFormId::KappaG, FormVariant::Stated, &umb(1.0, 0.0, 1.0), &grid, &cfg(), 1e-3).unwrap();
        assert!(rep.passed(), "{}", rep.summary());
    }

    #[test]
    fn rederived_forms_match_pipeline() {
        let grid = theta_grid(36, 0.05);
        let u = umb(0.7, 0.3, 1.3);
        for id in ClosedFormId::ALL {
            let rep = compare(id, FormVariant::Rederived, &u, &grid, &cfg(), 1e-3).unwrap();
            assert!(rep.passed(), "{}", rep.summary());
        }
    }

    #[test]
    fn stated_normal_curvature_is_off() {
        let grid = theta_grid(36, 0.05);
        let rep = compare(ClosedFormId::KappaN, FormVariant::Stated, &umb(0.7, 0.3, 1.3), &grid, &cfg(), 1e-3).unwrap();
        assert!(rep.order_matches());
        assert!(!rep.passed());
    }

    #[test]
    fn perturbed_table_entry_is_caught() {
        let grid = theta_grid(36, 0.05);
        let c = NormalFormCoeffs::from_f64(0.7, 0.3, 1.3).unwrap();
        let base = FlippedTable::published();
        let bumped = base.perturbed_k(14, 1);
        let reference = |_r: f64, t: f64| -> Result<f64> { stated_flipped_with(base, ClosedFormId::KFlipped, t, &c) };
        let same = |t: f64| stated_flipped_with(base, ClosedFormId::KFlipped, t, &c);
        let off = |t: f64| stated_flipped_with(&bumped, ClosedFormId::KFlipped, t, &c);
        let ok = compare_fn("K_Flipped", &reference, &same, &grid, &cfg(), 0, 1e-3).unwrap();
        assert!(ok.passed(), "{}", ok.summary());
        let bad = compare_fn("K_Flipped", &reference, &off, &grid, &cfg(), 0, 1e-3).unwrap();
        assert!(!bad.passed());
    }

    #[test]
    fn csv_shape() {
        let grid = [1.0, 2.0];
        let rep = compare(ClosedFormId::Kappa3Hat, FormVariant::Stated, &umb(1.0, 0.0, 1.0), &grid, &cfg(), 1e-3)
            .unwrap();
        let csv = reports_to_csv(&[rep]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines.len(), 3);
        assert!(lines[1].starts_with("F_k3hat,1,"));
        assert!(lines[1].ends_with(",PASS"));
    }
}
