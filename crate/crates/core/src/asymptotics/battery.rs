//! Every closed form against the pipeline over many coefficient sets.

use rayon::prelude::*;

use super::closed_form::ClosedFormId;
use super::compare::{compare, CompareReport, FormVariant};
use super::{first_term_from_samples, sample, SweepConfig};
use crate::circle::Umbrella;
use crate::error::Result;
use crate::normal_form::NormalFormCoeffs;

#[derive(Clone, Debug)]
pub struct BatteryEntry {
    pub coeffs: NormalFormCoeffs,
    pub id: ClosedFormId,
    pub report: CompareReport,
}

/// Compares all ids on all sets. Output order is sets first, then ids in
/// `ClosedFormId::ALL` order, independent of scheduling.
pub fn first_term_battery(
    sets: &[NormalFormCoeffs],
    ids: &[ClosedFormId],
    variant: FormVariant,
    thetas: &[f64],
    cfg: &SweepConfig,
    tol: f64,
) -> Result<Vec<BatteryEntry>> {
    let per_set: Vec<Vec<BatteryEntry>> = sets
        .par_iter()
        .map(|c| {
            let u = Umbrella::new(c)?;
            ids.iter()
                .map(|&id| {
                    let report = compare(id, variant, &u, thetas, cfg, tol)?;
                    Ok(BatteryEntry { coeffs: c.clone(), id, report })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(per_set.into_iter().flatten().collect())
}

/// Order of each pipeline quantity in `r`, estimated without any hint.
pub fn estimate_orders(
    umbrella: &Umbrella,
    ids: &[ClosedFormId],
    thetas: &[f64],
    cfg: &SweepConfig,
) -> Vec<(ClosedFormId, Result<i32>)> {
    ids.iter()
        .map(|&id| {
            let f = |r: f64, t: f64| id.pipeline(umbrella, r, t);
            let order = sample(&f, thetas, cfg).and_then(|s| first_term_from_samples(&s, thetas, cfg, None)).map(|ft| ft.order);
            (id, order)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::theta_grid;
    use crate::sampling::random_coeff_sets;

    #[test]
    fn orders_of_the_rederived_forms() {
        let u = Umbrella::new(&NormalFormCoeffs::from_ints(1, 0, 1).unwrap()).unwrap();
        let grid = theta_grid(24, 0.05);
        for (id, order) in estimate_orders(&u, &ClosedFormId::ALL, &grid, &SweepConfig::default()) {
            assert_eq!(order.unwrap(), id.rederived_order(), "{id}");
        }
    }

    #[test]
    fn battery_is_ordered_and_rederived_passes() {
        let sets = random_coeff_sets(3, 4);
        let grid = theta_grid(24, 0.05);
        let ids = [ClosedFormId::Kappa3Hat, ClosedFormId::DeltaFlipped];
        let out = first_term_battery(&sets, &ids, FormVariant::Rederived, &grid, &SweepConfig::default(), 1e-3).unwrap();
        assert_eq!(out.len(), 8);
        for (i, e) in out.iter().enumerate() {
            assert_eq!(e.coeffs, sets[i / 2]);
            assert_eq!(e.id, ids[i % 2]);
            assert!(e.report.passed(), "{}", e.report.summary());
        }
    }
}
