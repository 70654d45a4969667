//! Seeded random samples of normal-form coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::normal_form::NormalFormCoeffs;
use crate::poly::rational::frac;
use crate::poly::Rational;

pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the grid `{k / den : lo ≤ k / den ≤ hi}`.
pub fn grid_rational(rng: &mut impl Rng, lo: i64, hi: i64, den: i64) -> Rational {
    frac(rng.gen_range(lo * den..=hi * den), den)
}

/// `n` coefficient triples with `a20 ∈ [-3, 3]`, `a11 ∈ [-2, 2]`,
/// `a02 ∈ [1/4, 5/2]`, all multiples of 1/100.
pub fn random_coeff_sets(seed: u64, n: usize) -> Vec<NormalFormCoeffs> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let a20 = grid_rational(&mut r, -3, 3, 100);
            let a11 = grid_rational(&mut r, -2, 2, 100);
            let a02 = frac(r.gen_range(25..=250), 100);
            NormalFormCoeffs::new(a20, a11, a02).expect("a02 is positive")
        })
        .collect()
}

/// The three named sets `(1,0,1)`, `(-2,0,1)`, `(-4,0,1)` followed by `n`
/// random ones.
pub fn battery_sets(seed: u64, n: usize) -> Vec<NormalFormCoeffs> {
    let mut out: Vec<NormalFormCoeffs> = [(1, 0, 1), (-2, 0, 1), (-4, 0, 1)]
        .iter()
        .map(|&(a, b, c)| NormalFormCoeffs::from_ints(a, b, c).expect("valid"))
        .collect();
    out.extend(random_coeff_sets(seed, n));
    out
}

/// `n` triples with `a02 = 1`, `a20 ∈ [-6, 4]`, `a11 ∈ [-3, 3]` on a 1/100
/// grid. The range covers every case of the quartic root counts.
pub fn unit_a02_sets(seed: u64, n: usize) -> Vec<NormalFormCoeffs> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let a20 = grid_rational(&mut r, -6, 4, 100);
            let a11 = grid_rational(&mut r, -3, 3, 100);
            NormalFormCoeffs::new(a20, a11, frac(1, 1)).expect("a02 is positive")
        })
        .collect()
}
