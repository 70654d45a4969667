use proptest::prelude::*;
use umbrella_core::circle::{FrameChoice, Umbrella};
use umbrella_core::normal_form::{extended_normal, NormalFormCoeffs};
use umbrella_core::poly::rational::{frac, to_f64};
use umbrella_core::poly::sturm::{distinct_real_roots, real_roots};
use umbrella_core::poly::unipoly::UniPoly;
use umbrella_core::poly::Rational;
use umbrella_core::roots::{fk_poly, fk_roots_corrected, g_max_multiplicity, g_poly};

fn rat() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| frac(n, d))
}

fn coeffs() -> impl Strategy<Value = NormalFormCoeffs> {
    (-400i64..=400, -300i64..=300, 1i64..=400)
        .prop_map(|(a, b, c)| NormalFormCoeffs::new(frac(a, 100), frac(b, 100), frac(c, 100)).unwrap())
}

/// Product of (x - r)^m over the given roots, times x² + q with q > 0.
fn with_roots(roots: &[(Rational, usize)], q: &Rational) -> UniPoly {
    let mut p = UniPoly::new(vec![q.clone(), Rational::from_integer(0.into()), Rational::from_integer(1.into())]);
    for (r, m) in roots {
        let lin = UniPoly::new(vec![-r.clone(), Rational::from_integer(1.into())]);
        for _ in 0..*m {
            p = &p * &lin;
        }
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn sturm_counts_distinct_roots(
        roots in prop::collection::vec((rat(), 1usize..=3), 0..5),
        q in (1i64..50, 1i64..9).prop_map(|(n, d)| frac(n, d)),
    ) {
        let p = with_roots(&roots, &q);
        let mut distinct: Vec<Rational> = roots.iter().map(|(r, _)| r.clone()).collect();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(distinct_real_roots(&p).unwrap(), distinct.len());
        let found = real_roots(&p).unwrap();
        prop_assert_eq!(found.len(), distinct.len());
        for (f, r) in found.iter().zip(&distinct) {
            prop_assert!((f.value - to_f64(r)).abs() < 1e-9, "{} vs {}", f.value, to_f64(r));
        }
    }

    #[test]
    fn g_has_at_most_two_distinct_roots_and_no_triple_root(c in coeffs()) {
        let g = g_poly(&c);
        prop_assert!(distinct_real_roots(&g).unwrap() <= 2);
        prop_assert!(g_max_multiplicity(&c) <= 2);
    }

    #[test]
    fn corrected_fk_formula_matches_isolated_roots(c in coeffs()) {
        prop_assume!(c.a20 != c.a02);
        let exact: Vec<f64> = real_roots(&fk_poly(&c)).unwrap().into_iter().map(|r| r.value).collect();
        let mut formula = fk_roots_corrected(&c).unwrap().roots;
        formula.sort_by(f64::total_cmp);
        prop_assert_eq!(formula.len(), exact.len());
        for (a, b) in formula.iter().zip(&exact) {
            prop_assert!((a - b).abs() < 1e-8 * b.abs().max(1.0), "{formula:?} vs {exact:?}");
        }
    }

    #[test]
    fn extended_normal_is_unit_and_is_the_limit(c in coeffs(), theta in 0.0f64..std::f64::consts::TAU) {
        let n0 = extended_normal(theta, &c);
        prop_assert!((n0.norm() - 1.0).abs() < 1e-12);
        let u = Umbrella::new(&c).unwrap();
        let r = 1e-5;
        let n = u.unit_normal(r * theta.cos(), r * theta.sin());
        prop_assert!((n - n0).norm() < 1e-3, "{:?} vs {:?}", n, n0);
    }

    #[test]
    fn geodesic_curvature_two_routes(c in coeffs(), r in 0.01f64..0.3, theta in 0.1f64..3.0) {
        let u = Umbrella::new(&c).unwrap();
        let curve = u.circle(r).unwrap();
        let a = curve.kappa_g(theta, 0.05).unwrap();
        let b = curve.kappa_g_intrinsic(theta, 0.05).unwrap();
        prop_assert!((a - b).abs() <= 1e-6 * a.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn frames_are_orthonormal(c in coeffs(), r in 0.01f64..0.3, theta in 0.1f64..3.0) {
        let u = Umbrella::new(&c).unwrap();
        let curve = u.circle(r).unwrap();
        for choice in FrameChoice::BOTH {
            let f = curve.frame(theta, choice).unwrap();
            prop_assert!(f.orthonormality_residual() < 1e-10);
        }
    }
}
