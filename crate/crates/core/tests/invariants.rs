use std::f64::consts::PI;

use graphene_hf::cutoff::CutoffPair;
use graphene_hf::ground_state::{RadialOccupation, TiProblem};
use graphene_hf::model::{band_overlap, dispersion, g_cached, projector, v_eff, Band};
use graphene_hf::response::{b0_kernel, b_kernel_vw, linear_density, DefectDensity};
use graphene_hf::{ModelParams, MomentumVec, QuadratureSpec};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn projectors_resolve_identity(r in 1e-3f64..1.0, t in 0.0f64..(2.0 * PI)) {
        let p = MomentumVec::from_polar(r, t);
        let plus = projector(p, Band::Plus).unwrap();
        let minus = projector(p, Band::Minus).unwrap();
        let sum = plus + minus;
        prop_assert!(sum.max_abs_diff(&graphene_hf::SpinorMatrix::identity()) < 1e-14);
        prop_assert!((plus * plus).max_abs_diff(&plus) < 1e-14);
        prop_assert!((plus * minus).max_abs_diff(&graphene_hf::SpinorMatrix::zero()) < 1e-14);
    }

    #[test]
    fn band_overlap_in_unit_interval(a in 1e-3f64..1.0, b in 1e-3f64..1.0, s in 0.0f64..6.3, t in 0.0f64..6.3) {
        let v = band_overlap(MomentumVec::from_polar(a, s), MomentumVec::from_polar(b, t)).unwrap();
        prop_assert!((-1e-15..=1.0 + 1e-15).contains(&v));
    }

    #[test]
    fn g_is_increasing(r in 1e-3f64..1e6, f in 1.01f64..3.0) {
        prop_assert!(g_cached(r * f) > g_cached(r));
    }

    #[test]
    fn dispersion_increasing_and_above_bare(p in 1e-4f64..0.99, f in 1.001f64..1.01) {
        let params = ModelParams::graphene();
        let e = dispersion(p, &params).unwrap();
        prop_assert!(dispersion((p * f).min(1.0), &params).unwrap() > e);
        prop_assert!(e > params.v_f() * p);
        prop_assert!(v_eff(p, &params).unwrap() > params.v_f());
    }

    #[test]
    fn response_depends_on_cutoff_over_k(ell in 0.6f64..50.0, scale in 0.2f64..5.0) {
        let spec = QuadratureSpec::relaxed();
        let unit = ModelParams::graphene();
        let scaled = ModelParams::new(2.2, scale).unwrap();
        let a = b_kernel_vw(1.0 / ell, &unit, &spec).unwrap();
        let b = b_kernel_vw(scale / ell, &scaled, &spec).unwrap();
        prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-12));
        let a0 = b0_kernel(1.0 / ell, &unit).unwrap();
        prop_assert!(a > 0.0 && a < a0);
    }

    #[test]
    fn partition_of_unity(t in 0.0f64..3.0, r in 0.5f64..20.0) {
        let p = CutoffPair::bump(r);
        let (c, e) = (p.chi_scaled(t * r), p.eta_scaled(t * r));
        prop_assert!((c * c + e * e - 1.0).abs() < 1e-12);
    }
}

#[test]
fn response_vanishes_outside_the_lens() {
    let p = ModelParams::graphene();
    let spec = QuadratureSpec::default();
    assert_eq!(b_kernel_vw(2.0, &p, &spec).unwrap(), 0.0);
    assert_eq!(b0_kernel(2.5, &p).unwrap(), 0.0);
    assert!(b_kernel_vw(0.0, &p, &spec).is_err());
}

#[test]
fn induced_density_opposes_the_defect() {
    let p = ModelParams::graphene();
    let nu = DefectDensity::gaussian(1.0, 2.0).unwrap();
    for &k in &[0.01, 0.1, 0.5] {
        let rho = linear_density(&nu, 0.5, k, &p).unwrap();
        assert!(rho > 0.0 && rho < 0.5 * nu.fourier(k).unwrap());
    }
}

#[test]
fn free_sea_is_the_minimizer_above_threshold() {
    let problem = TiProblem::with_nodes(ModelParams::new(2.1, 1.0).unwrap(), 24).unwrap();
    let out = problem
        .minimize(&RadialOccupation::constant(24, 0.2), 1.0, 2000, 1e-12)
        .unwrap()
        .into_result()
        .unwrap();
    assert!(out.occupation.distance_to_sea() < 1e-3);
}
