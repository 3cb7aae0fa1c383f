//! Capacity quadrature against the scaled exponential-integral oracle, plus
//! the gamma-function confirmation of the default interference constant.

mod common;

use covsim::d2d_capacity::{interference_constant, system_capacity, CapacityError, CapacityParams};

fn params_with_zeta(zeta: f64) -> CapacityParams {
    CapacityParams {
        lambda_d: 3.3e-4,
        lambda_r: 0.3,
        r_d_m: 1.0,
        n_hops: 1,
        alpha: 3.0,
        v_d_threshold: 1.0,
        p_relay_w: 1.0,
        p_d2d_w: 1.0,
        c_alpha: zeta,
    }
}

#[test]
fn quadrature_tracks_oracle_across_seven_decades() {
    // log-spaced zeta grid over [1e-3, 1e4], 8 points per decade
    for k in 0..=56 {
        let zeta = 10f64.powf(-3.0 + k as f64 / 8.0);
        let oracle = common::exp_e1(zeta);
        let tol = oracle * 1e-10;
        let result = system_capacity(&params_with_zeta(zeta), tol).unwrap();
        let prefactor = 3.3e-4 * (3.3e-4 + result.gamma_dr * 0.3);
        let rel = (result.capacity - oracle * prefactor).abs() / (oracle * prefactor);
        assert!(rel <= 1e-9, "zeta = {zeta:.3e}: rel error {rel:.3e}");
        assert!(result.quadrature_abs_error <= tol);
    }
}

#[test]
fn reported_error_bound_is_honest() {
    for &zeta in &[1e-2, 1.0, 50.0, 2e3] {
        let oracle = common::exp_e1(zeta);
        let tol = oracle * 1e-8;
        let result = system_capacity(&params_with_zeta(zeta), tol).unwrap();
        let prefactor = 3.3e-4 * (3.3e-4 + result.gamma_dr * 0.3);
        let abs_err = (result.capacity / prefactor - oracle).abs();
        assert!(
            abs_err <= result.quadrature_abs_error,
            "zeta = {zeta}: true error {abs_err:e} exceeds reported {:e}",
            result.quadrature_abs_error
        );
    }
}

#[test]
fn interference_constant_matches_gamma_product() {
    // C_alpha = (2 pi / alpha) * Gamma(2/alpha) * Gamma(1 - 2/alpha),
    // evaluated through the Lanczos ln-gamma oracle.
    for &alpha in &[2.2, 2.5, 3.0, 3.5, 4.0, 6.0] {
        let z = 2.0 / alpha;
        let gamma_product = (common::ln_gamma(z) + common::ln_gamma(1.0 - z)).exp();
        let expected = 2.0 * std::f64::consts::PI / alpha * gamma_product;
        let got = interference_constant(alpha).unwrap();
        assert!(
            (got - expected).abs() <= 1e-9 * expected,
            "alpha = {alpha}: {got} vs {expected}"
        );
    }
    // the alpha = 3 default, to more digits than the unit test pins
    let c3 = interference_constant(3.0).unwrap();
    assert!((c3 - 7.597_625_010_352_074).abs() < 1e-12, "got {c3}");
}

#[test]
fn unreachable_tolerance_is_reported_not_truncated() {
    // Tolerances below the roundoff floor of the integral cannot be met and
    // must surface as an explicit failure.
    let err = system_capacity(&params_with_zeta(1e-3), 1e-18).unwrap_err();
    assert!(
        matches!(err, CapacityError::QuadratureTolerance { .. }),
        "{err:?}"
    );
}
