//! Multi-hop relay-assisted D2D system capacity.
//!
//! Capacity of the relay-assisted D2D system:
//!
//! ```text
//! C = (lambda_d / N) * (lambda_d + gamma_dr * lambda_r) * I(zeta_dr)
//! I(zeta) = integral_0^inf exp(-zeta * v) / (1 + v) dv
//! ```
//!
//! with hop distance `R_r = R_d / N`, power ratio
//! `gamma_dr = (p_r / p_d)^(2/alpha)` and exponent coefficient
//! `zeta_dr = C_alpha * R_r^2 * V_d^(2/alpha)`. The integral is evaluated by
//! adaptive Gauss-Kronrod quadrature on a truncated interval whose tail is
//! bounded analytically; it also equals `exp(zeta) * E1(zeta)`, which the
//! test suite uses as an independent oracle.
//!
//! The source equation typesets the density term ambiguously; the reading
//! where `(lambda_d + gamma_dr * lambda_r)` is a multiplicative prefactor is
//! the default, and the alternate reading (density sum scaling the exponent)
//! is kept selectable via [`IntegrandVariant`] for comparison runs.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CapacityError {
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("{name} must be {constraint}, got {value}")]
    OutOfRange {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },
    #[error("n_hops must be >= 1")]
    ZeroHops,
    #[error("zeta_dr must be > 0 (the capacity integral diverges), got {0}")]
    DivergentIntegral(f64),
    #[error(
        "quadrature failed to meet tolerance {requested:e}: achieved {achieved:e} after {panels} panels"
    )]
    QuadratureTolerance {
        requested: f64,
        achieved: f64,
        panels: usize,
    },
}

fn check(name: &'static str, value: f64, positive: bool) -> Result<f64, CapacityError> {
    if !value.is_finite() {
        return Err(CapacityError::NotFinite { name, value });
    }
    if positive && value <= 0.0 {
        return Err(CapacityError::OutOfRange {
            name,
            constraint: "> 0",
            value,
        });
    }
    if !positive && value < 0.0 {
        return Err(CapacityError::OutOfRange {
            name,
            constraint: ">= 0",
            value,
        });
    }
    Ok(value)
}

/// Inputs of the capacity model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityParams {
    /// D2D spatial density (per m^2).
    pub lambda_d: f64,
    /// Relay spatial density (sweep parameter; zero means no relays).
    pub lambda_r: f64,
    /// D2D transmit distance R_d (m).
    pub r_d_m: f64,
    /// Hop count N; the hop distance is R_d / N.
    pub n_hops: u32,
    /// Path-loss exponent, > 2.
    pub alpha: f64,
    /// SIR threshold V_d (linear).
    pub v_d_threshold: f64,
    /// Relay transmit power (W).
    pub p_relay_w: f64,
    /// D2D transmit power (W).
    pub p_d2d_w: f64,
    /// Interference geometry constant C_alpha.
    pub c_alpha: f64,
}

impl CapacityParams {
    /// Table-driven defaults: lambda_d = 3.3e-4, lambda_r = 0.3, R_d = 50 m,
    /// N = 10, alpha = 3, V_d = 1 (0 dB), equal powers, and C_alpha from
    /// [`interference_constant`].
    pub fn table_defaults() -> Self {
        let alpha = 3.0;
        Self {
            lambda_d: 3.3e-4,
            lambda_r: 0.3,
            r_d_m: 50.0,
            n_hops: 10,
            alpha,
            v_d_threshold: 1.0,
            p_relay_w: 1.0,
            p_d2d_w: 1.0,
            c_alpha: interference_constant(alpha).expect("alpha = 3 is valid"),
        }
    }

    /// Validate all field invariants. `lambda_r` may be zero (relay-free
    /// degenerate case); everything else must be strictly positive,
    /// `alpha > 2`, `n_hops >= 1`.
    pub fn validate(&self) -> Result<(), CapacityError> {
        check("lambda_d", self.lambda_d, true)?;
        check("lambda_r", self.lambda_r, false)?;
        check("r_d_m", self.r_d_m, true)?;
        if self.n_hops == 0 {
            return Err(CapacityError::ZeroHops);
        }
        check("alpha", self.alpha, true)?;
        if self.alpha <= 2.0 {
            return Err(CapacityError::OutOfRange {
                name: "alpha",
                constraint: "> 2",
                value: self.alpha,
            });
        }
        check("v_d_threshold", self.v_d_threshold, true)?;
        check("p_relay_w", self.p_relay_w, true)?;
        check("p_d2d_w", self.p_d2d_w, true)?;
        check("c_alpha", self.c_alpha, true)?;
        Ok(())
    }
}

/// Capacity value plus the derived coefficients and the quadrature error
/// estimate (absolute, on the integral).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapacityResult {
    pub capacity: f64,
    pub zeta_dr: f64,
    pub gamma_dr: f64,
    pub quadrature_abs_error: f64,
}

/// Reading of the typeset capacity integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IntegrandVariant {
    /// `(lambda_d + gamma_dr*lambda_r)` multiplies the integral (default).
    #[default]
    DensityPrefactor,
    /// `(lambda_d + gamma_dr*lambda_r)` scales the exponent instead:
    /// `integral exp(-zeta*(lambda_d + gamma_dr*lambda_r)*v) / (1+v) dv`.
    DensityInExponent,
}

/// Standard stochastic-geometry interference constant
/// `C_alpha = (2*pi/alpha) * Gamma(2/alpha) * Gamma(1 - 2/alpha)`, evaluated
/// through the reflection identity `Gamma(z)*Gamma(1-z) = pi / sin(pi*z)`
/// with `z = 2/alpha`. Requires `alpha > 2`. About 7.5976 for alpha = 3.
pub fn interference_constant(alpha: f64) -> Result<f64, CapacityError> {
    check("alpha", alpha, true)?;
    if alpha <= 2.0 {
        return Err(CapacityError::OutOfRange {
            name: "alpha",
            constraint: "> 2",
            value: alpha,
        });
    }
    let z = 2.0 / alpha;
    Ok(
        2.0 * std::f64::consts::PI / alpha * std::f64::consts::PI
            / (std::f64::consts::PI * z).sin(),
    )
}

/// Hop distance `R_r = R_d / N`.
pub fn hop_distance(r_d_m: f64, n_hops: u32) -> Result<f64, CapacityError> {
    check("r_d_m", r_d_m, true)?;
    if n_hops == 0 {
        return Err(CapacityError::ZeroHops);
    }
    Ok(r_d_m / n_hops as f64)
}

/// Relay/D2D power ratio `gamma_dr = (p_r / p_d)^(2/alpha)`.
pub fn power_ratio_gamma(p_relay_w: f64, p_d2d_w: f64, alpha: f64) -> Result<f64, CapacityError> {
    check("p_relay_w", p_relay_w, true)?;
    check("p_d2d_w", p_d2d_w, true)?;
    check("alpha", alpha, true)?;
    if alpha <= 2.0 {
        return Err(CapacityError::OutOfRange {
            name: "alpha",
            constraint: "> 2",
            value: alpha,
        });
    }
    Ok((p_relay_w / p_d2d_w).powf(2.0 / alpha))
}

/// Exponent coefficient `zeta_dr = C_alpha * R_r^2 * V_d^(2/alpha)`.
pub fn zeta_dr(
    c_alpha: f64,
    r_r_m: f64,
    v_d_threshold: f64,
    alpha: f64,
) -> Result<f64, CapacityError> {
    check("c_alpha", c_alpha, true)?;
    check("r_r_m", r_r_m, true)?;
    check("v_d_threshold", v_d_threshold, true)?;
    check("alpha", alpha, true)?;
    if alpha <= 2.0 {
        return Err(CapacityError::OutOfRange {
            name: "alpha",
            constraint: "> 2",
            value: alpha,
        });
    }
    Ok(c_alpha * r_r_m * r_r_m * v_d_threshold.powf(2.0 / alpha))
}

/// System capacity under the default integrand reading.
pub fn system_capacity(
    params: &CapacityParams,
    quad_tolerance: f64,
) -> Result<CapacityResult, CapacityError> {
    system_capacity_with_variant(params, quad_tolerance, IntegrandVariant::default())
}

/// System capacity with an explicit integrand reading.
pub fn system_capacity_with_variant(
    params: &CapacityParams,
    quad_tolerance: f64,
    variant: IntegrandVariant,
) -> Result<CapacityResult, CapacityError> {
    params.validate()?;
    check("quad_tolerance", quad_tolerance, true)?;

    let r_r = hop_distance(params.r_d_m, params.n_hops)?;
    let gamma = power_ratio_gamma(params.p_relay_w, params.p_d2d_w, params.alpha)?;
    let zeta = zeta_dr(params.c_alpha, r_r, params.v_d_threshold, params.alpha)?;
    let density_sum = params.lambda_d + gamma * params.lambda_r;

    // Both readings reduce to a prefactor times I(zeta_eff).
    let (prefactor, zeta_eff) = match variant {
        IntegrandVariant::DensityPrefactor => {
            (params.lambda_d / params.n_hops as f64 * density_sum, zeta)
        }
        IntegrandVariant::DensityInExponent => {
            (params.lambda_d / params.n_hops as f64, zeta * density_sum)
        }
    };
    if zeta_eff <= 0.0 {
        return Err(CapacityError::DivergentIntegral(zeta_eff));
    }

    let (integral, abs_error) = decay_integral(zeta_eff, quad_tolerance)?;
    Ok(CapacityResult {
        capacity: prefactor * integral,
        zeta_dr: zeta,
        gamma_dr: gamma,
        quadrature_abs_error: abs_error,
    })
}

/// Capacity sweep over hop counts: for each N the hop distance, zeta and
/// capacity are recomputed. Results are returned in ascending N.
pub fn capacity_vs_hops(
    params: &CapacityParams,
    n_range: &[u32],
    quad_tolerance: f64,
) -> Result<Vec<(u32, CapacityResult)>, CapacityError> {
    if n_range.is_empty() {
        return Err(CapacityError::OutOfRange {
            name: "n_range",
            constraint: "non-empty",
            value: 0.0,
        });
    }
    let mut hops: Vec<u32> = n_range.to_vec();
    hops.sort_unstable();
    hops.iter()
        .map(|&n| {
            let p = CapacityParams {
                n_hops: n,
                ..*params
            };
            system_capacity(&p, quad_tolerance).map(|r| (n, r))
        })
        .collect()
}

/// `I(zeta) = integral_0^inf exp(-zeta*v)/(1+v) dv` to the requested absolute
/// tolerance. Returns the value and the total error bound (quadrature
/// estimate plus tail bound).
///
/// The interval is truncated at `V` where the dropped tail obeys
/// `integral_V^inf exp(-zeta*v)/(1+v) dv < exp(-zeta*V)/zeta <= tol/10`,
/// i.e. `V = ln(10/(zeta*tol))/zeta`, never below `1/zeta`.
fn decay_integral(zeta: f64, tolerance: f64) -> Result<(f64, f64), CapacityError> {
    let v_max = (10.0 / (zeta * tolerance)).ln().max(1.0) / zeta;
    let tail_bound = (-zeta * v_max).exp() / zeta;
    let budget = (tolerance - tail_bound).max(tolerance / 2.0);
    let (value, quad_err, panels) =
        gauss_kronrod::adaptive(|v| (-zeta * v).exp() / (1.0 + v), 0.0, v_max, budget);
    let total_err = quad_err + tail_bound;
    if total_err > tolerance {
        return Err(CapacityError::QuadratureTolerance {
            requested: tolerance,
            achieved: total_err,
            panels,
        });
    }
    Ok((value, total_err))
}

/// Adaptive Gauss-Kronrod (G7, K15) integration on a finite interval.
mod gauss_kronrod {
    use std::cmp::Ordering;
    use std::collections::BinaryHeap;

    /// K15 abscissae on [0, 1]; even indices are the embedded G7 nodes.
    #[allow(clippy::excessive_precision)]
    const XGK: [f64; 8] = [
        0.991_455_371_120_812_639_206_854_697_526_33,
        0.949_107_912_342_758_524_526_189_684_047_85,
        0.864_864_423_359_769_072_789_712_788_640_93,
        0.741_531_185_599_394_439_863_864_773_280_79,
        0.586_087_235_467_691_130_294_144_838_258_73,
        0.405_845_151_377_397_166_906_606_412_076_96,
        0.207_784_955_007_898_467_600_689_403_773_24,
        0.0,
    ];
    #[allow(clippy::excessive_precision)]
    const WG: [f64; 4] = [
        0.129_484_966_168_869_693_270_611_432_679_08,
        0.279_705_391_489_276_667_901_467_771_423_78,
        0.381_830_050_505_118_944_950_369_775_488_98,
        0.417_959_183_673_469_387_755_102_040_816_33,
    ];
    #[allow(clippy::excessive_precision)]
    const WGK: [f64; 8] = [
        0.022_935_322_010_529_224_963_732_008_058_97,
        0.063_092_092_629_978_553_290_700_663_189_2,
        0.104_790_010_322_250_183_839_876_322_541_52,
        0.140_653_259_715_525_918_745_189_590_510_24,
        0.169_004_726_639_267_902_826_583_426_598_55,
        0.190_350_578_064_785_409_913_256_402_421_01,
        0.204_432_940_075_298_892_414_161_999_234_65,
        0.209_482_141_084_727_828_012_999_174_891_71,
    ];

    const MAX_PANELS: usize = 20_000;

    struct Panel {
        a: f64,
        b: f64,
        value: f64,
        error: f64,
    }

    impl PartialEq for Panel {
        fn eq(&self, other: &Self) -> bool {
            self.error == other.error
        }
    }
    impl Eq for Panel {}
    impl PartialOrd for Panel {
        fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Panel {
        fn cmp(&self, other: &Self) -> Ordering {
            self.error.total_cmp(&other.error)
        }
    }

    /// One G7/K15 evaluation over [a, b]: Kronrod value and |K15 - G7| as the
    /// error estimate, floored at roundoff level of the absolute integral.
    fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
        let center = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let f_center = f(center);
        let mut kronrod = f_center * WGK[7];
        let mut gauss = f_center * WG[3];
        let mut res_abs = f_center.abs() * WGK[7];
        for j in 0..7 {
            let x = half * XGK[j];
            let f1 = f(center - x);
            let f2 = f(center + x);
            kronrod += WGK[j] * (f1 + f2);
            res_abs += WGK[j] * (f1.abs() + f2.abs());
            if j % 2 == 1 {
                gauss += WG[j / 2] * (f1 + f2);
            }
        }
        let value = kronrod * half;
        let roundoff_floor = 50.0 * f64::EPSILON * res_abs * half.abs();
        let error = ((kronrod - gauss) * half).abs().max(roundoff_floor);
        (value, error)
    }

    /// Integrate `f` over [a, b], splitting the worst panel until the summed
    /// error estimate drops to `tolerance` or the panel budget is spent.
    /// Returns (value, error estimate, panel count); the caller decides
    /// whether the achieved error is acceptable.
    pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tolerance: f64) -> (f64, f64, usize) {
        let (value, error) = qk15(&f, a, b);
        let mut heap = BinaryHeap::new();
        heap.push(Panel { a, b, value, error });
        let mut total_error = error;

        while total_error > tolerance && heap.len() < MAX_PANELS {
            let worst = heap.pop().expect("heap never empty");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                // interval no longer splittable in f64
                heap.push(worst);
                break;
            }
            let (lv, le) = qk15(&f, worst.a, mid);
            let (rv, re) = qk15(&f, mid, worst.b);
            total_error += le + re - worst.error;
            heap.push(Panel {
                a: worst.a,
                b: mid,
                value: lv,
                error: le,
            });
            heap.push(Panel {
                a: mid,
                b: worst.b,
                value: rv,
                error: re,
            });
        }

        let panels = heap.len();
        // Accumulate smallest-first to limit summation roundoff.
        let mut values: Vec<f64> = heap.iter().map(|p| p.value).collect();
        values.sort_by(|x, y| x.abs().total_cmp(&y.abs()));
        let total: f64 = values.iter().sum();
        (total, total_error, panels)
    }

    #[cfg(test)]
    mod tests {
        use super::*;

        #[test]
        fn integrates_polynomial_exactly() {
            // K15 is exact for polynomials up to degree 22.
            let (v, e, _) = adaptive(|x| 3.0 * x * x, 0.0, 2.0, 1e-12);
            assert!((v - 8.0).abs() < 1e-12, "got {v}, err {e}");
        }

        #[test]
        fn integrates_decaying_exponential() {
            let (v, _, _) = adaptive(|x| (-x).exp(), 0.0, 40.0, 1e-12);
            assert!((v - 1.0).abs() < 1e-12, "got {v}");
        }

        #[test]
        fn error_estimate_is_honest() {
            let (v, e, _) = adaptive(|x| (1.0 + x).recip(), 0.0, 100.0, 1e-10);
            assert!((v - 101.0_f64.ln()).abs() <= e.max(1e-12));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hop_distance_examples() {
        assert_eq!(hop_distance(50.0, 10).unwrap(), 5.0);
        assert_eq!(hop_distance(42.5, 1).unwrap(), 42.5);
        assert_eq!(hop_distance(30.0, 3).unwrap(), 10.0);
        assert_eq!(hop_distance(50.0, 0).unwrap_err(), CapacityError::ZeroHops);
    }

    #[test]
    fn hop_distance_times_hops_recovers_range() {
        for n in 1..=17u32 {
            let r = hop_distance(50.0, n).unwrap();
            assert!((r * n as f64 - 50.0).abs() < 1e-12);
        }
    }

    #[test]
    fn power_ratio_examples() {
        assert_eq!(power_ratio_gamma(2.5, 2.5, 3.7).unwrap(), 1.0);
        let g = power_ratio_gamma(8.0, 1.0, 3.0).unwrap();
        assert!((g - 4.0).abs() < 1e-12);
        let g = power_ratio_gamma(1.0, 8.0, 3.0).unwrap();
        assert!((g - 0.25).abs() < 1e-12);
        assert!(power_ratio_gamma(0.0, 1.0, 3.0).is_err());
        assert!(power_ratio_gamma(1.0, -2.0, 3.0).is_err());
    }

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta_dr(1.0, 1.0, 1.0, 3.0).unwrap(), 1.0);
        let z = zeta_dr(2.0, 5.0, 8.0, 3.0).unwrap();
        assert!((z - 200.0).abs() < 1e-9 * 200.0);
        // scaling R_r by k multiplies zeta by k^2
        let base = zeta_dr(2.0, 5.0, 8.0, 3.0).unwrap();
        let scaled = zeta_dr(2.0, 15.0, 8.0, 3.0).unwrap();
        assert!((scaled / base - 9.0).abs() < 1e-12);
        assert!(zeta_dr(2.0, 0.0, 8.0, 3.0).is_err());
    }

    #[test]
    fn interference_constant_alpha_three() {
        // (2*pi/3) * pi / sin(2*pi/3); the Gamma-product route is checked in
        // the integration suite against a Lanczos ln-gamma oracle.
        let c = interference_constant(3.0).unwrap();
        assert!((c - 7.5976).abs() < 1e-3, "got {c}");
        assert!(interference_constant(2.0).is_err());
    }

    #[test]
    fn relay_free_prefactor_is_quadratic_in_density() {
        let mut p = CapacityParams::table_defaults();
        p.lambda_r = 0.0;
        p.n_hops = 4;
        let c1 = system_capacity(&p, 1e-10).unwrap().capacity;
        p.lambda_d *= 2.0;
        let c2 = system_capacity(&p, 1e-10).unwrap().capacity;
        assert!((c2 / c1 - 4.0).abs() < 1e-9, "ratio {}", c2 / c1);
    }

    #[test]
    fn capacity_increases_with_relay_density() {
        let mut p = CapacityParams::table_defaults();
        p.lambda_r = 0.1;
        let lo = system_capacity(&p, 1e-10).unwrap().capacity;
        p.lambda_r = 0.5;
        let hi = system_capacity(&p, 1e-10).unwrap().capacity;
        assert!(hi > lo);
    }

    #[test]
    fn capacity_linear_in_density_sum() {
        // Scaling (lambda_d + gamma*lambda_r) by k scales capacity by k at
        // fixed zeta; realized here by scaling lambda_r so the sum doubles
        // while lambda_d (and so the leading lambda_d/N) is untouched.
        let mut p = CapacityParams::table_defaults();
        p.lambda_r = 0.25;
        let base = system_capacity(&p, 1e-12).unwrap();
        let sum = p.lambda_d + base.gamma_dr * p.lambda_r;
        p.lambda_r = (2.0 * sum - p.lambda_d) / base.gamma_dr;
        let doubled = system_capacity(&p, 1e-12).unwrap();
        assert!(
            (doubled.capacity / base.capacity - 2.0).abs() < 1e-12 * 2.0,
            "ratio {}",
            doubled.capacity / base.capacity
        );
    }

    #[test]
    fn capacity_decreases_in_zeta() {
        // Larger V_d raises zeta and must lower capacity at fixed prefactor.
        let mut p = CapacityParams::table_defaults();
        let lo_zeta = system_capacity(&p, 1e-10).unwrap();
        p.v_d_threshold = 4.0;
        let hi_zeta = system_capacity(&p, 1e-10).unwrap();
        assert!(hi_zeta.zeta_dr > lo_zeta.zeta_dr);
        assert!(hi_zeta.capacity < lo_zeta.capacity);
    }

    #[test]
    fn hop_sweep_is_increasing_under_defaults() {
        // zeta(N=1) ~ 1.9e4 >> 1, so the integral ~ 1/zeta grows like N^2 and
        // capacity like N; checked against the scaled-E1 oracle in the
        // integration suite before this fixture was locked.
        let p = CapacityParams::table_defaults();
        let range: Vec<u32> = (1..=10).collect();
        let sweep = capacity_vs_hops(&p, &range, 1e-10).unwrap();
        assert_eq!(sweep.len(), 10);
        for pair in sweep.windows(2) {
            assert!(pair[1].1.capacity > pair[0].1.capacity);
        }
        for (_, r) in &sweep {
            assert!(r.capacity >= 0.0);
            assert!(r.quadrature_abs_error <= 1e-10);
        }
        // N = 1 entry equals a direct call with R_r = R_d.
        let single = system_capacity(&CapacityParams { n_hops: 1, ..p }, 1e-10).unwrap();
        assert_eq!(sweep[0].1.capacity, single.capacity);
    }

    #[test]
    fn hop_sweep_rejects_empty_range() {
        let p = CapacityParams::table_defaults();
        assert!(capacity_vs_hops(&p, &[], 1e-10).is_err());
    }

    #[test]
    fn exponent_variant_differs_from_default() {
        let p = CapacityParams::table_defaults();
        let a = system_capacity_with_variant(&p, 1e-10, IntegrandVariant::DensityPrefactor)
            .unwrap()
            .capacity;
        let b = system_capacity_with_variant(&p, 1e-10, IntegrandVariant::DensityInExponent)
            .unwrap()
            .capacity;
        assert!(a != b);
        assert!(a > 0.0 && b > 0.0);
    }

    #[test]
    fn invalid_params_are_rejected() {
        let mut p = CapacityParams::table_defaults();
        p.alpha = 2.0;
        assert!(system_capacity(&p, 1e-10).is_err());
        let mut p = CapacityParams::table_defaults();
        p.lambda_d = 0.0;
        assert!(system_capacity(&p, 1e-10).is_err());
        let mut p = CapacityParams::table_defaults();
        p.r_d_m = -1.0;
        assert!(system_capacity(&p, 1e-10).is_err());
        let p = CapacityParams::table_defaults();
        assert!(system_capacity(&p, 0.0).is_err());
    }
}
