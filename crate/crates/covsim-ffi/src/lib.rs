//! C ABI over the covsim models.
//!
//! Conventions:
//! - every fallible call returns a [`CovsimStatus`] and writes its result
//!   through an out-pointer, which is touched only on `COVSIM_STATUS_OK`;
//! - node fields and scenario reports are opaque handles created and
//!   released by `covsim_*_new/_free` pairs;
//! - strings returned by the library are released with
//!   [`covsim_string_free`], never with `free(3)`.
//!
//! The C header is generated into `include/covsim.h` at build time.

use covsim::atg_channel::{self, EnvironmentProfile, UavPlacement};
use covsim::d2d_capacity::{self, CapacityParams};
use covsim::disaster_scenario::{
    classify_coverage, generate_field, reachability, select_relays, NodeField, ReachabilityReport,
    SelectionWeights,
};
use covsim::erlang_traffic::{self, TrafficLoad};
use std::ffi::{c_char, CStr, CString};

/// Result of a covsim C API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovsimStatus {
    /// Success; out-parameters are populated.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// An argument violated the model preconditions.
    InvalidArgument = 2,
    /// A numerical routine failed to reach its tolerance.
    NumericalFailure = 3,
    /// Text input (CSV or UTF-8) could not be parsed.
    ParseError = 4,
}

/// Sigmoid and excess-loss parameters of one propagation environment.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CovsimEnvironment {
    pub a: f64,
    pub b: f64,
    pub eta_los_db: f64,
    pub eta_nlos_db: f64,
}

impl CovsimEnvironment {
    fn to_profile(self) -> Result<EnvironmentProfile, CovsimStatus> {
        EnvironmentProfile::new(self.a, self.b, self.eta_los_db, self.eta_nlos_db)
            .map_err(|_| CovsimStatus::InvalidArgument)
    }
}

/// Inputs of the multi-hop D2D capacity model.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CovsimCapacityParams {
    pub lambda_d: f64,
    pub lambda_r: f64,
    pub r_d_m: f64,
    pub n_hops: u32,
    pub alpha: f64,
    pub v_d_threshold: f64,
    pub p_relay_w: f64,
    pub p_d2d_w: f64,
    pub c_alpha: f64,
}

/// Capacity value with the derived coefficients and the quadrature error
/// estimate.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CovsimCapacityResult {
    pub capacity: f64,
    pub zeta_dr: f64,
    pub gamma_dr: f64,
    pub quadrature_abs_error: f64,
}

/// Scenario knobs: UAV placement, relay selection and the hop budget.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CovsimScenarioOptions {
    pub uav_x_m: f64,
    pub uav_y_m: f64,
    pub altitude_m: f64,
    pub coverage_radius_m: f64,
    pub edge_band_m: f64,
    pub w_energy: f64,
    pub w_quality: f64,
    pub k_max_relays: u32,
    pub r_d_m: f64,
    pub n_max_hops: u32,
}

/// Opaque handle to a realized node field.
pub struct CovsimField(NodeField);

/// Opaque handle to a scenario reachability report.
pub struct CovsimReport {
    report: ReachabilityReport,
    relay_count: usize,
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn covsim_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

unsafe fn write_out<T>(out: *mut T, value: T) -> CovsimStatus {
    if out.is_null() {
        return CovsimStatus::NullPointer;
    }
    unsafe { out.write(value) };
    CovsimStatus::Ok
}

/// Slant distance from UAV to a ground device: sqrt(r^2 + h^2).
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn covsim_uav_ground_distance(
    horizontal_range_m: f64,
    altitude_m: f64,
    out: *mut f64,
) -> CovsimStatus {
    match atg_channel::uav_ground_distance(horizontal_range_m, altitude_m) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(_) => CovsimStatus::InvalidArgument,
    }
}

/// LoS probability of the UAV-to-ground link for the given environment.
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn covsim_p_los(
    horizontal_range_m: f64,
    altitude_m: f64,
    env: CovsimEnvironment,
    out: *mut f64,
) -> CovsimStatus {
    let profile = match env.to_profile() {
        Ok(p) => p,
        Err(status) => return status,
    };
    match atg_channel::p_los(horizontal_range_m, altitude_m, &profile) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(_) => CovsimStatus::InvalidArgument,
    }
}

/// Free-space path loss in dB at the given carrier and distance.
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn covsim_free_space_path_loss_db(
    carrier_hz: f64,
    distance_m: f64,
    out: *mut f64,
) -> CovsimStatus {
    match atg_channel::free_space_path_loss_db(carrier_hz, distance_m) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(_) => CovsimStatus::InvalidArgument,
    }
}

/// Average path loss in dB: free-space loss plus the LoS/NLoS excess-loss
/// mixture at probability `p_los`.
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn covsim_average_path_loss_db(
    carrier_hz: f64,
    distance_m: f64,
    p_los: f64,
    env: CovsimEnvironment,
    out: *mut f64,
) -> CovsimStatus {
    let profile = match env.to_profile() {
        Ok(p) => p,
        Err(status) => return status,
    };
    match atg_channel::average_path_loss_db(carrier_hz, distance_m, p_los, &profile) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(_) => CovsimStatus::InvalidArgument,
    }
}

/// Erlang-B blocking probability B(channels, offered_erlang).
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn covsim_erlang_b_loss(
    channels: u32,
    offered_erlang: f64,
    out: *mut f64,
) -> CovsimStatus {
    match TrafficLoad::new(offered_erlang, channels) {
        Ok(load) => unsafe { write_out(out, erlang_traffic::loss_probability(load)) },
        Err(_) => CovsimStatus::InvalidArgument,
    }
}

/// Smallest channel count whose blocking is at most `target_blocking`.
///
/// # Safety
/// `out` must be a valid pointer to a uint32_t.
#[no_mangle]
pub unsafe extern "C" fn covsim_erlang_channels_for_grade(
    offered_erlang: f64,
    target_blocking: f64,
    out: *mut u32,
) -> CovsimStatus {
    match erlang_traffic::channels_for_grade(offered_erlang, target_blocking) {
        Ok(n) => unsafe { write_out(out, n) },
        Err(_) => CovsimStatus::InvalidArgument,
    }
}

/// Default stochastic-geometry interference constant for a path-loss
/// exponent alpha > 2.
///
/// # Safety
/// `out` must be a valid pointer to a double.
#[no_mangle]
pub unsafe extern "C" fn covsim_interference_constant(alpha: f64, out: *mut f64) -> CovsimStatus {
    match d2d_capacity::interference_constant(alpha) {
        Ok(v) => unsafe { write_out(out, v) },
        Err(_) => CovsimStatus::InvalidArgument,
    }
}

/// Table-driven capacity-parameter defaults.
///
/// # Safety
/// `out` must be a valid pointer to a CovsimCapacityParams.
#[no_mangle]
pub unsafe extern "C" fn covsim_capacity_params_default(
    out: *mut CovsimCapacityParams,
) -> CovsimStatus {
    let d = CapacityParams::table_defaults();
    unsafe {
        write_out(
            out,
            CovsimCapacityParams {
                lambda_d: d.lambda_d,
                lambda_r: d.lambda_r,
                r_d_m: d.r_d_m,
                n_hops: d.n_hops,
                alpha: d.alpha,
                v_d_threshold: d.v_d_threshold,
                p_relay_w: d.p_relay_w,
                p_d2d_w: d.p_d2d_w,
                c_alpha: d.c_alpha,
            },
        )
    }
}

/// Multi-hop D2D system capacity evaluated to the requested absolute
/// quadrature tolerance.
///
/// # Safety
/// `params` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn covsim_system_capacity(
    params: *const CovsimCapacityParams,
    quad_tolerance: f64,
    out: *mut CovsimCapacityResult,
) -> CovsimStatus {
    if params.is_null() {
        return CovsimStatus::NullPointer;
    }
    let p = unsafe { *params };
    let core = CapacityParams {
        lambda_d: p.lambda_d,
        lambda_r: p.lambda_r,
        r_d_m: p.r_d_m,
        n_hops: p.n_hops,
        alpha: p.alpha,
        v_d_threshold: p.v_d_threshold,
        p_relay_w: p.p_relay_w,
        p_d2d_w: p.p_d2d_w,
        c_alpha: p.c_alpha,
    };
    match d2d_capacity::system_capacity(&core, quad_tolerance) {
        Ok(r) => unsafe {
            write_out(
                out,
                CovsimCapacityResult {
                    capacity: r.capacity,
                    zeta_dr: r.zeta_dr,
                    gamma_dr: r.gamma_dr,
                    quadrature_abs_error: r.quadrature_abs_error,
                },
            )
        },
        Err(d2d_capacity::CapacityError::QuadratureTolerance { .. }) => {
            CovsimStatus::NumericalFailure
        }
        Err(_) => CovsimStatus::InvalidArgument,
    }
}

/// Generate a seeded Poisson node field on the `[0, area_m]^2` square.
/// The handle must be released with [`covsim_field_free`].
///
/// # Safety
/// `out` must be a valid pointer to a CovsimField pointer.
#[no_mangle]
pub unsafe extern "C" fn covsim_field_generate(
    intensity: f64,
    area_m: f64,
    seed: u64,
    out: *mut *mut CovsimField,
) -> CovsimStatus {
    match generate_field(intensity, area_m, seed) {
        Ok(f) => unsafe { write_out(out, Box::into_raw(Box::new(CovsimField(f)))) },
        Err(_) => CovsimStatus::InvalidArgument,
    }
}

/// Load a node field from CSV text (`id,x_m,y_m,energy,quality` header).
///
/// # Safety
/// `csv` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn covsim_field_from_csv(
    csv: *const c_char,
    area_m: f64,
    out: *mut *mut CovsimField,
) -> CovsimStatus {
    if csv.is_null() {
        return CovsimStatus::NullPointer;
    }
    let text = match unsafe { CStr::from_ptr(csv) }.to_str() {
        Ok(t) => t,
        Err(_) => return CovsimStatus::ParseError,
    };
    match NodeField::from_csv(text, area_m) {
        Ok(f) => unsafe { write_out(out, Box::into_raw(Box::new(CovsimField(f)))) },
        Err(_) => CovsimStatus::ParseError,
    }
}

/// Number of nodes in a field.
///
/// # Safety
/// `field` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn covsim_field_node_count(
    field: *const CovsimField,
    out: *mut usize,
) -> CovsimStatus {
    if field.is_null() {
        return CovsimStatus::NullPointer;
    }
    unsafe { write_out(out, (*field).0.nodes.len()) }
}

/// Render a field as CSV. The returned string is owned by the caller and
/// must be released with [`covsim_string_free`]. Returns null on null input.
///
/// # Safety
/// `field` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn covsim_field_to_csv(field: *const CovsimField) -> *mut c_char {
    if field.is_null() {
        return std::ptr::null_mut();
    }
    let csv = unsafe { &(*field).0 }.to_csv();
    CString::new(csv).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Release a field handle. Null is a no-op.
///
/// # Safety
/// `field` must have come from a covsim constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn covsim_field_free(field: *mut CovsimField) {
    if !field.is_null() {
        drop(unsafe { Box::from_raw(field) });
    }
}

/// Release a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must have come from a covsim function and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn covsim_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Run coverage classification, relay selection and multi-hop reachability
/// on a field. The report handle must be released with
/// [`covsim_report_free`].
///
/// # Safety
/// `field`, `options` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn covsim_scenario_run(
    field: *const CovsimField,
    options: *const CovsimScenarioOptions,
    out: *mut *mut CovsimReport,
) -> CovsimStatus {
    if field.is_null() || options.is_null() {
        return CovsimStatus::NullPointer;
    }
    let field = unsafe { &(*field).0 };
    let opt = unsafe { *options };

    let uav = match UavPlacement::new(
        opt.altitude_m,
        opt.uav_x_m,
        opt.uav_y_m,
        opt.coverage_radius_m,
    ) {
        Ok(u) => u,
        Err(_) => return CovsimStatus::InvalidArgument,
    };
    let weights = match SelectionWeights::new(opt.w_energy, opt.w_quality) {
        Ok(w) => w,
        Err(_) => return CovsimStatus::InvalidArgument,
    };

    let partition = classify_coverage(field, &uav);
    let relays = match select_relays(
        field,
        &partition,
        &uav,
        opt.edge_band_m,
        weights,
        opt.k_max_relays as usize,
    ) {
        Ok(r) => r,
        Err(_) => return CovsimStatus::InvalidArgument,
    };
    let report = match reachability(field, &partition, &relays, opt.r_d_m, opt.n_max_hops) {
        Ok(r) => r,
        Err(_) => return CovsimStatus::InvalidArgument,
    };

    let handle = CovsimReport {
        relay_count: relays.relays.len(),
        report,
    };
    unsafe { write_out(out, Box::into_raw(Box::new(handle))) }
}

/// Number of relays the scenario selected.
///
/// # Safety
/// `report` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn covsim_report_relay_count(
    report: *const CovsimReport,
    out: *mut usize,
) -> CovsimStatus {
    if report.is_null() {
        return CovsimStatus::NullPointer;
    }
    unsafe { write_out(out, (*report).relay_count) }
}

/// Fraction of all nodes directly inside UAV coverage.
///
/// # Safety
/// `report` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn covsim_report_direct_coverage_ratio(
    report: *const CovsimReport,
    out: *mut f64,
) -> CovsimStatus {
    if report.is_null() {
        return CovsimStatus::NullPointer;
    }
    unsafe { write_out(out, (*report).report.direct_coverage_ratio) }
}

/// Fraction of out-of-coverage nodes reachable within the hop budget.
///
/// # Safety
/// `report` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn covsim_report_extension_ratio(
    report: *const CovsimReport,
    out: *mut f64,
) -> CovsimStatus {
    if report.is_null() {
        return CovsimStatus::NullPointer;
    }
    unsafe { write_out(out, (*report).report.coverage_extension_ratio) }
}

/// Minimum hop count to a given out-of-coverage node, or -1 when the node
/// is unreachable (or in coverage already).
///
/// # Safety
/// `report` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn covsim_report_hop_count(
    report: *const CovsimReport,
    node_id: u32,
    out: *mut i32,
) -> CovsimStatus {
    if report.is_null() {
        return CovsimStatus::NullPointer;
    }
    let report = unsafe { &(*report).report };
    let hops = report
        .per_node
        .iter()
        .find(|n| n.node_id == node_id)
        .and_then(|n| n.hop_count)
        .map_or(-1, |h| h as i32);
    unsafe { write_out(out, hops) }
}

/// Release a report handle. Null is a no-op.
///
/// # Safety
/// `report` must have come from `covsim_scenario_run` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn covsim_report_free(report: *mut CovsimReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}
