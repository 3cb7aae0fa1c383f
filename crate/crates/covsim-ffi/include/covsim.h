/* covsim C API — generated by cbindgen, do not edit. */

#pragma once

/* Generated with cbindgen:0.29.4 */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a covsim C API call.
typedef enum CovsimStatus {
  // Success; out-parameters are populated.
  COVSIM_STATUS_OK = 0,
  // A required pointer argument was null.
  COVSIM_STATUS_NULL_POINTER = 1,
  // An argument violated the model preconditions.
  COVSIM_STATUS_INVALID_ARGUMENT = 2,
  // A numerical routine failed to reach its tolerance.
  COVSIM_STATUS_NUMERICAL_FAILURE = 3,
  // Text input (CSV or UTF-8) could not be parsed.
  COVSIM_STATUS_PARSE_ERROR = 4,
} CovsimStatus;

// Opaque handle to a realized node field.
typedef struct CovsimField CovsimField;

// Opaque handle to a scenario reachability report.
typedef struct CovsimReport CovsimReport;

// Sigmoid and excess-loss parameters of one propagation environment.
typedef struct CovsimEnvironment {
  double a;
  double b;
  double eta_los_db;
  double eta_nlos_db;
} CovsimEnvironment;

// Inputs of the multi-hop D2D capacity model.
typedef struct CovsimCapacityParams {
  double lambda_d;
  double lambda_r;
  double r_d_m;
  uint32_t n_hops;
  double alpha;
  double v_d_threshold;
  double p_relay_w;
  double p_d2d_w;
  double c_alpha;
} CovsimCapacityParams;

// Capacity value with the derived coefficients and the quadrature error
// estimate.
typedef struct CovsimCapacityResult {
  double capacity;
  double zeta_dr;
  double gamma_dr;
  double quadrature_abs_error;
} CovsimCapacityResult;

// Scenario knobs: UAV placement, relay selection and the hop budget.
typedef struct CovsimScenarioOptions {
  double uav_x_m;
  double uav_y_m;
  double altitude_m;
  double coverage_radius_m;
  double edge_band_m;
  double w_energy;
  double w_quality;
  uint32_t k_max_relays;
  double r_d_m;
  uint32_t n_max_hops;
} CovsimScenarioOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string; do not free.
const char *covsim_version(void);

// Slant distance from UAV to a ground device: sqrt(r^2 + h^2).
//
// # Safety
// `out` must be a valid pointer to a double.
enum CovsimStatus covsim_uav_ground_distance(double horizontal_range_m,
                                             double altitude_m,
                                             double *out);

// LoS probability of the UAV-to-ground link for the given environment.
//
// # Safety
// `out` must be a valid pointer to a double.
enum CovsimStatus covsim_p_los(double horizontal_range_m,
                               double altitude_m,
                               struct CovsimEnvironment env,
                               double *out);

// Free-space path loss in dB at the given carrier and distance.
//
// # Safety
// `out` must be a valid pointer to a double.
enum CovsimStatus covsim_free_space_path_loss_db(double carrier_hz, double distance_m, double *out);

// Average path loss in dB: free-space loss plus the LoS/NLoS excess-loss
// mixture at probability `p_los`.
//
// # Safety
// `out` must be a valid pointer to a double.
enum CovsimStatus covsim_average_path_loss_db(double carrier_hz,
                                              double distance_m,
                                              double p_los,
                                              struct CovsimEnvironment env,
                                              double *out);

// Erlang-B blocking probability B(channels, offered_erlang).
//
// # Safety
// `out` must be a valid pointer to a double.
enum CovsimStatus covsim_erlang_b_loss(uint32_t channels, double offered_erlang, double *out);

// Smallest channel count whose blocking is at most `target_blocking`.
//
// # Safety
// `out` must be a valid pointer to a uint32_t.
enum CovsimStatus covsim_erlang_channels_for_grade(double offered_erlang,
                                                   double target_blocking,
                                                   uint32_t *out);

// Default stochastic-geometry interference constant for a path-loss
// exponent alpha > 2.
//
// # Safety
// `out` must be a valid pointer to a double.
enum CovsimStatus covsim_interference_constant(double alpha, double *out);

// Table-driven capacity-parameter defaults.
//
// # Safety
// `out` must be a valid pointer to a CovsimCapacityParams.
enum CovsimStatus covsim_capacity_params_default(struct CovsimCapacityParams *out);

// Multi-hop D2D system capacity evaluated to the requested absolute
// quadrature tolerance.
//
// # Safety
// `params` and `out` must be valid pointers.
enum CovsimStatus covsim_system_capacity(const struct CovsimCapacityParams *params,
                                         double quad_tolerance,
                                         struct CovsimCapacityResult *out);

// Generate a seeded Poisson node field on the `[0, area_m]^2` square.
// The handle must be released with [`covsim_field_free`].
//
// # Safety
// `out` must be a valid pointer to a CovsimField pointer.
enum CovsimStatus covsim_field_generate(double intensity,
                                        double area_m,
                                        uint64_t seed,
                                        struct CovsimField **out);

// Load a node field from CSV text (`id,x_m,y_m,energy,quality` header).
//
// # Safety
// `csv` must be a valid NUL-terminated string; `out` a valid pointer.
enum CovsimStatus covsim_field_from_csv(const char *csv, double area_m, struct CovsimField **out);

// Number of nodes in a field.
//
// # Safety
// `field` must be a live handle; `out` a valid pointer.
enum CovsimStatus covsim_field_node_count(const struct CovsimField *field, size_t *out);

// Render a field as CSV. The returned string is owned by the caller and
// must be released with [`covsim_string_free`]. Returns null on null input.
//
// # Safety
// `field` must be a live handle or null.
char *covsim_field_to_csv(const struct CovsimField *field);

// Release a field handle. Null is a no-op.
//
// # Safety
// `field` must have come from a covsim constructor and not be freed twice.
void covsim_field_free(struct CovsimField *field);

// Release a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must have come from a covsim function and not be freed twice.
void covsim_string_free(char *s);

// Run coverage classification, relay selection and multi-hop reachability
// on a field. The report handle must be released with
// [`covsim_report_free`].
//
// # Safety
// `field`, `options` and `out` must be valid pointers.
enum CovsimStatus covsim_scenario_run(const struct CovsimField *field,
                                      const struct CovsimScenarioOptions *options,
                                      struct CovsimReport **out);

// Number of relays the scenario selected.
//
// # Safety
// `report` must be a live handle; `out` a valid pointer.
enum CovsimStatus covsim_report_relay_count(const struct CovsimReport *report, size_t *out);

// Fraction of all nodes directly inside UAV coverage.
//
// # Safety
// `report` must be a live handle; `out` a valid pointer.
enum CovsimStatus covsim_report_direct_coverage_ratio(const struct CovsimReport *report,
                                                      double *out);

// Fraction of out-of-coverage nodes reachable within the hop budget.
//
// # Safety
// `report` must be a live handle; `out` a valid pointer.
enum CovsimStatus covsim_report_extension_ratio(const struct CovsimReport *report, double *out);

// Minimum hop count to a given out-of-coverage node, or -1 when the node
// is unreachable (or in coverage already).
//
// # Safety
// `report` must be a live handle; `out` a valid pointer.
enum CovsimStatus covsim_report_hop_count(const struct CovsimReport *report,
                                          uint32_t node_id,
                                          int32_t *out);

// Release a report handle. Null is a no-op.
//
// # Safety
// `report` must have come from `covsim_scenario_run` and not be freed twice.
void covsim_report_free(struct CovsimReport *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus
