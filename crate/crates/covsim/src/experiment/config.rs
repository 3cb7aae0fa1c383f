//! Experiment configuration: a flat `key = value` text format with `#`
//! comments and comma-separated lists.
//!
//! Every parameter has a default, so an empty file is a valid configuration;
//! keys are named after the model symbols with a unit suffix. The resolved
//! configuration can be echoed back as text ([`ExperimentConfig::echo`]) and
//! re-parsing the echo reproduces the identical configuration, which is how
//! output provenance headers round-trip.

use crate::d2d_capacity::{interference_constant, IntegrandVariant};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`, got {text:?}")]
    Malformed { line: usize, text: String },
    #[error("unknown configuration key `{key}`")]
    UnknownKey { key: String },
    #[error("key `{key}`: {reason}")]
    InvalidValue { key: String, reason: String },
    #[error("config selects experiment `{config}` but the command line asked for `{cli}`")]
    ExperimentMismatch { config: String, cli: String },
}

/// The experiments the harness can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Scenario,
}

impl Experiment {
    pub fn as_str(self) -> &'static str {
        match self {
            Experiment::Fig3 => "fig3",
            Experiment::Fig4 => "fig4",
            Experiment::Fig5 => "fig5",
            Experiment::Fig6 => "fig6",
            Experiment::Scenario => "scenario",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "fig3" => Some(Experiment::Fig3),
            "fig4" => Some(Experiment::Fig4),
            "fig5" => Some(Experiment::Fig5),
            "fig6" => Some(Experiment::Fig6),
            "scenario" => Some(Experiment::Scenario),
            _ => None,
        }
    }
}

/// Fully-resolved run configuration. Field defaults are the table-driven
/// model defaults; see [`ExperimentConfig::default`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub output_path: String,
    pub quad_tol: f64,

    // air-to-ground channel
    pub altitude_m: f64,
    pub a: f64,
    pub b: f64,
    pub eta_los_db: f64,
    pub eta_nlos_db: f64,

    // fig3: path loss vs UAV-relay slant distance
    pub fc_grid_ghz: Vec<f64>,
    pub slant_grid_m: Vec<f64>,

    // fig4: path loss vs LoS probability
    pub fc_ghz: f64,
    pub distance_m: f64,
    pub eta_los_grid_db: Vec<f64>,
    pub p_los_grid: Vec<f64>,

    // fig5: loss probability vs channel count
    pub channels_grid: Vec<u32>,
    pub offered_erlang_grid: Vec<f64>,

    // fig6: capacity vs hop count
    pub lambda_d: f64,
    pub lambda_r_grid: Vec<f64>,
    pub n_hops_grid: Vec<u32>,
    pub r_d_m: f64,
    pub alpha_d2d: f64,
    pub v_d_threshold: f64,
    pub p_relay_w: f64,
    pub p_d2d_w: f64,
    pub c_alpha: f64,
    pub integrand_variant: IntegrandVariant,

    // scenario
    pub area_m: f64,
    pub uav_x_m: f64,
    pub uav_y_m: f64,
    pub coverage_radius_m: f64,
    pub edge_band_m: f64,
    pub w_energy: f64,
    pub w_quality: f64,
    pub k_max_relays: usize,
    pub n_max_hops: u32,
    /// Optional CSV file with a pre-built node field; empty means generate
    /// a fresh field from the seed.
    pub field_csv: String,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let alpha_d2d = 3.0;
        Self {
            experiment: Experiment::Fig3,
            seed: 1,
            output_path: String::new(),
            quad_tol: 1e-10,

            altitude_m: 100.0,
            a: 10.0,
            b: 0.6,
            eta_los_db: 1.0,
            eta_nlos_db: 20.0,

            fc_grid_ghz: vec![2.8, 3.5, 5.8],
            slant_grid_m: (1..=50).map(|k| 10.0 * k as f64).collect(),

            fc_ghz: 2.8,
            distance_m: 100.0,
            eta_los_grid_db: crate::atg_channel::ETA_LOS_SWEEP_DB.to_vec(),
            p_los_grid: (0..=20).map(|k| k as f64 / 20.0).collect(),

            channels_grid: (1..=10).collect(),
            offered_erlang_grid: vec![10.0, 15.0, 20.0],

            lambda_d: 3.3e-4,
            lambda_r_grid: vec![0.1, 0.2, 0.3, 0.4, 0.5],
            n_hops_grid: (1..=10).collect(),
            r_d_m: 50.0,
            alpha_d2d,
            v_d_threshold: 1.0,
            p_relay_w: 1.0,
            p_d2d_w: 1.0,
            c_alpha: interference_constant(alpha_d2d).expect("alpha = 3 is valid"),
            integrand_variant: IntegrandVariant::DensityPrefactor,

            area_m: 1000.0,
            uav_x_m: 500.0,
            uav_y_m: 500.0,
            coverage_radius_m: 300.0,
            edge_band_m: 30.0,
            w_energy: 0.5,
            w_quality: 0.5,
            k_max_relays: 8,
            n_max_hops: 10,
            field_csv: String::new(),
        }
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64, ConfigError> {
    let x: f64 = v.parse().map_err(|_| ConfigError::InvalidValue {
        key: key.to_string(),
        reason: format!("not a number: {v:?}"),
    })?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ConfigError::InvalidValue {
            key: key.to_string(),
            reason: format!("must be finite, got {v:?}"),
        })
    }
}

fn parse_u64(key: &str, v: &str) -> Result<u64, ConfigError> {
    v.parse().map_err(|_| ConfigError::InvalidValue {
        key: key.to_string(),
        reason: format!("not an unsigned integer: {v:?}"),
    })
}

fn parse_f64_list(key: &str, v: &str) -> Result<Vec<f64>, ConfigError> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_f64(key, s))
        .collect()
}

fn parse_u32_list(key: &str, v: &str) -> Result<Vec<u32>, ConfigError> {
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse().map_err(|_| ConfigError::InvalidValue {
                key: key.to_string(),
                reason: format!("not an unsigned integer: {s:?}"),
            })
        })
        .collect()
}

fn fmt_f64_list(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn fmt_u32_list(xs: &[u32]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl ExperimentConfig {
    /// Parse a flat `key = value` config text on top of the defaults.
    /// `experiment` gives the experiment selected on the command line; a
    /// conflicting `experiment` key in the file is an error.
    pub fn parse(text: &str, experiment: Experiment) -> Result<Self, ConfigError> {
        let mut cfg = ExperimentConfig {
            experiment,
            ..ExperimentConfig::default()
        };
        // c_alpha tracks alpha_d2d unless the file pins it explicitly
        let mut c_alpha_explicit = false;

        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Malformed {
                line: lineno + 1,
                text: raw.to_string(),
            })?;
            let key = key.trim();
            let value = value.trim();

            match key {
                "experiment" => {
                    let file_exp =
                        Experiment::parse(value).ok_or_else(|| ConfigError::InvalidValue {
                            key: key.to_string(),
                            reason: format!(
                                "must be one of fig3, fig4, fig5, fig6, scenario; got {value:?}"
                            ),
                        })?;
                    if file_exp != experiment {
                        return Err(ConfigError::ExperimentMismatch {
                            config: file_exp.as_str().to_string(),
                            cli: experiment.as_str().to_string(),
                        });
                    }
                }
                "seed" => cfg.seed = parse_u64(key, value)?,
                "output_path" => cfg.output_path = value.to_string(),
                "quad_tol" => cfg.quad_tol = parse_f64(key, value)?,
                "altitude_m" => cfg.altitude_m = parse_f64(key, value)?,
                "a" => cfg.a = parse_f64(key, value)?,
                "b" => cfg.b = parse_f64(key, value)?,
                "eta_los_db" => cfg.eta_los_db = parse_f64(key, value)?,
                "eta_nlos_db" => cfg.eta_nlos_db = parse_f64(key, value)?,
                "fc_grid_ghz" => cfg.fc_grid_ghz = parse_f64_list(key, value)?,
                "slant_grid_m" => cfg.slant_grid_m = parse_f64_list(key, value)?,
                "fc_ghz" => cfg.fc_ghz = parse_f64(key, value)?,
                "distance_m" => cfg.distance_m = parse_f64(key, value)?,
                "eta_los_grid_db" => cfg.eta_los_grid_db = parse_f64_list(key, value)?,
                "p_los_grid" => cfg.p_los_grid = parse_f64_list(key, value)?,
                "channels_grid" => cfg.channels_grid = parse_u32_list(key, value)?,
                "offered_erlang_grid" => cfg.offered_erlang_grid = parse_f64_list(key, value)?,
                "lambda_d" => cfg.lambda_d = parse_f64(key, value)?,
                "lambda_r_grid" => cfg.lambda_r_grid = parse_f64_list(key, value)?,
                "n_hops_grid" => cfg.n_hops_grid = parse_u32_list(key, value)?,
                "r_d_m" => cfg.r_d_m = parse_f64(key, value)?,
                "alpha_d2d" => cfg.alpha_d2d = parse_f64(key, value)?,
                "v_d_threshold" => cfg.v_d_threshold = parse_f64(key, value)?,
                "p_relay_w" => cfg.p_relay_w = parse_f64(key, value)?,
                "p_d2d_w" => cfg.p_d2d_w = parse_f64(key, value)?,
                "c_alpha" => {
                    cfg.c_alpha = parse_f64(key, value)?;
                    c_alpha_explicit = true;
                }
                "integrand_variant" => {
                    cfg.integrand_variant = match value {
                        "prefactor" => IntegrandVariant::DensityPrefactor,
                        "exponent" => IntegrandVariant::DensityInExponent,
                        other => {
                            return Err(ConfigError::InvalidValue {
                                key: key.to_string(),
                                reason: format!("must be `prefactor` or `exponent`, got {other:?}"),
                            })
                        }
                    }
                }
                "area_m" => cfg.area_m = parse_f64(key, value)?,
                "uav_x_m" => cfg.uav_x_m = parse_f64(key, value)?,
                "uav_y_m" => cfg.uav_y_m = parse_f64(key, value)?,
                "coverage_radius_m" => cfg.coverage_radius_m = parse_f64(key, value)?,
                "edge_band_m" => cfg.edge_band_m = parse_f64(key, value)?,
                "w_energy" => cfg.w_energy = parse_f64(key, value)?,
                "w_quality" => cfg.w_quality = parse_f64(key, value)?,
                "k_max_relays" => cfg.k_max_relays = parse_u64(key, value)? as usize,
                "n_max_hops" => cfg.n_max_hops = parse_u64(key, value)? as u32,
                "field_csv" => cfg.field_csv = value.to_string(),
                other => {
                    return Err(ConfigError::UnknownKey {
                        key: other.to_string(),
                    })
                }
            }
        }

        if !c_alpha_explicit && cfg.alpha_d2d != 3.0 {
            cfg.c_alpha =
                interference_constant(cfg.alpha_d2d).map_err(|e| ConfigError::InvalidValue {
                    key: "alpha_d2d".to_string(),
                    reason: e.to_string(),
                })?;
        }

        cfg.validate()?;
        Ok(cfg)
    }

    /// Structural validation of grids and parameter ranges; reports the
    /// offending key by name.
    pub fn validate(&self) -> Result<(), ConfigError> {
        fn non_empty_ascending(key: &str, grid: &[f64]) -> Result<(), ConfigError> {
            if grid.is_empty() {
                return Err(ConfigError::InvalidValue {
                    key: key.to_string(),
                    reason: "grid must be non-empty".to_string(),
                });
            }
            if grid.windows(2).any(|w| w[0] >= w[1]) {
                return Err(ConfigError::InvalidValue {
                    key: key.to_string(),
                    reason: "grid must be sorted strictly ascending".to_string(),
                });
            }
            Ok(())
        }
        fn positive(key: &str, x: f64) -> Result<(), ConfigError> {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(ConfigError::InvalidValue {
                    key: key.to_string(),
                    reason: format!("must be finite and > 0, got {x}"),
                })
            }
        }

        positive("quad_tol", self.quad_tol)?;
        positive("altitude_m", self.altitude_m)?;
        positive("a", self.a)?;
        positive("b", self.b)?;
        positive("fc_ghz", self.fc_ghz)?;
        positive("distance_m", self.distance_m)?;
        positive("lambda_d", self.lambda_d)?;
        positive("r_d_m", self.r_d_m)?;
        positive("v_d_threshold", self.v_d_threshold)?;
        positive("p_relay_w", self.p_relay_w)?;
        positive("p_d2d_w", self.p_d2d_w)?;
        positive("c_alpha", self.c_alpha)?;
        positive("area_m", self.area_m)?;
        positive("coverage_radius_m", self.coverage_radius_m)?;
        positive("edge_band_m", self.edge_band_m)?;
        if self.eta_los_db < 0.0 || self.eta_nlos_db < self.eta_los_db {
            return Err(ConfigError::InvalidValue {
                key: "eta_nlos_db".to_string(),
                reason: "requires eta_nlos_db >= eta_los_db >= 0".to_string(),
            });
        }
        if self.alpha_d2d <= 2.0 {
            return Err(ConfigError::InvalidValue {
                key: "alpha_d2d".to_string(),
                reason: format!("must be > 2, got {}", self.alpha_d2d),
            });
        }

        non_empty_ascending("fc_grid_ghz", &self.fc_grid_ghz)?;
        non_empty_ascending("slant_grid_m", &self.slant_grid_m)?;
        non_empty_ascending("eta_los_grid_db", &self.eta_los_grid_db)?;
        non_empty_ascending("p_los_grid", &self.p_los_grid)?;
        non_empty_ascending("offered_erlang_grid", &self.offered_erlang_grid)?;
        non_empty_ascending("lambda_r_grid", &self.lambda_r_grid)?;
        let channels_f: Vec<f64> = self.channels_grid.iter().map(|&c| c as f64).collect();
        non_empty_ascending("channels_grid", &channels_f)?;
        let hops_f: Vec<f64> = self.n_hops_grid.iter().map(|&n| n as f64).collect();
        non_empty_ascending("n_hops_grid", &hops_f)?;
        if self.n_hops_grid[0] == 0 {
            return Err(ConfigError::InvalidValue {
                key: "n_hops_grid".to_string(),
                reason: "hop counts must be >= 1".to_string(),
            });
        }
        if self.p_los_grid[0] < 0.0 || *self.p_los_grid.last().unwrap() > 1.0 {
            return Err(ConfigError::InvalidValue {
                key: "p_los_grid".to_string(),
                reason: "probabilities must lie in [0, 1]".to_string(),
            });
        }

        if self.k_max_relays == 0 {
            return Err(ConfigError::InvalidValue {
                key: "k_max_relays".to_string(),
                reason: "must be >= 1".to_string(),
            });
        }
        if self.n_max_hops == 0 {
            return Err(ConfigError::InvalidValue {
                key: "n_max_hops".to_string(),
                reason: "must be >= 1".to_string(),
            });
        }
        if self.edge_band_m >= self.coverage_radius_m {
            return Err(ConfigError::InvalidValue {
                key: "edge_band_m".to_string(),
                reason: "must be < coverage_radius_m".to_string(),
            });
        }
        if self.w_energy < 0.0
            || self.w_quality < 0.0
            || (self.w_energy + self.w_quality - 1.0).abs() > 1e-9
        {
            return Err(ConfigError::InvalidValue {
                key: "w_energy".to_string(),
                reason: "w_energy and w_quality must be non-negative and sum to 1".to_string(),
            });
        }
        Ok(())
    }

    /// Canonical text form of the resolved configuration. Floats are printed
    /// with Rust's shortest round-trip formatting, so
    /// `parse(echo(cfg)) == cfg`.
    pub fn echo(&self) -> String {
        let variant = match self.integrand_variant {
            IntegrandVariant::DensityPrefactor => "prefactor",
            IntegrandVariant::DensityInExponent => "exponent",
        };
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        kv("experiment", self.experiment.as_str().to_string());
        kv("seed", self.seed.to_string());
        kv("output_path", self.output_path.clone());
        kv("quad_tol", self.quad_tol.to_string());
        kv("altitude_m", self.altitude_m.to_string());
        kv("a", self.a.to_string());
        kv("b", self.b.to_string());
        kv("eta_los_db", self.eta_los_db.to_string());
        kv("eta_nlos_db", self.eta_nlos_db.to_string());
        kv("fc_grid_ghz", fmt_f64_list(&self.fc_grid_ghz));
        kv("slant_grid_m", fmt_f64_list(&self.slant_grid_m));
        kv("fc_ghz", self.fc_ghz.to_string());
        kv("distance_m", self.distance_m.to_string());
        kv("eta_los_grid_db", fmt_f64_list(&self.eta_los_grid_db));
        kv("p_los_grid", fmt_f64_list(&self.p_los_grid));
        kv("channels_grid", fmt_u32_list(&self.channels_grid));
        kv(
            "offered_erlang_grid",
            fmt_f64_list(&self.offered_erlang_grid),
        );
        kv("lambda_d", self.lambda_d.to_string());
        kv("lambda_r_grid", fmt_f64_list(&self.lambda_r_grid));
        kv("n_hops_grid", fmt_u32_list(&self.n_hops_grid));
        kv("r_d_m", self.r_d_m.to_string());
        kv("alpha_d2d", self.alpha_d2d.to_string());
        kv("v_d_threshold", self.v_d_threshold.to_string());
        kv("p_relay_w", self.p_relay_w.to_string());
        kv("p_d2d_w", self.p_d2d_w.to_string());
        kv("c_alpha", self.c_alpha.to_string());
        kv("integrand_variant", variant.to_string());
        kv("area_m", self.area_m.to_string());
        kv("uav_x_m", self.uav_x_m.to_string());
        kv("uav_y_m", self.uav_y_m.to_string());
        kv("coverage_radius_m", self.coverage_radius_m.to_string());
        kv("edge_band_m", self.edge_band_m.to_string());
        kv("w_energy", self.w_energy.to_string());
        kv("w_quality", self.w_quality.to_string());
        kv("k_max_relays", self.k_max_relays.to_string());
        kv("n_max_hops", self.n_max_hops.to_string());
        kv("field_csv", self.field_csv.clone());
        s
    }

    /// Output path: the configured one, or `<experiment>.csv`.
    pub fn resolved_output_path(&self) -> String {
        if self.output_path.is_empty() {
            format!("{}.csv", self.experiment.as_str())
        } else {
            self.output_path.clone()
        }
    }
}
