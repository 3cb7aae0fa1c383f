//! Experiment harness: deterministic CSV sweeps behind the `covsim` CLI.
//!
//! Each `run_*` function turns a resolved [`ExperimentConfig`] into a
//! [`SweepTable`] whose provenance header echoes the full configuration;
//! parsing that echo reproduces the run.

pub mod config;
pub mod table;

use crate::atg_channel::{
    average_path_loss_db, p_los, EnvironmentProfile, LinkGeometry, UavPlacement,
};
use crate::d2d_capacity::{
    capacity_vs_hops, system_capacity_with_variant, CapacityError, CapacityParams, IntegrandVariant,
};
use crate::disaster_scenario::{
    classify_coverage, generate_field, reachability, select_relays, NodeField, ReachabilityReport,
    RelaySet, SelectionWeights,
};
use crate::erlang_traffic::{loss_probability, TrafficLoad};
use crate::numfmt::g9;
use config::{ConfigError, Experiment, ExperimentConfig};
use table::SweepTable;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error("{stage}: {message}")]
    Invalid {
        stage: &'static str,
        message: String,
    },
    #[error("{stage}: numerical failure: {message}")]
    Numerical {
        stage: &'static str,
        message: String,
    },
    #[error("{stage}: {source}")]
    Io {
        stage: &'static str,
        source: std::io::Error,
    },
}

impl HarnessError {
    /// CLI exit code: 1 for configuration problems, 2 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Numerical { .. } => 2,
            _ => 1,
        }
    }

    fn invalid(stage: &'static str, err: impl std::fmt::Display) -> Self {
        HarnessError::Invalid {
            stage,
            message: err.to_string(),
        }
    }
}

fn capacity_err(stage: &'static str, err: CapacityError) -> HarnessError {
    match err {
        CapacityError::QuadratureTolerance { .. } => HarnessError::Numerical {
            stage,
            message: err.to_string(),
        },
        other => HarnessError::invalid(stage, other),
    }
}

/// Result of one experiment run.
#[derive(Debug)]
pub struct RunOutput {
    pub table: SweepTable,
    /// Scenario runs additionally report the field-level metrics.
    pub scenario: Option<ScenarioSummary>,
}

/// Headline metrics of a scenario run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioSummary {
    pub relay_count: usize,
    pub direct_coverage_ratio: f64,
    pub coverage_extension_ratio: f64,
}

fn provenance(config: &ExperimentConfig) -> Vec<String> {
    let mut lines = vec![
        format!("covsim {}", env!("CARGO_PKG_VERSION")),
        format!(
            "re-run: covsim {} --config <the lines between the config markers>",
            config.experiment.as_str()
        ),
        "--- config ---".to_string(),
    ];
    lines.extend(config.echo().lines().map(str::to_string));
    lines.push("--- end config ---".to_string());
    lines
}

fn environment(config: &ExperimentConfig) -> Result<EnvironmentProfile, HarnessError> {
    EnvironmentProfile::new(config.a, config.b, config.eta_los_db, config.eta_nlos_db)
        .map_err(|e| HarnessError::invalid("environment", e))
}

/// Dispatch a resolved configuration to its experiment.
pub fn run(config: &ExperimentConfig) -> Result<RunOutput, HarnessError> {
    let table = match config.experiment {
        Experiment::Fig3 => run_fig3(config)?,
        Experiment::Fig4 => run_fig4(config)?,
        Experiment::Fig5 => run_fig5(config)?,
        Experiment::Fig6 => run_fig6(config)?,
        Experiment::Scenario => {
            let (table, report, relays) = run_scenario(config)?;
            let summary = ScenarioSummary {
                relay_count: relays.relays.len(),
                direct_coverage_ratio: report.direct_coverage_ratio,
                coverage_extension_ratio: report.coverage_extension_ratio,
            };
            return Ok(RunOutput {
                table,
                scenario: Some(summary),
            });
        }
    };
    Ok(RunOutput {
        table,
        scenario: None,
    })
}

/// Path loss versus UAV-to-relay slant distance, one column per carrier.
/// The LoS probability at each distance follows from the configured UAV
/// altitude.
pub fn run_fig3(config: &ExperimentConfig) -> Result<SweepTable, HarnessError> {
    let env = environment(config)?;
    let mut columns = vec!["distance_m".to_string()];
    columns.extend(config.fc_grid_ghz.iter().map(|fc| format!("pl_{fc}GHz_db")));
    let mut table = SweepTable::new(columns);
    table.provenance = provenance(config);

    for &d in &config.slant_grid_m {
        let geometry = LinkGeometry::from_slant(d, config.altitude_m)
            .map_err(|e| HarnessError::invalid("fig3 geometry", e))?;
        let p = p_los(geometry.horizontal_range_m, config.altitude_m, &env)
            .map_err(|e| HarnessError::invalid("fig3 p_los", e))?;
        let mut row = vec![d];
        for &fc in &config.fc_grid_ghz {
            let pl = average_path_loss_db(fc * 1e9, d, p, &env)
                .map_err(|e| HarnessError::invalid("fig3 path loss", e))?;
            row.push(pl);
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Path loss versus LoS probability, one column per excess-loss value.
/// `P_LoS` is swept as a free parameter; carrier and distance are fixed.
pub fn run_fig4(config: &ExperimentConfig) -> Result<SweepTable, HarnessError> {
    let mut columns = vec!["p_los".to_string()];
    columns.extend(
        config
            .eta_los_grid_db
            .iter()
            .map(|eta| format!("pl_eta{eta}_db")),
    );
    let mut table = SweepTable::new(columns);
    table.provenance = provenance(config);

    let envs: Vec<EnvironmentProfile> = config
        .eta_los_grid_db
        .iter()
        .map(|&eta| EnvironmentProfile::new(config.a, config.b, eta, config.eta_nlos_db))
        .collect::<Result<_, _>>()
        .map_err(|e| HarnessError::invalid("fig4 environment", e))?;

    for &p in &config.p_los_grid {
        let mut row = vec![p];
        for env in &envs {
            let pl = average_path_loss_db(config.fc_ghz * 1e9, config.distance_m, p, env)
                .map_err(|e| HarnessError::invalid("fig4 path loss", e))?;
            row.push(pl);
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Erlang-B loss probability versus channel count, one column per offered
/// load. The `lp_rev_*` companion columns carry the same values read along
/// the reversed channel axis, so either axis orientation can be compared
/// directly.
pub fn run_fig5(config: &ExperimentConfig) -> Result<SweepTable, HarnessError> {
    let mut columns = vec!["channels".to_string()];
    columns.extend(
        config
            .offered_erlang_grid
            .iter()
            .map(|a| format!("lp_A{a}")),
    );
    columns.extend(
        config
            .offered_erlang_grid
            .iter()
            .map(|a| format!("lp_rev_A{a}")),
    );
    let mut table = SweepTable::new(columns);
    table.provenance = provenance(config);

    let blocking = |channels: u32, a: f64| -> Result<f64, HarnessError> {
        let load =
            TrafficLoad::new(a, channels).map_err(|e| HarnessError::invalid("fig5 load", e))?;
        Ok(loss_probability(load))
    };

    let grid = &config.channels_grid;
    for (i, &n) in grid.iter().enumerate() {
        let mut row = vec![n as f64];
        for &a in &config.offered_erlang_grid {
            row.push(blocking(n, a)?);
        }
        let mirrored = grid[grid.len() - 1 - i];
        for &a in &config.offered_erlang_grid {
            row.push(blocking(mirrored, a)?);
        }
        table.push_row(row);
    }
    Ok(table)
}

/// D2D system capacity versus hop count, one column per relay density.
pub fn run_fig6(config: &ExperimentConfig) -> Result<SweepTable, HarnessError> {
    let mut columns = vec!["n_hops".to_string()];
    columns.extend(config.lambda_r_grid.iter().map(|lr| format!("cap_lr{lr}")));
    let mut table = SweepTable::new(columns);
    table.provenance = provenance(config);

    let base = CapacityParams {
        lambda_d: config.lambda_d,
        lambda_r: 0.0,
        r_d_m: config.r_d_m,
        n_hops: 1,
        alpha: config.alpha_d2d,
        v_d_threshold: config.v_d_threshold,
        p_relay_w: config.p_relay_w,
        p_d2d_w: config.p_d2d_w,
        c_alpha: config.c_alpha,
    };

    // columns[j][i] = capacity at n_hops_grid[i], lambda_r_grid[j]
    let mut per_lambda: Vec<Vec<f64>> = Vec::with_capacity(config.lambda_r_grid.len());
    for &lambda_r in &config.lambda_r_grid {
        let params = CapacityParams { lambda_r, ..base };
        let column = match config.integrand_variant {
            IntegrandVariant::DensityPrefactor => {
                capacity_vs_hops(&params, &config.n_hops_grid, config.quad_tol)
                    .map_err(|e| capacity_err("fig6 capacity", e))?
                    .into_iter()
                    .map(|(_, r)| r.capacity)
                    .collect()
            }
            IntegrandVariant::DensityInExponent => config
                .n_hops_grid
                .iter()
                .map(|&n| {
                    let p = CapacityParams {
                        n_hops: n,
                        ..params
                    };
                    system_capacity_with_variant(&p, config.quad_tol, config.integrand_variant)
                        .map(|r| r.capacity)
                        .map_err(|e| capacity_err("fig6 capacity", e))
                })
                .collect::<Result<Vec<f64>, _>>()?,
        };
        per_lambda.push(column);
    }

    for (i, &n) in config.n_hops_grid.iter().enumerate() {
        let mut row = vec![n as f64];
        for column in &per_lambda {
            row.push(column[i]);
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Full scenario: PPP field, coverage split, relay selection and multi-hop
/// reachability. Emits one per-node row; field-level metrics travel both in
/// the returned report and as a `summary` provenance line.
///
/// Sentinel -1 marks "no relay / not reached" in the `nearest_relay_id` and
/// `hop_count` columns; in-coverage nodes are served directly and carry hop
/// count 0.
pub fn run_scenario(
    config: &ExperimentConfig,
) -> Result<(SweepTable, ReachabilityReport, RelaySet), HarnessError> {
    let field = if config.field_csv.is_empty() {
        generate_field(config.lambda_d, config.area_m, config.seed)
            .map_err(|e| HarnessError::invalid("generate_field", e))?
    } else {
        let text = std::fs::read_to_string(&config.field_csv).map_err(|e| HarnessError::Io {
            stage: "field_csv",
            source: e,
        })?;
        NodeField::from_csv(&text, config.area_m)
            .map_err(|e| HarnessError::invalid("field_csv", e))?
    };

    let uav = UavPlacement::new(
        config.altitude_m,
        config.uav_x_m,
        config.uav_y_m,
        config.coverage_radius_m,
    )
    .map_err(|e| HarnessError::invalid("uav_placement", e))?;

    let partition = classify_coverage(&field, &uav);

    let weights = SelectionWeights::new(config.w_energy, config.w_quality)
        .map_err(|e| HarnessError::invalid("select_relays", e))?;
    let relays = select_relays(
        &field,
        &partition,
        &uav,
        config.edge_band_m,
        weights,
        config.k_max_relays,
    )
    .map_err(|e| HarnessError::invalid("select_relays", e))?;

    let report = reachability(&field, &partition, &relays, config.r_d_m, config.n_max_hops)
        .map_err(|e| HarnessError::invalid("reachability", e))?;

    let mut table = SweepTable::new(
        [
            "id",
            "x_m",
            "y_m",
            "energy",
            "quality",
            "in_coverage",
            "is_relay",
            "nearest_relay_id",
            "hop_count",
            "reachable",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    );
    table.provenance = provenance(config);
    table.provenance.push(format!(
        "summary relay_count={} direct_coverage_ratio={} coverage_extension_ratio={}",
        relays.relays.len(),
        g9(report.direct_coverage_ratio),
        g9(report.coverage_extension_ratio)
    ));

    let relay_ids = relays.ids();
    let mut out_reach = std::collections::HashMap::new();
    for nr in &report.per_node {
        out_reach.insert(nr.node_id, nr);
    }

    for node in &field.nodes {
        let in_cov = partition.in_coverage.binary_search(&node.id).is_ok();
        let is_relay = relay_ids.contains(&node.id);
        let (nearest, hops, reachable) = if in_cov {
            (-1.0, 0.0, 1.0)
        } else {
            let nr = out_reach[&node.id];
            (
                nr.nearest_relay.map_or(-1.0, |r| r as f64),
                nr.hop_count.map_or(-1.0, |h| h as f64),
                if nr.reachable { 1.0 } else { 0.0 },
            )
        };
        table.push_row(vec![
            node.id as f64,
            node.x_m,
            node.y_m,
            node.residual_energy,
            node.link_quality,
            if in_cov { 1.0 } else { 0.0 },
            if is_relay { 1.0 } else { 0.0 },
            nearest,
            hops,
            reachable,
        ]);
    }

    Ok((table, report, relays))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(experiment: Experiment) -> ExperimentConfig {
        ExperimentConfig {
            experiment,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn fig3_columns_ordered_by_frequency_everywhere() {
        let table = run_fig3(&cfg(Experiment::Fig3)).unwrap();
        assert_eq!(
            table.columns,
            vec!["distance_m", "pl_2.8GHz_db", "pl_3.5GHz_db", "pl_5.8GHz_db"]
        );
        for row in &table.rows {
            assert!(row[3] > row[2] && row[2] > row[1], "row {row:?}");
        }
    }

    #[test]
    fn fig3_path_loss_strictly_increases_with_distance() {
        let table = run_fig3(&cfg(Experiment::Fig3)).unwrap();
        for col in 1..=3 {
            for pair in table.rows.windows(2) {
                assert!(pair[1][col] > pair[0][col]);
            }
        }
    }

    #[test]
    fn fig4_endpoints_and_affinity() {
        let table = run_fig4(&cfg(Experiment::Fig4)).unwrap();
        let first = table.rows.first().unwrap();
        let last = table.rows.last().unwrap();
        // p = 0: all columns equal (eta_nlos only).
        for col in 2..=4 {
            assert!((first[col] - first[1]).abs() < 1e-12);
        }
        // p = 1: columns ordered by eta_los ascending.
        assert!(last[1] < last[2] && last[2] < last[3] && last[3] < last[4]);
        // eta_los = 0.1 column spans 19.9 dB.
        assert!((first[1] - last[1] - 19.9).abs() < 1e-9);
    }

    #[test]
    fn fig5_columns_and_reversal() {
        let table = run_fig5(&cfg(Experiment::Fig5)).unwrap();
        assert_eq!(table.columns[0], "channels");
        assert_eq!(table.columns[1], "lp_A10");
        assert_eq!(table.columns[4], "lp_rev_A10");
        // lp strictly decreasing down the grid, the rev column is its mirror
        let lp = table.column("lp_A10").unwrap();
        let rev = table.column("lp_rev_A10").unwrap();
        for pair in lp.windows(2) {
            assert!(pair[1] < pair[0]);
        }
        let mut mirrored = lp.clone();
        mirrored.reverse();
        assert_eq!(rev, mirrored);
        // B(1, 10) = 10/11
        assert!((lp[0] - 10.0 / 11.0).abs() < 1e-12);
        // larger offered load blocks more at every row
        let lp15 = table.column("lp_A15").unwrap();
        let lp20 = table.column("lp_A20").unwrap();
        for i in 0..lp.len() {
            assert!(lp20[i] >= lp15[i] && lp15[i] >= lp[i]);
        }
    }

    #[test]
    fn fig6_orderings() {
        let table = run_fig6(&cfg(Experiment::Fig6)).unwrap();
        assert_eq!(table.columns.len(), 6);
        for row in &table.rows {
            for col in 2..table.columns.len() {
                assert!(row[col] > row[col - 1], "lambda_r ordering in {row:?}");
            }
            for v in &row[1..] {
                assert!(*v >= 0.0);
            }
        }
        for col in 1..table.columns.len() {
            for pair in table.rows.windows(2) {
                assert!(pair[1][col] > pair[0][col], "hop ordering in column {col}");
            }
        }
    }

    #[test]
    fn scenario_is_deterministic_and_rectangular() {
        let config = cfg(Experiment::Scenario);
        let (t1, r1, _) = run_scenario(&config).unwrap();
        let (t2, r2, _) = run_scenario(&config).unwrap();
        assert_eq!(t1.body(), t2.body());
        assert_eq!(r1, r2);
        let width = t1.columns.len();
        assert!(t1.rows.iter().all(|r| r.len() == width));
    }

    #[test]
    fn scenario_extension_monotone_in_hop_budget() {
        let mut config = cfg(Experiment::Scenario);
        config.n_max_hops = 2;
        let (_, short, _) = run_scenario(&config).unwrap();
        config.n_max_hops = 4;
        let (_, long, _) = run_scenario(&config).unwrap();
        assert!(long.coverage_extension_ratio >= short.coverage_extension_ratio);
    }

    #[test]
    fn scenario_full_coverage_degenerate() {
        let mut config = cfg(Experiment::Scenario);
        // radius beyond the area diagonal: everything in coverage
        config.coverage_radius_m = 2000.0;
        config.edge_band_m = 200.0;
        let (_, report, _) = run_scenario(&config).unwrap();
        assert_eq!(report.coverage_extension_ratio, 1.0);
        assert_eq!(report.direct_coverage_ratio, 1.0);
    }

    #[test]
    fn dispatch_covers_all_experiments() {
        for exp in [
            Experiment::Fig3,
            Experiment::Fig4,
            Experiment::Fig5,
            Experiment::Fig6,
            Experiment::Scenario,
        ] {
            let out = run(&cfg(exp)).unwrap();
            assert!(!out.table.rows.is_empty());
            assert_eq!(out.scenario.is_some(), exp == Experiment::Scenario);
        }
    }
}
