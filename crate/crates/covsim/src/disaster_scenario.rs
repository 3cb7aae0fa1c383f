//! Seeded Monte-Carlo disaster scenarios.
//!
//! A Poisson point process drops ground user devices on a square disaster
//! area; nodes are split into in/out of UAV coverage, relays are picked at
//! the coverage edge by a residual-energy/link-quality score, and multi-hop
//! reachability over the D2D geometric graph yields the coverage-extension
//! metrics.
//!
//! Generation is deterministic per seed. The generator is ChaCha8 with one
//! substream per attribute class (0 node count, 1 positions, 2 residual
//! energy, 3 link quality), so adding attributes never perturbs positions.

use crate::atg_channel::UavPlacement;
use crate::numfmt::g9;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use std::collections::VecDeque;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScenarioError {
    #[error("{name} must be {constraint}, got {value}")]
    OutOfRange {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },
    #[error("relay selection weights must be non-negative and sum to 1, got ({0}, {1})")]
    InvalidWeights(f64, f64),
    #[error("node CSV line {line}: {reason}")]
    Csv { line: usize, reason: String },
}

fn check_positive(name: &'static str, value: f64) -> Result<f64, ScenarioError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ScenarioError::OutOfRange {
            name,
            constraint: "finite and > 0",
            value,
        })
    }
}

/// One ground user device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub id: u32,
    pub x_m: f64,
    pub y_m: f64,
    /// Normalized residual energy in [0, 1].
    pub residual_energy: f64,
    /// Normalized link quality in [0, 1].
    pub link_quality: f64,
}

/// A realized user field on the `[0, area_m]^2` square.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeField {
    pub area_m: f64,
    pub intensity: f64,
    pub seed: u64,
    pub nodes: Vec<Node>,
}

impl NodeField {
    /// Export as CSV with header `id,x_m,y_m,energy,quality` and floats at
    /// 9 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,x_m,y_m,energy,quality\n");
        for n in &self.nodes {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                n.id,
                g9(n.x_m),
                g9(n.y_m),
                g9(n.residual_energy),
                g9(n.link_quality)
            ));
        }
        out
    }

    /// Import a field from CSV (the [`NodeField::to_csv`] format). The area
    /// is not carried by the file and must be supplied; every node must lie
    /// inside `[0, area_m]^2` and ids must be unique and dense from 0.
    /// The recorded intensity is the empirical count / area^2; the seed is
    /// recorded as 0 since the file, not a generator, defines the field.
    pub fn from_csv(text: &str, area_m: f64) -> Result<Self, ScenarioError> {
        check_positive("area_m", area_m)?;
        let mut nodes = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if idx == 0 && line.starts_with("id,") {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 5 {
                return Err(ScenarioError::Csv {
                    line: idx + 1,
                    reason: format!("expected 5 fields, got {}", fields.len()),
                });
            }
            let parse = |what: &str, s: &str| -> Result<f64, ScenarioError> {
                s.parse().map_err(|_| ScenarioError::Csv {
                    line: idx + 1,
                    reason: format!("invalid {what}: {s:?}"),
                })
            };
            let id: u32 = fields[0].parse().map_err(|_| ScenarioError::Csv {
                line: idx + 1,
                reason: format!("invalid id: {:?}", fields[0]),
            })?;
            let node = Node {
                id,
                x_m: parse("x_m", fields[1])?,
                y_m: parse("y_m", fields[2])?,
                residual_energy: parse("energy", fields[3])?,
                link_quality: parse("quality", fields[4])?,
            };
            if !(0.0..=area_m).contains(&node.x_m) || !(0.0..=area_m).contains(&node.y_m) {
                return Err(ScenarioError::Csv {
                    line: idx + 1,
                    reason: format!("node {id} lies outside [0, {area_m}]^2"),
                });
            }
            nodes.push(node);
        }
        nodes.sort_by_key(|n| n.id);
        for (i, n) in nodes.iter().enumerate() {
            if n.id != i as u32 {
                return Err(ScenarioError::Csv {
                    line: 0,
                    reason: format!("ids must be unique and dense from 0; missing id {i}"),
                });
            }
        }
        let intensity = nodes.len() as f64 / (area_m * area_m);
        Ok(Self {
            area_m,
            intensity,
            seed: 0,
            nodes,
        })
    }
}

/// Node ids split by UAV coverage; both sides sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveragePartition {
    pub in_coverage: Vec<u32>,
    pub out_coverage: Vec<u32>,
}

/// Relay selection weights; must be non-negative and sum to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionWeights {
    pub energy: f64,
    pub quality: f64,
}

impl SelectionWeights {
    pub fn new(energy: f64, quality: f64) -> Result<Self, ScenarioError> {
        let sum = energy + quality;
        if !energy.is_finite()
            || !quality.is_finite()
            || energy < 0.0
            || quality < 0.0
            || (sum - 1.0).abs() > 1e-9
        {
            return Err(ScenarioError::InvalidWeights(energy, quality));
        }
        Ok(Self { energy, quality })
    }
}

/// A ranked relay choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelayChoice {
    pub node_id: u32,
    pub score: f64,
}

/// Relays picked from the coverage-edge annulus, sorted by descending score
/// (ties by ascending node id).
#[derive(Debug, Clone, PartialEq)]
pub struct RelaySet {
    pub relays: Vec<RelayChoice>,
    pub edge_band_m: f64,
    pub weights: SelectionWeights,
}

impl RelaySet {
    pub fn ids(&self) -> Vec<u32> {
        self.relays.iter().map(|r| r.node_id).collect()
    }
}

/// Reachability of one out-of-coverage node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeReach {
    pub node_id: u32,
    /// Relay whose minimum-hop path serves this node; ties between relays at
    /// equal hop count resolve in relay rank order.
    pub nearest_relay: Option<u32>,
    pub hop_count: Option<u32>,
    pub reachable: bool,
}

/// Multi-hop reachability metrics for a field.
#[derive(Debug, Clone, PartialEq)]
pub struct ReachabilityReport {
    /// One entry per out-of-coverage node, ascending node id.
    pub per_node: Vec<NodeReach>,
    /// Fraction of out-of-coverage nodes reachable within the hop budget;
    /// 1.0 when there is nothing to extend to.
    pub coverage_extension_ratio: f64,
    /// Fraction of all nodes directly inside UAV coverage.
    pub direct_coverage_ratio: f64,
}

/// Draw a Poisson(intensity * area^2) number of nodes uniformly on the
/// square, with uniform [0, 1] residual energy and link quality. Identical
/// seeds yield bit-identical fields.
pub fn generate_field(intensity: f64, area_m: f64, seed: u64) -> Result<NodeField, ScenarioError> {
    check_positive("intensity", intensity)?;
    check_positive("area_m", area_m)?;

    let stream = |k: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k);
        rng
    };

    let mean = intensity * area_m * area_m;
    let count = Poisson::new(mean)
        .map_err(|_| ScenarioError::OutOfRange {
            name: "intensity * area^2",
            constraint: "a valid Poisson mean",
            value: mean,
        })?
        .sample(&mut stream(0)) as usize;

    let mut positions = stream(1);
    let mut energy = stream(2);
    let mut quality = stream(3);

    let nodes = (0..count)
        .map(|id| {
            let x_m = positions.random_range(0.0..area_m);
            let y_m = positions.random_range(0.0..area_m);
            Node {
                id: id as u32,
                x_m,
                y_m,
                residual_energy: energy.random_range(0.0..1.0),
                link_quality: quality.random_range(0.0..1.0),
            }
        })
        .collect();

    Ok(NodeField {
        area_m,
        intensity,
        seed,
        nodes,
    })
}

/// Split nodes by horizontal distance to the UAV ground point. Boundary
/// nodes (distance exactly equal to the coverage radius) count as
/// in-coverage (closed-disc convention).
pub fn classify_coverage(field: &NodeField, uav: &UavPlacement) -> CoveragePartition {
    let mut in_coverage = Vec::new();
    let mut out_coverage = Vec::new();
    for n in &field.nodes {
        let d = (n.x_m - uav.ground_x_m).hypot(n.y_m - uav.ground_y_m);
        if d <= uav.coverage_radius_m {
            in_coverage.push(n.id);
        } else {
            out_coverage.push(n.id);
        }
    }
    CoveragePartition {
        in_coverage,
        out_coverage,
    }
}

/// Select up to `k_max` relays from in-coverage nodes inside the coverage
/// edge annulus `[r_cov - edge_band_m, r_cov]`, ranked by the weighted
/// energy/quality score (ties by ascending node id). An empty candidate set
/// yields an empty relay set, not an error.
pub fn select_relays(
    field: &NodeField,
    partition: &CoveragePartition,
    uav: &UavPlacement,
    edge_band_m: f64,
    weights: SelectionWeights,
    k_max: usize,
) -> Result<RelaySet, ScenarioError> {
    check_positive("edge_band_m", edge_band_m)?;
    if edge_band_m >= uav.coverage_radius_m {
        return Err(ScenarioError::OutOfRange {
            name: "edge_band_m",
            constraint: "< coverage_radius_m",
            value: edge_band_m,
        });
    }
    if k_max == 0 {
        return Err(ScenarioError::OutOfRange {
            name: "k_max",
            constraint: ">= 1",
            value: 0.0,
        });
    }

    let inner = uav.coverage_radius_m - edge_band_m;
    let mut candidates: Vec<RelayChoice> = partition
        .in_coverage
        .iter()
        .map(|&id| &field.nodes[id as usize])
        .filter(|n| {
            let d = (n.x_m - uav.ground_x_m).hypot(n.y_m - uav.ground_y_m);
            d >= inner && d <= uav.coverage_radius_m
        })
        .map(|n| RelayChoice {
            node_id: n.id,
            score: weights.energy * n.residual_energy + weights.quality * n.link_quality,
        })
        .collect();

    candidates.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.node_id.cmp(&b.node_id)));
    candidates.truncate(k_max);

    Ok(RelaySet {
        relays: candidates,
        edge_band_m,
        weights,
    })
}

/// Breadth-first reachability of out-of-coverage nodes from the relay set.
///
/// An out-of-coverage node is reachable when some relay connects to it
/// through out-of-coverage intermediates with every hop at most `r_d_m`
/// long, using at most `n_max` hops. Hop counts are minima (BFS levels);
/// sources are seeded in relay rank order, so equal-hop ties resolve to the
/// highest-ranked relay.
pub fn reachability(
    field: &NodeField,
    partition: &CoveragePartition,
    relays: &RelaySet,
    r_d_m: f64,
    n_max: u32,
) -> Result<ReachabilityReport, ScenarioError> {
    check_positive("r_d_m", r_d_m)?;
    if n_max == 0 {
        return Err(ScenarioError::OutOfRange {
            name: "n_max",
            constraint: ">= 1",
            value: 0.0,
        });
    }

    let total = field.nodes.len();
    let direct_coverage_ratio = if total == 0 {
        0.0
    } else {
        partition.in_coverage.len() as f64 / total as f64
    };

    // BFS state per out-coverage node, indexed by position in the sorted
    // out_coverage list.
    let out = &partition.out_coverage;
    let index_of = |id: u32| out.binary_search(&id).expect("id is out-coverage");
    let mut hops: Vec<Option<u32>> = vec![None; out.len()];
    let mut origin: Vec<Option<u32>> = vec![None; out.len()];

    let within = |a: &Node, b: &Node| (a.x_m - b.x_m).hypot(a.y_m - b.y_m) <= r_d_m;

    let mut queue: VecDeque<(usize, u32, u32)> = VecDeque::new(); // (out index, hops, relay id)
    for relay in &relays.relays {
        let relay_node = &field.nodes[relay.node_id as usize];
        for &oid in out {
            let i = index_of(oid);
            if hops[i].is_none() && within(relay_node, &field.nodes[oid as usize]) {
                hops[i] = Some(1);
                origin[i] = Some(relay.node_id);
                queue.push_back((i, 1, relay.node_id));
            }
        }
    }

    while let Some((i, h, src)) = queue.pop_front() {
        if h >= n_max {
            continue;
        }
        let here = &field.nodes[out[i] as usize];
        for (j, &oid) in out.iter().enumerate() {
            if hops[j].is_none() && within(here, &field.nodes[oid as usize]) {
                hops[j] = Some(h + 1);
                origin[j] = Some(src);
                queue.push_back((j, h + 1, src));
            }
        }
    }

    let per_node: Vec<NodeReach> = out
        .iter()
        .enumerate()
        .map(|(i, &id)| NodeReach {
            node_id: id,
            nearest_relay: origin[i],
            hop_count: hops[i],
            reachable: hops[i].is_some(),
        })
        .collect();

    let reachable = per_node.iter().filter(|n| n.reachable).count();
    let coverage_extension_ratio = if out.is_empty() {
        1.0
    } else {
        reachable as f64 / out.len() as f64
    };

    Ok(ReachabilityReport {
        per_node,
        coverage_extension_ratio,
        direct_coverage_ratio,
    })
}
