//! Air-to-ground channel model.
//!
//! Pure closed-form building blocks for the UAV-to-ground link: slant
//! distance, elevation-angle sigmoid LoS probability, free-space path loss,
//! and the LoS/NLoS mixed average path loss. Everything here is an *average*
//! model — no fading or shadowing draws.

use thiserror::Error;

/// Speed of light in m/s (SI definition, exact).
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

/// Excess-loss sweep values (dB) exposed for the path-loss-vs-LoS study.
pub const ETA_LOS_SWEEP_DB: [f64; 4] = [0.1, 1.0, 1.6, 2.3];

/// Errors from channel-model argument validation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("{name} must be finite, got {value}")]
    NotFinite { name: &'static str, value: f64 },
    #[error("{name} must be {constraint}, got {value}")]
    OutOfRange {
        name: &'static str,
        constraint: &'static str,
        value: f64,
    },
}

fn require_finite(name: &'static str, value: f64) -> Result<f64, ChannelError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(ChannelError::NotFinite { name, value })
    }
}

fn require_positive(name: &'static str, value: f64) -> Result<f64, ChannelError> {
    require_finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(ChannelError::OutOfRange {
            name,
            constraint: "> 0",
            value,
        })
    }
}

fn require_non_negative(name: &'static str, value: f64) -> Result<f64, ChannelError> {
    require_finite(name, value)?;
    if value >= 0.0 {
        Ok(value)
    } else {
        Err(ChannelError::OutOfRange {
            name,
            constraint: ">= 0",
            value,
        })
    }
}

/// Sigmoid parameters and excess-loss constants for one environment class
/// (urban, suburban, ...).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentProfile {
    /// Dimensionless S-curve parameter.
    pub a: f64,
    /// Per-degree S-curve parameter.
    pub b: f64,
    /// Mean excess loss added to free-space loss on LoS links (dB).
    pub eta_los_db: f64,
    /// Mean excess loss added to free-space loss on NLoS links (dB).
    pub eta_nlos_db: f64,
}

impl EnvironmentProfile {
    /// Build a profile, enforcing `a > 0`, `b > 0`, `eta_nlos >= eta_los >= 0`.
    pub fn new(a: f64, b: f64, eta_los_db: f64, eta_nlos_db: f64) -> Result<Self, ChannelError> {
        require_positive("a", a)?;
        require_positive("b", b)?;
        require_non_negative("eta_los_db", eta_los_db)?;
        require_finite("eta_nlos_db", eta_nlos_db)?;
        if eta_nlos_db < eta_los_db {
            return Err(ChannelError::OutOfRange {
                name: "eta_nlos_db",
                constraint: ">= eta_los_db",
                value: eta_nlos_db,
            });
        }
        Ok(Self {
            a,
            b,
            eta_los_db,
            eta_nlos_db,
        })
    }

    /// Default urban environment: a = 10, b = 0.6, eta_los = 1 dB,
    /// eta_nlos = 20 dB. All four are ordinary run parameters and can be
    /// overridden per configuration.
    pub fn urban() -> Self {
        Self {
            a: 10.0,
            b: 0.6,
            eta_los_db: 1.0,
            eta_nlos_db: 20.0,
        }
    }
}

/// Static UAV placement: altitude, ground projection, and served disc radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UavPlacement {
    pub altitude_m: f64,
    pub ground_x_m: f64,
    pub ground_y_m: f64,
    pub coverage_radius_m: f64,
}

impl UavPlacement {
    pub fn new(
        altitude_m: f64,
        ground_x_m: f64,
        ground_y_m: f64,
        coverage_radius_m: f64,
    ) -> Result<Self, ChannelError> {
        require_positive("altitude_m", altitude_m)?;
        require_finite("ground_x_m", ground_x_m)?;
        require_finite("ground_y_m", ground_y_m)?;
        require_positive("coverage_radius_m", coverage_radius_m)?;
        Ok(Self {
            altitude_m,
            ground_x_m,
            ground_y_m,
            coverage_radius_m,
        })
    }
}

/// Geometry of one UAV-to-ground link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub horizontal_range_m: f64,
    pub slant_distance_m: f64,
    pub elevation_deg: f64,
}

impl LinkGeometry {
    /// Geometry from horizontal range and UAV altitude.
    pub fn from_horizontal(horizontal_range_m: f64, altitude_m: f64) -> Result<Self, ChannelError> {
        let slant = uav_ground_distance(horizontal_range_m, altitude_m)?;
        Ok(Self {
            horizontal_range_m,
            slant_distance_m: slant,
            elevation_deg: elevation_angle_deg(horizontal_range_m, altitude_m)?,
        })
    }

    /// Geometry from slant distance and UAV altitude. A slant distance below
    /// the altitude has no ground solution and is treated as the nadir point
    /// (horizontal range 0, elevation 90 degrees).
    pub fn from_slant(slant_distance_m: f64, altitude_m: f64) -> Result<Self, ChannelError> {
        require_positive("slant_distance_m", slant_distance_m)?;
        require_positive("altitude_m", altitude_m)?;
        let horizontal = if slant_distance_m <= altitude_m {
            0.0
        } else {
            (slant_distance_m * slant_distance_m - altitude_m * altitude_m).sqrt()
        };
        Ok(Self {
            horizontal_range_m: horizontal,
            slant_distance_m: slant_distance_m.max(altitude_m),
            elevation_deg: elevation_angle_deg(horizontal, altitude_m)?,
        })
    }
}

/// Slant distance from the UAV to a ground device: `sqrt(r^2 + h^2)`.
pub fn uav_ground_distance(horizontal_range_m: f64, altitude_m: f64) -> Result<f64, ChannelError> {
    require_non_negative("horizontal_range_m", horizontal_range_m)?;
    require_positive("altitude_m", altitude_m)?;
    Ok(horizontal_range_m.hypot(altitude_m))
}

/// Elevation angle of the ground device in degrees: `(180/pi) * atan(h/r)`.
/// The nadir point (`r = 0`) is the 90-degree limit, not an error.
pub fn elevation_angle_deg(horizontal_range_m: f64, altitude_m: f64) -> Result<f64, ChannelError> {
    require_non_negative("horizontal_range_m", horizontal_range_m)?;
    require_positive("altitude_m", altitude_m)?;
    Ok(altitude_m.atan2(horizontal_range_m).to_degrees())
}

/// LoS probability as a sigmoid of the elevation angle:
/// `1 / (1 + a * exp(-b * (theta - a)))` with `theta` in degrees.
pub fn p_los(
    horizontal_range_m: f64,
    altitude_m: f64,
    env: &EnvironmentProfile,
) -> Result<f64, ChannelError> {
    let theta_deg = elevation_angle_deg(horizontal_range_m, altitude_m)?;
    Ok(1.0 / (1.0 + env.a * (-env.b * (theta_deg - env.a)).exp()))
}

/// NLoS probability: the exact complement `1 - p_los`.
pub fn p_nlos(
    horizontal_range_m: f64,
    altitude_m: f64,
    env: &EnvironmentProfile,
) -> Result<f64, ChannelError> {
    Ok(1.0 - p_los(horizontal_range_m, altitude_m, env)?)
}

/// Free-space path loss in dB: `20 * log10(4*pi*f_c*d / c)`.
pub fn free_space_path_loss_db(carrier_hz: f64, distance_m: f64) -> Result<f64, ChannelError> {
    require_positive("carrier_hz", carrier_hz)?;
    require_positive("distance_m", distance_m)?;
    let ratio = 4.0 * std::f64::consts::PI * carrier_hz * distance_m / SPEED_OF_LIGHT_M_S;
    Ok(20.0 * ratio.log10())
}

/// Average path loss in dB: free-space loss plus the LoS/NLoS excess-loss
/// mixture `eta_los * p_los + eta_nlos * (1 - p_los)`. Affine in `p_los`
/// with slope `eta_los - eta_nlos`.
pub fn average_path_loss_db(
    carrier_hz: f64,
    distance_m: f64,
    p_los: f64,
    env: &EnvironmentProfile,
) -> Result<f64, ChannelError> {
    require_finite("p_los", p_los)?;
    if !(0.0..=1.0).contains(&p_los) {
        return Err(ChannelError::OutOfRange {
            name: "p_los",
            constraint: "in [0, 1]",
            value: p_los,
        });
    }
    let fspl = free_space_path_loss_db(carrier_hz, distance_m)?;
    Ok(fspl + env.eta_los_db * p_los + env.eta_nlos_db * (1.0 - p_los))
}

/// Average path loss of the UAV-to-relay link for a relay at `relay_xy`
/// (meters). Composes the slant geometry, the LoS probability at the relay's
/// elevation angle, and the mixed average path loss.
pub fn path_loss_at_relay(
    uav: &UavPlacement,
    relay_xy: (f64, f64),
    carrier_hz: f64,
    env: &EnvironmentProfile,
) -> Result<f64, ChannelError> {
    require_finite("relay_x_m", relay_xy.0)?;
    require_finite("relay_y_m", relay_xy.1)?;
    let horizontal = (relay_xy.0 - uav.ground_x_m).hypot(relay_xy.1 - uav.ground_y_m);
    let slant = uav_ground_distance(horizontal, uav.altitude_m)?;
    let p = p_los(horizontal, uav.altitude_m, env)?;
    average_path_loss_db(carrier_hz, slant, p, env)
}
