//! Erlang-B blocking probability for the congested coverage service.
//!
//! The loss probability of an N-channel loss system offered A Erlang is
//! computed with the numerically stable recursion
//! `B(0) = 1; B(k) = A*B(k-1) / (k + A*B(k-1))`, which avoids the factorial
//! overflow of the closed-form sum near N ~ 171.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TrafficError {
    #[error("offered_erlang must be finite and >= 0, got {0}")]
    InvalidOfferedTraffic(f64),
    #[error("offered_erlang must be > 0 for dimensioning, got {0}")]
    ZeroOfferedTraffic(f64),
    #[error("target_blocking must lie in (0, 1), got {0}")]
    InvalidTarget(f64),
}

/// Offered traffic intensity A (Erlang) and channel count N.
///
/// Channel counts are integers by construction; fractional channel counts
/// are not interpolated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrafficLoad {
    pub offered_erlang: f64,
    pub channels: u32,
}

impl TrafficLoad {
    pub fn new(offered_erlang: f64, channels: u32) -> Result<Self, TrafficError> {
        if !offered_erlang.is_finite() || offered_erlang < 0.0 {
            return Err(TrafficError::InvalidOfferedTraffic(offered_erlang));
        }
        Ok(Self {
            offered_erlang,
            channels,
        })
    }
}

/// Erlang-B blocking probability `B(N, A)`.
///
/// Strictly decreasing in N for A > 0 and strictly increasing in A for
/// N >= 1; always in [0, 1]. `B(0, A) = 1` (no channels, every call blocked).
pub fn loss_probability(load: TrafficLoad) -> f64 {
    let a = load.offered_erlang;
    let mut b = 1.0;
    for k in 1..=load.channels {
        b = a * b / (k as f64 + a * b);
    }
    b
}

/// Smallest channel count N with `B(N, A) <= target_blocking`.
///
/// Terminates because `B(N, A) -> 0` as N grows.
pub fn channels_for_grade(offered_erlang: f64, target_blocking: f64) -> Result<u32, TrafficError> {
    if !offered_erlang.is_finite() || offered_erlang <= 0.0 {
        return Err(TrafficError::ZeroOfferedTraffic(offered_erlang));
    }
    if !target_blocking.is_finite() || target_blocking <= 0.0 || target_blocking >= 1.0 {
        return Err(TrafficError::InvalidTarget(target_blocking));
    }
    let mut b = 1.0;
    let mut n: u32 = 0;
    while b > target_blocking {
        n += 1;
        b = offered_erlang * b / (n as f64 + offered_erlang * b);
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(channels: u32, a: f64) -> f64 {
        loss_probability(TrafficLoad::new(a, channels).unwrap())
    }

    /// Direct summation of the closed form, kept independent of the
    /// recursion it checks. Valid for small N only.
    fn direct_sum(channels: u32, a: f64) -> f64 {
        let mut term = 1.0; // A^k / k!
        let mut sum = 1.0;
        for k in 1..=channels {
            term *= a / k as f64;
            sum += term;
        }
        term / sum
    }

    #[test]
    fn no_channels_blocks_everything() {
        assert_eq!(b(0, 0.0), 1.0);
        assert_eq!(b(0, 17.3), 1.0);
    }

    #[test]
    fn no_traffic_never_blocks() {
        assert_eq!(b(1, 0.0), 0.0);
        assert_eq!(b(12, 0.0), 0.0);
    }

    #[test]
    fn two_channels_unit_load() {
        // (1/2) / (1 + 1 + 1/2) = 0.2
        assert!((b(2, 1.0) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn single_channel_closed_form() {
        // B(1, A) = A / (1 + A)
        assert!((b(1, 10.0) - 10.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn recursion_matches_direct_sum() {
        for &a in &[0.5, 1.0, 5.0, 10.0, 15.0, 20.0, 50.0] {
            for n in 0..=30 {
                let rec = b(n, a);
                let dir = direct_sum(n, a);
                assert!(
                    (rec - dir).abs() <= 1e-12 * dir.max(f64::MIN_POSITIVE),
                    "B({n}, {a}): recursion {rec} vs direct {dir}"
                );
            }
        }
    }

    #[test]
    fn monotone_in_channels_and_load() {
        for &a in &[0.5, 5.0, 20.0] {
            for n in 1..=25 {
                assert!(b(n, a) < b(n - 1, a), "not decreasing at N={n}, A={a}");
            }
        }
        for n in 1..=10 {
            assert!(b(n, 12.0) > b(n, 11.0));
        }
    }

    #[test]
    fn always_a_probability() {
        for &a in &[0.0, 0.1, 3.0, 80.0, 1e4] {
            for n in 0..=200 {
                let v = b(n, a);
                assert!((0.0..=1.0).contains(&v), "B({n}, {a}) = {v}");
            }
        }
    }

    #[test]
    fn dimensioning_tiny_load() {
        // B(1, 1e-4) ~ 1e-4 <= 0.5 while B(0) = 1 > 0.5.
        assert_eq!(channels_for_grade(1e-4, 0.5).unwrap(), 1);
    }

    #[test]
    fn dimensioning_unit_load() {
        // B(1, 1) = 0.5 > 0.21, B(2, 1) = 0.2 <= 0.21.
        assert_eq!(channels_for_grade(1.0, 0.21).unwrap(), 2);
    }

    #[test]
    fn dimensioning_monotone_in_load() {
        let mut prev = 0;
        for &a in &[0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
            let n = channels_for_grade(a, 0.01).unwrap();
            assert!(n >= prev, "A={a} gave N={n} < {prev}");
            prev = n;
        }
    }

    #[test]
    fn dimensioning_rejects_bad_inputs() {
        assert!(channels_for_grade(0.0, 0.5).is_err());
        assert!(channels_for_grade(-1.0, 0.5).is_err());
        assert!(channels_for_grade(1.0, 0.0).is_err());
        assert!(channels_for_grade(1.0, 1.0).is_err());
    }

    #[test]
    fn load_rejects_negative_traffic() {
        assert!(TrafficLoad::new(-0.5, 3).is_err());
        assert!(TrafficLoad::new(f64::NAN, 3).is_err());
    }
}
