//! Emulated hall-effect, IMU and sonar readings.

use serde::Serialize;

use super::noise::NoiseSource;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensorParams {
    /// IMU inclination noise, rad.
    pub imu_sigma: f64,
    /// Sonar look-ahead distance in front of the robot, m.
    pub cliff_lookahead: f64,
}

impl Default for SensorParams {
    fn default() -> Self {
        Self { imu_sigma: 0.5f64.to_radians(), cliff_lookahead: 0.05 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SensorRecord {
    /// Cumulative magnet blocks passed by each chain's hall sensors.
    pub hall_ticks_left: u64,
    pub hall_ticks_right: u64,
    pub imu_inclination: f64,
    pub sonar_surface_present: bool,
}

/// What the sensors can observe at one step.
#[derive(Debug, Clone, Copy)]
pub struct SensorContext<'a> {
    pub distance_left: f64,
    pub distance_right: f64,
    pub block_pitch: f64,
    pub inclination: f64,
    /// Path position of the robot front.
    pub position: f64,
    /// Path positions where the surface ends (gaps, or the far edge).
    pub edges: &'a [f64],
}

pub fn hall_ticks(distance: f64, block_pitch: f64) -> u64 {
    // guards 0.014/0.014-style quotients that land a hair under an integer
    ((distance / block_pitch) * (1.0 + 1e-12)).floor().max(0.0) as u64
}

/// Whether a surface edge lies within `lookahead` ahead of `position`.
pub fn edge_ahead(position: f64, edges: &[f64], lookahead: f64) -> bool {
    edges.iter().any(|&e| e - position >= 0.0 && e - position < lookahead)
}

pub fn sensors_emulate(ctx: &SensorContext<'_>, params: &SensorParams, noise: &mut NoiseSource) -> SensorRecord {
    SensorRecord {
        hall_ticks_left: hall_ticks(ctx.distance_left, ctx.block_pitch),
        hall_ticks_right: hall_ticks(ctx.distance_right, ctx.block_pitch),
        imu_inclination: ctx.inclination + noise.gaussian(params.imu_sigma),
        sonar_surface_present: !edge_ahead(ctx.position, ctx.edges, params.cliff_lookahead),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_pitch_one_tick() {
        assert_eq!(hall_ticks(0.014, 0.014), 1);
        assert_eq!(hall_ticks(0.0139, 0.014), 0);
        assert_eq!(hall_ticks(0.042, 0.014), 3);
    }

    #[test]
    fn noiseless_imu_reads_inclination() {
        let mut n = NoiseSource::new(ChaCha8Rng::seed_from_u64(3));
        let params = SensorParams { imu_sigma: 0.0, ..SensorParams::default() };
        let ctx = SensorContext {
            distance_left: 0.0,
            distance_right: 0.0,
            block_pitch: 0.014,
            inclination: 1.2,
            position: 0.0,
            edges: &[],
        };
        assert_eq!(sensors_emulate(&ctx, &params, &mut n).imu_inclination, 1.2);
    }

    #[test]
    fn sonar_sees_edge_within_lookahead() {
        assert!(edge_ahead(0.96, &[1.0], 0.05));
        assert!(!edge_ahead(0.94, &[1.0], 0.05));
        assert!(!edge_ahead(1.01, &[1.0], 0.05));
    }
}
