use serde::Serialize;

/// Maximum chain speed, m/s.
pub const CHAIN_SPEED_MAX: f64 = 0.35;

/// First-order lag model of one motorised roller-chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainPlant {
    pub time_constant: f64,
    pub speed_max: f64,
    /// Standard deviation of the additive per-step speed disturbance, m/s.
    pub noise_sigma: f64,
}

impl Default for ChainPlant {
    fn default() -> Self {
        Self { time_constant: 0.3, speed_max: CHAIN_SPEED_MAX, noise_sigma: 0.0 }
    }
}

impl ChainPlant {
    pub fn noiseless(self) -> Self {
        Self { noise_sigma: 0.0, ..self }
    }
}

/// Advances the chain speed one step toward `command`, adding `noise` and
/// saturating to `[0, speed_max]`.
pub fn chain_plant_step(v: f64, command: f64, plant: &ChainPlant, dt: f64, noise: f64) -> f64 {
    let blend = 1.0 - (-dt / plant.time_constant).exp();
    (v + (command - v) * blend + noise).clamp(0.0, plant.speed_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point() {
        let p = ChainPlant::default();
        assert_eq!(chain_plant_step(0.2, 0.2, &p, 0.1, 0.0), 0.2);
    }

    #[test]
    fn saturates_at_max_speed() {
        let p = ChainPlant::default();
        let mut v = 0.0;
        for _ in 0..200 {
            v = chain_plant_step(v, 1.0, &p, 0.1, 0.01);
            assert!(v <= 0.35);
        }
        assert_eq!(v, 0.35);
    }

    #[test]
    fn long_step_reaches_command() {
        let p = ChainPlant::default();
        let v = chain_plant_step(0.0, 0.25, &p, 100.0, 0.0);
        assert!((v - 0.25).abs() < 1e-12);
        assert_eq!(chain_plant_step(0.0, 1.0, &p, 100.0, 0.0), 0.35);
    }
}
