use serde::Serialize;

/// Gains and limits of a positional discrete PID.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PidGains {
    pub kp: f64,
    pub ki: f64,
    pub kd: f64,
    pub output_min: f64,
    pub output_max: f64,
    /// Bound on the accumulated integral of the error (anti-windup).
    pub integral_limit: f64,
}

impl Default for PidGains {
    /// Chain speed loop, tuned on the default first-order chain plant
    /// (τ = 0.3 s, dt = 0.1 s) for < 2 % error within 4 s of a step.
    fn default() -> Self {
        Self { kp: 1.0, ki: 4.0, kd: 0.0, output_min: 0.0, output_max: 0.35, integral_limit: 0.5 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PidState {
    pub integral: f64,
    pub prev_measurement: Option<f64>,
}

/// One controller update. The derivative acts on the measurement so a
/// setpoint step does not kick the output.
pub fn pid_step(state: PidState, gains: &PidGains, setpoint: f64, measurement: f64, dt: f64) -> (PidState, f64) {
    debug_assert!(dt > 0.0);
    let error = setpoint - measurement;
    let integral = (state.integral + error * dt).clamp(-gains.integral_limit, gains.integral_limit);
    let derivative = state.prev_measurement.map_or(0.0, |prev| (measurement - prev) / dt);
    let raw = gains.kp * error + gains.ki * integral - gains.kd * derivative;
    let output = raw.clamp(gains.output_min, gains.output_max);
    (PidState { integral, prev_measurement: Some(measurement) }, output)
}
