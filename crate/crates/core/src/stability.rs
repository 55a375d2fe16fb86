//! Static failure criteria and motor sizing.
//!
//! Each criterion compares a requirement against what the design provides
//! and reports the signed margin `available / required − 1`. All values are
//! SI; presentation in kgf and kg·cm happens in [`crate::report`].

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::adhesion::{adhesion_from_block, block_force, AdhesionResult};
use crate::model::{weight, Constants, MotorSpec, RobotSpec, Side, SurfaceSpec};
use crate::{Error, Result};

/// Lower end of the chain-on-steel friction range.
pub const MU_MIN_DEFAULT: f64 = 0.4;
/// Upper end of the chain-on-steel friction range.
pub const MU_MAX_DEFAULT: f64 = 0.8;
/// Friction constant of the release mechanism, chosen so the reference
/// transformation-motor requirement is reproduced.
pub const RELEASE_FRICTION_DEFAULT: f64 = 0.78;
pub const TRANSFORM_EFFICIENCY_DEFAULT: f64 = 0.8;

/// Adhesion needed to avoid sliding on a surface of inclination `phi`.
///
/// On top of the surface gravity partly presses the robot on, so the
/// requirement can fall to zero; underneath it pulls the robot off.
pub fn sliding_required(weight: f64, phi: f64, mu: f64, side: Side) -> Result<f64> {
    if !(phi > 0.0 && phi <= FRAC_PI_2) {
        return Err(Error::Domain {
            stage: "sliding_required",
            message: format!("inclination {phi} rad is outside (0, pi/2]"),
        });
    }
    if !(mu > 0.0) {
        return Err(Error::Domain {
            stage: "sliding_required",
            message: format!("friction coefficient {mu} must be positive"),
        });
    }
    let along = weight * phi.sin() / mu;
    let normal = weight * phi.cos();
    Ok(match side {
        Side::Top => (along - normal).max(0.0),
        Side::Underneath => along + normal,
    })
}

/// Worst-case sliding requirements over all inclinations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlidingBounds {
    /// Largest endpoint value of the underneath requirement, at φ → 0 or
    /// φ = π/2: `P·max(1, 1/μ)`.
    pub endpoint_bound: f64,
    /// True maximum over φ: `P·sqrt(1 + 1/μ²)`.
    pub analytic_bound: f64,
    /// Inclination of the true maximum, `atan(1/μ)`.
    pub argmax_phi: f64,
}

pub fn sliding_worst_case(weight: f64, mu_min: f64) -> SlidingBounds {
    let inv = 1.0 / mu_min;
    SlidingBounds {
        endpoint_bound: weight * inv.max(1.0),
        analytic_bound: weight * (1.0 + inv * inv).sqrt(),
        argmax_phi: inv.atan(),
    }
}

/// Which worst-case sliding bound feeds the per-block requirement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum SlidingBoundMode {
    #[default]
    Analytic,
    Endpoint,
}

impl SlidingBounds {
    pub fn select(&self, mode: SlidingBoundMode) -> f64 {
        match mode {
            SlidingBoundMode::Analytic => self.analytic_bound,
            SlidingBoundMode::Endpoint => self.endpoint_bound,
        }
    }
}

/// Force the first contacting block must hold so the robot does not peel
/// off about its leading contact: moment balance `P·h = 2·F·l`.
pub fn turnover_required_per_block(weight: f64, height: f64, span: f64) -> f64 {
    weight * height / (2.0 * span)
}

/// Per-block force covering both the worst-case sliding share and the
/// turn-over requirement at the full robot height.
pub fn per_block_required(spec: &RobotSpec, c: &Constants, mu_min: f64, mode: SlidingBoundMode) -> f64 {
    let p = weight(spec, c);
    let n = spec.contacting_blocks().max(1) as f64;
    let sliding_share = sliding_worst_case(p, mu_min).select(mode) / n;
    sliding_share.max(turnover_required_per_block(p, spec.total_height, spec.contact_span))
}

/// Torque the drive must supply, N·m: the gravity moment about the
/// fulcrum plus releasing the trailing block.
pub fn drive_torque_required(spec: &RobotSpec, surface: &SurfaceSpec, c: &Constants) -> f64 {
    let p = weight(spec, c);
    spec.total_height * p * surface.inclination.sin() / 2.0 + block_force(&spec.magnet, surface) * spec.moment_arm
}

/// Combined output torque of a motor group, N·m.
pub fn motor_torque_available(motor: &MotorSpec) -> f64 {
    motor.stall_torque * motor.gear_ratio * motor.count as f64
}

pub fn drive_torque_available(drive: &MotorSpec) -> f64 {
    motor_torque_available(drive)
}

/// Torque at the transformation motor shaft needed to release the magnets
/// when friction is strongest: `e·k·(P + n·F)` reduced through the
/// transformation gearing at the given efficiency.
pub fn transform_torque_required(spec: &RobotSpec, c: &Constants, k: f64, efficiency: f64) -> Result<f64> {
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(Error::Domain {
            stage: "transform_torque_required",
            message: format!("efficiency {efficiency} is outside (0, 1]"),
        });
    }
    if !(k >= 0.0) {
        return Err(Error::Domain {
            stage: "transform_torque_required",
            message: format!("friction constant {k} is negative"),
        });
    }
    let p = weight(spec, c);
    let n = spec.contacting_blocks() as f64;
    let load = spec.linkage.e * k * (p + n * spec.magnet.block_force_nominal);
    Ok(load / spec.linkage.total_transform_ratio / efficiency)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Criterion {
    Sliding,
    Turnover,
    PerBlock,
    DriveTorque,
    TransformTorque,
}

impl Criterion {
    pub const ALL: [Criterion; 5] = [
        Criterion::Sliding,
        Criterion::Turnover,
        Criterion::PerBlock,
        Criterion::DriveTorque,
        Criterion::TransformTorque,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Sliding => "sliding",
            Criterion::Turnover => "turn-over",
            Criterion::PerBlock => "per-block",
            Criterion::DriveTorque => "drive torque",
            Criterion::TransformTorque => "transform torque",
        }
    }

    pub fn is_torque(self) -> bool {
        matches!(self, Criterion::DriveTorque | Criterion::TransformTorque)
    }
}

/// `available / required − 1`; infinite when nothing is required.
pub fn margin(required: f64, available: f64) -> f64 {
    if required > 0.0 {
        available / required - 1.0
    } else if available > required {
        f64::INFINITY
    } else {
        0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriterionResult {
    pub criterion: Criterion,
    pub required: f64,
    pub available: f64,
    pub margin: f64,
    pub pass: bool,
}

impl CriterionResult {
    fn new(criterion: Criterion, required: f64, available: f64) -> Self {
        let m = margin(required, available);
        Self { criterion, required, available, margin: m, pass: m > 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AssessOptions {
    /// Friction floor for the worst-case per-block requirement.
    pub mu_min: f64,
    pub sliding_bound: SlidingBoundMode,
    pub release_friction: f64,
    pub transform_efficiency: f64,
}

impl Default for AssessOptions {
    fn default() -> Self {
        Self {
            mu_min: MU_MIN_DEFAULT,
            sliding_bound: SlidingBoundMode::Analytic,
            release_friction: RELEASE_FRICTION_DEFAULT,
            transform_efficiency: TRANSFORM_EFFICIENCY_DEFAULT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityReport {
    pub weight: f64,
    pub sliding_required: f64,
    pub sliding_bounds: SlidingBounds,
    pub turnover_required_per_block: f64,
    pub per_block_required: f64,
    pub adhesion_available: AdhesionResult,
    pub drive_torque_required: f64,
    pub drive_torque_available: f64,
    pub transform_torque_required: f64,
    pub transform_torque_available: f64,
    /// One entry per [`Criterion`], in [`Criterion::ALL`] order.
    pub criteria: Vec<CriterionResult>,
}

impl StabilityReport {
    pub fn get(&self, c: Criterion) -> &CriterionResult {
        self.criteria.iter().find(|r| r.criterion == c).expect("every criterion is evaluated")
    }

    pub fn passes(&self, c: Criterion) -> bool {
        self.get(c).pass
    }

    pub fn all_pass(&self) -> bool {
        self.criteria.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = Criterion> + '_ {
        self.criteria.iter().filter(|r| !r.pass).map(|r| r.criterion)
    }
}

/// Evaluates every criterion for `spec` on `surface`.
pub fn assess(spec: &RobotSpec, surface: &SurfaceSpec, c: &Constants, opts: &AssessOptions) -> Result<StabilityReport> {
    let p = weight(spec, c);
    let sliding = sliding_required(p, surface.inclination, surface.mu, surface.side)?;
    let adhesion = adhesion_from_block(block_force(&spec.magnet, surface), spec.contacting_blocks());
    let turnover = turnover_required_per_block(p, spec.com_height, spec.contact_span);
    let per_block = per_block_required(spec, c, opts.mu_min, opts.sliding_bound);
    let drive_req = drive_torque_required(spec, surface, c);
    let drive_avail = drive_torque_available(&spec.drive);
    let transform_req = transform_torque_required(spec, c, opts.release_friction, opts.transform_efficiency)?;
    let transform_avail = motor_torque_available(&spec.transform);

    let criteria = vec![
        CriterionResult::new(Criterion::Sliding, sliding, adhesion.total),
        CriterionResult::new(Criterion::Turnover, turnover, adhesion.per_block),
        CriterionResult::new(Criterion::PerBlock, per_block, adhesion.per_block),
        CriterionResult::new(Criterion::DriveTorque, drive_req, drive_avail),
        CriterionResult::new(Criterion::TransformTorque, transform_req, transform_avail),
    ];
    Ok(StabilityReport {
        weight: p,
        sliding_required: sliding,
        sliding_bounds: sliding_worst_case(p, opts.mu_min),
        turnover_required_per_block: turnover,
        per_block_required: per_block,
        adhesion_available: adhesion,
        drive_torque_required: drive_req,
        drive_torque_available: drive_avail,
        transform_torque_required: transform_req,
        transform_torque_available: transform_avail,
        criteria,
    })
}
