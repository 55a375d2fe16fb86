//! Domain value types shared by every analysis: robot, magnets, linkage,
//! motors, surfaces, and physical constants.
//!
//! All values are SI. Types are plain immutable data; validation reports
//! violations as data instead of failing.

use std::fmt;

use serde::Serialize;

use crate::units::{deg, kg_cm_to_newton_metre, STANDARD_GRAVITY};

/// Physical constants used by an analysis run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    /// Gravitational acceleration, m/s².
    pub g: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self { g: STANDARD_GRAVITY }
    }
}

impl Constants {
    pub fn with_g(g: f64) -> Self {
        Self { g }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    Top,
    Underneath,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Top => "top",
            Side::Underneath => "underneath",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Surface curvature. Positive radius: convex, robot on the outside.
/// Negative radius: concave, robot on the inside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Curvature {
    Flat,
    Radius(f64),
}

impl Curvature {
    /// Signed radius, or infinity for a flat surface.
    pub fn radius(self) -> f64 {
        match self {
            Curvature::Flat => f64::INFINITY,
            Curvature::Radius(r) => r,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveSign {
    Convex,
    Concave,
}

/// Surface condition as it affects per-block adhesion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SurfaceCondition {
    NonCoatedFlat,
    CoatedFlat,
    CoatedCurved { diameter: f64, sign: CurveSign },
}

/// A steel surface the robot climbs on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceSpec {
    /// Inclination φ, rad, in (0, π/2].
    pub inclination: f64,
    pub side: Side,
    pub curvature: Curvature,
    /// Friction coefficient between chains and steel.
    pub mu: f64,
    pub coated: bool,
}

impl SurfaceSpec {
    /// Vertical, flat, non-coated steel at the low end of the friction range.
    pub fn vertical_flat(mu: f64) -> Self {
        Self {
            inclination: std::f64::consts::FRAC_PI_2,
            side: Side::Top,
            curvature: Curvature::Flat,
            mu,
            coated: false,
        }
    }

    /// Adhesion condition implied by coating and curvature. Curved surfaces
    /// always use the coated-curve table: it is the only curved data there is.
    pub fn condition(&self) -> SurfaceCondition {
        match self.curvature {
            Curvature::Flat if self.coated => SurfaceCondition::CoatedFlat,
            Curvature::Flat => SurfaceCondition::NonCoatedFlat,
            Curvature::Radius(r) => SurfaceCondition::CoatedCurved {
                diameter: 2.0 * r.abs(),
                sign: if r >= 0.0 { CurveSign::Convex } else { CurveSign::Concave },
            },
        }
    }

    pub fn validate(&self) -> Validation {
        let mut v = Validation::default();
        v.check(
            self.inclination > 0.0 && self.inclination <= std::f64::consts::FRAC_PI_2,
            "surface.inclination",
            "0 < inclination <= pi/2",
        );
        v.check(self.mu > 0.0 && self.mu.is_finite(), "surface.mu", "mu > 0");
        if let Curvature::Radius(r) = self.curvature {
            v.check(r != 0.0 && r.is_finite(), "surface.curvature_radius", "radius != 0");
        }
        v
    }
}

/// One (diameter, factor) point of the curved-surface adhesion table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FactorPoint {
    pub diameter: f64,
    pub factor: f64,
}

/// Dimensionless scale applied to the nominal block force per condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionFactors {
    pub non_coated_flat: f64,
    pub coated_flat: f64,
    /// Sorted by diameter.
    pub curved_convex: Vec<FactorPoint>,
    /// Sorted by diameter.
    pub curved_concave: Vec<FactorPoint>,
}

/// Smallest curved-surface diameter in the pull-test campaign, m.
pub const SMALLEST_TESTED_DIAMETER: f64 = 0.100;
/// Largest curved-surface diameter in the pull-test campaign, m.
pub const LARGEST_TESTED_DIAMETER: f64 = 0.900;
/// Lowest total adhesion measured across all pull tests, N.
pub const MEASURED_ADHESION_FLOOR: f64 = 210.0;

impl Default for ConditionFactors {
    /// Calibrated so the smallest tested diameter yields exactly the measured
    /// 210 N floor on the default robot (16 blocks × 39.7 N nominal).
    fn default() -> Self {
        let floor = MEASURED_ADHESION_FLOOR / (2.0 * 8.0 * 39.7);
        let curve = vec![
            FactorPoint { diameter: SMALLEST_TESTED_DIAMETER, factor: floor },
            FactorPoint { diameter: LARGEST_TESTED_DIAMETER, factor: 0.9 },
        ];
        Self { non_coated_flat: 1.0, coated_flat: 0.9, curved_convex: curve.clone(), curved_concave: curve }
    }
}

impl ConditionFactors {
    /// Factor for `condition`; curved tables are interpolated linearly in
    /// diameter and clamped to their endpoints.
    pub fn factor(&self, condition: SurfaceCondition) -> f64 {
        match condition {
            SurfaceCondition::NonCoatedFlat => self.non_coated_flat,
            SurfaceCondition::CoatedFlat => self.coated_flat,
            SurfaceCondition::CoatedCurved { diameter, sign } => {
                let table = match sign {
                    CurveSign::Convex => &self.curved_convex,
                    CurveSign::Concave => &self.curved_concave,
                };
                interpolate(table, diameter)
            }
        }
    }

    fn validate_into(&self, v: &mut Validation) {
        let in_unit = |x: f64| x > 0.0 && x <= 1.0;
        v.check(in_unit(self.non_coated_flat), "magnet.condition_factors.non_coated_flat", "0 < factor <= 1");
        v.check(in_unit(self.coated_flat), "magnet.condition_factors.coated_flat", "0 < factor <= 1");
        for (name, table) in [("curved_convex", &self.curved_convex), ("curved_concave", &self.curved_concave)] {
            let field = format!("magnet.condition_factors.{name}");
            v.check(!table.is_empty(), &field, "table non-empty");
            for (i, p) in table.iter().enumerate() {
                v.check(in_unit(p.factor), &format!("{field}[{i}].factor"), "0 < factor <= 1");
                v.check(p.diameter > 0.0, &format!("{field}[{i}].diameter"), "diameter > 0");
            }
            v.check(table.windows(2).all(|w| w[0].diameter < w[1].diameter), &field, "diameters strictly increasing");
        }
    }
}

fn interpolate(table: &[FactorPoint], diameter: f64) -> f64 {
    let (first, last) = match (table.first(), table.last()) {
        (Some(f), Some(l)) => (f, l),
        _ => return 1.0,
    };
    if diameter <= first.diameter {
        return first.factor;
    }
    if diameter >= last.diameter {
        return last.factor;
    }
    let i = table.partition_point(|p| p.diameter <= diameter);
    let (lo, hi) = (&table[i - 1], &table[i]);
    let t = (diameter - lo.diameter) / (hi.diameter - lo.diameter);
    lo.factor + t * (hi.factor - lo.factor)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MagnetSpec {
    /// Data-sheet pull force of one block on flat non-coated steel, N.
    pub block_force_nominal: f64,
    pub condition_factors: ConditionFactors,
}

/// Dimensions of the crank-slider and feed-screw transformation mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkageParams {
    pub a: f64,
    pub b: f64,
    pub b1: f64,
    pub e: f64,
    pub f: f64,
    /// Connecting rod length XY.
    pub crank_len: f64,
    /// Crank offset angle γ, rad.
    pub gamma: f64,
    /// Screw lead, m per screw revolution.
    pub screw_pitch: f64,
    /// Motor revolutions per screw revolution.
    pub screw_gear_ratio: f64,
    /// Slider displacement per unit of screw travel.
    pub slider_per_travel: f64,
    /// Overall motor-to-release-arm reduction.
    pub total_transform_ratio: f64,
    /// Maximum feed-screw travel, m.
    pub feed_travel_max: f64,
    /// Contact radii beyond this magnitude are reported as flat, m.
    pub flat_threshold: f64,
}

impl Default for LinkageParams {
    fn default() -> Self {
        Self {
            a: 0.0337,
            b: 0.072,
            b1: 0.045,
            e: 0.055,
            f: 0.011,
            crank_len: 0.032,
            gamma: deg(12.0),
            screw_pitch: 0.0008,
            screw_gear_ratio: 19.0,
            slider_per_travel: 1.0,
            total_transform_ratio: 26.5,
            feed_travel_max: 0.075,
            flat_threshold: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MotorSpec {
    /// Stall torque at the motor output shaft, N·m.
    pub stall_torque: f64,
    /// Output-side reduction multiplying the stall torque.
    pub gear_ratio: f64,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobotSpec {
    pub mass: f64,
    pub body_length: f64,
    pub body_width: f64,
    pub body_height: f64,
    /// Center of mass to surface, h.
    pub com_height: f64,
    /// Total height h_r used in the combined per-block and drive criteria.
    pub total_height: f64,
    /// First-to-last contacting magnet distance, l.
    pub contact_span: f64,
    pub contact_blocks_per_chain: u32,
    pub blocks_per_chain: u32,
    pub block_pitch: f64,
    pub chain_count: u32,
    pub magnet: MagnetSpec,
    pub linkage: LinkageParams,
    pub drive: MotorSpec,
    pub transform: MotorSpec,
    /// Arm from a releasing magnet block to the rotation fulcrum, i.
    pub moment_arm: f64,
    pub track_width: f64,
}

impl Default for RobotSpec {
    fn default() -> Self {
        reference_design()
    }
}

/// The reference robot design.
pub fn reference_design() -> RobotSpec {
    RobotSpec {
        mass: 3.0,
        body_length: 0.163,
        body_width: 0.145,
        body_height: 0.198,
        com_height: 0.046,
        total_height: 0.19751,
        contact_span: 0.098,
        contact_blocks_per_chain: 8,
        blocks_per_chain: 22,
        // contact span over 8 blocks = 7 gaps
        block_pitch: 0.014,
        chain_count: 2,
        magnet: MagnetSpec { block_force_nominal: 39.7, condition_factors: ConditionFactors::default() },
        linkage: LinkageParams::default(),
        drive: MotorSpec {
            stall_torque: kg_cm_to_newton_metre(12.0, STANDARD_GRAVITY),
            gear_ratio: 20.0 / 11.0,
            count: 2,
        },
        transform: MotorSpec { stall_torque: kg_cm_to_newton_metre(32.0, STANDARD_GRAVITY), gear_ratio: 1.0, count: 1 },
        moment_arm: 0.005,
        track_width: 0.125,
    }
}

impl RobotSpec {
    /// Total number of blocks in contact with the surface.
    pub fn contacting_blocks(&self) -> u32 {
        self.contact_blocks_per_chain * self.chain_count
    }
}

/// P = m·g.
pub fn weight(spec: &RobotSpec, c: &Constants) -> f64 {
    spec.mass * c.g
}

/// One violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub field: String,
    pub rule: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: violates {}", self.field, self.rule)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_rule(&self, rule: &str) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn check(&mut self, ok: bool, field: &str, rule: &str) {
        if !ok {
            self.violations.push(Violation { field: field.to_owned(), rule: rule.to_owned() });
        }
    }

    pub fn merge(mut self, other: Validation) -> Self {
        self.violations.extend(other.violations);
        self
    }

    pub fn into_result(self) -> Result<(), crate::Error> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(crate::Error::InvalidSpec(self.violations))
        }
    }
}

fn positive(x: f64) -> bool {
    x > 0.0 && x.is_finite()
}

/// Checks every invariant of `spec`, reporting each violation with its field path.
pub fn validate_spec(spec: &RobotSpec) -> Validation {
    let mut v = Validation::default();
    v.check(positive(spec.mass), "mass", "mass > 0");
    for (name, value) in [
        ("body_length", spec.body_length),
        ("body_width", spec.body_width),
        ("body_height", spec.body_height),
        ("com_height", spec.com_height),
        ("total_height", spec.total_height),
        ("contact_span", spec.contact_span),
        ("block_pitch", spec.block_pitch),
        ("moment_arm", spec.moment_arm),
        ("track_width", spec.track_width),
    ] {
        v.check(positive(value), name, &format!("{name} > 0"));
    }
    v.check(spec.com_height < spec.total_height, "com_height", "h < h_r");
    v.check(
        spec.contact_blocks_per_chain <= spec.blocks_per_chain,
        "contact_blocks_per_chain",
        "contact_blocks_per_chain <= blocks_per_chain",
    );
    v.check(spec.chain_count >= 1, "chain_count", "chain_count >= 1");
    v.check(positive(spec.magnet.block_force_nominal), "magnet.block_force_nominal", "block_force_nominal > 0");
    spec.magnet.condition_factors.validate_into(&mut v);

    let l = &spec.linkage;
    for (name, value) in [
        ("a", l.a),
        ("b", l.b),
        ("b1", l.b1),
        ("e", l.e),
        ("f", l.f),
        ("crank_len", l.crank_len),
        ("screw_pitch", l.screw_pitch),
        ("screw_gear_ratio", l.screw_gear_ratio),
        ("slider_per_travel", l.slider_per_travel),
        ("total_transform_ratio", l.total_transform_ratio),
        ("feed_travel_max", l.feed_travel_max),
        ("flat_threshold", l.flat_threshold),
    ] {
        v.check(positive(value), &format!("linkage.{name}"), &format!("{name} > 0"));
    }
    v.check(l.gamma >= 0.0 && l.gamma < std::f64::consts::FRAC_PI_2, "linkage.gamma", "0 <= gamma < pi/2");
    v.check(l.b1 - l.a < l.crank_len, "linkage.b1", "b1 - a < XY");

    for (name, m) in [("drive", &spec.drive), ("transform", &spec.transform)] {
        v.check(positive(m.stall_torque), &format!("{name}.stall_torque"), "stall_torque > 0");
        v.check(positive(m.gear_ratio), &format!("{name}.gear_ratio"), "gear_ratio > 0");
        v.check(m.count >= 1, &format!("{name}.count"), "count >= 1");
    }
    v
}
