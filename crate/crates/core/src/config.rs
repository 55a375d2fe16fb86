//! TOML configuration files.
//!
//! A document carries a required `schema_version` and any of the sections
//! `[constants]`, `[robot]`, `[surface]`, `[analysis]`, `[control]` and
//! `[mission]`. Robot fields override the reference design one by one.
//! Physical quantities are either bare numbers in SI or strings with a unit
//! suffix (`"72 mm"`, `"12 deg"`, `"12 kg.cm"`, `"20 cm/s"`).
//!
//! ```toml
//! schema_version = 1
//!
//! [robot.magnet]
//! block_force_nominal = "39.7 N"
//!
//! [surface]
//! inclination = "90 deg"
//! side = "top"
//! curvature_radius = "flat"
//! mu = 0.4
//! ```

use std::path::Path;

use serde::Deserialize;
use toml::Spanned;

use crate::control_sim::{MissionScript, Segment, SimOptions};
use crate::mechanism::RadiusVariant;
use crate::model::{validate_spec, Constants, Curvature, FactorPoint, RobotSpec, Side, SurfaceSpec};
use crate::stability::{AssessOptions, SlidingBoundMode, MU_MAX_DEFAULT};
use crate::units::{parse_quantity, Dimension};
use crate::{Error, Result};

pub const SCHEMA_VERSION: i64 = 1;

/// Everything a configuration document can describe, with defaults filled in.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Document {
    pub constants: Constants,
    pub robot: RobotSpec,
    pub surface: Option<SurfaceSpec>,
    pub analysis: AnalysisConfig,
    pub mission: Option<MissionScript>,
    pub sim: SimOptions,
}

/// Sweep ranges and criterion options.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisConfig {
    pub assess: AssessOptions,
    pub mu_max: f64,
    pub phi_min: f64,
    pub phi_max: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            assess: AssessOptions::default(),
            mu_max: MU_MAX_DEFAULT,
            phi_min: 0.0,
            phi_max: std::f64::consts::FRAC_PI_2,
        }
    }
}

type Q = Option<Spanned<RawQuantity>>;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawQuantity {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDoc {
    schema_version: Option<Spanned<i64>>,
    constants: Option<RawConstants>,
    robot: Option<RawRobot>,
    surface: Option<RawSurface>,
    analysis: Option<RawAnalysis>,
    control: Option<RawControl>,
    mission: Option<RawMission>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstants {
    g: Q,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRobot {
    mass: Q,
    body_length: Q,
    body_width: Q,
    body_height: Q,
    com_height: Q,
    total_height: Q,
    contact_span: Q,
    contact_blocks_per_chain: Option<Spanned<i64>>,
    blocks_per_chain: Option<Spanned<i64>>,
    block_pitch: Q,
    chain_count: Option<Spanned<i64>>,
    moment_arm: Q,
    track_width: Q,
    magnet: Option<RawMagnet>,
    linkage: Option<RawLinkage>,
    drive: Option<RawMotor>,
    transform: Option<RawMotor>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMagnet {
    block_force_nominal: Q,
    condition_factors: Option<RawFactors>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactors {
    non_coated_flat: Q,
    coated_flat: Q,
    curved_convex: Option<Vec<RawFactorPoint>>,
    curved_concave: Option<Vec<RawFactorPoint>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactorPoint {
    diameter: Q,
    factor: Q,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLinkage {
    a: Q,
    b: Q,
    b1: Q,
    e: Q,
    f: Q,
    crank_len: Q,
    gamma: Q,
    screw_pitch: Q,
    screw_gear_ratio: Q,
    slider_per_travel: Q,
    total_transform_ratio: Q,
    feed_travel_max: Q,
    flat_threshold: Q,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMotor {
    stall_torque: Q,
    gear_ratio: Q,
    count: Option<Spanned<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSurface {
    inclination: Q,
    side: Option<Spanned<String>>,
    curvature_radius: Q,
    mu: Q,
    coated: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAnalysis {
    mu_min: Q,
    mu_max: Q,
    phi_min: Q,
    phi_max: Q,
    sliding_bound: Option<Spanned<String>>,
    release_friction: Q,
    transform_efficiency: Q,
    radius_variant: Option<Spanned<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawControl {
    kp: Q,
    ki: Q,
    kd: Q,
    output_min: Q,
    output_max: Q,
    integral_limit: Q,
    cross_coupling: Q,
    time_constant: Q,
    time_constant_left: Q,
    time_constant_right: Q,
    speed_max: Q,
    plant_noise: Q,
    imu_noise: Q,
    cliff_lookahead: Q,
    transform_rate: Q,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMission {
    dt: Q,
    stop_interval: Q,
    stop_dwell: Q,
    gaps: Option<Vec<Spanned<RawQuantity>>>,
    edge_at_end: Option<bool>,
    stop_on_cliff: Option<bool>,
    max_duration: Q,
    segments: Option<Vec<RawSegment>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSegment {
    length: Q,
    speed_ref: Q,
    surface: Option<RawSurface>,
}

/// Converts raw values, reporting failures with file, line and field path.
struct Ctx<'a> {
    origin: &'a str,
    src: &'a str,
}

impl Ctx<'_> {
    fn line(&self, offset: usize) -> usize {
        self.src[..offset.min(self.src.len())].matches('\n').count() + 1
    }

    fn err(&self, span: Option<std::ops::Range<usize>>, field: &str, message: impl std::fmt::Display) -> Error {
        let loc = span.map(|s| format!("line {}: ", self.line(s.start))).unwrap_or_default();
        Error::Config { path: self.origin.to_owned(), message: format!("{loc}{field}: {message}") }
    }

    fn quantity(&self, raw: &Spanned<RawQuantity>, field: &str, dim: Dimension) -> Result<f64> {
        let value = match raw.get_ref() {
            RawQuantity::Int(i) => Ok(*i as f64),
            RawQuantity::Float(f) => Ok(*f),
            RawQuantity::Text(t) => parse_quantity(t, dim),
        };
        value.map_err(|m| self.err(Some(raw.span()), field, m))
    }

    fn q(&self, raw: &Q, field: &str, dim: Dimension, target: &mut f64) -> Result<()> {
        if let Some(r) = raw {
            *target = self.quantity(r, field, dim)?;
        }
        Ok(())
    }

    fn count(&self, raw: &Option<Spanned<i64>>, field: &str, target: &mut u32) -> Result<()> {
        if let Some(r) = raw {
            *target = u32::try_from(*r.get_ref())
                .map_err(|_| self.err(Some(r.span()), field, "expected a non-negative integer"))?;
        }
        Ok(())
    }

    fn choice<T>(
        &self,
        raw: &Option<Spanned<String>>,
        field: &str,
        target: &mut T,
        parse: impl Fn(&str) -> Option<T>,
        expected: &str,
    ) -> Result<()> {
        if let Some(r) = raw {
            *target = parse(r.get_ref())
                .ok_or_else(|| self.err(Some(r.span()), field, format!("expected one of {expected}")))?;
        }
        Ok(())
    }
}

/// Parses a configuration document. `origin` names the source in errors.
pub fn parse_document(src: &str, origin: &str) -> Result<Document> {
    let ctx = Ctx { origin, src };
    let raw: RawDoc = toml::from_str(src).map_err(|e| {
        let loc = e.span().map(|s| format!("line {}: ", ctx.line(s.start))).unwrap_or_default();
        Error::Config { path: origin.to_owned(), message: format!("{loc}{}", e.message()) }
    })?;

    match &raw.schema_version {
        None => return Err(ctx.err(None, "schema_version", "missing (required)")),
        Some(v) if *v.get_ref() != SCHEMA_VERSION => {
            return Err(ctx.err(
                Some(v.span()),
                "schema_version",
                format!("unsupported version {} (expected {SCHEMA_VERSION})", v.get_ref()),
            ))
        }
        Some(_) => {}
    }

    let mut doc = Document::default();
    if let Some(c) = &raw.constants {
        ctx.q(&c.g, "constants.g", Dimension::Dimensionless, &mut doc.constants.g)?;
        if !(doc.constants.g > 0.0) {
            return Err(ctx.err(c.g.as_ref().map(|s| s.span()), "constants.g", "g must be positive"));
        }
    }
    if let Some(r) = &raw.robot {
        robot(&ctx, r, &mut doc.robot)?;
    }
    let violations = validate_spec(&doc.robot).violations;
    if !violations.is_empty() {
        let list = violations.iter().map(|v| format!("robot.{v}")).collect::<Vec<_>>().join("; ");
        return Err(ctx.err(None, "robot", list));
    }
    if let Some(s) = &raw.surface {
        doc.surface = Some(surface(&ctx, s, "surface")?);
    }
    if let Some(a) = &raw.analysis {
        analysis(&ctx, a, &mut doc.analysis, &mut doc.sim.radius_variant)?;
    }
    doc.sim.assess = doc.analysis.assess;
    if let Some(c) = &raw.control {
        control(&ctx, c, &mut doc.sim)?;
    }
    if let Some(m) = &raw.mission {
        doc.mission = Some(mission(&ctx, m)?);
    }
    Ok(doc)
}

pub fn load_document(path: &Path) -> Result<Document> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::Config { path: path.display().to_string(), message: e.to_string() })?;
    parse_document(&src, &path.display().to_string())
}

fn robot(ctx: &Ctx<'_>, r: &RawRobot, spec: &mut RobotSpec) -> Result<()> {
    use Dimension::*;
    ctx.q(&r.mass, "robot.mass", Mass, &mut spec.mass)?;
    ctx.q(&r.body_length, "robot.body_length", Length, &mut spec.body_length)?;
    ctx.q(&r.body_width, "robot.body_width", Length, &mut spec.body_width)?;
    ctx.q(&r.body_height, "robot.body_height", Length, &mut spec.body_height)?;
    ctx.q(&r.com_height, "robot.com_height", Length, &mut spec.com_height)?;
    ctx.q(&r.total_height, "robot.total_height", Length, &mut spec.total_height)?;
    ctx.q(&r.contact_span, "robot.contact_span", Length, &mut spec.contact_span)?;
    ctx.count(&r.contact_blocks_per_chain, "robot.contact_blocks_per_chain", &mut spec.contact_blocks_per_chain)?;
    ctx.count(&r.blocks_per_chain, "robot.blocks_per_chain", &mut spec.blocks_per_chain)?;
    ctx.q(&r.block_pitch, "robot.block_pitch", Length, &mut spec.block_pitch)?;
    ctx.count(&r.chain_count, "robot.chain_count", &mut spec.chain_count)?;
    ctx.q(&r.moment_arm, "robot.moment_arm", Length, &mut spec.moment_arm)?;
    ctx.q(&r.track_width, "robot.track_width", Length, &mut spec.track_width)?;

    if let Some(m) = &r.magnet {
        ctx.q(&m.block_force_nominal, "robot.magnet.block_force_nominal", Force, &mut spec.magnet.block_force_nominal)?;
        if let Some(f) = &m.condition_factors {
            let cf = &mut spec.magnet.condition_factors;
            ctx.q(
                &f.non_coated_flat,
                "robot.magnet.condition_factors.non_coated_flat",
                Dimensionless,
                &mut cf.non_coated_flat,
            )?;
            ctx.q(&f.coated_flat, "robot.magnet.condition_factors.coated_flat", Dimensionless, &mut cf.coated_flat)?;
            for (name, raw, table) in [
                ("curved_convex", &f.curved_convex, &mut cf.curved_convex),
                ("curved_concave", &f.curved_concave, &mut cf.curved_concave),
            ] {
                if let Some(points) = raw {
                    *table = points
                        .iter()
                        .enumerate()
                        .map(|(i, p)| {
                            let field = format!("robot.magnet.condition_factors.{name}[{i}]");
                            let mut fp = FactorPoint { diameter: f64::NAN, factor: f64::NAN };
                            ctx.q(&p.diameter, &format!("{field}.diameter"), Length, &mut fp.diameter)?;
                            ctx.q(&p.factor, &format!("{field}.factor"), Dimensionless, &mut fp.factor)?;
                            if fp.diameter.is_nan() || fp.factor.is_nan() {
                                return Err(ctx.err(None, &field, "needs both diameter and factor"));
                            }
                            Ok(fp)
                        })
                        .collect::<Result<_>>()?;
                }
            }
        }
    }
    if let Some(l) = &r.linkage {
        let p = &mut spec.linkage;
        ctx.q(&l.a, "robot.linkage.a", Length, &mut p.a)?;
        ctx.q(&l.b, "robot.linkage.b", Length, &mut p.b)?;
        ctx.q(&l.b1, "robot.linkage.b1", Length, &mut p.b1)?;
        ctx.q(&l.e, "robot.linkage.e", Length, &mut p.e)?;
        ctx.q(&l.f, "robot.linkage.f", Length, &mut p.f)?;
        ctx.q(&l.crank_len, "robot.linkage.crank_len", Length, &mut p.crank_len)?;
        ctx.q(&l.gamma, "robot.linkage.gamma", Angle, &mut p.gamma)?;
        ctx.q(&l.screw_pitch, "robot.linkage.screw_pitch", Length, &mut p.screw_pitch)?;
        ctx.q(&l.screw_gear_ratio, "robot.linkage.screw_gear_ratio", Dimensionless, &mut p.screw_gear_ratio)?;
        ctx.q(&l.slider_per_travel, "robot.linkage.slider_per_travel", Dimensionless, &mut p.slider_per_travel)?;
        ctx.q(
            &l.total_transform_ratio,
            "robot.linkage.total_transform_ratio",
            Dimensionless,
            &mut p.total_transform_ratio,
        )?;
        ctx.q(&l.feed_travel_max, "robot.linkage.feed_travel_max", Length, &mut p.feed_travel_max)?;
        ctx.q(&l.flat_threshold, "robot.linkage.flat_threshold", Length, &mut p.flat_threshold)?;
    }
    for (name, raw, motor) in [("drive", &r.drive, &mut spec.drive), ("transform", &r.transform, &mut spec.transform)] {
        if let Some(m) = raw {
            ctx.q(&m.stall_torque, &format!("robot.{name}.stall_torque"), Torque, &mut motor.stall_torque)?;
            ctx.q(&m.gear_ratio, &format!("robot.{name}.gear_ratio"), Dimensionless, &mut motor.gear_ratio)?;
            ctx.count(&m.count, &format!("robot.{name}.count"), &mut motor.count)?;
        }
    }
    Ok(())
}

fn surface(ctx: &Ctx<'_>, s: &RawSurface, path: &str) -> Result<SurfaceSpec> {
    let mut out = SurfaceSpec::vertical_flat(crate::stability::MU_MIN_DEFAULT);
    ctx.q(&s.inclination, &format!("{path}.inclination"), Dimension::Angle, &mut out.inclination)?;
    ctx.q(&s.mu, &format!("{path}.mu"), Dimension::Dimensionless, &mut out.mu)?;
    ctx.choice(
        &s.side,
        &format!("{path}.side"),
        &mut out.side,
        |v| match v {
            "top" => Some(Side::Top),
            "underneath" => Some(Side::Underneath),
            _ => None,
        },
        "top|underneath",
    )?;
    if let Some(r) = &s.curvature_radius {
        out.curvature = match r.get_ref() {
            RawQuantity::Text(t) if t.trim() == "flat" => Curvature::Flat,
            _ => Curvature::Radius(ctx.quantity(r, &format!("{path}.curvature_radius"), Dimension::Length)?),
        };
    }
    if let Some(c) = s.coated {
        out.coated = c;
    }
    if let Some(v) = out.validate().violations.first() {
        return Err(ctx.err(
            None,
            &format!("{path}.{}", v.field.trim_start_matches("surface.")),
            format!("violates {}", v.rule),
        ));
    }
    Ok(out)
}

fn analysis(ctx: &Ctx<'_>, a: &RawAnalysis, out: &mut AnalysisConfig, variant: &mut RadiusVariant) -> Result<()> {
    use Dimension::*;
    ctx.q(&a.mu_min, "analysis.mu_min", Dimensionless, &mut out.assess.mu_min)?;
    ctx.q(&a.mu_max, "analysis.mu_max", Dimensionless, &mut out.mu_max)?;
    ctx.q(&a.phi_min, "analysis.phi_min", Angle, &mut out.phi_min)?;
    ctx.q(&a.phi_max, "analysis.phi_max", Angle, &mut out.phi_max)?;
    ctx.q(&a.release_friction, "analysis.release_friction", Dimensionless, &mut out.assess.release_friction)?;
    ctx.q(
        &a.transform_efficiency,
        "analysis.transform_efficiency",
        Dimensionless,
        &mut out.assess.transform_efficiency,
    )?;
    ctx.choice(
        &a.sliding_bound,
        "analysis.sliding_bound",
        &mut out.assess.sliding_bound,
        |v| match v {
            "analytic" => Some(SlidingBoundMode::Analytic),
            "endpoint" => Some(SlidingBoundMode::Endpoint),
            _ => None,
        },
        "analytic|endpoint",
    )?;
    ctx.choice(&a.radius_variant, "analysis.radius_variant", variant, |v| v.parse().ok(), "derivation|printed")?;
    Ok(())
}

fn control(ctx: &Ctx<'_>, c: &RawControl, sim: &mut SimOptions) -> Result<()> {
    use Dimension::*;
    let g = &mut sim.gains.chain;
    ctx.q(&c.kp, "control.kp", Dimensionless, &mut g.kp)?;
    ctx.q(&c.ki, "control.ki", Dimensionless, &mut g.ki)?;
    ctx.q(&c.kd, "control.kd", Dimensionless, &mut g.kd)?;
    ctx.q(&c.output_min, "control.output_min", Speed, &mut g.output_min)?;
    ctx.q(&c.output_max, "control.output_max", Speed, &mut g.output_max)?;
    ctx.q(&c.integral_limit, "control.integral_limit", Dimensionless, &mut g.integral_limit)?;
    ctx.q(&c.cross_coupling, "control.cross_coupling", Dimensionless, &mut sim.gains.cross_coupling)?;
    for plant in sim.plants.iter_mut() {
        ctx.q(&c.time_constant, "control.time_constant", Time, &mut plant.time_constant)?;
        ctx.q(&c.speed_max, "control.speed_max", Speed, &mut plant.speed_max)?;
        ctx.q(&c.plant_noise, "control.plant_noise", Speed, &mut plant.noise_sigma)?;
    }
    ctx.q(&c.time_constant_left, "control.time_constant_left", Time, &mut sim.plants[0].time_constant)?;
    ctx.q(&c.time_constant_right, "control.time_constant_right", Time, &mut sim.plants[1].time_constant)?;
    ctx.q(&c.imu_noise, "control.imu_noise", Angle, &mut sim.sensors.imu_sigma)?;
    ctx.q(&c.cliff_lookahead, "control.cliff_lookahead", Length, &mut sim.sensors.cliff_lookahead)?;
    ctx.q(&c.transform_rate, "control.transform_rate", Dimensionless, &mut sim.transform_rate)?;
    if !(g.output_min < g.output_max) {
        return Err(ctx.err(None, "control", "output_min < output_max is required"));
    }
    if !(g.integral_limit >= 0.0) {
        return Err(ctx.err(None, "control.integral_limit", "must be >= 0"));
    }
    if sim.plants.iter().any(|p| !(p.time_constant > 0.0 && p.speed_max > 0.0 && p.noise_sigma >= 0.0)) {
        return Err(ctx.err(None, "control", "time constants and speed_max must be > 0, plant_noise >= 0"));
    }
    Ok(())
}

fn mission(ctx: &Ctx<'_>, m: &RawMission) -> Result<MissionScript> {
    use Dimension::*;
    let mut out = MissionScript::default();
    ctx.q(&m.dt, "mission.dt", Time, &mut out.dt)?;
    ctx.q(&m.stop_dwell, "mission.stop_dwell", Time, &mut out.stop_dwell)?;
    if let Some(r) = &m.stop_interval {
        out.stop_interval = Some(ctx.quantity(r, "mission.stop_interval", Length)?);
    }
    if let Some(r) = &m.max_duration {
        out.max_duration = Some(ctx.quantity(r, "mission.max_duration", Time)?);
    }
    if let Some(gaps) = &m.gaps {
        out.gaps = gaps
            .iter()
            .enumerate()
            .map(|(i, g)| ctx.quantity(g, &format!("mission.gaps[{i}]"), Length))
            .collect::<Result<_>>()?;
    }
    if let Some(b) = m.edge_at_end {
        out.edge_at_end = b;
    }
    if let Some(b) = m.stop_on_cliff {
        out.stop_on_cliff = b;
    }
    for (i, s) in m.segments.iter().flatten().enumerate() {
        let path = format!("mission.segments[{i}]");
        let surface = match &s.surface {
            Some(raw) => surface(ctx, raw, &format!("{path}.surface"))?,
            None => SurfaceSpec::vertical_flat(crate::stability::MU_MIN_DEFAULT),
        };
        let mut seg = Segment { surface, length: f64::NAN, speed_ref: f64::NAN };
        ctx.q(&s.length, &format!("{path}.length"), Length, &mut seg.length)?;
        ctx.q(&s.speed_ref, &format!("{path}.speed_ref"), Speed, &mut seg.speed_ref)?;
        if seg.length.is_nan() || seg.speed_ref.is_nan() {
            return Err(ctx.err(None, &path, "needs length and speed_ref"));
        }
        out.segments.push(seg);
    }
    Ok(out)
}
