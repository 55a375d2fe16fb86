//! Mission simulation: the robot drives along a sequence of surface
//! segments under chain-speed control while the transformation mechanism
//! tracks the surface curvature and every step is checked against the
//! static failure criteria.

use std::fmt;
use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::noise::NoiseSource;
use super::plant::ChainPlant;
use super::pose::{pose_step, Pose};
use super::regulator::{alpha_target, transform_regulator_step, TRANSFORM_RATE_DEFAULT};
use super::sensors::{sensors_emulate, SensorContext, SensorParams, SensorRecord};
use super::sync::{DualChain, SyncGains};
use crate::mechanism::{slider_branch, RadiusVariant};
use crate::model::{validate_spec, Constants, RobotSpec, SurfaceSpec, Validation, Violation};
use crate::stability::{assess, AssessOptions, Criterion, StabilityReport};
use crate::Result;

/// One stretch of surface with its commanded speed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub surface: SurfaceSpec,
    pub length: f64,
    pub speed_ref: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissionScript {
    pub segments: Vec<Segment>,
    pub dt: f64,
    /// Distance between stop-and-capture pauses.
    pub stop_interval: Option<f64>,
    /// Length of each pause, s.
    pub stop_dwell: f64,
    /// Path positions where the surface is missing.
    pub gaps: Vec<f64>,
    /// Whether the surface ends at the end of the last segment.
    pub edge_at_end: bool,
    pub stop_on_cliff: bool,
    /// Simulated time budget; derived from the script when `None`.
    pub max_duration: Option<f64>,
}

impl Default for MissionScript {
    fn default() -> Self {
        Self {
            segments: Vec::new(),
            dt: 0.1,
            stop_interval: None,
            stop_dwell: 1.0,
            gaps: Vec::new(),
            edge_at_end: false,
            stop_on_cliff: true,
            max_duration: None,
        }
    }
}

impl MissionScript {
    pub fn single(surface: SurfaceSpec, length: f64, speed_ref: f64) -> Self {
        Self { segments: vec![Segment { surface, length, speed_ref }], ..Self::default() }
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(|s| s.length).sum()
    }

    pub fn validate(&self, speed_max: f64) -> Validation {
        let mut v = Validation::default();
        let mut push = |ok: bool, field: String, rule: &str| {
            if !ok {
                v.violations.push(Violation { field, rule: rule.to_owned() });
            }
        };
        push(!self.segments.is_empty(), "mission.segments".into(), "at least one segment");
        push(self.dt > 0.0 && self.dt.is_finite(), "mission.dt".into(), "dt > 0");
        push(self.stop_dwell >= 0.0, "mission.stop_dwell".into(), "stop_dwell >= 0");
        if let Some(iv) = self.stop_interval {
            push(iv > 0.0, "mission.stop_interval".into(), "stop_interval > 0");
        }
        for (i, s) in self.segments.iter().enumerate() {
            push(s.length > 0.0 && s.length.is_finite(), format!("mission.segments[{i}].length"), "length > 0");
            push(
                s.speed_ref > 0.0 && s.speed_ref <= speed_max,
                format!("mission.segments[{i}].speed_ref"),
                "0 < speed_ref <= speed_max",
            );
            for viol in s.surface.validate().violations {
                push(false, format!("mission.segments[{i}].{}", viol.field), &viol.rule);
            }
        }
        v
    }

    fn default_duration(&self) -> f64 {
        let driving: f64 = self.segments.iter().map(|s| s.length / s.speed_ref).sum();
        let stops = self.stop_interval.map_or(0.0, |iv| (self.total_length() / iv).ceil() * (self.stop_dwell + 5.0));
        3.0 * driving + stops + 30.0
    }
}

/// Everything about a run that is not the robot or the mission.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimOptions {
    pub gains: SyncGains,
    /// Left and right chain plants.
    pub plants: [ChainPlant; 2],
    pub sensors: SensorParams,
    /// Linkage angle slew rate, rad/s.
    pub transform_rate: f64,
    pub assess: AssessOptions,
    pub radius_variant: RadiusVariant,
}

impl Default for SimOptions {
    fn default() -> Self {
        let plant = ChainPlant { noise_sigma: 0.002, ..ChainPlant::default() };
        Self {
            gains: SyncGains::default(),
            plants: [plant; 2],
            sensors: SensorParams::default(),
            transform_rate: TRANSFORM_RATE_DEFAULT,
            assess: AssessOptions::default(),
            radius_variant: RadiusVariant::Derivation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Event {
    SlidingFailure,
    TurnoverFailure,
    CliffDetected,
    DomainError,
}

impl Event {
    pub fn is_failure(self) -> bool {
        matches!(self, Event::SlidingFailure | Event::TurnoverFailure)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Event::SlidingFailure => "SlidingFailure",
            Event::TurnoverFailure => "TurnoverFailure",
            Event::CliffDetected => "CliffDetected",
            Event::DomainError => "DomainError",
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub t: f64,
    pub pose: Pose,
    pub v_left: f64,
    pub v_right: f64,
    pub ref_left: f64,
    pub ref_right: f64,
    pub alpha: f64,
    pub sensors: SensorRecord,
    pub margin_slide: f64,
    pub margin_turn: f64,
    /// Segment whose surface the step was evaluated on.
    pub segment: usize,
    pub distance_left: f64,
    pub distance_right: f64,
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Outcome {
    Completed,
    Failure(Event),
    CliffStop,
    TimedOut,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimTrace {
    pub dt: f64,
    pub records: Vec<TraceRecord>,
    pub outcome: Outcome,
}

pub const TRACE_HEADER: &str =
    "t,x,y,heading,vL,vR,refL,refR,alpha,ticksL,ticksR,imu_phi,sonar,margin_slide,margin_turn,event";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MissionSummary {
    pub steps: usize,
    pub duration: f64,
    pub distance: f64,
    pub max_sync_error: f64,
    pub events: Vec<(f64, Event)>,
    pub outcome: Outcome,
}

impl SimTrace {
    pub fn events(&self) -> impl Iterator<Item = (f64, Event)> + '_ {
        self.records.iter().flat_map(|r| r.events.iter().map(move |&e| (r.t, e)))
    }

    pub fn has_failure(&self) -> bool {
        matches!(self.outcome, Outcome::Failure(_))
    }

    pub fn summary(&self) -> MissionSummary {
        let last = self.records.last();
        MissionSummary {
            steps: self.records.len(),
            duration: last.map_or(0.0, |r| r.t),
            distance: last.map_or(0.0, |r| 0.5 * (r.distance_left + r.distance_right)),
            max_sync_error: self.records.iter().map(|r| (r.v_left - r.v_right).abs()).fold(0.0, f64::max),
            events: self.events().collect(),
            outcome: self.outcome,
        }
    }

    /// Writes the trace as CSV. Numbers use the shortest representation that
    /// round-trips, so equal traces give equal bytes.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(TRACE_HEADER.split(','))?;
        for r in &self.records {
            let events = r.events.iter().map(|e| e.as_str()).collect::<Vec<_>>().join("|");
            w.write_record([
                r.t.to_string(),
                r.pose.x.to_string(),
                r.pose.y.to_string(),
                r.pose.heading.to_string(),
                r.v_left.to_string(),
                r.v_right.to_string(),
                r.ref_left.to_string(),
                r.ref_right.to_string(),
                r.alpha.to_string(),
                r.sensors.hall_ticks_left.to_string(),
                r.sensors.hall_ticks_right.to_string(),
                r.sensors.imu_inclination.to_string(),
                r.sensors.sonar_surface_present.to_string(),
                r.margin_slide.to_string(),
                r.margin_turn.to_string(),
                events,
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

/// Failure events implied by a stability report.
pub fn failure_events(report: &StabilityReport) -> Vec<Event> {
    let mut out = Vec::new();
    if !report.passes(Criterion::Sliding) {
        out.push(Event::SlidingFailure);
    }
    if !report.passes(Criterion::Turnover) {
        out.push(Event::TurnoverFailure);
    }
    out
}

fn segment_at(boundaries: &[f64], s: f64) -> usize {
    boundaries.partition_point(|&b| b <= s).min(boundaries.len() - 1)
}

/// Runs `script` with `spec`, deterministically for a given `seed`.
///
/// The run stops at the first sliding or turn-over failure, at a detected
/// cliff when the script asks for it, at the end of the last segment, or
/// when the time budget runs out. Random draws per step, in order: left
/// plant noise, right plant noise, IMU noise.
pub fn run_mission(
    spec: &RobotSpec,
    script: &MissionScript,
    c: &Constants,
    seed: u64,
    opts: &SimOptions,
) -> Result<SimTrace> {
    let speed_max = opts.plants[0].speed_max.min(opts.plants[1].speed_max);
    validate_spec(spec).merge(script.validate(speed_max)).into_result()?;

    let reports =
        script.segments.iter().map(|s| assess(spec, &s.surface, c, &opts.assess)).collect::<Result<Vec<_>>>()?;
    let targets: Vec<Option<f64>> = script
        .segments
        .iter()
        .map(|s| alpha_target(s.surface.curvature, &spec.linkage, opts.radius_variant).ok())
        .collect();
    let boundaries: Vec<f64> = script
        .segments
        .iter()
        .scan(0.0, |acc, s| {
            *acc += s.length;
            Some(*acc)
        })
        .collect();
    let total = *boundaries.last().expect("validated non-empty");
    let mut edges = script.gaps.clone();
    if script.edge_at_end {
        edges.push(total);
    }
    let max_duration = script.max_duration.unwrap_or_else(|| script.default_duration());
    let dt = script.dt;

    let mut noise = NoiseSource::new(ChaCha8Rng::seed_from_u64(seed));
    let mut chains = DualChain::default();
    let mut pose = Pose::default();
    let (mut dist_l, mut dist_r) = (0.0, 0.0);
    let mut alpha = targets[0].unwrap_or_else(|| slider_branch(&spec.linkage).alpha_min);
    let mut next_stop = script.stop_interval;
    let mut dwell_until = f64::NEG_INFINITY;
    let mut records = Vec::new();
    let mut seg = 0;
    let mut reference = 0.0;
    let mut step: u64 = 0;

    let outcome = loop {
        let t = step as f64 * dt;
        let s = 0.5 * (dist_l + dist_r);
        let entering = step == 0 || segment_at(&boundaries, s) != seg;
        seg = segment_at(&boundaries, s);
        let segment = &script.segments[seg];
        if let Some(target) = targets[seg] {
            alpha = if step == 0 { target } else { transform_regulator_step(alpha, target, opts.transform_rate, dt) };
        }
        let sensors = sensors_emulate(
            &SensorContext {
                distance_left: dist_l,
                distance_right: dist_r,
                block_pitch: spec.block_pitch,
                inclination: segment.surface.inclination,
                position: s,
                edges: &edges,
            },
            &opts.sensors,
            &mut noise,
        );
        let report = &reports[seg];
        let mut events = failure_events(report);
        if entering && targets[seg].is_none() {
            events.push(Event::DomainError);
        }
        if !sensors.sonar_surface_present {
            events.push(Event::CliffDetected);
        }
        let failure = events.iter().copied().find(|e| e.is_failure());
        let cliff = events.contains(&Event::CliffDetected);
        records.push(TraceRecord {
            t,
            pose,
            v_left: chains.v_left,
            v_right: chains.v_right,
            ref_left: reference,
            ref_right: reference,
            alpha,
            sensors,
            margin_slide: report.get(Criterion::Sliding).margin,
            margin_turn: report.get(Criterion::Turnover).margin,
            segment: seg,
            distance_left: dist_l,
            distance_right: dist_r,
            events,
        });

        if let Some(e) = failure {
            break Outcome::Failure(e);
        }
        if cliff && script.stop_on_cliff {
            break Outcome::CliffStop;
        }
        if s >= total {
            break Outcome::Completed;
        }
        if t >= max_duration {
            break Outcome::TimedOut;
        }

        // advance one sample
        reference = if t < dwell_until { 0.0 } else { segment.speed_ref };
        let n = (noise.gaussian(opts.plants[0].noise_sigma), noise.gaussian(opts.plants[1].noise_sigma));
        chains.step(reference, &opts.gains, &opts.plants, dt, n);
        pose = pose_step(pose, chains.v_left, chains.v_right, spec.track_width, dt);
        dist_l += chains.v_left * dt;
        dist_r += chains.v_right * dt;
        step += 1;
        if let (Some(iv), Some(mark)) = (script.stop_interval, next_stop) {
            if 0.5 * (dist_l + dist_r) >= mark {
                dwell_until = step as f64 * dt + script.stop_dwell;
                next_stop = Some(mark + iv);
            }
        }
    };

    Ok(SimTrace { dt, records, outcome })
}
