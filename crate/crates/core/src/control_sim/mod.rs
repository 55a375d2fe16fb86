//! Discrete-time control and climbing simulation.
//!
//! Both roller-chains run independent PID speed loops with a cross-coupling
//! term on their speed difference. Pose is integrated on the developed
//! surface plane; curvature only affects the stability evaluation and the
//! transformation-angle target.

mod mission;
mod noise;
mod pid;
mod plant;
mod pose;
mod regulator;
mod sensors;
mod sync;

pub use mission::{
    failure_events, run_mission, Event, MissionScript, MissionSummary, Outcome, Segment, SimOptions, SimTrace,
    TraceRecord, TRACE_HEADER,
};
pub use noise::NoiseSource;
pub use pid::{pid_step, PidGains, PidState};
pub use plant::{chain_plant_step, ChainPlant, CHAIN_SPEED_MAX};
pub use pose::{pose_step, Pose};
pub use regulator::{alpha_target, transform_regulator_step, TRANSFORM_RATE_DEFAULT};
pub use sensors::{edge_ahead, hall_ticks, sensors_emulate, SensorContext, SensorParams, SensorRecord};
pub use sync::{dual_chain_sync_sim, DualChain, SyncGains, SyncRecord, SyncTrace, SYNC_TRACE_HEADER};
