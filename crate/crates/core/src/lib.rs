//! Design analysis and climbing simulation for magnet-adhesion tracked
//! climbing robots.
//!
//! - [`model`]: robot, magnet, linkage, motor and surface descriptions.
//! - [`mechanism`]: feed screw → slider → linkage angle → contact radius.
//! - [`adhesion`]: per-block and total magnetic force, pull-test conversion.
//! - [`stability`]: sliding, turn-over and motor-torque criteria.
//! - [`control_sim`]: PID chain synchronisation and mission simulation.
//! - [`config`], [`report`], [`envelope`], [`cli`]: file formats and the
//!   command-line front end.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adhesion;
pub mod cli;
pub mod config;
pub mod control_sim;
pub mod envelope;
mod error;
pub mod mechanism;
pub mod model;
pub mod report;
pub mod stability;
pub mod units;

pub use error::{Error, Result};
