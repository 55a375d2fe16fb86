//! Kinematics of the transformation mechanism.
//!
//! The chain: motor revolutions → feed-screw travel → slider extension `y`
//! → linkage angle `α` → contact radius `x` of the cylinder the chains wrap.
//!
//! `y(α)` is taken on the branch where it is strictly decreasing, from the
//! angle of maximum extension down to the angle where the radicand vanishes.
//! Inverses on that branch use bracketed bisection.

use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use serde::Serialize;

use crate::model::{Curvature, LinkageParams};
use crate::{Error, Result};

/// Absolute tolerance on angles recovered by bisection, rad.
pub const ALPHA_TOLERANCE: f64 = 1e-10;

/// Which closed form to use for the contact radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum RadiusVariant {
    /// `x = b/cosβ − f/(cosα·cosβ) − e + f·tanα`, consistent with the
    /// geometric construction.
    #[default]
    Derivation,
    /// The typeset form, with `b` in place of `f` in the second term.
    AsPrinted,
}

impl std::str::FromStr for RadiusVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "derivation" => Ok(RadiusVariant::Derivation),
            "printed" | "as-printed" => Ok(RadiusVariant::AsPrinted),
            other => Err(format!("unknown radius variant {other:?} (expected derivation|printed)")),
        }
    }
}

/// Full state of the mechanism at one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MechanismState {
    pub alpha: f64,
    pub beta: f64,
    pub phi_crank: f64,
    pub slider_y: f64,
    pub screw_travel: f64,
    pub contact_radius: Curvature,
}

/// Contact radius for linkage angle `alpha` (rad, open interval (0, π/2)).
pub fn radius_from_alpha(alpha: f64, p: &LinkageParams, variant: RadiusVariant) -> Result<f64> {
    if !(alpha > 0.0 && alpha < FRAC_PI_2) {
        return Err(Error::Domain {
            stage: "radius_from_alpha",
            message: format!("alpha = {alpha} rad is outside (0, pi/2)"),
        });
    }
    let beta = FRAC_PI_2 - alpha;
    let (ca, cb) = (alpha.cos(), beta.cos());
    let second = match variant {
        RadiusVariant::Derivation => p.f,
        RadiusVariant::AsPrinted => p.b,
    };
    Ok(p.b / cb - second / (ca * cb) - p.e + p.f * alpha.tan())
}

/// Angular interval of the monotone slider branch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliderBranch {
    /// α of maximum extension.
    pub alpha_min: f64,
    /// α where the extension reaches its minimum (zero when the radicand vanishes).
    pub alpha_max: f64,
    pub y_max: f64,
    pub y_min: f64,
}

/// The branch of `slider_from_alpha` on which it is strictly decreasing.
pub fn slider_branch(p: &LinkageParams) -> SliderBranch {
    // u(φ) = b1 − a·cosφ grows with φ; y decreases wherever u ≥ 0.
    let phi_start = if p.b1 >= p.a { 0.0 } else { (p.b1 / p.a).acos() };
    let phi_end = ((p.b1 - p.crank_len) / p.a).clamp(-1.0, 1.0).acos();
    let alpha_min = p.gamma + phi_start;
    let alpha_max = p.gamma + phi_end;
    SliderBranch {
        alpha_min,
        alpha_max,
        y_max: slider_radicand(alpha_min, p).max(0.0).sqrt(),
        y_min: slider_radicand(alpha_max, p).max(0.0).sqrt(),
    }
}

fn slider_radicand(alpha: f64, p: &LinkageParams) -> f64 {
    let u = p.b1 - p.a * (alpha - p.gamma).cos();
    p.crank_len * p.crank_len - u * u
}

/// Slider extension for linkage angle `alpha`.
pub fn slider_from_alpha(alpha: f64, p: &LinkageParams) -> Result<f64> {
    let r = slider_radicand(alpha, p);
    // rounding at the exact boundary
    if r < -1e-15 * p.crank_len * p.crank_len {
        let br = slider_branch(p);
        return Err(Error::Domain {
            stage: "slider_from_alpha",
            message: format!(
                "alpha = {alpha} rad gives an imaginary slider; admissible alpha is [{}, {}] rad",
                2.0 * p.gamma - br.alpha_max,
                br.alpha_max
            ),
        });
    }
    Ok(r.max(0.0).sqrt())
}

/// Bisection for a root of `f` on `[lo, hi]`, given `f(lo)` and `f(hi)` of
/// opposite sign (or zero).
fn bisect(mut f: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    if f(hi) == 0.0 {
        return hi;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Linkage angle on the monotone branch producing extension `y`.
pub fn alpha_from_slider(y: f64, p: &LinkageParams) -> Result<f64> {
    let br = slider_branch(p);
    if !(y >= br.y_min && y <= br.y_max) {
        return Err(Error::OutOfRange { stage: "alpha_from_slider", value: y, min: br.y_min, max: br.y_max });
    }
    let g = |a: f64| slider_radicand(a, p).max(0.0).sqrt() - y;
    Ok(bisect(g, br.alpha_min, br.alpha_max, ALPHA_TOLERANCE * 1e-2))
}

/// Screw travel produced by `revs` transformation-motor revolutions.
pub fn motor_revs_to_travel(revs: f64, p: &LinkageParams) -> f64 {
    revs * p.screw_pitch / p.screw_gear_ratio
}

pub fn travel_to_motor_revs(travel: f64, p: &LinkageParams) -> f64 {
    travel * p.screw_gear_ratio / p.screw_pitch
}

pub fn travel_to_slider(screw_travel: f64, p: &LinkageParams) -> Result<f64> {
    if !(0.0..=p.feed_travel_max).contains(&screw_travel) {
        return Err(Error::OutOfRange {
            stage: "travel_to_slider",
            value: screw_travel,
            min: 0.0,
            max: p.feed_travel_max,
        });
    }
    Ok(screw_travel * p.slider_per_travel)
}

pub fn slider_to_travel(y: f64, p: &LinkageParams) -> Result<f64> {
    let max = p.feed_travel_max * p.slider_per_travel;
    if !(0.0..=max).contains(&y) {
        return Err(Error::OutOfRange { stage: "slider_to_travel", value: y, min: 0.0, max });
    }
    Ok(y / p.slider_per_travel)
}

fn classify(x: f64, p: &LinkageParams) -> Curvature {
    if x.abs() > p.flat_threshold || !x.is_finite() {
        Curvature::Flat
    } else {
        Curvature::Radius(x)
    }
}

/// Full mechanism state for a given screw travel.
pub fn state_from_travel(screw_travel: f64, p: &LinkageParams, variant: RadiusVariant) -> Result<MechanismState> {
    let y = travel_to_slider(screw_travel, p)?;
    let alpha = alpha_from_slider(y, p)?;
    let x = radius_from_alpha(alpha, p, variant)?;
    Ok(MechanismState {
        alpha,
        beta: FRAC_PI_2 - alpha,
        phi_crank: alpha - p.gamma,
        slider_y: y,
        screw_travel,
        contact_radius: classify(x, p),
    })
}

/// Contact radius reached after `screw_travel` of the feed screw.
pub fn radius_from_travel(screw_travel: f64, p: &LinkageParams, variant: RadiusVariant) -> Result<Curvature> {
    state_from_travel(screw_travel, p, variant).map(|s| s.contact_radius)
}

/// α on the slider branch whose contact radius equals `radius`.
///
/// Fails when the radius is not reachable on the branch.
pub fn alpha_for_radius(radius: f64, p: &LinkageParams, variant: RadiusVariant) -> Result<f64> {
    let br = slider_branch(p);
    let lo = br.alpha_min.max(1e-9);
    let hi = br.alpha_max.min(FRAC_PI_2 - 1e-9);
    let x_lo = radius_from_alpha(lo, p, variant)?;
    let x_hi = radius_from_alpha(hi, p, variant)?;
    if (x_lo - radius) * (x_hi - radius) > 0.0 {
        return Err(Error::OutOfRange {
            stage: "alpha_for_radius",
            value: radius,
            min: x_lo.min(x_hi),
            max: x_lo.max(x_hi),
        });
    }
    let g = |a: f64| radius_from_alpha(a, p, variant).unwrap_or(f64::NAN) - radius;
    Ok(bisect(g, lo, hi, ALPHA_TOLERANCE * 1e-2))
}

/// Local linearized ratios around an operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalRatios {
    /// |dα/dy| in degrees per millimetre of slider travel.
    pub deg_per_mm: f64,
    /// e / a.
    pub e_over_a: f64,
}

/// Reports the local α:y ratio at `alpha`. Diagnostic only; the kinematics
/// always use the exact nonlinear relation.
pub fn local_ratios(alpha: f64, p: &LinkageParams) -> Result<LocalRatios> {
    let y = slider_from_alpha(alpha, p)?;
    let phi = alpha - p.gamma;
    let u = p.b1 - p.a * phi.cos();
    let dy_dalpha = -u * p.a * phi.sin() / y;
    Ok(LocalRatios { deg_per_mm: (1.0 / dy_dalpha.abs()).to_degrees() / 1000.0, e_over_a: p.e / p.a })
}

/// One row of the travel→radius table. Out-of-domain rows keep their
/// travel and slider values and leave the rest empty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TravelRow {
    pub travel: f64,
    pub alpha: Option<f64>,
    pub slider: Option<f64>,
    pub radius: Option<Curvature>,
    pub in_domain: bool,
}

pub const TRAVEL_TABLE_HEADER: &str = "travel_m,alpha_rad,slider_m,radius_m,in_domain";

/// Tabulates the mechanism over an evenly spaced travel grid on [0, feed_travel_max].
pub fn travel_radius_table(p: &LinkageParams, steps: usize, variant: RadiusVariant) -> Result<Vec<TravelRow>> {
    if steps < 2 {
        return Err(Error::Domain {
            stage: "travel_radius_table",
            message: format!("steps = {steps}, need at least 2"),
        });
    }
    let rows = (0..steps)
        .map(|i| {
            let travel =
                if i == steps - 1 { p.feed_travel_max } else { p.feed_travel_max * i as f64 / (steps - 1) as f64 };
            let slider = travel_to_slider(travel, p).ok();
            match state_from_travel(travel, p, variant) {
                Ok(s) => {
                    TravelRow { travel, alpha: Some(s.alpha), slider, radius: Some(s.contact_radius), in_domain: true }
                }
                Err(_) => TravelRow { travel, alpha: None, slider, radius: None, in_domain: false },
            }
        })
        .collect();
    Ok(rows)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes the table as CSV with full-precision numbers. A flat radius is
/// written as `inf`.
pub fn write_travel_table<W: Write>(rows: &[TravelRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TRAVEL_TABLE_HEADER.split(','))?;
    for r in rows {
        let radius = r.radius.map(|c| match c {
            Curvature::Flat => "inf".to_owned(),
            Curvature::Radius(x) => x.to_string(),
        });
        w.write_record([
            r.travel.to_string(),
            opt(r.alpha),
            opt(r.slider),
            radius.unwrap_or_default(),
            r.in_domain.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
