//! Transformation-angle regulation: the mechanism tracks the linkage angle
//! that makes the chains conform to the current surface curvature.

use crate::mechanism::{alpha_for_radius, radius_from_alpha, slider_branch, RadiusVariant};
use crate::model::{Curvature, LinkageParams};
use crate::Result;

/// Default slew rate of the linkage angle, rad/s.
pub const TRANSFORM_RATE_DEFAULT: f64 = 0.5;

/// Moves `alpha` toward `target` by at most `rate_limit · dt`.
pub fn transform_regulator_step(alpha: f64, target: f64, rate_limit: f64, dt: f64) -> f64 {
    let max_step = rate_limit * dt;
    alpha + (target - alpha).clamp(-max_step, max_step)
}

/// Linkage angle for a surface of the given curvature.
///
/// Flat surfaces, and curves gentler than the mechanism's flattest pose,
/// map to that flattest pose. Tighter or concave curvature that the branch
/// cannot reach is a domain error.
pub fn alpha_target(curvature: Curvature, p: &LinkageParams, variant: RadiusVariant) -> Result<f64> {
    let flattest = slider_branch(p).alpha_min;
    match curvature {
        Curvature::Flat => Ok(flattest),
        Curvature::Radius(r) => {
            let x_flattest = radius_from_alpha(flattest.max(1e-9), p, variant)?;
            if r >= x_flattest {
                Ok(flattest)
            } else {
                alpha_for_radius(r, p, variant)
            }
        }
    }
}
