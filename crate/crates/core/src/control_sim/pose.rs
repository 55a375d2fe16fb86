use serde::Serialize;

/// Position and heading on the developed (unrolled) surface plane.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    pub heading: f64,
}

/// Differential-drive dead reckoning over one step, integrating the arc
/// exactly when the chains differ in speed.
pub fn pose_step(pose: Pose, v_left: f64, v_right: f64, track_width: f64, dt: f64) -> Pose {
    let v = 0.5 * (v_left + v_right);
    let omega = (v_right - v_left) / track_width;
    if omega.abs() > 1e-9 {
        let r = v / omega;
        let h1 = pose.heading + omega * dt;
        Pose {
            x: pose.x + r * (h1.sin() - pose.heading.sin()),
            y: pose.y - r * (h1.cos() - pose.heading.cos()),
            heading: h1,
        }
    } else {
        Pose { x: pose.x + v * dt * pose.heading.cos(), y: pose.y + v * dt * pose.heading.sin(), heading: pose.heading }
    }
}
