//! Unit conversions used at the reporting and configuration boundaries.
//!
//! Everything inside the crate is SI (m, kg, s, N, N·m, rad). Gravitational
//! units (kgf, kg·cm) depend on the chosen `g`, so their conversions take it
//! explicitly.

/// Standard gravity, m/s².
pub const STANDARD_GRAVITY: f64 = 9.80665;

pub fn deg(value: f64) -> f64 {
    value.to_radians()
}

pub fn newton_to_kgf(force: f64, g: f64) -> f64 {
    force / g
}

pub fn kgf_to_newton(force: f64, g: f64) -> f64 {
    force * g
}

/// 1 kg·cm = g/100 N·m.
pub fn kg_cm_to_newton_metre(torque: f64, g: f64) -> f64 {
    torque * g / 100.0
}

pub fn newton_metre_to_kg_cm(torque: f64, g: f64) -> f64 {
    torque * 100.0 / g
}

/// Physical dimension of a configurable quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Angle,
    Mass,
    Force,
    Torque,
    Speed,
    Time,
    Dimensionless,
}

impl Dimension {
    pub fn si_unit(self) -> &'static str {
        match self {
            Dimension::Length => "m",
            Dimension::Angle => "rad",
            Dimension::Mass => "kg",
            Dimension::Force => "N",
            Dimension::Torque => "N.m",
            Dimension::Speed => "m/s",
            Dimension::Time => "s",
            Dimension::Dimensionless => "",
        }
    }

    /// Scale factor from `unit` to SI, if `unit` belongs to this dimension.
    ///
    /// Gravitational units (kgf, kg.cm) always use standard gravity here:
    /// they come from datasheets, not from the analysis `g`.
    fn factor(self, unit: &str) -> Option<f64> {
        let f = match (self, unit) {
            (Dimension::Length, "m") => 1.0,
            (Dimension::Length, "cm") => 1e-2,
            (Dimension::Length, "mm") => 1e-3,
            (Dimension::Angle, "rad") => 1.0,
            (Dimension::Angle, "deg" | "°") => std::f64::consts::PI / 180.0,
            (Dimension::Mass, "kg") => 1.0,
            (Dimension::Mass, "g") => 1e-3,
            (Dimension::Force, "N") => 1.0,
            (Dimension::Force, "kgf") => STANDARD_GRAVITY,
            (Dimension::Torque, "N.m" | "Nm" | "N·m") => 1.0,
            (Dimension::Torque, "kg.cm" | "kgcm" | "kg·cm") => STANDARD_GRAVITY / 100.0,
            (Dimension::Speed, "m/s") => 1.0,
            (Dimension::Speed, "cm/s") => 1e-2,
            (Dimension::Speed, "mm/s") => 1e-3,
            (Dimension::Time, "s") => 1.0,
            (Dimension::Time, "ms") => 1e-3,
            (Dimension::Dimensionless, "" | "1") => 1.0,
            (Dimension::Dimensionless, "%") => 1e-2,
            (_, "") => 1.0,
            _ => return None,
        };
        Some(f)
    }
}

/// Parses `"<number> <unit>"` (the space is optional) into SI.
///
/// A bare number is taken as already being in SI.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, String> {
    let text = text.trim();
    let split = text
        .char_indices()
        .find(|&(i, c)| {
            !(c.is_ascii_digit()
                || c == '.'
                || ((c == '-' || c == '+') && (i == 0 || matches!(text.as_bytes()[i - 1], b'e' | b'E')))
                || ((c == 'e' || c == 'E') && i > 0))
        })
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    let (num, unit) = text.split_at(split);
    let value: f64 = num.trim().parse().map_err(|_| format!("cannot parse number in {text:?}"))?;
    let unit = unit.trim();
    let factor = dim
        .factor(unit)
        .ok_or_else(|| format!("unit {unit:?} is not a {:?} unit (SI unit is {:?})", dim, dim.si_unit()))?;
    Ok(value * factor)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_lengths() {
        assert!((parse_quantity("72 mm", Dimension::Length).unwrap() - 0.072).abs() < 1e-15);
        assert!((parse_quantity("19.751cm", Dimension::Length).unwrap() - 0.19751).abs() < 1e-15);
        assert_eq!(parse_quantity("0.5", Dimension::Length).unwrap(), 0.5);
        assert_eq!(parse_quantity("1e-3 m", Dimension::Length).unwrap(), 1e-3);
    }

    #[test]
    fn parses_angles_and_torques() {
        assert!((parse_quantity("12 deg", Dimension::Angle).unwrap() - 12f64.to_radians()).abs() < 1e-15);
        let t = parse_quantity("12 kg.cm", Dimension::Torque).unwrap();
        assert!((t - 12.0 * 0.0980665).abs() < 1e-12);
    }

    #[test]
    fn rejects_wrong_dimension() {
        assert!(parse_quantity("12 kg", Dimension::Length).is_err());
        assert!(parse_quantity("abc mm", Dimension::Length).is_err());
    }

    #[test]
    fn gravitational_round_trip() {
        let g = 9.8;
        let t = kg_cm_to_newton_metre(31.65, g);
        assert!((newton_metre_to_kg_cm(t, g) - 31.65).abs() < 1e-12);
        assert!((newton_to_kgf(kgf_to_newton(3.0, g), g) - 3.0).abs() < 1e-15);
    }
}
