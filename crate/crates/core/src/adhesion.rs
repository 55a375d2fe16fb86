//! Magnetic adhesion: per-block force under surface conditions, total
//! robot adhesion, and pull-test conversion.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::model::{Constants, CurveSign, MagnetSpec, RobotSpec, SurfaceCondition, SurfaceSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdhesionResult {
    pub per_block: f64,
    pub contacting_blocks: u32,
    pub total: f64,
}

/// Force of one block on `surface`: nominal force scaled by the condition factor.
pub fn block_force(magnet: &MagnetSpec, surface: &SurfaceSpec) -> f64 {
    block_force_for(magnet, surface.condition())
}

pub fn block_force_for(magnet: &MagnetSpec, condition: SurfaceCondition) -> f64 {
    magnet.block_force_nominal * magnet.condition_factors.factor(condition)
}

/// Total adhesion of all contacting blocks on all chains.
pub fn total_adhesion(spec: &RobotSpec, surface: &SurfaceSpec) -> AdhesionResult {
    adhesion_from_block(block_force(&spec.magnet, surface), spec.contacting_blocks())
}

pub fn adhesion_from_block(per_block: f64, contacting_blocks: u32) -> AdhesionResult {
    AdhesionResult { per_block, contacting_blocks, total: per_block * contacting_blocks as f64 }
}

/// Adhesion from a pull test: the scale carries the weight plus the
/// magnetic force when the robot lets go, so `F = g·M − P`.
pub fn pull_test_to_force(scale_reading: f64, robot_weight: f64, c: &Constants) -> Result<f64> {
    let pull = c.g * scale_reading;
    if !(pull >= robot_weight) {
        return Err(Error::InvalidMeasurement(format!(
            "scale force {pull} N is below the robot weight {robot_weight} N; the robot was never lifted"
        )));
    }
    Ok(pull - robot_weight)
}

/// Scale reading that a given adhesion force would produce.
pub fn force_to_pull_test(force: f64, robot_weight: f64, c: &Constants) -> f64 {
    (force + robot_weight) / c.g
}

/// One measured pull.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PullTestSample {
    pub scale_reading: f64,
    pub surface: SurfaceCondition,
    pub measured_force: f64,
}

#[derive(Debug, Deserialize)]
struct PullRow {
    surface: String,
    diameter_mm: Option<f64>,
    scale_kg: f64,
}

/// A dataset row that failed to parse or convert.
#[derive(Debug, Clone, PartialEq)]
pub struct RowError {
    /// 1-based data row number (header excluded).
    pub row: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PullTestDataset {
    pub samples: Vec<PullTestSample>,
    pub errors: Vec<RowError>,
}

fn parse_condition(surface: &str, diameter_mm: Option<f64>) -> std::result::Result<SurfaceCondition, String> {
    let curved = |sign| match diameter_mm {
        Some(d) if d > 0.0 => Ok(SurfaceCondition::CoatedCurved { diameter: d / 1000.0, sign }),
        _ => Err(format!("surface {surface:?} needs a positive diameter_mm")),
    };
    match surface.trim() {
        "non_coated_flat" | "noncoated_flat" => Ok(SurfaceCondition::NonCoatedFlat),
        "coated_flat" => Ok(SurfaceCondition::CoatedFlat),
        "coated_convex" | "convex" | "curved_positive" => curved(CurveSign::Convex),
        "coated_concave" | "concave" | "curved_negative" => curved(CurveSign::Concave),
        other => Err(format!("unknown surface {other:?}")),
    }
}

/// Reads a `surface,diameter_mm,scale_kg` dataset. Row-level problems are
/// collected with their row numbers; an unreadable header or a dataset with
/// no rows at all is an error.
pub fn read_pull_tests<R: Read>(input: R, robot_weight: f64, c: &Constants) -> Result<PullTestDataset> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut samples = Vec::new();
    let mut errors = Vec::new();
    let mut rows = 0;
    for (i, rec) in rdr.deserialize::<PullRow>().enumerate() {
        rows += 1;
        let row = i + 1;
        let parsed = rec.map_err(|e| e.to_string()).and_then(|r| {
            let surface = parse_condition(&r.surface, r.diameter_mm)?;
            let measured_force = pull_test_to_force(r.scale_kg, robot_weight, c).map_err(|e| e.to_string())?;
            Ok(PullTestSample { scale_reading: r.scale_kg, surface, measured_force })
        });
        match parsed {
            Ok(s) => samples.push(s),
            Err(message) => errors.push(RowError { row, message }),
        }
    }
    if rows == 0 {
        return Err(Error::InvalidMeasurement("no rows".into()));
    }
    Ok(PullTestDataset { samples, errors })
}

pub fn read_pull_tests_file(path: &Path, robot_weight: f64, c: &Constants) -> Result<PullTestDataset> {
    let file = std::fs::File::open(path)?;
    read_pull_tests(file, robot_weight, c)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PullSummary {
    pub count: usize,
    pub min: f64,
    pub mean: f64,
}

pub fn summarize(samples: &[PullTestSample]) -> Option<PullSummary> {
    if samples.is_empty() {
        return None;
    }
    let min = samples.iter().map(|s| s.measured_force).fold(f64::INFINITY, f64::min);
    let mean = samples.iter().map(|s| s.measured_force).sum::<f64>() / samples.len() as f64;
    Some(PullSummary { count: samples.len(), min, mean })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{reference_design, SMALLEST_TESTED_DIAMETER};

    #[test]
    fn nominal_block_force() {
        let spec = reference_design();
        let flat = SurfaceSpec::vertical_flat(0.4);
        assert_eq!(block_force(&spec.magnet, &flat), 39.7);
    }

    #[test]
    fn smallest_curve_hits_measured_floor() {
        let spec = reference_design();
        let f = block_force_for(
            &spec.magnet,
            SurfaceCondition::CoatedCurved { diameter: SMALLEST_TESTED_DIAMETER, sign: CurveSign::Concave },
        );
        assert!((f - 210.0 / 16.0).abs() < 1e-12);
    }

    #[test]
    fn total_for_reference_design() {
        let spec = reference_design();
        let r = total_adhesion(&spec, &SurfaceSpec::vertical_flat(0.4));
        assert!((r.total - 635.2).abs() < 1e-12);
        assert_eq!(r.contacting_blocks, 16);

        let mut one = spec.clone();
        one.chain_count = 1;
        assert!((total_adhesion(&one, &SurfaceSpec::vertical_flat(0.4)).total - 317.6).abs() < 1e-12);

        let mut none = spec;
        none.contact_blocks_per_chain = 0;
        assert_eq!(total_adhesion(&none, &SurfaceSpec::vertical_flat(0.4)).total, 0.0);
    }

    #[test]
    fn pull_test_conversion() {
        let c = Constants::with_g(10.0);
        assert_eq!(pull_test_to_force(24.0, 30.0, &c).unwrap(), 210.0);
        assert_eq!(pull_test_to_force(3.0, 30.0, &c).unwrap(), 0.0);
        assert!(matches!(pull_test_to_force(2.0, 30.0, &c), Err(Error::InvalidMeasurement(_))));
    }

    #[test]
    fn dataset_rows_and_errors() {
        let data = "surface,diameter_mm,scale_kg\n\
                    non_coated_flat,,70\n\
                    coated_convex,100,24\n\
                    coated_concave,,30\n\
                    coated_flat,,1\n";
        let ds = read_pull_tests(data.as_bytes(), 30.0, &Constants::with_g(10.0)).unwrap();
        assert_eq!(ds.samples.len(), 2);
        assert_eq!(ds.errors.iter().map(|e| e.row).collect::<Vec<_>>(), vec![3, 4]);
        let s = summarize(&ds.samples).unwrap();
        assert_eq!(s.min, 210.0);
        assert_eq!(s.mean, 440.0);
    }

    #[test]
    fn empty_dataset_is_an_error() {
        let e = read_pull_tests("surface,diameter_mm,scale_kg\n".as_bytes(), 30.0, &Constants::default()).unwrap_err();
        assert!(e.to_string().contains("no rows"));
    }
}
