//! Sliding envelope over an inclination × friction grid.
//!
//! Each grid point is evaluated independently (in parallel); rows come back
//! sorted by (φ, μ, side) whatever the execution order was.

use std::io::Write;

use rayon::prelude::*;

use crate::adhesion::total_adhesion;
use crate::model::{weight, Constants, RobotSpec, Side, SurfaceSpec};
use crate::stability::{margin, sliding_required};
use crate::{Error, Result};

pub const ENVELOPE_HEADER: &str = "phi_deg,mu,side,required_N,available_N,margin,pass";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeGrid {
    /// Lower φ limit. When it is 0 the grid starts one step above it,
    /// since sliding is only defined for φ > 0.
    pub phi_min: f64,
    pub phi_max: f64,
    pub mu_min: f64,
    pub mu_max: f64,
    pub steps: usize,
}

impl Default for EnvelopeGrid {
    fn default() -> Self {
        Self {
            phi_min: 0.0,
            phi_max: std::f64::consts::FRAC_PI_2,
            mu_min: crate::stability::MU_MIN_DEFAULT,
            mu_max: crate::stability::MU_MAX_DEFAULT,
            steps: 20,
        }
    }
}

impl EnvelopeGrid {
    pub fn phis(&self) -> Vec<f64> {
        let n = self.steps;
        if self.phi_min == 0.0 {
            (1..=n).map(|i| self.phi_max * i as f64 / n as f64).collect()
        } else {
            linspace(self.phi_min, self.phi_max, n)
        }
    }

    pub fn mus(&self) -> Vec<f64> {
        linspace(self.mu_min, self.mu_max, self.steps)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeRow {
    pub phi: f64,
    pub mu: f64,
    pub side: Side,
    /// `(required, available)` in newtons, or the domain error text.
    pub forces: std::result::Result<(f64, f64), String>,
}

impl EnvelopeRow {
    pub fn margin(&self) -> Option<f64> {
        self.forces.as_ref().ok().map(|&(r, a)| margin(r, a))
    }

    pub fn pass(&self) -> bool {
        self.margin().is_some_and(|m| m > 0.0)
    }
}

/// Sweeps the sliding requirement against the adhesion available on
/// `surface` (its inclination, friction and side are replaced by the grid).
pub fn sweep(spec: &RobotSpec, surface: &SurfaceSpec, c: &Constants, grid: &EnvelopeGrid) -> Result<Vec<EnvelopeRow>> {
    if grid.steps < 2 {
        return Err(Error::Domain { stage: "envelope", message: format!("steps must be >= 2, got {}", grid.steps) });
    }
    let p = weight(spec, c);
    let available = total_adhesion(spec, surface).total;
    let points: Vec<(f64, f64, Side)> = grid
        .phis()
        .into_iter()
        .flat_map(|phi| grid.mus().into_iter().map(move |mu| (phi, mu)))
        .flat_map(|(phi, mu)| [Side::Top, Side::Underneath].map(|s| (phi, mu, s)))
        .collect();
    let mut rows: Vec<EnvelopeRow> = points
        .into_par_iter()
        .map(|(phi, mu, side)| EnvelopeRow {
            phi,
            mu,
            side,
            forces: sliding_required(p, phi, mu, side).map(|r| (r, available)).map_err(|e| e.to_string()),
        })
        .collect();
    rows.sort_by(|a, b| a.phi.total_cmp(&b.phi).then(a.mu.total_cmp(&b.mu)).then(a.side.cmp(&b.side)));
    Ok(rows)
}

/// Writes rows as CSV. Rows with a domain error leave the numeric fields
/// empty and put `error: <message>` in the pass column.
pub fn write_envelope<W: Write>(rows: &[EnvelopeRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ENVELOPE_HEADER.split(','))?;
    for r in rows {
        let phi = r.phi.to_degrees().to_string();
        let mu = r.mu.to_string();
        match &r.forces {
            Ok((req, avail)) => w.write_record([
                phi,
                mu,
                r.side.as_str().to_owned(),
                req.to_string(),
                avail.to_string(),
                margin(*req, *avail).to_string(),
                r.pass().to_string(),
            ])?,
            Err(msg) => w.write_record([
                phi,
                mu,
                r.side.as_str().to_owned(),
                String::new(),
                String::new(),
                String::new(),
                format!("error: {msg}"),
            ])?,
        }
    }
    w.flush()?;
    Ok(())
}
