use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::noise::NoiseSource;
use super::pid::{pid_step, PidGains, PidState};
use super::plant::{chain_plant_step, ChainPlant};
use crate::Result;

/// Speed loops of both chains plus the cross-coupling that pulls their
/// speeds together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SyncGains {
    pub chain: PidGains,
    /// Correction per m/s of speed difference, subtracted from the faster
    /// chain's command and added to the slower one's.
    pub cross_coupling: f64,
}

impl Default for SyncGains {
    fn default() -> Self {
        Self { chain: PidGains::default(), cross_coupling: 0.5 }
    }
}

/// Controller state of both chains.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DualChain {
    pub v_left: f64,
    pub v_right: f64,
    pid_left: PidState,
    pid_right: PidState,
}

impl DualChain {
    /// Advances both chains by one sample toward the common reference.
    /// `noise` is the (left, right) plant disturbance for this step.
    pub fn step(&mut self, reference: f64, gains: &SyncGains, plants: &[ChainPlant; 2], dt: f64, noise: (f64, f64)) {
        let (pl, ul) = pid_step(self.pid_left, &gains.chain, reference, self.v_left, dt);
        let (pr, ur) = pid_step(self.pid_right, &gains.chain, reference, self.v_right, dt);
        self.pid_left = pl;
        self.pid_right = pr;
        let sync = gains.cross_coupling * (self.v_left - self.v_right);
        let lim = |u: f64| u.clamp(gains.chain.output_min, gains.chain.output_max);
        let (cmd_l, cmd_r) = (lim(ul - sync), lim(ur + sync));
        self.v_left = chain_plant_step(self.v_left, cmd_l, &plants[0], dt, noise.0);
        self.v_right = chain_plant_step(self.v_right, cmd_r, &plants[1], dt, noise.1);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SyncRecord {
    pub t: f64,
    pub reference: f64,
    pub v_left: f64,
    pub v_right: f64,
    pub sync_error: f64,
}

/// Speed trace of a reference-step experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SyncTrace {
    pub dt: f64,
    pub steps_per_ref: usize,
    pub records: Vec<SyncRecord>,
}

pub const SYNC_TRACE_HEADER: &str = "t,ref,vL,vR,sync_err";

impl SyncTrace {
    /// Records belonging to reference segment `i`.
    pub fn segment(&self, i: usize) -> &[SyncRecord] {
        let start = i * self.steps_per_ref;
        &self.records[start..(start + self.steps_per_ref).min(self.records.len())]
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SYNC_TRACE_HEADER.split(','))?;
        for r in &self.records {
            w.write_record([
                r.t.to_string(),
                r.reference.to_string(),
                r.v_left.to_string(),
                r.v_right.to_string(),
                r.sync_error.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Drives both chains from rest through each reference speed in turn,
/// holding each for `duration_per_ref` seconds.
pub fn dual_chain_sync_sim(
    refs: &[f64],
    duration_per_ref: f64,
    gains: &SyncGains,
    plants: &[ChainPlant; 2],
    dt: f64,
    seed: u64,
) -> SyncTrace {
    let steps_per_ref = (duration_per_ref / dt).round().max(1.0) as usize;
    let mut noise = NoiseSource::new(ChaCha8Rng::seed_from_u64(seed));
    let mut chains = DualChain::default();
    let mut records = Vec::with_capacity(refs.len() * steps_per_ref);
    let mut step = 0u64;
    for &reference in refs {
        for _ in 0..steps_per_ref {
            let n = (noise.gaussian(plants[0].noise_sigma), noise.gaussian(plants[1].noise_sigma));
            chains.step(reference, gains, plants, dt, n);
            step += 1;
            records.push(SyncRecord {
                t: step as f64 * dt,
                reference,
                v_left: chains.v_left,
                v_right: chains.v_right,
                sync_error: chains.v_left - chains.v_right,
            });
        }
    }
    SyncTrace { dt, steps_per_ref, records }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settled(trace: &SyncTrace, refs: &[f64]) -> bool {
        refs.iter().enumerate().all(|(i, &r)| {
            let seg = trace.segment(i);
            let tail = &seg[seg.len() - seg.len() / 5..];
            tail.iter().all(|s| (s.v_left - r).abs() < 0.02 * r && (s.v_right - r).abs() < 0.02 * r)
        })
    }

    #[test]
    fn default_gains_settle() {
        let refs = [0.10, 0.20, 0.30];
        let plants = [ChainPlant::default(); 2];
        let trace = dual_chain_sync_sim(&refs, 5.0, &SyncGains::default(), &plants, 0.1, 1);
        assert!(settled(&trace, &refs));
        assert!(trace.records.iter().all(|r| r.v_left == r.v_right));
    }

    #[test]
    fn slower_chain_catches_up() {
        let refs = [0.2];
        let slow = ChainPlant { time_constant: 0.6, ..ChainPlant::default() };
        let plants = [ChainPlant::default(), slow];
        let trace = dual_chain_sync_sim(&refs, 10.0, &SyncGains::default(), &plants, 0.1, 1);
        let max_err = trace.records.iter().map(|r| r.sync_error.abs()).fold(0.0, f64::max);
        assert!(max_err < 0.1, "{max_err}");
        assert!(trace.records.last().unwrap().sync_error.abs() < 1e-6);
    }

    #[test]
    fn noisy_runs_stay_in_speed_bounds() {
        let plants = [ChainPlant { noise_sigma: 0.01, ..ChainPlant::default() }; 2];
        let trace = dual_chain_sync_sim(&[0.34, 0.1], 5.0, &SyncGains::default(), &plants, 0.1, 9);
        assert!(trace.records.iter().all(|r| (0.0..=0.35).contains(&r.v_left) && (0.0..=0.35).contains(&r.v_right)));
    }
}
