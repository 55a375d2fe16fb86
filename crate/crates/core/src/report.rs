//! Plain-text reports.
//!
//! Tables show six significant digits; CSV outputs elsewhere keep full
//! precision. [`Units::Gravitational`] presents forces in kgf and torques in kg·cm
//! using the run's `g`. It never changes a verdict.

use std::fmt::Write as _;

use crate::adhesion::{summarize, PullSummary, PullTestDataset};
use crate::control_sim::{MissionSummary, Outcome};
use crate::mechanism::{SliderBranch, TravelRow};
use crate::model::{weight, Constants, Curvature, RobotSpec, SurfaceCondition, SurfaceSpec};
use crate::stability::{per_block_required, AssessOptions, Criterion, StabilityReport};
use crate::units::{newton_metre_to_kg_cm, newton_to_kgf};

/// Formats `x` with six significant digits.
pub fn sig6(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new digit (9.999995 → 10.00000).
    if s.trim_start_matches('-').replace('.', "").trim_start_matches('0').len() > 6 && decimals > 0 {
        let d = decimals - 1;
        return format!("{x:.d$}");
    }
    s
}

/// Presentation units for force and torque columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Units {
    #[default]
    Si,
    Gravitational,
}

impl Units {
    pub fn force(self, newtons: f64, c: &Constants) -> f64 {
        match self {
            Units::Si => newtons,
            Units::Gravitational => newton_to_kgf(newtons, c.g),
        }
    }

    pub fn torque(self, newton_metres: f64, c: &Constants) -> f64 {
        match self {
            Units::Si => newton_metres,
            Units::Gravitational => newton_metre_to_kg_cm(newton_metres, c.g),
        }
    }

    pub fn force_unit(self) -> &'static str {
        match self {
            Units::Si => "N",
            Units::Gravitational => "kgf",
        }
    }

    pub fn torque_unit(self) -> &'static str {
        match self {
            Units::Si => "N.m",
            Units::Gravitational => "kg.cm",
        }
    }
}

/// A left-aligned first column followed by right-aligned columns.
#[derive(Debug, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    pub fn render(&self) -> String {
        let cols = self.header.len();
        let mut width = vec![0; cols];
        for r in std::iter::once(&self.header).chain(&self.rows) {
            for (i, cell) in r.iter().enumerate().take(cols) {
                width[i] = width[i].max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, r: &[String]| {
            let mut s = String::new();
            for (i, w) in width.iter().enumerate() {
                let cell = r.get(i).map(String::as_str).unwrap_or("");
                if i == 0 {
                    let _ = write!(s, "{cell:<w$}");
                } else {
                    let _ = write!(s, "  {cell:>w$}");
                }
            }
            out.push_str(s.trim_end());
            out.push('\n');
        };
        line(&mut out, &self.header);
        let total: usize = width.iter().sum::<usize>() + 2 * cols.saturating_sub(1);
        out.push_str(&"-".repeat(total));
        out.push('\n');
        for r in &self.rows {
            line(&mut out, r);
        }
        out
    }
}

fn describe_surface(s: &SurfaceSpec) -> String {
    let curvature = match s.curvature {
        Curvature::Flat => "flat".to_owned(),
        Curvature::Radius(r) => format!("radius {} m", sig6(r)),
    };
    format!(
        "inclination {} deg, {}, {}, mu {}, {}",
        sig6(s.inclination.to_degrees()),
        s.side,
        curvature,
        sig6(s.mu),
        if s.coated { "coated" } else { "non-coated" }
    )
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Stability report for one robot on one surface.
pub fn render_stability(
    report: &StabilityReport,
    surface: &SurfaceSpec,
    opts: &AssessOptions,
    c: &Constants,
    units: Units,
) -> String {
    let fu = units.force_unit();
    let tu = units.torque_unit();
    let f = |x: f64| sig6(units.force(x, c));
    let t = |x: f64| sig6(units.torque(x, c));
    let mut out = String::new();
    let _ = writeln!(out, "surface: {}", describe_surface(surface));
    let _ = writeln!(out, "g = {} m/s^2, weight P = {} {fu}", sig6(c.g), f(report.weight));
    let a = &report.adhesion_available;
    let _ = writeln!(
        out,
        "adhesion: {} {fu} per block x {} blocks = {} {fu}",
        f(a.per_block),
        a.contacting_blocks,
        f(a.total)
    );
    if matches!(surface.condition(), SurfaceCondition::CoatedCurved { .. }) {
        let _ = writeln!(out, "note: curved-surface factor is interpolated from a calibrated table");
    }
    let b = &report.sliding_bounds;
    let _ = writeln!(
        out,
        "worst-case sliding (mu_min {}): endpoint bound {} {fu}, analytic bound {} {fu} at phi {} deg; verdict uses {:?}",
        sig6(opts.mu_min),
        f(b.endpoint_bound),
        f(b.analytic_bound),
        sig6(b.argmax_phi.to_degrees()),
        opts.sliding_bound
    );
    let _ = writeln!(
        out,
        "per-block requirement: {} {fu} (turn-over share {} {fu})",
        f(report.per_block_required),
        f(report.turnover_required_per_block)
    );
    out.push('\n');

    let mut table = Table::new(["criterion", "required", "available", "unit", "margin", "verdict"]);
    for r in &report.criteria {
        let (req, avail, unit) = if r.criterion.is_torque() {
            (t(r.required), t(r.available), tu)
        } else {
            (f(r.required), f(r.available), fu)
        };
        table.row([
            r.criterion.name().to_owned(),
            req,
            avail,
            unit.to_owned(),
            sig6(r.margin),
            verdict(r.pass).to_owned(),
        ]);
    }
    out.push_str(&table.render());
    let failures: Vec<_> = report.failures().map(Criterion::name).collect();
    if failures.is_empty() {
        out.push_str("overall: PASS\n");
    } else {
        let _ = writeln!(out, "overall: FAIL ({})", failures.join(", "));
    }
    out
}

/// Measured pull-test forces compared with the adhesion requirement.
#[derive(Debug, Clone, PartialEq)]
pub struct PullTestAssessment {
    pub summary: PullSummary,
    pub contacting_blocks: u32,
    /// Per-block requirement expressed in kgf.
    pub per_block_kgf: f64,
    /// `n × per_block_kgf`, compared numerically with measured newtons.
    /// The reference design check reads its requirement this way (about 48).
    pub gravitational_requirement: f64,
    /// `n × per-block requirement` in newtons.
    pub consistent_requirement: f64,
    /// Verdict against [`Self::gravitational_requirement`].
    pub adheres: bool,
    pub consistent_met: bool,
}

/// Compares a dataset with the robot's requirement. `None` if no row converted.
pub fn assess_pull_tests(
    dataset: &PullTestDataset,
    spec: &RobotSpec,
    c: &Constants,
    opts: &AssessOptions,
) -> Option<PullTestAssessment> {
    let summary = summarize(&dataset.samples)?;
    let n = spec.contacting_blocks();
    let per_block = per_block_required(spec, c, opts.mu_min, opts.sliding_bound);
    let per_block_kgf = newton_to_kgf(per_block, c.g);
    let gravitational_requirement = n as f64 * per_block_kgf;
    let consistent_requirement = n as f64 * per_block;
    Some(PullTestAssessment {
        summary,
        contacting_blocks: n,
        per_block_kgf,
        gravitational_requirement,
        consistent_requirement,
        adheres: summary.min > gravitational_requirement,
        consistent_met: summary.min > consistent_requirement,
    })
}

fn condition_label(c: SurfaceCondition) -> String {
    match c {
        SurfaceCondition::NonCoatedFlat => "non_coated_flat".into(),
        SurfaceCondition::CoatedFlat => "coated_flat".into(),
        SurfaceCondition::CoatedCurved { diameter, sign } => {
            format!(
                "coated_{} d={} mm",
                match sign {
                    crate::model::CurveSign::Convex => "convex",
                    crate::model::CurveSign::Concave => "concave",
                },
                sig6(diameter * 1000.0)
            )
        }
    }
}

pub fn render_pull_tests(
    dataset: &PullTestDataset,
    assessment: Option<&PullTestAssessment>,
    spec: &RobotSpec,
    c: &Constants,
    units: Units,
) -> String {
    let fu = units.force_unit();
    let mut out = String::new();
    let _ = writeln!(out, "robot weight {} {fu}, g = {} m/s^2", sig6(units.force(weight(spec, c), c)), sig6(c.g));
    let mut table = Table::new(["row", "surface", "scale_kg", "measured_force_N"]);
    for (i, s) in dataset.samples.iter().enumerate() {
        table.row([(i + 1).to_string(), condition_label(s.surface), sig6(s.scale_reading), sig6(s.measured_force)]);
    }
    out.push_str(&table.render());
    for e in &dataset.errors {
        let _ = writeln!(out, "row {}: error: {}", e.row, e.message);
    }
    let Some(a) = assessment else {
        out.push_str("no usable rows\n");
        return out;
    };
    let _ = writeln!(
        out,
        "measured: {} rows, min {} N, mean {} N",
        a.summary.count,
        sig6(a.summary.min),
        sig6(a.summary.mean)
    );
    let _ = writeln!(
        out,
        "required: {} blocks x {} = {} (per-block requirement in kgf, compared as N)",
        a.contacting_blocks,
        sig6(a.per_block_kgf),
        sig6(a.gravitational_requirement)
    );
    let _ = writeln!(out, "verdict: {}", if a.adheres { "adheres well" } else { "insufficient adhesion" });
    let _ = writeln!(
        out,
        "unit-consistent requirement: {} N ({})",
        sig6(a.consistent_requirement),
        if a.consistent_met { "MET" } else { "NOT MET" }
    );
    out
}

/// Summary of a mechanism sweep: monotonicity and achieved radius range.
pub fn render_mechanism(rows: &[TravelRow], branch: &SliderBranch) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "slider branch: alpha [{}, {}] deg, slider [{}, {}] m",
        sig6(branch.alpha_min.to_degrees()),
        sig6(branch.alpha_max.to_degrees()),
        sig6(branch.y_min),
        sig6(branch.y_max)
    );
    let inside: Vec<_> = rows.iter().filter(|r| r.in_domain).collect();
    let _ = writeln!(out, "rows: {} ({} inside the branch)", rows.len(), inside.len());
    let alphas: Vec<f64> = inside.iter().filter_map(|r| r.alpha).collect();
    let monotone = alphas.windows(2).all(|w| w[1] <= w[0]) || alphas.windows(2).all(|w| w[1] >= w[0]);
    let _ = writeln!(out, "alpha monotone in travel: {}", if monotone { "yes" } else { "no" });
    let radii: Vec<f64> = inside
        .iter()
        .filter_map(|r| match r.radius {
            Some(Curvature::Radius(x)) => Some(x),
            _ => None,
        })
        .collect();
    let flats = inside.iter().filter(|r| matches!(r.radius, Some(Curvature::Flat))).count();
    if let (Some(lo), Some(hi)) = (radii.iter().copied().reduce(f64::min), radii.iter().copied().reduce(f64::max)) {
        let _ = writeln!(out, "finite radius range: [{}, {}] m ({flats} rows flat)", sig6(lo), sig6(hi));
    } else {
        let _ = writeln!(out, "no finite radius ({flats} rows flat)");
    }
    out
}

pub fn render_mission(summary: &MissionSummary) -> String {
    let mut out = String::new();
    let outcome = match summary.outcome {
        Outcome::Completed => "completed".to_owned(),
        Outcome::Failure(e) => format!("failure ({})", e.as_str()),
        Outcome::CliffStop => "stopped at cliff".to_owned(),
        Outcome::TimedOut => "time budget exhausted".to_owned(),
    };
    let _ = writeln!(out, "outcome: {outcome}");
    let _ = writeln!(
        out,
        "steps {}, duration {} s, distance {} m, max sync error {} m/s",
        summary.steps,
        sig6(summary.duration),
        sig6(summary.distance),
        sig6(summary.max_sync_error)
    );
    if summary.events.is_empty() {
        out.push_str("events: none\n");
    } else {
        let mut table = Table::new(["t_s", "event"]);
        for (t, e) in &summary.events {
            table.row([sig6(*t), e.as_str().to_owned()]);
        }
        out.push_str(&table.render());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adhesion::read_pull_tests;
    use crate::model::reference_design;
    use crate::stability::assess;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(635.2), "635.200");
        assert_eq!(sig6(31.6522), "31.6522");
        assert_eq!(sig6(0.0299384), "0.0299384");
        assert_eq!(sig6(3.0232653), "3.02327");
        assert_eq!(sig6(9.9999996), "10.0000");
        assert_eq!(sig6(1.5e7), "1.50000e7");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(f64::INFINITY), "inf");
    }

    #[test]
    fn table_is_aligned() {
        let mut t = Table::new(["a", "bb"]);
        t.row(["long name", "1"]);
        let s = t.render();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines[0], "a          bb");
        assert_eq!(lines[2], "long name   1");
    }

    #[test]
    fn gravitational_units_do_not_change_verdicts() {
        let spec = reference_design();
        let c = Constants::with_g(9.8);
        let s = SurfaceSpec::vertical_flat(0.4);
        let opts = AssessOptions::default();
        let r = assess(&spec, &s, &c, &opts).unwrap();
        let si = render_stability(&r, &s, &opts, &c, Units::Si);
        let grav = render_stability(&r, &s, &opts, &c, Units::Gravitational);
        let verdicts = |t: &str| {
            t.lines()
                .filter(|l| l.ends_with("PASS") || l.ends_with("FAIL"))
                .map(|l| l[l.len() - 4..].to_owned())
                .collect::<Vec<_>>()
        };
        assert_eq!(verdicts(&si), verdicts(&grav));
        assert!(grav.contains("31.65"), "{grav}");
        assert!(grav.contains("kg.cm"));
    }

    #[test]
    fn pull_test_report_lines() {
        let spec = reference_design();
        let c = Constants::with_g(10.0);
        let csv = "surface,diameter_mm,scale_kg\nnon_coated_flat,,24\ncoated_flat,,1\nnon_coated_flat,,30\n";
        let ds = read_pull_tests(csv.as_bytes(), weight(&spec, &c), &c).unwrap();
        let a = assess_pull_tests(&ds, &spec, &c, &AssessOptions::default()).unwrap();
        assert_eq!(a.summary.min, 210.0);
        assert!((a.gravitational_requirement - 48.37).abs() < 0.01);
        assert!(a.adheres && !a.consistent_met);
        let text = render_pull_tests(&ds, Some(&a), &spec, &c, Units::Gravitational);
        assert!(text.contains("adheres well"));
        assert!(text.contains("row 2: error"), "{text}");
        assert!(text.contains("NOT MET"));
    }
}
