//! Command-line front end.
//!
//! Exit codes: 0 success, 1 configuration or input error, 2 a design
//! criterion failed, 3 a simulated mission hit a failure event.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::adhesion::read_pull_tests_file;
use crate::config::{load_document, Document};
use crate::control_sim::{run_mission, MissionScript};
use crate::envelope::{sweep, write_envelope, EnvelopeGrid};
use crate::mechanism::{slider_branch, travel_radius_table, write_travel_table, RadiusVariant};
use crate::model::{weight, SurfaceSpec};
use crate::report::{assess_pull_tests, render_mechanism, render_mission, render_pull_tests, render_stability, Units};
use crate::stability::assess;
use crate::units::{parse_quantity, Dimension};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_ANALYSIS_FAIL: i32 = 2;
pub const EXIT_SIM_FAILURE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "magclimb", version, about = "Design checks and simulation for magnet-adhesion climbing robots")]
pub struct Cli {
    /// Robot/analysis/control configuration (TOML). Defaults to the built-in design.
    #[arg(long, global = true, env = "MAGCLIMB_CONFIG")]
    pub config: Option<PathBuf>,

    /// Directory for CSV outputs. Without it, tables go to stdout and the
    /// simulation trace to ./trace.csv.
    #[arg(long, global = true, env = "MAGCLIMB_OUT")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, env = "MAGCLIMB_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Present forces in kgf and torques in kg.cm.
    #[arg(long = "paper-units", visible_alias = "gravitational-units", global = true, env = "MAGCLIMB_PAPER_UNITS")]
    pub gravitational_units: bool,

    /// Contact-radius formula: derivation or printed.
    #[arg(long, global = true, env = "MAGCLIMB_RADIUS_VARIANT")]
    pub radius_variant: Option<RadiusVariant>,

    /// Gravitational acceleration in m/s^2 (overrides the config).
    #[arg(long, global = true, env = "MAGCLIMB_G")]
    pub g: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every stability and torque criterion on one surface.
    Analyze {
        /// TOML file whose [surface] section replaces the config's.
        #[arg(long)]
        surface: Option<PathBuf>,
    },
    /// Sweep the sliding requirement over inclination and friction.
    Envelope(EnvelopeArgs),
    /// Tabulate feed-screw travel against linkage angle and contact radius.
    Mechanism {
        #[arg(long, default_value_t = 16)]
        steps: usize,
    },
    /// Run a mission and write its trace.
    Simulate {
        /// TOML file whose [mission] section replaces the config's.
        #[arg(long)]
        mission: Option<PathBuf>,
    },
    /// Convert pull-test scale readings to adhesion and compare with the requirement.
    Pulltest {
        /// CSV with columns surface,diameter_mm,scale_kg.
        dataset: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct EnvelopeArgs {
    #[arg(long, default_value_t = 20)]
    pub steps: usize,
    /// Lower inclination, e.g. "0 deg". 0 starts the grid one step above 0.
    #[arg(long)]
    pub phi_min: Option<String>,
    #[arg(long)]
    pub phi_max: Option<String>,
    #[arg(long)]
    pub mu_min: Option<f64>,
    #[arg(long)]
    pub mu_max: Option<f64>,
    /// TOML file whose [surface] sets the adhesion condition (coating, curvature).
    #[arg(long)]
    pub surface: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_CONFIG
        }
    }
}

fn load(cli: &Cli) -> crate::Result<Document> {
    let mut doc = match &cli.config {
        Some(path) => load_document(path)?,
        None => Document::default(),
    };
    if let Some(g) = cli.g {
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::Config { path: "--g".into(), message: format!("g must be positive, got {g}") });
        }
        doc.constants.g = g;
    }
    if let Some(v) = cli.radius_variant {
        doc.sim.radius_variant = v;
    }
    Ok(doc)
}

fn surface_from(path: Option<&Path>, doc: &Document) -> crate::Result<SurfaceSpec> {
    if let Some(p) = path {
        return load_document(p)?
            .surface
            .ok_or_else(|| Error::Config { path: p.display().to_string(), message: "no [surface] section".into() });
    }
    Ok(doc.surface.unwrap_or_else(|| SurfaceSpec::vertical_flat(doc.analysis.assess.mu_min)))
}

fn create(dir: &Path, name: &str) -> crate::Result<BufWriter<File>> {
    std::fs::create_dir_all(dir)?;
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> crate::Result<i32> {
    let doc = load(cli)?;
    let c = doc.constants;
    let units = if cli.gravitational_units { Units::Gravitational } else { Units::Si };
    match &cli.command {
        Command::Analyze { surface } => {
            let surface = surface_from(surface.as_deref(), &doc)?;
            let report = assess(&doc.robot, &surface, &c, &doc.analysis.assess)?;
            write!(out, "{}", render_stability(&report, &surface, &doc.analysis.assess, &c, units))?;
            Ok(if report.all_pass() { EXIT_OK } else { EXIT_ANALYSIS_FAIL })
        }
        Command::Envelope(a) => {
            let angle = |s: &Option<String>, default: f64, name: &str| -> crate::Result<f64> {
                s.as_deref().map_or(Ok(default), |t| {
                    parse_quantity(t, Dimension::Angle).map_err(|m| Error::Config { path: name.into(), message: m })
                })
            };
            let grid = EnvelopeGrid {
                phi_min: angle(&a.phi_min, doc.analysis.phi_min, "--phi-min")?,
                phi_max: angle(&a.phi_max, doc.analysis.phi_max, "--phi-max")?,
                mu_min: a.mu_min.unwrap_or(doc.analysis.assess.mu_min),
                mu_max: a.mu_max.unwrap_or(doc.analysis.mu_max),
                steps: a.steps,
            };
            let surface = surface_from(a.surface.as_deref(), &doc)?;
            let rows = sweep(&doc.robot, &surface, &c, &grid)?;
            match &cli.out {
                Some(dir) => {
                    write_envelope(&rows, create(dir, "envelope.csv")?)?;
                    let passing = rows.iter().filter(|r| r.pass()).count();
                    writeln!(
                        out,
                        "envelope: {} rows, {passing} passing -> {}",
                        rows.len(),
                        dir.join("envelope.csv").display()
                    )?;
                }
                None => write_envelope(&rows, &mut *out)?,
            }
            Ok(EXIT_OK)
        }
        Command::Mechanism { steps } => {
            let p = &doc.robot.linkage;
            let rows = travel_radius_table(p, *steps, doc.sim.radius_variant)?;
            match &cli.out {
                Some(dir) => {
                    write_travel_table(&rows, create(dir, "mechanism.csv")?)?;
                    write!(out, "{}", render_mechanism(&rows, &slider_branch(p)))?;
                }
                None => write_travel_table(&rows, &mut *out)?,
            }
            Ok(EXIT_OK)
        }
        Command::Simulate { mission } => {
            let script = match mission {
                Some(p) => load_document(p)?.mission.ok_or_else(|| Error::Config {
                    path: p.display().to_string(),
                    message: "no [mission] section".into(),
                })?,
                None => doc.mission.clone().unwrap_or_else(default_mission),
            };
            let speed_max = doc.sim.plants.iter().map(|p| p.speed_max).fold(f64::INFINITY, f64::min);
            script.validate(speed_max).into_result()?;
            let trace = run_mission(&doc.robot, &script, &c, cli.seed, &doc.sim)?;
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
            trace.write_csv(create(&dir, "trace.csv")?)?;
            write!(out, "{}", render_mission(&trace.summary()))?;
            writeln!(out, "trace: {}", dir.join("trace.csv").display())?;
            Ok(if trace.has_failure() { EXIT_SIM_FAILURE } else { EXIT_OK })
        }
        Command::Pulltest { dataset } => {
            let data = read_pull_tests_file(dataset, weight(&doc.robot, &c), &c).map_err(|e| match e {
                Error::Io(io) => Error::Config { path: dataset.display().to_string(), message: io.to_string() },
                other => other,
            })?;
            let assessment = assess_pull_tests(&data, &doc.robot, &c, &doc.analysis.assess);
            write!(out, "{}", render_pull_tests(&data, assessment.as_ref(), &doc.robot, &c, units))?;
            Ok(match assessment {
                None => EXIT_CONFIG,
                Some(a) if a.adheres => EXIT_OK,
                Some(_) => EXIT_ANALYSIS_FAIL,
            })
        }
    }
}

/// One metre straight up a vertical non-coated plate at 0.2 m/s.
pub fn default_mission() -> MissionScript {
    MissionScript::single(SurfaceSpec::vertical_flat(crate::stability::MU_MIN_DEFAULT), 1.0, 0.2)
}
