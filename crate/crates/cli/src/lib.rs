//! Command-line front end for `dwt_core`.
//!
//! `run` never exits the process, which keeps every command testable
//! in-process. Exit codes: 0 success, 1 bad input, 2 numeric failure.

mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;

use dwt_core::aero::{self, RotorState};
use dwt_core::bearing::{self, BearingCase};
use dwt_core::fatigue::{self, MarinFactors, SnConstants};
use dwt_core::schedule::{
    self, Deployment, InstallationRecord, LifeSelector, Registry, ReportFormat, UsageProfile,
};
use dwt_core::structural::{self, BallastSpec, BladeSpec, Orientation};
use dwt_core::system::{self, LifeModel, SystemTopology};
use dwt_core::units::{Dimension, Quantity, Unit};
use dwt_core::weibull::{self, QuantilePoint, WeibullParams};
use dwt_core::{presets, ColumnSpec, Error, Material, RectSection, Result};

pub use output::{display_unit, sig6, Fields};

/// Unit system for bare numbers on input and for printed quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum UnitSystem {
    #[default]
    Si,
    Imperial,
}

/// Library operation → the subcommand that exposes it.
pub const OP_MAP: &[(&str, &str)] = &[
    ("fatigue::endurance_limit_unmodified", "fatigue endurance"),
    ("fatigue::marin_modified_endurance", "fatigue endurance"),
    ("fatigue::sn_constants", "fatigue sn"),
    ("fatigue::cycles_to_failure", "fatigue life"),
    ("fatigue::cycles_to_calendar", "fatigue life"),
    ("fatigue::fatigue_pipeline", "tower life"),
    ("structural::blade_root_bending_moment", "blade bending"),
    ("structural::rect_bending_stress", "blade bending"),
    ("structural::rect_torsion_max_shear", "blade torsion"),
    ("structural::secant_deflection", "tower column"),
    ("structural::euler_stress", "tower column"),
    ("structural::secant_allowable_load", "tower column"),
    ("structural::ballast_required_weight", "ballast"),
    ("structural::ballast_height_for_weight", "ballast"),
    ("aero::tip_speed_ratio", "aero torque"),
    ("aero::torque_coefficient", "aero torque"),
    ("aero::rotor_torque", "aero torque"),
    ("aero::rotor_power", "aero torque"),
    ("aero::power_coefficient_from_power", "aero torque"),
    ("aero::ducted_betz_limit", "aero betz"),
    ("aero::torque_row", "aero sweep"),
    ("bearing::basic_dynamic_axial_rating", "bearing life"),
    ("bearing::oscillating_rating", "bearing life"),
    ("bearing::equivalent_axial_load", "bearing life"),
    ("bearing::l10_life", "bearing life"),
    ("bearing::modified_life", "bearing life"),
    ("bearing::raceway_stress_cycles", "bearing life"),
    ("bearing::bearing_calendar_life", "bearing life"),
    ("bearing::bearing_life", "bearing life"),
    ("weibull::fit_two_quantiles", "weibull fit"),
    ("weibull::failure_regime", "weibull fit"),
    ("weibull::cdf", "weibull cdf"),
    ("weibull::survival", "weibull cdf"),
    ("weibull::pdf", "weibull cdf"),
    ("weibull::quantile_bp", "weibull quantile"),
    ("weibull::hazard", "weibull hazard"),
    ("weibull::cumulative_hazard", "weibull hazard"),
    ("weibull::average_failure_rate", "weibull hazard"),
    ("weibull::sample", "weibull sample"),
    ("system::monte_carlo_mttf", "system mttf"),
    ("system::system_reliability_at", "system reliability"),
    ("system::series_reliability", "system reliability"),
    ("system::parallel_reliability", "system reliability"),
    ("system::system_service_life", "system life"),
    ("system::expected_repairs", "system repairs"),
    ("system::poisson_pmf", "system repairs"),
    ("schedule::load_registry", "schedule report"),
    ("schedule::emit_registry_report", "schedule report"),
    ("schedule::generate_schedule", "schedule generate"),
    ("schedule::emit_schedule_report", "schedule generate"),
    ("schedule::remaining_service_life", "schedule rul"),
    ("units::convert", "convert"),
];

/// Every leaf subcommand path, in help order.
pub fn subcommand_paths() -> Vec<String> {
    use clap::CommandFactory;
    fn walk(cmd: &clap::Command, prefix: &str, out: &mut Vec<String>) {
        for sub in cmd.get_subcommands().filter(|s| s.get_name() != "help") {
            let path = if prefix.is_empty() {
                sub.get_name().to_string()
            } else {
                format!("{prefix} {}", sub.get_name())
            };
            if sub.has_subcommands() {
                walk(sub, &path, out);
            } else {
                out.push(path);
            }
        }
    }
    let mut out = Vec::new();
    walk(&Cli::command(), "", &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: if e.is_numeric() { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "dwt",
    version,
    about = "Reliability, life and maintenance calculations for a small ducted wind turbine"
)]
struct Cli {
    #[command(flatten)]
    g: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Global {
    /// Unit system for bare input numbers and printed quantities.
    #[arg(long, global = true, value_enum, default_value_t = UnitSystem::Si)]
    units: UnitSystem,
    /// Print JSON (always SI) instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    /// JSON input document for the subcommand.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report format: csv or markdown.
    #[arg(long, global = true, default_value = "csv")]
    format: String,
    /// Component registry JSON (falls back to $DWT_REGISTRY, then the built-in one).
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Endurance limit, S-N constants and cycle life.
    #[command(subcommand)]
    Fatigue(FatigueCmd),
    /// Blade root stresses and fatigue life.
    #[command(subcommand)]
    Blade(BladeCmd),
    /// Tower column check and fatigue life.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Foundation ballast sizing.
    Ballast(BallastArgs),
    /// Rotor torque and power.
    #[command(subcommand)]
    Aero(AeroCmd),
    /// Slewing (yaw) bearing life.
    #[command(subcommand)]
    Bearing(BearingCmd),
    /// Weibull life distribution.
    #[command(subcommand)]
    Weibull(WeibullCmd),
    /// System reliability.
    #[command(subcommand)]
    System(SystemCmd),
    /// Preventive maintenance schedule.
    #[command(subcommand)]
    Schedule(ScheduleCmd),
    /// Convert a quantity, e.g. `convert 45ksi MPa`.
    Convert { value: String, to: String },
}

#[derive(Subcommand, Debug)]
enum FatigueCmd {
    Endurance {
        /// Ultimate tensile strength.
        #[arg(long)]
        sut: Option<String>,
        /// Material and Marin preset.
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        /// Marin preset name: tower, blade or unity.
        #[arg(long)]
        marin: Option<String>,
        /// Explicit Marin factors ka,kb,kc,kd,ke,kf.
        #[arg(long, value_delimiter = ',', num_args = 6)]
        k: Option<Vec<f64>>,
    },
    Sn {
        #[arg(long)]
        sut: String,
        /// Modified endurance limit.
        #[arg(long)]
        se: String,
        #[arg(long, default_value_t = presets::FATIGUE_STRENGTH_FRACTION)]
        f: f64,
    },
    Life {
        /// Fully reversed stress amplitude.
        #[arg(long)]
        sigma: String,
        /// S-N coefficient (stress); or pass the `fatigue sn --json` output via --config.
        #[arg(long)]
        a: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        b: Option<f64>,
        #[arg(long, default_value_t = presets::FATIGUE_STRENGTH_FRACTION)]
        f: f64,
        #[arg(long)]
        cycles_per_day: Option<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    Tower,
    Blade,
}

#[derive(Args, Debug)]
struct SectionArgs {
    #[arg(long)]
    width: Option<String>,
    #[arg(long)]
    thickness: Option<String>,
    #[arg(long)]
    span: Option<String>,
}

#[derive(Subcommand, Debug)]
enum BladeCmd {
    Bending {
        #[command(flatten)]
        section: SectionArgs,
        /// Blade mass, kg.
        #[arg(long)]
        mass: Option<f64>,
        /// Mount angle from flat, degrees.
        #[arg(long)]
        phi: Option<f64>,
    },
    Torsion {
        #[arg(long)]
        torque: String,
        #[command(flatten)]
        section: SectionArgs,
    },
    Life {
        #[arg(long, default_value_t = presets::ROTOR_CYCLES_PER_DAY)]
        cycles_per_day: f64,
        #[arg(long, value_enum, default_value_t = OrientationArg::Flat)]
        orientation: OrientationArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    Flat,
    Upright,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Flat => Orientation::Flat,
            OrientationArg::Upright => Orientation::Upright,
        }
    }
}

#[derive(Subcommand, Debug)]
enum TowerCmd {
    Column {
        #[arg(long)]
        load: Option<String>,
        #[arg(long)]
        eccentricity: Option<String>,
        /// Distance from the neutral axis to the extreme fibre.
        #[arg(long)]
        centroid: Option<String>,
        #[arg(long)]
        gyration: Option<String>,
        #[arg(long)]
        height: Option<String>,
        /// Cross-section area, m².
        #[arg(long)]
        area: Option<f64>,
        /// Second moment of area, m⁴.
        #[arg(long)]
        inertia: Option<f64>,
        #[arg(long, default_value = "200GPa")]
        modulus: String,
        /// Compressive yield strength.
        #[arg(long, default_value = "36ksi")]
        yield_strength: String,
        #[arg(long, default_value = "58ksi")]
        sut: String,
    },
    Life {
        #[arg(long)]
        sigma: Option<String>,
        #[arg(long, default_value_t = presets::TOWER_CYCLES_PER_DAY)]
        cycles_per_day: f64,
    },
}

#[derive(Args, Debug)]
struct BallastArgs {
    #[arg(long)]
    thrust: Option<String>,
    #[arg(long)]
    nacelle_diameter: Option<String>,
    #[arg(long, default_value_t = 1.5)]
    safety_factor: f64,
    #[arg(long)]
    base_diameter: Option<String>,
    /// Base area, m²; defaults to the circle of the base diameter.
    #[arg(long)]
    base_area: Option<f64>,
    /// Ballast density, kg/m³.
    #[arg(long, default_value_t = 1600.0)]
    density: f64,
}

#[derive(Args, Debug)]
struct RotorArgs {
    #[arg(long)]
    radius: Option<String>,
    #[arg(long)]
    wind: Option<String>,
    /// Air density, kg/m³.
    #[arg(long)]
    air_density: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum AeroCmd {
    Torque {
        #[command(flatten)]
        rotor: RotorArgs,
        #[arg(long)]
        rpm: Option<f64>,
        #[arg(long)]
        cp: Option<f64>,
    },
    Betz {
        /// Axial induction factor at the duct inlet.
        #[arg(long)]
        a0: f64,
    },
    /// Torque table over (C_p, rpm) points.
    Sweep {
        #[command(flatten)]
        rotor: RotorArgs,
        /// Points as cp:rpm, comma separated.
        #[arg(long, value_delimiter = ',')]
        points: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum BearingCmd {
    /// Reads a bearing case JSON via --config; defaults to the reference yaw bearing.
    Life,
}

#[derive(Args, Debug)]
struct WeibullArgs {
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum WeibullCmd {
    Fit {
        #[arg(long)]
        p1: f64,
        #[arg(long)]
        t1: f64,
        #[arg(long)]
        p2: f64,
        #[arg(long)]
        t2: f64,
    },
    Cdf {
        #[command(flatten)]
        w: WeibullArgs,
        #[arg(long)]
        t: f64,
    },
    Quantile {
        #[command(flatten)]
        w: WeibullArgs,
        /// Percent failed.
        #[arg(long)]
        p: f64,
    },
    Hazard {
        #[command(flatten)]
        w: WeibullArgs,
        #[arg(long)]
        t: f64,
        /// End of an interval for the average failure rate.
        #[arg(long)]
        until: Option<f64>,
    },
    Sample {
        #[command(flatten)]
        w: WeibullArgs,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SystemCmd {
    /// Monte Carlo MTTF of the --config topology (default: the lifed subsystems in series).
    Mttf,
    Reliability {
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        /// Block reliabilities in series, comma separated.
        #[arg(long, value_delimiter = ',', conflicts_with = "parallel")]
        series: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        parallel: Option<Vec<f64>>,
    },
    /// Shortest component life from a {id: years} map.
    Life,
    Repairs {
        /// Failures per year.
        #[arg(long)]
        rate: f64,
        #[arg(long)]
        horizon: f64,
        /// Probability of exactly this many repairs.
        #[arg(long)]
        k: Option<i64>,
    },
}

#[derive(Subcommand, Debug)]
enum ScheduleCmd {
    Generate {
        #[arg(long)]
        install: Option<NaiveDate>,
        #[arg(long, default_value_t = 1.0)]
        horizon: f64,
    },
    Report,
    Rul {
        #[arg(long)]
        component: String,
        #[arg(long)]
        elapsed: f64,
        #[arg(long, value_enum, default_value_t = LifeArg::Service)]
        life: LifeArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LifeArg {
    Service,
    Rated,
}

struct Ctx<'a> {
    g: &'a Global,
}

impl Ctx<'_> {
    /// Bare numbers take the default unit of the selected system.
    fn q(&self, s: &str, dim: Dimension) -> Result<f64> {
        let si = match s.trim().parse::<f64>() {
            Ok(v) => v * display_unit(self.g.units, dim).si_factor(),
            Err(_) => {
                let q: Quantity = s.parse()?;
                if q.dimension() != dim {
                    return Err(Error::validation(format!(
                        "`{s}` has the wrong dimension (expected {dim:?})"
                    )));
                }
                q.si()
            }
        };
        if !si.is_finite() {
            return Err(Error::validation(format!("`{s}` is not finite")));
        }
        Ok(si)
    }

    fn q_or(&self, s: &Option<String>, dim: Dimension, default: f64) -> Result<f64> {
        s.as_deref().map_or(Ok(default), |s| self.q(s, dim))
    }

    fn config<T: DeserializeOwned>(&self) -> Result<Option<T>> {
        self.g.config.as_deref().map(read_json).transpose()
    }

    fn emit(&self, f: Fields) -> Result<String> {
        if self.g.json {
            to_json(&f.json())
        } else {
            Ok(f.text(self.g.units))
        }
    }

    fn registry(&self) -> Result<Registry> {
        let path = self
            .g
            .registry
            .clone()
            .or_else(|| std::env::var_os("DWT_REGISTRY").map(PathBuf::from));
        match path {
            Some(p) => schedule::load_registry(&read_text(&p)?),
            None => Ok(Registry::default_dwt()),
        }
    }
}

fn read_text(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::validation(format!("{}: {e}", p.display())))
}

fn read_json<T: DeserializeOwned>(p: &Path) -> Result<T> {
    serde_json::from_str(&read_text(p)?)
        .map_err(|e| Error::validation(format!("{}: {e}", p.display())))
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::validation(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref()
        .ok_or_else(|| Error::validation(format!("--{flag} is required without --config")))
}

fn dispatch(cli: &Cli) -> Result<String> {
    let cx = Ctx { g: &cli.g };
    match &cli.cmd {
        Cmd::Fatigue(c) => fatigue_cmd(&cx, c),
        Cmd::Blade(c) => blade_cmd(&cx, c),
        Cmd::Tower(c) => tower_cmd(&cx, c),
        Cmd::Ballast(a) => ballast_cmd(&cx, a),
        Cmd::Aero(c) => aero_cmd(&cx, c),
        Cmd::Bearing(BearingCmd::Life) => bearing_cmd(&cx),
        Cmd::Weibull(c) => weibull_cmd(&cx, c),
        Cmd::System(c) => system_cmd(&cx, c),
        Cmd::Schedule(c) => schedule_cmd(&cx, c),
        Cmd::Convert { value, to } => {
            let q: Quantity = value.parse()?;
            let unit: Unit = to.parse()?;
            let out = q.to(unit)?;
            if cx.g.json {
                to_json(&out)
            } else {
                Ok(format!("{} {}\n", sig6(out.value), out.unit))
            }
        }
    }
}

fn fatigue_cmd(cx: &Ctx, c: &FatigueCmd) -> Result<String> {
    use Dimension::Stress;
    match c {
        FatigueCmd::Endurance {
            sut,
            preset,
            marin,
            k,
        } => {
            let material = match (sut, preset) {
                (Some(s), _) => Material::from_ultimate("custom", cx.q(s, Stress)?)?,
                (None, Some(Preset::Blade)) => presets::blade_material(),
                (None, _) => presets::tower_material(),
            };
            let factors = match (k, marin, preset) {
                (Some(k), _, _) => MarinFactors::new(k[0], k[1], k[2], k[3], k[4], k[5])?,
                (None, Some(name), _) => MarinFactors::preset(name)
                    .ok_or_else(|| Error::validation(format!("unknown Marin preset `{name}`")))?,
                (None, None, Some(Preset::Blade)) => presets::blade_marin(),
                (None, None, Some(Preset::Tower)) => presets::tower_marin(),
                (None, None, None) if sut.is_some() => MarinFactors::unity(),
                (None, None, None) => presets::tower_marin(),
            };
            let se_prime = fatigue::endurance_limit_unmodified(&material);
            let se = fatigue::marin_modified_endurance(se_prime, &factors)?;
            cx.emit(
                Fields::new()
                    .s("material", material.name())
                    .q("ultimate_tensile_strength", material.ultimate_tensile_strength(), Stress)
                    .q("endurance_unmodified", se_prime, Stress)
                    .n("marin_product", factors.product())
                    .q("endurance_modified", se, Stress),
            )
        }
        FatigueCmd::Sn { sut, se, f } => {
            let c = fatigue::sn_constants(cx.q(sut, Stress)?, cx.q(se, Stress)?, *f)?;
            cx.emit(
                Fields::new()
                    .q("a", c.a, Stress)
                    .n("b", c.b)
                    .n("f", c.f)
                    .q("strength_at_1e3", c.low_cycle_strength(), Stress)
                    .q("strength_at_1e6", c.endurance_limit(), Stress),
            )
        }
        FatigueCmd::Life {
            sigma,
            a,
            b,
            f,
            cycles_per_day,
        } => {
            let constants = match (a, b) {
                (Some(a), Some(b)) => SnConstants::new(cx.q(a, Stress)?, *b, *f)?,
                (None, None) => {
                    let c: SnConstants = cx.config()?.ok_or_else(|| {
                        Error::validation("give --a and --b, or an S-N document via --config")
                    })?;
                    SnConstants::new(c.a, c.b, c.f)?
                }
                _ => return Err(Error::validation("--a and --b go together")),
            };
            let life = fatigue::cycles_to_failure(cx.q(sigma, Stress)?, &constants)?;
            let mut out = Fields::new()
                .n("cycles", life.cycles)
                .b("low_cycle", life.low_cycle)
                .b("below_endurance_extrapolation", life.below_endurance_extrapolation);
            if let Some(rate) = cycles_per_day {
                out = out.nu("years", fatigue::cycles_to_calendar(life.cycles, *rate)?, "yr");
            }
            cx.emit(out)
        }
    }
}

fn pipeline_fields(r: &fatigue::FatigueReport) -> Fields {
    let mut f = Fields::new()
        .q("endurance_unmodified", r.endurance_unmodified, Dimension::Stress)
        .q("endurance_modified", r.endurance_modified, Dimension::Stress)
        .q("a", r.constants.a, Dimension::Stress)
        .n("b", r.constants.b)
        .n("cycles", r.life.cycles);
    if let Some(y) = r.years {
        f = f.nu("years", y, "yr");
    }
    f
}

fn section(cx: &Ctx, s: &SectionArgs) -> Result<RectSection> {
    let base = presets::blade_section();
    RectSection::new(
        cx.q_or(&s.width, Dimension::Length, base.width())?,
        cx.q_or(&s.thickness, Dimension::Length, base.thickness())?,
        cx.q_or(&s.span, Dimension::Length, base.span())?,
    )
}

fn blade_cmd(cx: &Ctx, c: &BladeCmd) -> Result<String> {
    use Dimension::{Moment, Stress};
    match c {
        BladeCmd::Bending { section: s, mass, phi } => {
            let blade = match cx.config::<BladeSpec>()? {
                Some(b) => b,
                None => {
                    let mut b = presets::blade_spec();
                    b.section = section(cx, s)?;
                    b.mass = mass.unwrap_or(b.mass);
                    b.mount_angle_phi = phi.unwrap_or(b.mount_angle_phi);
                    b
                }
            };
            let m = structural::blade_root_bending_moment(&blade)?;
            cx.emit(
                Fields::new()
                    .q("root_moment", m, Moment)
                    .q(
                        "stress_flat",
                        structural::rect_bending_stress(m, &blade.section, Orientation::Flat)?,
                        Stress,
                    )
                    .q(
                        "stress_upright",
                        structural::rect_bending_stress(m, &blade.section, Orientation::Upright)?,
                        Stress,
                    ),
            )
        }
        BladeCmd::Torsion { torque, section: s } => {
            let t = cx.q(torque, Moment)?;
            let tau = structural::rect_torsion_max_shear(t, &section(cx, s)?)?;
            cx.emit(Fields::new().q("torque", t, Moment).q("max_shear", tau, Stress))
        }
        BladeCmd::Life {
            cycles_per_day,
            orientation,
        } => {
            let blade = cx.config::<BladeSpec>()?.unwrap_or_else(presets::blade_spec);
            let m = structural::blade_root_bending_moment(&blade)?;
            let sigma = structural::rect_bending_stress(m, &blade.section, (*orientation).into())?;
            let r = fatigue::fatigue_pipeline(
                &blade.material,
                &presets::blade_marin(),
                presets::FATIGUE_STRENGTH_FRACTION,
                sigma,
                Some(*cycles_per_day),
            )?;
            cx.emit(
                Fields::new()
                    .q("root_moment", m, Moment)
                    .q("stress", sigma, Stress)
                    .extend(pipeline_fields(&r)),
            )
        }
    }
}

fn tower_cmd(cx: &Ctx, c: &TowerCmd) -> Result<String> {
    use Dimension::{Force, Length, Stress};
    match c {
        TowerCmd::Column {
            load,
            eccentricity,
            centroid,
            gyration,
            height,
            area,
            inertia,
            modulus,
            yield_strength,
            sut,
        } => {
            let col = match cx.config::<ColumnSpec>()? {
                Some(c) => c,
                None => {
                    let need = |v: Option<f64>, flag: &str| {
                        v.ok_or_else(|| Error::validation(format!("--{flag} is required without --config")))
                    };
                    let col = ColumnSpec {
                        load_p: cx.q(required(load, "load")?, Force)?,
                        eccentricity_e: cx.q(required(eccentricity, "eccentricity")?, Length)?,
                        centroid_c: cx.q(required(centroid, "centroid")?, Length)?,
                        gyration_k: cx.q(required(gyration, "gyration")?, Length)?,
                        height_l: cx.q(required(height, "height")?, Length)?,
                        area_a: need(*area, "area")?,
                        moment_i: need(*inertia, "inertia")?,
                    };
                    col.validate()?;
                    col
                }
            };
            let e_mod = cx.q(modulus, Stress)?;
            let material = Material::new(
                "column",
                cx.q(sut, Stress)?,
                Some(cx.q(yield_strength, Stress)?),
                Some(e_mod),
                None,
            )?;
            let deflection = structural::secant_deflection(&col, e_mod)?;
            let allowable = structural::secant_allowable_load(&col, &material)?;
            cx.emit(
                Fields::new()
                    .n("eccentricity_ratio", col.eccentricity_ratio())
                    .q("euler_stress", structural::euler_stress(&col, e_mod), Stress)
                    .q("midspan_deflection", deflection, Length)
                    .q("allowable_load", allowable, Force)
                    .b("load_ok", col.load_p <= allowable),
            )
        }
        TowerCmd::Life {
            sigma,
            cycles_per_day,
        } => {
            let sigma = cx.q_or(sigma, Stress, presets::TOWER_STRESS)?;
            let r = fatigue::fatigue_pipeline(
                &presets::tower_material(),
                &presets::tower_marin(),
                presets::FATIGUE_STRENGTH_FRACTION,
                sigma,
                Some(*cycles_per_day),
            )?;
            cx.emit(Fields::new().q("stress", sigma, Stress).extend(pipeline_fields(&r)))
        }
    }
}

fn ballast_cmd(cx: &Ctx, a: &BallastArgs) -> Result<String> {
    use Dimension::{Force, Length};
    let spec = match cx.config::<BallastSpec>()? {
        Some(s) => s,
        None => {
            let base_diameter = cx.q_or(&a.base_diameter, Length, 3.0)?;
            BallastSpec {
                turbine_thrust: cx.q_or(&a.thrust, Force, presets::TOWER_THRUST)?,
                nacelle_diameter: cx.q_or(&a.nacelle_diameter, Length, 2.0)?,
                safety_factor: a.safety_factor,
                base_diameter,
                base_area: a
                    .base_area
                    .unwrap_or(std::f64::consts::PI * (base_diameter / 2.0).powi(2)),
                ballast_mass_density: a.density,
            }
        }
    };
    let w = structural::ballast_required_weight(&spec)?;
    let h = structural::ballast_height_for_weight(w, &spec)?;
    cx.emit(
        Fields::new()
            .q("required_weight", w, Force)
            .q("fill_height", h, Length),
    )
}

fn rotor(cx: &Ctx, r: &RotorArgs) -> Result<RotorState> {
    let base = cx.config::<RotorState>()?.unwrap_or_else(presets::gust_rotor_state);
    Ok(RotorState {
        radius: cx.q_or(&r.radius, Dimension::Length, base.radius)?,
        wind_speed: cx.q_or(&r.wind, Dimension::Speed, base.wind_speed)?,
        air_density: r.air_density.unwrap_or(base.air_density),
        ..base
    })
}

fn aero_cmd(cx: &Ctx, c: &AeroCmd) -> Result<String> {
    match c {
        AeroCmd::Torque { rotor: r, rpm, cp } => {
            let mut state = rotor(cx, r)?;
            if let Some(rpm) = rpm {
                state.omega = rpm * std::f64::consts::TAU / 60.0;
            }
            if let Some(cp) = cp {
                state.power_coefficient = *cp;
            }
            state.validate()?;
            let lambda = aero::tip_speed_ratio(&state)?;
            let cq = aero::torque_coefficient(state.power_coefficient, lambda)?;
            let torque = aero::rotor_torque(&state)?;
            let power = aero::rotor_power(torque, state.omega);
            cx.emit(
                Fields::new()
                    .n("tip_speed_ratio", lambda)
                    .n("torque_coefficient", cq)
                    .q("torque", torque, Dimension::Moment)
                    .nu("power", power, "W")
                    .n("power_coefficient", aero::power_coefficient_from_power(power, &state)),
            )
        }
        AeroCmd::Betz { a0 } => cx.emit(Fields::new().n("cp_max", aero::ducted_betz_limit(*a0)?)),
        AeroCmd::Sweep { rotor: r, points } => {
            let base = rotor(cx, r)?;
            let pts: Vec<(f64, f64)> = if points.is_empty() {
                presets::TORQUE_SWEEP.to_vec()
            } else {
                points.iter().map(|p| parse_point(p)).collect::<Result<_>>()?
            };
            let rows = pts
                .iter()
                .map(|&(cp, rpm)| aero::torque_row(&base, cp, rpm))
                .collect::<Result<Vec<_>>>()?;
            if cx.g.json {
                return to_json(&rows);
            }
            let u = display_unit(cx.g.units, Dimension::Moment);
            let mut out = format!("cp,rpm,tip_speed_ratio,torque_coefficient,torque_{}\n", u.symbol());
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    sig6(r.power_coefficient),
                    sig6(r.rpm),
                    sig6(r.tip_speed_ratio),
                    sig6(r.torque_coefficient),
                    sig6(r.torque / u.si_factor())
                ));
            }
            Ok(out)
        }
    }
}

fn parse_point(p: &str) -> Result<(f64, f64)> {
    let bad = || Error::validation(format!("sweep point `{p}` should look like 0.4:600"));
    let (cp, rpm) = p.split_once(':').ok_or_else(bad)?;
    Ok((
        cp.trim().parse().map_err(|_| bad())?,
        rpm.trim().parse().map_err(|_| bad())?,
    ))
}

fn bearing_cmd(cx: &Ctx) -> Result<String> {
    let case: BearingCase = cx.config()?.unwrap_or_else(presets::bearing_case);
    let r = bearing::bearing_life(&case)?;
    if cx.g.json {
        return to_json(&r);
    }
    cx.emit(
        Fields::new()
            .q("rating_ca", r.rating_ca, Dimension::Force)
            .q("rating_oscillating", r.rating_oscillating, Dimension::Force)
            .q("equivalent_load", r.equivalent_load, Dimension::Force)
            .nu("l10", r.l10, "oscillations")
            .nu("modified_life", r.modified_life, "oscillations")
            .nu("raceway_cycles", r.raceway_cycles, "cycles")
            .nu("years_oscillation_basis", r.years_oscillation_basis, "yr")
            .nu("years_raceway_basis", r.years_raceway_basis, "yr"),
    )
}

fn weibull_params(cx: &Ctx, w: &WeibullArgs) -> Result<WeibullParams> {
    match (w.beta, w.eta) {
        (Some(b), Some(e)) => WeibullParams::new(b, e),
        (None, None) => cx
            .config()?
            .ok_or_else(|| Error::validation("give --beta and --eta, or a Weibull document via --config")),
        _ => Err(Error::validation("--beta and --eta go together")),
    }
}

fn weibull_cmd(cx: &Ctx, c: &WeibullCmd) -> Result<String> {
    match c {
        WeibullCmd::Fit { p1, t1, p2, t2 } => {
            let w = weibull::fit_two_quantiles(&QuantilePoint::new(*p1, *t1)?, &QuantilePoint::new(*p2, *t2)?)?;
            let regime = weibull::failure_regime(w.shape())?;
            let regime = serde_json::to_value(regime)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            cx.emit(
                Fields::new()
                    .n("shape_beta", w.shape())
                    .n("scale_eta", w.scale())
                    .n("mean", w.mean())
                    .s("regime", regime),
            )
        }
        WeibullCmd::Cdf { w, t } => {
            let p = weibull_params(cx, w)?;
            let mut out = Fields::new()
                .n("cdf", weibull::cdf(*t, &p)?)
                .n("survival", weibull::survival(*t, &p)?);
            // The density is unbounded at the origin for shape < 1.
            match weibull::pdf(*t, &p) {
                Ok(v) => out = out.n("pdf", v),
                Err(e) if e.is_numeric() => {}
                Err(e) => return Err(e),
            }
            cx.emit(out)
        }
        WeibullCmd::Quantile { w, p } => {
            let params = weibull_params(cx, w)?;
            cx.emit(Fields::new().n("life", weibull::quantile_bp(*p, &params)?))
        }
        WeibullCmd::Hazard { w, t, until } => {
            let p = weibull_params(cx, w)?;
            let mut out = Fields::new()
                .n("hazard", weibull::hazard(*t, &p)?)
                .n("cumulative_hazard", weibull::cumulative_hazard(*t, &p)?);
            if let Some(t2) = until {
                out = out.n("average_failure_rate", weibull::average_failure_rate(*t, *t2, &p)?);
            }
            cx.emit(out)
        }
        WeibullCmd::Sample { w, count } => {
            let p = weibull_params(cx, w)?;
            let xs = weibull::sample(&p, cx.g.seed, *count)?;
            if cx.g.json {
                return to_json(&xs);
            }
            Ok(xs.iter().map(|x| sig6(*x) + "\n").collect())
        }
    }
}

/// Lifed subsystems in series, each exponential with its estimated life as mean.
fn default_topology() -> SystemTopology {
    SystemTopology::Series(
        presets::system_lives()
            .into_iter()
            .map(|(id, life)| SystemTopology::leaf(id, LifeModel::Exponential { rate: 1.0 / life }))
            .collect(),
    )
}

fn system_cmd(cx: &Ctx, c: &SystemCmd) -> Result<String> {
    match c {
        SystemCmd::Mttf => {
            let topo = cx.config()?.unwrap_or_else(default_topology);
            let mc = system::monte_carlo_mttf(&topo, cx.g.samples, cx.g.seed)?;
            cx.emit(
                Fields::new()
                    .nu("mttf", mc.estimate, "yr")
                    .nu("standard_error", mc.standard_error, "yr")
                    .i("samples", mc.samples as i64)
                    .i("seed", cx.g.seed as i64),
            )
        }
        SystemCmd::Reliability { t, series, parallel } => {
            let r = match (series, parallel) {
                (Some(r), _) => system::series_reliability(r)?,
                (None, Some(r)) => system::parallel_reliability(r)?,
                (None, None) => {
                    let topo = cx.config()?.unwrap_or_else(default_topology);
                    system::system_reliability_at(*t, &topo)?
                }
            };
            cx.emit(Fields::new().n("reliability", r))
        }
        SystemCmd::Life => {
            let lives: BTreeMap<String, f64> = cx.config()?.unwrap_or_else(presets::system_lives);
            let (life, id) = system::system_service_life(&lives)?;
            cx.emit(Fields::new().nu("life", life, "yr").s("limiting_component", id))
        }
        SystemCmd::Repairs { rate, horizon, k } => {
            let mean = system::expected_repairs(*rate, *horizon)?;
            let mut out = Fields::new().n("expected_repairs", mean);
            if let Some(k) = k {
                out = out.n("probability", system::poisson_pmf(*k, mean)?);
            }
            cx.emit(out)
        }
    }
}

fn schedule_cmd(cx: &Ctx, c: &ScheduleCmd) -> Result<String> {
    let format: ReportFormat = cx.g.format.parse()?;
    let registry = cx.registry()?;
    match c {
        ScheduleCmd::Generate { install, horizon } => {
            let dep = match (cx.config::<Deployment>()?, install) {
                (Some(mut d), Some(date)) => {
                    d.installation.install_date = *date;
                    d
                }
                (Some(d), None) => d,
                (None, date) => Deployment {
                    installation: InstallationRecord::new(
                        date.unwrap_or_else(|| NaiveDate::from_ymd_opt(2025, 1, 1).expect("valid date")),
                    ),
                    usage: UsageProfile::default(),
                },
            };
            let entries = schedule::generate_schedule(&registry, &dep.installation, &dep.usage, *horizon)?;
            if cx.g.json {
                return to_json(&entries);
            }
            schedule::emit_schedule_report(&entries, format)
        }
        ScheduleCmd::Report => {
            if cx.g.json {
                return to_json(&registry);
            }
            schedule::emit_registry_report(&registry, format)
        }
        ScheduleCmd::Rul {
            component,
            elapsed,
            life,
        } => {
            let comp = registry
                .component(component)
                .ok_or_else(|| Error::validation(format!("no component `{component}` in the registry")))?;
            let usage = cx.config::<Deployment>()?.map(|d| d.usage).unwrap_or_default();
            let selector = match life {
                LifeArg::Service => LifeSelector::Service,
                LifeArg::Rated => LifeSelector::Rated,
            };
            let r = schedule::remaining_service_life(comp, &usage, *elapsed, selector)?;
            if cx.g.json {
                return to_json(&r);
            }
            let unit = match r.unit {
                schedule::LifeUnit::Years => "yr",
                schedule::LifeUnit::Cycles => "cycles",
            };
            cx.emit(
                Fields::new()
                    .s("component", r.component_id)
                    .nu("life", r.life, unit)
                    .nu("remaining", r.remaining, unit)
                    .n("fraction_consumed", r.fraction_consumed)
                    .b("overconsumed", r.overconsumed),
            )
        }
    }
}
