//! Scenario configuration: command-line parsing, defaults, and the echo that
//! lets a report be replayed.

use std::fmt;

use clap::{Parser, ValueEnum};
use wignerkit::boost::{BoostMode, PreparationContext};
use wignerkit::kinematics::{BoostParameter, FourMomentum};
use wignerkit::spin::{Basis, Outcome};
use wignerkit::wavefunction::KFactor;

use crate::error::RunError;
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scenario {
    Angle,
    Figure1,
    Figure2,
    Ratio,
    Signaling,
    Paradox,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Linear,
    Physical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrepArg {
    #[value(name = "plus_y")]
    PlusY,
    #[value(name = "minus_y")]
    MinusY,
    Confined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Z,
    X,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KArg {
    Unity,
    Sqrt,
}

fn parse_outcome(s: &str) -> Result<Outcome, String> {
    match s.trim() {
        "+1" | "1" | "+" => Ok(Outcome::Plus),
        "-1" | "-" => Ok(Outcome::Minus),
        other => Err(format!("expected +1 or -1, got {other:?}")),
    }
}

fn parse_finite(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not a finite number"))
    }
}

/// Raw command line.
#[derive(Debug, Clone, Parser)]
#[command(name = "wignerkit", version, about = "Wigner-rotation standing-wave scenarios")]
pub struct Cli {
    /// Scenario to run.
    #[arg(value_enum, required_unless_present = "from_report")]
    pub scenario: Option<Scenario>,

    /// Lorentz factor of the observer boost along z.
    #[arg(long, value_parser = parse_finite, conflicts_with = "beta")]
    pub gamma_beta: Option<f64>,
    /// Speed of the observer boost along z, as a fraction of c.
    #[arg(long, value_parser = parse_finite, allow_negative_numbers = true)]
    pub beta: Option<f64>,

    /// Lorentz factor of the particle momentum.
    #[arg(long, value_parser = parse_finite, conflicts_with_all = ["v", "p"])]
    pub gamma_p: Option<f64>,
    /// Particle speed, fraction of c.
    #[arg(long, value_parser = parse_finite, conflicts_with = "p", allow_negative_numbers = true)]
    pub v: Option<f64>,
    /// Particle momentum magnitude in units of mc.
    #[arg(long, value_parser = parse_finite, allow_negative_numbers = true)]
    pub p: Option<f64>,

    /// Detector width in reduced Compton wavelengths.
    #[arg(long, value_parser = parse_finite, allow_negative_numbers = true)]
    pub w: Option<f64>,

    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    pub prep: Option<PrepArg>,
    #[arg(long, value_enum)]
    pub basis: Option<BasisArg>,
    /// Outcome of the partner's spin measurement, +1 or -1.
    #[arg(long, value_parser = parse_outcome, allow_hyphen_values = true)]
    pub outcome: Option<Outcome>,
    #[arg(long, value_enum)]
    pub k_factor: Option<KArg>,

    /// Position samples (standing waves: over 8 half periods; packets: over the window).
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Momentum-space width W of the Gaussian packet, in units of 1/(mc).
    #[arg(long, value_parser = parse_finite, allow_negative_numbers = true)]
    pub packet_width: Option<f64>,

    /// Output directory for CSV files and the report.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,

    /// Replay the configuration echoed in an earlier report.
    #[arg(long, conflicts_with_all = [
        "scenario", "gamma_beta", "beta", "gamma_p", "v", "p", "w", "mode", "prep",
        "basis", "outcome", "k_factor", "grid_points", "packet_width",
    ])]
    pub from_report: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoostInput {
    GammaBeta(f64),
    Beta(f64),
}

impl BoostInput {
    pub fn parameter(self) -> Result<BoostParameter, RunError> {
        let out = match self {
            BoostInput::GammaBeta(g) => BoostParameter::from_gamma(g),
            BoostInput::Beta(b) => BoostParameter::from_beta(b),
        };
        out.map_err(|e| RunError::Config(format!("boost: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParticleInput {
    GammaP(f64),
    P(f64),
    V(f64),
}

impl ParticleInput {
    /// Momentum along `+y`.
    pub fn momentum(self) -> Result<FourMomentum, RunError> {
        let out = match self {
            ParticleInput::GammaP(g) => FourMomentum::from_gamma(g, true),
            ParticleInput::P(p) if p > 0.0 => FourMomentum::new(p),
            ParticleInput::V(v) if v > 0.0 => FourMomentum::from_velocity(v),
            ParticleInput::P(p) => return Err(RunError::Config(format!("p = {p} must be > 0"))),
            ParticleInput::V(v) => return Err(RunError::Config(format!("v = {v} must be > 0"))),
        };
        let momentum = out.map_err(|e| RunError::Config(format!("particle: {e}")))?;
        if momentum.p() <= 0.0 {
            return Err(RunError::Config("particle momentum must be nonzero".into()));
        }
        Ok(momentum)
    }
}

/// Fully resolved configuration: every field explicit.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub boost: BoostInput,
    pub particle: ParticleInput,
    pub w: f64,
    pub mode: ModeArg,
    pub prep: PrepArg,
    pub basis: BasisArg,
    pub outcome: Outcome,
    pub k_factor: KArg,
    pub grid_points: usize,
    pub packet_width: f64,
}

pub const DEFAULT_STANDING_WAVE_POINTS: usize = 4097;
pub const DEFAULT_PACKET_POINTS: usize = 2401;

impl ScenarioConfig {
    /// Applies per-scenario defaults to a parsed command line.
    pub fn resolve(cli: &Cli) -> Result<Self, RunError> {
        let scenario = cli
            .scenario
            .ok_or_else(|| RunError::Config("scenario: missing".into()))?;
        let boost = match (cli.gamma_beta, cli.beta) {
            (Some(g), None) => BoostInput::GammaBeta(g),
            (None, Some(b)) => BoostInput::Beta(b),
            (None, None) if scenario == Scenario::Figure2 => BoostInput::Beta(0.995),
            (None, None) => BoostInput::GammaBeta(10.0),
            (Some(_), Some(_)) => {
                return Err(RunError::Config("gamma-beta: give only one of --gamma-beta, --beta".into()))
            }
        };
        let particle = match (cli.gamma_p, cli.p, cli.v) {
            (Some(g), None, None) => ParticleInput::GammaP(g),
            (None, Some(p), None) => ParticleInput::P(p),
            (None, None, Some(v)) => ParticleInput::V(v),
            (None, None, None) => ParticleInput::GammaP(1.2),
            _ => return Err(RunError::Config("gamma-p: give only one of --gamma-p, --p, --v".into())),
        };
        let default_points = if scenario == Scenario::Figure2 {
            DEFAULT_PACKET_POINTS
        } else {
            DEFAULT_STANDING_WAVE_POINTS
        };
        let config = Self {
            scenario,
            boost,
            particle,
            w: cli.w.unwrap_or(1.0),
            mode: cli.mode.unwrap_or(ModeArg::Linear),
            prep: cli.prep.unwrap_or(PrepArg::MinusY),
            basis: cli.basis.unwrap_or(BasisArg::Z),
            outcome: cli.outcome.unwrap_or(Outcome::Minus),
            k_factor: cli.k_factor.unwrap_or(KArg::Sqrt),
            grid_points: cli.grid_points.unwrap_or(default_points),
            packet_width: cli.packet_width.unwrap_or(1.0),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn from_args<I, T>(args: I) -> Result<Self, RunError>
    where
        I: IntoIterator<Item = T>,
        T: Into<std::ffi::OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| RunError::Config(e.to_string()))?;
        Self::resolve(&cli)
    }

    /// Rebuilds the configuration from a report's `config.*` entries.
    pub fn from_report(report: &Report) -> Result<Self, RunError> {
        let mut args = vec!["wignerkit".to_string()];
        let mut scenario = None;
        for (key, value) in report.entries() {
            let Some(name) = key.strip_prefix("config.") else {
                continue;
            };
            if name == "scenario" {
                scenario = Some(value.clone());
                continue;
            }
            if name.is_empty() || name == "from-report" || name == "out" {
                return Err(RunError::Config(format!("{key}: not a replayable setting")));
            }
            args.push(format!("--{name}"));
            args.push(value.clone());
        }
        let scenario =
            scenario.ok_or_else(|| RunError::Config("config.scenario: missing from report".into()))?;
        args.insert(1, scenario);
        Self::from_args(args)
    }

    fn validate(&self) -> Result<(), RunError> {
        self.boost.parameter()?;
        self.particle.momentum()?;
        if !(self.w >= 1.0) {
            return Err(RunError::Config(format!(
                "w: {} is below the reduced Compton wavelength (w >= 1 required)",
                self.w
            )));
        }
        if self.grid_points < 17 {
            return Err(RunError::Config(format!("grid-points: {} is below 17", self.grid_points)));
        }
        if !(self.packet_width > 0.0) {
            return Err(RunError::Config(format!("packet-width: {} must be > 0", self.packet_width)));
        }
        Ok(())
    }

    pub fn boost_mode(&self) -> BoostMode {
        match self.mode {
            ModeArg::Linear => BoostMode::Linear,
            ModeArg::Physical => BoostMode::Physical(self.preparation()),
        }
    }

    pub fn preparation(&self) -> PreparationContext {
        match self.prep {
            PrepArg::PlusY => PreparationContext::PreparedPlusY,
            PrepArg::MinusY => PreparationContext::PreparedMinusY,
            PrepArg::Confined => PreparationContext::Confined,
        }
    }

    pub fn basis(&self) -> Basis {
        match self.basis {
            BasisArg::Z => Basis::Z,
            BasisArg::X => Basis::X,
        }
    }

    pub fn k_factor(&self) -> KFactor {
        match self.k_factor {
            KArg::Unity => KFactor::Unity,
            KArg::Sqrt => KFactor::SqrtMassOverEnergy,
        }
    }

    /// Intervals per half period for standing-wave grids, from the
    /// `grid_points` budget over the minimal 8-half-period window.
    pub fn points_per_half_period(&self) -> usize {
        let per = (self.grid_points - 1) / 8;
        (per - per % 2).max(2)
    }

    /// `(key, value)` pairs in flag spelling; feeding them back as
    /// `--key value` reproduces this configuration.
    pub fn echo(&self) -> Vec<(String, String)> {
        let mut out = vec![("scenario".to_string(), value_name(self.scenario))];
        match self.boost {
            BoostInput::GammaBeta(g) => out.push(("gamma-beta".into(), g.to_string())),
            BoostInput::Beta(b) => out.push(("beta".into(), b.to_string())),
        }
        match self.particle {
            ParticleInput::GammaP(g) => out.push(("gamma-p".into(), g.to_string())),
            ParticleInput::P(p) => out.push(("p".into(), p.to_string())),
            ParticleInput::V(v) => out.push(("v".into(), v.to_string())),
        }
        out.push(("w".into(), self.w.to_string()));
        out.push(("mode".into(), value_name(self.mode)));
        out.push(("prep".into(), value_name(self.prep)));
        out.push(("basis".into(), value_name(self.basis)));
        out.push(("outcome".into(), OutcomeDisplay(self.outcome).to_string()));
        out.push(("k-factor".into(), value_name(self.k_factor)));
        out.push(("grid-points".into(), self.grid_points.to_string()));
        out.push(("packet-width".into(), self.packet_width.to_string()));
        out
    }
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

pub struct OutcomeDisplay(pub Outcome);

impl fmt::Display for OutcomeDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Outcome::Plus => f.write_str("+1"),
            Outcome::Minus => f.write_str("-1"),
        }
    }
}
