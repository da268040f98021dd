use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Two-photon cascade emission of a ladder emitter in a chiral waveguide.
///
/// Frequencies are given in units of omega1, times in units of 1/gamma2 and
/// spectra are reported as S * gamma2^2.
#[derive(Debug, Parser)]
#[command(name = "ladderwave", version, args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// State probabilities P_f0, P_e1, P_g2 over time.
    Probabilities(ProbabilitiesArgs),
    /// Two-photon spectral density on a square frequency grid.
    Spectrum(GridArgs),
    /// Spectral density of two photons with equal frequencies.
    Identical(GridArgs),
    /// Mode-discretized oracle run compared against the closed forms.
    Verify(VerifyArgs),
    /// Data behind one panel of the reference figures.
    Figure(FigureArgs),
    /// Upper-level amplitude for a declared incident pulse.
    Pulse(PulseArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Lower transition frequency.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub omega1: f64,
    /// Upper-level decay rate in units of omega1.
    #[arg(long = "gamma2-over-omega1", default_value_t = 0.02, allow_hyphen_values = true)]
    pub gamma2_over_omega1: f64,
    /// Decay ratio gamma2 / gamma1.
    #[arg(long, default_value_t = 1.5, allow_hyphen_values = true)]
    pub ratio: f64,
    /// Relative anharmonicity (omega2 - 2 omega1) / omega1.
    #[arg(long = "alpha-r", default_value_t = -0.03, allow_hyphen_values = true)]
    pub alpha_r: f64,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file whose keys mirror the long flag names.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Also write an SVG rendering next to the output file.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ProbabilitiesArgs {
    #[command(flatten)]
    pub common: Common,
    /// Final time in units of 1/gamma2.
    #[arg(long = "t-max", default_value_t = 8.0)]
    pub t_max: f64,
    /// Number of time intervals.
    #[arg(long, default_value_t = 400)]
    pub steps: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub common: Common,
    /// Lower frequency bound; defaults depend on the command.
    #[arg(long, allow_hyphen_values = true)]
    pub wmin: Option<f64>,
    /// Upper frequency bound.
    #[arg(long, allow_hyphen_values = true)]
    pub wmax: Option<f64>,
    /// Points per axis.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of waveguide modes (odd).
    #[arg(long, default_value_t = 801)]
    pub modes: usize,
    /// Half-width of the mode window in units of omega1.
    #[arg(long = "half-width")]
    pub half_width: Option<f64>,
    /// Time step in units of 1/gamma2.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Final time in units of 1/gamma2.
    #[arg(long = "t-max", default_value_t = 6.0)]
    pub t_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig3d,
    Fig3e,
    Fig4a,
    Fig4b,
    Fig4c,
    Fig4d,
}

impl Figure {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, Args)]
pub struct FigureArgs {
    pub figure: Figure,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file whose keys mirror the long flag names.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Also write an SVG rendering next to the output file.
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Gaussian,
    Rectangular,
}

#[derive(Debug, Clone, Args)]
pub struct PulseArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Shape::Gaussian)]
    pub shape: Shape,
    /// Gaussian centre, in units of v_g / gamma2.
    #[arg(long, default_value_t = -15.0, allow_hyphen_values = true)]
    pub center: f64,
    /// Gaussian width, in units of v_g / gamma2.
    #[arg(long, default_value_t = 5.0)]
    pub width: f64,
    /// Rectangle edges, in units of v_g / gamma2.
    #[arg(long, default_value_t = -20.0, allow_hyphen_values = true)]
    pub left: f64,
    #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
    pub right: f64,
    /// Carrier frequency; defaults to the upper transition.
    #[arg(long)]
    pub carrier: Option<f64>,
    /// Single-photon weight of the pulse.
    #[arg(long, default_value_t = 1.0)]
    pub weight: f64,
    /// Real initial amplitude of the upper level.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub alpha0: f64,
    /// Final time in units of 1/gamma2.
    #[arg(long = "t-max", default_value_t = 30.0)]
    pub t_max: f64,
    /// Number of time intervals.
    #[arg(long, default_value_t = 300)]
    pub steps: usize,
}
