use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use flatvol_core::triangle::Curvature;
use flatvol_core::volumes::Convention;

use crate::angle::{parse_angle, parse_grid, AngleGrid};

#[derive(Debug, Parser)]
#[command(name = "flatvol", version, about = "Volumes of moduli spaces of flat connections on surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Volume of one representation variety (or moduli space).
    Volume(VolumeArgs),
    /// Run verification suites; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// Sweep the triangle metric factor h(φ), k·h(φ) and H(φ).
    Hphi(HphiArgs),
    /// Volumes over genus × boundary holonomy.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizationArg {
    Counting,
    Unit,
    Witten,
}

impl From<NormalizationArg> for Convention {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Counting => Convention::Counting,
            NormalizationArg::Unit => Convention::Unit,
            NormalizationArg::Witten => Convention::Witten,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurvatureArg {
    Hyperbolic,
    Euclidean,
    Spherical,
}

impl From<CurvatureArg> for Curvature {
    fn from(c: CurvatureArg) -> Self {
        match c {
            CurvatureArg::Hyperbolic => Curvature::Hyperbolic,
            CurvatureArg::Euclidean => Curvature::Euclidean,
            CurvatureArg::Spherical => Curvature::Spherical,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Finite,
    Su2,
    Geometry,
    All,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (output does not depend on it).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct VolumeArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 1)]
    pub genus: u32,
    /// Boundary holonomy class label (finite groups), e.g. `e`, `3cycle`.
    #[arg(long, conflicts_with = "theta")]
    pub holonomy: Option<String>,
    /// Second boundary holonomy class label.
    #[arg(long, conflicts_with = "theta2")]
    pub holonomy2: Option<String>,
    /// Boundary holonomy angle (SU(2), U(1)); accepts `pi/3` style tokens.
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta2: Option<f64>,
    /// 0 (orientable), 1 (cross-cap) or 2 (Klein-bottle summand).
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub cross_caps: u8,
    /// Series truncation; default picks one from the tail bound.
    #[arg(long)]
    pub trunc: Option<u64>,
    /// Abel-sum conditionally convergent series.
    #[arg(long)]
    pub abel: bool,
    /// Defaults to counting for finite groups, unit otherwise.
    #[arg(long, value_enum)]
    pub normalization: Option<NormalizationArg>,
    /// Report Vol M (moduli space) instead of Vol R; one boundary only.
    #[arg(long)]
    pub moduli: bool,
    /// Cross-cap apex angles; multiplies in the metric factor H(φ) per cross-cap.
    #[arg(long, value_delimiter = ',', value_parser = parse_angle)]
    pub phi: Vec<f64>,
    #[command(flatten)]
    pub triangle: TriangleArgs,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct TriangleArgs {
    #[arg(long, value_enum, default_value_t = CurvatureArg::Hyperbolic)]
    pub curvature: CurvatureArg,
    /// Base length (hyperbolic); fixes the side through the L–φ relation.
    #[arg(long, conflicts_with = "side")]
    pub b: Option<f64>,
    /// Length L of the two equal sides.
    #[arg(long)]
    pub side: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Finite groups for the finite suite.
    #[arg(long, value_delimiter = ',', default_value = "s3,d4,q8,z6")]
    pub groups: Vec<String>,
    #[arg(long, default_value_t = 2)]
    pub max_genus: u32,
    /// Monte-Carlo samples per check.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: u64,
    /// Truncation for the SU(2) gluing check.
    #[arg(long, default_value_t = 500)]
    pub trunc: u64,
    /// Quadrature tolerance for the geometry suite.
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct HphiArgs {
    /// Grid `start:stop:step`, inclusive; endpoints accept `pi/3` tokens.
    #[arg(long, value_parser = parse_grid, conflicts_with = "phi")]
    pub phi_grid: Option<AngleGrid>,
    #[arg(long, value_delimiter = ',', value_parser = parse_angle)]
    pub phi: Vec<f64>,
    #[command(flatten)]
    pub triangle: TriangleArgs,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 2)]
    pub max_genus: u32,
    /// Angles for continuous groups (default 0, π/2, π).
    #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: Vec<f64>,
    #[arg(long)]
    pub trunc: Option<u64>,
    #[arg(long)]
    pub abel: bool,
    #[arg(long, value_enum)]
    pub normalization: Option<NormalizationArg>,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Volume(a) => &a.common,
            Command::Verify(a) => &a.common,
            Command::Hphi(a) => &a.common,
            Command::Table(a) => &a.common,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Volume(_) => "volume",
            Command::Verify(_) => "verify",
            Command::Hphi(_) => "hphi",
            Command::Table(_) => "table",
        }
    }
}
