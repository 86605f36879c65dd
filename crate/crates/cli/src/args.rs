use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "higgs-crs", version, about = "Spectra, potentials and checks for the Higgs oscillator on the sphere and the CRS oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub physics: PhysicsArgs,

    #[command(flatten)]
    pub output: OutputArgs,

    /// More diagnostics on stderr (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Higgs,
    Crs,
    Qes1,
    Qes2,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Higgs => "higgs",
            Model::Crs => "crs",
            Model::Qes1 => "qes1",
            Model::Qes2 => "qes2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// sin²Θ argument with a cos²Θ base.
    Squared,
    /// sinΘ argument with a cosΘ base.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroundForm {
    /// sin(lΥ) factor.
    Factorized,
    /// sin(lΥ/2) factor.
    AsPrinted,
}

#[derive(Debug, Args)]
pub struct PhysicsArgs {
    #[arg(long, value_enum, global = true, default_value = "higgs")]
    pub model: Model,
    /// Curvature.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    pub mass: f64,
    /// Solvable channel of the CRS and quasi-exactly solvable models.
    #[arg(long = "mprime-q", global = true, allow_hyphen_values = true)]
    pub mprime_q: Option<f64>,
    /// Order of the trigonometric example; required by qes1.
    #[arg(long, global = true)]
    pub l: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// First sample point (r for radial models, x for crs).
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    /// Last sample point.
    #[arg(long)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form levels next to the finite-difference oracle.
    Spectrum {
        #[arg(long = "n-max", default_value_t = 2)]
        n_max: u32,
        #[arg(long = "mprime-max", default_value_t = 2)]
        mprime_max: u32,
        /// Grid cells of the coarse grid; the fine grid doubles it.
        #[arg(long = "grid-n", default_value_t = 2000)]
        grid_n: usize,
    },
    /// Potential sampled on a uniform grid.
    Potential {
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Closed-form wavefunction sampled on a uniform grid.
    Wavefunction {
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Angular channel of the Higgs model.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        mprime: i32,
        #[arg(long, value_enum, default_value = "squared")]
        convention: Convention,
        #[arg(long = "ground-form", value_enum, default_value = "factorized")]
        ground_form: GroundForm,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Run verification suites.
    Verify {
        /// Suite id, or `all`; repeatable.
        #[arg(long, default_value = "all")]
        suite: Vec<String>,
        /// List suite ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Mapped special CRS potential against the oscillator.
    TransformCheck {
        #[arg(long, default_value_t = 0.5)]
        from: f64,
        #[arg(long, default_value_t = 50.0)]
        to: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
}
