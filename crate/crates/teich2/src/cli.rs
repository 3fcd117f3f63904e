use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(
    name = "teich2",
    version,
    about = "Symmetric genus-2 octagons: geometry, Fuchsian group, Fenchel-Nielsen data, isoperimetric orbits"
)]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the main output here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// An octagon `(a, α)` or `(a, α̃)`; both omitted means the regular octagon.
#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Vertex angle α of the `b` vertices.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "alpha_tilde")]
    pub alpha: Option<f64>,
    /// α̃ = α − π/4.
    #[arg(long = "alpha-tilde", allow_negative_numbers = true)]
    pub alpha_tilde: Option<f64>,
    /// Keep this distance from every domain bound, in [0, 0.2].
    #[arg(long, default_value_t = 0.0)]
    pub margin: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Geometry of one octagon.
    Octagon(ParamArgs),
    /// Side-pairing generators, relation defect, side-pairing residuals.
    Group {
        #[command(flatten)]
        params: ParamArgs,
        /// Interior points tested against every generator.
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Fenchel-Nielsen data for both decompositions and the Weil-Petersson form.
    Fn {
        #[command(flatten)]
        params: ParamArgs,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-5)]
        h: f64,
        #[arg(long)]
        richardson: bool,
    },
    /// Samples along orbits of constant perimeter.
    Orbit {
        /// Perimeters (comma separated or repeated); default 25,27,...,41.
        #[arg(long = "P", value_delimiter = ',', num_args = 1.., conflicts_with = "e")]
        p: Vec<f64>,
        /// Targets given as E = 2(cosh(P/8) + 1) instead.
        #[arg(long = "E", value_delimiter = ',', num_args = 1..)]
        e: Vec<f64>,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Weil-Petersson area enclosed by orbits, and the parabola refit.
    Area {
        /// Smallest perimeter; defaults to the regular octagon's.
        #[arg(long = "p-min")]
        p_min: Option<f64>,
        #[arg(long = "p-max", default_value_t = 41.0)]
        p_max: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
    },
    /// Group elements up to word length n and the tiles they produce.
    Tiling {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Per-cell vertex CSV.
        #[arg(long)]
        cells: Option<PathBuf>,
        /// SVG drawing of the tiles.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Every invariant over a parameter grid; exit code 4 on any failure.
    Validate {
        #[arg(long, num_args = 2, value_names = ["N_A", "N_ALPHA"], default_values_t = [20, 20])]
        grid: Vec<usize>,
        #[arg(long, default_value_t = 0.02)]
        margin: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Interior points per grid node in the side-pairing check.
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long = "ball-radius", default_value_t = 4)]
        ball_radius: usize,
        /// Override a tolerance, `name=value`; repeatable.
        #[arg(long = "tol")]
        tol: Vec<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Octagon(_) => "octagon",
            Command::Group { .. } => "group",
            Command::Fn { .. } => "fn",
            Command::Orbit { .. } => "orbit",
            Command::Area { .. } => "area",
            Command::Tiling { .. } => "tiling",
            Command::Validate { .. } => "validate",
        }
    }

    pub fn default_format(&self) -> Format {
        match self {
            Command::Orbit { .. } | Command::Area { .. } | Command::Tiling { .. } => Format::Csv,
            _ => Format::Json,
        }
    }
}
