//! Command-line grammar.

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "dopkit",
    version,
    about = "Exact checks and spectral desk tests for planar diffusion orthogonal polynomial systems"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Weights `W1,W2` (positive rationals, normalized to coprime integers).
    #[arg(long, global = true, value_name = "W1,W2")]
    pub weights: Option<String>,
    /// JSON destination; `-` is standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<String>,
    /// Worker threads for batch commands.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for quasi-random point sets.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<String>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check conditions (A1)-(A3) for a cometric and a boundary.
    Verify {
        #[arg(long)]
        metric: String,
        #[arg(long)]
        boundary: String,
    },
    /// Basis of all cometrics tangent to a boundary.
    SolveMetric {
        #[arg(long)]
        boundary: String,
    },
    /// Compatible densities for a cometric and boundary.
    Density {
        #[arg(long)]
        metric: String,
        #[arg(long)]
        boundary: String,
        /// Extra factor files (polynomials) allowed in the density.
        #[arg(long)]
        extra: Vec<String>,
        /// Factor parameters `p=..,q=..` (power of factor k is p_k - 1);
        /// `c1=..` etc. fix the coefficients of exponential-only generators.
        #[arg(long, value_name = "ASSIGNMENTS")]
        at: Option<String>,
        /// Catalog entry whose integrability table is evaluated.
        #[arg(long)]
        entry: Option<String>,
        #[arg(long, value_name = "ASSIGNMENTS")]
        params: Option<String>,
    },
    /// Conditions along a local branch germ.
    BranchCheck {
        #[arg(long)]
        germ: String,
        #[arg(long)]
        metric: String,
        /// Optional boundary polynomial whose valuation is reported.
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Catalog of known families.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Filtration invariance, symmetry and spectrum of a bundle.
    Spectral(SpectralArgs),
    /// Gaussian curvature at a point.
    Curvature {
        #[arg(long, conflicts_with = "metric", required_unless_present = "metric")]
        entry: Option<String>,
        #[arg(long, value_name = "ASSIGNMENTS")]
        params: Option<String>,
        /// Cometric file instead of a catalog entry.
        #[arg(long)]
        metric: Option<String>,
        /// Rational point `x,y`.
        #[arg(long, value_name = "X,Y")]
        at: String,
    },
    /// Image of quasi-random sphere points under the realization map.
    Realize {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum CatalogAction {
    List,
    Show {
        id: String,
    },
    Instantiate {
        id: String,
        #[arg(long, value_name = "ASSIGNMENTS")]
        params: Option<String>,
    },
    /// Certificates over a parameter grid (the built-in grid by default).
    Check {
        #[arg(long)]
        manifest: Option<String>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SpectralArgs {
    #[arg(long)]
    pub bundle: String,
    /// Weighted degree cutoff [default: 6].
    #[arg(long)]
    pub degree: Option<u64>,
    /// Gauss-Legendre points per variable and interval [default: 48].
    #[arg(long)]
    pub order: Option<usize>,
    /// Symmetry defect bound [default: 1e-8].
    #[arg(long)]
    pub symmetry_tol: Option<f64>,
    /// Gramian residual bound [default: 1e-8].
    #[arg(long)]
    pub gram_tol: Option<f64>,
    /// Bound on imaginary parts and on positive eigenvalues [default: 1e-9].
    #[arg(long)]
    pub imag_tol: Option<f64>,
    /// Relative change of the mass under a finer rule [default: 1e-10].
    #[arg(long)]
    pub convergence_tol: Option<f64>,
    /// CSV dump of quadrature nodes.
    #[arg(long)]
    pub nodes_csv: Option<String>,
    /// CSV dump of eigenpolynomial coefficients.
    #[arg(long)]
    pub eigen_csv: Option<String>,
}
