//! Command-line grammar.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgGroup, Args, Parser, Subcommand};
use ritz_fibre::C64;

#[derive(Debug, Parser)]
#[command(name = "ritz-fibre", version, about = "Ritz-value fibres and their coordinates")]
pub struct Cli {
    /// Relative eigenvalue accuracy.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_eig: f64,
    /// Relative distance below which eigenvalues coincide.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_coincide: f64,
    /// Relative singular-value cutoff for numerical rank.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_rank: f64,
    /// Read the input document from FILE instead of standard input.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Write the result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of every leading principal block of a matrix.
    Ritz,
    /// Genericity report and strong-regularity flag of a matrix.
    Check,
    /// Unit upper Hessenberg matrix with prescribed Ritz values.
    Hess,
    /// Coordinates (Ritz values and b) of a generic matrix.
    Coords,
    /// Matrix with the given coordinates.
    Reconstruct,
    /// Flow a matrix along tr(x_m^k) or along one coordinate slot.
    Flow(FlowArgs),
    /// Coordinates after transposition or a diagonal similarity.
    Conj(ConjArgs),
    /// Control-theoretic tests on a bordered matrix [[B, c], [bᵀ, δ]].
    Control(ControlArgs),
    /// Check that all generators tr(x_m^k) Poisson-commute.
    Poisson {
        /// Matrix order, at most 5.
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["m", "j"])))]
pub struct FlowArgs {
    /// Level of the trace flow.
    #[arg(long, requires = "k")]
    pub m: Option<usize>,
    /// Power of the trace flow.
    #[arg(long, requires = "m")]
    pub k: Option<usize>,
    /// Coordinate slot, 1-based in the order j = C(m,2) + l.
    #[arg(long, conflicts_with_all = ["m", "k"])]
    pub j: Option<usize>,
    /// Complex flow time, e.g. 0.5-1.2i.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub q: C64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["transpose", "diag"])))]
pub struct ConjArgs {
    /// Coordinates of the transpose.
    #[arg(long)]
    pub transpose: bool,
    /// Comma-separated nonzero diagonal d1,d2,…,dn.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex_list)]
    pub diag: Option<ComplexList>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("kind").required(true).args(["row", "col", "regular", "complete"])))]
pub struct ControlArgs {
    /// Observability of (B, bᵀ).
    #[arg(long)]
    pub row: bool,
    /// Controllability of (B, c).
    #[arg(long)]
    pub col: bool,
    /// Regularity of B.
    #[arg(long)]
    pub regular: bool,
    /// Replace c and δ so the characteristic polynomial becomes
    /// λ^{m+1} + c_m λ^m + … + c_0; takes c_0,…,c_m.
    #[arg(long, value_name = "TARGETPOLY", allow_hyphen_values = true, value_parser = parse_complex_list)]
    pub complete: Option<ComplexList>,
}

/// Wrapper so clap treats the list as a single value.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexList(pub Vec<C64>);

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let z = C64::from_str(s.trim()).map_err(|_| format!("not a complex number: {s:?}"))?;
    if !z.is_finite() {
        return Err(format!("non-finite value: {s:?}"));
    }
    Ok(z)
}

pub fn parse_complex_list(s: &str) -> Result<ComplexList, String> {
    s.split(',').map(parse_complex).collect::<Result<_, _>>().map(ComplexList)
}
