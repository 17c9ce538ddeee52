use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "tetralattice",
    version,
    about = "Isospectral lattice pairs in dimension four: construction, invariants and certificates"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Parameters a b c d as integers or exact fractions p/q.
    #[arg(long, global = true, num_args = 4, value_names = ["A", "B", "C", "D"], allow_negative_numbers = true)]
    pub params: Option<Vec<String>>,
    /// Largest component sum of an exponent vector kept in a series.
    #[arg(long, global = true, default_value_t = 40)]
    pub budget: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Shorthand for --format json.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalArgs {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LatticeName {
    L,
    L1,
    L2,
    L12,
    M,
}

impl LatticeName {
    pub fn as_str(self) -> &'static str {
        match self {
            LatticeName::L => "L",
            LatticeName::L1 => "L1",
            LatticeName::L2 => "L2",
            LatticeName::L12 => "L12",
            LatticeName::M => "M",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Defining,
    Pairwise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Theta,
    Psi,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Self-dual ternary codes of length 4.
    Codes {
        #[command(subcommand)]
        action: CodesAction,
    },
    /// Generator matrices of the lattices.
    Pair {
        #[command(subcommand)]
        action: PairAction,
    },
    /// Collapsed theta series (representation numbers) of one lattice.
    Spectrum {
        #[arg(long, value_enum, default_value_t = LatticeName::L1)]
        lattice: LatticeName,
    },
    /// Compares the theta series of L1 and L2.
    Isospectral,
    /// Collapsed Θ_{1,1} series of one lattice.
    Invariant {
        #[arg(long, value_enum, default_value_t = LatticeName::L1)]
        lattice: LatticeName,
        #[arg(long, value_enum, default_value_t = KernelArg::Pairwise)]
        kernel: KernelArg,
    },
    /// The discrepancy series δ.
    Delta {
        #[arg(long, value_enum, default_value_t = RouteArg::Psi)]
        route: RouteArg,
        /// Print exponent vectors with polynomial coefficients instead of
        /// collapsing at the parameters.
        #[arg(long)]
        symbolic: bool,
    },
    /// Certificate that L1 and L2 are not isometric.
    Certify,
    /// Recomputes every reference table and identity.
    Verify,
}

#[derive(Subcommand, Debug)]
pub enum CodesAction {
    /// The eight self-dual codes and their orbits.
    List,
    /// The intersection graph of the codes.
    Graph,
}

#[derive(Subcommand, Debug)]
pub enum PairAction {
    /// Generators, Hermite normal forms and indices.
    Show {
        /// Show only this lattice.
        #[arg(long, value_enum)]
        lattice: Option<LatticeName>,
    },
}
