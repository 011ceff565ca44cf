use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "arrtopo", version, about = "Topological invariants of complex line arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the built-in arrangements.
    Catalog,
    /// Intersection lattice, Poincaré polynomials and shape.
    Invariants(Common),
    /// Components of the first resonance variety, with sampled depths.
    Resonance(Common),
    /// Multinets and pointed multinets on the whole arrangement.
    Multinets(Common),
    /// Milnor fiber homology and monodromy.
    Milnor(Common),
    /// Boundary manifold and boundary of the Milnor fiber.
    Boundary(Common),
    /// A finite cyclic cover of the projective complement.
    Covers(Common),
    /// Braid monodromy presentation of the complement group.
    Presentation(Common),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Degree {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Built-in arrangement, e.g. `B3` or `pencil:4`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub catalog: Option<String>,
    /// JSON file, or a file holding a defining polynomial.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub multiplicities: Option<Vec<u64>>,
    /// A prime, or `auto` for primes congruent to 1 modulo the cover order.
    #[arg(long, default_value = "auto")]
    pub field: String,
    /// Number of automatically chosen primes.
    #[arg(long, default_value_t = 3)]
    pub primes: usize,
    #[arg(long, value_enum, default_value = "1")]
    pub q: Degree,
    #[arg(long)]
    pub json: bool,
    /// Compare the report against a golden JSON file.
    #[arg(long)]
    pub expect: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 50_000_000)]
    pub budget_nodes: u64,
    #[arg(long, default_value_t = 4096)]
    pub budget_cols: usize,
    /// Residues of the meridians for `covers`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub chi: Option<Vec<i64>>,
    /// Order of the cyclic cover for `covers`.
    #[arg(long = "mod")]
    pub modulus: Option<u64>,
    /// Print the plumbing graph in DOT format instead of a report.
    #[arg(long)]
    pub dot: bool,
}
