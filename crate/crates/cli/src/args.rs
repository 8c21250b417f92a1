use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "cobcalc",
    version,
    about = "Characteristic numbers, Steenrod actions and generator criteria for symplectic cobordism"
)]
pub struct Cli {
    /// Output format; defaults to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// TOML file with defaults; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Largest total dimension for brute-force Chow expansion (at most 16).
    #[arg(long, global = true, env = "COBCALC_BRUTEFORCE_CAP")]
    pub bruteforce_cap: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Md,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PredicateArg {
    All,
    Even,
    EvenNonAdic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate s_{2d}(Y_{2d}) and its valuation for d = 1..max-d.
    Snumbers {
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        max_d: Option<u64>,
        /// Also expand in the Chow ring where the dimension is under the cap.
        #[arg(long)]
        check_bruteforce: bool,
    },
    /// Run the generator criterion on a family of characteristic numbers.
    VerifyGenerators {
        #[arg(long, conflicts_with = "all_primes_up_to")]
        prime: Option<u64>,
        #[arg(long)]
        all_primes_up_to: Option<u64>,
        #[arg(long)]
        max_d: Option<u64>,
        /// JSON family file; defaults to the Stong construction.
        #[arg(long)]
        family: Option<PathBuf>,
        /// Primes to skip with --all-primes-up-to.
        #[arg(long, value_delimiter = ',')]
        exclude: Vec<u64>,
    },
    /// Apply P^i (or the Bockstein, as "beta") to a b-polynomial mod ℓ.
    Steenrod {
        #[arg(long)]
        prime: Option<u64>,
        /// "P4", "4" or "beta".
        #[arg(long)]
        op: String,
        /// e.g. "b1^2*b2 + 2*b3".
        #[arg(long)]
        class: String,
    },
    /// Compare the two sides of the Ext decomposition in each even weight.
    DecompCheck {
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        max_weight: Option<u64>,
    },
    /// E₂ and MGL ranks, each computed two ways.
    Ranks {
        #[arg(long)]
        max_d: Option<u64>,
        /// Prime used for the generator count.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// List partitions of a weight satisfying a predicate.
    PartitionTools {
        #[arg(long)]
        weight: u32,
        #[arg(long, value_enum, default_value = "all")]
        predicate: PredicateArg,
        /// Needed for even-non-adic.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Express u_ω in the b_i.
    UToB {
        /// Even partition, e.g. "4,2,2".
        #[arg(long)]
        omega: String,
    },
    /// Evaluate a Chow-ring expression given as JSON.
    Chow {
        /// Expression file, or "-" for standard input.
        #[arg(long, conflicts_with = "json", required_unless_present = "json")]
        expr: Option<PathBuf>,
        /// The expression inline.
        #[arg(long)]
        json: Option<String>,
    },
    /// Run the invariant suite.
    SelfTest,
}
