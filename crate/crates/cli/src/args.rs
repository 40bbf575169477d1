use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "wb", version, about = "Exact Witt-Burnside, necklace and aperiodic ring arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a finite group.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Arithmetic in the Witt-Burnside ring.
    Witt(ArithArgs),
    /// Arithmetic in the necklace ring.
    Necklace(ArithArgs),
    /// Arithmetic in the aperiodic ring.
    Aperiodic(ArithArgs),
    /// Ghost map of a vector, or its inverse.
    Ghost(GhostArgs),
    /// Teichmüller map from Witt to necklace (or aperiodic) coordinates.
    Teichmuller(TeichArgs),
    /// Rescaling between necklace and aperiodic coordinates.
    Theta(ThetaArgs),
    /// Induction from a subgroup.
    Ind(IndResArgs),
    /// Restriction to a subgroup.
    Res(IndResArgs),
    /// Universal sum, product or negation polynomials.
    Universal(UniversalArgs),
    /// The cyclic case on a truncation set.
    Cyclic {
        #[command(subcommand)]
        cmd: CyclicCmd,
    },
    /// Tables of the polynomials P_{n,i,j}(q).
    Qpoly {
        #[command(subcommand)]
        cmd: QpolyCmd,
    },
    /// q-universal polynomials on a truncation set.
    Quniversal(QuniversalArgs),
    /// The q-deformed cyclic case.
    Qwitt {
        /// Deformation parameter: an integer or the letter `q`.
        #[arg(long, global = true, allow_hyphen_values = true)]
        q: Option<String>,
        #[command(subcommand)]
        cmd: CyclicCmd,
    },
    /// Artin-Hasse map into F_q-curves.
    Artinhasse(ArtinArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// Subgroup classes, table of marks and its inverse.
    Info {
        #[arg(long)]
        group: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpArg {
    Add,
    Mul,
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum UniversalOp {
    Sum,
    Prod,
    Neg,
}

#[derive(Debug, Args)]
pub struct ArithArgs {
    #[arg(value_enum)]
    pub op: OpArg,
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub lhs: PathBuf,
    #[arg(long)]
    pub rhs: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GhostArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub ring: String,
    /// W, Nr or Ap (long names accepted).
    #[arg(long)]
    pub flavor: String,
    #[arg(long)]
    pub inverse: bool,
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct TeichArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub inverse: bool,
    /// Use the aperiodic target (the map γ).
    #[arg(long)]
    pub aperiodic: bool,
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub inverse: bool,
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct IndResArgs {
    #[arg(long)]
    pub group: String,
    /// Label of the subgroup class.
    #[arg(long)]
    pub subgroup: String,
    #[arg(long)]
    pub ring: String,
    /// Nr or Ap.
    #[arg(long)]
    pub flavor: String,
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct UniversalArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long, value_enum)]
    pub op: UniversalOp,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct TruncArgs {
    /// Truncate at div(N).
    #[arg(long)]
    pub trunc: Option<u64>,
    /// Explicit divisor-closed truncation set.
    #[arg(long = "trunc-set", value_delimiter = ',')]
    pub trunc_set: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct CycArithArgs {
    #[arg(value_enum)]
    pub op: OpArg,
    #[command(flatten)]
    pub trunc: TruncArgs,
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub lhs: PathBuf,
    #[arg(long)]
    pub rhs: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CycUnaryArgs {
    #[command(flatten)]
    pub trunc: TruncArgs,
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum CyclicCmd {
    Witt(CycArithArgs),
    Necklace(CycArithArgs),
    Aperiodic(CycArithArgs),
    Ghost {
        #[arg(long)]
        flavor: String,
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        args: CycUnaryArgs,
    },
    Teichmuller {
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        args: CycUnaryArgs,
    },
    Theta {
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        args: CycUnaryArgs,
    },
    /// Frobenius f_r on Witt, necklace or aperiodic vectors.
    Frobenius {
        #[arg(long)]
        r: u64,
        #[command(flatten)]
        args: CycUnaryArgs,
    },
    /// Verschiebung V_r.
    Verschiebung {
        #[arg(long)]
        r: u64,
        #[command(flatten)]
        args: CycUnaryArgs,
    },
    Universal {
        #[arg(long, value_enum)]
        op: UniversalOp,
        #[command(flatten)]
        trunc: TruncArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum QpolyCmd {
    /// All P_{n,i,j}(q) with n ≤ N.
    #[command(name = "P")]
    P {
        #[arg(long)]
        n: u64,
    },
}

#[derive(Debug, Args)]
pub struct QuniversalArgs {
    #[arg(long, value_enum)]
    pub op: UniversalOp,
    #[command(flatten)]
    pub trunc: TruncArgs,
}

#[derive(Debug, Args)]
pub struct ArtinArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    /// Truncation degree N, using T = {1..N}.
    #[arg(long)]
    pub deg: u64,
    #[arg(long, default_value = "Z")]
    pub ring: String,
    /// Witt vector on {1..N}; omitted means the generic vector with symbolic components.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Overrides the number of samples per configuration.
    #[arg(long)]
    pub size: Option<usize>,
    /// Runs against a deliberately corrupted structure constant.
    #[arg(long)]
    pub inject_fault: bool,
}
