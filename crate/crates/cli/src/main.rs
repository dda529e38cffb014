mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Outcome;

#[derive(Parser)]
#[command(
    name = "permsym",
    version,
    about = "Permutation-invariant qubit states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit CSV instead of JSON where the output is a table.
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Args, Clone)]
pub struct GroupArgs {
    /// Group kind: S, A, C or D, optionally with the arity (e.g. A4).
    #[arg(long)]
    pub group: String,
    /// Number of qubits; may be omitted when --group carries it.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Clone, Default)]
pub struct CharArgs {
    /// Index into the list printed by `characters` (0 is trivial).
    #[arg(long = "char")]
    pub index: Option<usize>,
    /// Phase of the full cycle as a fraction of a turn, e.g. 1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub t_epsilon: Option<String>,
    /// Sign of the reversal, +1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    pub t_tau: Option<i32>,
}

#[derive(Subcommand)]
enum Command {
    /// List the orbits of a group on bit strings.
    Orbits {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// List the one-dimensional characters of a group.
    Characters {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Generalized Dicke state of the orbit through --bits.
    Dicke {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        character: CharArgs,
        #[arg(long)]
        bits: String,
    },
    /// Character-weighted symmetrization of single-qubit states.
    Symmetrize {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        character: CharArgs,
        /// Amplitudes "re,im,re,im" per qubit, separated by ';'.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "bloch")]
        qubits: Option<String>,
        /// Bloch angles "theta,phi" in radians per qubit, separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        bloch: Option<String>,
    },
    /// Test invariance of a state up to phase and report the character.
    Invariance {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        state: String,
    },
    /// Expand an invariant state in generalized Dicke states.
    Decompose {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        state: String,
    },
    /// Classify the necklace through a bit string.
    Necklace {
        #[arg(long)]
        bits: String,
    },
    /// Decide whether a cyclically invariant state is dihedrally invariant.
    CheckDn {
        #[arg(long)]
        state: String,
    },
    /// Decide whether a dihedrally invariant state is fully symmetric.
    CheckSn {
        #[arg(long)]
        state: String,
    },
    /// The three-qubit state a|α⟩ + b|β⟩.
    M3 {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// The four-qubit alternating-group state.
    M4 {
        /// Emit the complex conjugate instead.
        #[arg(long)]
        conjugate: bool,
        /// Run a random local-unitary search towards the conjugate.
        #[arg(long)]
        lu_search: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Single-qubit unitary connecting M3(1,0) to M3(a,b), and the
    /// operator reaching the conjugate.
    M3Lu {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Dimension of the local-unitary stabilizer algebra.
    StabDim {
        #[arg(long)]
        state: String,
    },
    /// Reduced-density spectra and average bipartite entropy.
    Invariants {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 1)]
        block: usize,
    },
    /// Phases of the four-qubit state under every even permutation.
    Table1,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let csv = cli.csv;
    let (name, result) = match cli.command {
        Command::Orbits { group } => ("orbits", commands::orbits(&group, csv)),
        Command::Characters { group } => ("characters", commands::characters(&group, csv)),
        Command::Dicke {
            group,
            character,
            bits,
        } => ("dicke", commands::dicke(&group, &character, &bits)),
        Command::Symmetrize {
            group,
            character,
            qubits,
            bloch,
        } => (
            "symmetrize",
            commands::symmetrize(&group, &character, qubits.as_deref(), bloch.as_deref()),
        ),
        Command::Invariance { group, state } => {
            ("invariance", commands::invariance(&group, &state))
        }
        Command::Decompose { group, state } => ("decompose", commands::decompose(&group, &state)),
        Command::Necklace { bits } => ("necklace", commands::necklace(&bits)),
        Command::CheckDn { state } => ("check-dn", commands::check_dn(&state)),
        Command::CheckSn { state } => ("check-sn", commands::check_sn(&state)),
        Command::M3 { a, b } => ("m3", commands::m3(&a, &b)),
        Command::M4 {
            conjugate,
            lu_search,
            seed,
        } => ("m4", commands::m4(conjugate, lu_search, seed)),
        Command::M3Lu { a, b } => ("m3-lu", commands::m3_lu(&a, &b)),
        Command::StabDim { state } => ("stab-dim", commands::stab_dim(&state)),
        Command::Invariants { state, block } => ("invariants", commands::invariants(&state, block)),
        Command::Table1 => ("table1", commands::table1(csv)),
    };
    output::emit(name, result.map_err(Outcome::from))
}
