//! `gaussloop`: compute three-loop invariants of Gauss diagrams and certify
//! their invariance on random Reidemeister walks.
//!
//! Every subcommand prints one JSON report per input diagram on stdout and a
//! short human summary on stderr. Exit status is 0 on success, 1 when a walk
//! finds a violation, 2 on usage or input errors.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gaussloop::verify::Invariant;

#[derive(Parser, Debug)]
#[command(name = "gaussloop", version, about = "Three loop invariants of virtual knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate invariants on every diagram in the input.
    Compute(ComputeArgs),
    /// Certify invariance along a seeded random walk from each diagram.
    Verify(VerifyArgs),
    /// Φ^fr, its reflection and the symmetry detection flags.
    Symmetry(InputArg),
    /// Alternating sum of an invariant over all resolutions of singular arrows.
    FiniteType(FiniteTypeArgs),
    /// Invariants of a homology-labelled diagram on a surface.
    Surface(SurfaceArgs),
    /// Replay a violation transcript and print every visited diagram.
    Replay {
        transcript: PathBuf,
    },
}

#[derive(Args, Debug)]
struct InputArg {
    /// Input file, one Gauss code per line; `-` or nothing reads stdin.
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// φ_{i,j,k}, as `i,j,k`. May be repeated.
    #[arg(long = "phi", value_name = "I,J,K")]
    phi: Vec<String>,
    #[arg(long)]
    phifr: bool,
    /// φ as a normal form in 𝒜.
    #[arg(long)]
    phigen: bool,
    #[arg(long)]
    weights: bool,
    #[arg(long)]
    writhe: bool,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `phi:i,j,k`, `phigen` or `phifr`. May be repeated.
    #[arg(long = "invariant", required = true, value_parser = parse_invariant)]
    invariants: Vec<Invariant>,
    #[arg(long, default_value_t = 200)]
    moves: usize,
    #[arg(long, env = "GAUSSLOOP_SEED", default_value_t = 0)]
    seed: u64,
    /// Never use R1, so Φ^fr is expected to stay fixed.
    #[arg(long)]
    frame_preserving: bool,
    /// Expect Φ^fr to pick up the kink factor after an odd number of R1 moves.
    #[arg(long)]
    parity_aware: bool,
    /// Compare invariants every this many moves (weights are checked every move).
    #[arg(long, default_value_t = 1)]
    check_every: usize,
    /// Where violation transcripts are written.
    #[arg(long, default_value = "gaussloop-transcript.json")]
    transcript: PathBuf,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Args, Debug)]
struct FiniteTypeArgs {
    /// `phi:i,j,k` or `phifr`.
    #[arg(long, value_parser = parse_invariant)]
    invariant: Invariant,
    #[command(flatten)]
    input: InputArg,
}

#[derive(Args, Debug)]
struct SurfaceArgs {
    /// Compare φ̂_Σ ∘ Φ[Σ] with φ of the projected virtual diagram.
    #[arg(long)]
    check_commute: bool,
    #[arg(long)]
    phi_sigma: bool,
    /// Φ_{α,β,γ} for classes written `a1,b1;a2,b2;a3,b3`.
    #[arg(long, value_name = "CLASSES")]
    gv: Option<String>,
    /// Labelled diagram file (`genus g`, code, `arc k: ...` lines).
    input: Option<PathBuf>,
}

fn parse_invariant(s: &str) -> Result<Invariant, String> {
    s.parse().map_err(|e: gaussloop::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(a) => commands::compute(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Symmetry(a) => commands::symmetry(&a),
        Command::FiniteType(a) => commands::finite_type(&a),
        Command::Surface(a) => commands::surface(&a),
        Command::Replay { transcript } => commands::replay(&transcript),
    };
    match outcome {
        Ok(status) => status,
        Err(e) => {
            eprintln!("gaussloop: {e}");
            ExitCode::from(2)
        }
    }
}
