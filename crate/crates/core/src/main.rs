use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rider_types::census::Engine;
use rider_types::cli::{cmd_count, cmd_fit, cmd_types, cmd_verify, FitSpec, Outcome, RunSpec, Status};

/// Combinatorial types of nonattacking rider placements.
#[derive(Parser)]
#[command(name = "rider-types", version)]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cache directory for prime counts and censuses. Defaults to
    /// $RIDER_TYPES_CACHE when set.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Move set `c,d;c,d;…` or a piece name (queen, rook, bishop,
    /// nightrider, semiqueen, trident, triangular-rook).
    #[arg(long)]
    moves: String,

    /// Number of pieces.
    #[arg(long)]
    q: usize,

    /// `square`, `triangle` or `poly:x,y;x,y;…` (convex, counterclockwise).
    #[arg(long, default_value = "square")]
    board: String,
}

#[derive(Subcommand)]
enum Command {
    /// Count the combinatorial types of a move set.
    Types {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "geometric")]
        engine: Engine,
        /// Grid engine: single board order (skips stabilization).
        #[arg(long)]
        n: Option<u64>,
        /// Grid engine: largest order tried while stabilizing.
        #[arg(long, default_value_t = 24)]
        n_max: u64,
        /// Grid engine: consecutive unchanged orders required.
        #[arg(long, default_value_t = 8)]
        window: u64,
        /// Random engine: number of placements drawn.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Finite-field engine: smallest prime used.
        #[arg(long, default_value_t = 11)]
        prime_floor: u64,
        /// Geometric engine: sample points per region.
        #[arg(long, default_value_t = 1)]
        refinement: usize,
        /// Exit 1 when the table of known values disagrees.
        #[arg(long)]
        check: bool,
    },
    /// Count nonattacking placements on a board.
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "range")]
        n: Option<u64>,
        /// Inclusive range `lo..hi`.
        #[arg(long, value_parser = parse_range)]
        range: Option<(u64, u64)>,
        /// Local b-file to compare against.
        #[arg(long)]
        compare: Option<PathBuf>,
        /// Use ordered (labelled) counts in the b-file.
        #[arg(long)]
        labelled: bool,
    },
    /// Run a predefined cross-check: table1, thm-q3, thm-3move or fours.
    Verify { name: String },
    /// Fit a quasipolynomial to placement counts and evaluate it at -1.
    Fit {
        /// b-file of labelled counts `n value`.
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        q: usize,
        /// Period; searched for when omitted.
        #[arg(long)]
        period: Option<usize>,
        #[arg(long, default_value_t = 12)]
        max_period: usize,
        /// Degree; defaults to 2q.
        #[arg(long)]
        degree: Option<usize>,
        /// The data counts unordered placements.
        #[arg(long)]
        unlabelled: bool,
        /// Move set, to compare with the table of known values.
        #[arg(long)]
        moves: Option<String>,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad bound {a:?}"))?;
    let b = b
        .trim()
        .trim_start_matches('=')
        .parse()
        .map_err(|_| format!("bad bound {b:?}"))?;
    Ok((a, b))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage.code() as u8 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Usage.code() as u8);
        }
    }
    let outcome: Outcome = match cli.command {
        Command::Types {
            common,
            engine,
            n,
            n_max,
            window,
            samples,
            seed,
            prime_floor,
            refinement,
            check,
        } => cmd_types(&RunSpec {
            moves: common.moves,
            board: common.board,
            q: common.q,
            n,
            n_max,
            window,
            engine,
            samples,
            seed,
            prime_floor,
            refinement,
            check,
            cache_dir: cli.cache_dir,
            ..RunSpec::default()
        }),
        Command::Count {
            common,
            n,
            range,
            compare,
            labelled,
        } => cmd_count(&RunSpec {
            moves: common.moves,
            board: common.board,
            q: common.q,
            n,
            n_range: range,
            compare,
            labelled,
            ..RunSpec::default()
        }),
        Command::Verify { name } => cmd_verify(&name, &cli.cache_dir),
        Command::Fit {
            data,
            q,
            period,
            max_period,
            degree,
            unlabelled,
            moves,
        } => cmd_fit(&FitSpec {
            data,
            period,
            max_period,
            q,
            degree,
            unlabelled,
            moves,
        }),
    };
    for line in &outcome.summary {
        eprintln!("{line}");
    }
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Status::Usage.code() as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.status.code() as u8)
}
