//! `petalkit` command line: petal-word calculus, diagram codes, Alexander
//! invariants, and move-graph search.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use petalkit::{
    alexander_of_petal, alexander_of_stem, build_diagram, enumerate_legal_moves, find_path,
    petal_to_diagram, verify_path, MovePath, MoveScript, PetalPermutation, ReducedStemDiagram,
    Rotation, SearchConfig, Side, StemPermutation, VerifyError,
};

#[derive(Parser)]
#[command(
    name = "petalkit",
    version,
    about = "Petal permutations of knots: moves, diagrams, invariants, search"
)]
struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonicalize a petal word (rotate to leading 0)
    Canon {
        /// Comma-separated levels, or - to read from stdin
        word: String,
    },
    /// Left- and right-pairs of a petal word, read in the rotation given
    Pairs {
        word: String,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
    },
    /// Stem word of a petal word; the word is used in the rotation given
    #[command(name = "to-stem")]
    ToStem {
        word: String,
        /// Basepoint level
        #[arg(long, default_value_t = 0)]
        t0: u32,
    },
    /// Petal word of a stem word
    #[command(name = "to-petal")]
    ToPetal { word: String },
    /// Apply a move script (JSON file, or - for stdin)
    Apply { script: String },
    /// List the legal moves on a petal word
    Enumerate {
        word: String,
        /// Include additions while the grown word stays within this length
        #[arg(long)]
        level_cap: Option<usize>,
    },
    /// Gauss and PD codes of the reduced stem diagram; word parity picks
    /// petal (odd, default embedding) or stem (even)
    Diagram {
        word: String,
        /// Only the Gauss code
        #[arg(long, conflicts_with = "pd")]
        gauss: bool,
        /// Only the PD code
        #[arg(long)]
        pd: bool,
    },
    /// Alexander polynomial and knot determinant
    Invariant { word: String },
    /// Breadth-first search for a move path between two petal words
    Connect {
        start: String,
        goal: String,
        /// Maximum word length explored (default: longer endpoint + 6)
        #[arg(long)]
        petal_bound: Option<usize>,
        /// Maximum number of moves
        #[arg(long, default_value_t = 10)]
        depth_bound: usize,
        /// Search from the start only instead of both endpoints
        #[arg(long)]
        unidirectional: bool,
        /// Skip the Alexander prefilter on the endpoints
        #[arg(long)]
        no_prefilter: bool,
        /// Worker threads for frontier expansion
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Replay and check a move script or path file (- for stdin)
    Verify {
        script: String,
        /// Do not check Alexander preservation at each step
        #[arg(long)]
        skip_invariants: bool,
    },
    /// Sample a uniform random petal word with 2n+1 petals
    Random {
        n: usize,
        /// RNG seed (overrides PETALKIT_SEED; default 0)
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

struct CliError {
    code: &'static str,
    message: String,
    exit: u8,
}

impl CliError {
    fn domain(code: &'static str, message: impl ToString) -> Self {
        CliError {
            code,
            message: message.to_string(),
            exit: 1,
        }
    }

    fn usage(message: impl ToString) -> Self {
        CliError {
            code: "Usage",
            message: message.to_string(),
            exit: 2,
        }
    }
}

trait IntoCli<T> {
    fn cli(self) -> Result<T, CliError>;
}

macro_rules! impl_into_cli {
    ($($err:ty),*) => {$(
        impl<T> IntoCli<T> for Result<T, $err> {
            fn cli(self) -> Result<T, CliError> {
                self.map_err(|e| CliError::domain(e.code(), e))
            }
        }
    )*};
}

impl_into_cli!(
    petalkit::PermError,
    petalkit::MoveError,
    petalkit::SearchError,
    petalkit::InvariantError,
    VerifyError
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.code, e.message);
            ExitCode::from(e.exit)
        }
    }
}

fn read_source(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::usage(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::usage(format!("reading {arg}: {e}")))
    }
}

fn parse_levels(arg: &str) -> Result<Vec<u32>, CliError> {
    let text = if arg == "-" { read_source("-")? } else { arg.to_string() };
    text.trim()
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| CliError::usage(format!("bad level {p:?} in word {:?}", text.trim())))
        })
        .collect()
}

fn petal_arg(arg: &str) -> Result<(PetalPermutation, Rotation), CliError> {
    let levels = parse_levels(arg)?;
    PetalPermutation::from_rotated_word(&levels).cli()
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Canon { word } => {
            let (sigma, _) = petal_arg(&word)?;
            if cli.json {
                print_json(&sigma);
            } else {
                println!("{sigma}");
            }
        }
        Command::Pairs { word, side } => {
            let (sigma, r) = petal_arg(&word)?;
            let sides: &[Side] = match side {
                SideArg::Left => &[Side::Left],
                SideArg::Right => &[Side::Right],
                SideArg::Both => &[Side::Left, Side::Right],
            };
            let mut out = Vec::new();
            for &s in sides {
                let pairing = sigma.pairing(r, s).cli()?;
                if cli.json {
                    let pairs: Vec<Vec<u32>> =
                        pairing.pairs.iter().map(|p| p.levels().collect()).collect();
                    out.push(json!({"side": s.to_string(), "pairs": pairs}));
                } else {
                    let rendered: Vec<String> =
                        pairing.pairs.iter().map(|p| p.to_string()).collect();
                    println!("{s}: {}", rendered.join(" "));
                }
            }
            if cli.json {
                print_json(&out);
            }
        }
        Command::ToStem { word, t0 } => {
            let (sigma, r) = petal_arg(&word)?;
            let tau = sigma.to_stem(r, t0).cli()?;
            if cli.json {
                print_json(&tau);
            } else {
                println!("{tau}");
            }
        }
        Command::ToPetal { word } => {
            let tau = StemPermutation::new(parse_levels(&word)?).cli()?;
            let sigma = tau.to_petal();
            if cli.json {
                print_json(&sigma);
            } else {
                println!("{sigma}");
            }
        }
        Command::Apply { script } => {
            let text = read_source(&script)?;
            let script: MoveScript = serde_json::from_str(&text)
                .map_err(|e| CliError::domain("BadScript", format!("parsing script: {e}")))?;
            let path = replay_script(script)?;
            if cli.json {
                print_json(&path);
            } else {
                println!("{}", path.end());
            }
        }
        Command::Enumerate { word, level_cap } => {
            let (sigma, _) = petal_arg(&word)?;
            let moves = enumerate_legal_moves(&sigma, level_cap);
            if cli.json {
                let items: Vec<serde_json::Value> = moves
                    .iter()
                    .map(|(mv, result)| json!({"move": mv, "result": result.word()}))
                    .collect();
                print_json(&items);
            } else {
                for (mv, result) in &moves {
                    println!("{mv} -> {result}");
                }
            }
        }
        Command::Diagram { word, gauss, pd } => {
            let levels = parse_levels(&word)?;
            let diagram = if levels.len() % 2 == 1 {
                petal_to_diagram(&PetalPermutation::new(levels).cli()?)
            } else {
                build_diagram(&StemPermutation::new(levels).cli()?)
            };
            print_diagram(&diagram, cli.json, gauss, pd);
        }
        Command::Invariant { word } => {
            let levels = parse_levels(&word)?;
            let result = if levels.len() % 2 == 1 {
                alexander_of_petal(&PetalPermutation::new(levels).cli()?).cli()?
            } else {
                alexander_of_stem(&StemPermutation::new(levels).cli()?).cli()?
            };
            // One-line object in both modes; this is the machine format too.
            print_json(&json!({
                "alexander": result.polynomial.coefficient_list(),
                "determinant": result.determinant,
            }));
        }
        Command::Connect {
            start,
            goal,
            petal_bound,
            depth_bound,
            unidirectional,
            no_prefilter,
            threads,
        } => {
            if let Some(n) = threads {
                // Best effort: the global pool may already exist.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            let (start, _) = petal_arg(&start)?;
            let (goal, _) = petal_arg(&goal)?;
            let mut cfg = SearchConfig::default_for(&start, &goal);
            if let Some(pb) = petal_bound {
                cfg.petal_bound = pb;
            }
            cfg.depth_bound = depth_bound;
            cfg.bidirectional = !unidirectional;
            cfg.invariant_prefilter = !no_prefilter;
            let path = find_path(&start, &goal, &cfg).cli()?;
            if cli.json {
                print_json(&path);
            } else {
                println!("path ({} moves)", path.moves.len());
                println!("start: {}", path.start);
                for (k, (mv, step)) in path.moves.iter().zip(&path.steps).enumerate() {
                    println!("{}. {mv} -> {step}", k + 1);
                }
            }
        }
        Command::Verify {
            script,
            skip_invariants,
        } => {
            let text = read_source(&script)?;
            let path = parse_path_or_script(&text)?;
            verify_path(&path, !skip_invariants).cli()?;
            if skip_invariants {
                println!("OK ({} moves)", path.moves.len());
            } else {
                println!("OK ({} moves, invariant preserved)", path.moves.len());
            }
        }
        Command::Random { n, seed } => {
            let seed = match seed {
                Some(s) => s,
                None => match std::env::var("PETALKIT_SEED") {
                    Ok(v) => v.parse::<u64>().map_err(|_| {
                        CliError::usage(format!("PETALKIT_SEED is not an integer: {v:?}"))
                    })?,
                    Err(_) => 0,
                },
            };
            let sigma = petalkit::random_petal(n, seed);
            if cli.json {
                print_json(&sigma);
            } else {
                println!("{sigma}");
            }
        }
    }
    Ok(())
}

/// Applies a script move by move so failures carry the step index.
fn replay_script(script: MoveScript) -> Result<MovePath, CliError> {
    let mut steps = Vec::with_capacity(script.moves.len());
    let mut cur = script.start.clone();
    for (k, mv) in script.moves.iter().enumerate() {
        cur = mv
            .apply(&cur)
            .map_err(|e| CliError::domain("IllegalMoveAtStep", format!("step {k}: {e}")))?;
        steps.push(cur.clone());
    }
    Ok(MovePath {
        start: script.start,
        moves: script.moves,
        steps,
    })
}

/// Accepts either the extended path object (`{"script": ..., "steps": ...}`)
/// or a bare move-script array; scripts are replayed to obtain their steps.
fn parse_path_or_script(text: &str) -> Result<MovePath, CliError> {
    if let Ok(path) = serde_json::from_str::<MovePath>(text) {
        return Ok(path);
    }
    let script: MoveScript = serde_json::from_str(text)
        .map_err(|e| CliError::domain("BadScript", format!("parsing script: {e}")))?;
    replay_script(script)
}

fn print_diagram(diagram: &ReducedStemDiagram, as_json: bool, gauss_only: bool, pd_only: bool) {
    let both = !(gauss_only || pd_only);
    let gauss = diagram.gauss_code();
    let pd = diagram.pd_code();
    if as_json {
        let mut obj = serde_json::Map::new();
        obj.insert("crossings".into(), json!(diagram.crossing_count()));
        if both || gauss_only {
            obj.insert("gauss".into(), json!(gauss.entries));
            obj.insert("signs".into(), json!(gauss.signs));
        }
        if both || pd_only {
            obj.insert("pd".into(), json!(pd.tuples));
        }
        print_json(&serde_json::Value::Object(obj));
        return;
    }
    println!("crossings: {}", diagram.crossing_count());
    if both || gauss_only {
        let signs: Vec<String> = gauss.signs.iter().map(|s| s.to_string()).collect();
        println!("gauss: {gauss}");
        println!("signs: {}", signs.join(" "));
    }
    if both || pd_only {
        println!("pd: {pd}");
    }
}
