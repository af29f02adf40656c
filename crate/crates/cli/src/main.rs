//! `nilgeo` — exact word-problem and coordinate computations in free
//! nilpotent groups, with the geometric area criterion checked against the
//! Magnus-embedding oracle on every query.
//!
//! Exit codes: 0 success/agreement, 2 usage or parse error, 3 unsupported
//! rank/class or plane, 4 solver disagreement, 5 I/O error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilgeo::basis::{
    c_sum, commutator_graph_size, hall_basis, published_c_recursion, witt_delta, BasisElement,
    BasisError,
};
use nilgeo::geometry::{closure_word, coords_geometric, draw_curve, project_curve, GeoError};
use nilgeo::magnus::{eval_word, oracle_coords};
use nilgeo::words::{parse_word, Alphabet, Word, WordError};
use nilgeo_cli::output::{loop_to_csv, loop_to_svg};
use nilgeo_cli::{build_errata, run_verification};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_DISAGREEMENT: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(
    name = "nilgeo",
    version,
    about = "Mal'cev coordinates and the word problem in free nilpotent groups, by exact lattice-curve areas cross-checked against a truncated Magnus embedding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Number of generators (1..=26; generators are named a, b, c, ...)
    #[arg(short = 'r', long = "rank")]
    rank: usize,
    /// Nilpotency class
    #[arg(short = 'k', long = "class")]
    class: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum LoopFormat {
    Csv,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoordsFormat {
    Tuple,
    Labeled,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Mal'cev coordinates of a word both geometrically and via the
    /// Magnus oracle, and report whether they agree
    Coords {
        #[command(flatten)]
        group: GroupArgs,
        /// Word text, e.g. "abAB" or "a^2 b^-3"
        word: String,
        #[arg(long, value_enum, default_value = "both")]
        format: CoordsFormat,
    },
    /// Decide whether two words represent the same group element
    Eq {
        #[command(flatten)]
        group: GroupArgs,
        word: String,
        other: String,
    },
    /// Write the closure's projected loop on a coordinate plane
    Project {
        #[command(flatten)]
        group: GroupArgs,
        /// Plane named by a weight-k basis element, e.g. "[[b,a],a]"
        #[arg(long)]
        plane: String,
        word: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: LoopFormat,
        /// Output file; stdout when omitted
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Print the Magnus-embedding image of a word
    Magnus {
        #[command(flatten)]
        group: GroupArgs,
        word: String,
    },
    /// Print the Hall basis and the coordinate-count tables
    Basis {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Cross-validate the geometric solver against the oracle on random words
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long = "max-len", default_value_t = 30)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here as well as to stdout
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Recompute every published count, constant, and the worked example
    Errata {
        #[arg(long = "max-k", default_value_t = 6)]
        max_k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
}

fn word_exit(err: &WordError) -> u8 {
    match err {
        WordError::RankOutOfRange(_) => EXIT_UNSUPPORTED,
        _ => EXIT_USAGE,
    }
}

fn geo_exit(err: &GeoError) -> u8 {
    match err {
        GeoError::Basis(BasisError::NotLeftNormed(_))
        | GeoError::Basis(BasisError::ScaleLimitExceeded { .. })
        | GeoError::Basis(BasisError::UnknownElement(_))
        | GeoError::ZeroProjectionConstant { .. } => EXIT_UNSUPPORTED,
        GeoError::Basis(BasisError::BadBracketSyntax(_)) => EXIT_USAGE,
        GeoError::NonDivisibleArea { .. } => EXIT_DISAGREEMENT,
        _ => EXIT_USAGE,
    }
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn parse_input(text: &str, rank: usize) -> Result<(Word, Alphabet), ExitCode> {
    let alphabet = match Alphabet::new(rank) {
        Ok(a) => a,
        Err(e) => return Err(fail(word_exit(&e), e)),
    };
    match parse_word(text, &alphabet) {
        Ok(w) => Ok((w, alphabet)),
        Err(e) => Err(fail(word_exit(&e), e)),
    }
}

fn cmd_coords(group: GroupArgs, word: String, format: CoordsFormat) -> ExitCode {
    let (w, _) = match parse_input(&word, group.rank) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let geometric = match coords_geometric(&w, group.rank, group.class) {
        Ok(c) => c,
        Err(e) => return fail(geo_exit(&e), e),
    };
    let oracle = match oracle_coords(&w, group.rank, group.class) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_DISAGREEMENT, e),
    };
    let render = |c: &nilgeo::geometry::Coords| match format {
        CoordsFormat::Tuple => c.tuple_string(),
        CoordsFormat::Labeled => c.labeled_string(),
        CoordsFormat::Both => format!("{}  {}", c.tuple_string(), c.labeled_string()),
    };
    println!("geometric: {}", render(&geometric));
    println!("oracle:    {}", render(&oracle));
    if geometric == oracle {
        println!("AGREE");
        ExitCode::from(EXIT_OK)
    } else {
        println!("DISAGREE");
        ExitCode::from(EXIT_DISAGREEMENT)
    }
}

fn cmd_eq(group: GroupArgs, word: String, other: String) -> ExitCode {
    let (w, _) = match parse_input(&word, group.rank) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let (v, _) = match parse_input(&other, group.rank) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let geo = match (
        coords_geometric(&w, group.rank, group.class),
        coords_geometric(&v, group.rank, group.class),
    ) {
        (Ok(a), Ok(b)) => a == b,
        (Err(e), _) | (_, Err(e)) => return fail(geo_exit(&e), e),
    };
    let oracle = nilgeo::magnus::equal_oracle(&w, &v, group.rank, group.class);
    println!("{}", if geo { "EQUAL" } else { "DISTINCT" });
    println!("oracle: {}", if oracle { "EQUAL" } else { "DISTINCT" });
    if geo == oracle {
        ExitCode::from(EXIT_OK)
    } else {
        println!("SOLVERS DISAGREE");
        ExitCode::from(EXIT_DISAGREEMENT)
    }
}

fn cmd_project(
    group: GroupArgs,
    plane: String,
    word: String,
    format: LoopFormat,
    out: Option<PathBuf>,
) -> ExitCode {
    let (w, _) = match parse_input(&word, group.rank) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let elem = match BasisElement::parse(&plane) {
        Ok(e) => e,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    if elem.weight() != group.class {
        return fail(
            EXIT_UNSUPPORTED,
            format!(
                "plane {plane} has weight {}, expected the class {}",
                elem.weight(),
                group.class
            ),
        );
    }
    let basis = match hall_basis(group.rank, group.class) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_UNSUPPORTED, e),
    };
    if basis.position(&elem).is_none() {
        return fail(
            EXIT_UNSUPPORTED,
            format!("{plane} is not a Hall basis element here"),
        );
    }
    let rendered = (|| -> Result<String, GeoError> {
        let closure = closure_word(&w, group.rank, group.class)?;
        let curve = draw_curve(&closure, group.rank, group.class - 1)?;
        let poly = project_curve(&curve, &elem)?;
        Ok(match format {
            LoopFormat::Csv => loop_to_csv(&poly),
            LoopFormat::Svg => loop_to_svg(&poly),
        })
    })();
    let rendered = match rendered {
        Ok(s) => s,
        Err(e) => return fail(geo_exit(&e), e),
    };
    match out {
        Some(path) => match std::fs::write(&path, rendered) {
            Ok(()) => ExitCode::from(EXIT_OK),
            Err(e) => fail(EXIT_IO, format!("writing {}: {e}", path.display())),
        },
        None => {
            print!("{rendered}");
            ExitCode::from(EXIT_OK)
        }
    }
}

fn cmd_magnus(group: GroupArgs, word: String) -> ExitCode {
    let (w, _) = match parse_input(&word, group.rank) {
        Ok(v) => v,
        Err(code) => return code,
    };
    println!("{}", eval_word(&w, group.rank, group.class));
    ExitCode::from(EXIT_OK)
}

fn cmd_basis(group: GroupArgs) -> ExitCode {
    let basis = match hall_basis(group.rank, group.class) {
        Ok(b) => b,
        Err(e) => return fail(EXIT_UNSUPPORTED, e),
    };
    for weight in 1..=group.class {
        let names: Vec<String> = basis.stratum(weight).iter().map(|e| e.render()).collect();
        println!("weight {weight}: {}", names.join("  "));
    }
    println!();
    println!("k  witt  c_sum  recursion  graph");
    for k in 1..=group.class {
        let recursion = if group.rank >= 2 {
            published_c_recursion(group.rank, k).to_string()
        } else {
            "-".into()
        };
        let graph = commutator_graph_size(group.rank, k)
            .map(|g| g.to_string())
            .unwrap_or_else(|_| "-".into());
        println!(
            "{k}  {:>4}  {:>5}  {:>9}  {:>5}",
            witt_delta(group.rank, k),
            c_sum(group.rank, k),
            recursion,
            graph
        );
    }
    ExitCode::from(EXIT_OK)
}

fn cmd_verify(
    group: GroupArgs,
    trials: u64,
    max_len: usize,
    seed: u64,
    out: Option<PathBuf>,
) -> ExitCode {
    let report = match run_verification(group.rank, group.class, trials, max_len, seed) {
        Ok(r) => r,
        Err(e) => return fail(geo_exit(&e), e),
    };
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    println!("{json}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, &json) {
            return fail(EXIT_IO, format!("writing {}: {e}", path.display()));
        }
    }
    if report.disagreements.is_empty() {
        ExitCode::from(EXIT_OK)
    } else {
        ExitCode::from(EXIT_DISAGREEMENT)
    }
}

fn cmd_errata(max_k: usize, format: ReportFormat) -> ExitCode {
    if !(1..=6).contains(&max_k) {
        return fail(EXIT_USAGE, "--max-k must lie in 1..=6");
    }
    let report = match build_errata(max_k) {
        Ok(r) => r,
        Err(e) => return fail(geo_exit(&e), e),
    };
    match format {
        ReportFormat::Text => print!("{}", report.to_text()),
        ReportFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            )
        }
    }
    ExitCode::from(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Coords {
            group,
            word,
            format,
        } => cmd_coords(group, word, format),
        Command::Eq { group, word, other } => cmd_eq(group, word, other),
        Command::Project {
            group,
            plane,
            word,
            format,
            out,
        } => cmd_project(group, plane, word, format, out),
        Command::Magnus { group, word } => cmd_magnus(group, word),
        Command::Basis { group } => cmd_basis(group),
        Command::Verify {
            group,
            trials,
            max_len,
            seed,
            out,
        } => cmd_verify(group, trials, max_len, seed, out),
        Command::Errata { max_k, format } => cmd_errata(max_k, format),
    }
}
