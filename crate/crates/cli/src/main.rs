use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use veronese_core::cap::bounds_check;
use veronese_core::capfile::{self, CapFileError};
use veronese_core::{
    classify, generate, verify, ClassifyOptions, Collineation, Error, FrameStrategy, VeroneseanCap,
};

const EXIT_SEMANTIC: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "veronese",
    version,
    about = "Veronese varieties and Veronesean caps over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the Veronese variety V(n, d) over GF(p) and write it as a cap file.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u64,
        /// Output path; the cap is written to stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Apply a random collineation before writing.
        #[arg(long)]
        scramble: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the cap axioms and print the verification report.
    Verify { path: PathBuf },
    /// Decide projective equivalence with the standard Veronese variety.
    Classify {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Frame::Structured)]
        frame: Frame,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate the field-size bounds for (n, d, p).
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Frame {
    Structured,
    Random,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<CapFileError> for Failure {
    fn from(e: CapFileError) -> Self {
        let code = match e {
            CapFileError::Io { .. } => EXIT_IO,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: impl ToString) -> Failure {
    Failure {
        code: EXIT_IO,
        message: e.to_string(),
    }
}

fn print_text(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|()| out.flush())
        .map_err(io_failure)
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    print_text(&text)
}

fn cmd_generate(
    n: usize,
    d: usize,
    p: u64,
    out: Option<&Path>,
    scramble: bool,
    seed: u64,
) -> Result<u8, Failure> {
    let variety = generate(n, d, p).map_err(Failure::usage)?;
    let mut cap = variety.cap;
    if scramble {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Collineation::random(cap.field(), cap.ambient_dim(), &mut rng);
        cap = cap.transformed(g.matrix()).map_err(Failure::usage)?;
    }
    let summary = json!({
        "points": cap.points().len(),
        "rational_spaces": cap.spaces().len(),
        "ambient_dim": cap.ambient_dim(),
        "regime": variety.regime,
    });
    match out {
        Some(path) => {
            capfile::save(&cap, path)?;
            print_json(&summary)?;
        }
        None => {
            print_text(&capfile::to_json(&cap))?;
            eprintln!("{summary}");
        }
    }
    Ok(0)
}

fn cmd_verify(path: &Path) -> Result<u8, Failure> {
    let cap = capfile::load(path)?;
    let report = verify(&cap);
    print_json(&report)?;
    if let Some((stage, witness)) = report.first_failure() {
        eprintln!(
            "{stage} failed: {}",
            serde_json::to_string(witness).expect("serializable")
        );
        return Ok(EXIT_SEMANTIC);
    }
    Ok(0)
}

fn cmd_classify(path: &Path, frame: Frame, seed: u64) -> Result<u8, Failure> {
    let cap: VeroneseanCap = capfile::load(path)?;
    let frame = match frame {
        Frame::Structured => FrameStrategy::Structured {
            fallback_seed: seed,
        },
        Frame::Random => FrameStrategy::Random { seed },
    };
    let result = classify(&cap, ClassifyOptions { frame });
    print_json(&result)?;
    match result.stage() {
        None => Ok(0),
        Some(stage) => {
            eprintln!("not equivalent: stopped at {stage:?}");
            Ok(EXIT_SEMANTIC)
        }
    }
}

fn cmd_bounds(n: usize, d: usize, p: u64) -> Result<u8, Failure> {
    let report = bounds_check(n, d, p).map_err(|e: Error| Failure::usage(e))?;
    print_json(&report)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Generate {
            n,
            d,
            p,
            out,
            scramble,
            seed,
        } => cmd_generate(*n, *d, *p, out.as_deref(), *scramble, *seed),
        Command::Verify { path } => cmd_verify(path),
        Command::Classify { path, frame, seed } => cmd_classify(path, *frame, *seed),
        Command::Bounds { n, d, p } => cmd_bounds(*n, *d, *p),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
