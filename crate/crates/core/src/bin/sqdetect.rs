use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sqdetect::bench;
use sqdetect::reference::{gen_planted, gen_squarefree, Corpus, CorpusEntry, Label};
use sqdetect::stream::detect_stream;
use sqdetect::Algorithm;

/// Report the first square (a factor `xx`) in a byte stream.
///
/// Exit status: 0 when a square was found, 1 when the input is squarefree,
/// 2 on I/O or usage errors.
#[derive(Parser, Debug)]
#[command(name = "sqdetect", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    detect: DetectArgs,
}

#[derive(Args, Debug)]
struct DetectArgs {
    #[arg(long, value_enum, default_value_t = Algorithm::Ordered)]
    algo: Algorithm,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Input file; standard input when absent or `-`.
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a labelled corpus line (`SF\t<word>` or `SQ:<step>:<start>:<length>\t<word>`).
    Gen {
        /// Length of the squarefree word.
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        sigma: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit a squarefree prefix of this length followed by a planted square.
        #[arg(long)]
        plant: Option<usize>,
    },
    /// Time the detectors on squarefree ternary inputs and print CSV.
    Bench {
        /// Comma-separated, strictly increasing input lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Algorithm::Trap, Algorithm::Ordered])]
        algo: Vec<Algorithm>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn detect(args: &DetectArgs) -> Result<i32> {
    let outcome = match &args.file {
        Some(path) if path.as_os_str() != "-" => {
            let file =
                File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
            detect_stream(BufReader::new(file), args.algo)
        }
        _ => detect_stream(io::stdin().lock(), args.algo),
    }
    .context("reading input")?;
    let line = match args.format {
        Format::Text => outcome.to_text(),
        Format::Json => outcome.to_json(),
    };
    writeln!(io::stdout().lock(), "{line}")?;
    Ok(outcome.exit_code())
}

fn gen(n: usize, sigma: usize, seed: u64, plant: Option<usize>) -> Result<i32> {
    let entry = match plant {
        Some(m) => {
            let (text, label) = gen_planted(m, sigma, seed)?;
            CorpusEntry { label, text }
        }
        None => CorpusEntry {
            label: Label::Squarefree,
            text: gen_squarefree(n, sigma, seed)?,
        },
    };
    let corpus = Corpus {
        seed,
        sigma,
        entries: vec![entry],
    };
    corpus.validate()?;
    corpus.write_to(io::stdout().lock())?;
    Ok(0)
}

fn run_bench(sizes: &[usize], algos: &[Algorithm], seed: u64) -> Result<i32> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        bail!("--sizes must be strictly increasing");
    }
    let rows = bench::run(sizes, algos, seed)?;
    bench::write_csv(&rows, io::stdout().lock())?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        None => detect(&cli.detect),
        Some(Command::Gen {
            n,
            sigma,
            seed,
            plant,
        }) => gen(*n, *sigma, *seed, *plant),
        Some(Command::Bench { sizes, algo, seed }) => run_bench(sizes, algo, *seed),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("sqdetect: {e:#}");
            ExitCode::from(2)
        }
    }
}
