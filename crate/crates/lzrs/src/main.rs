use clap::{Parser, Subcommand, ValueEnum};
use lzrs::channel::{self, Experiment};
use lzrs::framing;
use lzrs::lz77;
use lzrs::pipeline::{self, CodeMode, DecodeStatus, EncodeConfig, EncodeError, FailCause};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_DECODE_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "lzrs", about = "LZ77 compression with Reed-Solomon parity hidden in pointer choices", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Adaptive,
    Constant,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into a protected container
    Pack {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "adaptive")]
        mode: ModeArg,
        /// Constant-mode parity budget per block
        #[arg(long, default_value_t = 1)]
        e: u8,
        /// Protection level of the first block (0 keeps the payload readable
        /// by a plain LZ77 decoder)
        #[arg(long, default_value_t = 1)]
        e1: u8,
        #[arg(long, default_value_t = lz77::DEFAULT_WINDOW)]
        window: usize,
        #[arg(long, default_value_t = lz77::DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Decode a protected container
    Unpack {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = lz77::DEFAULT_WINDOW)]
        window: usize,
        #[arg(long, default_value_t = lz77::DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Flip payload bits of a container at a given bit-error rate
    Corrupt {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        ber: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Report redundancy statistics for input prefixes
    Stats {
        input: PathBuf,
        /// Prefix lengths to analyze; whole file when omitted
        #[arg(long = "prefix-len")]
        prefix_len: Vec<usize>,
        #[arg(long, default_value_t = lz77::DEFAULT_WINDOW)]
        window: usize,
        #[arg(long, default_value_t = lz77::DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Run the corruption-trial sweep over a corpus directory and write CSV
    Bench {
        #[arg(long)]
        corpus: PathBuf,
        /// Comma-separated bit-error rates
        #[arg(long, value_delimiter = ',', default_value = "1e-5,3e-5,1e-4,3e-4,1e-3")]
        bers: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        trials: u32,
        #[arg(long)]
        out: PathBuf,
        /// First-block budget for the adaptive runs
        #[arg(long, default_value_t = 5)]
        e1: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Truncate each corpus file to this many bytes
        #[arg(long)]
        prefix_len: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, String> {
    fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), String> {
    fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_lz_params(window: usize, max_len: usize) -> Result<(), String> {
    if !(1..=lz77::MAX_WINDOW).contains(&window) {
        return Err(format!("window must be in 1..={}", lz77::MAX_WINDOW));
    }
    if !(1..=255).contains(&max_len) {
        return Err("max-len must be in 1..=255".into());
    }
    Ok(())
}

fn run(cmd: Command) -> Result<ExitCode, String> {
    match cmd {
        Command::Pack { input, output, mode, e, e1, window, max_len } => {
            check_lz_params(window, max_len)?;
            let source = read(&input)?;
            let code_mode = match mode {
                ModeArg::Adaptive => CodeMode::Adaptive { e1 },
                ModeArg::Constant => CodeMode::Constant { e, e1: e },
            };
            let cfg = EncodeConfig { mode: code_mode, window, max_len };
            let enc = match pipeline::encode(&source, &cfg) {
                Ok(enc) => enc,
                Err(err @ EncodeError::InsufficientCapacity { .. }) => {
                    return Err(err.to_string());
                }
                Err(err) => return Err(err.to_string()),
            };
            write(&output, &enc.file)?;
            println!("payload_bytes={}", enc.payload_len);
            println!("blocks={}", enc.plan.blocks.len());
            println!("mean_e={:.4}", enc.plan.mean_e());
            println!("clamp_events={}", enc.plan.clamp_events);
            Ok(ExitCode::SUCCESS)
        }
        Command::Unpack { input, output, window, max_len } => {
            check_lz_params(window, max_len)?;
            let file = read(&input)?;
            let out = pipeline::decode(&file, window, max_len).map_err(|e| e.to_string())?;
            println!("blocks_corrected={}", out.blocks_corrected);
            match out.status {
                DecodeStatus::Ok | DecodeStatus::Corrected => {
                    write(&output, &out.data)?;
                    println!("status=ok");
                    Ok(ExitCode::SUCCESS)
                }
                DecodeStatus::Failed { block, cause } => {
                    let partial = output.with_extension(partial_extension(&output));
                    write(&partial, &out.data)?;
                    let cause = match cause {
                        FailCause::Rs => "rs",
                        FailCause::Stream => "stream",
                        FailCause::Truncated => "truncated",
                    };
                    println!("status=failed block={block} cause={cause}");
                    println!("partial={}", partial.display());
                    Ok(ExitCode::from(EXIT_DECODE_FAILURE))
                }
            }
        }
        Command::Corrupt { input, output, ber, seed } => {
            if !(0.0..=1.0).contains(&ber) {
                return Err("ber must be in [0, 1]".into());
            }
            let mut file = read(&input)?;
            let flips = channel::corrupt_file(&mut file, &channel::ErrorModel { ber, seed })
                .map_err(|e| e.to_string())?;
            write(&output, &file)?;
            println!("flipped_bits={flips}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Stats { input, prefix_len, window, max_len } => {
            check_lz_params(window, max_len)?;
            let source = read(&input)?;
            let prefixes = if prefix_len.is_empty() { vec![source.len()] } else { prefix_len };
            for len in prefixes {
                let prefix = &source[..len.min(source.len())];
                let tokens = lz77::compress(prefix, window, max_len);
                let stream_len = lz77::RECORD_LEN * tokens.len();
                let emax = if tokens.is_empty() {
                    0
                } else {
                    framing::max_constant_e(&tokens, stream_len)
                };
                let plan = framing::plan_blocks(&tokens, stream_len, 1);
                println!(
                    "prefix_len={} payload_bytes={} max_constant_e={} mean_adaptive_e={:.4}",
                    prefix.len(),
                    stream_len,
                    emax,
                    plan.mean_e()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { corpus, bers, trials, out, e1, seed, prefix_len } => {
            if trials == 0 {
                return Err("trials must be at least 1".into());
            }
            for &b in &bers {
                if !(0.0..=1.0).contains(&b) {
                    return Err("every ber must be in [0, 1]".into());
                }
            }
            let mut entries: Vec<PathBuf> = fs::read_dir(&corpus)
                .map_err(|e| format!("{}: {e}", corpus.display()))?
                .filter_map(|r| r.ok())
                .map(|d| d.path())
                .filter(|p| p.is_file())
                .collect();
            entries.sort();
            if entries.is_empty() {
                return Err(format!("no files in corpus directory {}", corpus.display()));
            }
            let mut reports = Vec::new();
            for path in entries {
                let mut source = read(&path)?;
                if let Some(n) = prefix_len {
                    source.truncate(n);
                }
                let name = path
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_default();
                let tokens = lz77::compress(&source, lz77::DEFAULT_WINDOW, lz77::DEFAULT_MAX_LEN);
                let emax = if tokens.is_empty() {
                    0
                } else {
                    framing::max_constant_e(&tokens, lz77::RECORD_LEN * tokens.len())
                };
                for mode in [CodeMode::Constant { e: emax, e1: emax }, CodeMode::Adaptive { e1 }] {
                    let exp = Experiment {
                        input: name.clone(),
                        mode,
                        window: lz77::DEFAULT_WINDOW,
                        max_len: lz77::DEFAULT_MAX_LEN,
                        bers: bers.clone(),
                        trials,
                        base_seed: seed,
                    };
                    let mut batch =
                        channel::run_experiment(&source, &exp).map_err(|e| e.to_string())?;
                    for r in &batch {
                        println!(
                            "input={} algorithm={} ber={} successes={}/{}",
                            r.input, r.algorithm, r.ber, r.successes, r.trials
                        );
                    }
                    reports.append(&mut batch);
                }
            }
            let mut csv = Vec::new();
            channel::write_csv(&mut csv, &reports).map_err(|e| e.to_string())?;
            write(&out, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn partial_extension(path: &Path) -> String {
    match path.extension() {
        Some(ext) => format!("{}.partial", ext.to_string_lossy()),
        None => "partial".into(),
    }
}
