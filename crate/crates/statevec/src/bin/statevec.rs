use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use statevec::algorithms::DEFAULT_MAX_ATTEMPTS;
use statevec::cli::{
    cmd_deutsch, cmd_qft, cmd_shor, cmd_simulate, CliError, DEFAULT_SEED, EXIT_USAGE,
};

#[derive(Parser)]
#[command(
    name = "statevec",
    version,
    about = "State-vector quantum circuit simulator"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a circuit file on the all-zero register and print the outcome
    /// distribution
    Simulate {
        /// Circuit file path
        file: std::path::PathBuf,
        /// Also sample this many measurement shots
        #[arg(long, default_value_t = 0)]
        shots: u64,
        /// Seed for the measurement sampler
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Decide whether a one-bit function is constant or balanced
    Deutsch {
        /// The function table as two bits, f(0) then f(1), e.g. 01
        bits: String,
    },
    /// Inspect the quantum Fourier transform circuit
    Qft {
        /// Number of qubits
        #[arg(long)]
        n: usize,
        /// Compare the circuit decomposition against the dense matrix
        #[arg(long)]
        check: bool,
    },
    /// Factor an odd composite number
    Shor {
        /// The number to factor
        n: u64,
        /// Seed for base selection and measurement
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Bases to try before giving up
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: usize,
    },
}

fn parse_bits(bits: &str) -> Result<(bool, bool), CliError> {
    let bs: Vec<char> = bits.chars().collect();
    if bs.len() != 2 || bs.iter().any(|&c| c != '0' && c != '1') {
        return Err(CliError::Usage(format!(
            "expected two bits like 01, got `{bits}`"
        )));
    }
    Ok((bs[0] == '1', bs[1] == '1'))
}

fn run(args: Args, out: &mut dyn Write) -> Result<(), CliError> {
    match args.command {
        Command::Simulate { file, shots, seed } => {
            let source = std::fs::read_to_string(&file).map_err(|e| {
                CliError::Io(std::io::Error::new(
                    e.kind(),
                    format!("{}: {e}", file.display()),
                ))
            })?;
            cmd_simulate(out, &source, shots, seed)
        }
        Command::Deutsch { bits } => {
            let (f0, f1) = parse_bits(&bits)?;
            cmd_deutsch(out, f0, f1)
        }
        Command::Qft { n, check } => cmd_qft(out, n, check),
        Command::Shor {
            n,
            seed,
            max_attempts,
        } => cmd_shor(out, n, seed, max_attempts),
    }
}

fn main() -> ExitCode {
    // all terminal writes are best-effort: a closed stream must not panic
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if e.use_stderr() => {
            let _ = write!(std::io::stderr(), "{e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
        Err(e) => {
            // --help and --version land here
            let _ = write!(std::io::stdout(), "{e}");
            return ExitCode::SUCCESS;
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(args, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => {
            // the reader downstream hung up, as in `statevec ... | head`
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
