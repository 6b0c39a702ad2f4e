mod play;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use chromatic_nim::oracle::{GameStatus, Limits};
use chromatic_nim::strategies::{advise, pairs_first, pairs_upto};
use chromatic_nim::verify::{fuzz_dominated, verify, VerificationReport};
use chromatic_nim::{ColoringScheme, Oracle, Position, StrategyKind};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "chromatic-nim", version, about = "S-Chromatic Nim: colorings, solver, strategies")]
struct Cli {
    /// Coloring scheme as inline JSON or a path to a JSON file.
    #[arg(long, global = true)]
    scheme: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest heap height the brute-force solver accepts.
    #[arg(long, global = true, default_value_t = chromatic_nim::engine::DEFAULT_MAX_HEIGHT)]
    max_height: u64,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Colors of levels 1..=upto.
    Color {
        #[arg(long, default_value_t = 20)]
        upto: u64,
    },
    /// Status of a position and its winning moves.
    Solve {
        /// Heap heights, comma separated.
        heaps: String,
        /// Use the brute-force solver even when a strategy applies.
        #[arg(long)]
        oracle: bool,
    },
    /// Table of 2-heap P-positions.
    Pp {
        #[arg(long)]
        strategy: Option<String>,
        #[arg(long, conflicts_with = "height")]
        count: Option<u64>,
        #[arg(long)]
        height: Option<u64>,
    },
    /// Check a strategy against the brute-force solver.
    Verify {
        #[arg(long)]
        strategy: Option<String>,
        #[arg(long, default_value_t = 40)]
        height: u64,
        /// Instead of one scheme, verify this many random dominated schemes.
        #[arg(long)]
        fuzz: Option<usize>,
    },
    /// Play against the engine in the terminal.
    Play {
        heaps: String,
        /// Let the engine move first.
        #[arg(long)]
        engine_first: bool,
    },
    /// Run the HTTP service.
    Serve {
        /// Bind address; defaults to CHROMATIC_NIM_ADDR or 127.0.0.1:8080.
        #[arg(long)]
        addr: Option<std::net::SocketAddr>,
        /// JSON file to keep sessions in.
        #[arg(long)]
        state_file: Option<std::path::PathBuf>,
    },
}

/// Error with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }

    fn runtime(message: impl ToString) -> Self {
        Self { code: 1, message: message.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::runtime(e)
    }
}

impl From<chromatic_nim::Error> for Failure {
    fn from(e: chromatic_nim::Error) -> Self {
        Failure::runtime(e)
    }
}

fn load_scheme(arg: Option<&str>) -> Result<ColoringScheme, Failure> {
    let arg = arg.ok_or_else(|| Failure::usage("this command needs --scheme"))?;
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::usage(format!("reading scheme file {arg}: {e}")))?
    };
    ColoringScheme::from_json(&text).map_err(|e| Failure::usage(format!("invalid scheme: {e}")))
}

fn parse_heaps(text: &str, max_height: u64) -> Result<Position, Failure> {
    let pos = Position::parse(text).map_err(|e| Failure::usage(e.message))?;
    if pos.max_height() > max_height {
        return Err(Failure::usage(format!("heap height {} exceeds --max-height {max_height}", pos.max_height())));
    }
    Ok(pos)
}

fn parse_strategy(name: Option<&str>, scheme: &ColoringScheme) -> Result<StrategyKind, Failure> {
    match name {
        Some(name) => name.parse().map_err(|e: chromatic_nim::Error| Failure::usage(e.to_string())),
        None => Ok(StrategyKind::default_for(scheme)),
    }
}

fn oracle_for(scheme: &ColoringScheme, max_height: u64) -> Oracle {
    Oracle::with_limits(scheme.clone(), Limits { max_height, ..Limits::default() })
}

fn run(cli: Cli, out: &mut impl Write) -> Result<ExitCode, Failure> {
    let scheme = || load_scheme(cli.scheme.as_deref());
    match cli.command {
        Command::Color { upto } => {
            let scheme = scheme()?;
            let colors = &scheme.colors_upto(upto)[1..];
            match cli.format {
                Format::Text => {
                    for (i, c) in colors.iter().enumerate() {
                        writeln!(out, "{} {}", i + 1, c.letter())?;
                    }
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({ "scheme_id": scheme.id(), "upto": upto, "colors": colors })
                )?,
                Format::Csv => {
                    writeln!(out, "level,color")?;
                    for (i, c) in colors.iter().enumerate() {
                        writeln!(out, "{},{}", i + 1, c.letter())?;
                    }
                }
            }
        }
        Command::Solve { heaps, oracle: force_oracle } => {
            let scheme = scheme()?;
            let pos = parse_heaps(&heaps, cli.max_height)?;
            let advice = if force_oracle { None } else { advise(&scheme, &pos)? };
            let (backend, status, moves) = match advice {
                Some(advice) => ("strategy", advice.status, advice.mv.into_iter().collect()),
                None => {
                    let mut oracle = oracle_for(&scheme, cli.max_height);
                    let status = oracle.status(&pos)?;
                    ("oracle", status, oracle.winning_moves(&pos)?)
                }
            };
            match cli.format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({ "position": pos, "status": status, "backend": backend, "moves": moves })
                )?,
                Format::Text | Format::Csv => {
                    writeln!(out, "{pos}: {status} ({backend})")?;
                    if status == GameStatus::P {
                        writeln!(out, "no winning move exists")?;
                    }
                    for mv in &moves {
                        writeln!(out, "winning move: {mv}")?;
                    }
                }
            }
        }
        Command::Pp { strategy, count, height } => {
            let scheme = scheme()?;
            let kind = parse_strategy(strategy.as_deref(), &scheme)?;
            let pairs = match (count, height) {
                (_, Some(h)) => {
                    if kind == StrategyKind::Oracle && h > cli.max_height {
                        return Err(Failure::usage(format!("--height exceeds --max-height {}", cli.max_height)));
                    }
                    pairs_upto(&scheme, kind, h)?
                }
                (Some(n), None) => pairs_first(&scheme, kind, n)?,
                (None, None) => return Err(Failure::usage("pp needs --count or --height")),
            };
            match cli.format {
                Format::Csv => {
                    let id = scheme.id();
                    writeln!(out, "scheme_id,a,b")?;
                    for p in &pairs {
                        writeln!(out, "{id},{},{}", p.a, p.b)?;
                    }
                }
                Format::Json => writeln!(out, "{}", serde_json::to_string(&pairs).expect("pairs serialize"))?,
                Format::Text => {
                    for p in &pairs {
                        writeln!(out, "{} {p}", p.index)?;
                    }
                }
            }
        }
        Command::Verify { strategy, height, fuzz } => {
            let reports: Vec<VerificationReport> = match fuzz {
                Some(n) => fuzz_dominated(n, height, cli.seed),
                None => {
                    let scheme = scheme()?;
                    let kind = parse_strategy(strategy.as_deref(), &scheme)?;
                    vec![verify(&scheme, kind, height)]
                }
            };
            match cli.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports).expect("reports serialize"))?,
                Format::Text | Format::Csv => {
                    for r in &reports {
                        writeln!(out, "{}", r.summary(10))?;
                    }
                }
            }
            if !reports.iter().all(VerificationReport::passed) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Play { heaps, engine_first } => {
            let scheme = scheme()?;
            let pos = parse_heaps(&heaps, cli.max_height)?;
            let first = if engine_first { play::Player::Engine } else { play::Player::Human };
            let mut oracle = oracle_for(&scheme, cli.max_height);
            play::play(&mut oracle, pos, first, &mut io::stdin().lock(), out)?;
        }
        Command::Serve { addr, state_file } => {
            let mut config = chromatic_nim_service::Config::from_env().map_err(Failure::usage)?;
            config.max_height = cli.max_height;
            if let Some(addr) = addr {
                config.addr = addr;
            }
            if state_file.is_some() {
                config.state_file = state_file;
            }
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(chromatic_nim_service::serve(config))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
