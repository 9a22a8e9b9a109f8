//! Argument parsing and dispatch for the `erle` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use erle_core::container::Mode;
use erle_core::Threshold;

use crate::commands;
use crate::error::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "erle",
    version,
    about = "Run-length compression for 24-bit BMP images"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Classic,
    Enhanced,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Classic => Mode::Classic,
            ModeArg::Enhanced => Mode::Enhanced,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a 24-bit BMP into an ERLE file
    Compress {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "enhanced")]
        mode: ModeArg,
        /// Per-channel threshold (enhanced mode only)
        #[arg(long, default_value_t = 10)]
        threshold: u8,
    },
    /// Expand an ERLE file back into a BMP
    Decompress {
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the header fields of a BMP or ERLE file
    Info { input: PathBuf },
    /// Compression ratios and loss for every BMP in a directory, as CSV
    Report {
        corpus_dir: PathBuf,
        #[arg(long, default_value_t = 10)]
        threshold: u8,
        /// CSV destination; standard output when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run-length histogram of one image, as CSV
    Histogram {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "enhanced")]
        mode: ModeArg,
        #[arg(long, default_value_t = 10)]
        threshold: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the synthetic ten-image fixture corpus into a directory
    Fixtures {
        dir: PathBuf,
        #[arg(long, default_value_t = 256)]
        width: u32,
        #[arg(long, default_value_t = 256)]
        height: u32,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                ExitCode::Usage
            } else {
                ExitCode::Ok
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };

    let result = match cli.command {
        Command::Compress {
            input,
            out: dest,
            mode,
            threshold,
        } => commands::compress(&input, &dest, mode.into(), threshold.into(), out),
        Command::Decompress { input, out: dest } => commands::decompress(&input, &dest),
        Command::Info { input } => commands::info(&input, out),
        Command::Report {
            corpus_dir,
            threshold,
            out: dest,
        } => commands::report(&corpus_dir, threshold.into(), dest.as_deref(), out, err),
        Command::Histogram {
            input,
            mode,
            threshold,
            out: dest,
        } => commands::histogram(
            &input,
            mode.into(),
            Threshold::from(threshold),
            dest.as_deref(),
            out,
        ),
        Command::Fixtures { dir, width, height } => {
            if width == 0 || height == 0 {
                let _ = writeln!(err, "error: width and height must be at least 1");
                return ExitCode::Usage;
            }
            commands::write_fixtures(&dir, width, height).and_then(|paths| {
                for p in paths {
                    writeln!(out, "{}", p.display()).map_err(|source| crate::CliError::Write {
                        path: "<stdout>".into(),
                        source,
                    })?;
                }
                Ok(())
            })
        }
    };

    match result {
        Ok(()) => ExitCode::Ok,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
