//! The subcommand implementations. Data goes to `out`, diagnostics to `err`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use erle_core::container::{self, CompressedImage, Mode};
use erle_core::metrics::{compression_ratio, format_ratio, run_length_histogram};
use erle_core::{bmp, ImageBuffer, Threshold};

use crate::error::CliError;
use crate::fixtures;
use crate::report;

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn stdout_err(source: io::Error) -> CliError {
    CliError::Write {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

fn load_bmp(path: &Path) -> Result<(Vec<u8>, ImageBuffer), CliError> {
    let bytes = read_file(path)?;
    let img = bmp::parse_bmp(&bytes).map_err(|source| CliError::Bmp {
        path: path.to_owned(),
        source,
    })?;
    Ok((bytes, img))
}

/// Sends CSV to `path`, or to `out` when no path is given.
fn emit_csv<F>(path: Option<&Path>, out: &mut dyn Write, write: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let mut buf = Vec::new();
            write(&mut buf).map_err(|source| CliError::Write {
                path: p.to_owned(),
                source,
            })?;
            write_file(p, &buf)
        }
        None => write(out).map_err(stdout_err),
    }
}

/// BMP to ERLE. Prints both sizes and the ratio.
pub fn compress(
    input: &Path,
    output: &Path,
    mode: Mode,
    threshold: Threshold,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (bytes, img) = load_bmp(input)?;
    let packed = CompressedImage::compress(&img, mode, threshold).to_bytes();
    write_file(output, &packed)?;
    let ratio = compression_ratio(bytes.len() as u64, packed.len() as u64)
        .expect("container is never empty");
    writeln!(out, "original: {} bytes", bytes.len()).map_err(stdout_err)?;
    writeln!(out, "compressed: {} bytes", packed.len()).map_err(stdout_err)?;
    writeln!(out, "ratio: {}", format_ratio(ratio)).map_err(stdout_err)
}

/// ERLE to BMP.
pub fn decompress(input: &Path, output: &Path) -> Result<(), CliError> {
    let bytes = read_file(input)?;
    let packed = container::deserialize(&bytes).map_err(|source| CliError::Container {
        path: input.to_owned(),
        source,
    })?;
    let bmp = bmp::write_bmp(&packed.to_image()).map_err(|source| CliError::Bmp {
        path: output.to_owned(),
        source,
    })?;
    write_file(output, &bmp)
}

/// Prints the header of a BMP or ERLE file, one `field: value` per line.
pub fn info(input: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let bytes = read_file(input)?;
    let mut lines = Vec::new();
    if bytes.starts_with(b"BM") {
        let h = bmp::read_header(&bytes).map_err(|source| CliError::Bmp {
            path: input.to_owned(),
            source,
        })?;
        lines.push("format: bmp".to_string());
        for (name, value) in h.fields() {
            if name == "signature" {
                lines.push(format!("{name}: 0x{value:04X}"));
            } else {
                lines.push(format!("{name}: {value}"));
            }
        }
    } else if bytes.starts_with(&container::MAGIC) {
        let h = container::read_header(&bytes).map_err(|source| CliError::Container {
            path: input.to_owned(),
            source,
        })?;
        lines.extend([
            "format: erle".to_string(),
            format!("version: {}", h.version),
            format!("mode: {}", h.mode),
            format!("threshold: {}", h.threshold),
            format!("width: {}", h.width),
            format!("height: {}", h.height),
            format!("record_count: {}", h.record_count),
        ]);
    } else {
        return Err(CliError::Unrecognized {
            path: input.to_owned(),
        });
    }
    for line in lines {
        writeln!(out, "{line}").map_err(stdout_err)?;
    }
    Ok(())
}

/// Corpus report over every BMP in `dir`.
///
/// Unreadable files are skipped with a warning; at least one file must be
/// processed.
pub fn report(
    dir: &Path,
    threshold: Threshold,
    csv_out: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let outcome = report::run_corpus(dir, threshold)?;
    for e in &outcome.skipped {
        let _ = writeln!(err, "warning: skipping {e}");
    }
    if outcome.rows.is_empty() {
        return Err(CliError::EmptyCorpus {
            path: dir.to_owned(),
        });
    }
    emit_csv(csv_out, out, |w| report::write_report_csv(w, &outcome.rows))?;
    let summary = format!(
        "processed {}, skipped {}",
        outcome.rows.len(),
        outcome.skipped.len()
    );
    // keep stdout pure CSV when the CSV goes there
    let sink: &mut dyn Write = if csv_out.is_some() { out } else { err };
    writeln!(sink, "{summary}").map_err(stdout_err)
}

/// Run-length histogram of one image as CSV.
pub fn histogram(
    input: &Path,
    mode: Mode,
    threshold: Threshold,
    csv_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let (_, img) = load_bmp(input)?;
    let hist = run_length_histogram(&mode.encode(&img, threshold));
    emit_csv(csv_out, out, |w| report::write_histogram_csv(w, &hist))
}

/// Writes the ten synthetic fixture BMPs into `dir`.
pub fn write_fixtures(dir: &Path, width: u32, height: u32) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_owned(),
        source,
    })?;
    let mut written = Vec::new();
    for (name, img) in fixtures::corpus(width, height) {
        let path = dir.join(name);
        let bytes = bmp::write_bmp(&img).map_err(|source| CliError::Bmp {
            path: path.clone(),
            source,
        })?;
        write_file(&path, &bytes)?;
        written.push(path);
    }
    Ok(written)
}
