//! Corpus reports and histogram CSV output.
//!
//! CSV is UTF-8 with LF line endings and always starts with a header row.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use erle_core::bmp;
use erle_core::metrics::{bytes_to_kb, RatioReport};
use erle_core::Threshold;
use rayon::prelude::*;

use crate::error::CliError;

/// Column order of the corpus CSV.
pub const REPORT_COLUMNS: [&str; 9] = [
    "name",
    "original_kb",
    "classic_kb",
    "classic_ratio",
    "enhanced_kb",
    "enhanced_ratio",
    "threshold",
    "max_err",
    "psnr_db",
];

pub const HISTOGRAM_COLUMNS: [&str; 2] = ["run_length", "frequency"];

/// One corpus image and its measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusRow {
    pub path: PathBuf,
    pub report: RatioReport,
}

impl CorpusRow {
    /// Formats the row in [`REPORT_COLUMNS`] order.
    pub fn to_record(&self) -> [String; 9] {
        let r = &self.report;
        let psnr = if r.psnr_db.is_infinite() {
            "inf".to_string()
        } else {
            format!("{:.2}", r.psnr_db)
        };
        [
            r.image_name.clone(),
            bytes_to_kb(r.original_size).to_string(),
            bytes_to_kb(r.classic_size).to_string(),
            format!("{:.2}", r.classic_ratio),
            bytes_to_kb(r.enhanced_size).to_string(),
            format!("{:.2}", r.enhanced_ratio),
            r.threshold.to_string(),
            r.max_channel_error.to_string(),
            psnr,
        ]
    }
}

/// Result of scanning a corpus directory.
#[derive(Debug, Default)]
pub struct CorpusOutcome {
    /// Rows in file-name order.
    pub rows: Vec<CorpusRow>,
    /// Files that could not be read or decoded.
    pub skipped: Vec<CliError>,
}

/// `.bmp` files (any case) directly inside `dir`, sorted by file name.
pub fn list_bmps(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        let path = entry.path();
        let is_bmp = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("bmp"));
        if is_bmp && entry.file_type()?.is_file() {
            paths.push(path);
        }
    }
    paths.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(paths)
}

/// Reads one BMP and measures both encoders on it.
pub fn evaluate_file(path: &Path, threshold: Threshold) -> Result<CorpusRow, CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    let img = bmp::parse_bmp(&bytes).map_err(|source| CliError::Bmp {
        path: path.to_owned(),
        source,
    })?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(CorpusRow {
        path: path.to_owned(),
        report: RatioReport::evaluate(name, bytes.len() as u64, &img, threshold),
    })
}

/// Evaluates every BMP in `dir` in parallel. Output order follows file names.
pub fn run_corpus(dir: &Path, threshold: Threshold) -> Result<CorpusOutcome, CliError> {
    let paths = list_bmps(dir).map_err(|source| CliError::Read {
        path: dir.to_owned(),
        source,
    })?;
    let results: Vec<_> = paths
        .par_iter()
        .map(|p| evaluate_file(p, threshold))
        .collect();
    let mut outcome = CorpusOutcome::default();
    for r in results {
        match r {
            Ok(row) => outcome.rows.push(row),
            Err(e) => outcome.skipped.push(e),
        }
    }
    Ok(outcome)
}

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

fn into_io(e: csv::Error) -> io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::other(format!("{other:?}")),
    }
}

pub fn write_report_csv<W: Write>(w: W, rows: &[CorpusRow]) -> io::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(REPORT_COLUMNS).map_err(into_io)?;
    for row in rows {
        out.write_record(row.to_record()).map_err(into_io)?;
    }
    out.flush()
}

/// Writes `run_length,frequency` rows in ascending run length.
pub fn write_histogram_csv<W: Write>(w: W, hist: &BTreeMap<u64, u64>) -> io::Result<()> {
    let mut out = csv_writer(w);
    out.write_record(HISTOGRAM_COLUMNS).map_err(into_io)?;
    for (len, freq) in hist {
        out.write_record([len.to_string(), freq.to_string()])
            .map_err(into_io)?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use erle_core::{ImageBuffer, Rgb24};

    #[test]
    fn report_csv_layout() {
        let img = ImageBuffer::filled(10, 10, Rgb24::gray(5)).unwrap();
        let report = RatioReport::evaluate("flat.bmp", 2048, &img, Threshold::DEFAULT);
        let row = CorpusRow {
            path: "flat.bmp".into(),
            report,
        };
        let mut buf = Vec::new();
        write_report_csv(&mut buf, &[row]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "name,original_kb,classic_kb,classic_ratio,enhanced_kb,enhanced_ratio,threshold,max_err,psnr_db\n\
             flat.bmp,2,0,85.33,0,85.33,10,0,inf\n"
        );
    }

    #[test]
    fn histogram_csv_sorted() {
        let hist = BTreeMap::from([(4, 3), (2, 2)]);
        let mut buf = Vec::new();
        write_histogram_csv(&mut buf, &hist).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "run_length,frequency\n2,2\n4,3\n"
        );
    }
}
