//! The `ERLE` file format for run-length compressed images.
//!
//! All multi-byte integers are little-endian.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "ERLE"
//!      4     1  version, 1
//!      5     1  mode (0 classic, 1 enhanced)
//!      6     1  threshold (0 for classic)
//!      7     1  reserved, 0
//!      8     4  width
//!     12     4  height
//!     16     4  record count
//!     20   4*n  records: r, g, b, count (1..=255)
//! ```
//!
//! Runs longer than 255 pixels are split into consecutive records of 255
//! followed by the remainder, so a file is always `20 + 4 * records` bytes
//! and never holds more records than pixels.

use alloc::vec::Vec;
use core::fmt;

use crate::pixel::{ImageBuffer, Rgb24};
use crate::run_codec::{self, LogicalRun, Threshold};

/// File magic.
pub const MAGIC: [u8; 4] = *b"ERLE";
/// Format version written by this crate.
pub const VERSION: u8 = 1;
/// Header length in bytes.
pub const HEADER_LEN: usize = 20;
/// Length of one serialized record.
pub const RECORD_LEN: usize = 4;
/// Longest run a single record can hold.
pub const MAX_RECORD_COUNT: u8 = 255;

/// Errors from building, reading or writing an `ERLE` container.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContainerError {
    /// The first four bytes are not `ERLE`.
    BadMagic([u8; 4]),
    /// A version other than 1.
    UnsupportedVersion(u8),
    /// A mode byte other than 0 or 1.
    BadMode(u8),
    /// A classic-mode header with a nonzero threshold.
    ThresholdInClassicMode(u8),
    /// The reserved header byte is not zero.
    BadReserved(u8),
    /// A record with count 0.
    ZeroCountRecord {
        /// Index of the offending record.
        index: u32,
    },
    /// Width or height is zero.
    ZeroDimension,
    /// Record counts do not sum to `width * height`.
    CountConservationViolated {
        /// `width * height`.
        expected: u64,
        /// Sum of the counts (saturating).
        actual: u64,
    },
    /// More records than a `u32` can count.
    TooManyRecords,
    /// The input ends early.
    Truncated {
        /// Bytes required.
        needed: u64,
        /// Bytes available.
        actual: u64,
    },
    /// Extra bytes after the last record.
    TrailingData(u64),
}

impl fmt::Display for ContainerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContainerError::BadMagic(m) => write!(f, "bad magic {m:02x?}, expected \"ERLE\""),
            ContainerError::UnsupportedVersion(v) => write!(f, "unsupported ERLE version {v}"),
            ContainerError::BadMode(m) => write!(f, "unknown mode byte {m}"),
            ContainerError::ThresholdInClassicMode(th) => {
                write!(f, "classic mode with nonzero threshold {th}")
            }
            ContainerError::BadReserved(b) => write!(f, "reserved byte is {b}, expected 0"),
            ContainerError::ZeroCountRecord { index } => {
                write!(f, "record {index} has a zero count")
            }
            ContainerError::ZeroDimension => f.write_str("width and height must be at least 1"),
            ContainerError::CountConservationViolated { expected, actual } => write!(
                f,
                "record counts sum to {actual} but the image has {expected} pixels"
            ),
            ContainerError::TooManyRecords => f.write_str("record count does not fit in 32 bits"),
            ContainerError::Truncated { needed, actual } => {
                write!(f, "ERLE data truncated: need {needed} bytes, have {actual}")
            }
            ContainerError::TrailingData(n) => write!(f, "{n} unexpected bytes after the records"),
        }
    }
}

impl core::error::Error for ContainerError {}

/// Which encoder produced the records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Lossless RLE.
    Classic,
    /// Threshold-enhanced RLE.
    Enhanced,
}

impl Mode {
    /// The header byte.
    pub fn to_byte(self) -> u8 {
        match self {
            Mode::Classic => 0,
            Mode::Enhanced => 1,
        }
    }

    /// Parses a header byte.
    pub fn from_byte(b: u8) -> Result<Self, ContainerError> {
        match b {
            0 => Ok(Mode::Classic),
            1 => Ok(Mode::Enhanced),
            other => Err(ContainerError::BadMode(other)),
        }
    }

    /// Lower-case name.
    pub fn name(self) -> &'static str {
        match self {
            Mode::Classic => "classic",
            Mode::Enhanced => "enhanced",
        }
    }

    /// Runs the matching encoder.
    pub fn encode(self, img: &ImageBuffer, th: Threshold) -> Vec<LogicalRun> {
        match self {
            Mode::Classic => run_codec::encode_classic(img),
            Mode::Enhanced => run_codec::encode_enhanced(img, th),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One on-disk record: a pixel value and a count in `1..=255`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SerializedRecord {
    /// Pixel value.
    pub value: Rgb24,
    /// Repetitions, never zero.
    pub count: u8,
}

/// The fixed 20-byte header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContainerHeader {
    pub version: u8,
    pub mode: Mode,
    pub threshold: Threshold,
    pub width: u32,
    pub height: u32,
    pub record_count: u32,
}

/// A validated compressed image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedImage {
    mode: Mode,
    threshold: Threshold,
    width: u32,
    height: u32,
    records: Vec<SerializedRecord>,
}

impl CompressedImage {
    /// Builds a container from logical runs, splitting runs longer than 255.
    ///
    /// The threshold is forced to 0 in classic mode.
    pub fn from_runs(
        mode: Mode,
        threshold: Threshold,
        width: u32,
        height: u32,
        runs: &[LogicalRun],
    ) -> Result<Self, ContainerError> {
        let mut records = Vec::with_capacity(runs.len());
        for run in runs {
            let mut left = run.count();
            while left > 0 {
                let n = left.min(u64::from(MAX_RECORD_COUNT));
                records.push(SerializedRecord {
                    value: run.value(),
                    count: n as u8,
                });
                left -= n;
            }
        }
        let threshold = match mode {
            Mode::Classic => Threshold::ZERO,
            Mode::Enhanced => threshold,
        };
        Self::from_records(mode, threshold, width, height, records)
    }

    /// Builds a container from records, checking every invariant.
    pub fn from_records(
        mode: Mode,
        threshold: Threshold,
        width: u32,
        height: u32,
        records: Vec<SerializedRecord>,
    ) -> Result<Self, ContainerError> {
        if mode == Mode::Classic && threshold.get() != 0 {
            return Err(ContainerError::ThresholdInClassicMode(threshold.get()));
        }
        if width == 0 || height == 0 {
            return Err(ContainerError::ZeroDimension);
        }
        if u32::try_from(records.len()).is_err() {
            return Err(ContainerError::TooManyRecords);
        }
        if let Some(index) = records.iter().position(|r| r.count == 0) {
            return Err(ContainerError::ZeroCountRecord {
                index: index as u32,
            });
        }
        let expected = u64::from(width) * u64::from(height);
        let actual: u64 = records.iter().map(|r| u64::from(r.count)).sum();
        if actual != expected {
            return Err(ContainerError::CountConservationViolated { expected, actual });
        }
        Ok(CompressedImage {
            mode,
            threshold,
            width,
            height,
            records,
        })
    }

    /// Encodes an image with the given mode.
    pub fn compress(img: &ImageBuffer, mode: Mode, threshold: Threshold) -> Self {
        let runs = mode.encode(img, threshold);
        Self::from_runs(mode, threshold, img.width(), img.height(), &runs)
            .expect("encoder output conserves the pixel count")
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn threshold(&self) -> Threshold {
        self.threshold
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn records(&self) -> &[SerializedRecord] {
        &self.records
    }

    /// Length of the serialized form: `20 + 4 * records`.
    pub fn byte_len(&self) -> u64 {
        (HEADER_LEN + RECORD_LEN * self.records.len()) as u64
    }

    /// The header this container serializes to.
    pub fn header(&self) -> ContainerHeader {
        ContainerHeader {
            version: VERSION,
            mode: self.mode,
            threshold: self.threshold,
            width: self.width,
            height: self.height,
            record_count: self.records.len() as u32,
        }
    }

    /// Records as logical runs, without merging split records.
    pub fn runs(&self) -> Vec<LogicalRun> {
        self.records
            .iter()
            .map(|r| LogicalRun::new(r.value, u64::from(r.count)).expect("count is nonzero"))
            .collect()
    }

    /// Expands the records into a raster.
    pub fn to_image(&self) -> ImageBuffer {
        run_codec::decode(&self.runs(), self.width, self.height)
            .expect("container invariants guarantee a consistent raster")
    }

    /// The byte-exact serialized form.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.byte_len() as usize);
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.push(self.mode.to_byte());
        out.push(self.threshold.get());
        out.push(0);
        out.extend_from_slice(&self.width.to_le_bytes());
        out.extend_from_slice(&self.height.to_le_bytes());
        out.extend_from_slice(&(self.records.len() as u32).to_le_bytes());
        for rec in &self.records {
            out.extend_from_slice(&[rec.value.r, rec.value.g, rec.value.b, rec.count]);
        }
        out
    }
}

/// Serializes logical runs as an `ERLE` file.
pub fn serialize(
    mode: Mode,
    threshold: Threshold,
    width: u32,
    height: u32,
    runs: &[LogicalRun],
) -> Result<Vec<u8>, ContainerError> {
    CompressedImage::from_runs(mode, threshold, width, height, runs).map(|c| c.to_bytes())
}

/// Parses and validates the 20-byte header only.
pub fn read_header(bytes: &[u8]) -> Result<ContainerHeader, ContainerError> {
    if bytes.len() >= 4 && bytes[..4] != MAGIC {
        return Err(ContainerError::BadMagic([
            bytes[0], bytes[1], bytes[2], bytes[3],
        ]));
    }
    if bytes.len() < HEADER_LEN {
        return Err(ContainerError::Truncated {
            needed: HEADER_LEN as u64,
            actual: bytes.len() as u64,
        });
    }
    let version = bytes[4];
    if version != VERSION {
        return Err(ContainerError::UnsupportedVersion(version));
    }
    let mode = Mode::from_byte(bytes[5])?;
    let threshold = Threshold::from(bytes[6]);
    if mode == Mode::Classic && bytes[6] != 0 {
        return Err(ContainerError::ThresholdInClassicMode(bytes[6]));
    }
    if bytes[7] != 0 {
        return Err(ContainerError::BadReserved(bytes[7]));
    }
    let word =
        |at: usize| u32::from_le_bytes([bytes[at], bytes[at + 1], bytes[at + 2], bytes[at + 3]]);
    Ok(ContainerHeader {
        version,
        mode,
        threshold,
        width: word(8),
        height: word(12),
        record_count: word(16),
    })
}

/// Parses an `ERLE` file, validating the header, every record, and that the
/// counts cover the image exactly.
pub fn deserialize(bytes: &[u8]) -> Result<CompressedImage, ContainerError> {
    let header = read_header(bytes)?;
    let needed = HEADER_LEN as u64 + RECORD_LEN as u64 * u64::from(header.record_count);
    let actual = bytes.len() as u64;
    if actual < needed {
        return Err(ContainerError::Truncated { needed, actual });
    }
    if actual > needed {
        return Err(ContainerError::TrailingData(actual - needed));
    }
    let records = bytes[HEADER_LEN..]
        .chunks_exact(RECORD_LEN)
        .map(|c| SerializedRecord {
            value: Rgb24::new(c[0], c[1], c[2]),
            count: c[3],
        })
        .collect();
    CompressedImage::from_records(
        header.mode,
        header.threshold,
        header.width,
        header.height,
        records,
    )
}
