//! Classic and threshold-enhanced run-length encoding.
//!
//! Both encoders walk the image in raster order (top row first, runs may
//! continue across row boundaries) and partition it greedily around an
//! *anchor*: the first pixel of the current run. Classic RLE extends the run
//! while pixels equal the anchor. The enhanced encoder extends it while every
//! channel is within `th` of the anchor, and stores the anchor as the run's
//! value. Decoding therefore reproduces every channel to within `th`.
//!
//! With `th == 0` the two encoders produce identical output.

use alloc::vec::Vec;
use core::fmt;

use crate::pixel::{ImageBuffer, ImageError, Rgb24};

/// Errors from the run codec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodecError {
    /// A scalar threshold below zero.
    NegativeThreshold(i64),
    /// A threshold above 255.
    ThresholdOutOfRange(u32),
    /// A run was built with a count of zero.
    ZeroCount,
    /// Run counts do not add up to `width * height`.
    CountMismatch {
        /// `width * height`.
        expected: u64,
        /// Sum of run counts (saturating).
        actual: u64,
    },
    /// The target dimensions are not a valid image.
    Image(ImageError),
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::NegativeThreshold(th) => write!(f, "threshold {th} is negative"),
            CodecError::ThresholdOutOfRange(th) => {
                write!(f, "threshold {th} is outside 0..=255")
            }
            CodecError::ZeroCount => f.write_str("run count must be at least 1"),
            CodecError::CountMismatch { expected, actual } => write!(
                f,
                "run counts sum to {actual} but the image has {expected} pixels"
            ),
            CodecError::Image(e) => write!(f, "invalid image: {e}"),
        }
    }
}

impl core::error::Error for CodecError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            CodecError::Image(e) => Some(e),
            _ => None,
        }
    }
}

impl From<ImageError> for CodecError {
    fn from(e: ImageError) -> Self {
        CodecError::Image(e)
    }
}

/// Maximum per-channel distance from a run's anchor, `0..=255`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Threshold(u8);

impl Threshold {
    /// The default threshold of 10.
    pub const DEFAULT: Threshold = Threshold(10);
    /// Threshold zero: only identical pixels share a run.
    pub const ZERO: Threshold = Threshold(0);

    /// Range-checked constructor.
    pub fn new(th: u32) -> Result<Self, CodecError> {
        u8::try_from(th)
            .map(Threshold)
            .map_err(|_| CodecError::ThresholdOutOfRange(th))
    }

    /// The threshold value.
    pub const fn get(self) -> u8 {
        self.0
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold::DEFAULT
    }
}

impl From<u8> for Threshold {
    fn from(th: u8) -> Self {
        Threshold(th)
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A run of pixels: the anchor value and how many pixels it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LogicalRun {
    value: Rgb24,
    count: u64,
}

impl LogicalRun {
    /// Builds a run; `count` must be at least 1.
    pub fn new(value: Rgb24, count: u64) -> Result<Self, CodecError> {
        if count == 0 {
            return Err(CodecError::ZeroCount);
        }
        Ok(LogicalRun { value, count })
    }

    /// The stored pixel value.
    pub fn value(&self) -> Rgb24 {
        self.value
    }

    /// Number of pixels in the run, always at least 1.
    pub fn count(&self) -> u64 {
        self.count
    }
}

/// A run over a scalar sequence, written `value(count)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScalarRun {
    value: i64,
    count: u64,
}

impl ScalarRun {
    /// Builds a run; `count` must be at least 1.
    pub fn new(value: i64, count: u64) -> Result<Self, CodecError> {
        if count == 0 {
            return Err(CodecError::ZeroCount);
        }
        Ok(ScalarRun { value, count })
    }

    /// The anchor value.
    pub fn value(&self) -> i64 {
        self.value
    }

    /// Number of elements in the run.
    pub fn count(&self) -> u64 {
        self.count
    }
}

impl PartialEq<(i64, u64)> for ScalarRun {
    fn eq(&self, other: &(i64, u64)) -> bool {
        self.value == other.0 && self.count == other.1
    }
}

/// Greedy anchor partition shared by every encoder.
fn partition<T, I, F>(items: I, mut joins: F) -> Vec<(T, u64)>
where
    T: Copy,
    I: IntoIterator<Item = T>,
    F: FnMut(T, T) -> bool,
{
    let mut runs = Vec::new();
    let mut iter = items.into_iter();
    let Some(mut anchor) = iter.next() else {
        return runs;
    };
    let mut count = 1u64;
    for item in iter {
        if joins(anchor, item) {
            count += 1;
        } else {
            runs.push((anchor, count));
            anchor = item;
            count = 1;
        }
    }
    runs.push((anchor, count));
    runs
}

/// Threshold RLE over integers.
///
/// Each element joins the current run when `|anchor - e| <= th`; otherwise
/// it starts a new run. `th == 0` is plain RLE. An empty input gives no runs.
pub fn encode_runs_scalar(seq: &[i64], th: i64) -> Result<Vec<ScalarRun>, CodecError> {
    if th < 0 {
        return Err(CodecError::NegativeThreshold(th));
    }
    let th = th.unsigned_abs();
    Ok(
        partition(seq.iter().copied(), |anchor, e| anchor.abs_diff(e) <= th)
            .into_iter()
            .map(|(value, count)| ScalarRun { value, count })
            .collect(),
    )
}

/// Lossless RLE: consecutive identical pixels form one run.
pub fn encode_classic(img: &ImageBuffer) -> Vec<LogicalRun> {
    to_logical(partition(img.pixels().iter().copied(), |a, p| a == p))
}

/// Threshold-enhanced RLE.
///
/// A pixel joins the current run when each of its channels differs from the
/// anchor by at most `th`.
pub fn encode_enhanced(img: &ImageBuffer, th: Threshold) -> Vec<LogicalRun> {
    let th = th.get();
    to_logical(partition(img.pixels().iter().copied(), |a, p| {
        a.max_channel_diff(p) <= th
    }))
}

fn to_logical(runs: Vec<(Rgb24, u64)>) -> Vec<LogicalRun> {
    runs.into_iter()
        .map(|(value, count)| LogicalRun { value, count })
        .collect()
}

/// Expands runs back into a `width` x `height` raster.
pub fn decode(runs: &[LogicalRun], width: u32, height: u32) -> Result<ImageBuffer, CodecError> {
    let expected = u64::from(width) * u64::from(height);
    let actual = runs
        .iter()
        .fold(0u64, |acc, run| acc.saturating_add(run.count));
    if actual != expected {
        return Err(CodecError::CountMismatch { expected, actual });
    }
    let mut pixels = Vec::with_capacity(usize::try_from(expected).unwrap_or(0));
    for run in runs {
        pixels.extend(core::iter::repeat_n(run.value, run.count as usize));
    }
    Ok(ImageBuffer::new(width, height, pixels)?)
}
