//! Compression ratios, reconstruction error and run-length histograms.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use crate::container::{CompressedImage, Mode};
use crate::pixel::ImageBuffer;
use crate::run_codec::{LogicalRun, Threshold};

/// Peak sample value used by [`psnr`].
pub const PEAK: f64 = 255.0;

/// Errors from the metric functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MetricsError {
    /// The compressed size is zero, so no ratio exists.
    ZeroCompressedSize,
    /// The two images have different dimensions.
    DimensionMismatch {
        /// Width and height of the first image.
        left: (u32, u32),
        /// Width and height of the second image.
        right: (u32, u32),
    },
}

impl fmt::Display for MetricsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricsError::ZeroCompressedSize => f.write_str("compressed size is zero"),
            MetricsError::DimensionMismatch { left, right } => write!(
                f,
                "image dimensions differ: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
        }
    }
}

impl core::error::Error for MetricsError {}

/// `original / compressed`. Below 1 means the data grew.
pub fn compression_ratio(original: u64, compressed: u64) -> Result<f64, MetricsError> {
    if compressed == 0 {
        return Err(MetricsError::ZeroCompressedSize);
    }
    Ok(original as f64 / compressed as f64)
}

/// Renders a ratio as `N.NN:1`.
pub fn format_ratio(ratio: f64) -> String {
    alloc::format!("{ratio:.2}:1")
}

/// Bytes to whole kilobytes (1024), rounding halves up.
pub fn bytes_to_kb(bytes: u64) -> u64 {
    bytes.saturating_add(512) / 1024
}

fn check_dims(a: &ImageBuffer, b: &ImageBuffer) -> Result<(), MetricsError> {
    if (a.width(), a.height()) != (b.width(), b.height()) {
        return Err(MetricsError::DimensionMismatch {
            left: (a.width(), a.height()),
            right: (b.width(), b.height()),
        });
    }
    Ok(())
}

/// Largest absolute difference over every pixel and channel.
pub fn max_channel_error(
    original: &ImageBuffer,
    reconstructed: &ImageBuffer,
) -> Result<u8, MetricsError> {
    check_dims(original, reconstructed)?;
    Ok(original
        .pixels()
        .iter()
        .zip(reconstructed.pixels())
        .map(|(a, b)| a.max_channel_diff(*b))
        .max()
        .unwrap_or(0))
}

/// Mean squared error over all channel samples (three per pixel).
pub fn mse(original: &ImageBuffer, reconstructed: &ImageBuffer) -> Result<f64, MetricsError> {
    check_dims(original, reconstructed)?;
    let sum: u64 = original
        .pixels()
        .iter()
        .zip(reconstructed.pixels())
        .map(|(a, b)| {
            let sq = |x: u8, y: u8| u64::from(x.abs_diff(y)).pow(2);
            sq(a.r, b.r) + sq(a.g, b.g) + sq(a.b, b.b)
        })
        .sum();
    Ok(sum as f64 / (original.pixel_count() * 3) as f64)
}

/// Peak signal-to-noise ratio in dB for a peak of 255; infinite when `mse == 0`.
pub fn psnr(mse: f64) -> f64 {
    if mse <= 0.0 {
        return f64::INFINITY;
    }
    10.0 * libm::log10(PEAK * PEAK / mse)
}

/// Number of runs of each length.
pub fn run_length_histogram(runs: &[LogicalRun]) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for run in runs {
        *hist.entry(run.count()).or_insert(0) += 1;
    }
    hist
}

/// One row of a corpus report: sizes and ratios for both encoders, plus the
/// loss the enhanced encoder introduced.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    pub image_name: String,
    /// Size of the source file in bytes.
    pub original_size: u64,
    /// Serialized classic `ERLE` size in bytes.
    pub classic_size: u64,
    pub classic_ratio: f64,
    /// Serialized enhanced `ERLE` size in bytes.
    pub enhanced_size: u64,
    pub enhanced_ratio: f64,
    pub threshold: Threshold,
    /// Worst per-channel error of the enhanced reconstruction.
    pub max_channel_error: u8,
    pub mse: f64,
    pub psnr_db: f64,
}

impl RatioReport {
    /// Compresses `img` both ways and measures the result against
    /// `original_size` bytes.
    pub fn evaluate(
        image_name: impl Into<String>,
        original_size: u64,
        img: &ImageBuffer,
        threshold: Threshold,
    ) -> Self {
        let classic = CompressedImage::compress(img, Mode::Classic, Threshold::ZERO);
        let enhanced = CompressedImage::compress(img, Mode::Enhanced, threshold);
        let recon = enhanced.to_image();
        let classic_size = classic.byte_len();
        let enhanced_size = enhanced.byte_len();
        // container sizes are at least 24 bytes, never zero
        let ratio = |n| compression_ratio(original_size, n).expect("nonzero container size");
        let max_err = max_channel_error(img, &recon).expect("same dimensions");
        let mse = mse(img, &recon).expect("same dimensions");
        RatioReport {
            image_name: image_name.into(),
            original_size,
            classic_size,
            classic_ratio: ratio(classic_size),
            enhanced_size,
            enhanced_ratio: ratio(enhanced_size),
            threshold,
            max_channel_error: max_err,
            mse,
            psnr_db: psnr(mse),
        }
    }
}
