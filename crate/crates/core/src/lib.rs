//! Run-length compression for 24-bit true-color images.
//!
//! This crate is `no_std` and only needs `alloc`. It contains:
//!
//! * [`run_codec`]: classic RLE and the threshold-enhanced variant, which
//!   merges a pixel into the current run when every channel lies within a
//!   threshold of the run's first (anchor) pixel.
//! * [`bmp`]: reader and writer for uncompressed 24-bit Windows BMP files.
//! * [`container`]: the `ERLE` byte format for compressed images.
//! * [`metrics`]: compression ratios, loss metrics and run-length histograms.
//!
//! File IO, CSV output and the command-line tool live in the `erle` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bmp;
pub mod container;
pub mod metrics;
mod pixel;
pub mod run_codec;

pub use pixel::{ImageBuffer, ImageError, Rgb24};
pub use run_codec::{LogicalRun, ScalarRun, Threshold};
