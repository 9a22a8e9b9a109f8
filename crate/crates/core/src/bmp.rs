//! Uncompressed 24-bit Windows BMP files.
//!
//! The layout handled here is the 14-byte file header followed by the 40-byte
//! `BITMAPINFOHEADER`, all integers little-endian:
//!
//! | offset | size | field                                   |
//! |-------:|-----:|-----------------------------------------|
//! | 0      | 2    | signature `BM`                          |
//! | 2      | 4    | file size in bytes                      |
//! | 6      | 2    | reserved                                |
//! | 8      | 2    | reserved                                |
//! | 10     | 4    | offset of pixel data                    |
//! | 14     | 4    | info header size, 40                    |
//! | 18     | 4    | width                                   |
//! | 22     | 4    | height                                  |
//! | 26     | 2    | planes, 1                               |
//! | 28     | 2    | bits per pixel                          |
//! | 30     | 4    | compression (0 none, 1 RLE-8, 2 RLE-4)  |
//! | 34     | 4    | image data size including padding       |
//! | 38     | 4    | horizontal resolution, pixels per meter |
//! | 42     | 4    | vertical resolution, pixels per meter   |
//! | 46     | 4    | colors used                             |
//! | 50     | 4    | important colors                        |
//!
//! Pixel rows are stored bottom-up as B,G,R triples, each row padded with
//! zeros to a multiple of 4 bytes. Only positive heights are accepted.

use alloc::vec::Vec;
use core::fmt;

use crate::pixel::{ImageBuffer, Rgb24};

/// Size of the file header plus `BITMAPINFOHEADER`.
pub const HEADER_LEN: usize = 54;
/// The `BM` signature, read as a little-endian `u16`.
pub const SIGNATURE: u16 = 0x4D42;
const INFO_HEADER_LEN: u32 = 40;
const PIXELS_PER_METER: i32 = 2835;

/// Errors from reading or writing BMP data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BmpError {
    /// The first two bytes are not `BM`.
    BadSignature([u8; 2]),
    /// A header field outside what the decoder handles.
    UnsupportedFormat(&'static str),
    /// The buffer ends before the header or pixel data does.
    Truncated {
        /// Bytes required.
        needed: u64,
        /// Bytes available.
        actual: u64,
    },
    /// The image is too large for the 32-bit size fields.
    DimensionOverflow,
}

impl fmt::Display for BmpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BmpError::BadSignature(sig) => {
                write!(f, "bad BMP signature {:02x} {:02x}", sig[0], sig[1])
            }
            BmpError::UnsupportedFormat(why) => write!(f, "unsupported BMP: {why}"),
            BmpError::Truncated { needed, actual } => {
                write!(f, "BMP truncated: need {needed} bytes, have {actual}")
            }
            BmpError::DimensionOverflow => f.write_str("image too large for a BMP file"),
        }
    }
}

impl core::error::Error for BmpError {}

/// Every field of the 54-byte header, decoded as stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BmpHeader {
    pub signature: u16,
    pub file_size: u32,
    pub reserved1: u16,
    pub reserved2: u16,
    pub data_offset: u32,
    pub header_size: u32,
    pub width: i32,
    pub height: i32,
    pub planes: u16,
    pub bits_per_pixel: u16,
    pub compression_type: u32,
    pub image_data_size: u32,
    pub x_ppm: i32,
    pub y_ppm: i32,
    pub colors_used: u32,
    pub colors_important: u32,
}

impl BmpHeader {
    /// `(name, value)` pairs in file order, for display.
    pub fn fields(&self) -> [(&'static str, i64); 16] {
        [
            ("signature", i64::from(self.signature)),
            ("file_size", i64::from(self.file_size)),
            ("reserved1", i64::from(self.reserved1)),
            ("reserved2", i64::from(self.reserved2)),
            ("data_offset", i64::from(self.data_offset)),
            ("header_size", i64::from(self.header_size)),
            ("width", i64::from(self.width)),
            ("height", i64::from(self.height)),
            ("planes", i64::from(self.planes)),
            ("bits_per_pixel", i64::from(self.bits_per_pixel)),
            ("compression_type", i64::from(self.compression_type)),
            ("image_data_size", i64::from(self.image_data_size)),
            ("x_ppm", i64::from(self.x_ppm)),
            ("y_ppm", i64::from(self.y_ppm)),
            ("colors_used", i64::from(self.colors_used)),
            ("colors_important", i64::from(self.colors_important)),
        ]
    }

    /// Checks the fields the 24-bit decoder depends on.
    fn check_decodable(&self) -> Result<(u32, u32), BmpError> {
        if self.header_size != INFO_HEADER_LEN {
            return Err(BmpError::UnsupportedFormat("info header size is not 40"));
        }
        if self.planes != 1 {
            return Err(BmpError::UnsupportedFormat("plane count is not 1"));
        }
        if self.bits_per_pixel != 24 {
            return Err(BmpError::UnsupportedFormat(
                "only 24 bits per pixel is supported",
            ));
        }
        if self.compression_type != 0 {
            return Err(BmpError::UnsupportedFormat(
                "compressed BMP data is not supported",
            ));
        }
        if self.width <= 0 || self.height <= 0 {
            return Err(BmpError::UnsupportedFormat(
                "width and height must be positive",
            ));
        }
        if (self.data_offset as usize) < HEADER_LEN {
            return Err(BmpError::UnsupportedFormat(
                "pixel data overlaps the header",
            ));
        }
        Ok((self.width as u32, self.height as u32))
    }
}

/// Bytes per serialized row for a 24-bit image: `ceil(3 * width / 4) * 4`.
pub fn row_stride(width: u32) -> u64 {
    (u64::from(width) * 3).div_ceil(4) * 4
}

fn u16_at(b: &[u8], at: usize) -> u16 {
    u16::from_le_bytes([b[at], b[at + 1]])
}

fn u32_at(b: &[u8], at: usize) -> u32 {
    u32::from_le_bytes([b[at], b[at + 1], b[at + 2], b[at + 3]])
}

fn i32_at(b: &[u8], at: usize) -> i32 {
    u32_at(b, at) as i32
}

/// Decodes the 54-byte header without checking anything but the signature.
///
/// Works on BMPs the decoder cannot handle (palettes, RLE-8 and so on).
pub fn read_header(bytes: &[u8]) -> Result<BmpHeader, BmpError> {
    if bytes.len() >= 2 && &bytes[..2] != b"BM" {
        return Err(BmpError::BadSignature([bytes[0], bytes[1]]));
    }
    if bytes.len() < HEADER_LEN {
        return Err(BmpError::Truncated {
            needed: HEADER_LEN as u64,
            actual: bytes.len() as u64,
        });
    }
    Ok(BmpHeader {
        signature: u16_at(bytes, 0),
        file_size: u32_at(bytes, 2),
        reserved1: u16_at(bytes, 6),
        reserved2: u16_at(bytes, 8),
        data_offset: u32_at(bytes, 10),
        header_size: u32_at(bytes, 14),
        width: i32_at(bytes, 18),
        height: i32_at(bytes, 22),
        planes: u16_at(bytes, 26),
        bits_per_pixel: u16_at(bytes, 28),
        compression_type: u32_at(bytes, 30),
        image_data_size: u32_at(bytes, 34),
        x_ppm: i32_at(bytes, 38),
        y_ppm: i32_at(bytes, 42),
        colors_used: u32_at(bytes, 46),
        colors_important: u32_at(bytes, 50),
    })
}

/// Decodes a 24-bit uncompressed BMP into a top-down RGB raster.
///
/// `data_offset` is honored, the `file_size` field is ignored, and no byte
/// past `data_offset + height * stride` is read.
pub fn parse_bmp(bytes: &[u8]) -> Result<ImageBuffer, BmpError> {
    let header = read_header(bytes)?;
    let (width, height) = header.check_decodable()?;
    let stride = row_stride(width);
    let start = u64::from(header.data_offset);
    let needed = start + stride * u64::from(height);
    if (bytes.len() as u64) < needed {
        return Err(BmpError::Truncated {
            needed,
            actual: bytes.len() as u64,
        });
    }
    let (start, stride) = (start as usize, stride as usize);
    let row_bytes = width as usize * 3;
    let mut pixels = Vec::with_capacity(width as usize * height as usize);
    // file rows are bottom-up
    for y in (0..height as usize).rev() {
        let row = &bytes[start + y * stride..start + y * stride + row_bytes];
        pixels.extend(
            row.chunks_exact(3)
                .map(|bgr| Rgb24::new(bgr[2], bgr[1], bgr[0])),
        );
    }
    ImageBuffer::new(width, height, pixels)
        .map_err(|_| BmpError::UnsupportedFormat("width and height must be positive"))
}

/// Encodes an image as a 24-bit uncompressed BMP.
pub fn write_bmp(img: &ImageBuffer) -> Result<Vec<u8>, BmpError> {
    let (width, height) = (img.width(), img.height());
    if width > i32::MAX as u32 || height > i32::MAX as u32 {
        return Err(BmpError::DimensionOverflow);
    }
    let stride = row_stride(width);
    let data_size = stride
        .checked_mul(u64::from(height))
        .filter(|&n| n + HEADER_LEN as u64 <= u64::from(u32::MAX))
        .ok_or(BmpError::DimensionOverflow)?;
    let file_size = data_size + HEADER_LEN as u64;

    let mut out = Vec::with_capacity(file_size as usize);
    out.extend_from_slice(b"BM");
    out.extend_from_slice(&(file_size as u32).to_le_bytes());
    out.extend_from_slice(&[0; 4]);
    out.extend_from_slice(&(HEADER_LEN as u32).to_le_bytes());
    out.extend_from_slice(&INFO_HEADER_LEN.to_le_bytes());
    out.extend_from_slice(&(width as i32).to_le_bytes());
    out.extend_from_slice(&(height as i32).to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes());
    out.extend_from_slice(&24u16.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&(data_size as u32).to_le_bytes());
    out.extend_from_slice(&PIXELS_PER_METER.to_le_bytes());
    out.extend_from_slice(&PIXELS_PER_METER.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    out.extend_from_slice(&0u32.to_le_bytes());
    debug_assert_eq!(out.len(), HEADER_LEN);

    let padding = stride as usize - width as usize * 3;
    for y in (0..height).rev() {
        let row = img.row(y).expect("row index in range");
        for p in row {
            out.extend_from_slice(&[p.b, p.g, p.r]);
        }
        out.extend(core::iter::repeat_n(0u8, padding));
    }
    Ok(out)
}
