use alloc::vec::Vec;
use core::fmt;

/// One true-color pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rgb24 {
    /// Red channel.
    pub r: u8,
    /// Green channel.
    pub g: u8,
    /// Blue channel.
    pub b: u8,
}

impl Rgb24 {
    /// Builds a pixel from its three channels.
    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Rgb24 { r, g, b }
    }

    /// A pixel with the same value on every channel.
    pub const fn gray(v: u8) -> Self {
        Rgb24 { r: v, g: v, b: v }
    }

    /// Largest per-channel absolute difference between two pixels.
    pub fn max_channel_diff(self, other: Rgb24) -> u8 {
        self.r
            .abs_diff(other.r)
            .max(self.g.abs_diff(other.g))
            .max(self.b.abs_diff(other.b))
    }
}

impl From<[u8; 3]> for Rgb24 {
    fn from([r, g, b]: [u8; 3]) -> Self {
        Rgb24 { r, g, b }
    }
}

/// Errors raised when building an [`ImageBuffer`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageError {
    /// Width or height is zero.
    ZeroDimension,
    /// The pixel vector does not hold `width * height` entries.
    PixelCountMismatch {
        /// `width * height`.
        expected: u64,
        /// Length of the supplied pixel vector.
        actual: usize,
    },
}

impl fmt::Display for ImageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImageError::ZeroDimension => f.write_str("image width and height must be at least 1"),
            ImageError::PixelCountMismatch { expected, actual } => {
                write!(f, "expected {expected} pixels, got {actual}")
            }
        }
    }
}

impl core::error::Error for ImageError {}

/// A decoded raster: row-major, top row first, left to right within a row.
///
/// Width and height are both at least 1 and `pixels().len() == width * height`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    width: u32,
    height: u32,
    pixels: Vec<Rgb24>,
}

impl ImageBuffer {
    /// Wraps a pixel vector, checking it against the dimensions.
    pub fn new(width: u32, height: u32, pixels: Vec<Rgb24>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension);
        }
        let expected = u64::from(width) * u64::from(height);
        if pixels.len() as u64 != expected {
            return Err(ImageError::PixelCountMismatch {
                expected,
                actual: pixels.len(),
            });
        }
        Ok(ImageBuffer {
            width,
            height,
            pixels,
        })
    }

    /// An image filled with a single color.
    pub fn filled(width: u32, height: u32, value: Rgb24) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::ZeroDimension);
        }
        let n = usize::try_from(u64::from(width) * u64::from(height)).map_err(|_| {
            ImageError::PixelCountMismatch {
                expected: u64::from(width) * u64::from(height),
                actual: 0,
            }
        })?;
        Ok(ImageBuffer {
            width,
            height,
            pixels: alloc::vec![value; n],
        })
    }

    /// Builds an image by evaluating `f(x, y)` for every pixel.
    pub fn from_fn<F>(width: u32, height: u32, mut f: F) -> Result<Self, ImageError>
    where
        F: FnMut(u32, u32) -> Rgb24,
    {
        let mut pixels = Vec::new();
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    /// Width in pixels.
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Height in pixels.
    pub fn height(&self) -> u32 {
        self.height
    }

    /// Total number of pixels.
    pub fn pixel_count(&self) -> u64 {
        u64::from(self.width) * u64::from(self.height)
    }

    /// All pixels in raster order.
    pub fn pixels(&self) -> &[Rgb24] {
        &self.pixels
    }

    /// The pixel at column `x`, row `y` (row 0 is the top).
    pub fn get(&self, x: u32, y: u32) -> Option<Rgb24> {
        if x >= self.width || y >= self.height {
            return None;
        }
        self.pixels
            .get(y as usize * self.width as usize + x as usize)
            .copied()
    }

    /// One row of pixels, top row first.
    pub fn row(&self, y: u32) -> Option<&[Rgb24]> {
        if y >= self.height {
            return None;
        }
        let w = self.width as usize;
        let start = y as usize * w;
        Some(&self.pixels[start..start + w])
    }

    /// Consumes the image, returning its pixel vector.
    pub fn into_pixels(self) -> Vec<Rgb24> {
        self.pixels
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_zero_dimensions() {
        assert_eq!(
            ImageBuffer::new(0, 3, vec![]),
            Err(ImageError::ZeroDimension)
        );
        assert_eq!(
            ImageBuffer::filled(3, 0, Rgb24::gray(1)),
            Err(ImageError::ZeroDimension)
        );
    }

    #[test]
    fn rejects_wrong_pixel_count() {
        let err = ImageBuffer::new(2, 2, vec![Rgb24::gray(0); 3]).unwrap_err();
        assert_eq!(
            err,
            ImageError::PixelCountMismatch {
                expected: 4,
                actual: 3
            }
        );
    }

    #[test]
    fn from_fn_is_row_major() {
        let img = ImageBuffer::from_fn(3, 2, |x, y| Rgb24::new(x as u8, y as u8, 0)).unwrap();
        assert_eq!(img.pixels()[4], Rgb24::new(1, 1, 0));
        assert_eq!(img.get(2, 1), Some(Rgb24::new(2, 1, 0)));
        assert_eq!(img.get(3, 0), None);
        assert_eq!(img.row(1).unwrap().len(), 3);
    }

    #[test]
    fn max_channel_diff_takes_worst_channel() {
        let a = Rgb24::new(10, 200, 0);
        let b = Rgb24::new(12, 190, 255);
        assert_eq!(a.max_channel_diff(b), 255);
        assert_eq!(a.max_channel_diff(a), 0);
    }
}
