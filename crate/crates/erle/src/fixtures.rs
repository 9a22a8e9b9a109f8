//! Synthetic test images: gradients, flat blocks, noise and patterns.
//!
//! Everything here is deterministic for a given size and seed.

use erle_core::{ImageBuffer, Rgb24};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x45_52_4c_45;

fn build(w: u32, h: u32, f: impl FnMut(u32, u32) -> Rgb24) -> ImageBuffer {
    ImageBuffer::from_fn(w, h, f).expect("fixture dimensions are nonzero")
}

fn scale(v: u32, extent: u32) -> u8 {
    (v * 255 / extent.saturating_sub(1).max(1)) as u8
}

/// Gray ramp from black on the left to white on the right.
pub fn horizontal_gradient(w: u32, h: u32) -> ImageBuffer {
    build(w, h, |x, _| Rgb24::gray(scale(x, w)))
}

/// Color ramp from top to bottom.
pub fn vertical_gradient(w: u32, h: u32) -> ImageBuffer {
    build(w, h, |_, y| {
        let v = scale(y, h);
        Rgb24::new(v, 255 - v, v / 2)
    })
}

pub fn diagonal_gradient(w: u32, h: u32) -> ImageBuffer {
    build(w, h, |x, y| {
        Rgb24::new(scale(x, w), scale(y, h), scale((x + y) / 2, (w + h) / 2))
    })
}

pub fn uniform(w: u32, h: u32, value: Rgb24) -> ImageBuffer {
    build(w, h, |_, _| value)
}

/// 16x16 tiles of flat color.
pub fn blocks(w: u32, h: u32) -> ImageBuffer {
    build(w, h, |x, y| {
        let t = (x / 16 * 7 + y / 16 * 13) as u8;
        Rgb24::new(t.wrapping_mul(37), t.wrapping_mul(91), t.wrapping_mul(53))
    })
}

pub fn checkerboard(w: u32, h: u32, cell: u32) -> ImageBuffer {
    let cell = cell.max(1);
    build(w, h, |x, y| {
        if (x / cell + y / cell).is_multiple_of(2) {
            Rgb24::gray(0)
        } else {
            Rgb24::gray(255)
        }
    })
}

/// Independent uniform noise on every channel.
pub fn noise(w: u32, h: u32, seed: u64) -> ImageBuffer {
    let mut rng = StdRng::seed_from_u64(seed);
    build(w, h, |_, _| {
        Rgb24::new(rng.random(), rng.random(), rng.random())
    })
}

/// A flat color with small per-pixel jitter of up to `amplitude`.
pub fn soft_noise(w: u32, h: u32, base: Rgb24, amplitude: u8, seed: u64) -> ImageBuffer {
    let mut rng = StdRng::seed_from_u64(seed);
    let a = i16::from(amplitude);
    let mut jitter = |v: u8| (i16::from(v) + rng.random_range(-a..=a)).clamp(0, 255) as u8;
    build(w, h, |_, _| {
        Rgb24::new(jitter(base.r), jitter(base.g), jitter(base.b))
    })
}

/// Vertical bands of `width` pixels cycling through a small palette.
pub fn stripes(w: u32, h: u32, width: u32) -> ImageBuffer {
    const PALETTE: [Rgb24; 4] = [
        Rgb24::new(200, 30, 30),
        Rgb24::new(30, 200, 30),
        Rgb24::new(30, 30, 200),
        Rgb24::new(230, 230, 40),
    ];
    let width = width.max(1);
    build(w, h, |x, _| PALETTE[(x / width) as usize % PALETTE.len()])
}

/// Concentric brightness rings around the center.
pub fn rings(w: u32, h: u32) -> ImageBuffer {
    let (cx, cy) = (f64::from(w) / 2.0, f64::from(h) / 2.0);
    build(w, h, |x, y| {
        let d = (f64::from(x) - cx).hypot(f64::from(y) - cy);
        let v = (128.0 + 127.0 * (d / 6.0).sin()).round() as u8;
        Rgb24::new(v, v / 2, 255 - v)
    })
}

/// The standard ten-image fixture corpus, as `(file name, image)` pairs.
pub fn corpus(w: u32, h: u32) -> Vec<(String, ImageBuffer)> {
    vec![
        ("blocks.bmp", blocks(w, h)),
        ("checkerboard.bmp", checkerboard(w, h, 8)),
        ("diagonal_gradient.bmp", diagonal_gradient(w, h)),
        ("horizontal_gradient.bmp", horizontal_gradient(w, h)),
        ("noise.bmp", noise(w, h, SEED)),
        ("rings.bmp", rings(w, h)),
        (
            "soft_noise.bmp",
            soft_noise(w, h, Rgb24::new(120, 90, 60), 4, SEED + 1),
        ),
        ("stripes.bmp", stripes(w, h, 5)),
        ("uniform.bmp", uniform(w, h, Rgb24::new(5, 5, 5))),
        ("vertical_gradient.bmp", vertical_gradient(w, h)),
    ]
    .into_iter()
    .map(|(name, img)| (name.to_string(), img))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_sized() {
        let a = corpus(33, 17);
        let b = corpus(33, 17);
        assert_eq!(a.len(), 10);
        assert_eq!(a, b);
        for (_, img) in &a {
            assert_eq!((img.width(), img.height()), (33, 17));
        }
    }

    #[test]
    fn gradient_spans_full_range() {
        let g = horizontal_gradient(256, 2);
        assert_eq!(g.get(0, 1), Some(Rgb24::gray(0)));
        assert_eq!(g.get(100, 0), Some(Rgb24::gray(100)));
        assert_eq!(g.get(255, 0), Some(Rgb24::gray(255)));
        // one-pixel-wide images must not divide by zero
        assert_eq!(horizontal_gradient(1, 1).get(0, 0), Some(Rgb24::gray(0)));
    }

    #[test]
    fn soft_noise_stays_within_amplitude() {
        let base = Rgb24::new(2, 128, 254);
        let img = soft_noise(20, 20, base, 4, 1);
        assert!(img.pixels().iter().all(|p| p.max_channel_diff(base) <= 4));
    }
}
