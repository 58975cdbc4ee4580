//! Binary foreground/background pixel grids and their PNG encoding.
//!
//! Masks are stored row-major. On disk a mask is an 8-bit grayscale PNG with
//! foreground written as 255 and background as 0; when reading, any luma
//! value of 128 or more counts as foreground.

use std::io::Cursor;
use std::path::Path;

use image::{GrayImage, ImageFormat, Luma};

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::scalar::Scalar;

pub const FOREGROUND: u8 = 255;
pub const BACKGROUND: u8 = 0;
pub const FOREGROUND_THRESHOLD: u8 = 128;

/// Offsets of the 8-neighbourhood, clockwise starting north.
pub const NEIGHBORS_8: [(i64, i64); 8] = [
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
    (-1, 0),
    (-1, -1),
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMask {
    width: u32,
    height: u32,
    pixels: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: u32, height: u32) -> Self {
        Self {
            width,
            height,
            pixels: vec![false; width as usize * height as usize],
        }
    }

    pub fn filled(width: u32, height: u32) -> Self {
        Self {
            width,
            height,
            pixels: vec![true; width as usize * height as usize],
        }
    }

    pub fn from_pixels(width: u32, height: u32, pixels: Vec<bool>) -> Result<Self> {
        if pixels.len() != width as usize * height as usize {
            return Err(Error::Structure(format!(
                "{} pixels supplied for a {width}x{height} mask",
                pixels.len()
            )));
        }
        Ok(Self { width, height, pixels })
    }

    /// Builds a mask from a predicate over pixel coordinates.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Self {
        let mut pixels = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self { width, height, pixels }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    #[inline]
    pub fn index(&self, x: u32, y: u32) -> usize {
        y as usize * self.width as usize + x as usize
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> bool {
        self.pixels[self.index(x, y)]
    }

    /// Signed lookup; anything outside the grid reads as background.
    #[inline]
    pub fn get_signed(&self, x: i64, y: i64) -> bool {
        x >= 0
            && y >= 0
            && (x as u64) < self.width as u64
            && (y as u64) < self.height as u64
            && self.pixels[y as usize * self.width as usize + x as usize]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, value: bool) {
        let i = self.index(x, y);
        self.pixels[i] = value;
    }

    /// Sets a pixel if it lies inside the grid; returns whether it did.
    pub fn set_signed(&mut self, x: i64, y: i64, value: bool) -> bool {
        if x >= 0 && y >= 0 && (x as u64) < self.width as u64 && (y as u64) < self.height as u64 {
            self.set(x as u32, y as u32, value);
            true
        } else {
            false
        }
    }

    /// Whether the pixel nearest to `p` is foreground.
    pub fn contains_point<T: Scalar>(&self, p: Point2<T>) -> bool {
        let (x, y) = p.pixel();
        self.get_signed(x, y)
    }

    pub fn count(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    pub fn any(&self) -> bool {
        self.pixels.iter().any(|&p| p)
    }

    pub fn all(&self) -> bool {
        self.pixels.iter().all(|&p| p)
    }

    /// Foreground pixel coordinates in row-major order.
    pub fn foreground(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let w = self.width as usize;
        self.pixels
            .iter()
            .enumerate()
            .filter(|(_, &p)| p)
            .map(move |(i, _)| ((i % w) as u32, (i / w) as u32))
    }

    /// Number of foreground pixels in the 8-neighbourhood of `(x, y)`.
    pub fn neighbor_count(&self, x: u32, y: u32) -> usize {
        NEIGHBORS_8
            .iter()
            .filter(|(dx, dy)| self.get_signed(x as i64 + dx, y as i64 + dy))
            .count()
    }

    pub fn intersection_count(&self, other: &BinaryMask) -> Result<usize> {
        self.check_same_dims(other)?;
        Ok(self
            .pixels
            .iter()
            .zip(&other.pixels)
            .filter(|(&a, &b)| a && b)
            .count())
    }

    pub fn check_same_dims(&self, other: &BinaryMask) -> Result<()> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::Dimension(self.width, self.height, other.width, other.height));
        }
        Ok(())
    }

    /// Dilation with a `(2r+1)x(2r+1)` square structuring element.
    pub fn dilate_square(&self, r: u32) -> BinaryMask {
        let r = r as i64;
        let mut out = BinaryMask::new(self.width, self.height);
        for (x, y) in self.foreground() {
            for dy in -r..=r {
                for dx in -r..=r {
                    out.set_signed(x as i64 + dx, y as i64 + dy, true);
                }
            }
        }
        out
    }

    pub fn to_gray_image(&self) -> GrayImage {
        GrayImage::from_fn(self.width, self.height, |x, y| {
            Luma([if self.get(x, y) { FOREGROUND } else { BACKGROUND }])
        })
    }

    pub fn from_gray_image(img: &GrayImage) -> Self {
        Self::from_fn(img.width(), img.height(), |x, y| {
            img.get_pixel(x, y).0[0] >= FOREGROUND_THRESHOLD
        })
    }

    pub fn encode_png(&self) -> Result<Vec<u8>> {
        let mut buf = Cursor::new(Vec::new());
        self.to_gray_image().write_to(&mut buf, ImageFormat::Png)?;
        Ok(buf.into_inner())
    }

    pub fn decode_png(bytes: &[u8]) -> Result<Self> {
        let img = image::load_from_memory_with_format(bytes, ImageFormat::Png)?;
        Ok(Self::from_gray_image(&img.to_luma8()))
    }

    pub fn save_png(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.encode_png()?)?;
        Ok(())
    }

    /// Loads any image file readable by the codec and thresholds its luma.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let img = image::open(path)?;
        Ok(Self::from_gray_image(&img.to_luma8()))
    }
}
