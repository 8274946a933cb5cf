//! Floating-point image buffer shared by every stage of the pipeline.
//!
//! Samples are `f64`, row-major and channel-interleaved. Image-valued rasters
//! nominally live in `[0, 1]`; error fields carry `signed = true` and are
//! unbounded. Nothing in this module clamps: quantization to 8 bits only
//! happens when a raster is written to disk.

use crate::error::{Error, Result};

/// Luma weights applied to RGB rasters (ITU-R BT.601).
pub const LUMA_WEIGHTS: [f64; 3] = [0.299, 0.587, 0.114];

/// Address of one sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PixelSite {
    pub x: usize,
    pub y: usize,
    pub c: usize,
}

impl PixelSite {
    pub fn new(x: usize, y: usize, c: usize) -> Self {
        Self { x, y, c }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    width: usize,
    height: usize,
    channels: usize,
    signed: bool,
    samples: Vec<f64>,
}

fn check_shape(width: usize, height: usize, channels: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::Dimensions { width, height });
    }
    if channels != 1 && channels != 3 {
        return Err(Error::Channels(channels));
    }
    Ok(())
}

impl Raster {
    /// Zero-filled raster.
    pub fn new(width: usize, height: usize, channels: usize, signed: bool) -> Result<Self> {
        check_shape(width, height, channels)?;
        Ok(Self {
            width,
            height,
            channels,
            signed,
            samples: vec![0.0; width * height * channels],
        })
    }

    /// Wraps an existing interleaved sample buffer.
    pub fn from_samples(
        width: usize,
        height: usize,
        channels: usize,
        signed: bool,
        samples: Vec<f64>,
    ) -> Result<Self> {
        check_shape(width, height, channels)?;
        let expected = width * height * channels;
        if samples.len() != expected {
            return Err(Error::Parameter(format!(
                "sample buffer holds {} values, {width}x{height}x{channels} needs {expected}",
                samples.len()
            )));
        }
        Ok(Self {
            width,
            height,
            channels,
            signed,
            samples,
        })
    }

    /// Raster whose every sample is `value`.
    pub fn filled(width: usize, height: usize, channels: usize, value: f64) -> Result<Self> {
        let mut r = Self::new(width, height, channels, false)?;
        r.samples.fill(value);
        Ok(r)
    }

    /// Builds a raster by evaluating `f(x, y, c)` at every site.
    pub fn from_fn(
        width: usize,
        height: usize,
        channels: usize,
        signed: bool,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let mut r = Self::new(width, height, channels, signed)?;
        for y in 0..height {
            for x in 0..width {
                for c in 0..channels {
                    r.samples[(y * width + x) * channels + c] = f(x, y, c);
                }
            }
        }
        Ok(r)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// `(width, height, channels)`.
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.width, self.height, self.channels)
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    #[inline]
    fn offset(&self, x: usize, y: usize, c: usize) -> usize {
        (y * self.width + x) * self.channels + c
    }

    fn check_site(&self, site: PixelSite) -> Result<usize> {
        if site.x >= self.width || site.y >= self.height || site.c >= self.channels {
            return Err(Error::OutOfBounds {
                x: site.x,
                y: site.y,
                c: site.c,
                width: self.width,
                height: self.height,
                channels: self.channels,
            });
        }
        Ok(self.offset(site.x, site.y, site.c))
    }

    pub fn get(&self, site: PixelSite) -> Result<f64> {
        self.check_site(site).map(|i| self.samples[i])
    }

    /// Stores `value` unmodified, even outside `[0, 1]`.
    pub fn set(&mut self, site: PixelSite, value: f64) -> Result<()> {
        let i = self.check_site(site)?;
        self.samples[i] = value;
        Ok(())
    }

    /// Unchecked-by-`Result` accessor for inner loops; panics when out of range.
    #[inline]
    pub fn at(&self, x: usize, y: usize, c: usize) -> f64 {
        debug_assert!(x < self.width && y < self.height && c < self.channels);
        self.samples[self.offset(x, y, c)]
    }

    fn check_same_shape(&self, other: &Raster) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Raster, signed: bool, f: impl Fn(f64, f64) -> f64) -> Result<Raster> {
        self.check_same_shape(other)?;
        let samples = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Raster {
            samples,
            signed,
            ..self.clone_header()
        })
    }

    /// Elementwise `self + other`. Signed if either operand is signed.
    pub fn add(&self, other: &Raster) -> Result<Raster> {
        self.zip_with(other, self.signed || other.signed, |a, b| a + b)
    }

    /// Elementwise `self - other`. Always signed.
    pub fn subtract(&self, other: &Raster) -> Result<Raster> {
        self.zip_with(other, true, |a, b| a - b)
    }

    /// `self + gain * other`, keeping the value-range flag of `self`.
    ///
    /// Used to fold a signed correction into an image: the result is still an
    /// image (clamped at save), not an error field.
    pub fn add_scaled(&self, other: &Raster, gain: f64) -> Result<Raster> {
        self.zip_with(other, self.signed, |a, b| a + gain * b)
    }

    /// Every sample multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Raster {
        self.map(|v| v * factor)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Raster {
        Raster {
            width: self.width,
            height: self.height,
            channels: self.channels,
            signed: self.signed,
            samples: self.samples.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Same samples with the value-range flag replaced.
    pub fn with_signed(mut self, signed: bool) -> Raster {
        self.signed = signed;
        self
    }

    /// Extracts channel `c` as a single-channel raster.
    pub fn channel(&self, c: usize) -> Result<Raster> {
        if c >= self.channels {
            return Err(Error::Parameter(format!(
                "channel {c} requested from {}-channel raster",
                self.channels
            )));
        }
        let samples = self
            .samples
            .iter()
            .skip(c)
            .step_by(self.channels)
            .copied()
            .collect();
        Raster::from_samples(self.width, self.height, 1, self.signed, samples)
    }

    /// Luma plane; a single-channel raster is returned as a copy.
    pub fn luma(&self) -> Raster {
        if self.channels == 1 {
            return self.clone();
        }
        let samples = self
            .samples
            .chunks_exact(3)
            .map(|px| LUMA_WEIGHTS[0] * px[0] + LUMA_WEIGHTS[1] * px[1] + LUMA_WEIGHTS[2] * px[2])
            .collect();
        Raster {
            width: self.width,
            height: self.height,
            channels: 1,
            signed: self.signed,
            samples,
        }
    }

    /// Mirror image about the vertical axis.
    pub fn flipped_horizontal(&self) -> Raster {
        let (w, h, ch) = self.shape();
        let mut samples = Vec::with_capacity(self.samples.len());
        for y in 0..h {
            for x in (0..w).rev() {
                let i = self.offset(x, y, 0);
                samples.extend_from_slice(&self.samples[i..i + ch]);
            }
        }
        Raster {
            samples,
            ..self.clone_header()
        }
    }

    /// Extends the right and bottom edges by repeating the last column/row.
    pub fn pad_replicate(&self, width: usize, height: usize) -> Result<Raster> {
        if width < self.width || height < self.height {
            return Err(Error::Parameter(format!(
                "cannot pad {}x{} down to {width}x{height}",
                self.width, self.height
            )));
        }
        Raster::from_fn(width, height, self.channels, self.signed, |x, y, c| {
            self.at(x.min(self.width - 1), y.min(self.height - 1), c)
        })
    }

    /// Top-left `width × height` region.
    pub fn crop(&self, width: usize, height: usize) -> Result<Raster> {
        if width > self.width || height > self.height {
            return Err(Error::Parameter(format!(
                "cannot crop {}x{} to larger {width}x{height}",
                self.width, self.height
            )));
        }
        Raster::from_fn(width, height, self.channels, self.signed, |x, y, c| self.at(x, y, c))
    }

    /// Largest absolute sample value.
    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn clone_header(&self) -> Raster {
        Raster {
            width: self.width,
            height: self.height,
            channels: self.channels,
            signed: self.signed,
            samples: Vec::new(),
        }
    }
}
