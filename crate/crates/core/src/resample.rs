//! Integer-factor resampling.
//!
//! Upsampling is separable: a horizontal pass then a vertical pass, each
//! driven by a [`WeightTable`] holding one tap list per output phase. The
//! output grid is corner-aligned (output index `j` sits at source coordinate
//! `j / n`), so every `n`-th output sample lands on a source sample and, with
//! an interpolating kernel, reproduces it exactly. Decimation keeps samples at
//! offset 0, which makes `subsample(upsample(x))` the identity.

use crate::error::{Axis, Error, Result};
use crate::kernels::Kernel;
use crate::raster::Raster;

/// How source indices outside `[0, len)` are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryPolicy {
    /// Clamp to the nearest edge sample.
    #[default]
    Replicate,
}

impl BoundaryPolicy {
    #[inline]
    pub fn resolve(self, index: isize, len: usize) -> usize {
        match self {
            BoundaryPolicy::Replicate => index.clamp(0, len as isize - 1) as usize,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tap {
    /// Source index relative to `j / n` (integer division).
    pub offset: isize,
    pub weight: f64,
}

/// Per-phase tap weights for one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    len_in: usize,
    factor: usize,
    kernel: Kernel,
    phases: Vec<Vec<Tap>>,
}

impl WeightTable {
    /// Builds the table for upsampling `len_in` samples by `factor` with `kernel`.
    pub fn build(len_in: usize, factor: usize, kernel: Kernel) -> Result<Self> {
        Self::build_with(len_in, factor, kernel, |x| kernel.eval(x), true)
    }

    /// Table construction with the weight function and normalization step
    /// exposed, so the self-test can drive deliberately broken variants.
    pub(crate) fn build_with(
        len_in: usize,
        factor: usize,
        kernel: Kernel,
        weight: impl Fn(f64) -> f64,
        normalize: bool,
    ) -> Result<Self> {
        if factor < 2 {
            return Err(Error::Factor(factor));
        }
        if len_in == 0 {
            return Err(Error::Parameter("cannot resample an empty axis".into()));
        }
        let support = kernel.support();
        let phases = (0..factor)
            .map(|p| {
                let frac = p as f64 / factor as f64;
                // integer k with |frac - k| < support
                let lo = (frac - support).floor() as isize + 1;
                let hi = (frac + support).ceil() as isize - 1;
                let mut taps: Vec<Tap> = (lo..=hi)
                    .map(|k| Tap {
                        offset: k,
                        weight: weight(frac - k as f64),
                    })
                    .filter(|t| t.weight != 0.0)
                    .collect();
                if normalize {
                    let sum: f64 = taps.iter().map(|t| t.weight).sum();
                    for t in &mut taps {
                        t.weight /= sum;
                    }
                }
                taps
            })
            .collect();
        Ok(Self {
            len_in,
            factor,
            kernel,
            phases,
        })
    }

    pub fn len_in(&self) -> usize {
        self.len_in
    }

    pub fn len_out(&self) -> usize {
        self.len_in * self.factor
    }

    pub fn factor(&self) -> usize {
        self.factor
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn phase(&self, p: usize) -> &[Tap] {
        &self.phases[p]
    }

    pub fn phases(&self) -> impl Iterator<Item = &[Tap]> {
        self.phases.iter().map(Vec::as_slice)
    }

    /// Number of taps used by phase `p`.
    pub fn taps_per_phase(&self, p: usize) -> usize {
        self.phases[p].len()
    }

    /// Resolved `(source index, weight)` pairs for output index `j`.
    pub fn taps_for(&self, j: usize, boundary: BoundaryPolicy) -> impl Iterator<Item = (usize, f64)> + '_ {
        let base = (j / self.factor) as isize;
        self.phases[j % self.factor]
            .iter()
            .map(move |t| (boundary.resolve(base + t.offset, self.len_in), t.weight))
    }
}

/// Convenience wrapper around [`WeightTable::build`].
pub fn build_weights(len_in: usize, factor: usize, kernel: Kernel) -> Result<WeightTable> {
    WeightTable::build(len_in, factor, kernel)
}

/// Upsamples by `factor` in both directions.
pub fn upsample(img: &Raster, factor: usize, kernel: Kernel, boundary: BoundaryPolicy) -> Result<Raster> {
    let horizontal = WeightTable::build(img.width(), factor, kernel)?;
    let vertical = WeightTable::build(img.height(), factor, kernel)?;
    upsample_with_tables(img, &horizontal, &vertical, boundary)
}

/// Two-pass upsampling with prebuilt tables.
pub fn upsample_with_tables(
    img: &Raster,
    horizontal: &WeightTable,
    vertical: &WeightTable,
    boundary: BoundaryPolicy,
) -> Result<Raster> {
    if horizontal.len_in() != img.width() || vertical.len_in() != img.height() {
        return Err(Error::Parameter(format!(
            "weight tables built for {}x{}, raster is {}x{}",
            horizontal.len_in(),
            vertical.len_in(),
            img.width(),
            img.height()
        )));
    }
    let ch = img.channels();
    let (w_in, h_in) = (img.width(), img.height());
    let (w_out, h_out) = (horizontal.len_out(), vertical.len_out());
    let src = img.samples();

    // Horizontal pass: h_in rows of w_out pixels.
    let row_len = w_out * ch;
    let mut wide = vec![0.0; h_in * row_len];
    for (y, out_row) in wide.chunks_exact_mut(row_len).enumerate() {
        let in_row = &src[y * w_in * ch..(y + 1) * w_in * ch];
        for (j, out_px) in out_row.chunks_exact_mut(ch).enumerate() {
            for (i, w) in horizontal.taps_for(j, boundary) {
                let in_px = &in_row[i * ch..(i + 1) * ch];
                for (o, &s) in out_px.iter_mut().zip(in_px) {
                    *o += w * s;
                }
            }
        }
    }

    // Vertical pass: whole rows are combined at once.
    let mut out = vec![0.0; h_out * row_len];
    for (j, out_row) in out.chunks_exact_mut(row_len).enumerate() {
        for (i, w) in vertical.taps_for(j, boundary) {
            let in_row = &wide[i * row_len..(i + 1) * row_len];
            for (o, &s) in out_row.iter_mut().zip(in_row) {
                *o += w * s;
            }
        }
    }

    Raster::from_samples(w_out, h_out, ch, img.is_signed(), out)
}

/// Keeps every `factor`-th sample in each direction, starting at 0.
pub fn subsample(img: &Raster, factor: usize) -> Result<Raster> {
    decimate(img, factor, 0)
}

pub(crate) fn decimate(img: &Raster, factor: usize, offset: usize) -> Result<Raster> {
    if factor < 2 {
        return Err(Error::Factor(factor));
    }
    check_divisible(img, factor)?;
    Raster::from_fn(
        img.width() / factor,
        img.height() / factor,
        img.channels(),
        img.is_signed(),
        |x, y, c| img.at(factor * x + offset, factor * y + offset, c),
    )
}

/// Errors naming the first axis whose length is not a multiple of `factor`.
pub fn check_divisible(img: &Raster, factor: usize) -> Result<()> {
    if !img.width().is_multiple_of(factor) {
        return Err(Error::NotDivisible {
            axis: Axis::Width,
            len: img.width(),
            factor,
        });
    }
    if !img.height().is_multiple_of(factor) {
        return Err(Error::NotDivisible {
            axis: Axis::Height,
            len: img.height(),
            factor,
        });
    }
    Ok(())
}

/// A zooming method usable as the interpolator inside the error-estimation
/// pipeline. Any integer-factor upscaler can implement it.
pub trait Zoomer {
    fn factor(&self) -> usize;

    /// Enlarges `img` by `factor()` in each direction.
    fn zoom_in(&self, img: &Raster) -> Result<Raster>;

    /// Shrinks `img` by `factor()`; plain decimation unless overridden.
    fn zoom_out(&self, img: &Raster) -> Result<Raster> {
        subsample(img, self.factor())
    }
}

/// Separable kernel upsampler paired with offset-0 decimation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelZoom {
    pub factor: usize,
    pub kernel: Kernel,
    pub boundary: BoundaryPolicy,
}

impl KernelZoom {
    pub fn new(factor: usize, kernel: Kernel) -> Result<Self> {
        if factor < 2 {
            return Err(Error::Factor(factor));
        }
        Ok(Self {
            factor,
            kernel: kernel.validate()?,
            boundary: BoundaryPolicy::Replicate,
        })
    }
}

impl Zoomer for KernelZoom {
    fn factor(&self) -> usize {
        self.factor
    }

    fn zoom_in(&self, img: &Raster) -> Result<Raster> {
        upsample(img, self.factor, self.kernel, self.boundary)
    }
}
