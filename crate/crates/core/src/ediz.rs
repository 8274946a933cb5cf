//! Zoom-out/zoom-in error estimation.
//!
//! The input is shrunk by the zoom factor and enlarged back with the same
//! interpolator. What the round trip fails to reproduce is the
//! reconstruction error `e`. Zooming `e` by the same factor gives an estimate
//! of the detail the interpolator will also miss when enlarging the input
//! itself, and that estimate is added to the plainly zoomed input:
//!
//! ```text
//! i_zout  = zoom_out(input)
//! i_rec   = zoom_in(i_zout)
//! e       = input - i_rec
//! E_e     = zoom_in(e)
//! i_in_zoom = zoom_in(input)
//! i_out   = i_in_zoom + gain * E_e
//! ```
//!
//! Every stage is linear and nothing is clamped; clamping to `[0, 1]` happens
//! only when the result is saved.

use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::raster::Raster;
use crate::resample::{check_divisible, KernelZoom, Zoomer};

/// What to do when the input dimensions are not multiples of the factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DivisibilityPolicy {
    /// Reject the input with a shape error naming the axis.
    #[default]
    Strict,
    /// Pad right/bottom by edge replication, run, then crop back.
    PadReplicate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdizConfig {
    pub factor: usize,
    pub kernel: Kernel,
    /// Kernel used to zoom the error field; `None` shares `kernel`.
    pub error_kernel: Option<Kernel>,
    /// Weight of the estimated error in the final sum. 1.0 is the plain sum.
    pub error_gain: f64,
    pub divisibility: DivisibilityPolicy,
}

impl EdizConfig {
    pub fn new(factor: usize, kernel: Kernel) -> Result<Self> {
        Self {
            factor,
            kernel,
            error_kernel: None,
            error_gain: 1.0,
            divisibility: DivisibilityPolicy::Strict,
        }
        .validated()
    }

    pub fn with_gain(mut self, gain: f64) -> Result<Self> {
        self.error_gain = gain;
        self.validated()
    }

    pub fn with_error_kernel(mut self, kernel: Kernel) -> Result<Self> {
        self.error_kernel = Some(kernel);
        self.validated()
    }

    pub fn with_divisibility(mut self, policy: DivisibilityPolicy) -> Self {
        self.divisibility = policy;
        self
    }

    pub fn validated(self) -> Result<Self> {
        if self.factor < 2 {
            return Err(Error::Factor(self.factor));
        }
        if !self.error_gain.is_finite() || self.error_gain < 0.0 {
            return Err(Error::Parameter(format!(
                "error gain must be finite and non-negative, got {}",
                self.error_gain
            )));
        }
        self.kernel.validate()?;
        if let Some(k) = self.error_kernel {
            k.validate()?;
        }
        Ok(self)
    }

    fn zoomers(&self) -> Result<(KernelZoom, KernelZoom)> {
        let image = KernelZoom::new(self.factor, self.kernel)?;
        let error = KernelZoom::new(self.factor, self.error_kernel.unwrap_or(self.kernel))?;
        Ok((image, error))
    }
}

/// Every intermediate of one pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct EdizTrace {
    /// Input shrunk by the factor, `(W/n) × (H/n)`.
    pub i_zout: Raster,
    /// `i_zout` zoomed back to `W × H`.
    pub i_rec: Raster,
    /// Reconstruction error `input − i_rec`, signed, `W × H`.
    pub error: Raster,
    /// Zoomed reconstruction error, signed, `(W·n) × (H·n)`.
    pub estimated_error: Raster,
    /// Plainly zoomed input, `(W·n) × (H·n)`.
    pub i_in_zoom: Raster,
    /// `i_in_zoom + gain · estimated_error`.
    pub i_out: Raster,
}

/// Runs the pipeline with the kernel interpolator described by `cfg`.
pub fn ediz_zoom(img: &Raster, cfg: &EdizConfig) -> Result<EdizTrace> {
    let cfg = cfg.validated()?;
    let (image_zoom, error_zoom) = cfg.zoomers()?;
    let n = cfg.factor;
    match cfg.divisibility {
        DivisibilityPolicy::Strict => ediz_zoom_with(img, &image_zoom, &error_zoom, cfg.error_gain),
        DivisibilityPolicy::PadReplicate => {
            let (w, h) = (img.width(), img.height());
            let padded = img.pad_replicate(w.div_ceil(n) * n, h.div_ceil(n) * n)?;
            if padded.shape() == img.shape() {
                return ediz_zoom_with(img, &image_zoom, &error_zoom, cfg.error_gain);
            }
            let t = ediz_zoom_with(&padded, &image_zoom, &error_zoom, cfg.error_gain)?;
            Ok(EdizTrace {
                i_zout: t.i_zout,
                i_rec: t.i_rec.crop(w, h)?,
                error: t.error.crop(w, h)?,
                estimated_error: t.estimated_error.crop(w * n, h * n)?,
                i_in_zoom: t.i_in_zoom.crop(w * n, h * n)?,
                i_out: t.i_out.crop(w * n, h * n)?,
            })
        }
    }
}

/// Runs the pipeline over arbitrary zoomers. Input dimensions must be
/// divisible by the factor; both zoomers must share it.
pub fn ediz_zoom_with<I, E>(img: &Raster, image_zoom: &I, error_zoom: &E, gain: f64) -> Result<EdizTrace>
where
    I: Zoomer + ?Sized,
    E: Zoomer + ?Sized,
{
    let n = image_zoom.factor();
    if error_zoom.factor() != n {
        return Err(Error::Parameter(format!(
            "image zoom factor {n} differs from error zoom factor {}",
            error_zoom.factor()
        )));
    }
    let (i_zout, i_rec, error) = reconstruct(img, image_zoom)?;
    let estimated_error = error_zoom.zoom_in(&error)?;
    let i_in_zoom = image_zoom.zoom_in(img)?;
    let i_out = i_in_zoom.add_scaled(&estimated_error, gain)?;
    Ok(EdizTrace {
        i_zout,
        i_rec,
        error,
        estimated_error,
        i_in_zoom,
        i_out,
    })
}

fn reconstruct<Z: Zoomer + ?Sized>(img: &Raster, zoom: &Z) -> Result<(Raster, Raster, Raster)> {
    check_divisible(img, zoom.factor())?;
    let i_zout = zoom.zoom_out(img)?;
    let i_rec = zoom.zoom_in(&i_zout)?;
    let error = img.subtract(&i_rec)?;
    Ok((i_zout, i_rec, error))
}

/// Just the reconstruction error `input − zoom_in(zoom_out(input))`.
pub fn reconstruction_error(img: &Raster, cfg: &EdizConfig) -> Result<Raster> {
    let cfg = cfg.validated()?;
    let (zoom, _) = cfg.zoomers()?;
    match cfg.divisibility {
        DivisibilityPolicy::Strict => reconstruct(img, &zoom).map(|(_, _, e)| e),
        DivisibilityPolicy::PadReplicate => {
            let n = cfg.factor;
            let (w, h) = (img.width(), img.height());
            let padded = img.pad_replicate(w.div_ceil(n) * n, h.div_ceil(n) * n)?;
            reconstruct(&padded, &zoom)?.2.crop(w, h)
        }
    }
}
