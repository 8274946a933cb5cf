//! Integer-factor image zooming with zoom-out/zoom-in error estimation.
//!
//! The crate upsamples images with separable cubic-convolution or Lanczos
//! kernels and can sharpen the result by estimating the detail the
//! interpolator loses: the input is shrunk and re-enlarged, the difference
//! to the input (the reconstruction error) is itself enlarged, and that
//! estimate is added to the plainly zoomed image.
//!
//! ```
//! use ediz::{ediz_zoom, EdizConfig, Kernel, Raster};
//!
//! let img = Raster::from_fn(16, 16, 1, false, |x, y, _| ((x ^ y) & 3) as f64 / 3.0)?;
//! let cfg = EdizConfig::new(2, Kernel::catmull_rom())?;
//! let trace = ediz_zoom(&img, &cfg)?;
//! assert_eq!(trace.i_out.shape(), (32, 32, 1));
//! # Ok::<_, ediz::Error>(())
//! ```
//!
//! Modules:
//!
//! - [`raster`]: the `f64` image buffer.
//! - [`kernels`]: cubic convolution and Lanczos kernels.
//! - [`resample`]: weight tables, separable upsampling, decimation.
//! - [`ediz`]: the error-estimation pipeline.
//! - [`metrics`]: MSE, PSNR, SSIM, Laplacian energy.
//! - [`codec`]: PNM (P5/P6) and PNG files.
//! - [`compare`], [`cli`], [`selftest`]: the tooling behind the `ediz` binary.

pub mod cli;
pub mod codec;
pub mod compare;
pub mod ediz;
pub mod error;
pub mod kernels;
pub mod metrics;
pub mod oracle;
pub mod raster;
pub mod resample;
pub mod selftest;

pub use crate::ediz::{ediz_zoom, reconstruction_error, DivisibilityPolicy, EdizConfig, EdizTrace};
pub use crate::error::{Axis, Error, Result};
pub use crate::kernels::Kernel;
pub use crate::raster::{PixelSite, Raster};
pub use crate::resample::{build_weights, subsample, upsample, BoundaryPolicy, KernelZoom, WeightTable, Zoomer};
