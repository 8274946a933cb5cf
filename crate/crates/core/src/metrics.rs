//! Full-reference quality metrics and a detail (high-frequency) measure.
//!
//! All metrics assume unit peak value. RGB inputs are reduced to BT.601 luma
//! for SSIM and the Laplacian energy; MSE/PSNR use every sample.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::raster::Raster;

/// Side of the uniform SSIM window.
pub const SSIM_WINDOW: usize = 8;
pub const SSIM_C1: f64 = 0.01 * 0.01;
pub const SSIM_C2: f64 = 0.03 * 0.03;

fn same_shape(a: &Raster, b: &Raster) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(())
}

/// Mean squared difference over every sample.
pub fn mse(a: &Raster, b: &Raster) -> Result<f64> {
    same_shape(a, b)?;
    let sum: f64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(sum / a.samples().len() as f64)
}

/// `10·log10(1 / mse)`; `f64::INFINITY` when the error is zero.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        -10.0 * mse.log10()
    }
}

pub fn psnr(a: &Raster, b: &Raster) -> Result<f64> {
    mse(a, b).map(psnr_from_mse)
}

/// Mean SSIM over all 8×8 windows (stride 1) of the luma planes.
pub fn ssim(a: &Raster, b: &Raster) -> Result<f64> {
    same_shape(a, b)?;
    ssim_plane(&a.luma(), &b.luma())
}

/// Summed-area table with a zero guard row/column.
struct Integral {
    stride: usize,
    sums: Vec<f64>,
}

impl Integral {
    fn new(width: usize, height: usize, value: impl Fn(usize) -> f64) -> Self {
        let stride = width + 1;
        let mut sums = vec![0.0; stride * (height + 1)];
        for y in 0..height {
            let mut row = 0.0;
            for x in 0..width {
                row += value(y * width + x);
                sums[(y + 1) * stride + x + 1] = sums[y * stride + x + 1] + row;
            }
        }
        Self { stride, sums }
    }

    #[inline]
    fn window(&self, x: usize, y: usize, size: usize) -> f64 {
        let s = self.stride;
        let (x1, y1) = (x + size, y + size);
        self.sums[y1 * s + x1] - self.sums[y * s + x1] - self.sums[y1 * s + x] + self.sums[y * s + x]
    }
}

fn ssim_plane(a: &Raster, b: &Raster) -> Result<f64> {
    let (w, h) = (a.width(), a.height());
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::TooSmall {
            width: w,
            height: h,
            window: SSIM_WINDOW,
        });
    }
    let (pa, pb) = (a.samples(), b.samples());
    let sa = Integral::new(w, h, |i| pa[i]);
    let sb = Integral::new(w, h, |i| pb[i]);
    let saa = Integral::new(w, h, |i| pa[i] * pa[i]);
    let sbb = Integral::new(w, h, |i| pb[i] * pb[i]);
    let sab = Integral::new(w, h, |i| pa[i] * pb[i]);

    let n = (SSIM_WINDOW * SSIM_WINDOW) as f64;
    let mut total = 0.0;
    for y in 0..=h - SSIM_WINDOW {
        for x in 0..=w - SSIM_WINDOW {
            let mu_a = sa.window(x, y, SSIM_WINDOW) / n;
            let mu_b = sb.window(x, y, SSIM_WINDOW) / n;
            let var_a = saa.window(x, y, SSIM_WINDOW) / n - mu_a * mu_a;
            let var_b = sbb.window(x, y, SSIM_WINDOW) / n - mu_b * mu_b;
            let cov = sab.window(x, y, SSIM_WINDOW) / n - mu_a * mu_b;
            total += ssim_index(mu_a, mu_b, var_a, var_b, cov);
        }
    }
    let count = ((w - SSIM_WINDOW + 1) * (h - SSIM_WINDOW + 1)) as f64;
    Ok(total / count)
}

#[inline]
fn ssim_index(mu_a: f64, mu_b: f64, var_a: f64, var_b: f64, cov: f64) -> f64 {
    ((2.0 * mu_a * mu_b + SSIM_C1) * (2.0 * cov + SSIM_C2))
        / ((mu_a * mu_a + mu_b * mu_b + SSIM_C1) * (var_a + var_b + SSIM_C2))
}

/// Mean squared response of the 4-neighbour discrete Laplacian over interior
/// pixels of the luma plane.
pub fn hf_energy(img: &Raster) -> Result<f64> {
    let (w, h) = (img.width(), img.height());
    if w < 3 || h < 3 {
        return Err(Error::TooSmall {
            width: w,
            height: h,
            window: 3,
        });
    }
    let luma = img.luma();
    let p = luma.samples();
    let mut total = 0.0;
    for y in 1..h - 1 {
        for x in 1..w - 1 {
            let i = y * w + x;
            let lap = p[i - w] + p[i + w] + p[i - 1] + p[i + 1] - 4.0 * p[i];
            total += lap * lap;
        }
    }
    Ok(total / ((w - 2) * (h - 2)) as f64)
}

/// One set of metric values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quality {
    pub mse: f64,
    /// Decibels; infinite when `mse == 0`.
    #[serde(with = "psnr_serde")]
    pub psnr: f64,
    pub ssim: f64,
    /// Laplacian energy of the measured image (not of the difference).
    pub hf_energy: f64,
}

impl Quality {
    fn measure(candidate: &Raster, reference: &Raster) -> Result<Self> {
        let mse = mse(candidate, reference)?;
        Ok(Self {
            mse,
            psnr: psnr_from_mse(mse),
            ssim: ssim_plane(candidate, reference)?,
            hf_energy: hf_energy(candidate)?,
        })
    }

    /// Field-wise `self − base`. Equal PSNRs (including two infinities) give 0.
    pub fn delta(&self, base: &Quality) -> Quality {
        let psnr = if self.psnr == base.psnr {
            0.0
        } else {
            self.psnr - base.psnr
        };
        Quality {
            mse: self.mse - base.mse,
            psnr,
            ssim: self.ssim - base.ssim,
            hf_energy: self.hf_energy - base.hf_energy,
        }
    }
}

/// Metrics of a candidate against a reference: luma (the headline numbers),
/// each channel separately, and the channel mean.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub luma: Quality,
    pub channels: Vec<Quality>,
    pub mean: Quality,
}

impl QualityReport {
    pub fn measure(candidate: &Raster, reference: &Raster) -> Result<Self> {
        same_shape(candidate, reference)?;
        let luma = Quality::measure(&candidate.luma(), &reference.luma())?;
        let channels = if candidate.channels() == 1 {
            vec![luma]
        } else {
            (0..candidate.channels())
                .map(|c| Quality::measure(&candidate.channel(c)?, &reference.channel(c)?))
                .collect::<Result<Vec<_>>>()?
        };
        let k = channels.len() as f64;
        let mean_mse = channels.iter().map(|q| q.mse).sum::<f64>() / k;
        let mean = Quality {
            mse: mean_mse,
            psnr: psnr_from_mse(mean_mse),
            ssim: channels.iter().map(|q| q.ssim).sum::<f64>() / k,
            hf_energy: channels.iter().map(|q| q.hf_energy).sum::<f64>() / k,
        };
        Ok(Self { luma, channels, mean })
    }
}

/// JSON has no infinity; PSNR of identical images is written as `"inf"`.
pub(crate) mod psnr_serde {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() && *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) if s == "inf" => Ok(f64::INFINITY),
            Repr::Str(s) => Err(de::Error::custom(format!("invalid psnr value '{s}'"))),
        }
    }
}
