//! Slow reference implementations.
//!
//! Written independently of the production paths (different formula
//! arrangement, no weight tables, no separable passes, no summed-area
//! tables) so that each can check the other. Used by the built-in self-test
//! and by the test suites.

use std::f64::consts::PI;

use crate::kernels::Kernel;
use crate::raster::Raster;

/// Cubic convolution in expanded power form.
pub fn cubic(a: f64, x: f64) -> f64 {
    let t = x.abs();
    if t <= 1.0 {
        (a + 2.0) * t.powi(3) - (a + 3.0) * t.powi(2) + 1.0
    } else if t < 2.0 {
        a * t.powi(3) - 5.0 * a * t.powi(2) + 8.0 * a * t - 4.0 * a
    } else {
        0.0
    }
}

/// Lanczos as `a·sin(πx)·sin(πx/a) / (π²x²)`.
pub fn lanczos(lobes: f64, x: f64) -> f64 {
    if x.abs() >= lobes {
        0.0
    } else if x == 0.0 {
        1.0
    } else {
        lobes * (PI * x).sin() * (PI * x / lobes).sin() / (PI * PI * x * x)
    }
}

pub fn kernel(k: Kernel, x: f64) -> f64 {
    match k {
        Kernel::Cubic { a } => cubic(a, x),
        Kernel::Lanczos { lobes } => lanczos(f64::from(lobes), x),
    }
}

/// Normalized 1-D weights at source coordinate `pos`, as `(index, weight)`
/// with unclamped indices.
fn axis_weights(k: Kernel, pos: f64) -> Vec<(isize, f64)> {
    let s = k.support();
    let first = (pos - s).ceil() as isize;
    let last = (pos + s).floor() as isize;
    let raw: Vec<(isize, f64)> = (first..=last)
        .map(|i| (i, kernel(k, pos - i as f64)))
        .collect();
    let total: f64 = raw.iter().map(|&(_, w)| w).sum();
    raw.into_iter().map(|(i, w)| (i, w / total)).collect()
}

/// Direct 2-D tensor-product evaluation of every output pixel, edge-clamped,
/// corner-aligned (`output j ↦ source j / n`).
pub fn upsample_direct(img: &Raster, factor: usize, k: Kernel) -> Raster {
    let (w, h, ch) = img.shape();
    let clamp = |i: isize, len: usize| i.clamp(0, len as isize - 1) as usize;
    Raster::from_fn(w * factor, h * factor, ch, img.is_signed(), |x, y, c| {
        let wx = axis_weights(k, x as f64 / factor as f64);
        let wy = axis_weights(k, y as f64 / factor as f64);
        let mut acc = 0.0;
        for &(j, v) in &wy {
            for &(i, u) in &wx {
                acc += u * v * img.at(clamp(i, w), clamp(j, h), c);
            }
        }
        acc
    })
    .expect("output shape derives from a valid raster")
}

/// Mean squared error by explicit loops over sites.
pub fn mse_direct(a: &Raster, b: &Raster) -> f64 {
    let (w, h, ch) = a.shape();
    let mut acc = 0.0;
    for y in 0..h {
        for x in 0..w {
            for c in 0..ch {
                let d = a.at(x, y, c) - b.at(x, y, c);
                acc += d * d;
            }
        }
    }
    acc / (w * h * ch) as f64
}

/// SSIM with an 8×8 uniform window, stride 1, each window computed from
/// scratch with two-pass moments. Single-channel inputs.
pub fn ssim_direct(a: &Raster, b: &Raster) -> f64 {
    const WIN: usize = 8;
    let c1 = 0.01f64.powi(2);
    let c2 = 0.03f64.powi(2);
    let (w, h) = (a.width(), a.height());
    let n = (WIN * WIN) as f64;
    let mut total = 0.0;
    let mut count = 0usize;
    for y0 in 0..=h - WIN {
        for x0 in 0..=w - WIN {
            let sites = || (y0..y0 + WIN).flat_map(move |y| (x0..x0 + WIN).map(move |x| (x, y)));
            let mu_a = sites().map(|(x, y)| a.at(x, y, 0)).sum::<f64>() / n;
            let mu_b = sites().map(|(x, y)| b.at(x, y, 0)).sum::<f64>() / n;
            let (mut va, mut vb, mut cov) = (0.0, 0.0, 0.0);
            for (x, y) in sites() {
                let da = a.at(x, y, 0) - mu_a;
                let db = b.at(x, y, 0) - mu_b;
                va += da * da;
                vb += db * db;
                cov += da * db;
            }
            va /= n;
            vb /= n;
            cov /= n;
            total += (2.0 * mu_a * mu_b + c1) * (2.0 * cov + c2)
                / ((mu_a * mu_a + mu_b * mu_b + c1) * (va + vb + c2));
            count += 1;
        }
    }
    total / count as f64
}
