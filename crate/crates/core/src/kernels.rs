//! One-dimensional interpolation kernels.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Default free parameter of the cubic convolution family (Catmull-Rom / Keys).
pub const DEFAULT_CUBIC_A: f64 = -0.5;

/// Default Lanczos lobe count.
pub const DEFAULT_LANCZOS_LOBES: u32 = 3;

/// A validated interpolation kernel.
///
/// Construct through [`Kernel::cubic`] / [`Kernel::lanczos`] to get parameter
/// checking; the variants are public so callers can match on them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    /// Cubic convolution with free parameter `a < 0`, support 2.
    Cubic { a: f64 },
    /// Lanczos windowed sinc with `lobes ∈ {2, 3, 4}`, support `lobes`.
    Lanczos { lobes: u32 },
}

impl Default for Kernel {
    fn default() -> Self {
        Kernel::Cubic { a: DEFAULT_CUBIC_A }
    }
}

impl Kernel {
    pub fn cubic(a: f64) -> Result<Self> {
        if !a.is_finite() || a >= 0.0 {
            return Err(Error::Kernel(format!("cubic parameter must be negative, got {a}")));
        }
        Ok(Kernel::Cubic { a })
    }

    pub fn lanczos(lobes: u32) -> Result<Self> {
        if !(2..=4).contains(&lobes) {
            return Err(Error::Kernel(format!("Lanczos lobe count must be 2, 3 or 4, got {lobes}")));
        }
        Ok(Kernel::Lanczos { lobes })
    }

    /// Catmull-Rom cubic (`a = -0.5`).
    pub fn catmull_rom() -> Self {
        Kernel::Cubic { a: DEFAULT_CUBIC_A }
    }

    pub fn lanczos3() -> Self {
        Kernel::Lanczos {
            lobes: DEFAULT_LANCZOS_LOBES,
        }
    }

    /// Checks the variant invariants (useful for kernels built from the raw enum).
    pub fn validate(self) -> Result<Self> {
        match self {
            Kernel::Cubic { a } => Kernel::cubic(a),
            Kernel::Lanczos { lobes } => Kernel::lanczos(lobes),
        }
    }

    /// Support radius: the kernel vanishes for `|x| >= support()`.
    pub fn support(&self) -> f64 {
        match *self {
            Kernel::Cubic { .. } => 2.0,
            Kernel::Lanczos { lobes } => f64::from(lobes),
        }
    }

    /// Kernel weight at offset `x` (in source-sample units).
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Kernel::Cubic { a } => cubic_convolution(a, x),
            Kernel::Lanczos { lobes } => lanczos(f64::from(lobes), x),
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Kernel::Cubic { a } => write!(f, "cubic(a={a})"),
            Kernel::Lanczos { lobes } => write!(f, "lanczos{lobes}"),
        }
    }
}

impl std::str::FromStr for Kernel {
    type Err = Error;

    /// Accepts `cubic`, `lanczos2`, `lanczos3`, `lanczos4`, and `lanczos` (= 3).
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cubic" | "bicubic" => Ok(Kernel::catmull_rom()),
            "lanczos" => Ok(Kernel::lanczos3()),
            other => match other.strip_prefix("lanczos").map(str::parse::<u32>) {
                Some(Ok(lobes)) => Kernel::lanczos(lobes),
                _ => Err(Error::Kernel(format!(
                    "unknown kernel '{s}', expected cubic or lanczos2/3/4"
                ))),
            },
        }
    }
}

fn cubic_convolution(a: f64, x: f64) -> f64 {
    let t = x.abs();
    if t == 1.0 {
        // (a + 2) − (a + 3) + 1 need not round to exactly 0
        0.0
    } else if t < 1.0 {
        ((a + 2.0) * t - (a + 3.0)) * t * t + 1.0
    } else if t < 2.0 {
        ((a * t - 5.0 * a) * t + 8.0 * a) * t - 4.0 * a
    } else {
        0.0
    }
}

/// Normalized sinc, `sin(πx) / (πx)` with `sinc(0) = 1`.
#[inline]
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let px = PI * x;
        px.sin() / px
    }
}

fn lanczos(lobes: f64, x: f64) -> f64 {
    let t = x.abs();
    if t >= lobes {
        return 0.0;
    }
    // sin(πk) is not exactly zero in floating point; pin the integer zeros.
    if t != 0.0 && t.fract() == 0.0 {
        return 0.0;
    }
    sinc(x) * sinc(x / lobes)
}
