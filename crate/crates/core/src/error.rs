use std::path::PathBuf;

use thiserror::Error;

/// Image axis, used to name the offending dimension in shape errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Width,
    Height,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Axis::Width => f.write_str("width"),
            Axis::Height => f.write_str("height"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid raster dimensions {width}x{height}: both must be at least 1")]
    Dimensions { width: usize, height: usize },

    #[error("unsupported channel count {0}: expected 1 (gray) or 3 (RGB)")]
    Channels(usize),

    #[error("pixel site ({x}, {y}, {c}) out of bounds for {width}x{height}x{channels} raster")]
    OutOfBounds {
        x: usize,
        y: usize,
        c: usize,
        width: usize,
        height: usize,
        channels: usize,
    },

    #[error("shape mismatch: {left:?} vs {right:?} (width, height, channels)")]
    ShapeMismatch {
        left: (usize, usize, usize),
        right: (usize, usize, usize),
    },

    #[error("{axis} {len} is not divisible by zoom factor {factor}")]
    NotDivisible { axis: Axis, len: usize, factor: usize },

    #[error("zoom factor must be at least 2, got {0}")]
    Factor(usize),

    #[error("invalid kernel parameter: {0}")]
    Kernel(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("image {width}x{height} is smaller than the {window}x{window} window")]
    TooSmall {
        width: usize,
        height: usize,
        window: usize,
    },

    #[error("codec error at byte {offset}: {message}")]
    Codec { offset: usize, message: String },

    #[error("unsupported image format for {0}")]
    Format(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
