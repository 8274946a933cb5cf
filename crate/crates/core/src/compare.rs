//! Plain-versus-EDIZ comparison against a ground truth.
//!
//! The ground truth is decimated by the factor to synthesize a low-resolution
//! input (the same decimation the pipeline uses internally), which is then
//! zoomed back both plainly and with error estimation. Both outputs are
//! quantized to 8 bits, exactly as they are saved, before being measured.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::codec;
use crate::ediz::{ediz_zoom, DivisibilityPolicy, EdizConfig, EdizTrace};
use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::metrics::{Quality, QualityReport};
use crate::raster::Raster;
use crate::resample::{check_divisible, subsample};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareConfig {
    pub factor: usize,
    pub kernel: Kernel,
    pub gain: f64,
    /// Pad non-divisible inputs by edge replication instead of failing.
    pub pad: bool,
}

impl CompareConfig {
    pub fn new(factor: usize, kernel: Kernel) -> Self {
        Self {
            factor,
            kernel,
            gain: 1.0,
            pad: false,
        }
    }

    fn ediz_config(&self) -> Result<EdizConfig> {
        let policy = if self.pad {
            DivisibilityPolicy::PadReplicate
        } else {
            DivisibilityPolicy::Strict
        };
        Ok(EdizConfig::new(self.factor, self.kernel)?
            .with_gain(self.gain)?
            .with_divisibility(policy))
    }
}

/// Everything produced by one comparison run.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub config: CompareConfig,
    pub ground_truth: Raster,
    /// Decimated ground truth fed to both zoomers.
    pub low_res: Raster,
    pub trace: EdizTrace,
    /// 8-bit-quantized plain zoom, cropped to the ground-truth size.
    pub plain: Raster,
    /// 8-bit-quantized EDIZ output, cropped to the ground-truth size.
    pub ediz: Raster,
    pub plain_quality: QualityReport,
    pub ediz_quality: QualityReport,
}

pub fn compare(ground_truth: &Raster, config: &CompareConfig) -> Result<Comparison> {
    let n = config.factor;
    let ediz_cfg = config.ediz_config()?;
    let (w, h) = (ground_truth.width(), ground_truth.height());
    let padded = if config.pad {
        ground_truth.pad_replicate(w.div_ceil(n) * n, h.div_ceil(n) * n)?
    } else {
        check_divisible(ground_truth, n).map_err(|e| {
            Error::Parameter(format!("ground truth cannot be decimated: {e} (use --pad to replicate edges)"))
        })?;
        ground_truth.clone()
    };
    let low_res = subsample(&padded, n)?;
    let trace = ediz_zoom(&low_res, &ediz_cfg).map_err(|e| match e {
        Error::NotDivisible { .. } => Error::Parameter(format!(
            "low-resolution input {}x{} cannot be zoomed out again: {e} (use --pad to replicate edges)",
            low_res.width(),
            low_res.height()
        )),
        other => other,
    })?;
    let plain = codec::quantized(&trace.i_in_zoom.crop(w, h)?);
    let ediz = codec::quantized(&trace.i_out.crop(w, h)?);
    let plain_quality = QualityReport::measure(&plain, ground_truth)?;
    let ediz_quality = QualityReport::measure(&ediz, ground_truth)?;
    Ok(Comparison {
        config: *config,
        ground_truth: ground_truth.clone(),
        low_res,
        trace,
        plain,
        ediz,
        plain_quality,
        ediz_quality,
    })
}

impl Comparison {
    /// Writes the images into `outdir` and returns the report listing them.
    ///
    /// Files: `low_res.png`, `plain.png`, `ediz.png`, `diff_plain.png`,
    /// `diff_ediz.png` (signed differences to ground truth, visualized) and
    /// `error_map.png` (the estimated error, visualized).
    pub fn write_artifacts(&self, outdir: &Path) -> Result<CompareReport> {
        std::fs::create_dir_all(outdir)?;
        let mut artifacts = Vec::new();
        let mut put = |name: &str, raster: &Raster| -> Result<PathBuf> {
            let path = outdir.join(name);
            codec::save_auto(raster, &path)?;
            artifacts.push(path.clone());
            Ok(path)
        };
        put("low_res.png", &self.low_res)?;
        put("plain.png", &self.plain)?;
        put("ediz.png", &self.ediz)?;
        let (vis, plain_scale) = codec::visualize_signed(&self.plain.subtract(&self.ground_truth)?);
        put("diff_plain.png", &vis)?;
        let (vis, ediz_scale) = codec::visualize_signed(&self.ediz.subtract(&self.ground_truth)?);
        put("diff_ediz.png", &vis)?;
        let (vis, error_scale) = codec::visualize_signed(&self.trace.estimated_error);
        put("error_map.png", &vis)?;
        let mut report = self.report();
        report.artifacts = artifacts;
        report.scales = Scales {
            diff_plain: plain_scale,
            diff_ediz: ediz_scale,
            error_map: error_scale,
        };
        Ok(report)
    }

    /// The report without any written artifacts.
    pub fn report(&self) -> CompareReport {
        CompareReport {
            config: ConfigEcho {
                kernel: self.config.kernel.to_string(),
                factor: self.config.factor,
                gain: self.config.gain,
                pad: self.config.pad,
                peak: 1.0,
            },
            plain: self.plain_quality.clone(),
            ediz: self.ediz_quality.clone(),
            artifacts: Vec::new(),
            scales: Scales::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub kernel: String,
    pub factor: usize,
    pub gain: f64,
    pub pad: bool,
    /// Peak sample value assumed by PSNR.
    pub peak: f64,
}

/// Value shown as full white in each visualized signed map (0 is mid-gray).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Scales {
    pub diff_plain: f64,
    pub diff_ediz: f64,
    pub error_map: f64,
}

/// Comparison summary. Deltas are not stored: they are recomputed as
/// `ediz − plain` whenever the report is rendered or serialized.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub config: ConfigEcho,
    pub plain: QualityReport,
    pub ediz: QualityReport,
    pub artifacts: Vec<PathBuf>,
    pub scales: Scales,
}

#[derive(Serialize, Deserialize)]
struct ChannelDetail {
    plain: Vec<Quality>,
    ediz: Vec<Quality>,
    plain_mean: Quality,
    ediz_mean: Quality,
}

#[derive(Serialize, Deserialize)]
struct WireReport {
    config: ConfigEcho,
    plain: Quality,
    ediz: Quality,
    delta: Quality,
    artifacts: Vec<PathBuf>,
    scales: Scales,
    channels: ChannelDetail,
}

impl CompareReport {
    /// Headline (luma) `ediz − plain`.
    pub fn delta(&self) -> Quality {
        self.ediz.luma.delta(&self.plain.luma)
    }

    pub fn to_json(&self) -> Result<String> {
        let wire = WireReport {
            config: self.config.clone(),
            plain: self.plain.luma,
            ediz: self.ediz.luma,
            delta: self.delta(),
            artifacts: self.artifacts.clone(),
            scales: self.scales,
            channels: ChannelDetail {
                plain: self.plain.channels.clone(),
                ediz: self.ediz.channels.clone(),
                plain_mean: self.plain.mean,
                ediz_mean: self.ediz.mean,
            },
        };
        Ok(serde_json::to_string_pretty(&wire)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let wire: WireReport = serde_json::from_str(text)?;
        Ok(Self {
            config: wire.config,
            plain: QualityReport {
                luma: wire.plain,
                channels: wire.channels.plain,
                mean: wire.channels.plain_mean,
            },
            ediz: QualityReport {
                luma: wire.ediz,
                channels: wire.channels.ediz,
                mean: wire.channels.ediz_mean,
            },
            artifacts: wire.artifacts,
            scales: wire.scales,
        })
    }
}

fn fmt_psnr(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_string()
    } else {
        format!("{v:.4}")
    }
}

impl fmt::Display for CompareReport {
    /// Flat `key = value` block.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "kernel = {}", c.kernel)?;
        writeln!(f, "factor = {}", c.factor)?;
        writeln!(f, "gain = {}", c.gain)?;
        writeln!(f, "pad = {}", c.pad)?;
        writeln!(f, "peak = {} (samples normalized to [0, 1]; 8-bit quantized before measuring)", c.peak)?;
        let rows = [("plain", self.plain.luma), ("ediz", self.ediz.luma), ("delta", self.delta())];
        for (name, q) in rows {
            writeln!(f, "{name}.mse = {:.6e}", q.mse)?;
            writeln!(f, "{name}.psnr_db = {}", fmt_psnr(q.psnr))?;
            writeln!(f, "{name}.ssim = {:.6}", q.ssim)?;
            writeln!(f, "{name}.hf_energy = {:.6e}", q.hf_energy)?;
        }
        for (label, report) in [("plain", &self.plain), ("ediz", &self.ediz)] {
            if report.channels.len() > 1 {
                for (i, q) in report.channels.iter().enumerate() {
                    writeln!(
                        f,
                        "{label}.channel{i} = mse {:.6e} psnr {} ssim {:.6} hf {:.6e}",
                        q.mse,
                        fmt_psnr(q.psnr),
                        q.ssim,
                        q.hf_energy
                    )?;
                }
            }
        }
        let s = &self.scales;
        if !self.artifacts.is_empty() {
            writeln!(f, "scale.diff_plain = {:.6}", s.diff_plain)?;
            writeln!(f, "scale.diff_ediz = {:.6}", s.diff_ediz)?;
            writeln!(f, "scale.error_map = {:.6}", s.error_map)?;
        }
        for a in &self.artifacts {
            writeln!(f, "artifact = {}", a.display())?;
        }
        Ok(())
    }
}
