//! `ediz` command-line surface: `zoom`, `compare`, `selftest`.
//!
//! Exit codes: 0 success, 1 runtime failure (codec, shape, failed
//! self-test), 2 bad flags.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::codec;
use crate::compare::{compare, CompareConfig};
use crate::ediz::{ediz_zoom, DivisibilityPolicy, EdizConfig};
use crate::error::Result;
use crate::kernels::Kernel;
use crate::resample::{upsample, BoundaryPolicy};
use crate::selftest::{run_selftest, Fault};

#[derive(Debug, Parser)]
#[command(name = "ediz", version, about = "Integer-factor image zooming with error estimation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zoom an image by an integer factor.
    Zoom(ZoomArgs),
    /// Decimate a ground-truth image, zoom it back plainly and with EDIZ, and measure both.
    Compare(CompareArgs),
    /// Run the built-in invariant suite.
    Selftest(SelftestArgs),
}

fn parse_factor(s: &str) -> std::result::Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 2 {
        return Err(format!("zoom factor must be at least 2, got {n}"));
    }
    Ok(n)
}

fn parse_gain(s: &str) -> std::result::Result<f64, String> {
    let g: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !g.is_finite() || g < 0.0 {
        return Err(format!("gain must be finite and non-negative, got {s}"));
    }
    Ok(g)
}

fn parse_kernel(s: &str) -> std::result::Result<Kernel, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_fault(s: &str) -> std::result::Result<Fault, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct ZoomArgs {
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    #[arg(long = "out", value_name = "PATH")]
    pub output: PathBuf,
    #[arg(long, value_parser = parse_factor)]
    pub factor: usize,
    /// cubic, lanczos2, lanczos3 or lanczos4
    #[arg(long, value_parser = parse_kernel, default_value = "cubic")]
    pub kernel: Kernel,
    /// Add the zoomed reconstruction error to the plain zoom.
    #[arg(long)]
    pub ediz: bool,
    /// Weight of the estimated error.
    #[arg(long, value_parser = parse_gain, default_value_t = 1.0, requires = "ediz")]
    pub gain: f64,
    /// Accept dimensions that are not multiples of the factor (edge replication).
    #[arg(long, requires = "ediz")]
    pub pad: bool,
    /// Also write the estimated error, mapped to gray around 0.5.
    #[arg(long, value_name = "PATH", requires = "ediz")]
    pub emit_error: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Ground-truth image.
    #[arg(long, value_name = "PATH")]
    pub gt: PathBuf,
    #[arg(long, value_parser = parse_factor)]
    pub factor: usize,
    #[arg(long, value_parser = parse_kernel, default_value = "cubic")]
    pub kernel: Kernel,
    #[arg(long, value_parser = parse_gain, default_value_t = 1.0)]
    pub gain: f64,
    #[arg(long, value_name = "DIR")]
    pub outdir: PathBuf,
    /// Also write report.json.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub pad: bool,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Run with a deliberate defect: kernel-sign-flip, skip-normalization, decimation-offset.
    #[arg(long, value_parser = parse_fault, value_name = "FAULT")]
    pub inject_fault: Option<Fault>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    let result = match cli.command {
        Command::Zoom(args) => cmd_zoom(&args, out),
        Command::Compare(args) => cmd_compare(&args, out),
        Command::Selftest(args) => cmd_selftest(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn cmd_zoom(args: &ZoomArgs, out: &mut dyn Write) -> Result<i32> {
    let img = codec::load(&args.input)?;
    let zoomed = if args.ediz {
        let policy = if args.pad {
            DivisibilityPolicy::PadReplicate
        } else {
            DivisibilityPolicy::Strict
        };
        let cfg = EdizConfig::new(args.factor, args.kernel)?
            .with_gain(args.gain)?
            .with_divisibility(policy);
        let trace = ediz_zoom(&img, &cfg)?;
        if let Some(path) = &args.emit_error {
            let scale = codec::save_visualized(&trace.estimated_error, path)?;
            writeln!(out, "error map {} (white = +{scale:.6}, black = -{scale:.6})", path.display())?;
        }
        trace.i_out
    } else {
        upsample(&img, args.factor, args.kernel, BoundaryPolicy::Replicate)?
    };
    codec::save_auto(&zoomed, &args.output)?;
    writeln!(
        out,
        "{} {}x{} -> {}x{} ({}, factor {}{})",
        args.output.display(),
        img.width(),
        img.height(),
        zoomed.width(),
        zoomed.height(),
        args.kernel,
        args.factor,
        if args.ediz { ", ediz" } else { "" }
    )?;
    Ok(0)
}

pub fn cmd_compare(args: &CompareArgs, out: &mut dyn Write) -> Result<i32> {
    let gt = codec::load(&args.gt)?;
    let cfg = CompareConfig {
        factor: args.factor,
        kernel: args.kernel,
        gain: args.gain,
        pad: args.pad,
    };
    let cmp = compare(&gt, &cfg)?;
    let mut report = cmp.write_artifacts(&args.outdir)?;
    let text_path = args.outdir.join("report.txt");
    report.artifacts.push(text_path.clone());
    if args.json {
        report.artifacts.push(args.outdir.join("report.json"));
        std::fs::write(args.outdir.join("report.json"), report.to_json()?)?;
    }
    let text = report.to_string();
    std::fs::write(&text_path, &text)?;
    write!(out, "{text}")?;
    Ok(0)
}

pub fn cmd_selftest(args: &SelftestArgs, out: &mut dyn Write) -> Result<i32> {
    let report = run_selftest(args.seed, args.inject_fault);
    writeln!(out, "{report}")?;
    Ok(if report.all_passed() { 0 } else { 1 })
}
