//! Built-in invariant suite behind `ediz selftest`.
//!
//! Every property runs against a [`Harness`] that routes kernel evaluation,
//! weight-table construction and decimation through the library, optionally
//! with one deliberately injected [`Fault`]. A correct build passes every
//! property; each fault must make at least one property fail.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ediz::{ediz_zoom_with, EdizTrace};
use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::oracle;
use crate::raster::Raster;
use crate::resample::{decimate, upsample_with_tables, BoundaryPolicy, WeightTable, Zoomer};

/// Deliberate defects used to prove the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negates the kernel's outer lobes (`|x| > 1`).
    KernelSignFlip,
    /// Skips per-phase weight normalization.
    SkipNormalization,
    /// Decimates at offset 1 instead of 0.
    DecimationOffset,
}

impl Fault {
    pub const ALL: [Fault; 3] = [
        Fault::KernelSignFlip,
        Fault::SkipNormalization,
        Fault::DecimationOffset,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::KernelSignFlip => "kernel-sign-flip",
            Fault::SkipNormalization => "skip-normalization",
            Fault::DecimationOffset => "decimation-offset",
        }
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown fault '{s}'")))
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Library entry points with an optional fault spliced in.
#[derive(Debug, Clone, Copy, Default)]
pub struct Harness {
    fault: Option<Fault>,
}

impl Harness {
    pub fn new(fault: Option<Fault>) -> Self {
        Self { fault }
    }

    pub fn eval(&self, k: Kernel, x: f64) -> f64 {
        let v = k.eval(x);
        if self.fault == Some(Fault::KernelSignFlip) && x.abs() > 1.0 {
            -v
        } else {
            v
        }
    }

    pub fn table(&self, len: usize, factor: usize, k: Kernel) -> Result<WeightTable> {
        let normalize = self.fault != Some(Fault::SkipNormalization);
        WeightTable::build_with(len, factor, k, |x| self.eval(k, x), normalize)
    }

    pub fn upsample(&self, img: &Raster, factor: usize, k: Kernel) -> Result<Raster> {
        let h = self.table(img.width(), factor, k)?;
        let v = self.table(img.height(), factor, k)?;
        upsample_with_tables(img, &h, &v, BoundaryPolicy::Replicate)
    }

    pub fn subsample(&self, img: &Raster, factor: usize) -> Result<Raster> {
        let offset = usize::from(self.fault == Some(Fault::DecimationOffset));
        decimate(img, factor, offset)
    }

    pub fn ediz(&self, img: &Raster, factor: usize, k: Kernel, gain: f64) -> Result<EdizTrace> {
        let zoom = HarnessZoom {
            harness: *self,
            factor,
            kernel: k,
        };
        ediz_zoom_with(img, &zoom, &zoom, gain)
    }
}

struct HarnessZoom {
    harness: Harness,
    factor: usize,
    kernel: Kernel,
}

impl Zoomer for HarnessZoom {
    fn factor(&self) -> usize {
        self.factor
    }

    fn zoom_in(&self, img: &Raster) -> Result<Raster> {
        self.harness.upsample(img, self.factor, self.kernel)
    }

    fn zoom_out(&self, img: &Raster) -> Result<Raster> {
        self.harness.subsample(img, self.factor)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for PropertyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {:<28} {}", self.name, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub seed: u64,
    pub fault: Option<Fault>,
    pub results: Vec<PropertyResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "selftest seed={}", self.seed)?;
        if let Some(fault) = self.fault {
            write!(f, " injected-fault={fault}")?;
        }
        writeln!(f)?;
        for r in &self.results {
            writeln!(f, "{r}")?;
        }
        let passed = self.results.iter().filter(|r| r.passed).count();
        write!(f, "{passed}/{} properties passed", self.results.len())
    }
}

fn kernels_under_test() -> [Kernel; 5] {
    [
        Kernel::catmull_rom(),
        Kernel::Cubic { a: -0.75 },
        Kernel::Lanczos { lobes: 2 },
        Kernel::lanczos3(),
        Kernel::Lanczos { lobes: 4 },
    ]
}

const RESAMPLE_KERNELS: [Kernel; 2] = [Kernel::Cubic { a: -0.5 }, Kernel::Lanczos { lobes: 3 }];

fn random_raster(rng: &mut ChaCha8Rng, w: usize, h: usize, ch: usize) -> Raster {
    Raster::from_fn(w, h, ch, false, |_, _, _| rng.gen::<f64>()).expect("nonzero dimensions")
}

/// Tracks the largest violation seen while checking a property.
struct Worst {
    tol: f64,
    max: f64,
    at: String,
}

impl Worst {
    fn new(tol: f64) -> Self {
        Self {
            tol,
            max: 0.0,
            at: String::new(),
        }
    }

    fn check(&mut self, delta: f64, at: impl FnOnce() -> String) {
        let d = if delta.is_nan() { f64::INFINITY } else { delta.abs() };
        if d > self.max {
            self.max = d;
            self.at = at();
        }
    }

    fn finish(self, name: &'static str) -> PropertyResult {
        let passed = self.max <= self.tol;
        let detail = if passed {
            format!("max |Δ| = {:.3e} (tol {:.0e})", self.max, self.tol)
        } else {
            format!("max |Δ| = {:.3e} > tol {:.0e} at {}", self.max, self.tol, self.at)
        };
        PropertyResult { name, passed, detail }
    }
}

fn errored(name: &'static str, e: Error) -> PropertyResult {
    PropertyResult {
        name,
        passed: false,
        detail: format!("error: {e}"),
    }
}

type Property = fn(&Harness, &mut ChaCha8Rng) -> Result<Worst>;

const PROPERTIES: &[(&str, Property)] = &[
    ("kernel_symmetry", kernel_symmetry),
    ("kernel_support", kernel_support),
    ("kernel_interpolating", kernel_interpolating),
    ("kernel_closed_form", kernel_closed_form),
    ("cubic_partition_of_unity", cubic_partition_of_unity),
    ("weight_table_normalization", weight_table_normalization),
    ("weight_table_phase0", weight_table_phase0),
    ("dc_preservation", dc_preservation),
    ("separability_oracle", separability_oracle),
    ("interpolating_sites", interpolating_sites),
    ("ediz_constant_fixed_point", ediz_constant),
    ("ediz_interior_ramp", ediz_ramp),
    ("ediz_linearity", ediz_linearity),
    ("ediz_zero_gain", ediz_zero_gain),
];

/// Runs every property. Each property draws from its own stream derived
/// from `seed`, so results do not depend on property order.
pub fn run_selftest(seed: u64, fault: Option<Fault>) -> SelftestReport {
    let harness = Harness::new(fault);
    let results = PROPERTIES
        .iter()
        .enumerate()
        .map(|(i, &(name, prop))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            match prop(&harness, &mut rng) {
                Ok(worst) => worst.finish(name),
                Err(e) => errored(name, e),
            }
        })
        .collect();
    SelftestReport { seed, fault, results }
}

fn kernel_symmetry(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(0.0);
    for k in kernels_under_test() {
        let s = k.support() + 1.0;
        for _ in 0..1000 {
            let x = rng.gen_range(-s..s);
            worst.check(h.eval(k, x) - h.eval(k, -x), || format!("{k} x={x}"));
        }
    }
    Ok(worst)
}

fn kernel_support(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(0.0);
    for k in kernels_under_test() {
        let s = k.support();
        for x in [s, -s] {
            worst.check(h.eval(k, x), || format!("{k} x={x}"));
        }
        for _ in 0..200 {
            let x = rng.gen_range(s..s + 10.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
            worst.check(h.eval(k, x), || format!("{k} x={x}"));
        }
    }
    Ok(worst)
}

fn kernel_interpolating(h: &Harness, _rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(0.0);
    for k in kernels_under_test() {
        worst.check(h.eval(k, 0.0) - 1.0, || format!("{k} x=0"));
        let s = k.support() as i32;
        for m in (-s..=s).filter(|&m| m != 0) {
            worst.check(h.eval(k, f64::from(m)), || format!("{k} x={m}"));
        }
    }
    Ok(worst)
}

fn kernel_closed_form(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(1e-12);
    for k in kernels_under_test() {
        let s = k.support();
        for _ in 0..1000 {
            let x = rng.gen_range(-s..=s);
            worst.check(h.eval(k, x) - oracle::kernel(k, x), || format!("{k} x={x}"));
        }
    }
    Ok(worst)
}

fn cubic_partition_of_unity(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(1e-9);
    for k in [Kernel::catmull_rom(), Kernel::Cubic { a: -0.75 }] {
        for _ in 0..1000 {
            let x: f64 = rng.gen_range(0.0..1.0);
            let sum: f64 = (-3..=3).map(|m| h.eval(k, x + f64::from(m))).sum();
            worst.check(sum - 1.0, || format!("{k} x={x}"));
        }
    }
    Ok(worst)
}

fn weight_table_normalization(h: &Harness, _rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(1e-12);
    for k in kernels_under_test() {
        for n in 2..=5 {
            let table = h.table(16, n, k)?;
            for (p, taps) in table.phases().enumerate() {
                let sum: f64 = taps.iter().map(|t| t.weight).sum();
                worst.check(sum - 1.0, || format!("{k} n={n} phase={p}"));
            }
        }
    }
    Ok(worst)
}

fn weight_table_phase0(h: &Harness, _rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(0.0);
    for k in kernels_under_test() {
        for n in 2..=5 {
            let taps = h.table(16, n, k)?.phase(0).to_vec();
            let nonzero: Vec<_> = taps.iter().filter(|t| t.weight != 0.0).collect();
            let delta = match nonzero.as_slice() {
                [t] if t.offset == 0 => t.weight - 1.0,
                _ => f64::INFINITY,
            };
            worst.check(delta, || format!("{k} n={n} phase 0 taps {taps:?}"));
        }
    }
    Ok(worst)
}

fn dc_preservation(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(1e-9);
    for k in RESAMPLE_KERNELS {
        for n in [2, 4] {
            let v: f64 = rng.gen();
            let img = Raster::filled(9, 7, 3, v)?;
            let up = h.upsample(&img, n, k)?;
            for &s in up.samples() {
                worst.check(s - v, || format!("{k} n={n} value={v}"));
            }
        }
    }
    Ok(worst)
}

fn separability_oracle(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(1e-6);
    for k in RESAMPLE_KERNELS {
        for n in [2, 4] {
            for trial in 0..5 {
                let img = random_raster(rng, 8, 8, 1);
                let fast = h.upsample(&img, n, k)?;
                let slow = oracle::upsample_direct(&img, n, k);
                for (i, (a, b)) in fast.samples().iter().zip(slow.samples()).enumerate() {
                    worst.check(a - b, || format!("{k} n={n} trial={trial} sample={i}"));
                }
            }
        }
    }
    Ok(worst)
}

fn interpolating_sites(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(1e-6);
    for k in RESAMPLE_KERNELS {
        for n in [2, 4] {
            let img = random_raster(rng, 16, 16, 1);
            let back = h.subsample(&h.upsample(&img, n, k)?, n)?;
            let band = k.support() as usize;
            for y in band..16 - band {
                for x in band..16 - band {
                    worst.check(back.at(x, y, 0) - img.at(x, y, 0), || format!("{k} n={n} ({x},{y})"));
                }
            }
        }
    }
    Ok(worst)
}

fn ediz_constant(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(1e-9);
    for k in RESAMPLE_KERNELS {
        for n in [2, 4] {
            let v: f64 = rng.gen();
            let t = h.ediz(&Raster::filled(16, 16, 1, v)?, n, k, 1.0)?;
            for (a, b) in t.i_out.samples().iter().zip(t.i_in_zoom.samples()) {
                worst.check(a - b, || format!("{k} n={n} i_out vs i_in_zoom"));
                worst.check(a - v, || format!("{k} n={n} i_out vs constant {v}"));
            }
        }
    }
    Ok(worst)
}

fn ediz_ramp(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(1e-6);
    let k = Kernel::catmull_rom();
    let slope: f64 = rng.gen_range(0.005..0.03);
    let offset: f64 = rng.gen_range(0.0..0.1);
    let ramp = Raster::from_fn(32, 32, 1, false, |x, _, _| offset + slope * x as f64)?;
    let t = h.ediz(&ramp, 2, k, 1.0)?;
    for y in 0..32 {
        for x in 4..28 {
            worst.check(t.error.at(x, y, 0), || format!("e({x},{y}) slope={slope}"));
        }
    }
    Ok(worst)
}

fn ediz_linearity(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(1e-9);
    for k in RESAMPLE_KERNELS {
        let img = random_raster(rng, 16, 16, 1);
        let full = h.ediz(&img, 2, k, 1.0)?;
        let half = h.ediz(&img.scaled(0.5), 2, k, 1.0)?;
        for (a, b) in half.i_out.samples().iter().zip(full.i_out.samples()) {
            worst.check(a - 0.5 * b, || format!("{k}"));
        }
    }
    Ok(worst)
}

fn ediz_zero_gain(h: &Harness, rng: &mut ChaCha8Rng) -> Result<Worst> {
    let mut worst = Worst::new(0.0);
    for k in RESAMPLE_KERNELS {
        let img = random_raster(rng, 16, 16, 3);
        let t = h.ediz(&img, 2, k, 0.0)?;
        let plain = h.upsample(&img, 2, k)?;
        for (a, b) in t.i_out.samples().iter().zip(plain.samples()) {
            worst.check(a - b, || format!("{k}"));
        }
    }
    Ok(worst)
}
