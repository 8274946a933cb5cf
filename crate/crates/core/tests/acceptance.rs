//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion does. Run with
//! `cargo test -p ediz --test acceptance -- --nocapture` to see the lines.

mod common;

use std::fs;
use std::time::{Duration, Instant};

use common::{corpus, ediz_bin, max_abs_diff, random_bytes_raster, random_raster, rng};
use ediz::codec;
use ediz::compare::CompareReport;
use ediz::resample::BoundaryPolicy;
use ediz::{build_weights, ediz_zoom, oracle, subsample, upsample, EdizConfig, Kernel, Raster};
use rand::Rng;

const CUBIC: Kernel = Kernel::Cubic { a: -0.5 };
const LANCZOS3: Kernel = Kernel::Lanczos { lobes: 3 };

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!("{} [{:.2?}]", o.detail, elapsed);
    if let Some(limit) = limit {
        if elapsed > limit {
            o.ok = false;
            o.detail = format!("{} exceeds {:?}", o.detail, limit);
        }
    }
    o
}

/// 1. Closed forms at 1000 random offsets per kernel, |Δ| ≤ 1e-12.
fn kernel_closed_forms() -> Outcome {
    let mut r = rng(101);
    let mut worst: f64 = 0.0;
    for k in [CUBIC, LANCZOS3] {
        let s = k.support();
        for _ in 0..1000 {
            let x = r.gen_range(-s..=s);
            worst = worst.max((k.eval(x) - oracle::kernel(k, x)).abs());
        }
    }
    outcome(worst <= 1e-12, format!("max |Δ| = {worst:.2e} (tol 1e-12)"))
}

/// 2. Cubic partition of unity ±1e-9; Lanczos phases sum to 1 ±1e-12.
fn partition_of_unity() -> Outcome {
    let mut r = rng(102);
    let mut pou: f64 = 0.0;
    for _ in 0..1000 {
        let x: f64 = r.gen_range(0.0..1.0);
        let sum: f64 = (-3..=3).map(|m| CUBIC.eval(x + f64::from(m))).sum();
        pou = pou.max((sum - 1.0).abs());
    }
    let mut phases: f64 = 0.0;
    for n in 2..=8 {
        let t = build_weights(64, n, LANCZOS3).unwrap();
        for taps in t.phases() {
            let s: f64 = taps.iter().map(|t| t.weight).sum();
            phases = phases.max((s - 1.0).abs());
        }
    }
    outcome(
        pou <= 1e-9 && phases <= 1e-12,
        format!("cubic Σ err {pou:.2e} (tol 1e-9), lanczos3 phase err {phases:.2e} (tol 1e-12)"),
    )
}

/// 3. Two-pass upsample vs direct 2-D oracle, 20 random 8×8 rasters.
fn separability() -> Outcome {
    let mut r = rng(103);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let img = random_raster(&mut r, 8, 8, 1);
        for k in [CUBIC, LANCZOS3] {
            for n in [2, 4] {
                let fast = upsample(&img, n, k, BoundaryPolicy::Replicate).unwrap();
                worst = worst.max(max_abs_diff(&fast, &oracle::upsample_direct(&img, n, k)));
            }
        }
    }
    outcome(worst <= 1e-6, format!("max |Δ| = {worst:.2e} (tol 1e-6)"))
}

/// 4. subsample(upsample(I)) == I away from a support-wide border band.
fn interpolating_sites() -> Outcome {
    let mut r = rng(104);
    let mut worst: f64 = 0.0;
    for k in [CUBIC, LANCZOS3] {
        for n in [2, 4] {
            let img = random_raster(&mut r, 16, 16, 1);
            let back = subsample(&upsample(&img, n, k, BoundaryPolicy::Replicate).unwrap(), n).unwrap();
            let band = k.support() as usize;
            for y in band..16 - band {
                for x in band..16 - band {
                    worst = worst.max((back.at(x, y, 0) - img.at(x, y, 0)).abs());
                }
            }
        }
    }
    outcome(worst <= 1e-6, format!("max |Δ| = {worst:.2e} (tol 1e-6)"))
}

/// 5. Structural identities of the pipeline.
fn structural_identities() -> Outcome {
    // (a) constant image
    let mut a: f64 = 0.0;
    for (n, k) in [(2, CUBIC), (4, LANCZOS3)] {
        let img = Raster::filled(16, 16, 3, 0.37).unwrap();
        let t = ediz_zoom(&img, &EdizConfig::new(n, k).unwrap()).unwrap();
        let plain = upsample(&img, n, k, BoundaryPolicy::Replicate).unwrap();
        a = a.max(max_abs_diff(&t.i_out, &plain));
    }
    // (b) zero gain, bit-identical
    let mut r = rng(105);
    let img = random_raster(&mut r, 16, 16, 3);
    let mut b = true;
    for (n, k) in [(2, CUBIC), (4, LANCZOS3)] {
        let cfg = EdizConfig::new(n, k).unwrap().with_gain(0.0).unwrap();
        let t = ediz_zoom(&img, &cfg).unwrap();
        let plain = upsample(&img, n, k, BoundaryPolicy::Replicate).unwrap();
        b &= t.i_out.samples().iter().zip(plain.samples()).all(|(x, y)| x.to_bits() == y.to_bits());
    }
    // (c) horizontal affine ramp, cubic, n = 2
    let ramp = Raster::from_fn(32, 32, 1, false, |x, _, _| 0.05 + 0.028 * x as f64).unwrap();
    let t = ediz_zoom(&ramp, &EdizConfig::new(2, CUBIC).unwrap()).unwrap();
    let mut c: f64 = 0.0;
    for y in 0..32 {
        for x in 4..28 {
            c = c.max(t.error.at(x, y, 0).abs());
        }
    }
    outcome(
        a <= 1e-9 && b && c <= 1e-6,
        format!("(a) {a:.2e} (tol 1e-9), (b) bit-identical={b}, (c) ramp error {c:.2e} (tol 1e-6)"),
    )
}

/// 6. ediz(0.5·I) == 0.5·ediz(I).
fn linearity() -> Outcome {
    let mut r = rng(106);
    let mut worst: f64 = 0.0;
    for i in 0..5 {
        let img = random_raster(&mut r, 32, 32, 1);
        let (n, k) = if i % 2 == 0 { (2, CUBIC) } else { (4, LANCZOS3) };
        let cfg = EdizConfig::new(n, k).unwrap();
        let full = ediz_zoom(&img, &cfg).unwrap().i_out;
        let half = ediz_zoom(&img.scaled(0.5), &cfg).unwrap().i_out;
        worst = worst.max(max_abs_diff(&half, &full.scaled(0.5)));
    }
    outcome(worst <= 1e-9, format!("max |Δ| = {worst:.2e} (tol 1e-9)"))
}

/// 7. `compare` over the bundled 512×512 corpus: EDIZ must carry more
///    Laplacian energy than the plain zoom on every image and configuration.
fn corpus_detail_energy() -> Outcome {
    let files = corpus();
    if files.len() < 3 {
        return outcome(false, format!("only {} corpus images found", files.len()));
    }
    let dir = tempfile::tempdir().unwrap();
    let mut ok = true;
    let mut lines = Vec::new();
    for file in &files {
        let img = codec::load(file).unwrap();
        if (img.width(), img.height()) != (512, 512) {
            ok = false;
        }
        for (kernel, factor) in [("cubic", "2"), ("lanczos3", "4")] {
            let stem = file.file_stem().unwrap().to_string_lossy();
            let outdir = dir.path().join(format!("{stem}_{kernel}_{factor}"));
            let o = ediz_bin(&[
                "compare",
                "--gt",
                &file.to_string_lossy(),
                "--factor",
                factor,
                "--kernel",
                kernel,
                "--outdir",
                &outdir.to_string_lossy(),
                "--json",
            ]);
            if !o.status.success() {
                ok = false;
                lines.push(format!("{stem} {kernel} x{factor}: exit {:?}", o.status.code()));
                continue;
            }
            let report =
                CompareReport::from_json(&fs::read_to_string(outdir.join("report.json")).unwrap()).unwrap();
            let (p, e, d) = (report.plain.luma, report.ediz.luma, report.delta());
            let more = e.hf_energy > p.hf_energy;
            ok &= more;
            lines.push(format!(
                "      {stem:<10} {kernel:<8} x{factor}  hf {:.3e} -> {:.3e} ({:.2}x) {}  | psnr {:.2} -> {:.2} dB (Δ {:+.2})  ssim {:.4} -> {:.4} (Δ {:+.4})",
                p.hf_energy,
                e.hf_energy,
                e.hf_energy / p.hf_energy,
                if more { "ok" } else { "NOT GREATER" },
                p.psnr,
                e.psnr,
                d.psnr,
                p.ssim,
                e.ssim,
                d.ssim
            ));
        }
    }
    outcome(ok, format!("{} images x 2 configs\n{}", files.len(), lines.join("\n")))
}

/// 8. Byte-identical repeated `zoom`; save→load→save stable at 8 bits.
fn determinism_and_codec() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.ppm");
    codec::save_auto(&random_bytes_raster(&mut rng(108), 40, 24, 3), &input).unwrap();
    let mut same = true;
    for ext in ["ppm", "png"] {
        let outs: Vec<_> = (0..2)
            .map(|i| {
                let out = dir.path().join(format!("z{i}.{ext}"));
                let o = ediz_bin(&[
                    "zoom", "--in", &input.to_string_lossy(), "--out", &out.to_string_lossy(),
                    "--factor", "4", "--kernel", "lanczos3", "--ediz",
                ]);
                assert!(o.status.success());
                fs::read(out).unwrap()
            })
            .collect();
        same &= outs[0] == outs[1];
    }
    // an unquantized raster: first save quantizes, later cycles must be exact
    let mut stable = true;
    let raw = random_raster(&mut rng(109), 17, 9, 3).map(|v| v * 1.4 - 0.2);
    for ext in ["ppm", "png"] {
        let (p1, p2) = (dir.path().join(format!("s1.{ext}")), dir.path().join(format!("s2.{ext}")));
        codec::save_auto(&raw, &p1).unwrap();
        let loaded = codec::load(&p1).unwrap();
        codec::save_auto(&loaded, &p2).unwrap();
        stable &= fs::read(&p1).unwrap() == fs::read(&p2).unwrap() && codec::load(&p2).unwrap() == loaded;
    }
    outcome(same && stable, format!("zoom byte-identical={same}, codec bit-stable={stable}"))
}

/// 9. `selftest` exits 0 clean and 1 under each injected fault.
fn selftest_faults() -> Outcome {
    let clean = ediz_bin(&["selftest"]).status.code();
    let mut parts = vec![format!("clean exit {clean:?}")];
    let mut ok = clean == Some(0);
    for fault in ["kernel-sign-flip", "skip-normalization", "decimation-offset"] {
        let o = ediz_bin(&["selftest", "--inject-fault", fault]);
        let failed: Vec<String> = String::from_utf8_lossy(&o.stdout)
            .lines()
            .filter_map(|l| l.strip_prefix("FAIL ").map(|r| r.split_whitespace().next().unwrap_or("").to_string()))
            .collect();
        ok &= o.status.code() == Some(1) && !failed.is_empty();
        parts.push(format!("{fault} exit {:?} ({})", o.status.code(), failed.join(",")));
    }
    outcome(ok, parts.join("; "))
}

#[test]
fn acceptance_criteria() {
    type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("1 kernel closed forms", Some(Duration::from_secs(1)), kernel_closed_forms),
        ("2 partition of unity", Some(Duration::from_secs(1)), partition_of_unity),
        ("3 separability oracle", Some(Duration::from_secs(5)), separability),
        ("4 interpolating sites", None, interpolating_sites),
        ("5 structural identities", Some(Duration::from_secs(1)), structural_identities),
        ("6 pipeline linearity", None, linearity),
        ("7 corpus detail energy", Some(Duration::from_secs(30)), corpus_detail_energy),
        ("8 determinism + codec", Some(Duration::from_secs(5)), determinism_and_codec),
        ("9 selftest faults", None, selftest_faults),
    ];
    let mut failed = Vec::new();
    for (name, limit, run) in criteria {
        let o = timed(limit, run);
        println!("{} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed.push(name);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
