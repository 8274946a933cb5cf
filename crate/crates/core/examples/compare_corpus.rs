//! Plain zoom against error-estimation zoom on the bundled corpus.
//!
//! Each image is decimated, zoomed back both ways and measured against the
//! original. PSNR and SSIM usually drop slightly with the error estimate,
//! while the Laplacian energy (sharpness) rises.
//!
//! ```bash
//! cargo run -p ediz --release --example compare_corpus
//! ```

use std::path::PathBuf;

use ediz::codec;
use ediz::compare::{compare, CompareConfig};
use ediz::Kernel;

fn main() -> ediz::Result<()> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/corpus");
    let mut names: Vec<_> = std::fs::read_dir(&dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "png"))
        .collect();
    names.sort();

    println!(
        "{:<14} {:<14} {:>3} {:>9} {:>9} {:>8} {:>8} {:>9} {:>9}",
        "image", "kernel", "n", "psnr", "psnr'", "ssim", "ssim'", "hf", "hf'"
    );
    for path in &names {
        let gt = codec::load(path)?;
        for (kernel, factor) in [(Kernel::catmull_rom(), 2), (Kernel::lanczos3(), 4)] {
            let c = compare(&gt, &CompareConfig::new(factor, kernel))?;
            let (p, e) = (c.plain_quality.luma, c.ediz_quality.luma);
            println!(
                "{:<14} {:<14} {:>3} {:>9.3} {:>9.3} {:>8.4} {:>8.4} {:>9.5} {:>9.5}",
                path.file_name().unwrap().to_string_lossy(),
                kernel.to_string(),
                factor,
                p.psnr,
                e.psnr,
                p.ssim,
                e.ssim,
                p.hf_energy,
                e.hf_energy
            );
        }
    }
    println!("primed columns are the error-estimation zoom");
    Ok(())
}
