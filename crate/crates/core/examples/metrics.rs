//! Measures an image against a degraded copy of itself.
//!
//! ```bash
//! cargo run -p ediz --example metrics -- data/corpus/astronaut.png
//! ```

use std::path::PathBuf;

use ediz::metrics::{hf_energy, mse, psnr, ssim, QualityReport};
use ediz::{codec, subsample, upsample, BoundaryPolicy, Kernel};

fn main() -> ediz::Result<()> {
    let input = std::env::args().nth(1).map_or_else(
        || PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/corpus/astronaut.png"),
        PathBuf::from,
    );
    let reference = codec::load(&input)?;
    println!("reference laplacian energy: {:.6}", hf_energy(&reference)?);

    for k in [Kernel::catmull_rom(), Kernel::lanczos3()] {
        let small = subsample(&reference, 2)?;
        let back = codec::quantized(&upsample(&small, 2, k, BoundaryPolicy::Replicate)?);
        println!(
            "{k}: mse {:.6}  psnr {:.3} dB  ssim {:.4}",
            mse(&back, &reference)?,
            psnr(&back, &reference)?,
            ssim(&back, &reference)?
        );
        let report = QualityReport::measure(&back, &reference)?;
        for (c, q) in report.channels.iter().enumerate() {
            println!("  channel {c}: psnr {:.3} dB  ssim {:.4}", q.psnr, q.ssim);
        }
    }
    Ok(())
}
