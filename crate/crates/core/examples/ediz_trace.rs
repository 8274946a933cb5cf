//! Runs the error-estimation zoom and reports every intermediate.
//!
//! The input is shrunk and re-enlarged, the difference to the input is
//! enlarged as well, and that estimate is added to the plain zoom.
//!
//! ```bash
//! cargo run -p ediz --example ediz_trace -- data/corpus/gravel.png 2 0.5
//! ```

use std::path::PathBuf;

use ediz::metrics::hf_energy;
use ediz::{codec, ediz_zoom, EdizConfig, Kernel, Raster};

fn main() -> ediz::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let input = args.first().map_or_else(
        || PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/corpus/gravel.png"),
        PathBuf::from,
    );
    let factor = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let gain = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(1.0);

    let img = codec::load(&input)?;
    let cfg = EdizConfig::new(factor, Kernel::catmull_rom())?.with_gain(gain)?;
    let t = ediz_zoom(&img, &cfg)?;

    let stages: [(&str, &Raster); 6] = [
        ("zoomed out", &t.i_zout),
        ("reconstructed", &t.i_rec),
        ("error", &t.error),
        ("estimated error", &t.estimated_error),
        ("plain zoom", &t.i_in_zoom),
        ("output", &t.i_out),
    ];
    for (name, r) in stages {
        let (lo, hi) = r
            .samples()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &s| {
                (lo.min(s), hi.max(s))
            });
        println!(
            "{name:>16}: {:>4}x{:<4} range [{lo:+.4}, {hi:+.4}]",
            r.width(),
            r.height()
        );
    }
    println!(
        "error energy (mean square): {:.6}",
        t.error.samples().iter().map(|e| e * e).sum::<f64>() / t.error.samples().len() as f64
    );
    println!(
        "laplacian energy, plain: {:.6}",
        hf_energy(&codec::quantized(&t.i_in_zoom))?
    );
    println!(
        "laplacian energy, ediz:  {:.6}",
        hf_energy(&codec::quantized(&t.i_out))?
    );
    Ok(())
}
