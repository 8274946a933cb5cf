//! Writes the reconstruction error and its enlarged estimate as images.
//!
//! Signed rasters are mapped to gray around 0.5, so mid-gray means no
//! error, white the largest positive error and black the largest negative.
//!
//! ```bash
//! cargo run -p ediz --example error_map -- data/corpus/camera.png /tmp/ediz_maps
//! ```

use std::path::PathBuf;

use ediz::{codec, ediz_zoom, EdizConfig, Kernel};

fn main() -> ediz::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let input = args.first().map_or_else(
        || PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/corpus/camera.png"),
        PathBuf::from,
    );
    let outdir = args
        .get(1)
        .map_or_else(|| std::env::temp_dir().join("ediz_maps"), PathBuf::from);
    std::fs::create_dir_all(&outdir)?;

    let img = codec::load(&input)?;
    let t = ediz_zoom(&img, &EdizConfig::new(2, Kernel::lanczos3())?)?;
    for (name, r) in [("error.png", &t.error), ("estimated_error.png", &t.estimated_error)] {
        let path = outdir.join(name);
        let scale = codec::save_visualized(r, &path)?;
        println!("{}: white = +{scale:.4}, black = -{scale:.4}", path.display());
    }
    Ok(())
}
