//! Plain kernel zoom of an image file.
//!
//! ```bash
//! cargo run -p ediz --example upsample -- data/corpus/camera.png /tmp/camera_x2.png 2 lanczos3
//! ```

use std::path::PathBuf;

use ediz::codec;
use ediz::{upsample, BoundaryPolicy, Kernel};

fn main() -> ediz::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let input = args.first().map_or_else(|| corpus("camera.png"), PathBuf::from);
    let output = args
        .get(1)
        .map_or_else(|| std::env::temp_dir().join("upsample.png"), PathBuf::from);
    let factor = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2);
    let kernel: Kernel = args.get(3).map_or("cubic", String::as_str).parse()?;

    let img = codec::load(&input)?;
    let up = upsample(&img, factor, kernel, BoundaryPolicy::Replicate)?;
    codec::save_auto(&up, &output)?;
    println!(
        "{} {}x{} -> {} {}x{} ({kernel}, x{factor})",
        input.display(),
        img.width(),
        img.height(),
        output.display(),
        up.width(),
        up.height()
    );
    Ok(())
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/corpus").join(name)
}
