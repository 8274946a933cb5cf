//! Converts between PNM and PNG and checks that the pixels survive.
//!
//! ```bash
//! cargo run -p ediz --example codec_roundtrip -- data/corpus/astronaut.png
//! ```

use std::path::PathBuf;

use ediz::codec::{self, ImageFormat};

fn main() -> ediz::Result<()> {
    let input = std::env::args().nth(1).map_or_else(
        || PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/corpus/astronaut.png"),
        PathBuf::from,
    );
    let img = codec::load(&input)?;
    let pnm = codec::encode(&img, ImageFormat::Pnm)?;
    let png = codec::encode(&img, ImageFormat::Png)?;
    let from_pnm = codec::decode(&pnm)?;
    let from_png = codec::decode(&png)?;
    println!(
        "{}: {}x{}, {} channel(s)",
        input.display(),
        img.width(),
        img.height(),
        img.channels()
    );
    println!("pnm: {} bytes, png: {} bytes", pnm.len(), png.len());
    println!(
        "pixels identical after both round trips: {}",
        from_pnm == img && from_png == img
    );

    // a malformed header is reported with the byte offset of the problem
    match codec::decode(b"P5\n4 4\n65535\n") {
        Err(e) => println!("bad file: {e}"),
        Ok(_) => unreachable!("16-bit PNM is not supported"),
    }
    Ok(())
}
