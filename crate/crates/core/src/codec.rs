//! 8-bit image files: binary PNM (P5 gray, P6 RGB) and PNG.
//!
//! Loading maps byte `b` to `b / 255`. Saving clamps to `[0, 1]` and rounds
//! `s · 255` to the nearest byte, so a loaded image saves back bit-exactly.

use std::io::Cursor;
use std::path::Path;

use crate::error::{Error, Result};
use crate::raster::Raster;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageFormat {
    /// Binary PPM (`P6`) for RGB, binary PGM (`P5`) for gray.
    Pnm,
    Png,
}

impl ImageFormat {
    /// Picks the format from the file extension (`ppm`, `pgm`, `pnm`, `png`).
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("ppm" | "pgm" | "pnm") => Ok(ImageFormat::Pnm),
            Some("png") => Ok(ImageFormat::Png),
            _ => Err(Error::Format(path.to_path_buf())),
        }
    }
}

/// Reads an image, detecting the format from its magic bytes.
pub fn load(path: impl AsRef<Path>) -> Result<Raster> {
    let bytes = std::fs::read(path.as_ref())?;
    decode(&bytes)
}

pub fn decode(bytes: &[u8]) -> Result<Raster> {
    if bytes.starts_with(&[0x89, b'P', b'N', b'G']) {
        decode_png(bytes)
    } else if bytes.starts_with(b"P5") || bytes.starts_with(b"P6") {
        decode_pnm(bytes)
    } else {
        Err(codec_err(0, "unrecognized magic bytes (expected P5, P6 or PNG)"))
    }
}

/// Writes an image-valued raster. Signed rasters are refused; use
/// [`save_visualized`] for error fields.
pub fn save(raster: &Raster, path: impl AsRef<Path>, format: ImageFormat) -> Result<()> {
    if raster.is_signed() {
        return Err(Error::Parameter(
            "signed raster must be saved through save_visualized".into(),
        ));
    }
    let bytes = encode(raster, format)?;
    std::fs::write(path.as_ref(), bytes)?;
    Ok(())
}

/// Like [`save`], choosing the format from the extension.
pub fn save_auto(raster: &Raster, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    save(raster, path, ImageFormat::from_path(path)?)
}

/// Maps a signed field to gray around 0.5 (`[−m, m] → [0, 1]`, `m = max|e|`)
/// and writes it. Returns `m`, the value shown as pure white.
pub fn save_visualized(raster: &Raster, path: impl AsRef<Path>) -> Result<f64> {
    let (vis, scale) = visualize_signed(raster);
    save_auto(&vis, path)?;
    Ok(scale)
}

/// The mapping used by [`save_visualized`]. A zero field maps to flat 0.5.
pub fn visualize_signed(raster: &Raster) -> (Raster, f64) {
    let m = raster.max_abs();
    let vis = if m > 0.0 {
        raster.map(|v| 0.5 + v / (2.0 * m))
    } else {
        raster.map(|_| 0.5)
    };
    (vis.with_signed(false), m)
}

#[inline]
pub fn quantize_sample(s: f64) -> u8 {
    (s.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// Interleaved 8-bit samples.
pub fn to_bytes(raster: &Raster) -> Vec<u8> {
    raster.samples().iter().map(|&s| quantize_sample(s)).collect()
}

/// The raster as it would read back after an 8-bit save.
pub fn quantized(raster: &Raster) -> Raster {
    raster.map(|s| f64::from(quantize_sample(s)) / 255.0).with_signed(false)
}

fn from_bytes(width: usize, height: usize, channels: usize, bytes: &[u8]) -> Result<Raster> {
    let samples = bytes.iter().map(|&b| f64::from(b) / 255.0).collect();
    Raster::from_samples(width, height, channels, false, samples)
}

pub fn encode(raster: &Raster, format: ImageFormat) -> Result<Vec<u8>> {
    match format {
        ImageFormat::Pnm => Ok(encode_pnm(raster)),
        ImageFormat::Png => encode_png(raster),
    }
}

/// `P5`/`P6` with the header `P6\n<w> <h>\n255\n`.
pub fn encode_pnm(raster: &Raster) -> Vec<u8> {
    let magic = if raster.channels() == 3 { "P6" } else { "P5" };
    let mut out = format!("{magic}\n{} {}\n255\n", raster.width(), raster.height()).into_bytes();
    out.extend(to_bytes(raster));
    out
}

fn codec_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Codec {
        offset,
        message: message.into(),
    }
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl HeaderCursor<'_> {
    fn skip_whitespace_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&b| b != b'\n') {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(codec_err(start, format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| codec_err(start, format!("{what} out of range")))
    }
}

pub fn decode_pnm(bytes: &[u8]) -> Result<Raster> {
    let channels = match bytes.get(..2) {
        Some(b"P5") => 1,
        Some(b"P6") => 3,
        _ => return Err(codec_err(0, "expected P5 or P6 magic")),
    };
    let mut cur = HeaderCursor { bytes, pos: 2 };
    let width = cur.number("width")?;
    let height = cur.number("height")?;
    cur.skip_whitespace_and_comments();
    let maxval_at = cur.pos;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(codec_err(2, format!("zero dimension {width}x{height}")));
    }
    if maxval != 255 {
        return Err(codec_err(
            maxval_at,
            format!("unsupported maxval {maxval}, only 8-bit (255) is supported"),
        ));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => return Err(codec_err(cur.pos, "expected whitespace after maxval")),
    }
    let need = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| codec_err(2, "dimensions overflow"))?;
    let payload = &bytes[cur.pos..];
    if payload.len() < need {
        return Err(codec_err(
            bytes.len(),
            format!("truncated payload: {} of {need} bytes", payload.len()),
        ));
    }
    from_bytes(width, height, channels, &payload[..need])
}

fn decode_png(bytes: &[u8]) -> Result<Raster> {
    let png_err = |e: png::DecodingError| codec_err(0, format!("png: {e}"));
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::EXPAND);
    let mut reader = decoder.read_info().map_err(png_err)?;
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| codec_err(0, "png: image too large"))?;
    let mut buf = vec![0; size];
    let info = reader.next_frame(&mut buf).map_err(png_err)?;
    if info.bit_depth != png::BitDepth::Eight {
        return Err(codec_err(
            0,
            format!("unsupported png bit depth {:?}, only 8-bit is supported", info.bit_depth),
        ));
    }
    let channels = match info.color_type {
        png::ColorType::Grayscale => 1,
        png::ColorType::Rgb => 3,
        other => return Err(codec_err(0, format!("unsupported png color type {other:?}"))),
    };
    let (w, h) = (info.width as usize, info.height as usize);
    let row = w * channels;
    // drop any per-line padding
    let mut data = Vec::with_capacity(row * h);
    for line in buf.chunks(info.line_size).take(h) {
        data.extend_from_slice(&line[..row]);
    }
    from_bytes(w, h, channels, &data)
}

fn encode_png(raster: &Raster) -> Result<Vec<u8>> {
    let enc_err = |e: png::EncodingError| codec_err(0, format!("png: {e}"));
    let mut out = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut out, raster.width() as u32, raster.height() as u32);
        encoder.set_color(if raster.channels() == 3 {
            png::ColorType::Rgb
        } else {
            png::ColorType::Grayscale
        });
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder.write_header().map_err(enc_err)?;
        writer.write_image_data(&to_bytes(raster)).map_err(enc_err)?;
        writer.finish().map_err(enc_err)?;
    }
    Ok(out)
}
