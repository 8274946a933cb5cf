#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use ediz::Raster;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_raster(rng: &mut ChaCha8Rng, w: usize, h: usize, ch: usize) -> Raster {
    Raster::from_fn(w, h, ch, false, |_, _, _| rng.gen::<f64>()).unwrap()
}

/// Random raster already sitting on the 8-bit grid.
pub fn random_bytes_raster(rng: &mut ChaCha8Rng, w: usize, h: usize, ch: usize) -> Raster {
    Raster::from_fn(w, h, ch, false, |_, _, _| f64::from(rng.gen::<u8>()) / 255.0).unwrap()
}

pub fn max_abs_diff(a: &Raster, b: &Raster) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join("corpus")
}

pub fn corpus() -> Vec<PathBuf> {
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "png"))
        .collect();
    files.sort();
    files
}

pub fn ediz_bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ediz"))
        .args(args)
        .output()
        .expect("spawn ediz binary")
}
