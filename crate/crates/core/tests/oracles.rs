//! Production paths checked against the slow reference implementations and
//! against values worked out by hand.

mod common;

use common::{max_abs_diff, random_raster, rng};
use ediz::metrics::{hf_energy, mse, ssim};
use ediz::resample::BoundaryPolicy;
use ediz::{build_weights, ediz_zoom, oracle, reconstruction_error, subsample, upsample, EdizConfig, Kernel, Raster};

const KERNELS: [Kernel; 2] = [Kernel::Cubic { a: -0.5 }, Kernel::Lanczos { lobes: 3 }];

#[test]
fn separable_upsample_matches_direct_2d() {
    let mut r = rng(1);
    for k in KERNELS {
        for n in [2, 3, 4] {
            for ch in [1, 3] {
                let img = random_raster(&mut r, 8, 8, ch);
                let fast = upsample(&img, n, k, BoundaryPolicy::Replicate).unwrap();
                let slow = oracle::upsample_direct(&img, n, k);
                let d = max_abs_diff(&fast, &slow);
                assert!(d <= 1e-6, "{k} n={n} ch={ch}: {d}");
            }
        }
    }
}

#[test]
fn non_square_upsample_matches_direct_2d() {
    let mut r = rng(2);
    let img = random_raster(&mut r, 11, 5, 3);
    for k in KERNELS {
        let fast = upsample(&img, 3, k, BoundaryPolicy::Replicate).unwrap();
        assert!(max_abs_diff(&fast, &oracle::upsample_direct(&img, 3, k)) <= 1e-12);
    }
}

#[test]
fn cubic_phase_weights_from_kernel() {
    // W(1.5), W(0.5), W(-0.5), W(-1.5) with a = -0.5, summing to one.
    let t = build_weights(6, 2, Kernel::catmull_rom()).unwrap();
    let w: Vec<f64> = t.phase(1).iter().map(|t| t.weight).collect();
    assert_eq!(w, vec![-0.0625, 0.5625, 0.5625, -0.0625]);
    assert_eq!(w.iter().sum::<f64>(), 1.0);
}

#[test]
fn subsample_inverts_upsample_in_interior() {
    let mut r = rng(3);
    for k in KERNELS {
        for n in [2, 4] {
            let img = random_raster(&mut r, 16, 16, 1);
            let back = subsample(&upsample(&img, n, k, BoundaryPolicy::Replicate).unwrap(), n).unwrap();
            // interpolating sites reproduce exactly, even near the border
            assert!(max_abs_diff(&back, &img) <= 1e-12, "{k} n={n}");
        }
    }
}

#[test]
fn ramp_reproduced_by_cubic() {
    // Cubic convolution with a = -0.5 reproduces affine signals, so the
    // reconstruction error vanishes away from the replicated border.
    let ramp = Raster::from_fn(32, 32, 1, false, |x, _, _| 0.1 + 0.025 * x as f64).unwrap();
    let cfg = EdizConfig::new(2, Kernel::catmull_rom()).unwrap();
    let t = ediz_zoom(&ramp, &cfg).unwrap();
    for y in 0..32 {
        for x in 4..28 {
            assert!(t.error.at(x, y, 0).abs() <= 1e-6, "e({x},{y}) = {}", t.error.at(x, y, 0));
        }
    }
    // so the output equals the plain zoom wherever the error-zoom taps see only zeros
    for y in 0..64 {
        for x in 16..48 {
            let d = t.i_out.at(x, y, 0) - t.i_in_zoom.at(x, y, 0);
            assert!(d.abs() <= 1e-6);
        }
    }
    // and the plain zoom itself is the continued ramp in the interior
    let oracle_up = oracle::upsample_direct(&ramp, 2, Kernel::catmull_rom());
    for x in 8..56 {
        let want = 0.1 + 0.025 * (x as f64 / 2.0);
        assert!((oracle_up.at(x, 10, 0) - want).abs() <= 1e-12);
        assert!((t.i_in_zoom.at(x, 10, 0) - want).abs() <= 1e-12);
    }
}

#[test]
fn reconstruction_error_vanishes_on_retained_sites() {
    let mut r = rng(4);
    for k in KERNELS {
        for n in [2, 4] {
            let img = random_raster(&mut r, 32, 32, 1);
            let e = reconstruction_error(&img, &EdizConfig::new(n, k).unwrap()).unwrap();
            let band = (k.support() as usize) * n;
            for j in 0..32 / n {
                for i in 0..32 / n {
                    let (x, y) = (i * n, j * n);
                    if x >= band && y >= band && x < 32 - band && y < 32 - band {
                        assert!(e.at(x, y, 0).abs() <= 1e-6);
                    }
                }
            }
            assert!(e.samples().iter().any(|v| v.abs() > 1e-3), "noise must leave error");
        }
    }
}

#[test]
fn mse_matches_loop() {
    let mut r = rng(5);
    for ch in [1, 3] {
        let a = random_raster(&mut r, 13, 9, ch);
        let b = random_raster(&mut r, 13, 9, ch);
        assert!((mse(&a, &b).unwrap() - oracle::mse_direct(&a, &b)).abs() <= 1e-12);
    }
}

#[test]
fn ssim_matches_per_window_loop() {
    let mut r = rng(6);
    for _ in 0..5 {
        let a = random_raster(&mut r, 16, 16, 1);
        let b = random_raster(&mut r, 16, 16, 1);
        let d = (ssim(&a, &b).unwrap() - oracle::ssim_direct(&a, &b)).abs();
        assert!(d <= 1e-9, "{d}");
        // correlated pair, away from zero
        let c = a.add(&b.scaled(0.1)).unwrap().scaled(0.9);
        let d = (ssim(&a, &c).unwrap() - oracle::ssim_direct(&a, &c)).abs();
        assert!(d <= 1e-9, "{d}");
    }
    // RGB goes through luma
    let a = random_raster(&mut r, 12, 10, 3);
    let b = random_raster(&mut r, 12, 10, 3);
    let want = oracle::ssim_direct(&a.luma(), &b.luma());
    assert!((ssim(&a, &b).unwrap() - want).abs() <= 1e-9);
}

#[test]
fn checkerboard_laplacian() {
    // every interior response is ±4
    let board = Raster::from_fn(5, 5, 1, false, |x, y, _| ((x + y) % 2) as f64).unwrap();
    let mut direct = 0.0;
    for y in 1..4 {
        for x in 1..4 {
            let lap = board.at(x - 1, y, 0) + board.at(x + 1, y, 0) + board.at(x, y - 1, 0)
                + board.at(x, y + 1, 0)
                - 4.0 * board.at(x, y, 0);
            assert_eq!(lap.abs(), 4.0);
            direct += lap * lap;
        }
    }
    assert_eq!(direct / 9.0, 16.0);
    assert_eq!(hf_energy(&board).unwrap(), 16.0);
}
