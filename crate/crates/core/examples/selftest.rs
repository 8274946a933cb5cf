//! Runs the built-in property checks, cleanly and with each injected fault.
//!
//! ```bash
//! cargo run -p ediz --example selftest
//! ```

use ediz::selftest::{run_selftest, Fault};

fn main() {
    let clean = run_selftest(7, None);
    println!("{clean}");
    for fault in [Fault::KernelSignFlip, Fault::SkipNormalization, Fault::DecimationOffset] {
        let report = run_selftest(7, Some(fault));
        let caught: Vec<_> = report.failed().map(|p| p.name).collect();
        println!("{fault}: caught by {}", caught.join(", "));
    }
}
