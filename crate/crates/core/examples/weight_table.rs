//! Shows the polyphase weight table used for an integer upscale.
//!
//! ```bash
//! cargo run -p ediz --example weight_table -- lanczos3 4
//! ```

use ediz::{build_weights, Kernel};

fn main() -> ediz::Result<()> {
    let mut args = std::env::args().skip(1);
    let kernel: Kernel = args.next().as_deref().unwrap_or("cubic").parse()?;
    let factor: usize = match args.next() {
        Some(s) => s.parse().map_err(|_| ediz::Error::Factor(0))?,
        None => 2,
    };
    let table = build_weights(16, factor, kernel)?;
    println!(
        "{kernel}, factor {factor}: {} output samples per input row of 16",
        table.len_out()
    );
    for p in 0..factor {
        let taps = table.phase(p);
        let sum: f64 = taps.iter().map(|t| t.weight).sum();
        print!("phase {p} ({} taps, sum {sum:.15}):", taps.len());
        for t in taps {
            print!(" [{:+}] {:.6}", t.offset, t.weight);
        }
        println!();
    }
    Ok(())
}
