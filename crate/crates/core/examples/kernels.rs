//! Prints the cubic and Lanczos kernels on a coarse grid.
//!
//! ```bash
//! cargo run -p ediz --example kernels
//! ```

use ediz::Kernel;

fn main() -> ediz::Result<()> {
    let kernels = [
        Kernel::catmull_rom(),
        Kernel::cubic(-0.75)?,
        Kernel::lanczos(2)?,
        Kernel::lanczos3(),
        Kernel::lanczos(4)?,
    ];
    print!("{:>6}", "x");
    for k in &kernels {
        print!("{:>14}", k.to_string());
    }
    println!();
    for i in 0..=16 {
        let x = f64::from(i) * 0.25;
        print!("{x:>6.2}");
        for k in &kernels {
            print!("{:>14.6}", k.eval(x));
        }
        println!();
    }
    Ok(())
}
