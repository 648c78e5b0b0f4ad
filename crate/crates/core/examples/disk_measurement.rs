//! Uniform position and momentum disks: Monte Carlo variances against
//! `R^2/4`, the quantum-pair criterion `Rx Rp >= ħ`, and where the verdict
//! flips.
//!
//! Run with `cargo run --release --example disk_measurement`.

use hbar_polar::cloud::disk_example;
use hbar_polar::Result;

fn main() -> Result<()> {
    let report = disk_example(2.0, 1.0, 100_000, 1, 1.0)?;
    print!("{}", report.to_text());

    println!("\nsweep of Rx at Rp = 1:");
    for rx in [0.8, 0.95, 1.05, 1.2] {
        let r = disk_example(rx, 1.0, 20_000, 2, 1.0)?;
        println!("  Rx = {rx:4}: pair = {:5}, flip estimate {:.4}", r.pair.is_pair, r.estimated_flip_product);
    }
    Ok(())
}
