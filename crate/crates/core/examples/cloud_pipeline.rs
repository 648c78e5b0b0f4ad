//! End-to-end measurement pipeline: generate a cloud, write it in both
//! file formats, read it back and analyze it with each fitting mode.
//!
//! Run with `cargo run --example cloud_pipeline`.

use hbar_polar::cloud::{cloud_analyze, cloud_generate_gaussian, AnalysisOptions, MeasurementCloud};
use hbar_polar::fit::FitMode;
use hbar_polar::Result;

fn main() -> Result<()> {
    let sigma = 0.5f64.sqrt();
    let cloud = cloud_generate_gaussian(2, sigma, sigma, 5_000, 42)?;

    let dir = std::env::temp_dir();
    let (xs, ps, js) = (dir.join("cloud_x.txt"), dir.join("cloud_p.txt"), dir.join("cloud.json"));
    cloud.write_text(&xs, &ps)?;
    cloud.write_json(&js)?;
    // Text files carry no label, so reuse the original one before comparing.
    let mut from_text = MeasurementCloud::read_text(&xs, &ps)?;
    from_text.label = cloud.label.clone();
    let from_json = MeasurementCloud::read_json(&js)?;

    for fit in [FitMode::Ball, FitMode::Mvee, FitMode::IntervalBox] {
        let opts = AnalysisOptions { fit, ..AnalysisOptions::default() };
        let a = cloud_analyze(&from_text, &opts)?;
        let b = cloud_analyze(&from_json, &opts)?;
        println!("{fit:?}: pair = {}, lambda = {:.4}, reports agree = {}", a.pair.is_pair, a.pair.lambda_max, a == b);
    }

    let trimmed = cloud_analyze(&cloud, &AnalysisOptions { trim: 0.05, ..AnalysisOptions::default() })?;
    println!("\nwith 5% trimming:\n{}", trimmed.to_text());
    Ok(())
}
