//! Writes a small Gauss8 series to disk and reads it back.

use tveg::field::{load_series, save_series, Gauss8};

fn main() -> tveg::Result<()> {
    let g8 = Gauss8::new([24; 3], 10);
    let series = g8.generate()?;
    let dir = std::env::temp_dir().join("tveg-example-generate");
    let manifest = save_series(&series, &dir)?;
    let back = load_series(&manifest)?;
    let (lo, hi) = back.range();
    println!("{} steps -> {}", back.len(), manifest.display());
    println!("range [{lo:.4}, {hi:.4}], radius at t=1: {:.3}", g8.radius(1));
    Ok(())
}
