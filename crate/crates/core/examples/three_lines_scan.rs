//! Scan `|f(x + iy)|` across the strip for a random pair, print the envelope
//! `M(x)` next to the interpolated bound, and write the raw samples as CSV.

use clarkson_lab::campaign::interpolate_tuple;
use clarkson_lab::ensembles::{generate, EnsembleKind, EnsembleSpec};
use clarkson_lab::proofs::{default_x_grid, default_y_grid};
use clarkson_lab::Tolerances;

fn main() -> clarkson_lab::Result<()> {
    let p = 1.4;
    let t = generate(&EnsembleSpec::new(EnsembleKind::Ginibre, 2, 3, 11))?;
    let run = interpolate_tuple(&t, p, &default_x_grid(), &default_y_grid(), &Tolerances::DEFAULT)?;
    let bound = |x: f64| run.scan.m2.powf(2.0 * (1.0 - x)) * run.scan.m1.powf(2.0 * x - 1.0);
    println!("{:>8} {:>14} {:>14}", "x", "max_y |f|", "bound");
    for (x, m) in &run.scan.envelope {
        println!("{x:>8.4} {m:>14.6} {:>14.6}", bound(*x));
    }
    println!("{}", run.summary);
    let path = std::env::temp_dir().join("three_lines_scan.csv");
    std::fs::write(&path, &run.csv)?;
    println!("samples written to {}", path.display());
    Ok(())
}
