//! Builds the dense sector matrix, diagonalizes it, and compares with the closed form.
//!
//! cargo run --release --example oracle_cross_check -- 10

use std::time::Instant;

use permdistill::oracle::compare_sector;
use permdistill::spectra::alpha_young;
use permdistill::{MixParam, SectorIndex};

fn main() -> permdistill::Result<()> {
    let n: u32 = std::env::args().nth(1).map_or(8, |s| s.parse().expect("n"));
    for l in 0..=n / 2 {
        for p in [0.25, 0.5, 0.75] {
            let start = Instant::now();
            let cmp = compare_sector(SectorIndex::new(n, l)?, MixParam::new(p)?, alpha_young)?;
            let clusters: Vec<String> = cmp.oracle.iter().map(|c| format!("{:.3e}x{}", c.value, c.count)).collect();
            println!(
                "n={n} l={l} p={p}: max |diff| {:.1e}, multiplicities {}, {:?}  [{}]",
                cmp.max_abs_diff,
                if cmp.multiplicities_match { "match" } else { "DIFFER" },
                start.elapsed(),
                clusters.join(" ")
            );
        }
    }
    Ok(())
}
