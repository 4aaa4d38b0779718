//! Runs the verification battery, then again with a deliberately broken closed form.
//!
//! cargo run --release --example verify -- 8

use permdistill::spectra::{alpha_young, SectorIndex};
use permdistill::verify::{run, Section, VerifyOptions};

fn broken(s: SectorIndex, k: u32, j: u32) -> permdistill::Result<i128> {
    let a = alpha_young(s, k, j)?;
    Ok(if k == 1 && j == 1 { -a } else { a })
}

fn main() -> permdistill::Result<()> {
    let max_n: u32 = std::env::args().nth(1).map_or(8, |s| s.parse().expect("max n"));
    let report = run(&VerifyOptions {
        max_n,
        ..Default::default()
    })?;
    println!("{report}\n");

    let mutated = run(&VerifyOptions {
        max_n: max_n.min(6),
        sections: vec![Section::Spectra],
        alpha: broken,
    })?;
    println!("with alpha_1(1) sign-flipped:");
    for c in mutated.failures() {
        println!("  {}: {}", c.name, c.witness.as_deref().unwrap_or(""));
    }
    Ok(())
}
