//! Closed-form spectrum of one weight sector, with the special-case formulas alongside.
//!
//! cargo run --example spectrum -- 8 3 0.6

use permdistill::spectra::{coherent_info, rho_spectrum, spectral_radius, special_cases};
use permdistill::{MixParam, SectorIndex};

fn main() -> permdistill::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: u32 = args.first().map_or(8, |s| s.parse().expect("n"));
    let l: u32 = args.get(1).map_or(3, |s| s.parse().expect("l"));
    let p: f64 = args.get(2).map_or(0.6, |s| s.parse().expect("p"));

    let sector = SectorIndex::new(n, l)?;
    let mix = MixParam::new(p)?;
    let spectrum = rho_spectrum(sector, mix)?;
    println!("sector n={n} l={l}, p={p}, dimension {}", sector.dim()?);
    for e in &spectrum.entries {
        println!("  j={}  eigenvalue {:.12e}  multiplicity {}", e.j, e.eigenvalue, e.multiplicity);
    }
    println!("trace {:.12e}", spectrum.trace);
    println!("spectral radius {:.12e}", spectral_radius(sector, mix)?);
    if 2 * l <= n {
        println!("eigenvalue on B_l {:.12e}", special_cases::top_irrep(sector, mix)?);
    }
    println!("entropy {:.6} bits, coherent information {:.6} bits", spectrum.normalized_entropy(), coherent_info(sector, mix)?);
    Ok(())
}
