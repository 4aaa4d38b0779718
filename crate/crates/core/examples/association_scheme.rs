//! Checks the Johnson scheme axioms on one sector and prints its intersection numbers.
//!
//! cargo run --example association_scheme -- 6 3

use permdistill::oracle::{joint_adjacency_spectrum, verify_cas_axioms, WeightBasis};
use permdistill::spectra::{alpha_young, multiplicity};
use permdistill::SectorIndex;

fn main() -> permdistill::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).map(|s| s.parse().expect("integer")).collect();
    let (n, l) = (args.first().copied().unwrap_or(6), args.get(1).copied().unwrap_or(3));
    let basis = WeightBasis::new(n, l)?;
    let p = verify_cas_axioms(&basis)?;
    println!("n={n} l={l}: {} relations on {} strings, all axioms hold", p.classes, basis.len());
    for k in 0..p.classes {
        println!("p_ij^{k}:");
        for i in 0..p.classes {
            let row: Vec<String> = (0..p.classes).map(|j| format!("{:4}", p.get(i, j, k))).collect();
            println!("  {}", row.join(""));
        }
    }

    // eigenvalues of every A_k on the common eigenspaces, against the closed form
    let sector = SectorIndex::new(n, l)?;
    for space in joint_adjacency_spectrum(&basis)? {
        let rounded: Vec<i64> = space.alphas.iter().map(|a| a.round() as i64).collect();
        let j = (0..=sector.max_j()).find(|&j| {
            (0..=sector.max_j()).all(|k| alpha_young(sector, k, j).ok() == Some(rounded[k as usize] as i128))
        });
        match j {
            Some(j) => println!("dim {:3} = f_{j} = {}: alphas {rounded:?}", space.dim, multiplicity(n, j)?),
            None => println!("dim {:3}: alphas {rounded:?} match no closed-form column", space.dim),
        }
    }
    Ok(())
}
