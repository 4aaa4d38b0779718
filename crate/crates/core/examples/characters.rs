//! Permutation characters of the weight sectors and their two-row irreducible parts.
//!
//! cargo run --example characters -- 6

use permdistill::characters::{verify_decomposition, CharacterLabel, CharacterTableSlice};

fn main() -> permdistill::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(6, |s| s.parse().expect("n"));
    let table = CharacterTableSlice::build(n)?;
    let header: Vec<String> = table.classes.iter().map(|c| format!("{:?}", c.cycle_lengths())).collect();
    println!("classes of S_{n}: {}", header.join(" "));
    println!("class sizes: {:?}", table.class_sizes);
    for (label, row) in &table.values {
        println!("{:>5}: {row:?}", label.to_string());
    }
    let h = table.row(CharacterLabel::Perm((n / 2) as u32)).expect("row present");
    println!("<H_{0}, H_{0}> = {1} (times n!)", n / 2, table.weighted_product(h, h));

    let report = verify_decomposition(n)?;
    println!(
        "decomposition {}, orthogonality {}, full-space multiplicities {:?}",
        report.decomposition_holds, report.orthogonality_holds, report.full_space_multiplicities
    );
    Ok(())
}
