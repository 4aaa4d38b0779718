//! Evaluates one figure preset, checks its qualitative properties and prints the CSV.
//!
//! cargo run --release --example figure_sweep -- 5 > fig5.csv

use permdistill::cli::sweep_csv;
use permdistill::figures::preset_properties;

fn main() -> permdistill::Result<()> {
    let figure: u8 = std::env::args().nth(1).map_or(1, |s| s.parse().expect("figure 1..5"));
    let (table, checks) = preset_properties(figure)?;
    for c in &checks {
        let status = if c.passed { "ok" } else { "VIOLATED" };
        eprintln!("{status:>8}  {} (worst {:.1e})", c.name, c.worst);
        if let Some(w) = &c.witness {
            eprintln!("          {w}");
        }
    }
    print!("{}", sweep_csv(&table));
    Ok(())
}
