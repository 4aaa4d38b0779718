//! Distillation rates of the qubit protocol and the three qudit variants.
//!
//! cargo run --example rates

use permdistill::rates::{evaluate, Protocol, ProtocolParams};

fn main() -> permdistill::Result<()> {
    println!("qubit protocol, x=0.8 q=0.2 alpha=0.5");
    for copies in [2, 4, 8, 16] {
        let row = evaluate(Protocol::Qubit, &ProtocolParams::with_copies(0.8, 0.2, 0.5, copies, 2)?)?;
        println!("  N={copies:2}: total {:.6}  partials {:?}", row.total, row.partials);
    }

    println!("qudit protocols, x=0.9 N=8");
    for d in [2, 3, 4, 5] {
        let params = ProtocolParams::with_copies(0.9, 0.0, 0.5, 8, d)?;
        let mut line = format!("  d={d}:");
        for (name, protocol) in [
            ("zero", Protocol::QuditZero),
            ("parity", Protocol::QuditParity),
            ("naive", Protocol::QuditNaive),
        ] {
            match evaluate(protocol, &params) {
                Ok(row) => line += &format!("  {name} {:.6}", row.total),
                Err(_) => line += &format!("  {name} n/a"),
            }
        }
        println!("{line}");
    }
    Ok(())
}
