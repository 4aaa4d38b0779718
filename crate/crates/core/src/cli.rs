//! Command-line front end: `spectrum`, `rate`, `sweep`, `verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 oracle disagreement.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::figures::{protocol_name, Param, SweepConfig, SweepTable};
use crate::oracle::{compare_sector, CLUSTER_TOLERANCE, SPECTRUM_TOLERANCE};
use crate::rates::{evaluate, Protocol, ProtocolParams};
use crate::spectra::{alpha_young, rho_spectrum, MixParam, SectorIndex};
use crate::verify::{self, Section, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ORACLE_DISAGREES: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "permdistill", version, about = "Sector spectra and distillation rates of permutation-invariant qubit states")]
struct Cli {
    /// Worker threads for sweeps and verification (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write results here instead of stdout (for `verify`: the JSON report).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues and multiplicities of one weight sector.
    Spectrum(SpectrumArgs),
    /// Partial and total rates at one parameter point.
    Rate(RateArgs),
    /// Total rate over a parameter grid.
    Sweep(SweepArgs),
    /// Run the verification batteries.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(short = 'n')]
    n: u32,
    #[arg(short = 'l')]
    l: u32,
    /// Mixing parameter p = 2q - 1.
    #[arg(short = 'p', allow_negative_numbers = true)]
    p: f64,
    /// Also diagonalize the dense sector matrix and compare (n <= 12).
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Zero,
    Parity,
    Naive,
}

#[derive(Debug, Args)]
struct RateArgs {
    #[arg(short = 'x')]
    x: f64,
    #[arg(short = 'q')]
    q: Option<f64>,
    #[arg(short = 'a', long = "alpha")]
    alpha: Option<f64>,
    /// Number of initial pairs, a power of two.
    #[arg(short = 'N')]
    copies: u64,
    /// Local dimension of the qudit protocols.
    #[arg(long)]
    qudit: Option<u32>,
    #[arg(long, value_enum, requires = "qudit")]
    variant: Option<Variant>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Start from the grid of one of the five rate plots.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    figure: Option<u8>,
    /// Flat `key = value` file; applied after the preset, before the flags below.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(short = 'x')]
    x: Option<f64>,
    #[arg(short = 'q')]
    q: Option<f64>,
    #[arg(short = 'a', long = "alpha")]
    alpha: Option<f64>,
    #[arg(short = 'N')]
    copies: Option<u64>,
    /// Swept parameter: x, q, alpha or N.
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    lo: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    hi: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Series parameter, one curve per value of --series-values.
    #[arg(long, requires = "series_values")]
    series: Option<String>,
    #[arg(long, value_delimiter = ',')]
    series_values: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = verify::ORACLE_MAX_N)]
    max_n: u32,
    /// Comma-separated subset of spectra, arbitration, cas, characters, rates.
    #[arg(long, value_delimiter = ',')]
    sections: Option<Vec<String>>,
}

/// Failure of a command, mapped to an exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        usage(e)
    }
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return EXIT_USAGE;
        }
        pool = pool.num_threads(j);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, Failure> {
    match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a, cli),
        Command::Rate(a) => cmd_rate(a, cli),
        Command::Sweep(a) => cmd_sweep(a, cli),
        Command::Verify(a) => cmd_verify(a, cli),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Rounds to 15 significant digits and prints the shortest representation that reads back
/// to the rounded value.
pub fn format_number(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.14e}").parse().expect("formatted float parses");
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    let abs = rounded.abs();
    if abs != 0.0 && !(1e-5..1e16).contains(&abs) {
        format!("{rounded:e}")
    } else {
        format!("{rounded:?}")
    }
}

fn json_number(v: f64) -> serde_json::Value {
    let rounded: f64 = format!("{v:.14e}").parse().unwrap_or(v);
    json!(rounded)
}

fn cmd_spectrum(a: &SpectrumArgs, cli: &Cli) -> Result<i32, Failure> {
    let sector = SectorIndex::new(a.n, a.l)?;
    if a.n > 16 {
        return Err(usage("spectrum supports n <= 16"));
    }
    if a.oracle && a.n > verify::ORACLE_MAX_N {
        return Err(usage(format!("--oracle supports n <= {}", verify::ORACLE_MAX_N)));
    }
    let mix = MixParam::new(a.p)?;
    let spec = rho_spectrum(sector, mix)?;

    let comparison = if a.oracle {
        Some(compare_sector(sector, mix, alpha_young)?)
    } else {
        None
    };

    // oracle clusters labelled by the irreps whose closed-form eigenvalues fall in them
    let oracle_rows: Vec<(String, f64, usize)> = comparison
        .as_ref()
        .map(|cmp| {
            cmp.oracle
                .iter()
                .map(|c| {
                    let labels: Vec<String> = spec
                        .entries
                        .iter()
                        .filter(|e| (e.eigenvalue - c.value).abs() <= CLUSTER_TOLERANCE)
                        .map(|e| e.j.to_string())
                        .collect();
                    (labels.join(";"), c.value, c.count)
                })
                .collect()
        })
        .unwrap_or_default();

    let text = match cli.format {
        Format::Csv => {
            let mut s = format!("# n={} l={} p={}\nj,eigenvalue,multiplicity,source\n", a.n, a.l, format_number(a.p));
            for e in &spec.entries {
                let _ = writeln!(s, "{},{},{},analytic", e.j, format_number(e.eigenvalue), e.multiplicity);
            }
            for (j, v, count) in &oracle_rows {
                let _ = writeln!(s, "{j},{},{count},oracle", format_number(*v));
            }
            if let Some(cmp) = &comparison {
                let _ = writeln!(s, "# max_abs_diff={}", format_number(cmp.max_abs_diff));
            }
            s
        }
        Format::Json => {
            let entries: Vec<_> = spec
                .entries
                .iter()
                .map(|e| json!({"j": e.j, "eigenvalue": json_number(e.eigenvalue), "multiplicity": e.multiplicity}))
                .collect();
            let mut doc = json!({"n": a.n, "l": a.l, "p": a.p, "entries": entries});
            if let Some(cmp) = &comparison {
                let rows: Vec<_> = oracle_rows
                    .iter()
                    .map(|(j, v, c)| json!({"j": j, "eigenvalue": json_number(*v), "multiplicity": c}))
                    .collect();
                doc["oracle"] = json!(rows);
                doc["max_abs_diff"] = json!(cmp.max_abs_diff);
                doc["multiplicities_match"] = json!(cmp.multiplicities_match);
            }
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
    };
    emit(&text, cli.output.as_deref())?;

    match comparison {
        Some(cmp) if !(cmp.max_abs_diff <= SPECTRUM_TOLERANCE && cmp.multiplicities_match) => {
            eprintln!(
                "oracle disagreement: max |Δλ| = {:e}, multiplicities match: {}",
                cmp.max_abs_diff, cmp.multiplicities_match
            );
            Ok(EXIT_ORACLE_DISAGREES)
        }
        _ => Ok(EXIT_OK),
    }
}

fn cmd_rate(a: &RateArgs, cli: &Cli) -> Result<i32, Failure> {
    let (protocol, d) = match (a.qudit, a.variant) {
        (None, _) => (Protocol::Qubit, 2),
        (Some(d), v) => (
            match v.unwrap_or(Variant::Zero) {
                Variant::Zero => Protocol::QuditZero,
                Variant::Parity => Protocol::QuditParity,
                Variant::Naive => Protocol::QuditNaive,
            },
            d,
        ),
    };
    if protocol == Protocol::QuditParity && d % 2 != 0 {
        return Err(usage(format!("--variant parity needs an even --qudit dimension, got {d}")));
    }
    let (q, alpha) = match (protocol, a.q, a.alpha) {
        (Protocol::Qubit, Some(q), Some(alpha)) => (q, alpha),
        (Protocol::Qubit, _, _) => return Err(usage("the qubit protocol needs -q and -a")),
        // the qudit protocols start from pure states; q and alpha do not enter
        (_, q, alpha) => (q.unwrap_or(1.0), alpha.unwrap_or(0.5)),
    };
    let params = ProtocolParams::with_copies(a.x, q, alpha, a.copies, d)?;
    let row = evaluate(protocol, &params)?;

    let text = match cli.format {
        Format::Csv => {
            let state = match protocol {
                Protocol::Qubit => format!(" q={} alpha={}", format_number(q), format_number(alpha)),
                _ => String::new(),
            };
            let mut s = format!(
                "# protocol={} d={d} x={}{state} N={}\ni,n_i,R_i\n",
                protocol_name(protocol),
                format_number(a.x),
                a.copies
            );
            for (idx, r) in row.partials.iter().enumerate() {
                let i = idx as u32 + 1;
                let _ = writeln!(s, "{i},{},{}", params.group_size(i), format_number(*r));
            }
            let _ = writeln!(s, "total,,{}", format_number(row.total));
            s
        }
        Format::Json => {
            let partials: Vec<_> = row
                .partials
                .iter()
                .enumerate()
                .map(|(idx, r)| json!({"i": idx + 1, "n_i": params.group_size(idx as u32 + 1), "R_i": json_number(*r)}))
                .collect();
            let doc = json!({
                "protocol": protocol_name(protocol), "d": d, "x": a.x, "q": q, "alpha": alpha,
                "N": a.copies, "partials": partials, "total": json_number(row.total),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
    };
    emit(&text, cli.output.as_deref())?;
    Ok(EXIT_OK)
}

fn sweep_config(a: &SweepArgs) -> Result<SweepConfig, Failure> {
    let mut cfg = match a.figure {
        Some(f) => SweepConfig::figure(f)?,
        None => SweepConfig::default(),
    };
    if let Some(path) = &a.config {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        cfg = cfg.apply_kv(&text)?;
    }
    if let Some(v) = a.x {
        cfg.x = v;
    }
    if let Some(v) = a.q {
        cfg.q = v;
    }
    if let Some(v) = a.alpha {
        cfg.alpha = v;
    }
    if let Some(v) = a.copies {
        cfg.copies = v;
    }
    if let Some(v) = &a.sweep {
        cfg.swept = v.parse::<Param>()?;
    }
    if let Some(v) = a.lo {
        cfg.lo = v;
    }
    if let Some(v) = a.hi {
        cfg.hi = v;
    }
    if let Some(v) = a.steps {
        cfg.steps = v;
    }
    if let (Some(p), Some(values)) = (&a.series, &a.series_values) {
        cfg.series = Some((p.parse::<Param>()?, values.clone()));
    }
    Ok(cfg)
}

/// CSV for a sweep: the config echoed as `#` comments, then one row per grid point.
pub fn sweep_csv(table: &SweepTable) -> String {
    let cfg = &table.config;
    let mut s = String::new();
    for (k, v) in cfg.to_kv() {
        let _ = writeln!(s, "# {k} = {v}");
    }
    let width = table.points.iter().map(|p| p.row.partials.len()).max().unwrap_or(0);
    let mut header: Vec<String> = Vec::new();
    if let Some((p, _)) = &cfg.series {
        header.push(p.name().into());
    }
    header.push(cfg.swept.name().into());
    header.push("R".into());
    header.extend((1..=width).map(|i| format!("R_{i}")));
    let _ = writeln!(s, "{}", header.join(","));
    for p in &table.points {
        let mut fields: Vec<String> = Vec::new();
        if let Some(v) = p.series {
            fields.push(format_number(v));
        }
        fields.push(format_number(p.swept));
        fields.push(format_number(p.row.total));
        for i in 0..width {
            fields.push(p.row.partials.get(i).map(|r| format_number(*r)).unwrap_or_default());
        }
        let _ = writeln!(s, "{}", fields.join(","));
    }
    s
}

fn cmd_sweep(a: &SweepArgs, cli: &Cli) -> Result<i32, Failure> {
    let cfg = sweep_config(a)?;
    let table = SweepTable::evaluate(&cfg)?;
    let text = match cli.format {
        Format::Csv => sweep_csv(&table),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&table).expect("json")),
    };
    let output = cli.output.as_deref().or(cfg.output.as_deref());
    emit(&text, output)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, cli: &Cli) -> Result<i32, Failure> {
    let sections = match &a.sections {
        Some(list) => list.iter().map(|s| s.trim().parse::<Section>()).collect::<crate::Result<Vec<_>>>()?,
        None => Section::ALL.to_vec(),
    };
    let report = verify::run(&VerifyOptions {
        max_n: a.max_n,
        sections,
        ..Default::default()
    })?;
    match (&cli.output, cli.format) {
        (Some(path), _) => {
            emit(&format!("{}\n", report.to_json()), Some(path))?;
            println!("{report}");
        }
        (None, Format::Json) => println!("{}", report.to_json()),
        (None, Format::Csv) => println!("{report}"),
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::cluster;

    #[test]
    fn number_formatting() {
        assert_eq!(format_number(0.34), "0.34");
        assert_eq!(format_number(0.1 + 0.2), "0.3");
        assert_eq!(format_number(0.0625), "0.0625");
        assert_eq!(format_number(-0.0), "0.0");
        assert_eq!(format_number(1.0), "1.0");
        assert_eq!(format_number(1.0 / 3.0), "0.333333333333333");
        assert_eq!(format_number(2.5e-7), "2.5e-7");
    }

    #[test]
    fn cluster_tolerance_separates_irreps() {
        // the l = 1 eigenvalues at p = 0.6 are well separated
        assert_eq!(cluster(&[0.16, 0.34], CLUSTER_TOLERANCE).len(), 2);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["permdistill", "spectrum", "-n", "3"]), EXIT_USAGE);
        assert_eq!(run(["permdistill", "bogus"]), EXIT_USAGE);
        assert_eq!(run(["permdistill", "rate", "-x", "0.5", "-N", "4", "--variant", "zero"]), EXIT_USAGE);
        assert_eq!(
            run(["permdistill", "rate", "-x", "0.5", "-N", "4", "--qudit", "3", "--variant", "parity"]),
            EXIT_USAGE
        );
        assert_eq!(run(["permdistill", "rate", "-x", "0.5", "-q", "0.1", "-a", "0.5", "-N", "12"]), EXIT_USAGE);
        assert_eq!(run(["permdistill", "spectrum", "-n", "13", "-l", "2", "-p", "0.5", "--oracle"]), EXIT_USAGE);
    }
}
