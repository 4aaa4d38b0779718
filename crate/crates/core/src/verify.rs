//! Verification batteries: every closed form checked against an independent computation.
//!
//! Each check records a name, its scope, a pass/fail status, the largest numeric residual
//! where one applies, and a witness for the first failure. Checks never abort the run; an
//! error raised inside a check is recorded as its failure witness.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{irrep_character, perm_character, verify_decomposition};
use crate::combinatorics::cycle_classes;
use crate::error::{domain, Result};
use crate::figures::preset_properties;
use crate::oracle::{
    alpha_from_counting, arbitrate_sector, compare_sector, count_fixed_strings, joint_adjacency_spectrum,
    verify_cas_axioms, verify_distance_counts, verify_young_counting, WeightBasis,
};
use crate::rates::{
    evaluate, partial_rate_qudit_naive_n, partial_rate_qudit_zero_n, total_rate, total_rate_expanded,
    Protocol, ProtocolParams,
};
use crate::spectra::{
    alpha_hahn_reading, alpha_young, multiplicity, multiplicity_by_difference, rho_spectrum_with,
    special_cases, spectral_radius, AlphaFn, HahnReading, MixParam, SectorIndex,
};

/// Mixing values of the spectrum comparison.
pub const P_GRID: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
/// Largest `n` diagonalized densely.
pub const ORACLE_MAX_N: u32 = 12;
/// Largest `n` of the closed-form special-case checks.
pub const SPECIAL_CASE_MAX_N: u32 = 16;
/// Largest `n` of the exact association-scheme and counting checks.
pub const CAS_MAX_N: u32 = 10;
/// Largest `n` of the numeric joint-eigenspace arbitration.
pub const ARBITRATION_MAX_N: u32 = 10;
/// Largest `n` of the fixed-point character oracle.
pub const FIXED_POINT_MAX_N: u32 = 8;
/// Tolerance of closed-form identities evaluated in floating point.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Spectra,
    Arbitration,
    Cas,
    Characters,
    Rates,
}

impl Section {
    pub const ALL: [Section; 5] = [
        Section::Spectra,
        Section::Arbitration,
        Section::Cas,
        Section::Characters,
        Section::Rates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Section::Spectra => "spectra",
            Section::Arbitration => "arbitration",
            Section::Cas => "cas",
            Section::Characters => "characters",
            Section::Rates => "rates",
        }
    }
}

impl FromStr for Section {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Section::ALL
            .into_iter()
            .find(|sec| sec.name() == s)
            .map_or_else(|| domain(format!("unknown section {s:?}")), Ok)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub section: Section,
    pub name: String,
    pub scope: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub witness: Option<String>,
    /// Extra findings worth reporting even on success.
    pub detail: Option<String>,
}

impl Check {
    fn new(section: Section, name: &str, scope: impl Into<String>) -> Self {
        Self {
            section,
            name: name.into(),
            scope: scope.into(),
            status: Status::Pass,
            residual: None,
            witness: None,
            detail: None,
        }
    }

    /// Records a failure; the first witness is kept.
    fn fail(&mut self, witness: impl Into<String>) {
        self.status = Status::Fail;
        if self.witness.is_none() {
            self.witness = Some(witness.into());
        }
    }

    fn residual(&mut self, r: f64) {
        self.residual = Some(self.residual.map_or(r, |old| old.max(r)));
    }

    fn with_residual(mut self, r: f64, tol: f64, witness: impl FnOnce() -> String) -> Self {
        self.residual(r);
        if !(r <= tol) {
            self.fail(witness());
        }
        self
    }

    fn from_result(mut self, result: Result<()>) -> Self {
        if let Err(e) = result {
            self.fail(e.to_string());
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub max_n: u32,
    pub sections: Vec<Section>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            write!(f, "[{status}] {}: {} ({})", c.section.name(), c.name, c.scope)?;
            if let Some(r) = c.residual {
                write!(f, " residual={r:e}")?;
            }
            writeln!(f)?;
            if let Some(w) = &c.witness {
                writeln!(f, "       witness: {w}")?;
            }
            if let Some(d) = &c.detail {
                writeln!(f, "       {d}")?;
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} checks, {} failed: {}",
            self.checks.len(),
            failed,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// What to run. `alpha` is the closed form under test; substituting a broken one must make
/// the run fail.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_n: u32,
    pub sections: Vec<Section>,
    pub alpha: AlphaFn,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_n: ORACLE_MAX_N,
            sections: Section::ALL.to_vec(),
            alpha: alpha_young,
        }
    }
}

pub fn run(opts: &VerifyOptions) -> Result<VerificationReport> {
    if opts.max_n == 0 {
        return domain("max_n must be at least 1");
    }
    let mut sections = opts.sections.clone();
    sections.sort();
    sections.dedup();
    let mut checks = Vec::new();
    for &sec in &sections {
        checks.extend(match sec {
            Section::Spectra => spectra_checks(opts.max_n, opts.alpha),
            Section::Arbitration => arbitration_checks(opts.max_n, opts.alpha),
            Section::Cas => cas_checks(opts.max_n),
            Section::Characters => character_checks(opts.max_n),
            Section::Rates => rate_checks(),
        });
    }
    let passed = checks.iter().all(Check::passed);
    Ok(VerificationReport {
        max_n: opts.max_n,
        sections,
        checks,
        passed,
    })
}

fn sector(n: u32, l: u32) -> SectorIndex {
    SectorIndex { n, l }
}

fn sectors_up_to(max_n: u32) -> Vec<SectorIndex> {
    (1..=max_n).flat_map(|n| (0..=n).map(move |l| sector(n, l))).collect()
}

/// Closed-form spectra against the dense eigensolver and the counting route.
pub fn spectra_checks(max_n: u32, alpha: AlphaFn) -> Vec<Check> {
    let oracle_n = max_n.min(ORACLE_MAX_N);
    let mut out = Vec::new();

    let mut check = Check::new(
        Section::Spectra,
        "closed-form spectrum matches dense eigensolver",
        format!("n <= {oracle_n}, all l, p in {P_GRID:?}"),
    );
    let tasks: Vec<(SectorIndex, f64)> = sectors_up_to(oracle_n)
        .into_iter()
        .flat_map(|s| P_GRID.into_iter().map(move |p| (s, p)))
        .collect();
    let results: Vec<_> = tasks
        .par_iter()
        .map(|&(s, p)| (s, p, compare_sector(s, MixParam::new(p).expect("grid value in [0, 1]"), alpha)))
        .collect();
    for (s, p, r) in results {
        match r {
            Ok(cmp) => {
                check.residual(cmp.max_abs_diff);
                if !cmp.passed() {
                    check.fail(format!(
                        "n={} l={} p={p}: max |Δλ| = {:e}, multiplicities match: {}",
                        s.n, s.l, cmp.max_abs_diff, cmp.multiplicities_match
                    ));
                }
            }
            Err(e) => check.fail(format!("n={} l={} p={p}: {e}", s.n, s.l)),
        }
    }
    out.push(check);

    let count_n = max_n.min(SPECIAL_CASE_MAX_N);
    let mut check = Check::new(
        Section::Spectra,
        "adjacency eigenvalues match the counting route",
        format!("n <= {count_n}, all l, k, j"),
    );
    'outer: for s in sectors_up_to(count_n) {
        for k in 0..=s.max_j() {
            for j in 0..=s.max_j() {
                match (alpha(s, k, j), alpha_from_counting(s.n, s.l, k, j)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (a, b) => {
                        check.fail(format!("(n={}, l={}, k={k}, j={j}): closed form {a:?}, counting {b:?}", s.n, s.l));
                        break 'outer;
                    }
                }
            }
        }
    }
    out.push(check);

    let mult_n = SPECIAL_CASE_MAX_N.max(max_n);
    let mut check = Check::new(
        Section::Spectra,
        "multiplicity formulas agree and sum to the sector dimension",
        format!("n <= {mult_n}"),
    );
    for n in 1..=mult_n {
        for j in 0..=n / 2 {
            let (a, b) = (multiplicity(n, j), multiplicity_by_difference(n, j));
            if a != b || a.is_err() {
                check.fail(format!("n={n} j={j}: {a:?} vs {b:?}"));
            }
        }
        for l in 0..=n {
            let s = sector(n, l);
            let total: Result<u64> = (0..=s.max_j()).map(|j| multiplicity(n, j)).sum();
            if total != s.dim() {
                check.fail(format!("n={n} l={l}: Σ f_j = {total:?}, dimension {:?}", s.dim()));
            }
        }
    }
    out.push(check);

    out.extend(special_case_checks(alpha));
    out
}

fn special_case_checks(alpha: AlphaFn) -> Vec<Check> {
    let scope = format!("n <= {SPECIAL_CASE_MAX_N}, p in {P_GRID:?}");
    let mut single = Check::new(Section::Spectra, "l = 1 spectrum", scope.clone());
    let mut top = Check::new(Section::Spectra, "j = l eigenvalue and column", scope.clone());
    let mut radius = Check::new(
        Section::Spectra,
        "spectral radius formula, simple top eigenvalue",
        format!("n <= {SPECIAL_CASE_MAX_N}, all l, p in (0, 1]"),
    );
    for n in 1..=SPECIAL_CASE_MAX_N {
        for l in 0..=n {
            let s = sector(n, l);
            for p in P_GRID {
                let mix = MixParam::new(p).expect("grid value in [0, 1]");
                let spec = match rho_spectrum_with(s, mix, alpha) {
                    Ok(spec) => spec,
                    Err(e) => {
                        radius.fail(format!("n={n} l={l}: {e}"));
                        continue;
                    }
                };
                if l == 1 && n >= 2 {
                    for (entry, (value, mult)) in spec.entries.iter().zip(special_cases::single_excitation(n, mix)) {
                        let diff = (entry.eigenvalue - value).abs();
                        single.residual(diff);
                        if diff > IDENTITY_TOLERANCE || entry.multiplicity != mult {
                            single.fail(format!(
                                "n={n} p={p} j={}: general path ({}, {}), special case ({value}, {mult})",
                                entry.j, entry.eigenvalue, entry.multiplicity
                            ));
                        }
                    }
                }
                if l >= 1 && l <= n - l {
                    let want = special_cases::top_irrep(s, mix).unwrap_or(f64::NAN);
                    let got = spec.entries.last().map_or(f64::NAN, |e| e.eigenvalue);
                    top.residual((got - want).abs());
                    if !((got - want).abs() <= IDENTITY_TOLERANCE) {
                        top.fail(format!("n={n} l={l} p={p}: general path {got}, (1 - p²)^l / 2^n = {want}"));
                    }
                    if p == 0.0 {
                        for k in 0..=l {
                            let (a, b) = (alpha(s, k, l), special_cases::top_irrep_alpha(l, k));
                            if a != b {
                                top.fail(format!("n={n} l={l} k={k}: α_k(l) = {a:?}, (-1)^k C(l, k) = {b:?}"));
                            }
                        }
                    }
                }
                if p > 0.0 {
                    let want = spectral_radius(s, mix).unwrap_or(f64::NAN);
                    let max = spec.max_eigenvalue();
                    radius.residual((max - want).abs());
                    let top_entry = &spec.entries[0];
                    let runner_up = spec.entries[1..].iter().map(|e| e.eigenvalue).fold(f64::NEG_INFINITY, f64::max);
                    if !((max - want).abs() <= IDENTITY_TOLERANCE)
                        || top_entry.eigenvalue != max
                        || top_entry.multiplicity != 1
                        || runner_up >= max
                    {
                        radius.fail(format!(
                            "n={n} l={l} p={p}: max eigenvalue {max}, formula {want}, j=0 entry {:?}, runner-up {runner_up}",
                            (top_entry.eigenvalue, top_entry.multiplicity)
                        ));
                    }
                }
            }
        }
    }
    vec![single, top, radius]
}

/// Which printed binomial reading of the dual Hahn form agrees with the Young form and
/// with the numeric joint eigenspaces.
pub fn arbitration_checks(max_n: u32, alpha: AlphaFn) -> Vec<Check> {
    let exact_n = max_n.min(SPECIAL_CASE_MAX_N);
    let numeric_n = max_n.min(ARBITRATION_MAX_N);
    let readings = [HahnReading::DualHahn, HahnReading::SwappedMiddle];

    let first_mismatch = |reading: HahnReading| -> Option<String> {
        for s in sectors_up_to(exact_n) {
            for k in 0..=s.max_j() {
                for j in 0..=s.max_j() {
                    let (a, b) = (alpha(s, k, j), alpha_hahn_reading(s, k, j, reading));
                    if a != b || a.is_err() {
                        return Some(format!("(n={}, l={}, k={k}, j={j}): Young {a:?}, Hahn {b:?}", s.n, s.l));
                    }
                }
            }
        }
        None
    };

    let mut exact = Check::new(
        Section::Arbitration,
        "Young and dual Hahn tables identical",
        format!("n <= {exact_n}, all l, k, j, exact integers"),
    );
    if let Some(w) = first_mismatch(HahnReading::DualHahn) {
        exact.fail(w);
    }

    let mut numeric = Check::new(
        Section::Arbitration,
        "closed-form columns are the numeric joint eigenspaces",
        format!("n <= {numeric_n}, all l"),
    );
    let mut survivors = Vec::new();
    let mut rejected = Vec::new();
    let joints: Vec<_> = sectors_up_to(numeric_n)
        .into_par_iter()
        .map(|s| (s, WeightBasis::new(s.n, s.l).and_then(|b| joint_adjacency_spectrum(&b))))
        .collect();
    let verdict = |f: &dyn Fn(SectorIndex, u32, u32) -> Result<i128>| -> Option<String> {
        for (s, joint) in &joints {
            let joint = match joint {
                Ok(j) => j,
                Err(e) => return Some(format!("n={} l={}: {e}", s.n, s.l)),
            };
            match arbitrate_sector(*s, joint, f) {
                Ok(v) if v.passed => {}
                Ok(v) => return v.witness,
                Err(e) => return Some(e.to_string()),
            }
        }
        None
    };
    if let Some(w) = verdict(&|s, k, j| alpha(s, k, j)) {
        numeric.fail(format!("closed form under test: {w}"));
    }
    for reading in readings {
        let exact_witness = first_mismatch(reading);
        let numeric_witness = verdict(&|s, k, j| alpha_hahn_reading(s, k, j, reading));
        match exact_witness.or(numeric_witness) {
            None => survivors.push(reading.label().to_string()),
            Some(w) => rejected.push(format!("{} (first witness {w})", reading.label())),
        }
    }

    let mut verdict_check = Check::new(
        Section::Arbitration,
        "printed dual Hahn reading arbitrated",
        format!("exact n <= {exact_n}, numeric n <= {numeric_n}"),
    );
    verdict_check.detail = Some(format!(
        "survived: [{}]; rejected: [{}]",
        survivors.join("; "),
        rejected.join("; ")
    ));
    if !survivors.iter().any(|s| s == HahnReading::DualHahn.label()) {
        verdict_check.fail("the dual Hahn reading did not survive");
    }
    vec![exact, numeric, verdict_check]
}

/// Association scheme axioms and the counting lemmas, exhaustively.
pub fn cas_checks(max_n: u32) -> Vec<Check> {
    let cas_n = max_n.min(CAS_MAX_N);
    let scope = format!("n <= {cas_n}, all l");
    let mut axioms = Check::new(Section::Cas, "association scheme axioms (i')-(vi')", scope.clone());
    let mut extracted = 0usize;
    for s in sectors_up_to(cas_n) {
        match WeightBasis::new(s.n, s.l).and_then(|b| verify_cas_axioms(&b)) {
            Ok(numbers) => extracted += numbers.classes.pow(3),
            Err(e) => axioms.fail(format!("n={} l={}: {e}", s.n, s.l)),
        }
    }
    axioms.detail = Some(format!("{extracted} intersection numbers extracted, all nonnegative integers"));

    let distances = Check::new(Section::Cas, "distance counts C(n-l, k) C(l, k)", scope.clone()).from_result(
        sectors_up_to(cas_n)
            .into_iter()
            .try_for_each(|s| WeightBasis::new(s.n, s.l).and_then(|b| verify_distance_counts(&b))),
    );

    let young = Check::new(Section::Cas, "Young counting lemma", format!("{scope}, all j, k, m")).from_result(
        sectors_up_to(cas_n).into_iter().try_for_each(|s| {
            for j in 0..=s.max_j() {
                for k in 0..=s.max_j() {
                    for m in 0..=s.l {
                        verify_young_counting(s.n, s.l, j, k, m)?;
                    }
                }
            }
            Ok(())
        }),
    );
    vec![axioms, distances, young]
}

/// `χ^{B_1}`, `χ^{B_2}`, `χ^{B_3}` as polynomials in the cycle counts.
pub fn small_irrep_closed_form(j: u32, counts: &[u32]) -> i128 {
    let i = |k: usize| counts.get(k - 1).copied().unwrap_or(0) as i128;
    match j {
        1 => i(1) - 1,
        2 => i(1) * (i(1) - 3) / 2 + i(2),
        3 => i(1) * (i(1) - 1) * (i(1) - 5) / 6 + i(2) * (i(1) - 1) + i(3),
        _ => panic!("closed forms exist for j = 1, 2, 3"),
    }
}

pub fn character_checks(max_n: u32) -> Vec<Check> {
    let dec_n = max_n.min(ORACLE_MAX_N) as usize;
    let scope = format!("n <= {dec_n}");
    let mut decomposition = Check::new(Section::Characters, "χ^l = Σ_{j<=l} χ^{B_j} on every class", format!("{scope}, l <= n/2"));
    let mut orthogonality = Check::new(Section::Characters, "two-row irreducible characters orthonormal", scope.clone());
    let mut full_space = Check::new(Section::Characters, "B_j appears n - 2j + 1 times in (C^2)^n", scope);
    for n in 1..=dec_n {
        match verify_decomposition(n) {
            Ok(r) => {
                let witness = r.witnesses.first().cloned().unwrap_or_default();
                if !r.decomposition_holds {
                    decomposition.fail(witness.clone());
                }
                if !r.orthogonality_holds {
                    orthogonality.fail(witness.clone());
                }
                if !r.full_space_holds {
                    full_space.fail(witness);
                }
            }
            Err(e) => decomposition.fail(format!("n={n}: {e}")),
        }
    }

    let fp_n = max_n.min(FIXED_POINT_MAX_N) as usize;
    let mut fixed = Check::new(
        Section::Characters,
        "permutation character equals fixed-point count",
        format!("n <= {fp_n}, all l, all classes"),
    );
    for n in 1..=fp_n {
        for cls in cycle_classes(n) {
            for l in 0..=n as u32 {
                let (a, b) = (perm_character(n, l, &cls), count_fixed_strings(l, &cls));
                if a.as_ref().ok().copied() != b.as_ref().ok().map(|&v| v as i128) {
                    fixed.fail(format!("n={n} l={l} class {:?}: formula {a:?}, fixed points {b:?}", cls.cycle_lengths()));
                }
            }
        }
    }

    let mut printed = Check::new(
        Section::Characters,
        "printed χ^{B_1}, χ^{B_2}, χ^{B_3} match the general formula",
        "S_6 to S_10, all classes",
    );
    for n in 6..=10usize {
        for cls in cycle_classes(n) {
            for j in 1..=3 {
                let general = irrep_character(n, j, &cls);
                let closed = small_irrep_closed_form(j, cls.counts());
                if general != Ok(closed) {
                    printed.fail(format!(
                        "n={n} j={j} class {:?}: general {general:?}, printed {closed}",
                        cls.cycle_lengths()
                    ));
                }
            }
        }
    }
    vec![decomposition, orthogonality, full_space, fixed, printed]
}

/// Seed of the random draws in the telescoping check.
pub const TELESCOPING_SEED: u64 = 0x5eed_2011;
pub const TELESCOPING_DRAWS: usize = 1000;

pub fn rate_checks() -> Vec<Check> {
    let mut out = Vec::new();

    let mut rng = StdRng::seed_from_u64(TELESCOPING_SEED);
    let mut worst = 0.0f64;
    let mut witness = String::new();
    for _ in 0..TELESCOPING_DRAWS {
        let k = rng.gen_range(1..=6u32);
        let x: f64 = rng.gen();
        let params = ProtocolParams::qubit(x, 0.5, 0.5, k).expect("valid draw");
        let len = (k - 1) as usize + rng.gen_range(0..=1usize);
        let partials: Vec<f64> = (0..len).map(|_| rng.gen::<f64>()).collect();
        let (a, b) = (total_rate(&params, &partials), total_rate_expanded(&params, &partials));
        let diff = match (a, b) {
            (Ok(a), Ok(b)) => (a - b).abs(),
            _ => f64::INFINITY,
        };
        if diff > worst {
            worst = diff;
            witness = format!("k={k} x={x} partials {partials:?}");
        }
    }
    out.push(
        Check::new(
            Section::Rates,
            "telescoped and expanded total rate agree",
            format!("{TELESCOPING_DRAWS} random draws, k <= 6, seed {TELESCOPING_SEED:#x}"),
        )
        .with_residual(worst, IDENTITY_TOLERANCE, || witness),
    );

    let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let total = |x: f64, q: f64, alpha: f64, k: u32| -> Result<f64> {
        Ok(evaluate(Protocol::Qubit, &ProtocolParams::qubit(x, q, alpha, k)?)?.total)
    };

    let mut degenerate = Check::new(
        Section::Rates,
        "rate vanishes at x = 0, q = 1/2, alpha in {0, 1}",
        "N = 16, other parameters on a 21-point grid",
    );
    for &u in &grid {
        for &v in &grid {
            for (x, q, a) in [(0.0, u, v), (u, 0.5, v), (u, v, 0.0), (u, v, 1.0)] {
                match total(x, q, a, 4) {
                    Ok(r) => {
                        degenerate.residual(r.abs());
                        if r.abs() > IDENTITY_TOLERANCE {
                            degenerate.fail(format!("x={x} q={q} alpha={a}: R = {r}"));
                        }
                    }
                    Err(e) => degenerate.fail(e.to_string()),
                }
            }
        }
    }
    out.push(degenerate);

    let mut symmetric = Check::new(
        Section::Rates,
        "rate invariant under q -> 1 - q and alpha -> 1 - alpha",
        "N = 16, x in {0.8, 0.6, 0.4, 0.2}, q and alpha on a 21-point grid",
    );
    for x in [0.8, 0.6, 0.4, 0.2] {
        for &q in &grid {
            for &a in &grid {
                match (total(x, q, a, 4), total(x, 1.0 - q, a, 4), total(x, q, 1.0 - a, 4)) {
                    (Ok(r), Ok(rq), Ok(ra)) => {
                        let d = (r - rq).abs().max((r - ra).abs());
                        symmetric.residual(d);
                        if d > IDENTITY_TOLERANCE {
                            symmetric.fail(format!("x={x} q={q} alpha={a}: {r}, {rq}, {ra}"));
                        }
                    }
                    _ => symmetric.fail(format!("x={x} q={q} alpha={a}: evaluation error")),
                }
            }
        }
    }
    out.push(symmetric);

    let mut dominance = Check::new(
        Section::Rates,
        "zero-counting qudit rate dominates the type-class rate",
        "d in {3, 4, 5}, n in {2, 4, 8}; equal binomial sums at d = 2, n <= 16",
    );
    for d in [3, 4, 5] {
        for n in [2, 4, 8] {
            match (partial_rate_qudit_zero_n(n, d), partial_rate_qudit_naive_n(n, d)) {
                (Ok(z), Ok(v)) if z + IDENTITY_TOLERANCE >= v => {}
                (z, v) => dominance.fail(format!("d={d} n={n}: zero {z:?}, naive {v:?}")),
            }
        }
    }
    for n in [1, 2, 4, 8, 16] {
        let binomial_sum: f64 = (0..=n)
            .map(|l| {
                let c = crate::combinatorics::binom(n as i64, l as i64).expect("n <= 16") as f64;
                c / 2f64.powi(n as i32) * c.log2()
            })
            .sum();
        match (partial_rate_qudit_zero_n(n, 2), partial_rate_qudit_naive_n(n, 2)) {
            (Ok(z), Ok(v)) => {
                let d = (z - binomial_sum).abs().max((v - binomial_sum).abs());
                dominance.residual(d);
                if d > IDENTITY_TOLERANCE {
                    dominance.fail(format!("d=2 n={n}: zero {z}, naive {v}, binomial sum {binomial_sum}"));
                }
            }
            (z, v) => dominance.fail(format!("d=2 n={n}: zero {z:?}, naive {v:?}")),
        }
    }
    out.push(dominance);

    let mut growth = Check::new(
        Section::Rates,
        "rate nondecreasing in N",
        "x = 0.9, q = 0.1, alpha = 1/2, N = 2, 4, 8, 16",
    );
    let rates: Vec<Result<f64>> = (1..=4).map(|k| total(0.9, 0.1, 0.5, k)).collect();
    growth.detail = Some(format!("{rates:?}"));
    for w in rates.windows(2) {
        match (&w[0], &w[1]) {
            (Ok(a), Ok(b)) if *b + IDENTITY_TOLERANCE >= *a => {}
            _ => growth.fail(format!("{:?} then {:?}", w[0], w[1])),
        }
    }
    out.push(growth);

    for figure in 1..=5u8 {
        match preset_properties(figure) {
            Ok((table, props)) => {
                let mut sanity = Check::new(
                    Section::Rates,
                    "0 <= R_i, 0 <= R <= 1",
                    format!("figure {figure} grid"),
                );
                let bad = table
                    .points
                    .iter()
                    .filter(|p| p.row.partials.iter().any(|&r| r < -1e-12) || !(-1e-12..=1.0 + 1e-12).contains(&p.row.total))
                    .count();
                if bad > 0 {
                    sanity.fail(format!("{bad} grid points out of bounds"));
                }
                out.push(sanity);
                for prop in props {
                    let mut c = Check::new(Section::Rates, &prop.name, format!("figure {figure} grid"));
                    c.residual = Some(prop.worst.max(0.0));
                    if let Some(w) = prop.witness {
                        c.fail(w);
                    }
                    out.push(c);
                }
            }
            Err(e) => {
                let mut c = Check::new(Section::Rates, "figure properties", format!("figure {figure} grid"));
                c.fail(e.to_string());
                out.push(c);
            }
        }
    }
    out
}
