//! Closed-form spectrum of the projected state `P_l ρ^{⊗n} P_l` with
//! `ρ = p|+⟩⟨+| + (1 - p) I/2`.
//!
//! On the weight-`l` sector the state is `2^{-n} Σ_k p^{2k} A_k`, where `A_k` connects
//! strings at Hamming distance `2k`. The `A_k` commute and share the eigenspaces `B_j`
//! (two-row irreps `(n - j, j)` of `S_n`), `j = 0..=min(l, n - l)`. The eigenvalue of
//! `A_k` on `B_j` has two closed forms:
//!
//! * [`alpha_young`], from Young symmetrizers:
//!   `Σ_r (-1)^{k-r} C(l-j+k-r, k) C(n-l-k+r, r) C(j, k-r)`, with `r` running from
//!   `max(0, k-j)` to `min(k, l-j)`;
//! * [`alpha_hahn`], the Johnson-scheme eigenvalue (dual Hahn polynomial):
//!   `Σ_{r=0}^{k} (-1)^{k-r} C(l-r, k-r) C(l-j, r) C(n-l-j+r, r)`.
//!
//! A second printed variant of the Johnson-scheme sum replaces `C(l-j, r)` with
//! `C(l-j, k-r)`. It is available as [`HahnReading::SwappedMiddle`] so the oracle can
//! show that it does not reproduce the adjacency spectra; [`HahnReading::DualHahn`]
//! does, and is what [`alpha_hahn`] uses.
//!
//! All `α_k(j)` are exact integers. Floating point only enters when the eigenvalues
//! `λ_j = 2^{-n} Σ_k p^{2k} α_k(j)` are assembled.

use serde::Serialize;

use crate::combinatorics::{binom, binom_or_zero, log_binom};
use crate::error::{domain, Error, Result};

/// Weight-`l` sector of `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SectorIndex {
    pub n: u32,
    pub l: u32,
}

impl SectorIndex {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 {
            return domain("sector needs at least one qubit");
        }
        if l > n {
            return domain(format!("weight l={l} exceeds n={n}"));
        }
        Ok(Self { n, l })
    }

    /// Largest irrep label present in the sector, `min(l, n - l)`.
    pub fn max_j(&self) -> u32 {
        self.l.min(self.n - self.l)
    }

    /// `C(n, l)`.
    pub fn dim(&self) -> Result<u64> {
        binom(self.n as i64, self.l as i64)
    }

    fn check_index(&self, name: &str, value: u32) -> Result<()> {
        if value > self.max_j() {
            return domain(format!(
                "{name}={value} outside 0..={} for sector (n={}, l={})",
                self.max_j(),
                self.n,
                self.l
            ));
        }
        Ok(())
    }
}

/// Purity `p` of the single-qubit state `p|+⟩⟨+| + (1 - p) I/2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct MixParam(f64);

impl MixParam {
    pub fn new(p: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&p) {
            return domain(format!("mixing parameter p={p} outside [-1, 1]"));
        }
        Ok(Self(p))
    }

    /// `p = 2q - 1`.
    pub fn from_q(q: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&q) {
            return domain(format!("q={q} outside [0, 1]"));
        }
        Self::new(2.0 * q - 1.0)
    }

    pub fn p(self) -> f64 {
        self.0
    }
}

/// Which printed form of the Johnson-scheme eigenvalue to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HahnReading {
    /// `Σ_r (-1)^{k-r} C(l-r, k-r) C(l-j, r) C(n-l-j+r, r)`.
    DualHahn,
    /// `Σ_r (-1)^{k-r} C(l-r, k-r) C(l-j, k-r) C(n-l-j+r, r)`.
    SwappedMiddle,
}

impl HahnReading {
    pub fn label(self) -> &'static str {
        match self {
            HahnReading::DualHahn => "dual-hahn: C(l-r,k-r) C(l-j,r) C(n-l-j+r,r)",
            HahnReading::SwappedMiddle => "swapped-middle: C(l-r,k-r) C(l-j,k-r) C(n-l-j+r,r)",
        }
    }
}

fn sign(e: i64) -> i128 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn product3(a: u64, b: u64, c: u64) -> Result<i128> {
    (a as i128)
        .checked_mul(b as i128)
        .and_then(|x| x.checked_mul(c as i128))
        .ok_or(Error::Overflow("eigenvalue term"))
}

/// Eigenvalue of `A_k` on `B_j`, Young-symmetrizer form.
pub fn alpha_young(sector: SectorIndex, k: u32, j: u32) -> Result<i128> {
    sector.check_index("k", k)?;
    sector.check_index("j", j)?;
    let (n, l, k, j) = (sector.n as i64, sector.l as i64, k as i64, j as i64);
    let lo = 0.max(k - j);
    let hi = k.min(l - j);
    let mut acc: i128 = 0;
    for r in lo..=hi {
        let term = product3(
            binom_or_zero(l - j + k - r, k)?,
            binom_or_zero(n - l - k + r, r)?,
            binom_or_zero(j, k - r)?,
        )?;
        acc = acc
            .checked_add(sign(k - r) * term)
            .ok_or(Error::Overflow("alpha_young"))?;
    }
    Ok(acc)
}

/// Eigenvalue of `A_k` on `B_j` under the chosen reading of the Johnson-scheme sum.
pub fn alpha_hahn_reading(sector: SectorIndex, k: u32, j: u32, reading: HahnReading) -> Result<i128> {
    sector.check_index("k", k)?;
    sector.check_index("j", j)?;
    let (n, l, k, j) = (sector.n as i64, sector.l as i64, k as i64, j as i64);
    let mut acc: i128 = 0;
    for r in 0..=k {
        let middle = match reading {
            HahnReading::DualHahn => binom_or_zero(l - j, r)?,
            HahnReading::SwappedMiddle => binom_or_zero(l - j, k - r)?,
        };
        let term = product3(binom_or_zero(l - r, k - r)?, middle, binom_or_zero(n - l - j + r, r)?)?;
        acc = acc
            .checked_add(sign(k - r) * term)
            .ok_or(Error::Overflow("alpha_hahn"))?;
    }
    Ok(acc)
}

/// Eigenvalue of `A_k` on `B_j`, Johnson-scheme (dual Hahn) form.
pub fn alpha_hahn(sector: SectorIndex, k: u32, j: u32) -> Result<i128> {
    alpha_hahn_reading(sector, k, j, HahnReading::DualHahn)
}

/// The swapped-middle reading, kept for arbitration against the oracle.
pub fn alpha_hahn_swapped(sector: SectorIndex, k: u32, j: u32) -> Result<i128> {
    alpha_hahn_reading(sector, k, j, HahnReading::SwappedMiddle)
}

/// Signature shared by the closed forms, so batteries can swap one in.
pub type AlphaFn = fn(SectorIndex, u32, u32) -> Result<i128>;

/// `α_k(j)` for every `k, j` in `0..=min(l, n - l)`; `values[k][j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjacencyEigTable {
    pub sector: SectorIndex,
    pub values: Vec<Vec<i128>>,
}

impl AdjacencyEigTable {
    pub fn build(sector: SectorIndex, alpha: AlphaFn) -> Result<Self> {
        let m = sector.max_j();
        let values = (0..=m)
            .map(|k| (0..=m).map(|j| alpha(sector, k, j)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { sector, values })
    }

    pub fn young(sector: SectorIndex) -> Result<Self> {
        Self::build(sector, alpha_young)
    }

    pub fn get(&self, k: u32, j: u32) -> i128 {
        self.values[k as usize][j as usize]
    }

    /// Column `j`: the joint eigenvalues `(α_0(j), ..., α_m(j))`.
    pub fn column(&self, j: u32) -> Vec<i128> {
        self.values.iter().map(|row| row[j as usize]).collect()
    }
}

/// Dimension of the two-row irrep `(n - j, j)`: `C(n, j)(n - 2j + 1)/(n - j + 1)`.
pub fn multiplicity(n: u32, j: u32) -> Result<u64> {
    if 2 * j > n {
        return domain(format!("irrep label j={j} exceeds n/2 for n={n}"));
    }
    let c = binom(n as i64, j as i64)? as u128;
    let num = c * (n - 2 * j + 1) as u128;
    let den = (n - j + 1) as u128;
    debug_assert_eq!(num % den, 0);
    Ok((num / den) as u64)
}

/// The same dimension as `C(n, j) - C(n, j - 1)`.
pub fn multiplicity_by_difference(n: u32, j: u32) -> Result<u64> {
    if 2 * j > n {
        return domain(format!("irrep label j={j} exceeds n/2 for n={n}"));
    }
    Ok(binom(n as i64, j as i64)? - binom(n as i64, j as i64 - 1)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumEntry {
    pub j: u32,
    pub eigenvalue: f64,
    pub multiplicity: u64,
}

/// Eigenvalues of the subnormalized sector state, one entry per irrep label.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub sector: SectorIndex,
    pub entries: Vec<SpectrumEntry>,
    pub trace: f64,
}

impl Spectrum {
    /// All eigenvalues with multiplicity, ascending.
    pub fn sorted_eigenvalues(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .entries
            .iter()
            .flat_map(|e| std::iter::repeat(e.eigenvalue).take(e.multiplicity as usize))
            .collect();
        all.sort_by(f64::total_cmp);
        all
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.entries.iter().map(|e| e.eigenvalue).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Von Neumann entropy (bits) of the normalized state.
    pub fn normalized_entropy(&self) -> f64 {
        if self.trace <= 0.0 {
            return 0.0;
        }
        let mut s = 0.0;
        for e in &self.entries {
            let mu = e.eigenvalue / self.trace;
            if mu > 0.0 {
                s -= e.multiplicity as f64 * mu * mu.log2();
            }
        }
        s.max(0.0)
    }
}

/// `λ_j = 2^{-n} Σ_k p^{2k} α_k(j)` from an exact table.
pub fn eigenvalues_from_table(table: &AdjacencyEigTable, mix: MixParam) -> Vec<f64> {
    let n = table.sector.n as i32;
    let p2 = mix.p() * mix.p();
    let m = table.sector.max_j();
    (0..=m)
        .map(|j| {
            // Horner in p²
            let mut acc = 0.0;
            for k in (0..=m).rev() {
                acc = acc * p2 + table.get(k, j) as f64;
            }
            // The state is positive semidefinite; a negative result is cancellation noise.
            (acc * 0.5f64.powi(n)).max(0.0)
        })
        .collect()
}

pub fn rho_spectrum(sector: SectorIndex, mix: MixParam) -> Result<Spectrum> {
    rho_spectrum_with(sector, mix, alpha_young)
}

/// [`rho_spectrum`] with an explicit eigenvalue formula for the `A_k`.
pub fn rho_spectrum_with(sector: SectorIndex, mix: MixParam, alpha: AlphaFn) -> Result<Spectrum> {
    let table = AdjacencyEigTable::build(sector, alpha)?;
    let eigenvalues = eigenvalues_from_table(&table, mix);
    let entries = eigenvalues
        .into_iter()
        .enumerate()
        .map(|(j, eigenvalue)| {
            Ok(SpectrumEntry {
                j: j as u32,
                eigenvalue,
                multiplicity: multiplicity(sector.n, j as u32)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let trace = entries
        .iter()
        .map(|e| e.multiplicity as f64 * e.eigenvalue)
        .sum();
    Ok(Spectrum {
        sector,
        entries,
        trace,
    })
}

/// Largest eigenvalue: the common row sum `2^{-n} Σ_k p^{2k} C(n-l, k) C(l, k)`.
pub fn spectral_radius(sector: SectorIndex, mix: MixParam) -> Result<f64> {
    let p2 = mix.p() * mix.p();
    let (n, l) = (sector.n as i64, sector.l as i64);
    let mut acc = 0.0;
    for k in (0..=sector.max_j() as i64).rev() {
        acc = acc * p2 + (binom(n - l, k)? as f64) * (binom(l, k)? as f64);
    }
    Ok(acc * 0.5f64.powi(sector.n as i32))
}

/// Entropy (bits) of the normalized sector state.
pub fn sector_entropy(sector: SectorIndex, mix: MixParam) -> Result<f64> {
    let spectrum = rho_spectrum(sector, mix)?;
    let bound = log2_binom(sector.n, sector.l)?;
    Ok(spectrum.normalized_entropy().min(bound))
}

/// `log2 C(n, l) - S(ρ_l)`: the hashing rate of the post-measurement state.
pub fn coherent_info(sector: SectorIndex, mix: MixParam) -> Result<f64> {
    let bound = log2_binom(sector.n, sector.l)?;
    Ok((bound - sector_entropy(sector, mix)?).clamp(0.0, bound))
}

pub(crate) fn log2_binom(n: u32, l: u32) -> Result<f64> {
    Ok(log_binom(n as u64, l as u64)? / std::f64::consts::LN_2)
}

/// Closed forms for particular sectors and irreps.
pub mod special_cases {
    use super::*;

    /// `l = 1`: `((1 + (n-1)p²)/2^n, 1)` and `((1 - p²)/2^n, n - 1)`.
    pub fn single_excitation(n: u32, mix: MixParam) -> [(f64, u64); 2] {
        let p2 = mix.p() * mix.p();
        let scale = 0.5f64.powi(n as i32);
        [
            ((1.0 + (n as f64 - 1.0) * p2) * scale, 1),
            ((1.0 - p2) * scale, n as u64 - 1),
        ]
    }

    /// Eigenvalue on `B_l` when `l <= n - l`: `(1 - p²)^l / 2^n`.
    pub fn top_irrep(sector: SectorIndex, mix: MixParam) -> Result<f64> {
        if sector.l > sector.n - sector.l {
            return domain("the j = l irrep needs l <= n - l");
        }
        let p2 = mix.p() * mix.p();
        Ok((1.0 - p2).powi(sector.l as i32) * 0.5f64.powi(sector.n as i32))
    }

    /// `α_k(l) = (-1)^k C(l, k)` when `l <= n - l`.
    pub fn top_irrep_alpha(l: u32, k: u32) -> Result<i128> {
        Ok(sign(k as i64) * binom(l as i64, k as i64)? as i128)
    }

    /// Eigenvalue on the trivial irrep, written as `2^{-n} Σ_k p^{2(l-k)} C(l, k) C(n-l, l-k)`.
    pub fn trivial_irrep(sector: SectorIndex, mix: MixParam) -> Result<f64> {
        let p = mix.p();
        let (n, l) = (sector.n as i64, sector.l as i64);
        let mut acc = 0.0;
        for k in 0..=l {
            acc += p.powi(2 * (l - k) as i32) * (binom(l, k)? as f64) * (binom(n - l, l - k)? as f64);
        }
        Ok(acc * 0.5f64.powi(sector.n as i32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sector(n: u32, l: u32) -> SectorIndex {
        SectorIndex::new(n, l).unwrap()
    }

    fn mix(p: f64) -> MixParam {
        MixParam::new(p).unwrap()
    }

    #[test]
    fn domain_errors() {
        assert!(SectorIndex::new(0, 0).is_err());
        assert!(SectorIndex::new(3, 4).is_err());
        assert!(MixParam::new(1.5).is_err());
        assert!(MixParam::from_q(-0.1).is_err());
        assert!(alpha_young(sector(4, 2), 3, 0).is_err());
        assert!(alpha_hahn(sector(4, 1), 0, 2).is_err());
        assert!(multiplicity(4, 3).is_err());
    }

    #[test]
    fn alpha_examples() {
        for n in 1..=8 {
            for l in 0..=n {
                let s = sector(n, l);
                for j in 0..=s.max_j() {
                    assert_eq!(alpha_young(s, 0, j).unwrap(), 1);
                    assert_eq!(alpha_hahn(s, 0, j).unwrap(), 1);
                }
            }
        }
        assert_eq!(alpha_young(sector(2, 1), 1, 0).unwrap(), 1);
        assert_eq!(alpha_young(sector(2, 1), 1, 1).unwrap(), -1);
        let table = AdjacencyEigTable::young(sector(4, 2)).unwrap();
        assert_eq!(table.values, vec![vec![1, 1, 1], vec![4, 0, -2], vec![1, -1, 1]]);
    }

    #[test]
    fn young_and_hahn_tables_agree() {
        for n in 1..=16 {
            for l in 0..=n {
                let s = sector(n, l);
                assert_eq!(
                    AdjacencyEigTable::young(s).unwrap(),
                    AdjacencyEigTable::build(s, alpha_hahn).unwrap(),
                    "n={n} l={l}"
                );
            }
        }
    }

    #[test]
    fn swapped_middle_reading_differs() {
        // smallest disagreement: the n=4, l=2 sector already separates the readings
        let s = sector(4, 2);
        let differs = (0..=2).any(|k| {
            (0..=2).any(|j| {
                alpha_hahn_reading(s, k, j, HahnReading::SwappedMiddle).unwrap() != alpha_young(s, k, j).unwrap()
            })
        });
        assert!(differs);
    }

    #[test]
    fn table_invariants() {
        for n in 1..=14 {
            for l in 0..=n {
                let s = sector(n, l);
                let t = AdjacencyEigTable::young(s).unwrap();
                let m = s.max_j();
                for k in 0..=m {
                    assert_eq!(
                        t.get(k, 0),
                        (binom((n - l) as i64, k as i64).unwrap() * binom(l as i64, k as i64).unwrap()) as i128
                    );
                    // trace(A_k) = Σ_j f_j α_k(j)
                    let tr: i128 = (0..=m).map(|j| multiplicity(n, j).unwrap() as i128 * t.get(k, j)).sum();
                    let want = if k == 0 { s.dim().unwrap() as i128 } else { 0 };
                    assert_eq!(tr, want, "n={n} l={l} k={k}");
                }
                if l <= n - l {
                    for k in 0..=m {
                        assert_eq!(t.get(k, l), special_cases::top_irrep_alpha(l, k).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicity_examples_and_identity() {
        assert_eq!(multiplicity(4, 0).unwrap(), 1);
        assert_eq!(multiplicity(4, 2).unwrap(), 2);
        for n in 0..=30 {
            for j in 0..=n / 2 {
                assert_eq!(multiplicity(n, j).unwrap(), multiplicity_by_difference(n, j).unwrap());
            }
        }
        for l in 0..=10 {
            let s = sector(10, l);
            let total: u64 = (0..=s.max_j()).map(|j| multiplicity(10, j).unwrap()).sum();
            assert_eq!(total, s.dim().unwrap());
        }
    }

    #[test]
    fn spectrum_examples() {
        let sp = rho_spectrum(sector(5, 2), mix(0.0)).unwrap();
        for e in &sp.entries {
            assert!((e.eigenvalue - 1.0 / 32.0).abs() < 1e-15);
        }

        for n in 2..=16 {
            let p = mix(0.37);
            let sp = rho_spectrum(sector(n, 1), p).unwrap();
            let want = special_cases::single_excitation(n, p);
            assert!((sp.entries[0].eigenvalue - want[0].0).abs() < 1e-15);
            assert!((sp.entries[1].eigenvalue - want[1].0).abs() < 1e-15);
            assert_eq!(sp.entries[0].multiplicity, 1);
            assert_eq!(sp.entries[1].multiplicity, n as u64 - 1);
        }

        for n in 1..=12 {
            for l in 0..=n {
                let s = sector(n, l);
                let sp = rho_spectrum(s, mix(1.0)).unwrap();
                let want = s.dim().unwrap() as f64 / 2f64.powi(n as i32);
                assert!((sp.entries[0].eigenvalue - want).abs() < 1e-12);
                for e in &sp.entries[1..] {
                    assert!(e.eigenvalue.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn spectral_radius_examples() {
        assert!((spectral_radius(sector(2, 1), mix(0.6)).unwrap() - 0.34).abs() < 1e-15);
        assert!((spectral_radius(sector(7, 3), mix(0.0)).unwrap() - 1.0 / 128.0).abs() < 1e-15);
        assert!((spectral_radius(sector(6, 3), mix(1.0)).unwrap() - 20.0 / 64.0).abs() < 1e-15);
        for n in 1..=16 {
            for l in 0..=n {
                let s = sector(n, l);
                for p in [0.1, 0.5, 0.9, -0.7] {
                    let r = spectral_radius(s, mix(p)).unwrap();
                    let sp = rho_spectrum(s, mix(p)).unwrap();
                    assert!(r < 1.0);
                    assert!((r - sp.max_eigenvalue()).abs() < 1e-12);
                    assert!((r - sp.entries[0].eigenvalue).abs() < 1e-12);
                    assert!((r - special_cases::trivial_irrep(s, mix(p)).unwrap()).abs() < 1e-12);
                }
            }
        }
    }

    fn h2(x: f64) -> f64 {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }

    #[test]
    fn entropy_examples() {
        assert!(sector_entropy(sector(6, 3), mix(1.0)).unwrap().abs() < 1e-9);
        assert!((sector_entropy(sector(6, 3), mix(0.0)).unwrap() - 20f64.log2()).abs() < 1e-12);
        assert!((sector_entropy(sector(2, 1), mix(0.5)).unwrap() - h2(0.625)).abs() < 1e-12);

        assert!((coherent_info(sector(6, 2), mix(1.0)).unwrap() - 15f64.log2()).abs() < 1e-9);
        assert!(coherent_info(sector(6, 2), mix(0.0)).unwrap().abs() < 1e-12);
        assert_eq!(coherent_info(sector(6, 0), mix(0.3)).unwrap(), 0.0);
    }

    #[test]
    fn entropy_nonincreasing_in_purity() {
        for n in [2, 5, 8, 12, 16] {
            for l in 0..=n {
                let s = sector(n, l);
                let mut prev = f64::INFINITY;
                for step in 0..=100 {
                    let e = sector_entropy(s, mix(step as f64 / 100.0)).unwrap();
                    assert!(e <= prev + 1e-12, "n={n} l={l} step={step}");
                    assert!(e >= 0.0 && e <= log2_binom(n, l).unwrap() + 1e-12);
                    prev = e;
                }
            }
        }
    }

    #[test]
    fn complement_sectors_share_spectra() {
        for n in 1..=12 {
            for l in 0..=n {
                let a = rho_spectrum(sector(n, l), mix(0.45)).unwrap().sorted_eigenvalues();
                let b = rho_spectrum(sector(n, n - l), mix(0.45)).unwrap().sorted_eigenvalues();
                assert_eq!(a.len(), b.len());
                for (x, y) in a.iter().zip(&b) {
                    assert!((x - y).abs() < 1e-15);
                }
            }
        }
    }
}
