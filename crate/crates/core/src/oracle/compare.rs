//! Numeric spectra of the dense constructions, compared with the closed forms.

use serde::Serialize;

use super::basis::{hamming, WeightBasis};
use super::jacobi::{eigensolve, eigensolve_with_vectors};
use super::matrix::{build_rho_sector, DenseSymMatrix};
use crate::error::Result;
use crate::spectra::{multiplicity, rho_spectrum_with, AlphaFn, MixParam, SectorIndex};

/// Largest allowed gap between closed-form and numeric eigenvalues.
pub const SPECTRUM_TOLERANCE: f64 = 1e-9;
/// Eigenvalues closer than this are treated as one eigenspace.
pub const CLUSTER_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cluster {
    pub value: f64,
    pub count: usize,
}

/// Groups values whose consecutive gaps (after sorting) are at most `tol`.
pub fn cluster(values: &[f64], tol: f64) -> Vec<Cluster> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out: Vec<Cluster> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    let mut sum = 0.0;
    for &v in &sorted {
        match out.last_mut() {
            Some(c) if v - last <= tol => {
                c.count += 1;
                sum += v;
                c.value = sum / c.count as f64;
            }
            _ => {
                sum = v;
                out.push(Cluster { value: v, count: 1 });
            }
        }
        last = v;
    }
    out
}

/// Closed-form versus dense-matrix spectrum of one sector.
#[derive(Debug, Clone, Serialize)]
pub struct SectorComparison {
    pub sector: SectorIndex,
    pub p: f64,
    pub max_abs_diff: f64,
    pub analytic: Vec<Cluster>,
    pub oracle: Vec<Cluster>,
    /// Oracle eigenvalues, ascending.
    pub oracle_eigenvalues: Vec<f64>,
    pub multiplicities_match: bool,
}

impl SectorComparison {
    pub fn passed(&self) -> bool {
        self.max_abs_diff <= SPECTRUM_TOLERANCE && self.multiplicities_match
    }
}

pub fn compare_sector(sector: SectorIndex, mix: MixParam, alpha: AlphaFn) -> Result<SectorComparison> {
    let basis = WeightBasis::new(sector.n, sector.l)?;
    let oracle_eigenvalues = eigensolve(&build_rho_sector(&basis, mix)?)?;
    let analytic_values = rho_spectrum_with(sector, mix, alpha)?.sorted_eigenvalues();

    let max_abs_diff = if analytic_values.len() == oracle_eigenvalues.len() {
        analytic_values
            .iter()
            .zip(&oracle_eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let analytic = cluster(&analytic_values, CLUSTER_TOLERANCE);
    let oracle = cluster(&oracle_eigenvalues, CLUSTER_TOLERANCE);
    let multiplicities_match = analytic.len() == oracle.len()
        && analytic
            .iter()
            .zip(&oracle)
            .all(|(a, b)| a.count == b.count && (a.value - b.value).abs() <= SPECTRUM_TOLERANCE);
    Ok(SectorComparison {
        sector,
        p: mix.p(),
        max_abs_diff,
        analytic,
        oracle,
        oracle_eigenvalues,
        multiplicities_match,
    })
}

/// A common eigenspace of all `A_k` on the sector, found numerically.
#[derive(Debug, Clone, Serialize)]
pub struct JointEigenspace {
    pub dim: usize,
    /// Eigenvalue of `A_k` on this eigenspace, `k = 0..=min(l, n-l)`.
    pub alphas: Vec<f64>,
    /// Largest `‖A_k v - α_k v‖` over the eigenspace's basis vectors.
    pub residual: f64,
}

/// Diagonalizes a generic combination `Σ_k w_k A_k` (irrational weights), splits the
/// space into its eigenspaces, and reads off the eigenvalue of every `A_k` on each.
pub fn joint_adjacency_spectrum(basis: &WeightBasis) -> Result<Vec<JointEigenspace>> {
    let m = basis.max_j() as usize;
    let s = basis.strings();
    let dim = basis.len();
    const PRIMES: [f64; 13] = [2., 3., 5., 7., 11., 13., 17., 19., 23., 29., 31., 37., 41.];
    let weights: Vec<f64> = (0..=m).map(|k| PRIMES[k % PRIMES.len()].sqrt()).collect();
    let combo = DenseSymMatrix::from_fn(dim, |a, b| weights[(hamming(s[a], s[b]) / 2) as usize]);
    let eig = eigensolve_with_vectors(&combo)?;
    let vectors = eig.vectors.expect("vectors requested");

    // neighbour lists per relation, for A_k v without dense A_k
    let mut neighbours = vec![vec![Vec::new(); dim]; m + 1];
    for a in 0..dim {
        for b in 0..dim {
            neighbours[(hamming(s[a], s[b]) / 2) as usize][a].push(b);
        }
    }
    let apply = |k: usize, v: &[f64]| -> Vec<f64> {
        neighbours[k].iter().map(|nb| nb.iter().map(|&b| v[b]).sum()).collect()
    };

    let scale = eig.values.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let mut out = Vec::new();
    let mut start = 0;
    while start < dim {
        let mut end = start + 1;
        while end < dim && eig.values[end] - eig.values[end - 1] <= CLUSTER_TOLERANCE * scale {
            end += 1;
        }
        let mut alphas = vec![0.0; m + 1];
        let mut residual: f64 = 0.0;
        for (k, alpha) in alphas.iter_mut().enumerate() {
            let quotients: Vec<(f64, Vec<f64>)> = vectors[start..end]
                .iter()
                .map(|v| {
                    let av = apply(k, v);
                    (av.iter().zip(v).map(|(x, y)| x * y).sum(), av)
                })
                .collect();
            *alpha = quotients.iter().map(|(q, _)| q).sum::<f64>() / (end - start) as f64;
            for ((_, av), v) in quotients.iter().zip(&vectors[start..end]) {
                let r: f64 = av.iter().zip(v).map(|(x, y)| (x - *alpha * y).powi(2)).sum::<f64>().sqrt();
                residual = residual.max(r);
            }
        }
        out.push(JointEigenspace {
            dim: end - start,
            alphas,
            residual,
        });
        start = end;
    }
    Ok(out)
}

/// Outcome of matching one closed form against the numeric joint eigenspaces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReadingVerdict {
    pub sector: SectorIndex,
    pub passed: bool,
    /// First irrep label whose column `(α_0(j), ..., α_m(j))` has no numeric counterpart.
    pub witness: Option<String>,
}

/// Checks that every column of the closed-form table, with dimension `f_j`, is one of
/// the numeric joint eigenspaces, and that nothing is left over.
pub fn arbitrate_sector(
    sector: SectorIndex,
    joint: &[JointEigenspace],
    alpha: impl Fn(SectorIndex, u32, u32) -> Result<i128>,
) -> Result<ReadingVerdict> {
    let m = sector.max_j();
    let mut used = vec![false; joint.len()];
    for j in 0..=m {
        let column: Vec<i128> = (0..=m).map(|k| alpha(sector, k, j)).collect::<Result<_>>()?;
        let f = multiplicity(sector.n, j)? as usize;
        let hit = joint.iter().enumerate().position(|(idx, space)| {
            !used[idx]
                && space.dim == f
                && space.residual < 1e-6
                && space.alphas.iter().zip(&column).all(|(a, c)| (a - *c as f64).abs() < 1e-6)
        });
        match hit {
            Some(idx) => used[idx] = true,
            None => {
                return Ok(ReadingVerdict {
                    sector,
                    passed: false,
                    witness: Some(format!(
                        "n={} l={} j={j}: column {column:?} (dim {f}) matches no common eigenspace",
                        sector.n, sector.l
                    )),
                })
            }
        }
    }
    if let Some(idx) = used.iter().position(|u| !u) {
        return Ok(ReadingVerdict {
            sector,
            passed: false,
            witness: Some(format!(
                "n={} l={}: numeric eigenspace {:?} (dim {}) unmatched",
                sector.n, sector.l, joint[idx].alphas, joint[idx].dim
            )),
        });
    }
    Ok(ReadingVerdict {
        sector,
        passed: true,
        witness: None,
    })
}
