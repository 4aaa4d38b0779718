use super::basis::WeightBasis;
use crate::error::{domain, Error, Result};
use crate::spectra::MixParam;

/// Dense row-major real symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseSymMatrix {
    /// Evaluates `f` on the upper triangle and mirrors it, so symmetry holds bitwise.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        Self { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j).to_bits() == self.get(j, i).to_bits()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.data.chunks(self.dim.max(1)).map(|r| r.iter().sum()).collect()
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.dim.max(1))
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self += coeff * other`, entrywise.
    pub fn add_scaled(&mut self, coeff: f64, other: &DenseSymMatrix) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += coeff * b;
        }
    }

    /// Largest entrywise difference and where it occurs.
    pub fn max_abs_diff(&self, other: &DenseSymMatrix) -> (f64, usize, usize) {
        let mut best = (0.0, 0, 0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = (self.get(i, j) - other.get(i, j)).abs();
                if d > best.0 {
                    best = (d, i, j);
                }
            }
        }
        best
    }
}

/// 0/1 matrix joining basis strings at Hamming distance exactly `2k`.
pub fn build_adjacency(basis: &WeightBasis, k: u32) -> Result<DenseSymMatrix> {
    if k > basis.max_j() {
        return domain(format!("k={k} exceeds min(l, n-l)={}", basis.max_j()));
    }
    let s = basis.strings();
    Ok(DenseSymMatrix::from_fn(s.len(), |a, b| {
        if (s[a] ^ s[b]).count_ones() == 2 * k {
            1.0
        } else {
            0.0
        }
    }))
}

/// Tolerance between the adjacency-sum and per-entry constructions.
pub const CONSTRUCTION_TOLERANCE: f64 = 1e-15;

/// The sector state `P_l ρ^{⊗n} P_l` as a dense matrix on the weight-`l` basis.
///
/// Built twice: as `2^{-n} Σ_k p^{2k} A_k`, and entry by entry as the product of the
/// single-qubit matrix elements `⟨x_i|ρ|y_i⟩` with `ρ = [[1/2, p/2], [p/2, 1/2]]`.
/// The two must agree within [`CONSTRUCTION_TOLERANCE`]; the per-entry matrix is returned.
pub fn build_rho_sector(basis: &WeightBasis, mix: MixParam) -> Result<DenseSymMatrix> {
    let per_entry = rho_by_entries(basis, mix);
    let by_adjacency = rho_by_adjacency(basis, mix)?;
    let (diff, row, col) = per_entry.max_abs_diff(&by_adjacency);
    if diff > CONSTRUCTION_TOLERANCE {
        return Err(Error::Inconsistent { row, col, diff });
    }
    Ok(per_entry)
}

pub(crate) fn rho_by_entries(basis: &WeightBasis, mix: MixParam) -> DenseSymMatrix {
    let p = mix.p();
    let single = [[0.5, 0.5 * p], [0.5 * p, 0.5]];
    let n = basis.n();
    let s = basis.strings();
    DenseSymMatrix::from_fn(s.len(), |a, b| {
        (0..n)
            .map(|bit| single[((s[a] >> bit) & 1) as usize][((s[b] >> bit) & 1) as usize])
            .product()
    })
}

pub(crate) fn rho_by_adjacency(basis: &WeightBasis, mix: MixParam) -> Result<DenseSymMatrix> {
    let mut acc = DenseSymMatrix::zeros(basis.len());
    let scale = 0.5f64.powi(basis.n() as i32);
    for k in 0..=basis.max_j() {
        let coeff = scale * mix.p().powi(2 * k as i32);
        acc.add_scaled(coeff, &build_adjacency(basis, k)?);
    }
    Ok(acc)
}
