//! Characters of `S_n` on the weight-`l` subspace `H_l` and on the two-row irreps `B_j`.
//!
//! `χ^l(c)` counts weight-`l` strings fixed by a permutation of cycle type
//! `c = (i_1, ..., i_n)`: a fixed string is constant on every cycle, so it picks `q_k` of
//! the `k`-cycles to fill with ones, subject to `Σ k q_k = l`. The irrep character of the
//! partition `(n - j, j)` is the difference of two such sums, at targets `j` and `j - 1`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{binom, cycle_classes, enumerate_compositions, factorial, CycleClass};
use crate::error::{domain, Error, Result};

/// Largest `n` accepted by the table and decomposition routines.
pub const MAX_TABLE_N: usize = 16;

fn check_class(n: usize, cls: &CycleClass) -> Result<()> {
    if cls.n() != n {
        return Err(Error::InvalidClass(format!(
            "class of S_{} used as a class of S_{n}",
            cls.n()
        )));
    }
    Ok(())
}

/// `Σ_{Σ k q_k = target, q_k <= i_k} Π_k C(i_k, q_k)`.
fn composition_sum(target: u32, cls: &CycleClass) -> Result<i128> {
    let mut total = 0i128;
    for comp in enumerate_compositions(target, cls) {
        let mut term = 1i128;
        for (&i, &q) in cls.counts().iter().zip(&comp.parts) {
            term *= binom(i as i64, q as i64)? as i128;
        }
        total += term;
    }
    Ok(total)
}

/// Character of the permutation representation on weight-`l` strings of length `n`.
pub fn perm_character(n: usize, l: u32, cls: &CycleClass) -> Result<i128> {
    check_class(n, cls)?;
    if l as usize > n {
        return domain(format!("weight l={l} exceeds n={n}"));
    }
    composition_sum(l, cls)
}

/// Character of the irrep `B_j` labeled by the partition `(n - j, j)`, `j <= n/2`.
pub fn irrep_character(n: usize, j: u32, cls: &CycleClass) -> Result<i128> {
    check_class(n, cls)?;
    if 2 * j as usize > n {
        return domain(format!("B_{j} needs j <= n/2 = {}", n / 2));
    }
    let lower = if j == 0 { 0 } else { composition_sum(j - 1, cls)? };
    Ok(composition_sum(j, cls)? - lower)
}

/// Row label of a [`CharacterTableSlice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CharacterLabel {
    /// Permutation character of `H_l`.
    Perm(u32),
    /// Irreducible character of `B_j`.
    Irrep(u32),
}

impl std::fmt::Display for CharacterLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharacterLabel::Perm(l) => write!(f, "H_{l}"),
            CharacterLabel::Irrep(j) => write!(f, "B_{j}"),
        }
    }
}

/// The characters `χ^l`, `l <= n`, and `χ^{B_j}`, `j <= n/2`, on every class of `S_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTableSlice {
    pub n: usize,
    pub classes: Vec<CycleClass>,
    pub class_sizes: Vec<u128>,
    pub values: BTreeMap<CharacterLabel, Vec<i128>>,
}

impl CharacterTableSlice {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_N {
            return domain(format!("character tables are built for 1 <= n <= {MAX_TABLE_N}, got {n}"));
        }
        let classes = cycle_classes(n);
        let class_sizes = classes.iter().map(CycleClass::size).collect::<Result<Vec<_>>>()?;

        let mut labels: Vec<CharacterLabel> = (0..=n as u32).map(CharacterLabel::Perm).collect();
        labels.extend((0..=(n / 2) as u32).map(CharacterLabel::Irrep));
        let columns = classes
            .par_iter()
            .map(|cls| {
                labels
                    .iter()
                    .map(|label| match *label {
                        CharacterLabel::Perm(l) => perm_character(n, l, cls),
                        CharacterLabel::Irrep(j) => irrep_character(n, j, cls),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        let values = labels
            .iter()
            .enumerate()
            .map(|(row, &label)| (label, columns.iter().map(|col| col[row]).collect()))
            .collect();
        Ok(Self {
            n,
            classes,
            class_sizes,
            values,
        })
    }

    pub fn row(&self, label: CharacterLabel) -> Option<&[i128]> {
        self.values.get(&label).map(Vec::as_slice)
    }

    /// `Σ_c |c| a(c) b(c)`, i.e. `n!` times the usual inner product (characters are real).
    pub fn weighted_product(&self, a: &[i128], b: &[i128]) -> i128 {
        self.class_sizes
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&size, (&x, &y))| size as i128 * x * y)
            .sum()
    }

    /// Index of the identity class.
    pub fn identity_index(&self) -> usize {
        let id = CycleClass::identity(self.n);
        self.classes.iter().position(|c| *c == id).expect("identity class is enumerated")
    }
}

/// Outcome of [`verify_decomposition`]; failures carry human-readable witnesses.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub n: usize,
    pub classes: usize,
    /// `χ^l = Σ_{j <= l} χ^{B_j}` on every class, `l <= n/2`.
    pub decomposition_holds: bool,
    /// `Σ_c |c| χ^{B_a} χ^{B_b} = n! δ_ab`.
    pub orthogonality_holds: bool,
    /// Multiplicity of `B_j` in `(C^2)^{⊗n}`, obtained from character inner products.
    pub full_space_multiplicities: Vec<i128>,
    /// Every entry above equals `n - 2j + 1`, and `Σ_l χ^l(id) = 2^n`.
    pub full_space_holds: bool,
    pub witnesses: Vec<String>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.decomposition_holds && self.orthogonality_holds && self.full_space_holds
    }
}

/// Checks the decomposition `H_l = B_0 ⊕ ... ⊕ B_l` and the multiplicities of the `B_j` in
/// the full space through exact character arithmetic. Failures are reported, not raised.
pub fn verify_decomposition(n: usize) -> Result<DecompositionReport> {
    let table = CharacterTableSlice::build(n)?;
    let n_fact = factorial(n as u32)? as i128;
    let half = (n / 2) as u32;
    let irrep = |j: u32| table.row(CharacterLabel::Irrep(j)).expect("irrep row");
    let perm = |l: u32| table.row(CharacterLabel::Perm(l)).expect("perm row");
    let mut witnesses = Vec::new();

    let mut decomposition_holds = true;
    for l in 0..=half {
        for (c, cls) in table.classes.iter().enumerate() {
            let sum: i128 = (0..=l).map(|j| irrep(j)[c]).sum();
            if sum != perm(l)[c] {
                decomposition_holds = false;
                witnesses.push(format!(
                    "n={n} l={l} class {:?}: χ^l = {} but Σ χ^B_j = {sum}",
                    cls.cycle_lengths(),
                    perm(l)[c]
                ));
            }
        }
    }

    let mut orthogonality_holds = true;
    for a in 0..=half {
        for b in a..=half {
            let got = table.weighted_product(irrep(a), irrep(b));
            let want = if a == b { n_fact } else { 0 };
            if got != want {
                orthogonality_holds = false;
                witnesses.push(format!("n={n}: <B_{a}, B_{b}> weighted sum {got}, expected {want}"));
            }
        }
    }

    // the full space has character 2^{number of cycles}
    let full: Vec<i128> = table
        .classes
        .iter()
        .map(|c| 1i128 << c.counts().iter().sum::<u32>())
        .collect();
    let mut full_space_holds = true;
    let mut full_space_multiplicities = Vec::new();
    for j in 0..=half {
        let weighted = table.weighted_product(&full, irrep(j));
        let mult = weighted / n_fact;
        full_space_multiplicities.push(mult);
        let want = n as i128 - 2 * j as i128 + 1;
        if weighted % n_fact != 0 || mult != want {
            full_space_holds = false;
            witnesses.push(format!("n={n}: B_{j} appears {weighted}/{n_fact} times, expected {want}"));
        }
    }
    let id = table.identity_index();
    let total_dim: i128 = (0..=n as u32).map(|l| perm(l)[id]).sum();
    if total_dim != 1i128 << n {
        full_space_holds = false;
        witnesses.push(format!("n={n}: Σ_l dim H_l = {total_dim}, expected 2^n"));
    }

    Ok(DecompositionReport {
        n,
        classes: table.classes.len(),
        decomposition_holds,
        orthogonality_holds,
        full_space_multiplicities,
        full_space_holds,
        witnesses,
    })
}
