//! Distillation rates of the recursive halving protocol.
//!
//! Alice and Bob start from `N = 2^k` pairs. At step `i` they measure groups of
//! `n_i = 2^{k-i+1}` pairs; on success the post-measurement state is distilled at the
//! partial rate `R_i`, otherwise the failed group is halved. The total rate is
//!
//! ```text
//! R = 2^{-k} Σ_i x^{n_i} (2^{i-1} R_i - 2^i R_{i+1})
//! ```
//!
//! summed over `i = 1..k-1` with `R_k = 0` for the qubit protocol (a single pair is never
//! measured), and over `i = 1..k` with `R_{k+1} = 0` for the qudit protocols.
//! [`total_rate`] tells the two apart by the number of partial rates it is handed.

use serde::Serialize;

use crate::combinatorics::{binom, log_binom, multinomial};
use crate::error::{domain, Error, Result};
use crate::spectra::{coherent_info, MixParam, SectorIndex};

/// Protocol inputs: weight `x` of the entangled part, mixing `q` of `Φ^±`, Schmidt
/// coefficient `alpha`, `N = 2^k` initial pairs, local dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProtocolParams {
    pub x: f64,
    pub q: f64,
    pub alpha: f64,
    pub k: u32,
    pub d: u32,
}

impl ProtocolParams {
    pub fn qubit(x: f64, q: f64, alpha: f64, k: u32) -> Result<Self> {
        Self::new(x, q, alpha, k, 2)
    }

    pub fn new(x: f64, q: f64, alpha: f64, k: u32, d: u32) -> Result<Self> {
        for (name, v) in [("x", x), ("q", q), ("alpha", alpha)] {
            if !(0.0..=1.0).contains(&v) {
                return domain(format!("{name}={v} outside [0, 1]"));
            }
        }
        if k == 0 || k > 12 {
            return domain(format!("k={k} outside 1..=12"));
        }
        if d < 2 {
            return domain(format!("local dimension d={d} must be at least 2"));
        }
        Ok(Self { x, q, alpha, k, d })
    }

    /// Builds the parameters from a copy count `N`, which must be a power of two, `N >= 2`.
    pub fn with_copies(x: f64, q: f64, alpha: f64, copies: u64, d: u32) -> Result<Self> {
        if copies < 2 || !copies.is_power_of_two() {
            return domain(format!("N={copies} is not a power of two >= 2"));
        }
        Self::new(x, q, alpha, copies.trailing_zeros(), d)
    }

    pub fn copies(&self) -> u64 {
        1 << self.k
    }

    /// Group size `2^{k-i+1}` measured at step `i`.
    pub fn group_size(&self, i: u32) -> u64 {
        1 << (self.k + 1 - i)
    }

    fn check_step(&self, i: u32, last: u32) -> Result<()> {
        if i == 0 || i > last {
            return domain(format!("step i={i} outside 1..={last} for k={}", self.k));
        }
        Ok(())
    }
}

/// Protocol family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Protocol {
    /// Mixture of `Φ^±(α)` and `|01⟩`; weight-sector projections on qubits.
    Qubit,
    /// `Φ_d^+` against `|01⟩`; projections counting `|0⟩` versus not-`|0⟩`.
    QuditZero,
    /// `Φ_d^+` against `|i, i+1⟩`; projections counting even versus odd levels.
    QuditParity,
    /// `Φ_d^+` against `|01⟩`; projections on the full type class `(l_0, ..., l_{d-1})`.
    QuditNaive,
}

impl Protocol {
    /// Number of partial rates entering the total for `k` halving levels.
    pub fn steps(self, k: u32) -> u32 {
        match self {
            Protocol::Qubit => k - 1,
            _ => k,
        }
    }
}

/// Partial rate of the qubit protocol at a group of `n` pairs:
/// `Σ_l α^l (1-α)^{n-l} C(n, l) I_c(n, l)`.
pub fn partial_rate_qubit_n(n: u32, q: f64, alpha: f64) -> Result<f64> {
    let mix = MixParam::from_q(q)?;
    let mut acc = 0.0;
    for l in 0..=n {
        let weight = sector_weight(n, l, alpha)?;
        if weight == 0.0 {
            continue;
        }
        acc += weight * coherent_info(SectorIndex::new(n, l)?, mix)?;
    }
    Ok(acc)
}

/// `α^l (1-α)^{n-l} C(n, l)`, the probability of finding `l` ones given success.
fn sector_weight(n: u32, l: u32, alpha: f64) -> Result<f64> {
    let c = binom(n as i64, l as i64)? as f64;
    Ok(alpha.powi(l as i32) * (1.0 - alpha).powi((n - l) as i32) * c)
}

/// Partial rate `R_i` of the qubit protocol, `1 <= i <= k - 1`.
pub fn partial_rate_qubit(params: &ProtocolParams, i: u32) -> Result<f64> {
    params.check_step(i, Protocol::Qubit.steps(params.k))?;
    partial_rate_qubit_n(params.group_size(i) as u32, params.q, params.alpha)
}

/// `d^{-n} Σ_l C(n, l)(d-1)^{n-l} log2[C(n, l)(d-1)^{n-l}]`.
pub fn partial_rate_qudit_zero_n(n: u32, d: u32) -> Result<f64> {
    if d < 2 {
        return domain("d must be at least 2");
    }
    let (ln_d, ln_dm1) = ((d as f64).ln(), ((d - 1) as f64).ln());
    let mut acc = 0.0;
    for l in 0..=n {
        let ln_rank = log_binom(n as u64, l as u64)? + (n - l) as f64 * ln_dm1;
        // weight rank / d^n, taken in the log domain
        acc += (ln_rank - n as f64 * ln_d).exp() * ln_rank / std::f64::consts::LN_2;
    }
    Ok(acc)
}

/// Partial rate of the "zero versus non-zero" qudit protocol at step `i`, `1 <= i <= k`.
pub fn partial_rate_qudit_zero(params: &ProtocolParams, i: u32) -> Result<f64> {
    params.check_step(i, Protocol::QuditZero.steps(params.k))?;
    partial_rate_qudit_zero_n(params.group_size(i) as u32, params.d)
}

/// `d^{-n} Σ_l C(n, l)(d/2)^n log2[C(n, l)(d/2)^n]`, `d` even.
pub fn partial_rate_qudit_parity_n(n: u32, d: u32) -> Result<f64> {
    if d < 2 || d % 2 != 0 {
        return domain(format!("parity protocol needs an even dimension, got d={d}"));
    }
    let ln_half = ((d / 2) as f64).ln();
    let ln_d = (d as f64).ln();
    let mut acc = 0.0;
    for l in 0..=n {
        let ln_rank = log_binom(n as u64, l as u64)? + n as f64 * ln_half;
        acc += (ln_rank - n as f64 * ln_d).exp() * ln_rank / std::f64::consts::LN_2;
    }
    Ok(acc)
}

pub fn partial_rate_qudit_parity(params: &ProtocolParams, i: u32) -> Result<f64> {
    params.check_step(i, Protocol::QuditParity.steps(params.k))?;
    partial_rate_qudit_parity_n(params.group_size(i) as u32, params.d)
}

/// Schmidt rank `n! / (l_0! ... l_{d-1}!)` after a full type-class measurement.
pub fn schmidt_rank_multinomial(n: u64, counts: &[u64]) -> Result<u128> {
    let total: u64 = counts.iter().sum();
    if total != n {
        return domain(format!("counts sum to {total}, expected {n}"));
    }
    multinomial(counts)
}

/// `d^{-n} Σ_{l_0 + ... + l_{d-1} = n} r log2 r` with `r` the multinomial rank.
pub fn partial_rate_qudit_naive_n(n: u32, d: u32) -> Result<f64> {
    if d < 2 {
        return domain("d must be at least 2");
    }
    let mut counts = vec![0u64; d as usize];
    let mut acc = 0.0;
    let ln_norm = n as f64 * (d as f64).ln();
    visit_compositions(n as u64, 0, &mut counts, &mut |c| {
        let r = schmidt_rank_multinomial(n as u64, c)?;
        if r > 1 {
            let ln_r = (r as f64).ln();
            acc += (ln_r - ln_norm).exp() * ln_r / std::f64::consts::LN_2;
        }
        Ok(())
    })?;
    Ok(acc)
}

fn visit_compositions(
    remaining: u64,
    idx: usize,
    counts: &mut Vec<u64>,
    f: &mut impl FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    if idx + 1 == counts.len() {
        counts[idx] = remaining;
        return f(counts);
    }
    for c in 0..=remaining {
        counts[idx] = c;
        visit_compositions(remaining - c, idx + 1, counts, f)?;
    }
    Ok(())
}

pub fn partial_rate_qudit_naive(params: &ProtocolParams, i: u32) -> Result<f64> {
    params.check_step(i, Protocol::QuditNaive.steps(params.k))?;
    partial_rate_qudit_naive_n(params.group_size(i) as u32, params.d)
}

/// Partial rate `R_i` of any protocol.
pub fn partial_rate(protocol: Protocol, params: &ProtocolParams, i: u32) -> Result<f64> {
    match protocol {
        Protocol::Qubit => partial_rate_qubit(params, i),
        Protocol::QuditZero => partial_rate_qudit_zero(params, i),
        Protocol::QuditParity => partial_rate_qudit_parity(params, i),
        Protocol::QuditNaive => partial_rate_qudit_naive(params, i),
    }
}

/// All partial rates `R_1, ..., R_steps` of a protocol.
pub fn partial_rates(protocol: Protocol, params: &ProtocolParams) -> Result<Vec<f64>> {
    (1..=protocol.steps(params.k))
        .map(|i| partial_rate(protocol, params, i))
        .collect()
}

fn check_partials(params: &ProtocolParams, partials: &[f64]) -> Result<()> {
    let k = params.k as usize;
    if partials.len() + 1 != k && partials.len() != k {
        return Err(Error::LengthMismatch {
            expected: format!("{} (qubit) or {k} (qudit)", k - 1),
            got: partials.len(),
        });
    }
    Ok(())
}

/// Total rate, telescoped form: `2^{-k} Σ_i x^{n_i} (2^{i-1} R_i - 2^i R_{i+1})`.
///
/// `partials` holds `R_1..R_{k-1}` (qubit protocol) or `R_1..R_k` (qudit protocols); the
/// rate one past the end is zero.
pub fn total_rate(params: &ProtocolParams, partials: &[f64]) -> Result<f64> {
    check_partials(params, partials)?;
    let r = |i: usize| partials.get(i - 1).copied().unwrap_or(0.0);
    let mut acc = 0.0;
    for i in 1..=partials.len() {
        let xn = params.x.powi(params.group_size(i as u32) as i32);
        acc += xn * (2f64.powi(i as i32 - 1) * r(i) - 2f64.powi(i as i32) * r(i + 1));
    }
    Ok(acc / params.copies() as f64)
}

/// Total rate, expanded form: `2^{-k}(x^{N} R_1 + Σ_{i>=2} 2^{i-1}(1 - x^{n_i}) x^{n_i} R_i)`.
pub fn total_rate_expanded(params: &ProtocolParams, partials: &[f64]) -> Result<f64> {
    check_partials(params, partials)?;
    let mut acc = 0.0;
    for (idx, &ri) in partials.iter().enumerate() {
        let i = idx as u32 + 1;
        let xn = params.x.powi(params.group_size(i) as i32);
        acc += if i == 1 {
            xn * ri
        } else {
            2f64.powi(i as i32 - 1) * (1.0 - xn) * xn * ri
        };
    }
    Ok(acc / params.copies() as f64)
}

/// Partial rates and total for one protocol at one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateRow {
    pub params: ProtocolParams,
    pub partials: Vec<f64>,
    pub total: f64,
}

pub fn evaluate(protocol: Protocol, params: &ProtocolParams) -> Result<RateRow> {
    let partials = partial_rates(protocol, params)?;
    let total = total_rate(params, &partials)?;
    Ok(RateRow {
        params: *params,
        partials,
        total,
    })
}

/// Rows of a parameter sweep, in grid order.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RateTable {
    pub rows: Vec<RateRow>,
}

impl RateTable {
    /// Evaluates every point, in parallel, keeping the input order.
    pub fn evaluate_grid(protocol: Protocol, points: &[ProtocolParams]) -> Result<Self> {
        use rayon::prelude::*;
        let rows = points
            .par_iter()
            .map(|p| evaluate(protocol, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows })
    }

    /// `R_i >= 0`, `R >= 0`, and `R <= 1` for qubits.
    pub fn sanity_violations(&self) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, row)| {
                row.partials.iter().any(|&r| r < -1e-12)
                    || row.total < -1e-12
                    || (row.params.d == 2 && row.total > 1.0 + 1e-12)
            })
            .map(|(idx, _)| idx)
            .collect()
    }
}
