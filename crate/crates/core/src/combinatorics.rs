//! Exact binomials, multinomials, compositions and cycle classes.
//!
//! Every binomial symbol in the library goes through [`BinomialCache`]. Arguments with
//! `b < 0` or `b > a` evaluate to zero instead of failing, so alternating sums with
//! loosely specified index ranges can be written over a superset of the true range.

use std::sync::OnceLock;

use crate::error::{domain, Error, Result};

/// Largest row held exactly. `C(64, 32)` still fits in a `u64`.
pub const DEFAULT_MAX_N: u32 = 64;

/// Pascal triangle of exact binomial coefficients `C(a, b)` for `a <= max_n`.
#[derive(Debug, Clone)]
pub struct BinomialCache {
    max_n: u32,
    rows: Vec<Vec<u64>>,
}

impl BinomialCache {
    pub fn new(max_n: u32) -> Result<Self> {
        if max_n == 0 || max_n > DEFAULT_MAX_N {
            return domain(format!("max_n must lie in 1..={DEFAULT_MAX_N}, got {max_n}"));
        }
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(max_n as usize + 1);
        rows.push(vec![1]);
        for a in 1..=max_n as usize {
            let prev = &rows[a - 1];
            let mut row = vec![1u64; a + 1];
            for b in 1..a {
                row[b] = prev[b - 1] + prev[b];
            }
            rows.push(row);
        }
        Ok(Self { max_n, rows })
    }

    /// Process-wide cache with `max_n = 64`.
    pub fn shared() -> &'static BinomialCache {
        static CACHE: OnceLock<BinomialCache> = OnceLock::new();
        CACHE.get_or_init(|| BinomialCache::new(DEFAULT_MAX_N).expect("default cache size is valid"))
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    pub fn binom(&self, a: i64, b: i64) -> Result<u64> {
        if a < 0 {
            return domain(format!("binomial row must be nonnegative, got {a}"));
        }
        if a > self.max_n as i64 {
            return Err(Error::CacheOverflow {
                requested: a,
                max_n: self.max_n,
            });
        }
        if b < 0 || b > a {
            return Ok(0);
        }
        Ok(self.rows[a as usize][b as usize])
    }
}

/// `C(a, b)` from the shared cache; zero outside `0 <= b <= a`.
pub fn binom(a: i64, b: i64) -> Result<u64> {
    BinomialCache::shared().binom(a, b)
}

/// Like [`binom`], but a negative row also yields zero. Used inside alternating sums
/// where a binomial with a negative top argument stands for an empty count.
pub(crate) fn binom_or_zero(a: i64, b: i64) -> Result<u64> {
    if a < 0 {
        Ok(0)
    } else {
        binom(a, b)
    }
}

/// Natural logarithm of `C(a, b)`.
///
/// Rows inside the exact cache are converted from the exact integer; larger rows are
/// accumulated as `Σ ln((a - b + i) / i)`.
pub fn log_binom(a: u64, b: u64) -> Result<f64> {
    if b > a {
        return domain(format!("log_binom needs 0 <= b <= a, got a={a}, b={b}"));
    }
    if a <= DEFAULT_MAX_N as u64 {
        return Ok((binom(a as i64, b as i64)? as f64).ln());
    }
    let b = b.min(a - b);
    Ok((1..=b).map(|i| ((a - b + i) as f64 / i as f64).ln()).sum())
}

/// `(Σ parts)! / Π parts!`, as a product of binomials.
pub fn multinomial(parts: &[u64]) -> Result<u128> {
    let mut total: u64 = 0;
    let mut acc: u128 = 1;
    for &part in parts {
        total = total
            .checked_add(part)
            .ok_or(Error::Overflow("multinomial total"))?;
        let c = binom(total as i64, part as i64)? as u128;
        acc = acc.checked_mul(c).ok_or(Error::Overflow("multinomial"))?;
    }
    Ok(acc)
}

/// Cycle type of a permutation of `n` points: `counts[k - 1]` is the number of `k`-cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleClass {
    counts: Vec<u32>,
}

impl CycleClass {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidClass("empty cycle structure".into()));
        }
        let n = counts.len() as u64;
        let weight: u64 = counts
            .iter()
            .enumerate()
            .map(|(k, &i)| (k as u64 + 1) * i as u64)
            .sum();
        if weight != n {
            return Err(Error::InvalidClass(format!(
                "Σ k·i_k = {weight} but the structure has length {n}"
            )));
        }
        Ok(Self { counts })
    }

    /// The class of the identity: `n` fixed points.
    pub fn identity(n: usize) -> Self {
        let mut counts = vec![0; n.max(1)];
        counts[0] = n.max(1) as u32;
        Self { counts }
    }

    /// The class of a single `n`-cycle.
    pub fn full_cycle(n: usize) -> Self {
        let mut counts = vec![0; n.max(1)];
        counts[n.max(1) - 1] = 1;
        Self { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Number of `k`-cycles, `k >= 1`.
    pub fn cycles_of_length(&self, k: usize) -> u32 {
        self.counts.get(k.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// `n! / Π_k k^{i_k} i_k!`.
    pub fn size(&self) -> Result<u128> {
        let mut size = factorial(self.n() as u32)?;
        for (idx, &i) in self.counts.iter().enumerate() {
            let k = idx as u128 + 1;
            let mut denom = factorial(i)?;
            for _ in 0..i {
                denom = denom.checked_mul(k).ok_or(Error::Overflow("class size"))?;
            }
            size /= denom;
        }
        Ok(size)
    }

    /// Cycle lengths in nonincreasing order, e.g. `[2, 1, 1]` for a transposition in S_4.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut lengths = Vec::new();
        for (idx, &i) in self.counts.iter().enumerate().rev() {
            lengths.extend(std::iter::repeat(idx + 1).take(i as usize));
        }
        lengths
    }
}

pub fn factorial(n: u32) -> Result<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k).ok_or(Error::Overflow("factorial")))
}

/// All conjugacy classes of `S_n`, one per integer partition of `n`.
pub fn cycle_classes(n: usize) -> Vec<CycleClass> {
    fn rec(remaining: usize, max_part: usize, counts: &mut Vec<u32>, out: &mut Vec<CycleClass>) {
        if remaining == 0 {
            out.push(CycleClass {
                counts: counts.clone(),
            });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            counts[part - 1] += 1;
            rec(remaining - part, part, counts, out);
            counts[part - 1] -= 1;
        }
    }
    let n = n.max(1);
    let mut out = Vec::new();
    rec(n, n, &mut vec![0; n], &mut out);
    out
}

/// A solution `(q_1, ..., q_n)` of `Σ k·q_k = weight`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    pub parts: Vec<u32>,
    pub weight: u32,
}

/// Every `(q_1, ..., q_n)` with `Σ k·q_k = target` and `0 <= q_k <= i_k`, each exactly once.
pub fn enumerate_compositions(target: u32, caps: &CycleClass) -> Vec<Composition> {
    fn rec(
        k: usize,
        remaining: u32,
        caps: &[u32],
        parts: &mut Vec<u32>,
        target: u32,
        out: &mut Vec<Composition>,
    ) {
        if k == caps.len() {
            if remaining == 0 {
                out.push(Composition {
                    parts: parts.clone(),
                    weight: target,
                });
            }
            return;
        }
        let len = k as u32 + 1;
        let max_q = caps[k].min(remaining / len);
        for q in 0..=max_q {
            parts[k] = q;
            rec(k + 1, remaining - q * len, caps, parts, target, out);
        }
        parts[k] = 0;
    }
    let mut out = Vec::new();
    let mut parts = vec![0; caps.counts.len()];
    rec(0, target, &caps.counts, &mut parts, target, &mut out);
    out
}
