//! Exhaustive counts behind the combinatorial lemmas.

use super::basis::{hamming, WeightBasis};
use crate::combinatorics::{binom, binom_or_zero, CycleClass};
use crate::error::{domain, Error, Result};

/// `|{y : d(x, y) = 2k}|` by scanning the basis.
pub fn count_distance_pairs(basis: &WeightBasis, x: u32, k: u32) -> Result<u64> {
    if basis.index_of(x).is_none() {
        return domain(format!("{} is not in the weight-{} basis", basis.render(x), basis.l()));
    }
    Ok(basis.strings().iter().filter(|&&y| hamming(x, y) == 2 * k).count() as u64)
}

/// Checks `count_distance_pairs(x, k) = C(n-l, k) C(l, k)` for every `x` and `k`.
pub fn verify_distance_counts(basis: &WeightBasis) -> Result<()> {
    let (n, l) = (basis.n() as i64, basis.l() as i64);
    for k in 0..=basis.max_j() {
        let formula = binom(n - l, k as i64)? * binom(l, k as i64)?;
        for &x in basis.strings() {
            let counted = count_distance_pairs(basis, x, k)?;
            if counted != formula {
                return Err(Error::CountMismatch {
                    what: format!("distance-{} neighbours of {}", 2 * k, basis.render(x)),
                    counted,
                    formula,
                });
            }
        }
    }
    Ok(())
}

/// `C(n-l, k) C(l-j, m-k) C(j, l-m)`.
pub fn young_count_formula(n: u32, l: u32, j: u32, k: u32, m: u32) -> Result<u64> {
    let (n, l, j, k, m) = (n as i64, l as i64, j as i64, k as i64, m as i64);
    Ok(binom_or_zero(n - l, k)? * binom_or_zero(l - j, m - k)? * binom_or_zero(j, l - m)?)
}

/// Counts weight-`l` strings `y` with `d(x_0, y) = 2k` and exactly `m` ones among the
/// first `n - j` positions (the first row of the tableau `(n - j, j)`), where
/// `x_0 = 0^{n-l} 1^l`, and checks the count against [`young_count_formula`].
pub fn verify_young_counting(n: u32, l: u32, j: u32, k: u32, m: u32) -> Result<u64> {
    let basis = WeightBasis::new(n, l)?;
    if j > basis.max_j() {
        return domain(format!("j={j} exceeds min(l, n-l)={}", basis.max_j()));
    }
    let counted = young_count_scan(&basis, j, k, m);
    let formula = young_count_formula(n, l, j, k, m)?;
    if counted != formula {
        return Err(Error::CountMismatch {
            what: format!("Young counting (n={n}, l={l}, j={j}, k={k}, m={m})"),
            counted,
            formula,
        });
    }
    Ok(counted)
}

fn young_count_scan(basis: &WeightBasis, j: u32, k: u32, m: u32) -> u64 {
    let x0 = basis.reference_string();
    // the first n - j positions are the high bits
    let first_row_mask: u32 = (((1u64 << (basis.n() - j)) - 1) << j) as u32;
    basis
        .strings()
        .iter()
        .filter(|&&y| hamming(x0, y) == 2 * k && (y & first_row_mask).count_ones() == m)
        .count() as u64
}

/// `α_k(j)` assembled from exhaustive counts: `Σ_m (-1)^{j-l+m} C(n-j, l-j)/C(n-j, m) · |Y^m|`,
/// where `|Y^m|` is counted by scanning, not from the closed form.
pub fn alpha_from_counting(n: u32, l: u32, k: u32, j: u32) -> Result<i128> {
    let basis = WeightBasis::new(n, l)?;
    if j > basis.max_j() || k > basis.max_j() {
        return domain("k and j must lie in 0..=min(l, n-l)");
    }
    let top = binom((n - j) as i64, (l - j) as i64)? as f64;
    let mut acc = 0.0;
    for m in 0..=l {
        let count = young_count_scan(&basis, j, k, m);
        if count == 0 {
            continue;
        }
        let den = binom((n - j) as i64, m as i64)? as f64;
        let sign = if (j + m + l) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * top / den * count as f64;
    }
    let rounded = acc.round();
    if (acc - rounded).abs() > 1e-6 {
        return domain(format!("counting route gave non-integer {acc} at (n={n}, l={l}, k={k}, j={j})"));
    }
    Ok(rounded as i128)
}

/// A permutation of `0..n` in the given class: consecutive blocks, longest cycles first.
pub fn representative_permutation(class: &CycleClass) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..class.n()).collect();
    let mut start = 0;
    for len in class.cycle_lengths() {
        for offset in 0..len {
            perm[start + offset] = start + (offset + 1) % len;
        }
        start += len;
    }
    perm
}

/// Number of weight-`l` strings left unchanged by a representative of `class`.
pub fn count_fixed_strings(l: u32, class: &CycleClass) -> Result<u64> {
    let n = class.n() as u32;
    let basis = WeightBasis::new(n, l)?;
    let perm = representative_permutation(class);
    Ok(basis
        .strings()
        .iter()
        .filter(|&&x| (0..n as usize).all(|i| basis.bit(x, i as u32 + 1) == basis.bit(x, perm[i] as u32 + 1)))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::cycle_classes;
    use crate::spectra::{alpha_young, SectorIndex};

    #[test]
    fn distance_pair_examples() {
        let b = WeightBasis::new(4, 2).unwrap();
        for &x in b.strings() {
            assert_eq!(count_distance_pairs(&b, x, 0).unwrap(), 1);
            assert_eq!(count_distance_pairs(&b, x, 1).unwrap(), 4);
        }
        let b = WeightBasis::new(6, 2).unwrap();
        for &x in b.strings() {
            assert_eq!(count_distance_pairs(&b, x, 2).unwrap(), 6);
        }
        assert!(count_distance_pairs(&b, 0b111, 1).is_err());
        for n in 1..=10 {
            for l in 0..=n {
                verify_distance_counts(&WeightBasis::new(n, l).unwrap()).unwrap();
            }
        }
    }

    #[test]
    fn young_counting_examples() {
        assert_eq!(verify_young_counting(4, 2, 1, 1, 1).unwrap(), 2);
        assert_eq!(verify_young_counting(6, 3, 2, 1, 2).unwrap(), 6);
        // distance zero: only x_0 itself, which has l - j ones in the first row
        assert_eq!(verify_young_counting(6, 3, 2, 0, 1).unwrap(), 1);
        assert_eq!(verify_young_counting(6, 3, 2, 0, 2).unwrap(), 0);
        assert!(verify_young_counting(6, 3, 4, 0, 0).is_err());
    }

    #[test]
    fn young_counting_exhaustive() {
        for n in 1..=10 {
            for l in 0..=n {
                let m_max = l.min(n - l);
                for j in 0..=m_max {
                    for k in 0..=m_max {
                        for m in 0..=l {
                            verify_young_counting(n, l, j, k, m).unwrap();
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn counting_route_reproduces_alpha() {
        for n in 1..=10 {
            for l in 0..=n {
                let s = SectorIndex::new(n, l).unwrap();
                for k in 0..=s.max_j() {
                    for j in 0..=s.max_j() {
                        assert_eq!(alpha_from_counting(n, l, k, j).unwrap(), alpha_young(s, k, j).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn representatives_have_the_right_cycle_type() {
        for n in 1..=8 {
            for class in cycle_classes(n) {
                let perm = representative_permutation(&class);
                let mut seen = vec![false; n];
                let mut counts = vec![0u32; n];
                for start in 0..n {
                    if seen[start] {
                        continue;
                    }
                    let mut len = 0;
                    let mut i = start;
                    while !seen[i] {
                        seen[i] = true;
                        i = perm[i];
                        len += 1;
                    }
                    counts[len - 1] += 1;
                }
                assert_eq!(counts, class.counts());
            }
        }
    }

    #[test]
    fn fixed_strings_examples() {
        let two_two = CycleClass::new(vec![0, 2, 0, 0]).unwrap();
        assert_eq!(count_fixed_strings(2, &two_two).unwrap(), 2);
        assert_eq!(count_fixed_strings(2, &CycleClass::identity(4)).unwrap(), 6);
        assert_eq!(count_fixed_strings(3, &CycleClass::full_cycle(5)).unwrap(), 0);
    }
}
