use crate::error::{domain, Result};

/// Largest string length the oracle accepts.
pub const MAX_ORACLE_N: u32 = 24;

/// All length-`n` bit strings of weight `l`, in increasing lexicographic order.
///
/// A string `x_1 x_2 ... x_n` is stored as the integer whose most significant of the
/// `n` bits is `x_1`, so lexicographic order is numeric order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightBasis {
    n: u32,
    l: u32,
    strings: Vec<u32>,
}

impl WeightBasis {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 || n > MAX_ORACLE_N {
            return domain(format!("oracle basis needs 1 <= n <= {MAX_ORACLE_N}, got {n}"));
        }
        if l > n {
            return domain(format!("weight l={l} exceeds n={n}"));
        }
        let mut strings = Vec::new();
        if l == 0 {
            strings.push(0);
        } else {
            // Gosper's hack: next integer with the same popcount
            let mut x: u64 = (1u64 << l) - 1;
            while x < (1u64 << n) {
                strings.push(x as u32);
                let c = x & x.wrapping_neg();
                let r = x + c;
                x = (((r ^ x) >> 2) / c) | r;
            }
        }
        Ok(Self { n, l, strings })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn max_j(&self) -> u32 {
        self.l.min(self.n - self.l)
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn strings(&self) -> &[u32] {
        &self.strings
    }

    pub fn index_of(&self, x: u32) -> Option<usize> {
        self.strings.binary_search(&x).ok()
    }

    /// Bit at 1-based position `i` (left to right).
    pub fn bit(&self, x: u32, i: u32) -> u32 {
        (x >> (self.n - i)) & 1
    }

    /// `0^{n-l} 1^l`.
    pub fn reference_string(&self) -> u32 {
        if self.l == 0 {
            0
        } else {
            ((1u64 << self.l) - 1) as u32
        }
    }

    pub fn render(&self, x: u32) -> String {
        (1..=self.n).map(|i| if self.bit(x, i) == 1 { '1' } else { '0' }).collect()
    }
}

pub fn hamming(x: u32, y: u32) -> u32 {
    (x ^ y).count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binom;

    #[test]
    fn basis_is_complete_sorted_and_weighted() {
        for n in 1..=12u32 {
            for l in 0..=n {
                let b = WeightBasis::new(n, l).unwrap();
                assert_eq!(b.len() as u64, binom(n as i64, l as i64).unwrap());
                assert!(b.strings().windows(2).all(|w| w[0] < w[1]));
                assert!(b.strings().iter().all(|x| x.count_ones() == l && *x < (1 << n)));
            }
        }
        let b = WeightBasis::new(4, 2).unwrap();
        let rendered: Vec<String> = b.strings().iter().map(|&x| b.render(x)).collect();
        assert_eq!(rendered, ["0011", "0101", "0110", "1001", "1010", "1100"]);
        assert_eq!(b.render(b.reference_string()), "0011");
    }

    #[test]
    fn invalid_sizes() {
        assert!(WeightBasis::new(0, 0).is_err());
        assert!(WeightBasis::new(25, 1).is_err());
        assert!(WeightBasis::new(3, 4).is_err());
    }

    #[test]
    fn distances_are_even_and_bounded() {
        for n in 1..=10u32 {
            for l in 0..=n {
                let b = WeightBasis::new(n, l).unwrap();
                for &x in b.strings() {
                    for &y in b.strings() {
                        let d = hamming(x, y);
                        assert_eq!(d % 2, 0);
                        assert!(d <= 2 * b.max_j());
                    }
                }
            }
        }
    }
}
