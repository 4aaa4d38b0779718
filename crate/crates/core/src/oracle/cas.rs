use serde::Serialize;

use super::basis::{hamming, WeightBasis};
use crate::error::{Error, Result};

/// Structure constants `p_ij^k` of `A_i A_j = Σ_k p_ij^k A_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionNumbers {
    pub classes: usize,
    /// `p[i][j][k]`
    pub p: Vec<Vec<Vec<u64>>>,
}

impl IntersectionNumbers {
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.p[i][j][k]
    }
}

fn violation(axiom: &'static str, i: usize, j: usize, k: usize, detail: String) -> Error {
    Error::AxiomViolation {
        axiom,
        i,
        j,
        k,
        detail,
    }
}

/// Checks that the distance-`2k` relations on the weight basis form a symmetric
/// commutative association scheme, in exact integer arithmetic, and returns the
/// intersection numbers.
///
/// Axioms: `A_0 = I`; `Σ_k A_k = J`; `A_k^T = A_k`; every product `A_i A_j` is constant
/// on each relation (so it equals `Σ_k p_ij^k A_k` with zero residual); `A_i A_j = A_j A_i`.
pub fn verify_cas_axioms(basis: &WeightBasis) -> Result<IntersectionNumbers> {
    let dim = basis.len();
    let m = basis.max_j() as usize;
    let s = basis.strings();

    let mut rel = vec![0u8; dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            let d = hamming(s[a], s[b]) as usize;
            if d % 2 != 0 || d / 2 > m {
                return Err(violation(
                    "(ii') Σ A_k = J",
                    a,
                    b,
                    d,
                    format!("pair at distance {d} belongs to no relation"),
                ));
            }
            rel[a * dim + b] = (d / 2) as u8;
        }
    }
    for a in 0..dim {
        for b in 0..dim {
            if (rel[a * dim + b] == 0) != (a == b) {
                return Err(violation("(i') A_0 = I", a, b, 0, "A_0 differs from the identity".into()));
            }
            if rel[a * dim + b] != rel[b * dim + a] {
                return Err(violation(
                    "(vi') A_k^T = A_k",
                    a,
                    b,
                    rel[a * dim + b] as usize,
                    "relation is not symmetric".into(),
                ));
            }
        }
    }

    // products[i][j] = A_i A_j as counts: #{z : rel(x,z) = i, rel(z,y) = j}
    let mut products = vec![vec![vec![0u32; dim * dim]; m + 1]; m + 1];
    for x in 0..dim {
        for z in 0..dim {
            let i = rel[x * dim + z] as usize;
            let row_z = &rel[z * dim..(z + 1) * dim];
            let by_j = &mut products[i];
            for (y, &j) in row_z.iter().enumerate() {
                by_j[j as usize][x * dim + y] += 1;
            }
        }
    }

    // a witness pair (0, y_k) for every relation k
    let witness: Vec<usize> = (0..=m)
        .map(|k| (0..dim).find(|&y| rel[y] as usize == k).expect("every relation is inhabited"))
        .collect();

    let mut p = vec![vec![vec![0u64; m + 1]; m + 1]; m + 1];
    for i in 0..=m {
        for j in 0..=m {
            let prod = &products[i][j];
            for k in 0..=m {
                p[i][j][k] = prod[witness[k]] as u64;
            }
            for x in 0..dim {
                for y in 0..dim {
                    let k = rel[x * dim + y] as usize;
                    let got = prod[x * dim + y] as u64;
                    if got != p[i][j][k] {
                        return Err(violation(
                            "(iv') A_i A_j = Σ p_ij^k A_k",
                            i,
                            j,
                            k,
                            format!("entry ({x},{y}) is {got}, relation constant is {}", p[i][j][k]),
                        ));
                    }
                }
            }
        }
    }
    for i in 0..=m {
        for j in 0..i {
            if products[i][j] != products[j][i] {
                let k = (0..=m).find(|&k| p[i][j][k] != p[j][i][k]).unwrap_or(0);
                return Err(violation("(v') A_i A_j = A_j A_i", i, j, k, "products differ".into()));
            }
        }
    }

    Ok(IntersectionNumbers { classes: m, p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binom;

    #[test]
    fn johnson_graph_degrees() {
        let ints = verify_cas_axioms(&WeightBasis::new(4, 1).unwrap()).unwrap();
        assert_eq!(ints.get(1, 1, 0), 3);
        for n in 1..=8u32 {
            for l in 0..=n {
                let ints = verify_cas_axioms(&WeightBasis::new(n, l).unwrap()).unwrap();
                let m = ints.classes;
                for j in 0..=m {
                    for k in 0..=m {
                        assert_eq!(ints.get(0, j, k), u64::from(j == k));
                    }
                    // p_jj^0 is the valency of relation j
                    let valency = binom((n - l) as i64, j as i64).unwrap() * binom(l as i64, j as i64).unwrap();
                    assert_eq!(ints.get(j, j, 0), valency);
                }
            }
        }
    }

    #[test]
    fn intersection_numbers_commute() {
        let ints = verify_cas_axioms(&WeightBasis::new(8, 3).unwrap()).unwrap();
        for i in 0..=3 {
            for j in 0..=3 {
                for k in 0..=3 {
                    assert_eq!(ints.get(i, j, k), ints.get(j, i, k));
                }
            }
        }
    }

    /// Direct triple count for a single pair, independent of the product table.
    #[test]
    fn matches_direct_triple_count() {
        let b = WeightBasis::new(6, 3).unwrap();
        let ints = verify_cas_axioms(&b).unwrap();
        let s = b.strings();
        let x = s[0];
        for &y in s {
            let k = (hamming(x, y) / 2) as usize;
            for i in 0..=3u32 {
                for j in 0..=3u32 {
                    let count = s
                        .iter()
                        .filter(|&&z| hamming(x, z) == 2 * i && hamming(z, y) == 2 * j)
                        .count() as u64;
                    assert_eq!(count, ints.get(i as usize, j as usize, k));
                }
            }
        }
    }
}
