//! Cyclic Jacobi diagonalization of dense real symmetric matrices.
//!
//! Each rotation annihilates one off-diagonal pair. A sweep visits every pair `(p, q)`,
//! `p < q`, once, grouped into round-robin rounds of disjoint pairs so that a round can be
//! applied with contiguous row passes only. The first sweeps skip entries below a threshold tied to the
//! current off-diagonal mass, later sweeps rotate every entry that is not negligible
//! against its diagonal pair.

use super::matrix::DenseSymMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Stop once the off-diagonal Frobenius norm falls below this fraction of `‖A‖_F`.
/// By Hoffman-Wielandt the sorted diagonal is then within that distance (in the 2-norm)
/// of the sorted eigenvalues, and each returned pair has residual at most the off-norm.
pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct JacobiOptions {
    pub max_sweeps: usize,
    pub want_vectors: bool,
    pub relative_tolerance: f64,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        Self {
            max_sweeps: DEFAULT_MAX_SWEEPS,
            want_vectors: false,
            relative_tolerance: DEFAULT_RELATIVE_TOLERANCE,
        }
    }
}

/// Eigenpairs sorted by ascending eigenvalue. `vectors[i]` belongs to `values[i]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Option<Vec<Vec<f64>>>,
    pub sweeps: usize,
}

/// Eigenvalues of `m`, ascending.
pub fn eigensolve(m: &DenseSymMatrix) -> Result<Vec<f64>> {
    Ok(jacobi(m, JacobiOptions::default())?.values)
}

/// Eigenvalues and orthonormal eigenvectors of `m`.
pub fn eigensolve_with_vectors(m: &DenseSymMatrix) -> Result<Eigen> {
    jacobi(
        m,
        JacobiOptions {
            want_vectors: true,
            ..Default::default()
        },
    )
}

pub fn jacobi(m: &DenseSymMatrix, opts: JacobiOptions) -> Result<Eigen> {
    let n = m.dim();
    let mut a = m.as_slice().to_vec();
    // rows of `vt` are the eigenvectors (columns of V)
    let mut vt = if opts.want_vectors {
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        Some(v)
    } else {
        None
    };

    let rounds = round_robin(n);
    let scale = m.frobenius_norm();
    let mut rotations: Vec<Rotation> = Vec::with_capacity(n / 2 + 1);
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&a, n);
        if off == 0.0 || off <= opts.relative_tolerance * scale {
            break;
        }
        if sweeps == opts.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        let threshold = if sweeps < 3 {
            0.2 * off / (n * n) as f64
        } else {
            0.0
        };
        for round in &rounds {
            rotations.clear();
            for &(p, q) in round {
                let apq = a[p * n + q];
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let g = 100.0 * apq.abs();
                if sweeps > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                if apq.abs() <= threshold || apq == 0.0 {
                    continue;
                }
                rotations.push(Rotation::annihilating(p, q, app, aqq, apq));
            }
            apply_round(&mut a, vt.as_deref_mut(), n, &rotations);
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = vt.map(|v| order.iter().map(|&i| v[i * n..(i + 1) * n].to_vec()).collect());
    Ok(Eigen {
        values,
        vectors,
        sweeps,
    })
}

/// Pairings of `0..n` such that every pair `p < q` appears in exactly one round and the
/// pairs within a round are disjoint.
fn round_robin(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n < 2 {
        return Vec::new();
    }
    // odd sizes get a phantom player whose pairs are dropped
    let m = n + n % 2;
    let mut seats: Vec<usize> = (0..m).collect();
    let mut rounds = Vec::with_capacity(m - 1);
    for _ in 0..m - 1 {
        let round = (0..m / 2)
            .map(|i| (seats[i], seats[m - 1 - i]))
            .filter(|&(x, y)| x < n && y < n)
            .map(|(x, y)| (x.min(y), x.max(y)))
            .collect();
        rounds.push(round);
        seats[1..].rotate_right(1);
    }
    rounds
}

/// Plane rotation that zeroes `(p, q)`, in the `c`, `s`, `tau` parametrization.
#[derive(Debug, Clone, Copy)]
struct Rotation {
    p: usize,
    q: usize,
    s: f64,
    tau: f64,
    app: f64,
    aqq: f64,
}

impl Rotation {
    fn annihilating(p: usize, q: usize, app: f64, aqq: f64, apq: f64) -> Self {
        let theta = 0.5 * (aqq - app) / apq;
        let t = 1.0 / (theta.abs() + (theta * theta + 1.0).sqrt());
        let t = if theta < 0.0 { -t } else { t };
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        Self {
            p,
            q,
            s,
            tau: s / (1.0 + c),
            app: app - t * apq,
            aqq: aqq + t * apq,
        }
    }

    #[inline]
    fn mix(&self, g: f64, h: f64) -> (f64, f64) {
        (g - self.s * (h + g * self.tau), h + self.s * (g - h * self.tau))
    }
}

/// Applies disjoint rotations as `Jᵀ A J`: row pairs first, then column pairs row by row,
/// so no pass walks a column with stride `n`.
fn apply_round(a: &mut [f64], vt: Option<&mut [f64]>, n: usize, rotations: &[Rotation]) {
    if rotations.is_empty() {
        return;
    }
    for rot in rotations {
        mix_rows(a, n, rot);
    }
    for row in a.chunks_mut(n) {
        for rot in rotations {
            let (g, h) = rot.mix(row[rot.p], row[rot.q]);
            row[rot.p] = g;
            row[rot.q] = h;
        }
    }
    // the 2x2 blocks are untouched by the other rotations of the round
    for rot in rotations {
        a[rot.p * n + rot.p] = rot.app;
        a[rot.q * n + rot.q] = rot.aqq;
        a[rot.p * n + rot.q] = 0.0;
        a[rot.q * n + rot.p] = 0.0;
    }
    if let Some(v) = vt {
        for rot in rotations {
            mix_rows(v, n, rot);
        }
    }
}

fn mix_rows(a: &mut [f64], n: usize, rot: &Rotation) {
    let (head, tail) = a.split_at_mut(rot.q * n);
    let row_p = &mut head[rot.p * n..(rot.p + 1) * n];
    let row_q = &mut tail[..n];
    for (g, h) in row_p.iter_mut().zip(row_q.iter_mut()) {
        (*g, *h) = rot.mix(*g, *h);
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}
