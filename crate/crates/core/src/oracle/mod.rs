//! Brute-force counterparts of the closed forms.
//!
//! Everything here works on explicit bit strings and dense matrices and never calls
//! into the closed-form eigenvalue formulas, except where a comparison is the point.

mod basis;
mod cas;
mod compare;
mod counting;
mod jacobi;
mod matrix;

pub use basis::{hamming, WeightBasis, MAX_ORACLE_N};
pub use cas::{verify_cas_axioms, IntersectionNumbers};
pub use compare::{
    arbitrate_sector, cluster, compare_sector, joint_adjacency_spectrum, Cluster, JointEigenspace,
    ReadingVerdict, SectorComparison, CLUSTER_TOLERANCE, SPECTRUM_TOLERANCE,
};
pub use counting::{
    alpha_from_counting, count_distance_pairs, count_fixed_strings, representative_permutation,
    verify_distance_counts, verify_young_counting, young_count_formula,
};
pub use jacobi::{eigensolve, eigensolve_with_vectors, jacobi, Eigen, JacobiOptions, DEFAULT_MAX_SWEEPS};
pub use matrix::{build_adjacency, build_rho_sector, DenseSymMatrix, CONSTRUCTION_TOLERANCE};
