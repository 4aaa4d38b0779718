//! Exact spectra of permutation-invariant projected qubit states, and the
//! entanglement-distillation rates of the halving projection protocol built on them.
//!
//! * [`combinatorics`]: exact binomials, compositions, cycle classes of `S_n`.
//! * [`spectra`]: closed-form eigenvalues and multiplicities of the weight-`l` sector state.
//! * [`oracle`]: dense brute-force constructions and a Jacobi eigensolver that check the closed forms.
//! * [`rates`]: partial and total rates for the qubit protocol and the qudit variants.
//! * [`characters`]: permutation and two-row irreducible characters of `S_n`.
//! * [`figures`]: sweep configurations, the five plot presets and their qualitative checks.
//! * [`verify`]: the cross-check batteries behind `permdistill verify`.
//! * [`cli`]: the command-line front end.

pub mod characters;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod figures;
pub mod oracle;
pub mod rates;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
pub use spectra::{MixParam, SectorIndex, Spectrum};
