//! Bound states of the one-dimensional harmonic oscillator and the cusped
//! double-well potential `v(z) = (|z| - z0)^2`, in dimensionless units
//! (`z = x/x_HO`, energies in units of `hbar*omega/2`).
//!
//! Three routes to the same spectra:
//!
//! * [`exact`]: expansion in the sine basis of a wide box and dense
//!   symmetric diagonalization; the numerically exact reference.
//! * [`wkb`]: semiclassical quantization with Airy patching regions around
//!   the turning points. Eigenvalues are good; the piecewise wavefunctions
//!   carry finite jumps at the patch boundaries, which
//!   [`PiecewiseWavefunction::discontinuity_report`] quantifies.
//! * [`maf`]: the modified Airy function ansatz `psi = F*Ai(q) + G*Bi(q)`,
//!   which is regular at the turning points and globally continuous.
//!
//! The supporting kernels ([`airy`], [`numerics`]) are self-contained; no
//! external special-function or linear-algebra crates are used.

#![no_std]
// negated comparisons like !(x > 0.0) are deliberate: they reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod airy;
pub mod exact;
pub mod maf;
pub mod numerics;
pub mod piecewise;
pub mod wkb;

pub use airy::{ai_prime_zero, ai_zero, airy_eval, AiryValues};
pub use exact::{build_hamiltonian, solve_spectrum, Potential, SolverConfig, SpectrumResult};
pub use piecewise::{Parity, PiecewiseWavefunction};
pub use wkb::WkbLevel;
