//! Spectral theory of higher-order tensors.
//!
//! An order-`m`, dimension-`n` real symmetric tensor `A` defines the
//! homogeneous form `A xᵐ` and the nonlinear map `x ↦ A xᵐ⁻¹`. This crate
//! computes the objects built on top of those two contractions:
//!
//! * H- and N-eigenvalues for `n = 2` through the characteristic polynomial
//!   (a Sylvester resultant), and Z-eigenpairs for `n ≤ 3` by elimination
//!   ([`direct`]);
//! * positive-definiteness verdicts for even-order forms ([`direct::pd_check`]);
//! * the spectral radius of a nonnegative tensor by bracketing power
//!   iteration, plus a shifted symmetric power method ([`power`]);
//! * stationary distributions of higher-order Markov chains ([`markov`]);
//! * best rank-one approximation, successive deflation, and approximation
//!   ratio bounds ([`rankone`]);
//! * Gershgorin-style eigenvalue localization, hypergraph adjacency tensors,
//!   and weak irreducibility ([`tensor`]).

mod error;
mod index;

pub mod direct;
pub mod markov;
pub mod poly;
pub mod power;
pub mod random;
pub mod rankone;
pub mod tensor;

pub use direct::{EigenKind, EigenPair, PdClassification, PdMethod, PdVerdict, ZSpectrum};
pub use error::{Error, Result, TransitionViolation};
pub use num_complex::Complex64;
pub use markov::{ProbVec, StationaryResult, StationaryStatus, TransitionTensor};
pub use poly::Polynomial;
pub use power::{IterOptions, NqzStatus, NqzTrace, Shift};
pub use rankone::{AppBounds, RankOneTerm, SsbraResult, SsbraStatus};
pub use tensor::{Disk, GenTensor, RepDigraph, SymTensor, Tensor};
