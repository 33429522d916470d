//! Numerical laboratory for Clarkson-McCarthy type inequalities in the
//! Schatten p-classes of complex square matrices.
//!
//! The crate is organised bottom-up:
//!
//! * [`matcore`]: SVD, Hermitian eigendecomposition, polar factors, powers of
//!   positive semidefinite matrices and Loewner-order tests.
//! * [`schatten`]: Schatten norms and quasi-norms, dual exponents, the trace
//!   pairing and Hölder's inequality.
//! * [`inequalities`]: margin-reporting checkers for the Clarkson family and
//!   its n-tuple generalisations.
//! * [`proofs`]: numerical replay of the interpolation and duality argument
//!   behind the n-tuple McCarthy inequality.
//! * [`conjecture`]: unitary-orbit versions of the Clarkson inequality and a
//!   local search for feasibility certificates.
//! * [`ensembles`]: seeded random matrix tuples.
//! * [`campaign`]: verification campaigns, JSON reports and CSV scans.

pub mod campaign;
pub mod config;
pub mod conjecture;
pub mod ensembles;
pub mod error;
pub mod inequalities;
pub mod io;
pub mod matcore;
pub mod proofs;
pub mod report;
pub mod schatten;
pub mod tuple;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use matcore::ComplexMatrix;
pub use report::{InequalityReport, Tag};
pub use schatten::SchattenExponent;
pub use tuple::OperatorTuple;
