//! Numerical toolkit for moment maps of Abelian groups of biholomorphisms of
//! the unit ball and the Siegel domain, and for the commutative algebras of
//! Toeplitz operators their symbols generate on weighted Bergman spaces.
//!
//! The crate is organized around a pipeline:
//!
//! * [`domains`]: the unit ball `B^n`, the Siegel domain `D_n`, weighted
//!   measures, Bergman kernels, the Cayley transform and its unitary.
//! * [`group_actions`]: the five maximal Abelian subgroup actions
//!   (quasi-elliptic, quasi-parabolic, quasi-hyperbolic, nilpotent,
//!   quasi-nilpotent), one-parameter subgroups and fundamental fields.
//! * [`symplectic`]: Kaehler forms, Hamiltonian vector fields, and the
//!   moment-map defining property.
//! * [`moment`]: moment maps, their restrictions to subgroups, coordinate
//!   functions attached to a basis of the Lie algebra, and fiber separation.
//! * [`quadrature`]: Gauss rules (Jacobi, Laguerre, Hermite), tensor rules on
//!   the ball and the positive orthant, and seeded Monte Carlo.
//! * [`toeplitz`]: truncated Toeplitz matrices on monomial bases, symbol
//!   transport between the two domains, commutator diagnostics.
//! * [`spectra`]: the explicit spectral integrals attached to each family of
//!   moment-map symbols, in both their radial and moment-coordinate forms.

pub mod domains;
pub mod error;
pub mod group_actions;
pub mod moment;
pub mod quadrature;
pub mod special;
pub mod spectra;
pub mod symplectic;
pub mod toeplitz;

pub use domains::{Domain, Point, TangentVector};
pub use error::Error;
pub use group_actions::{GroupAction, GroupParam, TransportOutcome};
pub use moment::{BetaBasis, Partition, SymbolSpec, WitnessOutcome};
pub use quadrature::{BallRule, GaussRule, QuadratureRule};
pub use spectra::{SpectrumQuery, SpectrumTable};
pub use toeplitz::ToeplitzMatrix;

/// Library version string embedded in CLI reports.
pub fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
