//! Simulation core for invariant-based shortcut-to-adiabatic-passage phase gates
//! in cavity QED.
//!
//! The crate covers the full pipeline:
//!
//! - [`hilbert`]: composite Hilbert spaces of N five-level atoms plus one
//!   truncated cavity mode, with dense complex vectors/operators.
//! - [`invariant`]: Lewis-Riesenfeld invariants, inverse-engineered pulse
//!   pairs, LR phases by quadrature, and the closed-form one-qubit final state.
//! - [`models`]: declarative time-dependent Hamiltonians (laser drives +
//!   cavity couplings), quantum Zeno reduction onto coupling zero-subspaces,
//!   and dark states for bystander analysis.
//! - [`dynamics`]: fixed-step RK4 integration of the Schrödinger and Lindblad
//!   equations, observables, fidelities, and 2D parameter sweeps.
//! - [`gates`]: multi-step controlled-phase gate plans (1, 2, 3, and n+1
//!   qubits), executed over every computational-basis input and scored
//!   against the ideal diagonal gate.
//!
//! Everything is `no_std` + `alloc`; all frequencies are in units of the
//! cavity coupling `g` and all times in units of `1/g` (ħ = 1).

#![cfg_attr(not(test), no_std)]
// Float-math trait imports are only consumed by the no_std build (std builds
// resolve the inherent f64 methods first).
#![cfg_attr(test, allow(unused_imports))]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod dynamics;
pub mod gates;
pub mod hilbert;
pub mod invariant;
pub mod linalg;
pub mod models;

use alloc::string::String;

pub use linalg::{CMat, C64};

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Invalid argument or configuration value.
    Parameter(String),
    /// Shape/space mismatch between operands.
    Dimension(String),
    /// A numerical contract was violated (norm/trace drift, quadrature
    /// non-convergence, ...).
    Accuracy(String),
    /// The requested quantity is only defined for a restricted input family.
    Unsupported(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::Parameter(m) => write!(f, "parameter error: {m}"),
            Error::Dimension(m) => write!(f, "dimension mismatch: {m}"),
            Error::Accuracy(m) => write!(f, "numerical-accuracy error: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported input: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn param_err<T>(msg: impl core::fmt::Display) -> Result<T> {
    Err(Error::Parameter(alloc::format!("{msg}")))
}

pub(crate) fn dim_err<T>(msg: impl core::fmt::Display) -> Result<T> {
    Err(Error::Dimension(alloc::format!("{msg}")))
}
