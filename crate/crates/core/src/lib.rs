//! Ground-state energies for the flat-bottomed potential family
//! V(x) = μ·|x/a|^N.
//!
//! A generalized-Gaussian trial state ψ = A·e^{−α|x/a|^β}, with β fixed by
//! asymptotic matching and α by the well strength, gives an energy estimate
//! of the form C·(ħ²/ma²)^{1−1/β}·μ^{1/β} for every exponent N ≥ 2. The
//! [`trial`] module evaluates that estimate through two independent
//! backends (closed-form Gamma functions and adaptive quadrature), and the
//! [`solver`] module provides a finite-difference eigensolver as an
//! accuracy baseline that never touches the trial machinery.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the
//! command-line front end live in the companion `flatwell` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod known;
mod math;
pub mod numerics;
pub mod potential;
pub mod solver;
pub mod trial;

pub use error::{Error, Result};
pub use known::KnownValue;
pub use numerics::QuadratureResult;
pub use potential::{PhysicalConstants, Potential, ReducedForm, ReducedProblem};
pub use solver::{ReferenceSolution, TridiagonalOperator};
pub use trial::{Backend, EnergyEstimate, Method, Source, TrialParams, WavefunctionSamples};
