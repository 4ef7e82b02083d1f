//! Simulation toolkit for the kicked golden-mean rotor and its quantization.
//!
//! The classical system is the cylinder map `f = Φ∘κ`: an instantaneous
//! momentum kick generated by a tent-map potential, followed by a rigid
//! rotation whose angle is `2π` times the golden mean. The quantum system
//! is the corresponding Floquet operator `F = Φ′∘κ′` acting on truncated
//! Fourier coefficient vectors. The crate provides
//!
//! * exact Fibonacci/convergent arithmetic and circle-rotation orbit
//!   counting ([`goldenmean`]),
//! * the classical map, exact piecewise-linear kick sums, and the
//!   interval-exact diffusion measure ([`classical`]),
//! * the quantum step with two independent kick implementations and a
//!   closed-form `n`-step evolution ([`quantum`]),
//! * the projection `Λ` from quantum states to the cylinder together with
//!   the paired observables `u` and `v` ([`quasiconjugacy`]).
//!
//! All angle-critical arithmetic goes through a 128-bit fixed-point
//! representation of the circle so that golden-mean orbits retain well over
//! 30 significant digits across millions of steps.

pub mod classical;
pub mod error;
mod fixed;
pub mod goldenmean;
pub mod quantum;
pub mod quasiconjugacy;

pub use classical::{ClassicalState, ModelParams, PiecewiseLinear, TrinomialModel};
pub use error::{Error, Result};
pub use goldenmean::{Convergent, FibDecomposition};
pub use quantum::{
    EvolutionRecord, FloquetOperator, KickMethod, KickMultiplier, KickOutcome, QuantumState,
};
pub use quasiconjugacy::{CorrespondenceStep, CorrespondenceTrace, RegionLabel};
