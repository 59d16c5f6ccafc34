//! Exact dynamics and quantum correlations of two-qubit X states.
//!
//! A pair of coupled spins driven by local fields along z keeps any X-shaped
//! density matrix X-shaped, so the whole evolution reduces to the four
//! propagator amplitudes `a±`, `b±`. On top of that this crate provides
//! closed-form concurrence, quantum discord and fidelity, plus brute-force
//! references ([`oracles`]) that check every closed form independently.
//!
//! Basis order is always |00⟩, |01⟩, |10⟩, |11⟩.

pub mod correlations;
pub mod dynamics;
pub mod error;
pub mod oracles;
pub mod sampling;
pub mod smallmat;
pub mod states;

pub use error::{Error, Result};
