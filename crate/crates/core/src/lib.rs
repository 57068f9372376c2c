//! Envelope theory for quantum systems of `N` identical particles and of
//! `N_a` identical particles plus one distinct particle, with the
//! oscillation-corrected (improved) variant that fixes the weight `φ` of
//! radial excitations.

pub mod atoms;
pub mod critical;
pub mod error;
pub mod identical;
pub mod laws;
pub mod nplus1;
pub mod oscillators;
pub mod qnum;
pub mod repro;
mod roots;
mod settle;

pub use error::{Error, Result};
pub use laws::{Derivs, Law};
pub use settle::SettledFilling;
