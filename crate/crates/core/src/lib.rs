//! Wigner rotations of a massive spin-1/2 particle in a superposition of
//! counter-propagating momenta.
//!
//! The crate builds the singlet pair with one particle on a standing wave,
//! collapses it on a spin measurement of the partner, carries the standing
//! wave into a frame boosted perpendicular to its momentum, and evaluates what
//! a spin-blind position detector sees there. Two boost semantics are
//! provided: per-component Wigner rotations ([`boost::boost_linear`]), which
//! let the detector statistics depend on the partner's measurement basis, and
//! a single preparation-dependent rotation ([`boost::boost_physical`]), which
//! does not.
//!
//! Units are natural throughout: `hbar = c = m = 1`.

pub mod boost;
pub mod detection;
pub mod error;
pub mod kinematics;
pub mod spin;
pub mod states;
pub mod wavefunction;

pub use error::{Error, Result};
