//! Teleportation of an entangled qubit pair through two thermal XXZ dimers,
//! each embedded in an infinite Ising-XXZ diamond chain.
//!
//! The pipeline runs bottom-up:
//!
//! 1. [`model`]: dimer spectrum for frozen nodal Ising spins.
//! 2. [`channel`]: thermodynamic-limit dimer state via the nodal transfer matrix.
//! 3. [`teleport`]: teleported output state, closed form and Pauli-sum form.
//! 4. [`measures`]: concurrences, fidelity, average fidelity.
//! 5. [`scan`]: point evaluation, sweeps, thresholds and contours as CSV rows.
//!
//! [`oracle`] holds independent brute-force versions of each closed form and
//! [`validate`] runs them against each other.
//!
//! ```
//! use xxz_teleport::{channel::channel_density, measures::MeasureSet, model::ModelParams,
//!     teleport::InputState};
//!
//! let params = ModelParams::new(1.0, 2.0, 0.0)?;
//! let rho = channel_density(&params, 0.1)?;
//! let m = MeasureSet::evaluate(&rho, &InputState::maximal());
//! assert!(m.is_quantum());
//! # Ok::<(), xxz_teleport::Error>(())
//! ```

pub mod channel;
pub mod config;
mod error;
pub mod measures;
pub mod model;
pub mod oracle;
pub mod scan;
pub mod teleport;
pub mod validate;

pub use error::{Error, Result};
