//! One-dimensional cancellative particle systems over GF(2).
//!
//! The crate provides the operator algebra of finite GF(2) matrices acting on
//! two-valued lattice configurations, the mechanical construction of dual and
//! interface models from a rate table, an exact finite-ring Markov engine
//! that verifies the duality identities by uniformization, and event-driven
//! Monte Carlo estimators for interface tightness, the associated harmonic
//! function, clustering and survival.

pub mod bits;
pub mod config;
pub mod error;
pub mod exact;
pub mod lattice;
pub mod models;
pub mod ops;

pub use config::{pairing_admissible, Config, ConfigLiteral, PairingClass, Side};
pub use error::{Error, Result};
pub use lattice::{DoubledIndex, Lattice, SiteParity};
pub use models::{
    diagram_closure, rebellious_table, tables_congruent, Diagram, FlipKind, FlipRateModel, Model,
    ModelSpec, RateTable, TableEntry,
};
pub use ops::{duality_parity, LocalOp};
