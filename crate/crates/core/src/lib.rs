//! Reidemeister move engine, hard-diagram search and gadget constructions
//! for classical link diagrams on the sphere.

pub mod catalog;
pub mod constructions;
pub mod diagram;
pub mod error;
pub mod exec;
pub mod invariants;
pub mod moves;
pub mod render;
pub mod search;

pub use catalog::{LinkCatalog, LinkClass};
pub use diagram::{CanonicalCode, Dart, Diagram, Face, Symmetry};
pub use error::{Error, Result};
pub use invariants::{Fingerprint, Laurent};
pub use moves::{MoveKind, MoveKinds, MoveSite, TriangleClass};
