//! Gauss diagrams of long and closed virtual knots, Reidemeister moves on
//! them, and the loop-index invariants φ_{ijk}, Φ^fr and their surface
//! refinements.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod gauss;
pub mod group_a;
pub mod invariants;
pub mod reidemeister;
pub mod surface;
pub mod torus;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use gauss::{GaussDiagram, PairShape, Region, Sign, Symmetry, Virtualization};
pub use group_a::AElement;
