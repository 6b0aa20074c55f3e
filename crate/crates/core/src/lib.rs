//! Exact twisted equivariant K-theory for finite symmetry groups.
//!
//! The crate classifies twists by twisted group cohomology, splits twisted
//! representation categories into the ten Clifford block types, and assembles
//! K-groups of points and finite G-sets from graded Clifford module monoids.

pub mod error;
pub mod chartable;
pub mod clifford;
pub mod cochain;
pub mod cohomology;
pub mod cyclotomic;
pub mod group;
pub mod kgroup;
pub mod lattice;
pub mod poly;
pub mod qmat;
pub mod rep;
pub mod superalgebra;
pub mod sweep;

pub use error::{Error, Result};
pub use group::{CentralExtension, FiniteGroup, GSet, Z2Hom};
pub use lattice::AbelianGroupPresentation;
pub use cochain::{Cochain, CoefficientModule, TwistDatum};
