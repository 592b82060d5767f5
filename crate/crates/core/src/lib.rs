//! Cut graphs of polyhedral 2-manifolds.
//!
//! A cut graph is a subgraph of a surface mesh's 1-skeleton whose removal
//! leaves a single topological disk. The crate provides exact minimum cut
//! graphs for small meshes, a greedy approximation built on shortest
//! non-separating cycles and puncture-spanning trees, and the supporting
//! surgery, cycle-search and generator machinery.

pub mod cycles;
pub mod error;
pub mod exact;
pub mod gen;
pub mod greedy;
pub mod mesh;
pub mod off;
pub mod paths;
pub mod punctures;
pub mod topology;
pub mod unionfind;

pub use error::{Error, Result};
pub use mesh::{Cost, Mesh, PerturbedWeights};
pub use topology::{CutGraph, SurfaceInvariants};
