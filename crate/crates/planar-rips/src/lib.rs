//! Vietoris-Rips complexes of planar point sets.
//!
//! The library builds the clique complex of a unit disk graph over exact
//! rational coordinates, classifies its structure (cross-polytope spheres,
//! iterated chains, octahedral census, homology), searches graphs for
//! obstructions to unit-disk realizability, and attempts numerical
//! realization of abstract graphs as unit disk graphs.

pub mod campaign;
pub mod classify;
pub mod complex;
pub mod geom;
pub mod homology;
pub mod io;
pub mod obstructions;
pub mod realizer;
pub mod rips;
