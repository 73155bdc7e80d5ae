//! Cluster structures on double Bruhat cells of `GL_n` and their
//! Donaldson-Thomas transformation, computed in exact arithmetic.
//!
//! The crate is organized bottom-up:
//! - [`weyl`]: permutations, signed reduced words and word moves;
//! - [`exactalg`]: Laurent polynomials, rational functions, matrices;
//! - [`plabic`]: the bipartite graph of a word, strands, face labels, quivers, paths;
//! - [`cluster`]: seeds, mutations, the p-map and cluster transformations;
//! - [`dtengine`]: amalgamation, face minors, the closed form of DT, the
//!   mutation planner and the tropical certification.

pub mod cluster;
pub mod dtengine;
pub mod exactalg;
pub mod plabic;
pub mod weyl;
