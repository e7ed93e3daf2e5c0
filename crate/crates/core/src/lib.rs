//! Covering, identifying, locating-dominating, local identifying and local
//! locating-dominating codes on finite graphs, binary hypercubes and tori of
//! the square, hexagonal, triangular and king grids.

pub mod bounds;
pub mod check;
pub mod codes;
pub mod constructions;
pub mod graph;
pub mod io;
pub mod solver;
