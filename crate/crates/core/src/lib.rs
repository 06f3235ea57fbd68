//! Exact verification of Conway–Gordon type identities on spatial complete
//! graphs and on `K_{3,3,1}`.

pub mod cli;
pub mod combinatorics;
pub mod geometry;
pub mod invariants;
pub mod theorems;
