//! Exact invariant theory for ADE rational double points.

pub mod cache;
pub mod classify;
pub mod combinat;
pub mod congruence;
pub mod distpoly;
pub mod envres;
pub mod golden;
pub mod invariance;
pub mod linalg;
pub mod poly;
pub mod rootsys;
pub mod solvelist;
pub mod verify;
