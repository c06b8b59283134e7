//! Workbench for domination and power domination on triangulated plane
//! graphs.
//!
//! The crate models Planar Monotone 3-SAT instances with their rectilinear
//! layout, builds the two gadget reductions (domination and power
//! domination), embeds them following the layout, triangulates the result
//! without touching a protected vertex set, and checks the size-n
//! equivalences with exact solvers.

pub mod embed;
pub mod instance;
pub mod planegraph;
pub mod rat;
pub mod reductions;
pub mod report;
pub mod solvers;
pub mod triangulate;
pub mod workbench;
