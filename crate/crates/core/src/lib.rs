//! Lowest-order virtual element solver for two-dimensional parabolic
//! obstacle problems on general polygonal meshes.
//!
//! The crate is organized bottom-up:
//!
//! * [`geometry`] — polygonal meshes, the three generator families,
//!   regularity checks and mesh file I/O,
//! * [`quadrature`] / [`basis`] — exact polynomial integration over
//!   polygons and the scaled monomial moment matrices,
//! * [`projectors`] — the element-local dof matrix and the two
//!   polynomial projectors used by the discretization,
//! * [`assembly`] — stabilized local mass/stiffness/load and global
//!   sparse operators with Dirichlet handling,
//! * [`solver`] — projected SOR and projected gradient for the
//!   per-step linear complementarity problem,
//! * [`stepper`] — constrained implicit Euler time stepping,
//! * [`problem`] — the oscillating-circle benchmark with its exact
//!   solution and forcing,
//! * [`analysis`] — relative error norms and convergence-rate fitting.

pub mod analysis;
pub mod assembly;
pub mod basis;
pub mod geometry;
pub mod problem;
pub mod projectors;
pub mod quadrature;
pub mod solver;
pub mod sparse;
pub mod stepper;
