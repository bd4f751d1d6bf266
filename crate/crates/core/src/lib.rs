//! Exact and numeric toolkit for 1-parameter families of almost complex
//! structures on low-dimensional nilpotent and solvable Lie algebras.
//!
//! The crate verifies, symbolically over the field of rational functions with
//! coefficients in Q(sqrt2, sqrt3) and numerically in floats, that the shipped
//! catalog families J_t square to -I and have Nijenhuis tensor decaying to
//! zero as t grows. It also computes Chevalley-Eilenberg cohomology, checks
//! symplectic and almost Kaehler structures, and implements a projected
//! gradient descent on the variety {J : J^2 = -I} minimizing the Nijenhuis
//! norm.

pub mod acstruct;
pub mod forms;
pub mod liealg;
pub mod matrix;
pub mod numopt;
pub mod scalar;
