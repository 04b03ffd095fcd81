//! Exact sum-of-squares certification toolkit.
//!
//! Builds Gram-matrix semidefinite formulations of polynomial nonnegativity
//! problems from sparse multivariate polynomials, reduces them by sign and
//! swap symmetries, solves them numerically with a small dense interior-point
//! method, rounds solutions to exact rational certificates, and verifies the
//! resulting identities in exact arithmetic.

pub mod poly;
