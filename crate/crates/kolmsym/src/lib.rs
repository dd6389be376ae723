//! Symbolic-numeric symmetry analysis of the Kolmogorov equation
//! u_t + x·u_y = u_xx.
//!
//! The crate implements and machine-verifies the full symmetry apparatus of
//! this ultraparabolic equation: its essential Lie invariance algebra and
//! point symmetry group, the inequivalent Lie reductions of codimension one
//! and two, a catalog of exact solutions in closed and special-function form,
//! and the point-transformation bridges to two Kramers equations and to the
//! heat equation with inverse-square potential.
//!
//! Structure:
//! - [`sympoly`]: exact Laurent-polynomial algebra with jet variables.
//! - [`liealg`]: vector fields, brackets, prolongations, structure tables.
//! - [`taylor`]: univariate truncated Taylor arithmetic (real and complex).
//! - [`specfun`]: Airy, Bessel, Kummer, and Whittaker functions.
//! - [`jetcalc`]: forward-mode degree-2 jets and PDE residual sampling.
//! - [`group`]: the point symmetry group as parameter tuples with exact
//!   composition and action on solutions.
//! - [`catalog`]: the exact-solution catalog.
//! - [`reduce`]: Lie reductions and mapped potential forms.
//! - [`heatisq`]: the inverse-square-potential heat equation companion.
//! - [`kramers`]: the two Kramers equations linked by point transformations.

pub mod sympoly;

pub mod liealg;
pub mod taylor;
pub mod specfun;
pub mod jetcalc;
pub mod group;
pub mod heatisq;
pub mod catalog;
pub mod reduce;
pub mod kramers;
