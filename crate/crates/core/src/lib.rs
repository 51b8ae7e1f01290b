//! Exact kernel for two-dimensional diffusion orthogonal polynomial systems:
//! polynomial algebra, the algebraic boundary conditions, local branches,
//! densities, the solution catalog and spectral checks.

#![no_std]
// dense numeric kernels read better with explicit indices
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod algdop;
pub mod branches;
pub mod catalog;
pub mod curvature;
pub mod density;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;
pub mod spectral;
pub mod upoly;

pub use poly::{NewtonPolygon, RatPoly2, Weights};
pub use rational::Rational;
