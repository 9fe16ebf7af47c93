//! Exact-arithmetic library for the group of orientation-preserving
//! piecewise-linear homeomorphisms of the unit interval with finitely many
//! slope breaks, under composition (right actions, composed left to right).
//!
//! The crate represents group elements as canonical breakpoint lists over
//! arbitrary-precision rationals ([`plmap`]), computes their one-dimensional
//! dynamics — supports, orbitals, fixed sets, fundamental domains
//! ([`dynamics`]) — detects structural configurations such as transition
//! chains, towers and mutual efficiency ([`structures`]), constructs the
//! standard two-generator group and its wreath-product families with
//! machine-checkable certificates ([`builders`]), runs the constructive
//! embedding pipelines ([`embedproc`]), and performs bounded word-ball
//! analysis ([`analyzer`]).
//!
//! Everything is exact: there is no floating point anywhere in the core.

pub mod analyzer;
pub mod builders;
pub mod dynamics;
pub mod embedproc;
pub mod plmap;
pub mod rational;
pub mod structures;
pub mod word;

pub use plmap::{Breakpoint, PLMap, PLMapError};
pub use rational::Rational;
