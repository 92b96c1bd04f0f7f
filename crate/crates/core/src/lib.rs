//! Exact computations in graph insertion operads.
//!
//! Linear species over graphs with rational coefficients, the insertion
//! compositions on multigraphs, simple graphs, rooted oriented multigraphs and
//! rooted trees, and the machinery to study them: axiom checks, suboperad
//! closure, generator search, quadratic presentations, Koszul duals and
//! Hilbert series.

pub mod cli;
pub mod error;
pub mod graphs;
pub mod insertion;
pub mod lab;
pub mod presentation;
pub mod rational;
pub mod species;
pub mod subspace;

pub use error::{Error, Result};
pub use rational::Rational;
pub use species::{Bijection, Label, LinComb, Structure};
