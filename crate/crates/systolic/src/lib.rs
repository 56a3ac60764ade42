//! Decision procedures for systolic fat graphs.
//!
//! A decorated fat graph is a half-edge combinatorial map in which every node
//! has even valence at least four, possibly together with bare circle
//! components. This crate decides whether such a graph admits a metric making
//! all of its standard cycles (the cycles that run straight through every
//! node) the unique shortest cycles, and produces either a witness metric or
//! an obstruction certificate. It also ships the graph families used to
//! exercise the decision procedure, trivalent and uni-trivalent generators of
//! prescribed girth, and closed-form hyperbolic pants formulas used to plan
//! capping surfaces.
//!
//! The crate is organised around the pipeline:
//!
//! * [`fatgraph`] — graph representation, validation, standard cycles,
//!   cycle deletion with valence-two smoothing;
//! * [`cycles`] — exhaustive simple-cycle enumeration and classification;
//! * [`admissibility`] — exact rational feasibility with a strictness
//!   margin, metric verification, minimality;
//! * [`topology`] — intersection ribbon graphs, face tracing, genus, and
//!   the vertex/face obstruction certificate;
//! * [`generators`] — graph families and a girth oracle;
//! * [`hyperbolic`] — pants heights, quasi-geodesic constants, capping
//!   arithmetic;
//! * [`mod@format`] — text formats for graphs and metrics.
//!
//! Verdict-bearing arithmetic is exact (`BigRational` throughout the solver);
//! the hyperbolic formulas are plain `f64` evaluators.
//!
//! With the default `parallel` feature the data-parallel inner loops (cycle
//! enumeration, girth BFS sweeps, per-deletion minimality checks) run on
//! rayon; disabling the feature, or calling [`exec::set_parallel`], falls
//! back to sequential execution with identical results.

pub mod admissibility;
pub mod cycles;
mod error;
pub mod exec;
pub mod fatgraph;
pub mod format;
pub mod generators;
pub mod hyperbolic;
pub mod simplex;
pub mod topology;

pub use error::Error;

/// Exact rational scalar used by every verdict-bearing computation.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
