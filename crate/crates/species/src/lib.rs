//! Exact counting of labeled and unlabeled combinatorial structures.
//!
//! The crate has two independent halves that are required to agree:
//!
//! - a symbolic half ([`series`], [`kernel`], [`twosort`]) that manipulates
//!   truncated cycle-index series with exact rational coefficients, and
//! - an enumeration half ([`oracle`]) that builds every structure explicitly
//!   on small label sets and counts orbits by actually partitioning them.
//!
//! [`verify`] runs the cross-checks between the two halves; the `species`
//! binary exposes the whole thing on the command line.

pub mod expr;
pub mod kernel;
pub mod oracle;
pub mod rational;
pub mod series;
pub mod twosort;
pub mod verify;

pub use expr::{Atom, SpeciesExpr};
pub use kernel::{CycleIndex, KernelError};
pub use rational::Rational;
pub use series::{Caps, Monomial, SeriesError, TruncatedSeries, VarId};
