//! Graph separation boosting over simple base classes, exact γ-realizability
//! certificates, and a small lab for checking weak-learning bounds on tiny
//! instances.
//!
//! The crate is organised bottom-up:
//!
//! * [`sample`], [`rational`], [`rng`]: shared domain types and arithmetic.
//! * [`base_classes`]: thresholds, decision stumps, halfspaces and explicit
//!   finite classes, with exact restriction enumeration and VC calculators.
//! * [`lp`] and [`realizability`]: an exact rational simplex and the minmax
//!   game behind γ*.
//! * [`boost`] and [`adaboost`]: the graph separation booster and the
//!   weighted-majority baseline.
//! * [`gamma_vc`] and [`discrepancy`]: brute-force γ-shattering, Hadamard
//!   witnesses, composition bounds and discrepancy identities.
//! * [`bench`]: seeded task generators and the experiment harness.

pub mod adaboost;
pub mod base_classes;
pub mod bench;
pub mod boost;
pub mod discrepancy;
mod error;
pub mod gamma_vc;
pub mod io;
pub mod lp;
pub mod par;
pub mod rational;
pub mod realizability;
pub mod rng;
pub mod sample;
pub mod selftest;

pub use base_classes::{BaseClassSpec, ClassKind, FiniteClass, HypothesisDesc, Restriction};
pub use error::{Error, Result};
pub use par::Exec;
pub use rational::Rational;
pub use rng::Rng;
pub use sample::{correlation, signature, LabeledSample, Pattern, Point, SampleDistribution};
