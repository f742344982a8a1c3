//! Online fair division of indivisible goods.
//!
//! Goods arrive one at a time and must be assigned on arrival. The crate has
//! exact rational valuations, verifiers for EF1, EFX, PROP1 and MMS, online
//! allocators for three kinds of advice (none, totals, frequency
//! predictions), adaptive adversaries that certify upper bounds on what any
//! online algorithm can achieve, and wrappers for noisy advice.

pub mod adversaries;
pub mod algorithms;
pub mod augmented;
pub mod cli;
pub mod error;
pub mod fairness;
pub mod frequency;
pub mod gen;
pub mod harness;
pub mod model;
pub mod online;
pub mod value;

pub use algorithms::Algorithm;
pub use error::{FairError, Result};
pub use fairness::{BruteForceBudget, FairnessReport, MmsOutcome, Property};
pub use harness::{run_match, run_match_with, run_stream, Adversary, Bound, Emit, OnlineAllocator, Transcript};
pub use model::{Advice, AdviceKind, Allocation, Instance};
pub use value::{golden_geq, golden_leq, ExtendedFactor, Value};
