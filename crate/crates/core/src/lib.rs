//! Distorted odds Marshall-Olkin (d-oMO) and enlarged log-logistic (ELL)
//! distribution families, with grid-based checkers for stochastic orders
//! and shape classes, a registry of order/shape results with a seeded
//! verification sweep, and a Monte Carlo check of geometric extreme
//! stability.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the
//! textual distribution grammar and the command-line front end live in the
//! companion `oddsmo` crate.
#![no_std]
#![deny(rustdoc::broken_intra_doc_links)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod baseline;
pub mod dist;
pub mod domo;
pub mod ell;
pub mod error;
pub mod law;
pub mod orders;
pub mod params;
pub mod quad;
pub mod sampling;
pub mod special;
pub mod stability;
pub mod theorems;

pub use baseline::{Baseline, ProfilePoint};
pub use dist::{Capabilities, ContinuousDistribution};
pub use domo::DistortedOdds;
pub use ell::EnlargedLogLogistic;
pub use error::{Error, Result};
pub use law::Law;
pub use orders::{GridSpec, OrderStatus, OrderVerdict, Relation, ShapeClass, ShapeReport};
pub use params::ParamTriple;
pub use stability::StabilityReport;
