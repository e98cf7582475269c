//! Exact simulation of boson and fermion pairs in linear mode networks.
//!
//! States are superpositions of occupation-number kets over composite
//! `(path, label)` modes. Beamsplitters and phase shifters act on creation
//! operators; [`apply`] substitutes and expands operator products, while the
//! [`oracle`] module computes the same amplitudes from permanents and
//! determinants without touching the expansion code.
//!
//! ```
//! use pairsim_core::{detect, evaluate, Circuit, State, Statistics};
//!
//! let out = evaluate(
//!     &Circuit::fifty_fifty(Statistics::Boson),
//!     &State::fock(Statistics::Boson, &[1, 1]).unwrap(),
//! )
//! .unwrap();
//! assert!(detect(&out).probability(&[1, 1]) < 1e-12);
//! ```

pub mod catalog;
pub mod circuit;
pub mod distinguishability;
pub mod error;
pub mod fock;
pub mod oracle;
pub mod transform;

pub use catalog::{scenario_catalog, Expected, Scenario, ScenarioReport};
pub use circuit::{detect, evaluate, Circuit, Element};
pub use distinguishability::{
    inject_pair, trace_labels, DetectionDistribution, Injection, Overlap, PathPattern,
};
pub use error::{Error, Result};
pub use fock::{
    monomial_to_state, normal_order, state_norm, Mode, Monomial, Occupation, State, Statistics,
    DROP_THRESHOLD, TOLERANCE,
};
pub use transform::{apply, beamsplitter, compose, phase_shift, ModeMap, FIFTY_FIFTY, MAX_PARTICLES};

pub use num_complex::Complex64;
