//! Dempster–Shafer evidence on finite frames and the AU measure of total
//! uncertainty: the maximum Shannon entropy over all probability
//! distributions that dominate a belief function.
//!
//! * [`frame`]: frames, subset bitmasks, partitions, product frames.
//! * [`evidence`]: mass and belief functions, projection, relabeling,
//!   expansion, mass transfer and non-interactive products.
//! * [`credal`]: dominance checks, allocations of focal masses, sampling.
//! * [`au`]: the exact AU computation and an independent numerical oracle.
//! * [`axioms`]: executable requirements for any candidate measure.
//! * [`document`]: the JSON document format.
//!
//! ```
//! use au_core::{au::au, document::parse_bpa};
//!
//! let m = parse_bpa(r#"{"frame": ["a", "b"],
//!     "focal": [{"set": ["a"], "mass": 0.2}, {"set": ["b"], "mass": 0.5},
//!               {"set": ["a", "b"], "mass": 0.3}]}"#).unwrap();
//! assert!((au(&m).value - 1.0).abs() < 1e-12);
//! ```

pub mod au;
pub mod axioms;
pub mod credal;
pub mod document;
pub mod error;
pub mod evidence;
pub mod frame;
pub mod lattice;

pub use error::{Error, Result};
pub use evidence::{BeliefFunction, MassFunction, ProbabilityVector};
pub use frame::{Frame, Partition, SubsetMask};
