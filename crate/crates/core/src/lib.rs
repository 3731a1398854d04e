//! The Burge correspondence between simple labelled graphs and semistandard
//! Young tableaux of threshold shape.
//!
//! The crate is layered bottom-up:
//!
//! * [`partition`]: partitions, Young diagram cells, threshold/hook
//!   predicates and dominance order.
//! * [`tableau`]: semistandard tableaux, Schensted row insertion and
//!   reverse bumping, reading words and standardization.
//! * [`graph`]: simple graphs and their Burge arrays.
//! * [`burge`]: the insertion/recording algorithm and its inverse.
//! * [`pvfree`]: peak and valley patterns, which detect hook shapes.
//! * [`crystal`]: crystal operators on tableaux and on PV-free Burge
//!   arrays, crystal graph generation and Stembridge axiom checking.
//! * [`verify`]: exhaustive checks of every identity above at small sizes.

#![forbid(unsafe_code)]

pub mod burge;
pub mod crystal;
pub mod error;
pub mod graph;
pub mod partition;
pub mod pvfree;
pub mod tableau;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{BurgeArray, SimpleGraph};
pub use partition::{Cell, Partition};
pub use tableau::{Tableau, Word};
