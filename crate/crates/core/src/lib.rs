//! Finite T0 spaces as posets, and the group-realizing spaces built from a
//! finite group with a chosen set of generators.
//!
//! The crate is organised bottom-up:
//!
//! - [`poset`]: finite posets with materialized reachability, beat points,
//!   connectivity, and order-preserving maps.
//! - [`iso`]: isomorphism and automorphism search by partition refinement
//!   plus backtracking.
//! - [`group`]: Cayley-table groups, generating sets, built-in families and
//!   small-group isomorphism testing.
//! - [`construction`]: the base space `X_G`, its gadget-decorated variants
//!   and the pointed version, plus collapse maps between the `Tⁿ` variants.
//! - [`homotopy`]: cores, automorphism groups, brute-force self-map
//!   enumeration and fence-homotopy classes, comparative retractions.
//! - [`mccord`]: order complexes, integral homology in low degrees, and the
//!   action of automorphisms on first homology.
//! - [`format`]: the flat JSON documents used to persist posets, groups and
//!   complexes.

pub mod construction;
pub mod error;
pub mod format;
pub mod group;
pub mod homotopy;
pub mod iso;
pub mod mccord;
pub mod poset;
pub mod report;
pub mod snf;

pub use construction::{ConstructionSpec, GadgetMode};
pub use error::Error;
pub use group::{FiniteGroup, GeneratingSet};
pub use poset::{BasePoint, FinitePoset, PointLabel, PosetMap};
pub use report::{CheckRecord, CheckStatus, VerificationReport};
