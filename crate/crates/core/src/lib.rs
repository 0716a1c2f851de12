//! Finite topological spaces, their sobrification, compact saturated sets and
//! the class `R(X)`, plus two symbolic non-sober spaces on the naturals.
//!
//! The finite side stores a space as its family of open sets and derives
//! everything else from it; [`census`] runs the property suites over every
//! topology on a few points. The [`symbolic`] module covers the cofinite and
//! upper-segment topologies on `ℕ`, where compact saturated sets and `R(X)`
//! part ways.
//!
//! ```
//! use soberlab::{sobrification::{sobrify, verify_sobrification}, space::named};
//!
//! let x = named::sierpinski();
//! let sob = sobrify(&x);
//! let report = verify_sobrification(&x, &sob).unwrap();
//! assert!(report.pass);
//! ```

pub mod census;
pub mod cli;
pub mod frame;
pub mod rclass;
pub mod report;
pub mod sobrification;
pub mod space;
pub mod subset;
pub mod symbolic;

pub use space::{validate_space, Preorder, Properties, Space, SpaceError, SpaceFile};
pub use subset::Subset;
