//! Reachable regions of a forward-only, curvature-bounded vehicle inside a
//! convex polygon.
//!
//! Lengths are normalized so the minimum turning radius is 1.

mod arrangement;
pub mod boundary_reach;
pub mod canonical;
pub mod error;
pub mod filling;
pub mod geometry;
pub mod oracle;
pub mod polygon;
pub mod region;
pub mod witness;

pub use canonical::{reach, ReachResult};
pub use error::{ReachError, Result};
pub use geometry::{Configuration, Direction, Point, Tolerance, UnitDisk};
pub use oracle::{oracle_reach, GridSpec, OracleAnswer, ReachGrid};
pub use polygon::{BoundaryConfiguration, ConvexPolygon};
pub use region::{union, ArcGon, Element, Membership};
pub use witness::{dubins_shortest, validate_path, witness_path, CurvaturePath, PathValidation, Primitive, Turn};
