//! Exact-arithmetic toolkit for studying how many edges can be deleted from a
//! complete geometric graph before every non-crossing perfect matching is gone.
//!
//! The crate is organised bottom-up:
//!
//! * [`geom`]: integer points, orientation, crossing tests, convex hulls.
//! * [`ham_sandwich`]: discrete ham-sandwich cuts and the recursive balanced
//!   subdivision used by the resilient matcher.
//! * [`matcher`]: the brute-force oracle and every constructive matching solver.
//! * [`blocking`]: removal sets, blocking decisions, structure verification,
//!   exact minimum blocking size and the odd-split construction.
//! * [`extremal`]: generators for the named extremal configurations.
//! * [`lattice`]: lattice-triangle covering and inscribing of convex bodies.
//! * [`lab`]: seeded Monte Carlo experiments.
//! * [`io`]: the plain-text file formats shared with the command line tool.

pub mod blocking;
pub mod error;
pub mod extremal;
pub mod geom;
pub mod ham_sandwich;
pub mod io;
pub mod lab;
pub mod lattice;
pub mod matcher;

pub use blocking::{RemovalSet, StructureReport, HgResult};
pub use error::{Error, Result};
pub use geom::{EdgeRef, Orientation, Point, PointSet};
pub use ham_sandwich::{Cut, Side, SubdivisionNode, SubdivisionTree};
pub use matcher::{Coloring, Matching};
