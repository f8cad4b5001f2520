use thiserror::Error;

use crate::geom::{EdgeRef, Point};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coordinate ({x}, {y}) exceeds the grid bound {bound}")]
    CoordinateRange { x: i64, y: i64, bound: i64 },

    #[error("duplicate point ({}, {})", .0.x, .0.y)]
    DuplicatePoint(Point),

    #[error("points {0:?} are collinear")]
    NotGeneralPosition([usize; 3]),

    #[error("edge ({i}, {j}) is invalid for a set of {len} points")]
    InvalidEdge { i: usize, j: usize, len: usize },

    #[error("edge {0} listed twice")]
    DuplicateEdge(EdgeRef),

    #[error("input is empty")]
    EmptyInput,

    #[error("expected an even number of points, got {0}")]
    OddInput(usize),

    #[error("input of size {size} exceeds the exhaustive-search guard {limit}")]
    TooLarge { size: u128, limit: u128 },

    #[error("no ham-sandwich cut found; input violates the symbolic general-position contract")]
    NoCutFound,

    #[error("colour classes differ in size: {red} red, {blue} blue")]
    Unbalanced { red: usize, blue: usize },

    #[error("more red points ({red}) than blue points ({blue})")]
    RedMajority { red: usize, blue: usize },

    #[error("forbidden edge {0} is not red-red")]
    BadForbidden(EdgeRef),

    #[error("{edges} removed edges exceed the limit {limit}")]
    TooManyEdges { edges: usize, limit: usize },

    #[error("expected exactly {expected} removed edges, got {actual}")]
    WrongSize { expected: usize, actual: usize },

    #[error("vertex {0} is not on the convex hull")]
    NotHullVertex(usize),

    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("region has about {cells} grid cells, fewer than 4n^2 = {needed}")]
    RegionTooSmall { cells: f64, needed: f64 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
