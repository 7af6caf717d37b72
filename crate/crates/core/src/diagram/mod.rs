//! Oriented link diagrams.
//!
//! Diagrams are stored in PD form: every crossing is a 4-tuple of edge labels
//! listed counterclockwise, starting with the incoming under-strand. A
//! crossing is positive (right-handed) when the over-strand runs from the
//! fourth slot to the second.

mod dt;
mod link;
mod pd;
mod twist;

pub use dt::dt_export;
pub use link::{Component, Crossing, LinkDiagram, Port, LINK_SCHEMA};
pub use pd::{parse_pd, serialize_pd};
pub use twist::{insert_full_twists, insert_full_twists_mapped, Strand, TwistOutcome, TwistRegion};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("arc {label} appears {count} times (expected 2)")]
    ArcMultiplicity { label: u32, count: usize },
    #[error("arc labels must be positive integers")]
    ZeroLabel,
    #[error("component through arc {label} is not a consistently oriented cycle")]
    NonCyclic { label: u32 },
    #[error("component index {index} out of range ({count} components)")]
    NoSuchComponent { index: usize, count: usize },
    #[error("linking number needs two distinct components (got {0} twice)")]
    SameComponent(usize),
    #[error("expected a knot (1 component), found {0} components")]
    NotAKnot(usize),
    #[error("twist region references arc {0}, which is not in the diagram")]
    StaleArc(u32),
    #[error("twist region lists arc {0} more than once")]
    DuplicateStrand(u32),
    #[error("twist region strand direction must be +1 or -1")]
    BadDirection,
    #[error("diagram is not planar: crossing parity check failed during DT walk")]
    NonPlanar,
    #[error("invalid diagram JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, DiagramError>;
