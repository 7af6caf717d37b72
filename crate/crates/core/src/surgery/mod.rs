//! Rational surgery slopes, linking-table presentations, Smith normal form,
//! first homology and Kirby moves.

mod group;
mod matrix;
mod moves;
mod presentation;
mod script;
mod slope;

pub use group::AbelianGroup;
pub use matrix::{smith_normal_form, IntMatrix};
pub use moves::{annulus_twist, cable_surgery_reduction, delete_meridional, rolfsen_twist, Cable};
pub use presentation::{hopf_link, unknot, AbstractLinkData, SurgeryPresentation, PRESENTATION_SCHEMA};
pub use script::{apply_move_script, ComponentRef, Move, Trace, TraceStep};
pub use slope::Slope;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::diagram::DiagramError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("0/0 is not a slope")]
    ZeroOverZero,
    #[error("cannot parse slope {0:?} (expected p/q, an integer, or *)")]
    SlopeSyntax(String),
    #[error("cannot parse cable {0:?} (expected a,b)")]
    CableSyntax(String),
    #[error("({a},{b}) is not a cable: need |a| >= 2 and gcd(a,b) = 1")]
    InvalidCable { a: i64, b: i64 },
    #[error("slope {slope} is at distance {distance} from the ({a},{b}) fiber slope; the reduction needs distance 1")]
    CableDistance { slope: String, a: i64, b: i64, distance: BigInt },
    #[error("component {index} out of range ({count} components)")]
    NoSuchComponent { index: usize, count: usize },
    #[error("no component named {0:?}")]
    UnknownName(String),
    #[error("component {0} is unfilled")]
    Unfilled(usize),
    #[error("component {0} carries no unknot annotation")]
    NotUnknot(usize),
    #[error("component {0} has no twist region in the attached diagram")]
    NoRegion(usize),
    #[error("component {0} is not filled along the meridian 1/0")]
    NotMeridional(usize),
    #[error("annulus twist precondition failed: {0}")]
    Annulus(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("linking table disagrees with the attached diagram")]
    DiagramMismatch,
    #[error("script step {step}: {source}")]
    Script { step: usize, source: Box<SurgeryError> },
    #[error("script step {step} changed first homology from {before} to {after}")]
    HomologyChanged { step: usize, before: String, after: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("invalid presentation JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, SurgeryError>;

/// Integer as a JSON number when it fits in i64, otherwise as a decimal string.
pub(crate) fn json_int(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::from(v.to_string()),
    }
}

pub(crate) fn parse_json_int(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| format!("{n} is not an integer")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("{s:?} is not an integer")),
        other => Err(format!("expected an integer, found {other}")),
    }
}
