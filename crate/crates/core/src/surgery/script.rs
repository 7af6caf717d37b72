use std::fmt;

use serde::{Deserialize, Serialize};

use super::moves::{annulus_twist, delete_meridional, rolfsen_twist};
use super::{AbelianGroup, Result, SurgeryError, SurgeryPresentation};

/// A component addressed by position or by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComponentRef {
    Index(usize),
    Name(String),
}

impl ComponentRef {
    pub fn resolve(&self, pres: &SurgeryPresentation) -> Result<usize> {
        match self {
            ComponentRef::Index(i) => {
                pres.check_component(*i)?;
                Ok(*i)
            }
            ComponentRef::Name(n) => pres.index_of(n).ok_or_else(|| SurgeryError::UnknownName(n.clone())),
        }
    }
}

impl From<&str> for ComponentRef {
    fn from(s: &str) -> Self {
        ComponentRef::Name(s.to_string())
    }
}

impl From<usize> for ComponentRef {
    fn from(i: usize) -> Self {
        ComponentRef::Index(i)
    }
}

impl fmt::Display for ComponentRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentRef::Index(i) => write!(f, "#{i}"),
            ComponentRef::Name(n) => f.write_str(n),
        }
    }
}

/// One step of a move script.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    RolfsenTwist { component: ComponentRef, t: i64 },
    DeleteMeridional { component: ComponentRef },
    AnnulusTwist { first: ComponentRef, second: ComponentRef, t: i64 },
}

impl Move {
    pub fn rolfsen(c: impl Into<ComponentRef>, t: i64) -> Move {
        Move::RolfsenTwist { component: c.into(), t }
    }

    pub fn delete(c: impl Into<ComponentRef>) -> Move {
        Move::DeleteMeridional { component: c.into() }
    }

    pub fn annulus(a: impl Into<ComponentRef>, b: impl Into<ComponentRef>, t: i64) -> Move {
        Move::AnnulusTwist { first: a.into(), second: b.into(), t }
    }

    pub fn apply(&self, pres: &SurgeryPresentation) -> Result<SurgeryPresentation> {
        match self {
            Move::RolfsenTwist { component, t } => rolfsen_twist(pres, component.resolve(pres)?, *t),
            Move::DeleteMeridional { component } => delete_meridional(pres, component.resolve(pres)?),
            Move::AnnulusTwist { first, second, t } => {
                annulus_twist(pres, first.resolve(pres)?, second.resolve(pres)?, *t)
            }
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::RolfsenTwist { component, t } => write!(f, "rolfsen_twist({component}, {t})"),
            Move::DeleteMeridional { component } => write!(f, "delete_meridional({component})"),
            Move::AnnulusTwist { first, second, t } => write!(f, "annulus_twist({first}, {second}, {t})"),
        }
    }
}

/// One presentation in a trace, with the move that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(rename = "move")]
    pub applied: Option<Move>,
    pub presentation: serde_json::Value,
    pub h1: AbelianGroup,
    pub ambient_h1: AbelianGroup,
    pub filled: usize,
}

/// Snapshots of every intermediate presentation, starting with the input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Trace(pub Vec<TraceStep>);

impl Trace {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<&TraceStep> {
        self.0.last()
    }
}

fn snapshot(applied: Option<Move>, p: &SurgeryPresentation) -> TraceStep {
    TraceStep {
        applied,
        presentation: p.to_json(false),
        h1: p.first_homology(),
        ambient_h1: p.ambient_homology(),
        filled: p.filled_count(),
    }
}

/// Applies `script` in order, recording every intermediate presentation and
/// checking that first homology never changes.
pub fn apply_move_script(pres: &SurgeryPresentation, script: &[Move]) -> Result<(SurgeryPresentation, Trace)> {
    let mut cur = pres.clone();
    let mut steps = vec![snapshot(None, &cur)];
    let h1 = steps[0].h1.clone();
    for (i, mv) in script.iter().enumerate() {
        cur = mv.apply(&cur).map_err(|e| SurgeryError::Script { step: i, source: Box::new(e) })?;
        let snap = snapshot(Some(mv.clone()), &cur);
        if snap.h1 != h1 {
            return Err(SurgeryError::HomologyChanged { step: i, before: h1.to_string(), after: snap.h1.to_string() });
        }
        steps.push(snap);
    }
    Ok((cur, Trace(steps)))
}
