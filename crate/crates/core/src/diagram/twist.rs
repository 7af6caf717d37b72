use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{Component, Crossing, DiagramError, LinkDiagram, Result};

/// One edge crossing a twist region's slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strand {
    pub arc: u32,
    /// +1 when the edge crosses the slice towards its "up" side, -1 otherwise.
    pub dir: i8,
}

/// A marked disk met by parallel strands.
///
/// `strands` are listed left to right along a slice of the disk; "up" is the
/// slice direction rotated a quarter turn counterclockwise. No other edge of
/// the diagram meets the slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistRegion {
    pub strands: Vec<Strand>,
    /// Component bounding the disk, if it is part of the diagram.
    #[serde(default)]
    pub anchor: Option<usize>,
    /// Author-supplied statement that the anchor is unknotted.
    #[serde(default)]
    pub anchor_unknotted: bool,
}

impl TwistRegion {
    pub fn new(strands: Vec<Strand>, anchor: Option<usize>) -> Self {
        TwistRegion { strands, anchor, anchor_unknotted: anchor.is_some() }
    }

    /// Sum of strand directions over strands belonging to `component`.
    pub fn algebraic_intersection(&self, d: &LinkDiagram, component: usize) -> i64 {
        self.strands.iter().filter(|s| d.component_of(s.arc) == Some(component)).map(|s| s.dir as i64).sum()
    }

    /// Number of strands belonging to `component`.
    pub fn geometric_intersection(&self, d: &LinkDiagram, component: usize) -> usize {
        self.strands.iter().filter(|s| d.component_of(s.arc) == Some(component)).count()
    }

    fn validate(&self, d: &LinkDiagram) -> Result<()> {
        let mut seen = HashSet::new();
        for s in &self.strands {
            if d.component_of(s.arc).is_none() {
                return Err(DiagramError::StaleArc(s.arc));
            }
            if !seen.insert(s.arc) {
                return Err(DiagramError::DuplicateStrand(s.arc));
            }
            if s.dir != 1 && s.dir != -1 {
                return Err(DiagramError::BadDirection);
            }
        }
        if let Some(a) = self.anchor {
            if a >= d.num_components() {
                return Err(DiagramError::NoSuchComponent { index: a, count: d.num_components() });
            }
        }
        Ok(())
    }
}

/// Replaces the strands through `r` by `t` full twists (right-handed for
/// `t > 0`) and returns the canonical result with the region's labels updated.
///
/// For strands `a`, `b` with directions `e_a`, `e_b` the linking number of
/// their components changes by `t * e_a * e_b`.
pub fn insert_full_twists(d: &LinkDiagram, r: &TwistRegion, t: i64) -> Result<(LinkDiagram, TwistRegion)> {
    let out = insert_full_twists_mapped(d, r, t)?;
    Ok((out.diagram, out.region))
}

/// Result of [`insert_full_twists_mapped`].
#[derive(Debug, Clone)]
pub struct TwistOutcome {
    pub diagram: LinkDiagram,
    pub region: TwistRegion,
    /// Old label to new label; a twisted edge maps to its piece before the braid.
    pub relabel: HashMap<u32, u32>,
}

/// [`insert_full_twists`] that also reports how edge labels moved.
pub fn insert_full_twists_mapped(d: &LinkDiagram, r: &TwistRegion, t: i64) -> Result<TwistOutcome> {
    r.validate(d)?;
    let k = r.strands.len();
    if t == 0 || k < 2 {
        let relabel = d.components().iter().flat_map(|c| c.arcs.iter().map(|&a| (a, a))).collect();
        return Ok(TwistOutcome { diagram: d.clone(), region: r.clone(), relabel });
    }

    // braid word bottom to top: (σ1 … σ_{k-1})^k per positive twist
    let mut word: Vec<(usize, bool)> = Vec::new();
    for _ in 0..t.unsigned_abs() {
        for _ in 0..k {
            if t > 0 {
                word.extend((0..k - 1).map(|j| (j, true)));
            } else {
                word.extend((0..k - 1).rev().map(|j| (j, false)));
            }
        }
    }

    let mut next_label = d
        .crossings()
        .iter()
        .flat_map(|x| x.0)
        .chain(d.components().iter().flat_map(|c| c.arcs.iter().copied()))
        .max()
        .unwrap_or(0)
        + 1;
    let mut fresh = || {
        let l = next_label;
        next_label += 1;
        l
    };

    let dirs: Vec<i8> = r.strands.iter().map(|s| s.dir).collect();
    let is_loop: Vec<bool> = r.strands.iter().map(|s| d.head(s.arc).is_none()).collect();
    let mut remaining = vec![0usize; k];
    let mut perm: Vec<usize> = (0..k).collect();
    for &(j, _) in &word {
        remaining[perm[j]] += 1;
        remaining[perm[j + 1]] += 1;
        perm.swap(j, j + 1);
    }
    debug_assert!(perm.iter().enumerate().all(|(i, &p)| i == p));

    // segs[s]: labels of strand s bottom to top
    let mut segs: Vec<Vec<u32>> = Vec::with_capacity(k);
    for (s, strand) in r.strands.iter().enumerate() {
        let bottom = if dirs[s] > 0 || is_loop[s] { strand.arc } else { fresh() };
        segs.push(vec![bottom]);
    }
    let upper = |s: usize, remaining: &mut [usize], fresh: &mut dyn FnMut() -> u32| -> u32 {
        remaining[s] -= 1;
        if remaining[s] == 0 && (dirs[s] < 0 || is_loop[s]) {
            r.strands[s].arc
        } else {
            fresh()
        }
    };

    let mut new_crossings: Vec<Crossing> = Vec::with_capacity(word.len());
    let mut pos: Vec<usize> = (0..k).collect();
    for &(j, positive) in &word {
        let (l, rr) = (pos[j], pos[j + 1]);
        let bl = *segs[l].last().unwrap();
        let br = *segs[rr].last().unwrap();
        let tr = upper(l, &mut remaining, &mut fresh);
        let tl = upper(rr, &mut remaining, &mut fresh);
        let x = if positive {
            if dirs[rr] > 0 {
                [br, tr, tl, bl]
            } else {
                [tl, bl, br, tr]
            }
        } else if dirs[l] > 0 {
            [bl, br, tr, tl]
        } else {
            [tr, tl, bl, br]
        };
        new_crossings.push(Crossing(x));
        segs[l].push(tr);
        segs[rr].push(tl);
        pos.swap(j, j + 1);
    }

    // reattach: the piece leaving the braid towards the old head gets the
    // last label in orientation order
    let mut crossings: Vec<Crossing> = d.crossings().to_vec();
    let mut pieces: HashMap<u32, Vec<u32>> = HashMap::new();
    for (s, strand) in r.strands.iter().enumerate() {
        let mut order = segs[s].clone();
        if dirs[s] < 0 {
            order.reverse();
        }
        debug_assert_eq!(order[0], strand.arc);
        if is_loop[s] {
            order.pop();
        } else {
            let h = d.head(strand.arc).expect("non-loop edge has a head");
            crossings[h.crossing].0[h.slot as usize] = *order.last().unwrap();
        }
        pieces.insert(strand.arc, order);
    }
    crossings.extend(new_crossings);

    let comps: Vec<Component> = d
        .components()
        .iter()
        .map(|c| Component {
            name: c.name.clone(),
            arcs: c.arcs.iter().flat_map(|a| pieces.get(a).cloned().unwrap_or_else(|| vec![*a])).collect(),
        })
        .collect();
    let twisted = LinkDiagram::from_oriented(crossings, comps, d.name().map(str::to_string))?;
    let (canon, map) = twisted.canonical_with_map();
    let region = TwistRegion {
        strands: r.strands.iter().enumerate().map(|(s, st)| Strand { arc: map[&segs[s][0]], dir: st.dir }).collect(),
        anchor: r.anchor,
        anchor_unknotted: r.anchor_unknotted,
    };
    let relabel = d.components().iter().flat_map(|c| c.arcs.iter().map(|&a| (a, map[&a]))).collect();
    Ok(TwistOutcome { diagram: canon, region, relabel })
}
