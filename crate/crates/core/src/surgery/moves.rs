use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntMatrix, Result, Slope, SurgeryError, SurgeryPresentation};
use crate::diagram::{insert_full_twists_mapped, Strand, TwistRegion};

/// Relabels twist regions after a diagram edit; regions whose edges vanished
/// or merged, or whose anchor was removed, are dropped.
fn remap_regions(regions: &[TwistRegion], map: &HashMap<u32, u32>, removed: Option<usize>) -> Vec<TwistRegion> {
    let mut out = Vec::new();
    'region: for r in regions {
        let anchor = match (r.anchor, removed) {
            (Some(a), Some(c)) if a == c => continue,
            (Some(a), Some(c)) if a > c => Some(a - 1),
            (a, _) => a,
        };
        let mut seen = HashSet::new();
        let mut strands = Vec::with_capacity(r.strands.len());
        for s in &r.strands {
            let Some(&arc) = map.get(&s.arc) else { continue 'region };
            if !seen.insert(arc) {
                continue 'region;
            }
            strands.push(Strand { arc, dir: s.dir });
        }
        out.push(TwistRegion { strands, anchor, anchor_unknotted: r.anchor_unknotted });
    }
    out
}

fn rational(p: &SurgeryPresentation, c: usize) -> Result<(BigInt, BigInt)> {
    match p.slopes[c].as_pq() {
        Some((a, b)) => Ok((a.clone(), b.clone())),
        None => Err(SurgeryError::Unfilled(c)),
    }
}

/// Twists `t` times along the disk bounded by the unknot `c`.
///
/// Slopes: `c: p/q -> p/(q + t p)`, other filled `i: p/q -> (p + t q lk(i,c)^2)/q`.
/// Linking: `lk(i,j) -> lk(i,j) + t lk(i,c) lk(j,c)`. When a diagram is
/// attached, the strands through `c`'s twist region receive `t` full twists
/// and the recomputed linking numbers must agree with the table.
pub fn rolfsen_twist(pres: &SurgeryPresentation, c: usize, t: i64) -> Result<SurgeryPresentation> {
    pres.check_component(c)?;
    let (p, q) = rational(pres, c)?;
    if !pres.unknotted[c] {
        return Err(SurgeryError::NotUnknot(c));
    }
    let n = pres.len();
    let t_big = BigInt::from(t);
    let lk_c: Vec<BigInt> = (0..n).map(|i| pres.lk(i, c).clone()).collect();

    let mut slopes = pres.slopes.clone();
    slopes[c] = Slope::new(p.clone(), &q + &t_big * &p)?;
    for i in 0..n {
        if i == c {
            continue;
        }
        if let Some((pi, qi)) = pres.slopes[i].as_pq() {
            slopes[i] = Slope::new(pi + &t_big * qi * &lk_c[i] * &lk_c[i], qi.clone())?;
        }
    }
    let mut linking = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                linking.set(i, j, pres.lk(i, j) + &t_big * &lk_c[i] * &lk_c[j]);
            }
        }
    }

    let mut out = pres.clone();
    out.slopes = slopes;
    out.link.linking = linking;
    if let Some(d) = &pres.diagram {
        let region = pres.region_for(c).ok_or(SurgeryError::NoRegion(c))?;
        let twisted = insert_full_twists_mapped(d, region, t)?;
        let others: Vec<TwistRegion> = pres.twist_regions.iter().filter(|r| r.anchor != Some(c)).cloned().collect();
        let mut regions = remap_regions(&others, &twisted.relabel, None);
        regions.push(twisted.region);
        out.diagram = Some(twisted.diagram);
        out.twist_regions = regions;
    }
    out.validate()?;
    Ok(out)
}

/// Removes a component filled along its meridian.
pub fn delete_meridional(pres: &SurgeryPresentation, c: usize) -> Result<SurgeryPresentation> {
    pres.check_component(c)?;
    if !pres.slopes[c].is_meridian() {
        return Err(SurgeryError::NotMeridional(c));
    }
    let mut out = pres.clone();
    out.link = pres.link.without(c);
    out.slopes.remove(c);
    out.unknotted.remove(c);
    if let Some(d) = &pres.diagram {
        let (smaller, map) = d.delete_component_mapped(c)?;
        out.twist_regions = remap_regions(&pres.twist_regions, &map, Some(c));
        out.diagram = Some(smaller);
    } else {
        out.twist_regions.clear();
    }
    out.validate()?;
    Ok(out)
}

/// Twists `t` times along an annulus cobounded by components `i` and `j`
/// (oriented parallel, unlinked with each other, and linking every other
/// component equally).
///
/// Slopes: `i: p/q -> p/(q + t p)`, `j: p/q -> p/(q - t p)`; every other slope
/// and linking number is unchanged. This equals a Rolfsen twist by `t` on `i`
/// followed by one by `-t` on `j`. Any attached diagram is dropped: the
/// twisted diagram needs the annulus geometry, not just a slice.
pub fn annulus_twist(pres: &SurgeryPresentation, i: usize, j: usize, t: i64) -> Result<SurgeryPresentation> {
    pres.check_component(i)?;
    pres.check_component(j)?;
    if i == j {
        return Err(SurgeryError::Annulus(format!("components must differ (got {i} twice)")));
    }
    let (pi, qi) = rational(pres, i)?;
    let (pj, qj) = rational(pres, j)?;
    if !pres.lk(i, j).is_zero() {
        return Err(SurgeryError::Annulus(format!("lk({i},{j}) = {} is not zero", pres.lk(i, j))));
    }
    for x in 0..pres.len() {
        if x != i && x != j && pres.lk(i, x) != pres.lk(j, x) {
            return Err(SurgeryError::Annulus(format!(
                "lk({i},{x}) = {} differs from lk({j},{x}) = {}",
                pres.lk(i, x),
                pres.lk(j, x)
            )));
        }
    }
    let t_big = BigInt::from(t);
    let mut out = pres.clone();
    out.slopes[i] = Slope::new(pi.clone(), qi + &t_big * &pi)?;
    out.slopes[j] = Slope::new(pj.clone(), qj - &t_big * &pj)?;
    out.diagram = None;
    out.twist_regions.clear();
    Ok(out)
}

/// An `(a, b)`-cable: `a` longitudinal and `b` meridional windings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cable {
    pub a: i64,
    pub b: i64,
}

impl Cable {
    pub fn new(a: i64, b: i64) -> Result<Cable> {
        if a.unsigned_abs() < 2 || a.gcd(&b) != 1 {
            return Err(SurgeryError::InvalidCable { a, b });
        }
        Ok(Cable { a, b })
    }

    /// Parses `"a,b"`.
    pub fn parse(text: &str) -> Result<Cable> {
        let bad = || SurgeryError::CableSyntax(text.to_string());
        let (a, b) = text.split_once(',').ok_or_else(bad)?;
        let a = a.trim().parse().map_err(|_| bad())?;
        let b = b.trim().parse().map_err(|_| bad())?;
        Cable::new(a, b)
    }
}

/// Surgery `p/q` on an `(a,b)`-cable at distance one from the fiber slope
/// `ab/1` (`|p - q a b| = 1`) equals surgery `p/(q a^2)` on the companion.
pub fn cable_surgery_reduction(s: &Slope, c: Cable) -> Result<Slope> {
    let (p, q) = s.as_pq().ok_or(SurgeryError::Unfilled(0))?;
    let (a, b) = (BigInt::from(c.a), BigInt::from(c.b));
    let distance = (p - q * &a * &b).abs();
    if !distance.is_one() {
        return Err(SurgeryError::CableDistance { slope: s.to_string(), a: c.a, b: c.b, distance });
    }
    Slope::new(p.clone(), q * &a * &a)
}
