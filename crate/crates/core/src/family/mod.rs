//! The link `L`, the knots `k_n^m = L(*, -1/m, 1/m, -1/n)` and
//! same-surgery evidence.
//!
//! Every public operation first loads the asset and refuses to run unless its
//! validation sheet passes.

pub mod asset;
pub mod geometry;

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::diagram::LinkDiagram;
use crate::surgery::{apply_move_script, AbelianGroup, Move, Slope, SurgeryError, SurgeryPresentation, Trace};
pub use asset::{AssetError, FamilyAsset, POrientation, SheetCheck, ValidationSheet};
use asset::{K, L1, L2, L3};
use geometry::{Projection, ProjectionError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error(transparent)]
    Asset(#[from] AssetError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
    #[error("S^3 evidence failed: {0}")]
    Evidence(String),
}

pub type Result<T> = std::result::Result<T, FamilyError>;

/// The validated asset, built once per process.
pub fn asset() -> Result<&'static FamilyAsset> {
    static ASSET: OnceLock<std::result::Result<FamilyAsset, AssetError>> = OnceLock::new();
    ASSET.get_or_init(FamilyAsset::load).as_ref().map_err(|e| FamilyError::Asset(e.clone()))
}

/// `L` with every component unfilled.
pub fn base_link() -> Result<SurgeryPresentation> {
    Ok(asset()?.base.clone())
}

fn with_slopes(label: String, first: Slope, m: i64, n: i64) -> Result<SurgeryPresentation> {
    let mut p = base_link()?.with_slopes(vec![first, Slope::new(-1, m)?, Slope::new(1, m)?, Slope::new(-1, n)?])?;
    p.label = label;
    Ok(p)
}

/// `L(*, -1/m, 1/m, -1/n)`, whose unfilled component is `k_n^m` in `S^3`.
pub fn knot_presentation(m: i64, n: i64) -> Result<SurgeryPresentation> {
    with_slopes(format!("k_{n}^{m}"), Slope::Unfilled, m, n)
}

/// `L(0/1, -1/m, 1/m, -1/n)`, the `n`-surgery on `k_n^m`.
pub fn surgered_presentation(m: i64, n: i64) -> Result<SurgeryPresentation> {
    with_slopes(format!("k_{n}^{m}({n})"), Slope::integer(0), m, n)
}

/// Moves reducing `L(s, -1/m, 1/m, -1/n)` to a single component in `S^3`:
/// the annulus twist clears `l1` and `l2`, then the Rolfsen twist clears
/// `l3`. The annulus twist must come first because it needs `lk(l1, l2) = 0`.
pub fn s3_script(m: i64, n: i64) -> Vec<Move> {
    vec![
        Move::annulus("l1", "l2", m),
        Move::delete("l1"),
        Move::delete("l2"),
        Move::rolfsen("l3", n),
        Move::delete("l3"),
    ]
}

/// Replays [`s3_script`] on `L(*, -1/m, 1/m, -1/n)` and checks that it ends
/// with one unfilled component in a manifold with trivial homology.
pub fn s3_evidence(m: i64, n: i64) -> Result<Trace> {
    let (end, trace) = apply_move_script(&knot_presentation(m, n)?, &s3_script(m, n))?;
    let last = trace.last().expect("trace includes the input");
    if end.len() != 1 || last.filled != 0 || !last.ambient_h1.is_trivial() {
        return Err(FamilyError::Evidence(format!(
            "ended with {} components, {} filled, ambient H1 {}",
            end.len(),
            last.filled,
            last.ambient_h1
        )));
    }
    Ok(trace)
}

/// Diagram of `k_n^m`: `k` twisted `m` times along `A`, then `n` times
/// along the disk of `l3`, projected to the plane.
pub fn knot_diagram(m: i64, n: i64) -> Result<LinkDiagram> {
    let curve = asset::twisted_k(m, n);
    let proj = Projection::new(&[curve])?;
    Ok(proj.diagram.canonical().with_name(format!("k_{n}^{m}")).with_component_names(&["k"]))
}

/// [`knot_diagram`] together with the move trace certifying that `k_n^m`
/// lives in `S^3`.
pub fn knot_diagram_with_trace(m: i64, n: i64) -> Result<(LinkDiagram, Trace)> {
    let trace = s3_evidence(m, n)?;
    Ok((knot_diagram(m, n)?, trace))
}

/// Slope of `L(0/1, -1/m, 1/m, -1/n)` on `k_n^m`, from the linking of `k`
/// with `l1 ∪ l2` oriented as boundary of the punctured sphere.
///
/// That linking number starts at `lk_k_boundary` and changes under the `n`
/// twists along `l3` by `n lk(k,l3) (eps1 lk(l1,l3) + eps2 lk(l2,l3))`; twice
/// the linking of the slope with `k` is its negative. Twisting along the
/// annulus happens away from `l1 ∪ l2`, so `m` does not enter.
pub fn induced_surgery_slope(_m: i64, n: i64) -> Result<Slope> {
    let p = &asset()?.p_orientation;
    let boundary = p.lk_k_boundary + n * p.lk_k_l3 * (p.eps_l1 * p.lk_l1_l3 + p.eps_l2 * p.lk_l2_l3);
    if boundary % 2 != 0 {
        return Err(FamilyError::Evidence(format!("boundary linking {boundary} is odd")));
    }
    Ok(Slope::integer(-boundary / 2))
}

/// The same slope read off the presentation after [`s3_script`].
pub fn slope_by_moves(m: i64, n: i64) -> Result<Slope> {
    let (end, _) = apply_move_script(&surgered_presentation(m, n)?, &s3_script(m, n))?;
    Ok(end.slopes[K].clone())
}

/// Homology-level evidence that `k_n^{m1}(n)` and `k_n^{m2}(n)` agree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub n: i64,
    pub m1: i64,
    pub m2: i64,
    pub h1: [Option<AbelianGroup>; 2],
    pub h1_match: bool,
    /// Annulus twists taking each surgered presentation to
    /// `L(0/1, 1/0, 1/0, -1/n)`.
    pub traces: [Option<Trace>; 2],
    pub common_form_match: bool,
    pub slopes: [Option<String>; 2],
    pub slope_check: bool,
    pub complete: bool,
    pub notes: Vec<String>,
}

const EVIDENCE_NOTE: &str = "Evidence only: first homology and replayed surgery moves agree; \
a homeomorphism is not certified by this report.";

/// Compares the `n`-surgeries on `k_n^{m1}` and `k_n^{m2}`.
pub fn same_surgery_evidence(n: i64, m1: i64, m2: i64) -> EvidenceReport {
    let mut notes = vec![EVIDENCE_NOTE.to_string()];
    let mut h1 = [None, None];
    let mut traces = [None, None];
    let mut ends = [None, None];
    let mut slopes = [None, None];
    let mut slope_ok = [false, false];
    for (i, m) in [m1, m2].into_iter().enumerate() {
        match surgered_presentation(m, n) {
            Ok(p) => {
                h1[i] = Some(p.first_homology());
                match apply_move_script(&p, &[Move::annulus("l1", "l2", m)]) {
                    Ok((end, trace)) => {
                        ends[i] = Some(end);
                        traces[i] = Some(trace);
                    }
                    Err(e) => notes.push(format!("m = {m}: annulus twist failed: {e}")),
                }
            }
            Err(e) => notes.push(format!("m = {m}: {e}")),
        }
        match induced_surgery_slope(m, n) {
            Ok(s) => {
                slope_ok[i] = s == Slope::integer(n);
                if !slope_ok[i] {
                    notes.push(format!("m = {m}: induced slope {s} differs from {n}"));
                }
                slopes[i] = Some(s.to_string());
            }
            Err(e) => notes.push(format!("m = {m}: slope computation failed: {e}")),
        }
    }
    let h1_match = matches!(&h1, [Some(a), Some(b)] if a == b);
    let common_form_match = match &ends {
        [Some(a), Some(b)] => a.same_surgery_data(b) && common_form(a, n),
        _ => false,
    };
    let complete =
        h1.iter().all(Option::is_some) && traces.iter().all(Option::is_some) && slopes.iter().all(Option::is_some);
    if !h1_match && complete {
        notes.push("first homology differs".to_string());
    }
    EvidenceReport {
        n,
        m1,
        m2,
        h1,
        h1_match,
        traces,
        common_form_match,
        slopes,
        slope_check: slope_ok.iter().all(|&b| b),
        complete,
        notes,
    }
}

/// Whether `p` is `L(0/1, 1/0, 1/0, -1/n)` on the linking table of `L`.
fn common_form(p: &SurgeryPresentation, n: i64) -> bool {
    let Ok(a) = asset() else { return false };
    let want = [Slope::integer(0), Slope::meridian(), Slope::meridian(), Slope::new(-1, n).expect("n/1 is a slope")];
    p.slopes == want && (0..4).all(|i| (0..4).all(|j| i == j || p.lk(i, j) == a.base.lk(i, j)))
}

/// Linking number of `k` with `l1 ∪ l2` (boundary orientation) after `n`
/// twists along `l3`, via the presentation-level twist rule.
pub fn boundary_linking(n: i64) -> Result<BigInt> {
    let a = asset()?;
    let mut p = a.base.clone();
    p.diagram = None;
    p.twist_regions.clear();
    p.slopes[L3] = Slope::new(-1, n)?;
    let q = crate::surgery::rolfsen_twist(&p, L3, n)?;
    Ok(q.lk(K, L1) * a.p_orientation.eps_l1 + q.lk(K, L2) * a.p_orientation.eps_l2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn script_clears_annulus_before_l3() {
        let s = s3_script(2, 3);
        assert_eq!(s.len(), 5);
        assert_eq!(s[0], Move::annulus("l1", "l2", 2));
        assert_eq!(s[3], Move::rolfsen("l3", 3));
    }

    #[test]
    fn untwisted_slope_is_zero() {
        assert_eq!(induced_surgery_slope(0, 0).unwrap(), Slope::integer(0));
        assert_eq!(boundary_linking(0).unwrap(), BigInt::from(0));
    }

    #[test]
    fn reflexive_report_matches() {
        let r = same_surgery_evidence(2, 3, 3);
        assert!(r.h1_match && r.common_form_match && r.slope_check && r.complete);
    }
}
