//! Polygonal curves in R^3, the twist maps applied to them, and projection
//! to PD diagrams.

use std::f64::consts::TAU;

use crate::diagram::{Component, Crossing, LinkDiagram, Strand, TwistRegion};

pub type P3 = [f64; 3];

/// Closed polygon; the last vertex connects back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub name: String,
    pub points: Vec<P3>,
}

impl Curve {
    pub fn new(name: &str, points: Vec<P3>) -> Self {
        Curve { name: name.to_string(), points }
    }

    pub fn segment(&self, i: usize) -> (P3, P3) {
        (self.points[i], self.points[(i + 1) % self.points.len()])
    }

    /// Splits every segment touching the region `inside` into pieces no
    /// longer than `max_len`.
    pub fn refined(&self, inside: impl Fn(P3) -> bool, max_len: f64) -> Curve {
        let mut out = Vec::with_capacity(self.points.len());
        for i in 0..self.points.len() {
            let (a, b) = self.segment(i);
            out.push(a);
            if inside(a) || inside(b) || inside(lerp(a, b, 0.5)) {
                let pieces = (dist(a, b) / max_len).ceil() as usize;
                for k in 1..pieces {
                    out.push(lerp(a, b, k as f64 / pieces as f64));
                }
            }
        }
        Curve { name: self.name.clone(), points: out }
    }

    pub fn mapped(&self, f: impl Fn(P3) -> P3) -> Curve {
        Curve { name: self.name.clone(), points: self.points.iter().map(|&p| f(p)).collect() }
    }
}

pub fn lerp(a: P3, b: P3, t: f64) -> P3 {
    [a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t, a[2] + (b[2] - a[2]) * t]
}

pub fn dist(a: P3, b: P3) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

/// Point from cylindrical coordinates (angle in degrees).
pub fn cyl(r: f64, theta_deg: f64, z: f64) -> P3 {
    let t = theta_deg.to_radians();
    [r * t.cos(), r * t.sin(), z]
}

/// Traces a closed path through cylindrical waypoints `(r, θ°, z)`,
/// interpolating each leg in cylindrical coordinates with steps of at most
/// `step_deg` degrees and `step_len` units. The last waypoint must be the
/// first one again (angles may differ by whole turns) and is not repeated.
pub fn cylindrical_path(waypoints: &[(f64, f64, f64)], step_deg: f64, step_len: f64) -> Vec<P3> {
    let mut out = Vec::new();
    for w in waypoints.windows(2) {
        let ((r0, t0, z0), (r1, t1, z1)) = (w[0], w[1]);
        let pieces =
            ((t1 - t0).abs() / step_deg).max(((r1 - r0).powi(2) + (z1 - z0).powi(2)).sqrt() / step_len).ceil().max(1.0)
                as usize;
        for k in 0..pieces {
            let s = k as f64 / pieces as f64;
            out.push(cyl(r0 + (r1 - r0) * s, t0 + (t1 - t0) * s, z0 + (z1 - z0) * s));
        }
    }
    out
}

/// Twist along the horizontal annulus `r_in < r < r_out`, `|z| < half`:
/// `t` right-handed full turns about the z-axis, with the radius ramped
/// linearly from `r_in + pad` at the bottom to `r_out - pad` at the top.
#[derive(Debug, Clone, Copy)]
pub struct AnnulusTwist {
    pub r_in: f64,
    pub r_out: f64,
    pub half: f64,
    pub pad: f64,
    pub t: i64,
}

impl AnnulusTwist {
    pub fn inside(&self, p: P3) -> bool {
        let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
        p[2].abs() < self.half && r > self.r_in && r < self.r_out
    }

    pub fn apply(&self, p: P3) -> P3 {
        if self.t == 0 || !self.inside(p) {
            return p;
        }
        let s = (p[2] + self.half) / (2.0 * self.half);
        let theta = p[1].atan2(p[0]) + TAU * self.t as f64 * s;
        let r = (self.r_in + self.pad) + (self.r_out - self.r_in - 2.0 * self.pad) * s;
        [r * theta.cos(), r * theta.sin(), p[2]]
    }

    /// Segment length fine enough to follow the twisted curve.
    pub fn resolution(&self) -> f64 {
        2.0 * self.half / (72.0 * (self.t.unsigned_abs().max(1)) as f64)
    }
}

/// Twist along a disk perpendicular to the y-axis centred at `(cx, 0, 0)`:
/// inside `|y| < half`, `ρ < rho_max` (ρ the distance to the axis), points
/// rotate `t` right-handed full turns about the axis.
#[derive(Debug, Clone, Copy)]
pub struct DiskTwist {
    pub cx: f64,
    pub half: f64,
    pub rho_max: f64,
    pub t: i64,
}

impl DiskTwist {
    pub fn inside(&self, p: P3) -> bool {
        let (u, w) = (p[0] - self.cx, p[2]);
        p[1].abs() < self.half && (u * u + w * w).sqrt() < self.rho_max
    }

    pub fn apply(&self, p: P3) -> P3 {
        if self.t == 0 || !self.inside(p) {
            return p;
        }
        let s = (p[1] + self.half) / (2.0 * self.half);
        let a = TAU * self.t as f64 * s;
        let (u, w) = (p[0] - self.cx, p[2]);
        // right-handed rotation about +y
        [self.cx + u * a.cos() + w * a.sin(), p[1], -u * a.sin() + w * a.cos()]
    }

    pub fn resolution(&self) -> f64 {
        2.0 * self.half / (72.0 * (self.t.unsigned_abs().max(1)) as f64)
    }
}

/// A viewing direction: points are rotated, then `(x, y)` is the picture
/// and `z` the height.
#[derive(Debug, Clone, Copy)]
pub struct View {
    pub tilt_x: f64,
    pub tilt_y: f64,
    pub spin: f64,
}

impl View {
    pub const CANDIDATES: [View; 4] = [
        View { tilt_x: 0.0731, tilt_y: 0.0419, spin: 0.2113 },
        View { tilt_x: -0.0613, tilt_y: 0.0557, spin: 0.1379 },
        View { tilt_x: 0.0893, tilt_y: -0.0347, spin: 0.3011 },
        View { tilt_x: -0.0457, tilt_y: -0.0711, spin: 0.0917 },
    ];

    pub fn apply(&self, p: P3) -> P3 {
        let (sx, cx) = self.tilt_x.sin_cos();
        let (sy, cy) = self.tilt_y.sin_cos();
        let (sz, cz) = self.spin.sin_cos();
        let p = [p[0], cx * p[1] - sx * p[2], sx * p[1] + cx * p[2]];
        let p = [cy * p[0] + sy * p[2], p[1], -sy * p[0] + cy * p[2]];
        [cz * p[0] - sz * p[1], sz * p[0] + cz * p[1], p[2]]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProjectionError {
    /// The view puts a crossing at a vertex, makes segments overlap, or
    /// hides one strand exactly behind another.
    #[error("degenerate view: {0}")]
    Degenerate(String),
    #[error("every candidate view is degenerate")]
    NoGenericView,
    /// A slice meets an edge it should not, or misses one it should.
    #[error("bad slice: {0}")]
    BadSlice(String),
    #[error("projected diagram is invalid: {0}")]
    Diagram(String),
}

/// Position along a curve: segment index plus parameter in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CurvePos {
    pub seg: usize,
    pub t: f64,
}

#[derive(Debug, Clone)]
struct RawCrossing {
    under: (usize, CurvePos),
    over: (usize, CurvePos),
    /// sign of cross(d_under, d_over) in the picture plane
    orient: f64,
}

/// A PD diagram together with the data needed to locate points on it.
#[derive(Debug, Clone)]
pub struct Projection {
    pub view: View,
    pub diagram: LinkDiagram,
    /// Passages per component, sorted along the curve.
    passages: Vec<Vec<CurvePos>>,
    /// First edge label of each component.
    base: Vec<u32>,
    pictures: Vec<Vec<[f64; 2]>>,
    curves: Vec<Curve>,
}

fn cross2(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn sub2(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Proper intersection of segments `p0p1` and `q0q1` as parameters `(s, t)`.
fn seg_intersect(p0: [f64; 2], p1: [f64; 2], q0: [f64; 2], q1: [f64; 2]) -> Option<(f64, f64, f64)> {
    let d = sub2(p1, p0);
    let e = sub2(q1, q0);
    let den = cross2(d, e);
    let scale = (d[0].abs() + d[1].abs()) * (e[0].abs() + e[1].abs());
    let w = sub2(q0, p0);
    if den.abs() <= 1e-12 * scale {
        // parallel: overlapping collinear pieces are degenerate
        if cross2(w, d).abs() <= 1e-12 * (d[0].abs() + d[1].abs()).powi(2) {
            return Some((f64::NAN, f64::NAN, 0.0));
        }
        return None;
    }
    let s = cross2(w, e) / den;
    let t = cross2(w, d) / den;
    if (-1e-9..=1.0 + 1e-9).contains(&s) && (-1e-9..=1.0 + 1e-9).contains(&t) {
        Some((s, t, den))
    } else {
        None
    }
}

fn bbox(a: [f64; 2], b: [f64; 2]) -> [f64; 4] {
    [a[0].min(b[0]), a[1].min(b[1]), a[0].max(b[0]), a[1].max(b[1])]
}

impl Projection {
    /// Projects `curves` along the first non-degenerate candidate view.
    pub fn new(curves: &[Curve]) -> Result<Projection, ProjectionError> {
        for view in View::CANDIDATES {
            match Projection::with_view(curves, view) {
                Ok(p) => return Ok(p),
                Err(ProjectionError::Degenerate(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(ProjectionError::NoGenericView)
    }

    pub fn with_view(curves: &[Curve], view: View) -> Result<Projection, ProjectionError> {
        let rotated: Vec<Vec<P3>> = curves.iter().map(|c| c.points.iter().map(|&p| view.apply(p)).collect()).collect();
        let pictures: Vec<Vec<[f64; 2]>> = rotated.iter().map(|c| c.iter().map(|p| [p[0], p[1]]).collect()).collect();

        // all segments with bounding boxes, sorted by min x for a sweep
        let mut segs: Vec<(usize, usize, [f64; 4])> = Vec::new();
        for (c, pic) in pictures.iter().enumerate() {
            let n = pic.len();
            for i in 0..n {
                segs.push((c, i, bbox(pic[i], pic[(i + 1) % n])));
            }
        }
        segs.sort_by(|a, b| a.2[0].total_cmp(&b.2[0]));

        let mut raw: Vec<RawCrossing> = Vec::new();
        for (ai, &(ca, ia, ba)) in segs.iter().enumerate() {
            for &(cb, ib, bb) in &segs[ai + 1..] {
                if bb[0] > ba[2] {
                    break;
                }
                if bb[1] > ba[3] || bb[3] < ba[1] {
                    continue;
                }
                let na = pictures[ca].len();
                let nb = pictures[cb].len();
                if ca == cb && (ia == ib || (ia + 1) % na == ib || (ib + 1) % nb == ia) {
                    continue;
                }
                let (a0, a1) = (pictures[ca][ia], pictures[ca][(ia + 1) % na]);
                let (b0, b1) = (pictures[cb][ib], pictures[cb][(ib + 1) % nb]);
                let Some((s, t, den)) = seg_intersect(a0, a1, b0, b1) else { continue };
                if s.is_nan() {
                    return Err(ProjectionError::Degenerate(format!("overlapping segments {ca}:{ia} and {cb}:{ib}")));
                }
                if !(1e-9..1.0 - 1e-9).contains(&s) || !(1e-9..1.0 - 1e-9).contains(&t) {
                    return Err(ProjectionError::Degenerate(format!("crossing at a vertex ({ca}:{ia}, {cb}:{ib})")));
                }
                let ha = lerp(rotated[ca][ia], rotated[ca][(ia + 1) % na], s)[2];
                let hb = lerp(rotated[cb][ib], rotated[cb][(ib + 1) % nb], t)[2];
                if (ha - hb).abs() < 1e-7 {
                    return Err(ProjectionError::Degenerate(format!("strands meet in space ({ca}:{ia}, {cb}:{ib})")));
                }
                let pa = (ca, CurvePos { seg: ia, t: s });
                let pb = (cb, CurvePos { seg: ib, t });
                // den = cross(d_a, d_b)
                raw.push(if ha < hb {
                    RawCrossing { under: pa, over: pb, orient: den }
                } else {
                    RawCrossing { under: pb, over: pa, orient: -den }
                });
            }
        }

        let mut passages: Vec<Vec<CurvePos>> = vec![Vec::new(); curves.len()];
        for x in &raw {
            passages[x.under.0].push(x.under.1);
            passages[x.over.0].push(x.over.1);
        }
        for p in &mut passages {
            p.sort_by(|a, b| a.partial_cmp(b).expect("finite positions"));
        }
        let mut base = Vec::with_capacity(curves.len());
        let mut next = 1u32;
        for p in &passages {
            base.push(next);
            next += p.len().max(1) as u32;
        }
        let mut proj =
            Projection { view, diagram: LinkDiagram::empty(), passages, base, pictures, curves: curves.to_vec() };

        let crossings: Vec<Crossing> = raw
            .iter()
            .map(|x| {
                let u_idx = proj.passage_index(x.under.0, x.under.1);
                let o_idx = proj.passage_index(x.over.0, x.over.1);
                let (u_in, u_out) = proj.edges_at(x.under.0, u_idx);
                let (o_in, o_out) = proj.edges_at(x.over.0, o_idx);
                if x.orient > 0.0 {
                    Crossing([u_in, o_in, u_out, o_out])
                } else {
                    Crossing([u_in, o_out, u_out, o_in])
                }
            })
            .collect();
        let components: Vec<Component> = (0..curves.len())
            .map(|c| Component {
                name: Some(curves[c].name.clone()),
                arcs: (0..proj.passages[c].len().max(1) as u32).map(|j| proj.base[c] + j).collect(),
            })
            .collect();
        proj.diagram = LinkDiagram::from_oriented(crossings, components, None)
            .map_err(|e| ProjectionError::Diagram(e.to_string()))?;
        Ok(proj)
    }

    fn passage_index(&self, c: usize, pos: CurvePos) -> usize {
        self.passages[c].iter().position(|p| *p == pos).expect("recorded passage")
    }

    /// Edges entering and leaving passage `j` of component `c`.
    fn edges_at(&self, c: usize, j: usize) -> (u32, u32) {
        let k = self.passages[c].len();
        let prev = (j + k - 1) % k;
        (self.base[c] + prev as u32, self.base[c] + j as u32)
    }

    /// Edge label containing the point `pos` of component `c`.
    pub fn edge_at(&self, c: usize, pos: CurvePos) -> u32 {
        let k = self.passages[c].len();
        if k == 0 {
            return self.base[c];
        }
        let before = self.passages[c].iter().filter(|p| **p < pos).count();
        self.base[c] + ((before + k - 1) % k) as u32
    }

    pub fn picture(&self, c: usize, i: usize) -> [f64; 2] {
        self.pictures[c][i]
    }

    /// Twist region for the picture segment `a -> b` (given in space and
    /// projected with this view). Strands are ordered from `a` to `b`;
    /// `expected` lists how many strands each component must contribute.
    pub fn slice_region(
        &self,
        a: P3,
        b: P3,
        anchor: Option<usize>,
        expected: &[usize],
    ) -> Result<TwistRegion, ProjectionError> {
        let pa = self.view.apply(a);
        let pb = self.view.apply(b);
        let (s0, s1) = ([pa[0], pa[1]], [pb[0], pb[1]]);
        let dir = sub2(s1, s0);
        let normal = [-dir[1], dir[0]];
        let mut hits: Vec<(f64, u32, i8, usize)> = Vec::new();
        for (c, pic) in self.pictures.iter().enumerate() {
            let n = pic.len();
            for i in 0..n {
                let (q0, q1) = (pic[i], pic[(i + 1) % n]);
                if let Some((s, t, _)) = seg_intersect(s0, s1, q0, q1) {
                    if s.is_nan() || !(1e-9..1.0 - 1e-9).contains(&t) {
                        return Err(ProjectionError::BadSlice(format!("slice grazes component {c} at segment {i}")));
                    }
                    let v = sub2(q1, q0);
                    let d = if v[0] * normal[0] + v[1] * normal[1] > 0.0 { 1 } else { -1 };
                    hits.push((s, self.edge_at(c, CurvePos { seg: i, t }), d, c));
                }
            }
        }
        hits.sort_by(|x, y| x.0.total_cmp(&y.0));
        for (c, &want) in expected.iter().enumerate() {
            let got = hits.iter().filter(|h| h.3 == c).count();
            if got != want {
                return Err(ProjectionError::BadSlice(format!(
                    "component {c} meets the slice {got} times, expected {want}"
                )));
            }
        }
        Ok(TwistRegion::new(hits.iter().map(|h| Strand { arc: h.1, dir: h.2 }).collect(), anchor))
    }

    /// Edge labels and signs where component `c` crosses the horizontal
    /// plane `z = level` inside `r_in < r < r_out` (in space, before viewing).
    pub fn level_crossings(&self, c: usize, level: f64, r_in: f64, r_out: f64) -> Vec<Strand> {
        let curve = &self.curves[c];
        let mut out = Vec::new();
        for i in 0..curve.points.len() {
            let (p, q) = curve.segment(i);
            // half-open so a vertex on the plane counts once
            if (p[2] <= level) != (q[2] <= level) {
                let t = (level - p[2]) / (q[2] - p[2]);
                let x = lerp(p, q, t);
                let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
                if r > r_in && r < r_out {
                    let dir = if q[2] > p[2] { 1 } else { -1 };
                    out.push(Strand { arc: self.edge_at(c, CurvePos { seg: i, t }), dir });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(name: &str, r: f64, z: f64) -> Curve {
        Curve::new(name, (0..72).map(|i| cyl(r, i as f64 * 5.0, z)).collect())
    }

    #[test]
    fn unlinked_circles_have_no_crossings() {
        let p = Projection::new(&[circle("a", 1.0, 0.0), circle("b", 3.0, 0.0)]).unwrap();
        assert_eq!(p.diagram.num_crossings(), 0);
        assert_eq!(p.diagram.num_components(), 2);
    }

    #[test]
    fn hopf_from_space() {
        let a = circle("a", 2.0, 0.0);
        // circle in the xz-plane through the disk of `a`
        let b = Curve::new(
            "b",
            (0..72)
                .map(|i| {
                    let t = (i as f64 * 5.0).to_radians();
                    [2.0 + 1.0 * t.cos(), 0.0, 1.0 * t.sin()]
                })
                .collect(),
        );
        let p = Projection::new(&[a, b]).unwrap();
        assert_eq!(p.diagram.num_crossings(), 2);
        assert_eq!(p.diagram.linking_number(0, 1).unwrap().abs(), 1);
    }

    #[test]
    fn disk_twist_links_parallel_circles() {
        // circles in the planes x = const, each piercing the twist disk once
        let mk = |name: &str, x: f64| {
            Curve::new(
                name,
                (0..144)
                    .map(|i| {
                        let t = (i as f64 * 2.5).to_radians();
                        [x, 3.0 * t.sin(), 3.0 * t.cos() - 3.0]
                    })
                    .collect(),
            )
        };
        let tw = DiskTwist { cx: 5.0, half: 0.5, rho_max: 1.7, t: 2 };
        let twist = |c: Curve| c.refined(|p| tw.inside(p), tw.resolution()).mapped(|p| tw.apply(p));
        let p = Projection::new(&[twist(mk("a", 4.5)), twist(mk("b", 5.5))]).unwrap();
        assert_eq!(p.diagram.linking_number(0, 1).unwrap(), 2);
    }
}
