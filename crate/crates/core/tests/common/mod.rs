#![allow(dead_code)]

use proptest::prelude::*;
use surgeon::diagram::{Crossing, LinkDiagram};

/// Closure of a braid word on `strands` strands, every strand oriented upward.
/// Generator `(j, true)` is σ_j (left strand over), `(j, false)` its inverse.
pub fn braid_closure(strands: usize, word: &[(usize, bool)]) -> LinkDiagram {
    let mut next = strands as u32 + 1;
    let mut cur: Vec<u32> = (1..=strands as u32).collect();
    let mut crossings: Vec<[u32; 4]> = Vec::new();
    for &(j, pos) in word {
        let (bl, br) = (cur[j], cur[j + 1]);
        let (tl, tr) = (next, next + 1);
        next += 2;
        crossings.push(if pos { [br, tr, tl, bl] } else { [bl, br, tr, tl] });
        cur[j] = tl;
        cur[j + 1] = tr;
    }
    // close up: the top label at position i is the bottom label i
    let close: std::collections::HashMap<u32, u32> = cur.iter().enumerate().map(|(i, &l)| (l, i as u32 + 1)).collect();
    let crossings: Vec<Crossing> =
        crossings.into_iter().map(|x| Crossing(x.map(|l| *close.get(&l).unwrap_or(&l)))).collect();
    let used: std::collections::HashSet<u32> = crossings.iter().flat_map(|x| x.0).collect();
    let loops = (1..=strands as u32).filter(|l| !used.contains(l)).collect();
    LinkDiagram::from_pd(crossings, loops, None).expect("braid closures are valid")
}

pub fn braid_word(max_strands: usize, max_len: usize) -> impl Strategy<Value = (usize, Vec<(usize, bool)>)> {
    (2..=max_strands).prop_flat_map(move |k| (Just(k), prop::collection::vec((0..k - 1, any::<bool>()), 0..=max_len)))
}

pub fn random_diagram(max_strands: usize, max_len: usize) -> impl Strategy<Value = LinkDiagram> {
    braid_word(max_strands, max_len).prop_map(|(k, w)| braid_closure(k, &w))
}

/// Linking number of two closed polygons from the exact solid angle swept by
/// each pair of segments.
pub fn gauss_linking(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    fn sub(p: [f64; 3], q: [f64; 3]) -> [f64; 3] {
        [p[0] - q[0], p[1] - q[1], p[2] - q[2]]
    }
    fn cross(p: [f64; 3], q: [f64; 3]) -> [f64; 3] {
        [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]]
    }
    fn dot(p: [f64; 3], q: [f64; 3]) -> f64 {
        p[0] * q[0] + p[1] * q[1] + p[2] * q[2]
    }
    fn unit(p: [f64; 3]) -> [f64; 3] {
        let l = dot(p, p).sqrt();
        [p[0] / l, p[1] / l, p[2] / l]
    }
    let mut total = 0.0;
    for i in 0..a.len() {
        let (a1, a2) = (a[i], a[(i + 1) % a.len()]);
        for j in 0..b.len() {
            let (b1, b2) = (b[j], b[(j + 1) % b.len()]);
            let (r11, r12, r21, r22) = (sub(b1, a1), sub(b2, a1), sub(b1, a2), sub(b2, a2));
            let n = [cross(r11, r12), cross(r12, r22), cross(r22, r21), cross(r21, r11)].map(unit);
            let omega: f64 = (0..4).map(|k| dot(n[k], n[(k + 1) % 4]).clamp(-1.0, 1.0).asin()).sum();
            let s = dot(cross(sub(b2, b1), sub(a2, a1)), r11);
            total += omega * s.signum();
        }
    }
    total / (4.0 * std::f64::consts::PI)
}
