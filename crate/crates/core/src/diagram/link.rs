use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{DiagramError, Result};

/// Schema tag written into JSON serializations of a [`LinkDiagram`].
pub const LINK_SCHEMA: &str = "surgeon.link/1";

/// One PD crossing: edge labels counterclockwise, incoming under-strand first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Crossing(pub [u32; 4]);

impl Crossing {
    pub fn incoming_under(&self) -> u32 {
        self.0[0]
    }
    pub fn outgoing_under(&self) -> u32 {
        self.0[2]
    }
}

/// A slot of a crossing: `slot` 0 and 2 are the under-strand, 1 and 3 the over-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub crossing: usize,
    pub slot: u8,
}

impl Port {
    fn partner(self) -> Port {
        Port { crossing: self.crossing, slot: self.slot ^ 2 }
    }
}

/// A link component: its edge labels in orientation order.
///
/// A component with a single label that appears in no crossing is a
/// crossingless loop (`Loop[k]` in PD text).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub arcs: Vec<u32>,
}

/// An oriented link diagram in PD form.
///
/// Immutable once built; every constructor validates arc multiplicities and
/// component orientations.
#[derive(Debug, Clone)]
pub struct LinkDiagram {
    name: Option<String>,
    crossings: Vec<Crossing>,
    components: Vec<Component>,
    /// Port at which each edge ends (loops have none).
    head: HashMap<u32, Port>,
    /// Port at which each edge starts.
    tail: HashMap<u32, Port>,
    component_of: HashMap<u32, usize>,
    signs: Vec<i8>,
}

impl PartialEq for LinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.crossings == other.crossings && self.components == other.components
    }
}
impl Eq for LinkDiagram {}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    components: Vec<Component>,
    crossings: Vec<Crossing>,
}

fn port_table(crossings: &[Crossing], loops: &[u32]) -> Result<BTreeMap<u32, Vec<Port>>> {
    let mut ports: BTreeMap<u32, Vec<Port>> = BTreeMap::new();
    for (i, x) in crossings.iter().enumerate() {
        for (slot, &label) in x.0.iter().enumerate() {
            if label == 0 {
                return Err(DiagramError::ZeroLabel);
            }
            ports.entry(label).or_default().push(Port { crossing: i, slot: slot as u8 });
        }
    }
    for (&label, p) in &ports {
        if p.len() != 2 {
            return Err(DiagramError::ArcMultiplicity { label, count: p.len() });
        }
    }
    for &l in loops {
        if l == 0 {
            return Err(DiagramError::ZeroLabel);
        }
        if let Some(p) = ports.get(&l) {
            return Err(DiagramError::ArcMultiplicity { label: l, count: p.len() + 1 });
        }
    }
    Ok(ports)
}

/// Follows a component starting with `start` entering its crossing at `head`.
/// Returns the (arc, head port) sequence.
fn trace(crossings: &[Crossing], ports: &BTreeMap<u32, Vec<Port>>, start: u32, head: Port) -> Result<Vec<(u32, Port)>> {
    let mut out = vec![(start, head)];
    let mut seen: HashMap<u32, Port> = HashMap::new();
    seen.insert(start, head);
    let mut h = head;
    loop {
        let tail_next = h.partner();
        let next = crossings[tail_next.crossing].0[tail_next.slot as usize];
        let p = &ports[&next];
        let next_head = if p[0] == tail_next { p[1] } else { p[0] };
        if next == start {
            if next_head != head {
                return Err(DiagramError::NonCyclic { label: start });
            }
            return Ok(out);
        }
        if seen.insert(next, next_head).is_some() {
            return Err(DiagramError::NonCyclic { label: next });
        }
        h = next_head;
        out.push((next, h));
    }
}

/// Counts under-strand evidence for a traced orientation: (agreeing, disagreeing).
fn orientation_evidence(cycle: &[(u32, Port)], ports: &BTreeMap<u32, Vec<Port>>) -> (usize, usize) {
    let (mut fwd, mut rev) = (0, 0);
    for &(arc, head) in cycle {
        let p = &ports[&arc];
        let tail = if p[0] == head { p[1] } else { p[0] };
        match head.slot {
            0 => fwd += 1,
            2 => rev += 1,
            _ => {}
        }
        match tail.slot {
            2 => fwd += 1,
            0 => rev += 1,
            _ => {}
        }
    }
    (fwd, rev)
}

fn other_port(ports: &BTreeMap<u32, Vec<Port>>, arc: u32, port: Port) -> Port {
    let p = &ports[&arc];
    if p[0] == port {
        p[1]
    } else {
        p[0]
    }
}

fn reverse_cycle(cycle: &[(u32, Port)], ports: &BTreeMap<u32, Vec<Port>>) -> Vec<(u32, Port)> {
    let first = cycle[0];
    let mut out = vec![(first.0, other_port(ports, first.0, first.1))];
    for &(arc, head) in cycle[1..].iter().rev() {
        out.push((arc, other_port(ports, arc, head)));
    }
    out
}

impl LinkDiagram {
    /// Builds a diagram from PD crossings plus crossingless loop labels,
    /// inferring orientations from the under-strands.
    ///
    /// Components that never pass under are oriented so that the edge after
    /// the smallest label carries the next label; two-edge components with no
    /// under passage orient the smaller label's edge into a fourth slot when
    /// possible, otherwise into the lower-indexed crossing.
    pub fn from_pd(crossings: Vec<Crossing>, loops: Vec<u32>, name: Option<String>) -> Result<Self> {
        let ports = port_table(&crossings, &loops)?;
        let mut visited: HashMap<u32, ()> = HashMap::new();
        let mut comps: Vec<(u32, Vec<(u32, Port)>)> = Vec::new();
        for (&label, p) in &ports {
            if visited.contains_key(&label) {
                continue;
            }
            let mut cycle = trace(&crossings, &ports, label, p[1])?;
            let (fwd, rev) = orientation_evidence(&cycle, &ports);
            if fwd > 0 && rev > 0 {
                return Err(DiagramError::NonCyclic { label });
            }
            if rev > 0 {
                cycle = reverse_cycle(&cycle, &ports);
            } else if fwd == 0 && cycle.len() >= 2 {
                let succ_ok = cycle[1].0 == label + 1;
                let rev_succ = cycle[cycle.len() - 1].0 == label + 1;
                let flip = if cycle.len() == 2 {
                    // both orientations visit the same labels: prefer the smaller
                    // label entering at a fourth slot, then the lower crossing
                    let h = cycle[0].1;
                    let alt = other_port(&ports, label, h);
                    if h.slot != alt.slot {
                        h.slot != 3
                    } else {
                        alt < h
                    }
                } else {
                    !succ_ok && rev_succ
                };
                if flip {
                    cycle = reverse_cycle(&cycle, &ports);
                }
            }
            for &(a, _) in &cycle {
                visited.insert(a, ());
            }
            comps.push((label, cycle));
        }
        type Walk = Option<Vec<(u32, Port)>>;
        let mut all: Vec<(u32, Walk)> = comps.into_iter().map(|(m, c)| (m, Some(c))).collect();
        all.extend(loops.iter().map(|&l| (l, None)));
        all.sort_by_key(|(m, _)| *m);
        let components = all
            .into_iter()
            .map(|(l, c)| match c {
                Some(cycle) => cycle,
                None => vec![(l, Port { crossing: usize::MAX, slot: 0 })],
            })
            .collect::<Vec<_>>();
        Self::assemble(name, crossings, components, &ports, None)
    }

    /// Builds a diagram whose component orientations are given explicitly by
    /// the order of `components[i].arcs`.
    pub fn from_oriented(crossings: Vec<Crossing>, components: Vec<Component>, name: Option<String>) -> Result<Self> {
        let loops: Vec<u32> = components
            .iter()
            .filter(|c| c.arcs.len() == 1)
            .map(|c| c.arcs[0])
            .filter(|l| !crossings.iter().any(|x| x.0.contains(l)))
            .collect();
        let ports = port_table(&crossings, &loops)?;
        let mut cycles = Vec::with_capacity(components.len());
        let mut covered = 0usize;
        for comp in &components {
            let Some(&first) = comp.arcs.first() else {
                return Err(DiagramError::NonCyclic { label: 0 });
            };
            if loops.contains(&first) {
                cycles.push(vec![(first, Port { crossing: usize::MAX, slot: 0 })]);
                continue;
            }
            let Some(p) = ports.get(&first) else {
                return Err(DiagramError::StaleArc(first));
            };
            let mut chosen = None;
            for &h in p.iter() {
                let Ok(cycle) = trace(&crossings, &ports, first, h) else { continue };
                let labels: Vec<u32> = cycle.iter().map(|c| c.0).collect();
                if labels != comp.arcs {
                    continue;
                }
                let (_, rev) = orientation_evidence(&cycle, &ports);
                if rev == 0 {
                    chosen = Some(cycle);
                    break;
                }
            }
            let cycle = chosen.ok_or(DiagramError::NonCyclic { label: first })?;
            covered += cycle.len();
            cycles.push(cycle);
        }
        if covered != ports.len() {
            let missing = ports.keys().find(|l| !components.iter().any(|c| c.arcs.contains(l))).copied().unwrap_or(0);
            return Err(DiagramError::NonCyclic { label: missing });
        }
        let names = components.iter().map(|c| c.name.clone()).collect();
        Self::assemble(name, crossings, cycles, &ports, Some(names))
    }

    fn assemble(
        name: Option<String>,
        crossings: Vec<Crossing>,
        cycles: Vec<Vec<(u32, Port)>>,
        ports: &BTreeMap<u32, Vec<Port>>,
        names: Option<Vec<Option<String>>>,
    ) -> Result<Self> {
        let mut head = HashMap::new();
        let mut tail = HashMap::new();
        let mut component_of = HashMap::new();
        let mut components = Vec::with_capacity(cycles.len());
        for (ci, cycle) in cycles.iter().enumerate() {
            for &(arc, h) in cycle {
                component_of.insert(arc, ci);
                if h.crossing != usize::MAX {
                    head.insert(arc, h);
                    tail.insert(arc, other_port(ports, arc, h));
                }
            }
            components.push(Component {
                name: names.as_ref().and_then(|n| n[ci].clone()),
                arcs: cycle.iter().map(|c| c.0).collect(),
            });
        }
        let mut signs = Vec::with_capacity(crossings.len());
        for (i, x) in crossings.iter().enumerate() {
            let [a, b, _, d] = x.0;
            if head.get(&a) != Some(&Port { crossing: i, slot: 0 }) {
                return Err(DiagramError::NonCyclic { label: a });
            }
            let s = if head.get(&d) == Some(&Port { crossing: i, slot: 3 }) {
                1
            } else if head.get(&b) == Some(&Port { crossing: i, slot: 1 }) {
                -1
            } else {
                return Err(DiagramError::NonCyclic { label: b });
            };
            signs.push(s);
        }
        Ok(LinkDiagram { name, crossings, components, head, tail, component_of, signs })
    }

    pub fn empty() -> Self {
        LinkDiagram {
            name: None,
            crossings: Vec::new(),
            components: Vec::new(),
            head: HashMap::new(),
            tail: HashMap::new(),
            component_of: HashMap::new(),
            signs: Vec::new(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Attaches component names (e.g. `k`, `l1`, ...). Extra names are ignored.
    pub fn with_component_names<S: AsRef<str>>(mut self, names: &[S]) -> Self {
        for (c, n) in self.components.iter_mut().zip(names) {
            c.name = Some(n.as_ref().to_string());
        }
        self
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    /// Index of the component named `name`.
    pub fn component_index(&self, name: &str) -> Option<usize> {
        self.components.iter().position(|c| c.name.as_deref() == Some(name))
    }

    pub fn is_loop(&self, component: usize) -> bool {
        let c = &self.components[component];
        c.arcs.len() == 1 && !self.head.contains_key(&c.arcs[0])
    }

    /// Crossing sign: +1 right-handed, -1 left-handed.
    pub fn sign(&self, crossing: usize) -> i8 {
        self.signs[crossing]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn component_of(&self, arc: u32) -> Option<usize> {
        self.component_of.get(&arc).copied()
    }

    /// Port where an edge ends.
    pub fn head(&self, arc: u32) -> Option<Port> {
        self.head.get(&arc).copied()
    }

    /// Port where an edge starts.
    pub fn tail(&self, arc: u32) -> Option<Port> {
        self.tail.get(&arc).copied()
    }

    pub fn under_component(&self, crossing: usize) -> usize {
        self.component_of[&self.crossings[crossing].0[0]]
    }

    pub fn over_component(&self, crossing: usize) -> usize {
        self.component_of[&self.crossings[crossing].0[1]]
    }

    /// Edge following `arc` along its component.
    pub fn next_arc(&self, arc: u32) -> Option<u32> {
        let h = self.head(arc)?;
        Some(self.crossings[h.crossing].0[(h.slot ^ 2) as usize])
    }

    fn check_component(&self, i: usize) -> Result<()> {
        if i >= self.components.len() {
            return Err(DiagramError::NoSuchComponent { index: i, count: self.components.len() });
        }
        Ok(())
    }

    /// Half the signed count of crossings between components `i` and `j`.
    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        self.check_component(i)?;
        self.check_component(j)?;
        if i == j {
            return Err(DiagramError::SameComponent(i));
        }
        let mut total = 0i64;
        for x in 0..self.crossings.len() {
            let (u, o) = (self.under_component(x), self.over_component(x));
            if (u == i && o == j) || (u == j && o == i) {
                total += self.signs[x] as i64;
            }
        }
        if total % 2 != 0 {
            return Err(DiagramError::NonPlanar);
        }
        Ok(total / 2)
    }

    /// Signed count of self-crossings of component `i`.
    pub fn writhe(&self, i: usize) -> Result<i64> {
        self.check_component(i)?;
        Ok((0..self.crossings.len())
            .filter(|&x| self.under_component(x) == i && self.over_component(x) == i)
            .map(|x| self.signs[x] as i64)
            .sum())
    }

    /// Removes component `i` together with every crossing it takes part in.
    pub fn delete_component(&self, i: usize) -> Result<LinkDiagram> {
        Ok(self.delete_component_mapped(i)?.0)
    }

    /// [`delete_component`](Self::delete_component) plus a map from every
    /// surviving old label to the label of the edge containing it.
    pub fn delete_component_mapped(&self, i: usize) -> Result<(LinkDiagram, HashMap<u32, u32>)> {
        self.check_component(i)?;
        // union-find over edge labels: edges separated only by a deleted crossing merge
        let mut parent: HashMap<u32, u32> = HashMap::new();
        fn find(parent: &mut HashMap<u32, u32>, x: u32) -> u32 {
            let p = *parent.get(&x).unwrap_or(&x);
            if p == x {
                return x;
            }
            let r = find(parent, p);
            parent.insert(x, r);
            r
        }
        let mut kept = Vec::new();
        for (xi, x) in self.crossings.iter().enumerate() {
            let (u, o) = (self.under_component(xi), self.over_component(xi));
            if u != i && o != i {
                kept.push(*x);
                continue;
            }
            if u != i {
                let (a, b) = (find(&mut parent, x.0[0]), find(&mut parent, x.0[2]));
                parent.insert(b, a);
            }
            if o != i {
                let (a, b) = (find(&mut parent, x.0[1]), find(&mut parent, x.0[3]));
                parent.insert(b, a);
            }
        }
        let kept: Vec<Crossing> = kept.into_iter().map(|x| Crossing(x.0.map(|l| find(&mut parent, l)))).collect();
        let mut comps = Vec::new();
        for (ci, c) in self.components.iter().enumerate() {
            if ci == i {
                continue;
            }
            let mut arcs: Vec<u32> = Vec::new();
            for &a in &c.arcs {
                let r = find(&mut parent, a);
                if arcs.last() != Some(&r) {
                    arcs.push(r);
                }
            }
            while arcs.len() > 1 && arcs.first() == arcs.last() {
                arcs.pop();
            }
            comps.push(Component { name: c.name.clone(), arcs });
        }
        let d = LinkDiagram::from_oriented(kept, comps, self.name.clone())?;
        let (canon, cmap) = d.canonical_with_map();
        let mut map = HashMap::new();
        for (ci, c) in self.components.iter().enumerate() {
            if ci != i {
                for &a in &c.arcs {
                    map.insert(a, cmap[&find(&mut parent, a)]);
                }
            }
        }
        Ok((canon, map))
    }

    /// Reverses the orientation of component `i`.
    pub fn reverse_component(&self, i: usize) -> Result<LinkDiagram> {
        self.check_component(i)?;
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(xi, x)| {
                if self.under_component(xi) == i {
                    let [a, b, c, d] = x.0;
                    Crossing([c, d, a, b])
                } else {
                    *x
                }
            })
            .collect();
        let mut comps = self.components.clone();
        let arcs = &mut comps[i].arcs;
        if arcs.len() > 1 {
            arcs[1..].reverse();
        }
        LinkDiagram::from_oriented(crossings, comps, self.name.clone())
    }

    /// Renames edges through `map` (labels not in the map keep their value).
    pub fn relabel(&self, map: &HashMap<u32, u32>) -> Result<LinkDiagram> {
        let f = |l: u32| *map.get(&l).unwrap_or(&l);
        let crossings = self.crossings.iter().map(|x| Crossing(x.0.map(f))).collect();
        let comps = self
            .components
            .iter()
            .map(|c| Component { name: c.name.clone(), arcs: c.arcs.iter().map(|&a| f(a)).collect() })
            .collect();
        LinkDiagram::from_oriented(crossings, comps, self.name.clone())
    }

    /// Canonical relabeling with crossings sorted lexicographically.
    ///
    /// Components whose orientation PD text cannot carry (no under passage)
    /// get their starting edge rotated until re-parsing the canonical text
    /// reproduces the orientation.
    pub fn canonical(&self) -> LinkDiagram {
        self.canonical_with_map().0
    }

    /// [`canonical`](Self::canonical) plus the old-to-new label map.
    pub fn canonical_with_map(&self) -> (LinkDiagram, HashMap<u32, u32>) {
        let mut comps = self.components.clone();
        let mut best = self.relabeled_sorted(&comps);
        for _ in 0..4 {
            let d = &best.0;
            let loops: Vec<u32> =
                (0..d.components.len()).filter(|&i| d.is_loop(i)).map(|i| d.components[i].arcs[0]).collect();
            let Ok(reparsed) = LinkDiagram::from_pd(d.crossings.clone(), loops, None) else {
                break;
            };
            let mut changed = false;
            for (i, (a, b)) in d.components.iter().zip(&reparsed.components).enumerate() {
                if a.arcs != b.arcs && comps[i].arcs.len() > 1 {
                    comps[i].arcs.rotate_left(1);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            best = self.relabeled_sorted(&comps);
        }
        best
    }

    fn relabeled_sorted(&self, comps: &[Component]) -> (LinkDiagram, HashMap<u32, u32>) {
        let mut map = HashMap::new();
        let mut next = 1u32;
        for c in comps {
            for &a in &c.arcs {
                map.insert(a, next);
                next += 1;
            }
        }
        let f = |l: u32| map[&l];
        let mut crossings: Vec<Crossing> = self.crossings.iter().map(|x| Crossing(x.0.map(f))).collect();
        crossings.sort();
        let comps = comps
            .iter()
            .map(|c| Component { name: c.name.clone(), arcs: c.arcs.iter().map(|&a| f(a)).collect() })
            .collect();
        let d = LinkDiagram::from_oriented(crossings, comps, self.name.clone()).expect("relabeling preserves validity");
        (d, map)
    }

    /// Structural equality up to edge relabeling and crossing order.
    pub fn same_up_to_relabeling(&self, other: &LinkDiagram) -> bool {
        let (a, b) = (self.canonical(), other.canonical());
        a.crossings == b.crossings && a.components.iter().map(|c| &c.arcs).eq(b.components.iter().map(|c| &c.arcs))
    }

    /// Knot diagrams equal up to relabeling, allowing the starting edge to
    /// differ. Always false for links.
    pub fn same_knot_up_to_start(&self, other: &LinkDiagram) -> bool {
        if self.num_components() != 1 || other.num_components() != 1 {
            return false;
        }
        let a = self.canonical();
        let b = other.canonical();
        let n = b.components[0].arcs.len();
        if a.components[0].arcs.len() != n || a.crossings.len() != b.crossings.len() {
            return false;
        }
        (0..n).any(|r| {
            let mut comps = b.components.clone();
            comps[0].arcs.rotate_left(r);
            b.relabeled_sorted(&comps).0.crossings == a.crossings
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DiagramJson {
            schema: LINK_SCHEMA.to_string(),
            name: self.name.clone(),
            components: self.components.clone(),
            crossings: self.crossings.clone(),
        })
        .expect("diagram serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let j: DiagramJson = serde_json::from_value(value.clone()).map_err(|e| DiagramError::Json(e.to_string()))?;
        if j.schema != LINK_SCHEMA {
            return Err(DiagramError::Json(format!("unsupported schema {:?}", j.schema)));
        }
        LinkDiagram::from_oriented(j.crossings, j.components, j.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> LinkDiagram {
        LinkDiagram::from_pd(vec![Crossing([1, 3, 2, 4]), Crossing([3, 1, 4, 2])], vec![], None).unwrap()
    }

    fn trefoil() -> LinkDiagram {
        LinkDiagram::from_pd(vec![Crossing([1, 5, 2, 4]), Crossing([3, 1, 4, 6]), Crossing([5, 3, 6, 2])], vec![], None)
            .unwrap()
    }

    #[test]
    fn hopf_link_basics() {
        let h = hopf();
        assert_eq!(h.num_components(), 2);
        assert_eq!(h.signs(), &[1, 1]);
        assert_eq!(h.linking_number(0, 1).unwrap(), 1);
        assert_eq!(h.linking_number(1, 0).unwrap(), 1);
        assert_eq!(h.linking_number(0, 0), Err(DiagramError::SameComponent(0)));
    }

    #[test]
    fn trefoil_writhe() {
        let t = trefoil();
        assert_eq!(t.num_components(), 1);
        assert_eq!(t.components()[0].arcs, vec![1, 2, 3, 4, 5, 6]);
        // this PD trefoil is right-handed
        assert_eq!(t.writhe(0).unwrap(), 3);
    }

    #[test]
    fn reversal_negates_linking() {
        let h = hopf();
        let r = h.reverse_component(0).unwrap();
        assert_eq!(r.linking_number(0, 1).unwrap(), -1);
        assert_eq!(r.reverse_component(0).unwrap().linking_number(0, 1).unwrap(), 1);
    }

    #[test]
    fn deleting_a_hopf_component_leaves_a_loop() {
        let d = hopf().delete_component(0).unwrap();
        assert_eq!(d.num_components(), 1);
        assert_eq!(d.num_crossings(), 0);
        assert!(d.is_loop(0));
    }

    #[test]
    fn multiplicity_errors() {
        let e = LinkDiagram::from_pd(vec![Crossing([1, 2, 3, 4])], vec![], None).unwrap_err();
        assert!(matches!(e, DiagramError::ArcMultiplicity { .. }));
    }

    #[test]
    fn json_round_trip() {
        let t = trefoil().with_name("3_1").with_component_names(&["k"]);
        let j = t.to_json();
        let back = LinkDiagram::from_json(&j).unwrap();
        assert_eq!(back, t);
    }
}
