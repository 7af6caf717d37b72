use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{InvariantError, Result};
use crate::diagram::LinkDiagram;

/// A generator raised to `exp = ±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub exp: i8,
}

/// Finitely presented group. Generators are named by the smallest edge
/// label of the diagram arc they stand for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<u32>,
    pub relators: Vec<Vec<Letter>>,
}

/// Wirtinger presentation of a knot diagram: one generator per arc (edges
/// joined through over-passages) and, at a crossing of sign `e` with over
/// arc `k`, incoming under arc `i` and outgoing under arc `j`, the relator
/// `k^e i k^-e j^-1`.
pub fn wirtinger(d: &LinkDiagram) -> Result<GroupPresentation> {
    if d.num_components() != 1 {
        return Err(InvariantError::NotAKnot(d.num_components()));
    }
    let edges: Vec<u32> = d.components()[0].arcs.clone();
    let index: HashMap<u32, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut parent: Vec<usize> = (0..edges.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for x in d.crossings() {
        let (a, b) = (find(&mut parent, index[&x.0[1]]), find(&mut parent, index[&x.0[3]]));
        parent[a.max(b)] = a.min(b);
    }
    let mut gen_of_root: HashMap<usize, usize> = HashMap::new();
    let mut generators = Vec::new();
    let gen_of_edge: Vec<usize> = (0..edges.len())
        .map(|i| {
            let r = find(&mut parent, i);
            *gen_of_root.entry(r).or_insert_with(|| {
                generators.push(edges[r]);
                generators.len() - 1
            })
        })
        .collect();
    let g = |label: u32| gen_of_edge[index[&label]];
    let relators = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(c, x)| {
            let e = d.sign(c);
            let (i, k, j) = (g(x.0[0]), g(x.0[1]), g(x.0[2]));
            vec![
                Letter { gen: k, exp: e },
                Letter { gen: i, exp: 1 },
                Letter { gen: k, exp: -e },
                Letter { gen: j, exp: -1 },
            ]
        })
        .collect();
    Ok(GroupPresentation { generators, relators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    #[test]
    fn unknot_and_trefoil_shapes() {
        let u = wirtinger(&parse_pd("Loop[1]").unwrap()).unwrap();
        assert_eq!((u.generators.len(), u.relators.len()), (1, 0));
        let t = wirtinger(&parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap()).unwrap();
        assert_eq!((t.generators.len(), t.relators.len()), (3, 3));
        assert!(t.relators.iter().all(|r| r.len() == 4));
    }

    #[test]
    fn links_rejected() {
        let hopf = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(wirtinger(&hopf), Err(InvariantError::NotAKnot(2)));
    }
}
