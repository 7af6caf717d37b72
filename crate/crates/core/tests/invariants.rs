mod common;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use surgeon::diagram::{parse_pd, LinkDiagram};
use surgeon::family::knot_diagram;
use surgeon::invariants::{alexander_polynomial, determinant, wirtinger, LaurentPoly};

const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";
const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

/// Polynomials in `t` as dense coefficient vectors, lowest degree first.
type Poly = Vec<BigInt>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Exact division; panics if `b` does not divide `a`.
fn div(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    if r.is_empty() {
        return r;
    }
    let lead = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() + 1 - b.len()];
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        assert!((&c * lead) == *r.last().unwrap(), "inexact division");
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &c * y;
        }
        q[shift] = c;
        r = trim(r);
    }
    assert!(r.is_empty(), "inexact division");
    trim(q)
}

/// Fraction-free Gaussian elimination over `Z[t]`.
fn bareiss_det(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    let mut sign = false;
    let mut prev: Poly = vec![BigInt::one()];
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_empty()) else { return Vec::new() };
        if p != k {
            m.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = sub(&mul(&m[i][j], &m[k][k]), &mul(&m[i][k], &m[k][j]));
                m[i][j] = div(&v, &prev);
            }
            m[i][k] = Vec::new();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.iter().map(|c| -c).collect()
    } else {
        d
    }
}

/// Alexander polynomial from the crossing rule: at a crossing with over arc
/// `k`, incoming under arc `i` and outgoing under arc `j`, the row is
/// `(1 - t) k + t i - j` for a positive crossing and `(t - 1) k + i - t j`
/// for a negative one. Arcs are found by joining the two over-edges.
fn crossing_rule_oracle(d: &LinkDiagram) -> LaurentPoly {
    let n = d.num_crossings();
    if n == 0 {
        return LaurentPoly::one();
    }
    let edges: Vec<u32> = d.components()[0].arcs.clone();
    let mut arc_of: HashMap<u32, u32> = edges.iter().map(|&e| (e, e)).collect();
    loop {
        let mut changed = false;
        for x in d.crossings() {
            let (b, dd) = (arc_of[&x.0[1]], arc_of[&x.0[3]]);
            if b != dd {
                let lo = b.min(dd);
                for v in arc_of.values_mut() {
                    if *v == b || *v == dd {
                        *v = lo;
                    }
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut arcs: Vec<u32> = arc_of.values().copied().collect();
    arcs.sort();
    arcs.dedup();
    assert_eq!(arcs.len(), n, "one arc per crossing");
    let col: HashMap<u32, usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let c = |v: i64| BigInt::from(v);
    let mut rows = vec![vec![Vec::<BigInt>::new(); n]; n];
    for (r, x) in d.crossings().iter().enumerate() {
        let (i, k, j) = (col[&arc_of[&x.0[0]]], col[&arc_of[&x.0[1]]], col[&arc_of[&x.0[2]]]);
        let entries = if d.sign(r) > 0 {
            [(k, vec![c(1), c(-1)]), (i, vec![c(0), c(1)]), (j, vec![c(-1)])]
        } else {
            [(k, vec![c(-1), c(1)]), (i, vec![c(1)]), (j, vec![c(0), c(-1)])]
        };
        for (col, p) in entries {
            let mut acc = rows[r][col].clone();
            acc.resize(acc.len().max(p.len()), BigInt::zero());
            for (e, v) in p.into_iter().enumerate() {
                acc[e] += v;
            }
            rows[r][col] = trim(acc);
        }
    }
    let minor: Vec<Vec<Poly>> = rows
        .into_iter()
        .take(n - 1)
        .map(|mut r| {
            r.truncate(n - 1);
            r
        })
        .collect();
    LaurentPoly::from_coeffs(0, &bareiss_det(minor)).normalized()
}

#[test]
fn frozen_hand_values() {
    // Frozen from the crossing-rule oracle worked by hand on the diagrams
    // above.
    let unknot = parse_pd("Loop[1]").unwrap();
    assert_eq!(alexander_polynomial(&unknot).unwrap(), LaurentPoly::one());
    let trefoil = parse_pd(TREFOIL).unwrap();
    assert_eq!(alexander_polynomial(&trefoil).unwrap().to_string(), "t - 1 + t^-1");
    assert_eq!(determinant(&trefoil).unwrap(), BigInt::from(3));
    let f8 = parse_pd(FIGURE_EIGHT).unwrap();
    assert_eq!(alexander_polynomial(&f8).unwrap().to_string(), "-t + 3 - t^-1");
    assert_eq!(determinant(&f8).unwrap(), BigInt::from(5));
}

#[test]
fn oracle_agrees_on_named_knots() {
    for pd in [TREFOIL, FIGURE_EIGHT] {
        let d = parse_pd(pd).unwrap();
        assert_eq!(alexander_polynomial(&d).unwrap(), crossing_rule_oracle(&d));
    }
    let cinquefoil = common::braid_closure(2, &[(0, true); 5]);
    assert_eq!(alexander_polynomial(&cinquefoil).unwrap().to_string(), "t^2 - t + 1 - t^-1 + t^-2");
}

#[test]
fn oracle_agrees_on_untwisted_family_members() {
    for n in -2..=2 {
        let d = knot_diagram(0, n).unwrap();
        assert_eq!(alexander_polynomial(&d).unwrap(), crossing_rule_oracle(&d), "n = {n}");
    }
}

#[test]
fn family_members_satisfy_knot_properties() {
    for m in 0..=2 {
        for n in 0..=2 {
            let d = knot_diagram(m, n).unwrap();
            let p = alexander_polynomial(&d).unwrap();
            assert_eq!(p.eval(&BigInt::one()), Some(BigInt::one()), "m = {m}, n = {n}");
            assert!(p.is_palindromic());
            assert_eq!(determinant(&d).unwrap() % 2u32, BigInt::one());
            let g = wirtinger(&d).unwrap();
            assert_eq!(g.relators.len(), d.num_crossings());
        }
    }
}

fn knot_word() -> impl Strategy<Value = (usize, Vec<(usize, bool)>)> {
    common::braid_word(4, 10)
        .prop_filter("closure must be a knot", |(k, w)| common::braid_closure(*k, w).num_components() == 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn matches_crossing_rule_oracle((k, w) in knot_word()) {
        let d = common::braid_closure(k, &w);
        prop_assert_eq!(alexander_polynomial(&d).unwrap(), crossing_rule_oracle(&d));
    }

    #[test]
    fn knot_polynomial_properties((k, w) in knot_word()) {
        let d = common::braid_closure(k, &w);
        let p = alexander_polynomial(&d).unwrap();
        prop_assert_eq!(p.eval(&BigInt::one()), Some(BigInt::one()));
        prop_assert!(p.is_palindromic());
        prop_assert_eq!(determinant(&d).unwrap() % 2u32, BigInt::one());
        let g = wirtinger(&d).unwrap();
        prop_assert_eq!(g.relators.len(), d.num_crossings());
        prop_assert!(g.relators.iter().all(|r| r.len() == 4));
    }

    #[test]
    fn invariant_under_stabilization_and_mirror((k, w) in knot_word()) {
        let p = alexander_polynomial(&common::braid_closure(k, &w)).unwrap();
        for sign in [true, false] {
            let mut stab = w.clone();
            stab.push((k - 1, sign));
            prop_assert_eq!(&alexander_polynomial(&common::braid_closure(k + 1, &stab)).unwrap(), &p);
        }
        let mirror: Vec<(usize, bool)> = w.iter().map(|&(j, s)| (j, !s)).collect();
        prop_assert_eq!(&alexander_polynomial(&common::braid_closure(k, &mirror)).unwrap(), &p);
        let mut conj = w.clone();
        conj.rotate_left(w.len().min(1));
        prop_assert_eq!(&alexander_polynomial(&common::braid_closure(k, &conj)).unwrap(), &p);
    }

    #[test]
    fn laurent_json_round_trip(lo in -5i64..5, coeffs in prop::collection::vec(-20i64..20, 0..8)) {
        let p = LaurentPoly::from_coeffs(lo, &coeffs);
        let v = serde_json::to_value(&p).unwrap();
        prop_assert_eq!(serde_json::from_value::<LaurentPoly>(v).unwrap(), p);
    }
}
