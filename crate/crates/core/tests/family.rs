mod common;

use num_bigint::BigInt;
use surgeon::diagram::{dt_export, parse_pd};
use surgeon::family::asset::{self, K, L1, L2, L3};
use surgeon::family::geometry::{Curve, Projection, P3};
use surgeon::family::*;
use surgeon::invariants::wirtinger;
use surgeon::surgery::{rolfsen_twist, Slope};

fn circle(n: usize, f: impl Fn(f64) -> P3) -> Vec<P3> {
    (0..n).map(|i| f((i as f64 + 0.5) / n as f64 * std::f64::consts::TAU)).collect()
}

fn projected_lk(a: &Curve, b: &Curve) -> i64 {
    let p = Projection::new(&[a.clone(), b.clone()]).unwrap();
    p.diagram.linking_number(0, 1).unwrap()
}

#[test]
fn disk_twist_calibration() {
    // two horizontal circles through D3, unlinked before twisting
    let a = Curve::new("a", circle(240, |s| [5.3 * s.cos(), 5.3 * s.sin(), 0.3]));
    let b = Curve::new("b", circle(240, |s| [4.7 * s.cos(), 4.7 * s.sin(), -0.3]));
    for t in -2..=2 {
        let d = asset::disk_map(t);
        let twist = |c: &Curve| c.refined(|p| d.inside(p), d.resolution()).mapped(|p| d.apply(p));
        let (a2, b2) = (twist(&a), twist(&b));
        let oracle = common::gauss_linking(&a2.points, &b2.points);
        assert!((oracle - t as f64).abs() < 1e-6, "t = {t}: oracle {oracle}");
        assert_eq!(projected_lk(&a2, &b2), t);
    }
}

#[test]
fn annulus_twist_calibration() {
    // a: small loop around l1 crossing A once; b: loop around the whole band,
    // clear of the twist support
    let loop_at = |deg: f64, radius: f64| {
        let (s, c) = deg.to_radians().sin_cos();
        circle(240, move |u| {
            let r = 6.0 + radius * u.cos();
            [r * c, r * s, radius * u.sin()]
        })
    };
    let a = Curve::new("a", loop_at(90.0, 0.7));
    let b = Curve::new("b", loop_at(150.0, 2.2));
    let l1 = Curve::new("l1", circle(288, |s| [6.0 * s.cos(), 6.0 * s.sin(), 0.0]));
    let sign =
        common::gauss_linking(&a.points, &l1.points).round() * common::gauss_linking(&b.points, &l1.points).round();
    assert_eq!(sign, 1.0);
    for t in -2..=2 {
        let m = asset::annulus_map(t);
        let a2 = a.refined(|p| m.inside(p), m.resolution()).mapped(|p| m.apply(p));
        let oracle = common::gauss_linking(&a2.points, &b.points);
        assert!((oracle - t as f64).abs() < 1e-6, "t = {t}: oracle {oracle}");
        assert_eq!(projected_lk(&a2, &b), t);
    }
}

#[test]
fn model_linking_matches_gauss_oracle() {
    let curves = asset::model();
    let base = base_link().unwrap();
    for i in 0..4 {
        for j in i + 1..4 {
            let oracle = common::gauss_linking(&curves[i].points, &curves[j].points);
            assert!((oracle - oracle.round()).abs() < 1e-6);
            assert_eq!(BigInt::from(oracle.round() as i64), *base.lk(i, j), "lk({i},{j})");
        }
    }
}

#[test]
fn stored_transcription_matches_model() {
    let stored = parse_pd(asset::L_PD).unwrap();
    let rendered = parse_pd(&asset::render_asset().unwrap()).unwrap();
    assert!(stored.same_up_to_relabeling(&rendered));
    assert_eq!(stored.num_components(), 4);
}

#[test]
fn base_link_data() {
    let base = base_link().unwrap();
    assert_eq!(base.len(), 4);
    assert!(base.slopes.iter().all(Slope::is_unfilled));
    assert_eq!(*base.lk(L1, L2), BigInt::from(0));
    assert_eq!(base.lk(L1, L3) * base.lk(L2, L3), BigInt::from(1));
    assert_eq!(*base.lk(K, L3), BigInt::from(-1));
}

#[test]
fn consistent_sheet_passes_and_literal_sheet_reports_two_entries() {
    let a = asset().unwrap();
    assert!(a.sheet.passed());
    let literal = a.literal_sheet();
    let failed: Vec<&str> = literal.failures().iter().map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["lk(k,l3)", "k.D3 geometric"]);
}

#[test]
fn untwisted_member_is_k() {
    let base = base_link().unwrap();
    let mut d = base.diagram.clone().unwrap();
    for c in [L3, L2, L1] {
        d = d.delete_component(c).unwrap();
    }
    let k = knot_diagram(0, 0).unwrap();
    assert!(k.same_knot_up_to_start(&d));
    assert_eq!(dt_export(&k).unwrap(), dt_export(&d.canonical()).unwrap());
}

#[test]
fn presentations_carry_family_slopes() {
    let p = knot_presentation(0, 0).unwrap();
    assert!(p.slopes[K].is_unfilled());
    assert!(p.slopes[1..].iter().all(Slope::is_meridian));
    let p = knot_presentation(2, -3).unwrap();
    assert_eq!(p.slopes[1..], [Slope::new(-1, 2).unwrap(), Slope::new(1, 2).unwrap(), Slope::new(1, 3).unwrap()]);
    let q = surgered_presentation(0, 4).unwrap();
    assert_eq!(q.slopes, [Slope::integer(0), Slope::meridian(), Slope::meridian(), Slope::new(-1, 4).unwrap()]);
}

#[test]
fn members_live_in_s3() {
    for m in -3..=3 {
        for n in -3..=3 {
            let trace = s3_evidence(m, n).unwrap();
            let last = trace.last().unwrap();
            assert_eq!(last.filled, 0, "m = {m}, n = {n}");
            assert!(last.ambient_h1.is_trivial());
        }
    }
}

#[test]
fn induced_slope_is_n_over_one() {
    for m in -5..=5 {
        for n in -5..=5 {
            let s = induced_surgery_slope(m, n).unwrap();
            assert_eq!(s, Slope::integer(n));
            assert_eq!(slope_by_moves(m, n).unwrap(), s);
        }
    }
    assert_eq!(boundary_linking(3).unwrap(), BigInt::from(-6));
}

#[test]
fn surgered_homology_is_independent_of_m() {
    for n in -3..=3i64 {
        let expected = surgered_presentation(0, n).unwrap().first_homology();
        if n == 0 {
            assert_eq!((expected.free_rank, expected.torsion.len()), (1, 0));
        } else if n.abs() == 1 {
            assert!(expected.is_trivial());
        } else {
            assert_eq!((expected.free_rank, expected.torsion.clone()), (0, vec![BigInt::from(n.abs())]));
        }
        for m in 0..=10 {
            assert_eq!(surgered_presentation(m, n).unwrap().first_homology(), expected, "m = {m}, n = {n}");
        }
    }
}

#[test]
fn evidence_reports() {
    let r = same_surgery_evidence(1, 0, 1);
    assert!(r.h1_match && r.common_form_match && r.slope_check && r.complete);
    assert!(r.h1[0].as_ref().unwrap().is_trivial());
    let r = same_surgery_evidence(3, 2, 2);
    assert!(r.h1_match && r.common_form_match && r.slope_check);
    let r = same_surgery_evidence(-2, 1, 2);
    assert!(r.h1_match && r.common_form_match && r.slope_check);
    assert_eq!(r.h1[1].as_ref().unwrap().torsion, vec![BigInt::from(2)]);
    assert!(r.notes[0].contains("not certified"));
    let json = serde_json::to_value(&r).unwrap();
    assert_eq!(serde_json::from_value::<EvidenceReport>(json).unwrap(), r);
}

#[test]
fn rolfsen_twist_on_l3_links_l1_and_l2() {
    for n in -5..=5 {
        let mut slopes = vec![Slope::Unfilled; 4];
        slopes[L3] = Slope::new(-1, n).unwrap();
        let p = base_link().unwrap().with_slopes(slopes).unwrap();
        let q = rolfsen_twist(&p, L3, n).unwrap();
        assert_eq!(*q.lk(L1, L2), BigInt::from(n));
        let recount = q.diagram.as_ref().unwrap().linking_number(L1, L2).unwrap();
        assert_eq!(recount, n);
    }
}

#[test]
fn diagrams_are_knots_with_matching_wirtinger_data() {
    let (d, trace) = knot_diagram_with_trace(1, 1).unwrap();
    assert_eq!(d.num_components(), 1);
    assert!(trace.last().unwrap().ambient_h1.is_trivial());
    let g = wirtinger(&d).unwrap();
    assert_eq!(g.relators.len(), d.num_crossings());
    // one arc per undercrossing
    assert_eq!(g.generators.len(), d.num_crossings());
    let dt = dt_export(&d).unwrap();
    assert_eq!(dt.split_whitespace().count(), d.num_crossings());
}

#[test]
fn crossing_counts_grow_with_twisting() {
    let c = |m, n| knot_diagram(m, n).unwrap().num_crossings();
    assert_eq!(c(0, 0), 4);
    // three strands through D3: a full twist adds 2 * 3 crossings
    assert_eq!([c(0, 1), c(0, 2)], [10, 16]);
    assert_eq!([c(0, -1), c(0, -2)], [10, 16]);
    let by_m: Vec<usize> = (0..=3).map(|m| c(m, 0)).collect();
    assert!(by_m.windows(2).all(|w| w[0] < w[1]), "{by_m:?}");
    let by_m: Vec<usize> = (0..=2).map(|m| c(m, 1)).collect();
    assert!(by_m.windows(2).all(|w| w[0] < w[1]), "{by_m:?}");
}
