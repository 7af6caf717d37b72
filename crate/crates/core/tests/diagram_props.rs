mod common;

use std::collections::HashMap;

use common::{braid_closure, braid_word, random_diagram};
use proptest::prelude::*;
use surgeon::diagram::LinkDiagram;
use surgeon::diagram::{insert_full_twists, parse_pd, serialize_pd, Strand, TwistRegion};

/// Linking numbers read straight off the braid word.
fn braid_linking(k: usize, word: &[(usize, bool)], d: &LinkDiagram) -> HashMap<(usize, usize), i64> {
    let mut at: Vec<usize> = (0..k).collect();
    let mut twice: HashMap<(usize, usize), i64> = HashMap::new();
    for &(j, pos) in word {
        let a = d.component_of(at[j] as u32 + 1).unwrap();
        let b = d.component_of(at[j + 1] as u32 + 1).unwrap();
        if a != b {
            *twice.entry((a.min(b), a.max(b))).or_default() += if pos { 1 } else { -1 };
        }
        at.swap(j, j + 1);
    }
    twice.into_iter().map(|(key, v)| (key, v / 2)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialize_parse_round_trip(d in random_diagram(5, 24)) {
        let text = serialize_pd(&d);
        let back = parse_pd(&text).unwrap();
        prop_assert!(back.same_up_to_relabeling(&d));
        prop_assert_eq!(serialize_pd(&back), text);
        prop_assert_eq!(back.signs().iter().filter(|&&s| s > 0).count(),
                        d.signs().iter().filter(|&&s| s > 0).count());
    }

    #[test]
    fn json_round_trip(d in random_diagram(4, 16)) {
        let back = LinkDiagram::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn linking_matches_braid_oracle((k, w) in braid_word(5, 24)) {
        let d = braid_closure(k, &w);
        let oracle = braid_linking(k, &w, &d);
        for i in 0..d.num_components() {
            for j in 0..d.num_components() {
                if i == j { continue; }
                let lk = d.linking_number(i, j).unwrap();
                prop_assert_eq!(lk, d.linking_number(j, i).unwrap());
                prop_assert_eq!(lk, *oracle.get(&(i.min(j), i.max(j))).unwrap_or(&0));
            }
        }
    }

    #[test]
    fn reversal_negates_linking(d in random_diagram(4, 16), pick in 0usize..4) {
        let i = pick % d.num_components();
        let r = d.reverse_component(i).unwrap();
        for j in 0..d.num_components() {
            if j == i { continue; }
            prop_assert_eq!(r.linking_number(i, j).unwrap(), -d.linking_number(i, j).unwrap());
        }
        prop_assert_eq!(r.writhe(i).unwrap(), d.writhe(i).unwrap());
    }

    #[test]
    fn twist_changes_linking_by_direction_products(
        (k, w) in braid_word(4, 10),
        t in -2i64..=2,
    ) {
        let d = braid_closure(k, &w);
        // slice just below the braid: the bottom edges 1..=k
        let strands: Vec<Strand> = (0..k).map(|i| Strand { arc: i as u32 + 1, dir: 1 }).collect();
        let r = TwistRegion::new(strands, None);
        let (e, _) = insert_full_twists(&d, &r, t).unwrap();
        prop_assert_eq!(e.num_crossings(), d.num_crossings() + (t.unsigned_abs() as usize) * k * (k - 1));
        let comp: Vec<usize> = (0..k).map(|i| d.component_of(i as u32 + 1).unwrap()).collect();
        for i in 0..d.num_components() {
            for j in (i + 1)..d.num_components() {
                let mut expect = d.linking_number(i, j).unwrap();
                for a in 0..k {
                    for b in 0..k {
                        if a != b && comp[a] == i && comp[b] == j {
                            expect += t;
                        }
                    }
                }
                prop_assert_eq!(e.linking_number(i, j).unwrap(), expect);
            }
        }
    }

    #[test]
    fn twists_compose((k, w) in braid_word(3, 8), t1 in -2i64..=2, t2 in -2i64..=2) {
        let d = braid_closure(k, &w);
        let strands: Vec<Strand> = (0..k).map(|i| Strand { arc: i as u32 + 1, dir: 1 }).collect();
        let r = TwistRegion::new(strands, None);
        let (a, ra) = insert_full_twists(&d, &r, t1).unwrap();
        let (b, _) = insert_full_twists(&a, &ra, t2).unwrap();
        let (c, _) = insert_full_twists(&d, &r, t1 + t2).unwrap();
        prop_assert_eq!(b.num_components(), c.num_components());
        let expected = d.num_crossings() + (t1.unsigned_abs() + t2.unsigned_abs()) as usize * k * (k - 1);
        prop_assert_eq!(b.num_crossings(), expected);
        for i in 0..b.num_components() {
            for j in (i + 1)..b.num_components() {
                prop_assert_eq!(b.linking_number(i, j).unwrap(), c.linking_number(i, j).unwrap());
            }
        }
    }

    #[test]
    fn twisting_commutes_with_reversal((k, w) in braid_word(4, 10), t in -2i64..=2) {
        let d = braid_closure(k, &w);
        let up: Vec<Strand> = (0..k).map(|i| Strand { arc: i as u32 + 1, dir: 1 }).collect();
        let (e, _) = insert_full_twists(&d, &TwistRegion::new(up.clone(), None), t).unwrap();
        let rev = d.reverse_component(0).unwrap();
        let flipped: Vec<Strand> = up
            .iter()
            .map(|s| Strand { arc: s.arc, dir: if d.component_of(s.arc) == Some(0) { -1 } else { 1 } })
            .collect();
        let (f, _) = insert_full_twists(&rev, &TwistRegion::new(flipped, None), t).unwrap();
        prop_assert_eq!(f.num_crossings(), e.num_crossings());
        for j in 1..d.num_components() {
            prop_assert_eq!(f.linking_number(0, j).unwrap(), -e.linking_number(0, j).unwrap());
        }
        for i in 0..d.num_components() {
            prop_assert_eq!(f.writhe(i).unwrap(), e.writhe(i).unwrap());
        }
    }
}

#[test]
fn reversed_strands_in_region() {
    // two loops, one strand reversed: lk changes by -t
    let d = parse_pd("Loop[1] Loop[2] Loop[3]").unwrap();
    let r =
        TwistRegion::new(vec![Strand { arc: 1, dir: -1 }, Strand { arc: 2, dir: 1 }, Strand { arc: 3, dir: -1 }], None);
    let (e, r2) = insert_full_twists(&d, &r, 2).unwrap();
    assert_eq!(e.linking_number(0, 1).unwrap(), -2);
    assert_eq!(e.linking_number(0, 2).unwrap(), 2);
    assert_eq!(e.linking_number(1, 2).unwrap(), -2);
    let (f, _) = insert_full_twists(&e, &r2, -2).unwrap();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        assert_eq!(f.linking_number(i, j).unwrap(), 0);
    }
}
