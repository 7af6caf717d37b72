use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use surgeon::surgery::{
    apply_move_script, cable_surgery_reduction, rolfsen_twist, smith_normal_form, AbstractLinkData, Cable, IntMatrix,
    Move, Slope, SurgeryPresentation,
};

/// Invariant factors from determinantal divisors: d_k = gcd of all k×k minors.
fn invariant_factors_oracle(rows: &[Vec<i64>]) -> Vec<BigInt> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for mut rest in subsets(n, k - 1) {
                if rest.first().is_none_or(|&r| r > first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
        }
        out
    }
    fn det(a: &[Vec<BigInt>]) -> BigInt {
        // cofactor expansion: small sizes only
        if a.is_empty() {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for (j, x) in a[0].iter().enumerate() {
            let minor: Vec<Vec<BigInt>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = x * det(&minor);
            if j % 2 == 0 {
                total += term
            } else {
                total -= term
            }
        }
        total
    }
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.min(n) {
        let mut g = BigInt::zero();
        for rs in subsets(m, k) {
            for cs in subsets(n, k) {
                let sub: Vec<Vec<BigInt>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| BigInt::from(rows[r][c])).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), m.min(n) - k + 1));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(m, n)| prop::collection::vec(prop::collection::vec(-9i64..=9, n), m))
}

fn slope() -> impl Strategy<Value = Slope> {
    prop_oneof![
        1 => Just(Slope::Unfilled),
        1 => Just(Slope::meridian()),
        6 => (-9i64..=9, 1i64..=9).prop_map(|(p, q)| Slope::new(p, q).unwrap()),
    ]
}

fn presentation() -> impl Strategy<Value = SurgeryPresentation> {
    (1usize..=5).prop_flat_map(|n| {
        (prop::collection::vec(-3i64..=3, n * (n - 1) / 2), prop::collection::vec(slope(), n)).prop_map(
            move |(upper, slopes)| {
                let mut lk = vec![vec![0i64; n]; n];
                let mut it = upper.into_iter();
                for (i, j) in (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))) {
                    let v = it.next().unwrap();
                    lk[i][j] = v;
                    lk[j][i] = v;
                }
                let names: Vec<String> = (0..n).map(|i| format!("c{i}")).collect();
                let names: Vec<&str> = names.iter().map(String::as_str).collect();
                let link = AbstractLinkData::new(&names, &lk).unwrap();
                let mut p = SurgeryPresentation::from_link_data("random", link, slopes).unwrap();
                for i in 0..n {
                    p = p.with_unknotted(i);
                }
                p
            },
        )
    })
}

fn is_reduced(s: &Slope) -> bool {
    match s.as_pq() {
        None => true,
        Some((p, q)) => !q.is_negative() && p.gcd(q).is_one(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn snf_matches_determinantal_divisors(rows in matrix()) {
        let a = IntMatrix::from_rows(&rows);
        let (d, u, v) = smith_normal_form(&a);
        prop_assert_eq!(u.mul(&a).mul(&v), d.clone());
        prop_assert!(d.is_diagonal());
        prop_assert!(u.det().abs().is_one());
        prop_assert!(v.det().abs().is_one());
        prop_assert_eq!(d.diagonal(), invariant_factors_oracle(&rows));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn kirby_moves_preserve_homology(p in presentation(), picks in prop::collection::vec((0usize..5, -3i64..=3), 5)) {
        let h1 = p.first_homology();
        let mut cur = p;
        for (c, t) in picks {
            if cur.is_empty() { break; }
            let c = c % cur.len();
            let mv = match cur.slopes[c].as_pq() {
                None => continue,
                Some((_, q)) if q.is_zero() => Move::delete(c),
                Some((p, q)) if p.abs().is_one() => {
                    // drive ±1/q to the meridian
                    let q: i64 = q.try_into().unwrap();
                    let p: i64 = p.try_into().unwrap();
                    Move::rolfsen(c, -q * p)
                }
                _ => Move::rolfsen(c, t),
            };
            let (next, trace) = apply_move_script(&cur, std::slice::from_ref(&mv)).unwrap();
            prop_assert!(trace.0.iter().all(|s| s.h1 == h1));
            prop_assert!(next.slopes.iter().all(is_reduced));
            cur = next;
        }
        prop_assert_eq!(cur.first_homology(), h1);
    }

    #[test]
    fn rolfsen_twists_add(p in presentation(), c in 0usize..5, t1 in -4i64..=4, t2 in -4i64..=4) {
        let c = c % p.len();
        prop_assume!(!p.slopes[c].is_unfilled());
        let a = rolfsen_twist(&rolfsen_twist(&p, c, t1).unwrap(), c, t2).unwrap();
        let b = rolfsen_twist(&p, c, t1 + t2).unwrap();
        prop_assert!(a.same_surgery_data(&b));
    }

    #[test]
    fn cable_reduction_denominator(a in 2i64..=7, sign in prop::bool::ANY, b in -9i64..=9, q in 1i64..=20, eps in prop::bool::ANY) {
        let a = if sign { a } else { -a };
        prop_assume!(a.gcd(&b) == 1);
        let p = q * a * b + if eps { 1 } else { -1 };
        let s = Slope::new(p, q).unwrap();
        prop_assume!(s.as_pq().unwrap().1 == &BigInt::from(q));
        let r = cable_surgery_reduction(&s, Cable::new(a, b).unwrap()).unwrap();
        let (rp, rq) = r.as_pq().unwrap();
        prop_assert_eq!(rq, &BigInt::from(q * a * a));
        prop_assert_eq!(rp, &BigInt::from(p));
        prop_assert!(rp.gcd(rq).is_one());
    }
}
