//! Alexander polynomials from Fox calculus, evaluated modulo word-sized
//! primes and recovered exactly by interpolation and CRT.
//!
//! The deleted first minor of the Alexander matrix is a polynomial `P` of
//! degree at most `D` (the sum of the row degrees). On the unit circle every
//! row has Euclidean norm at most the square root of the sum of squared
//! coefficient norms, so Hadamard's inequality bounds `|P|` there, and with
//! it every coefficient. Enough primes are used to exceed twice that bound,
//! so the result is exact. The pivot sequence found at one point is replayed
//! at the others and checked as it goes, falling back to a fresh elimination
//! where it does not fit.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use super::wirtinger::{wirtinger, GroupPresentation, Letter};
use super::{InvariantError, LaurentPoly, Result};
use crate::diagram::LinkDiagram;

/// Abelianized Fox derivative `∂w/∂x_gen` with every generator sent to `t`.
pub fn fox_derivative(word: &[Letter], gen: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    let mut prefix = 0i64;
    for l in word {
        if l.gen == gen {
            out = if l.exp > 0 {
                &out + &LaurentPoly::monomial(1, prefix)
            } else {
                &out - &LaurentPoly::monomial(1, prefix - 1)
            };
        }
        prefix += l.exp as i64;
    }
    out
}

/// Sparse Alexander matrix: one row per relator, `(generator, entry)` pairs.
pub fn alexander_matrix(g: &GroupPresentation) -> Vec<Vec<(usize, LaurentPoly)>> {
    g.relators
        .iter()
        .map(|w| {
            let gens: BTreeSet<usize> = w.iter().map(|l| l.gen).collect();
            gens.into_iter().map(|x| (x, fox_derivative(w, x))).filter(|(_, p)| !p.is_zero()).collect()
        })
        .collect()
}

/// Normalized Alexander polynomial of a knot diagram.
pub fn alexander_polynomial(d: &LinkDiagram) -> Result<LaurentPoly> {
    let g = wirtinger(d)?;
    let n = g.generators.len();
    if n <= 1 {
        return Ok(LaurentPoly::one());
    }
    // drop the last relator and the last generator
    let rows: Vec<Vec<(usize, LaurentPoly)>> = alexander_matrix(&g)
        .into_iter()
        .take(n - 1)
        .map(|r| r.into_iter().filter(|(c, _)| *c < n - 1).collect())
        .collect();
    let minor = modular_determinant(&rows, n - 1);
    if minor.is_zero() {
        return Err(InvariantError::Degenerate);
    }
    Ok(minor.normalized())
}

/// `|Δ(-1)|`.
pub fn determinant(d: &LinkDiagram) -> Result<BigInt> {
    let p = alexander_polynomial(d)?;
    Ok(p.eval(&BigInt::from(-1)).expect("t = -1 is a unit").abs())
}

/// Rows shifted to ordinary polynomials, as `(column, low-to-high coefficients)`.
type PolyRow = Vec<(usize, Vec<BigInt>)>;

fn to_poly_rows(rows: &[Vec<(usize, LaurentPoly)>]) -> (Vec<PolyRow>, usize) {
    let mut out = Vec::with_capacity(rows.len());
    let mut degree = 0usize;
    for r in rows {
        let lo = r.iter().filter_map(|(_, p)| p.min_exp()).min().unwrap_or(0);
        let hi = r.iter().filter_map(|(_, p)| p.max_exp()).max().unwrap_or(0);
        degree += (hi - lo) as usize;
        out.push(r.iter().map(|(c, p)| (*c, (lo..=hi).map(|e| p.coeff(e)).collect::<Vec<_>>())).collect());
    }
    (out, degree)
}

/// log2 of the Hadamard bound on the coefficients of the determinant.
fn coefficient_bound_bits(rows: &[PolyRow]) -> f64 {
    rows.iter()
        .map(|r| {
            let sq: f64 = r
                .iter()
                .map(|(_, cs)| {
                    let l1: f64 = cs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::MAX)).sum();
                    l1 * l1
                })
                .sum();
            0.5 * sq.max(1.0).log2()
        })
        .sum()
}

/// Exact determinant of a square sparse matrix over `Z[t, t^-1]`, up to a
/// power of `t`.
fn modular_determinant(rows: &[Vec<(usize, LaurentPoly)>], size: usize) -> LaurentPoly {
    let (poly_rows, degree) = to_poly_rows(rows);
    let bits = coefficient_bound_bits(&poly_rows) + 2.0;
    let mut modulus = BigInt::one();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); degree + 1];
    let mut primes = Primes::below(1 << 62);
    let plan = {
        let p = Primes::below(1 << 62).next().expect("a 62-bit prime");
        let x = PLAN_POINT % p;
        sparse_det_mod(evaluate_rows(&reduce_rows(&poly_rows, p), x, p), size, p).1
    };
    while (modulus.bits() as f64) < bits {
        let p = primes.next().expect("enough 62-bit primes");
        let residues = det_poly_mod(&poly_rows, plan.as_ref(), size, degree, p);
        coeffs = crt(&coeffs, &modulus, &residues, p);
        modulus *= p;
    }
    let half = &modulus >> 1;
    let lifted: Vec<BigInt> = coeffs.into_iter().map(|c| if c > half { c - &modulus } else { c }).collect();
    LaurentPoly::from_coeffs(0, &lifted)
}

fn crt(acc: &[BigInt], m: &BigInt, r: &[u64], p: u64) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    // m^-1 mod p
    let minv = BigInt::from(inv_mod((m % &pb).to_u64().expect("reduced"), p));
    acc.iter()
        .zip(r)
        .map(|(a, &ri)| {
            let diff = (BigInt::from(ri) - a).mod_floor(&pb);
            a + m * ((diff * &minv) % &pb)
        })
        .collect()
}

/// Coefficients mod `p` of the determinant polynomial (degree `<= degree`),
/// by evaluation at `degree + 1` consecutive points and Newton interpolation.
fn det_poly_mod(rows: &[PolyRow], plan: Option<&EliminationPlan>, size: usize, degree: usize, p: u64) -> Vec<u64> {
    let reduced = reduce_rows(rows, p);
    let ys: Vec<u64> = (0..=degree as u64)
        .into_par_iter()
        .map(|i| {
            let m = evaluate_rows(&reduced, i + INTERPOLATION_START, p);
            match plan {
                Some(plan) => plan.det_mod(m.clone(), p).unwrap_or_else(|| sparse_det_mod(m, size, p).0),
                None => sparse_det_mod(m, size, p).0,
            }
        })
        .collect();
    interpolate(INTERPOLATION_START, &ys, p)
}

/// Coefficients reduced mod `p`, with each row sorted by column.
fn reduce_rows(rows: &[PolyRow], p: u64) -> Vec<Vec<(usize, Vec<u64>)>> {
    let pb = BigInt::from(p);
    rows.iter()
        .map(|r| {
            let mut r: Vec<(usize, Vec<u64>)> = r
                .iter()
                .map(|(c, cs)| (*c, cs.iter().map(|x| x.mod_floor(&pb).to_u64().expect("reduced")).collect()))
                .collect();
            r.sort_by_key(|(c, _)| *c);
            r
        })
        .collect()
}

fn evaluate_rows(rows: &[Vec<(usize, Vec<u64>)>], x: u64, p: u64) -> Vec<Vec<(usize, u64)>> {
    rows.iter().map(|r| r.iter().map(|(c, cs)| (*c, horner(cs, x, p))).collect()).collect()
}

/// Point at which the pivot sequence is recorded.
const PLAN_POINT: u64 = 0x1234_5678_9abc_def1;

const INTERPOLATION_START: u64 = 2;

/// Pivot sequence recorded by [`sparse_det_mod`] at one point and replayed
/// at the others.
struct EliminationPlan {
    /// Pivot row, pivot column and the rows it updates.
    steps: Vec<(usize, usize, Vec<usize>)>,
    odd: bool,
}

impl EliminationPlan {
    /// Determinant mod `p` of rows sorted by column, or `None` if the plan
    /// does not fit this point: a planned pivot vanishes, or an entry the
    /// plan assumed zero is not. Every row is a pivot row exactly once, so a
    /// skipped entry always surfaces in an eliminated column.
    fn det_mod(&self, mut rows: Vec<Vec<(usize, u64)>>, p: u64) -> Option<u64> {
        let lookup = |r: &[(usize, u64)], c: usize| r.binary_search_by_key(&c, |e| e.0).map_or(0, |i| r[i].1);
        let mut eliminated = vec![false; rows.len()];
        let (mut det, mut scale) = (1u64, 1u64);
        for (r, c, targets) in &self.steps {
            let pivot = std::mem::take(&mut rows[*r]);
            let pv = lookup(&pivot, *c);
            if pv == 0 || pivot.iter().any(|&(k, v)| v != 0 && eliminated[k]) {
                return None;
            }
            eliminated[*c] = true;
            det = mul_mod(det, pv, p);
            for &t in targets {
                let f = lookup(&rows[t], *c);
                rows[t] = scale_and_subtract(&rows[t], pv, f, &pivot, *c, p);
                scale = mul_mod(scale, pv, p);
            }
        }
        let det = mul_mod(det, inv_mod(scale, p), p);
        Some(if self.odd { sub_mod(0, det, p) } else { det })
    }
}

/// `s * a - f * b` over sorted sparse rows, dropping column `skip`.
fn scale_and_subtract(
    a: &[(usize, u64)],
    s: u64,
    f: u64,
    b: &[(usize, u64)],
    skip: usize,
    p: u64,
) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (c, va, vb) = match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (ca, va, vb)
            }
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                i += 1;
                (ca, va, 0)
            }
            (Some(&(ca, va)), None) => {
                i += 1;
                (ca, va, 0)
            }
            (_, Some(&(cb, vb))) => {
                j += 1;
                (cb, 0, vb)
            }
            (None, None) => unreachable!(),
        };
        if c != skip {
            out.push((c, sub_mod(mul_mod(s, va, p), mul_mod(f, vb, p), p)));
        }
    }
    out
}

fn horner(cs: &[u64], x: u64, p: u64) -> u64 {
    cs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Newton interpolation through `(x0 + i, ys[i])`, returning low-to-high
/// coefficients.
fn interpolate(x0: u64, ys: &[u64], p: u64) -> Vec<u64> {
    let n = ys.len();
    // consecutive nodes differ by j at divided-difference order j
    let mut dd = ys.to_vec();
    for j in 1..n {
        let inv = inv_mod(j as u64, p);
        for i in (j..n).rev() {
            dd[i] = mul_mod(sub_mod(dd[i], dd[i - 1], p), inv, p);
        }
    }
    let mut poly = vec![0u64; n];
    for i in (0..n).rev() {
        // poly = poly * (x - x_i) + dd[i]
        let xi = (x0 + i as u64) % p;
        let mut next = vec![0u64; n];
        for k in 0..n - 1 {
            next[k + 1] = add_mod(next[k + 1], poly[k], p);
            next[k] = sub_mod(next[k], mul_mod(poly[k], xi, p), p);
        }
        next[0] = add_mod(next[0], dd[i], p);
        poly = next;
    }
    poly
}

/// Determinant mod `p` by sparse elimination, pivoting on a shortest
/// column and, within it, a shortest row. Also returns the elimination
/// sequence when the matrix is nonsingular.
fn sparse_det_mod(rows: Vec<Vec<(usize, u64)>>, size: usize, p: u64) -> (u64, Option<EliminationPlan>) {
    let mut rows: Vec<HashMap<usize, u64>> =
        rows.into_iter().map(|r| r.into_iter().filter(|&(_, v)| v != 0).collect()).collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); size];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            col_rows[c].insert(i);
        }
    }
    let mut live_cols: BTreeSet<usize> = (0..size).collect();
    let mut det = 1u64;
    let mut perm = vec![0usize; size];
    let mut steps = Vec::with_capacity(size);
    while let Some(&c) = live_cols.iter().min_by_key(|&&c| (col_rows[c].len(), c)) {
        let Some(&r) = col_rows[c].iter().min_by_key(|&&r| (rows[r].len(), r)) else {
            return (0, None);
        };
        perm[r] = c;
        let pivot_row = std::mem::take(&mut rows[r]);
        let pv = pivot_row[&c];
        det = mul_mod(det, pv, p);
        let pinv = inv_mod(pv, p);
        for &k in pivot_row.keys() {
            col_rows[k].remove(&r);
        }
        live_cols.remove(&c);
        let targets: Vec<usize> = col_rows[c].iter().copied().collect();
        for &t in &targets {
            let f = mul_mod(rows[t][&c], pinv, p);
            for (&k, &v) in &pivot_row {
                let entry = rows[t].entry(k).or_insert(0);
                *entry = sub_mod(*entry, mul_mod(f, v, p), p);
                if *entry == 0 {
                    rows[t].remove(&k);
                    col_rows[k].remove(&t);
                } else {
                    col_rows[k].insert(t);
                }
            }
        }
        steps.push((r, c, targets));
    }
    let odd = permutation_is_odd(&perm);
    (if odd { sub_mod(0, det, p) } else { det }, Some(EliminationPlan { steps, odd }))
}

fn permutation_is_odd(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut odd = false;
    for s in 0..perm.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}

/// Primes in decreasing order below a bound.
struct Primes {
    next: u64,
}

impl Primes {
    fn below(bound: u64) -> Self {
        Primes { next: bound - 1 }
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 2 {
            let c = self.next;
            self.next -= 1;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for b in BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'bases: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    #[test]
    fn primes() {
        assert!(is_prime(2_305_843_009_213_693_951));
        assert!(!is_prime(2_305_843_009_213_693_953));
        assert!(Primes::below(1 << 62).take(3).all(|p| p > (1 << 61)));
    }

    #[test]
    fn fox_of_conjugation() {
        // x0 x1 x0^-1 x2^-1
        let w = [
            Letter { gen: 0, exp: 1 },
            Letter { gen: 1, exp: 1 },
            Letter { gen: 0, exp: -1 },
            Letter { gen: 2, exp: -1 },
        ];
        assert_eq!(fox_derivative(&w, 0), LaurentPoly::from_coeffs(0, &[1, -1]));
        assert_eq!(fox_derivative(&w, 1), LaurentPoly::monomial(1, 1));
        assert_eq!(fox_derivative(&w, 2), LaurentPoly::monomial(-1, 0));
    }

    #[test]
    fn sparse_det_small() {
        let p = 1_000_000_007;
        // [[0, 2], [3, 4]] has determinant -6
        let m = vec![vec![(1, 2)], vec![(0, 3), (1, 4)]];
        assert_eq!(sparse_det_mod(m, 2, p).0, p - 6);
        let singular = vec![vec![(0, 1), (1, 2)], vec![(0, 2), (1, 4)]];
        assert_eq!(sparse_det_mod(singular, 2, p).0, 0);
    }

    #[test]
    fn replay_rejects_a_plan_that_skipped_an_entry() {
        let p = 1_000_000_007;
        // recorded where the (1, 0) entry vanished, so row 1 is never updated
        let (_, plan) = sparse_det_mod(vec![vec![(0, 1), (1, 2)], vec![(0, 0), (1, 3)]], 2, p);
        let plan = plan.unwrap();
        assert_eq!(plan.det_mod(vec![vec![(0, 1), (1, 2)], vec![(0, 0), (1, 3)]], p), Some(3));
        assert_eq!(plan.det_mod(vec![vec![(0, 1), (1, 2)], vec![(0, 4), (1, 3)]], p), None);
        assert_eq!(sparse_det_mod(vec![vec![(0, 1), (1, 2)], vec![(0, 4), (1, 3)]], 2, p).0, p - 5);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = 1_000_000_007;
        let f = |x: u64| add_mod(mul_mod(3, mul_mod(x, x, p), p), sub_mod(5, x, p), p);
        let ys: Vec<u64> = (2..5).map(f).collect();
        assert_eq!(interpolate(2, &ys, p), vec![5, p - 1, 3]);
    }

    #[test]
    fn small_knots() {
        let unknot = parse_pd("Loop[1]").unwrap();
        assert_eq!(alexander_polynomial(&unknot).unwrap(), LaurentPoly::one());
        let trefoil = parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        assert_eq!(alexander_polynomial(&trefoil).unwrap().to_string(), "t - 1 + t^-1");
        assert_eq!(determinant(&trefoil).unwrap(), BigInt::from(3));
        let kink = parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(alexander_polynomial(&kink).unwrap(), LaurentPoly::one());
    }
}
