use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{json_int, parse_json_int};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: impl Into<BigInt>) {
        self.data[i * self.cols + j] = v.into();
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Matrix product; panics on a dimension mismatch.
    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination; panics if not square.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * f;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// (row[a], row[b]) <- (x·row[a] + y·row[b], z·row[a] + w·row[b])
    fn mix_rows(&mut self, a: usize, b: usize, [x, y, z, w]: &[BigInt; 4]) {
        for j in 0..self.cols {
            let (ra, rb) = (self.get(a, j).clone(), self.get(b, j).clone());
            self.data[a * self.cols + j] = x * &ra + y * &rb;
            self.data[b * self.cols + j] = z * &ra + w * &rb;
        }
    }

    /// (col[a], col[b]) <- (x·col[a] + y·col[b], z·col[a] + w·col[b])
    fn mix_cols(&mut self, a: usize, b: usize, [x, y, z, w]: &[BigInt; 4]) {
        for i in 0..self.rows {
            let (ca, cb) = (self.get(i, a).clone(), self.get(i, b).clone());
            self.data[i * self.cols + a] = x * &ca + y * &cb;
            self.data[i * self.cols + b] = z * &ca + w * &cb;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.data[i * self.cols + j] = v;
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// JSON form: array of rows.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<serde_json::Value>> =
            (0..self.rows).map(|i| self.row(i).iter().map(json_int).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<IntMatrix, D::Error> {
        use serde::de::Error;
        let rows: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(parse_json_int).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<_, _>>()
            .map_err(D::Error::custom)?;
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(D::Error::custom("ragged matrix rows"));
        }
        Ok(IntMatrix::from_rows(&rows))
    }
}

/// Unimodular 2×2 block sending `(a, b)` to `(gcd(a, b), 0)`.
fn gcd_block(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    if b.is_multiple_of(a) {
        // plain elimination keeps the pivot row untouched
        return [BigInt::one(), BigInt::zero(), -(b / a), BigInt::one()];
    }
    let e = a.extended_gcd(b);
    [e.x, e.y, -(b / &e.gcd), a / &e.gcd]
}

/// Smith normal form: returns `(D, U, V)` with `D = U·A·V` diagonal,
/// nonnegative, each diagonal entry dividing the next, and `U`, `V` unimodular.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        // pivot: smallest nonzero magnitude in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            for i in t + 1..m {
                if !d.get(i, t).is_zero() {
                    let blk = gcd_block(d.get(t, t), d.get(i, t));
                    d.mix_rows(t, i, &blk);
                    u.mix_rows(t, i, &blk);
                }
            }
            for j in t + 1..n {
                if !d.get(t, j).is_zero() {
                    let blk = gcd_block(d.get(t, t), d.get(t, j));
                    d.mix_cols(t, j, &blk);
                    v.mix_cols(t, j, &blk);
                }
            }
            if (t + 1..m).any(|i| !d.get(i, t).is_zero()) {
                continue;
            }
            // divisibility: fold in a row whose entries the pivot does not divide
            let p = d.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}
