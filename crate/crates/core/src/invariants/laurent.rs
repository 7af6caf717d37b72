use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Integer Laurent polynomial in `t`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    /// `c t^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c.into());
        p
    }

    /// `Σ coeffs[i] t^(low + i)`.
    pub fn from_coeffs<T: Into<BigInt> + Clone>(low: i64, coeffs: &[T]) -> Self {
        let mut p = LaurentPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(low + i as i64, c.clone().into());
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Dense coefficient list from the lowest to the highest exponent.
    pub fn coefficient_list(&self) -> Vec<BigInt> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo..=hi).map(|e| self.coeff(e)).collect(),
            _ => Vec::new(),
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn eval(&self, t: &BigInt) -> Option<BigInt> {
        if t.is_zero() && self.min_exp().is_some_and(|e| e < 0) {
            return None;
        }
        // t^e for negative e only makes sense at t = ±1
        let mut sum = BigInt::zero();
        for (&e, c) in &self.coeffs {
            if e >= 0 {
                sum += c * t.pow(e as u32);
            } else if t.abs().is_one() {
                sum += c * t.pow(e.unsigned_abs() as u32);
            } else {
                return None;
            }
        }
        Some(sum)
    }

    /// The unit multiple `±t^k p` whose exponents are centred on 0 (rounding
    /// down when the span is odd) and whose value at `t = 1` is positive. When
    /// `p(1) = 0` the top coefficient is made positive instead.
    pub fn normalized(&self) -> Self {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return LaurentPoly::zero();
        };
        let p = self.shift(-(lo + hi).div_euclid(2));
        let at_one: BigInt = self.coeffs.values().sum();
        let negative = if at_one.is_zero() { self.coeffs[&hi].is_negative() } else { at_one.is_negative() };
        if negative {
            -p
        } else {
            p
        }
    }

    /// Whether `p(t) = p(t^-1)` after centring.
    pub fn is_palindromic(&self) -> bool {
        let c = self.coefficient_list();
        c.iter().eq(c.iter().rev())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.coeffs {
            for (&b, y) in &rhs.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    /// Highest power first, e.g. `t - 1 + t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.coeffs.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let var = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            match (mag.is_one(), var.is_empty()) {
                (true, false) => f.write_str(&var)?,
                (_, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}{var}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: `{"exponent": coefficient}` with decimal-string keys.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: serde_json::Map<String, serde_json::Value> =
            self.coeffs.iter().map(|(e, c)| (e.to_string(), crate::surgery::json_int(c))).collect();
        map.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let map = serde_json::Map::<String, serde_json::Value>::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (k, v) in map {
            let e: i64 = k.parse().map_err(|_| D::Error::custom(format!("bad exponent {k:?}")))?;
            let c = crate::surgery::parse_json_int(&v).map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom(format!("zero coefficient stored at t^{e}")));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }
}
