use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{json_int, parse_json_int, Result, SurgeryError};

/// A Dehn-filling slope: a reduced fraction `p/q` with `q >= 0`, or unfilled.
///
/// `1/0` is the meridian; `-1/0` normalizes to it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Slope {
    Rational { p: BigInt, q: BigInt },
    Unfilled,
}

impl Slope {
    /// Reduced slope `p/q`. Fails only for `0/0`.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Slope> {
        let (mut p, mut q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(SurgeryError::ZeroOverZero);
        }
        if q.is_negative() {
            p = -p;
            q = -q;
        }
        if q.is_zero() {
            return Ok(Slope::meridian());
        }
        let g = p.gcd(&q);
        Ok(Slope::Rational { p: p / &g, q: q / g })
    }

    pub fn integer(p: impl Into<BigInt>) -> Slope {
        Slope::Rational { p: p.into(), q: BigInt::one() }
    }

    pub fn meridian() -> Slope {
        Slope::Rational { p: BigInt::one(), q: BigInt::zero() }
    }

    /// The slope `-1/n` used for twisting components (`n = 0` gives `1/0`).
    pub fn neg_recip(n: i64) -> Slope {
        Slope::new(-1, n).expect("numerator is nonzero")
    }

    /// The slope `1/n`.
    pub fn recip(n: i64) -> Slope {
        Slope::new(1, n).expect("numerator is nonzero")
    }

    pub fn is_meridian(&self) -> bool {
        matches!(self, Slope::Rational { q, .. } if q.is_zero())
    }

    pub fn is_unfilled(&self) -> bool {
        matches!(self, Slope::Unfilled)
    }

    pub fn as_pq(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            Slope::Rational { p, q } => Some((p, q)),
            Slope::Unfilled => None,
        }
    }

    /// Parses one slope token: `p/q`, an integer `p`, or `*`.
    pub fn parse(text: &str) -> Result<Slope> {
        let t = text.trim();
        if t == "*" {
            return Ok(Slope::Unfilled);
        }
        let bad = || SurgeryError::SlopeSyntax(text.to_string());
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let p = BigInt::from_str(p).map_err(|_| bad())?;
        let q = BigInt::from_str(q).map_err(|_| bad())?;
        Slope::new(p, q)
    }

    /// Parses a comma-separated slope list such as `0/1,-1/3,*,1/0`.
    pub fn parse_list(text: &str) -> Result<Vec<Slope>> {
        if text.trim().is_empty() {
            return Ok(Vec::new());
        }
        text.split(',').map(Slope::parse).collect()
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Rational { p, q } => write!(f, "{p}/{q}"),
            Slope::Unfilled => f.write_str("*"),
        }
    }
}

impl FromStr for Slope {
    type Err = SurgeryError;
    fn from_str(s: &str) -> Result<Slope> {
        Slope::parse(s)
    }
}

/// JSON form: `[p, q]`, or `null` when unfilled.
impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Slope::Rational { p, q } => (json_int(p), json_int(q)).serialize(s),
            Slope::Unfilled => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Slope, D::Error> {
        use serde::de::Error;
        let v: Option<(serde_json::Value, serde_json::Value)> = Option::deserialize(d)?;
        match v {
            None => Ok(Slope::Unfilled),
            Some((p, q)) => {
                let p = parse_json_int(&p).map_err(D::Error::custom)?;
                let q = parse_json_int(&q).map_err(D::Error::custom)?;
                let s = Slope::new(p.clone(), q.clone()).map_err(D::Error::custom)?;
                if s.as_pq() != Some((&p, &q)) {
                    return Err(D::Error::custom(format!("slope {p}/{q} is not in reduced form")));
                }
                Ok(s)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization() {
        assert_eq!(Slope::new(-1, 0).unwrap(), Slope::meridian());
        assert_eq!(Slope::new(4, -6).unwrap(), Slope::new(-2, 3).unwrap());
        assert_eq!(Slope::neg_recip(0), Slope::meridian());
        assert_eq!(Slope::new(0, 5).unwrap(), Slope::integer(0));
        assert_eq!(Slope::new(0, 0), Err(SurgeryError::ZeroOverZero));
        assert_ne!(Slope::Unfilled, Slope::meridian());
    }

    #[test]
    fn parsing() {
        let v = Slope::parse_list("0/1,-1/3, 1/3,*,1/0,7").unwrap();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["0/1", "-1/3", "1/3", "*", "1/0", "7/1"]);
        assert!(matches!(Slope::parse("1/x"), Err(SurgeryError::SlopeSyntax(_))));
        assert!(Slope::parse_list("").unwrap().is_empty());
    }

    #[test]
    fn json_forms() {
        let v = serde_json::to_value([Slope::new(-1, 3).unwrap(), Slope::Unfilled]).unwrap();
        assert_eq!(v, serde_json::json!([[-1, 3], null]));
        let back: Vec<Slope> = serde_json::from_value(v).unwrap();
        assert_eq!(back[0], Slope::new(-1, 3).unwrap());
        assert!(serde_json::from_value::<Slope>(serde_json::json!([2, 4])).is_err());
    }
}
