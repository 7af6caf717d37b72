use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{smith_normal_form, IntMatrix};

/// Finitely generated abelian group `Z^free_rank ⊕ Z/d1 ⊕ … ⊕ Z/dk`
/// with `2 <= d1 | d2 | … | dk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    #[serde(with = "torsion_json")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// Cokernel of the map `Z^rows -> Z^cols` given by the rows of `a`
    /// (the quotient of `Z^cols` by the row span).
    pub fn cokernel(a: &IntMatrix) -> Self {
        let (d, _, _) = smith_normal_form(a);
        let diag = d.diagonal();
        let rank = diag.iter().filter(|x| !x.is_zero()).count();
        AbelianGroup {
            free_rank: a.cols() - rank,
            torsion: diag.into_iter().filter(|x| !x.is_zero() && !x.is_one()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("trivial");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

mod torsion_json {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::surgery::{json_int, parse_json_int};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(json_int).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        use serde::de::Error;
        let v: Vec<serde_json::Value> = Vec::deserialize(d)?;
        v.iter().map(|x| parse_json_int(x).map_err(D::Error::custom)).collect()
    }
}
