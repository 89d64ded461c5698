//! Finitely presented abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::homalg::matrix::IntMatrix;
use crate::homalg::snf::invariant_factors;

/// `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `1 < t_1 | t_2 | … | t_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FPAbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl FPAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    /// Direct sum of cyclic groups `Z/n` (with `n = 0` meaning `Z`), put in canonical form.
    pub fn from_cyclic(orders: &[BigUint]) -> Self {
        let rank = orders.iter().filter(|n| n.is_zero()).count();
        let finite: Vec<&BigUint> = orders.iter().filter(|n| !n.is_zero() && !n.is_one()).collect();
        let diag = IntMatrix::from_triples(
            finite.len(),
            finite.len(),
            finite.iter().enumerate().map(|(i, n)| (i, i, BigInt::from((*n).clone()))),
        )
        .expect("square diagonal");
        let torsion = invariant_factors(&diag)
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_biguint().expect("factors are positive"))
            .collect();
        Self { rank, torsion }
    }

    pub fn from_small(rank: usize, torsion: &[u64]) -> Self {
        let mut orders: Vec<BigUint> = vec![BigUint::zero(); rank];
        orders.extend(torsion.iter().map(|&t| BigUint::from(t)));
        Self::from_cyclic(&orders)
    }

    /// The cokernel of an integer matrix, `Z^rows / im(a)`.
    pub fn cokernel(a: &IntMatrix) -> Self {
        let factors = invariant_factors(a);
        let rank = a.rows() - factors.len();
        let torsion = factors.into_iter().filter(|d| !d.is_one()).map(|d| d.to_biguint().expect("positive")).collect();
        Self { rank, torsion }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<BigUint> = vec![BigUint::zero(); self.rank + other.rank];
        orders.extend(self.torsion.iter().cloned());
        orders.extend(other.torsion.iter().cloned());
        Self::from_cyclic(&orders)
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Cyclic summands, with `0` for each copy of `Z`.
    pub fn cyclic_orders(&self) -> Vec<BigUint> {
        let mut v = vec![BigUint::zero(); self.rank];
        v.extend(self.torsion.iter().cloned());
        v
    }
}

impl fmt::Display for FPAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Num {
    Small(u64),
    Big(String),
}

impl Serialize for FPAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            rank: usize,
            torsion: Vec<Num>,
        }
        let torsion = self
            .torsion
            .iter()
            .map(|t| u64::try_from(t).map(Num::Small).unwrap_or_else(|_| Num::Big(t.to_string())))
            .collect();
        Repr { rank: self.rank, torsion }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FPAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            rank: usize,
            #[serde(default)]
            torsion: Vec<Num>,
        }
        let r = Repr::deserialize(d)?;
        let mut orders = vec![BigUint::zero(); r.rank];
        for t in r.torsion {
            let v = match t {
                Num::Small(v) => BigUint::from(v),
                Num::Big(s) => s.parse().map_err(D::Error::custom)?,
            };
            if v.is_zero() {
                return Err(D::Error::custom("torsion coefficients must be positive"));
            }
            orders.push(v);
        }
        let g = Self::from_cyclic(&orders);
        if g.rank != r.rank || g.torsion.len() != orders.len() - r.rank {
            return Err(D::Error::custom("torsion coefficients are not in invariant-factor form"));
        }
        Ok(g)
    }
}
