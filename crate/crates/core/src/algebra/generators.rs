use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The fifteen basis elements in their canonical order.
///
/// The index of a generator is its row/column in every adjoint matrix
/// and its position in every JSON listing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorId {
    J1,
    J2,
    J3,
    K1,
    K2,
    K3,
    Gam0,
    Gam1,
    Gam2,
    Gam3,
    P0,
    P1,
    P2,
    P3,
    G,
}

use GeneratorId::*;

impl GeneratorId {
    pub const ALL: [GeneratorId; 15] = [J1, J2, J3, K1, K2, K3, Gam0, Gam1, Gam2, Gam3, P0, P1, P2, P3, G];
    /// The ten generators of the extended Lorentz subalgebra.
    pub const LORENTZ: [GeneratorId; 10] = [J1, J2, J3, K1, K2, K3, Gam0, Gam1, Gam2, Gam3];
    pub const J: [GeneratorId; 3] = [J1, J2, J3];
    pub const K: [GeneratorId; 3] = [K1, K2, K3];
    pub const GAMMA: [GeneratorId; 4] = [Gam0, Gam1, Gam2, Gam3];
    pub const P: [GeneratorId; 4] = [P0, P1, P2, P3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            J1 => "J1",
            J2 => "J2",
            J3 => "J3",
            K1 => "K1",
            K2 => "K2",
            K3 => "K3",
            Gam0 => "Gam0",
            Gam1 => "Gam1",
            Gam2 => "Gam2",
            Gam3 => "Gam3",
            P0 => "P0",
            P1 => "P1",
            P2 => "P2",
            P3 => "P3",
            G => "G",
        }
    }

    /// Spatial rotation `J_k` for `k` in 1..=3.
    pub fn j(k: usize) -> Self {
        Self::J[k - 1]
    }

    pub fn k(k: usize) -> Self {
        Self::K[k - 1]
    }

    /// `Γ^μ` for `μ` in 0..=3.
    pub fn gamma(mu: usize) -> Self {
        Self::GAMMA[mu]
    }

    /// `P_μ` for `μ` in 0..=3.
    pub fn p(mu: usize) -> Self {
        Self::P[mu]
    }

    pub fn is_lorentz(self) -> bool {
        self.index() < 10
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown generator {s:?}")))
    }
}

impl Serialize for GeneratorId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for GeneratorId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Levi-Civita symbol on 1-based spatial indices.
pub fn levi_civita(j: usize, k: usize, m: usize) -> i64 {
    match (j, k, m) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// Diagonal of the Minkowski metric, signature (−,+,+,+).
pub const ETA: [i64; 4] = [-1, 1, 1, 1];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_canonical() {
        for (i, g) in GeneratorId::ALL.iter().enumerate() {
            assert_eq!(g.index(), i);
            assert_eq!(g.name().parse::<GeneratorId>().unwrap(), *g);
        }
        assert_eq!(GeneratorId::gamma(0), Gam0);
        assert_eq!(GeneratorId::p(3), P3);
        assert!("Gamma0".parse::<GeneratorId>().is_err());
    }

    #[test]
    fn epsilon_is_antisymmetric() {
        for a in 1..=3 {
            for b in 1..=3 {
                for c in 1..=3 {
                    assert_eq!(levi_civita(a, b, c), -levi_civita(b, a, c));
                }
            }
        }
    }
}
