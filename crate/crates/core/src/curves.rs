//! The curve family on a closed genus-`g` surface: four families of `g - 1`
//! curves each, permuted cyclically by an order `g - 1` rotation.
//!
//! Only `d` curves meet anything:
//!
//! ```text
//! i(d_j, a_j) = i(d_j, a_{j+1}) = i(d_j, b_j) = i(d_j, b_{j+1}) = 1
//! i(d_j, c_j) = 2
//! ```
//!
//! with indices read mod `g - 1`. Every other pair is disjoint.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest genus for which the curve family is defined.
pub const MIN_GENUS: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    fn block(self) -> usize {
        match self {
            Family::A => 0,
            Family::B => 1,
            Family::C => 2,
            Family::D => 3,
        }
    }

    fn letter(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
            Family::D => 'd',
        }
    }
}

/// One curve of the family. The index is always stored reduced mod `g - 1`;
/// the constructors on [`CurveSystem`] are the only way to build one for a
/// given genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CurveId {
    pub family: Family,
    pub index: usize,
}

impl fmt::Display for CurveId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

impl FromStr for CurveId {
    type Err = Error;

    /// Parses names like `a1`, `d7` or `c_0`.
    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('a') => Family::A,
            Some('b') => Family::B,
            Some('c') => Family::C,
            Some('d') => Family::D,
            _ => return Err(Error::Parse(format!("unknown curve name {s:?}"))),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let index = rest
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad curve index in {s:?}")))?;
        Ok(CurveId { family, index })
    }
}

/// Which way the order-`(g - 1)` rotation moves curve indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RotationDirection {
    /// `x_j -> x_{j+1}`
    #[default]
    Plus,
    /// `x_j -> x_{j-1}`
    Minus,
}

impl RotationDirection {
    pub fn sign(self) -> i64 {
        match self {
            RotationDirection::Plus => 1,
            RotationDirection::Minus => -1,
        }
    }
}

impl fmt::Display for RotationDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotationDirection::Plus => f.write_str("plus"),
            RotationDirection::Minus => f.write_str("minus"),
        }
    }
}

/// Genus plus the intersection pairing on the curve family. Immutable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSystem {
    genus: u64,
    rotation: RotationDirection,
}

impl CurveSystem {
    pub fn new(genus: u64) -> Result<Self> {
        Self::with_rotation(genus, RotationDirection::Plus)
    }

    pub fn with_rotation(genus: u64, rotation: RotationDirection) -> Result<Self> {
        if genus < MIN_GENUS {
            return Err(Error::GenusTooSmall {
                genus,
                min: MIN_GENUS,
            });
        }
        Ok(CurveSystem { genus, rotation })
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn rotation(&self) -> RotationDirection {
        self.rotation
    }

    /// Number of curves per family, `g - 1`; also the order of the rotation.
    pub fn period(&self) -> usize {
        (self.genus - 1) as usize
    }

    /// Total number of curves, `4(g - 1)`.
    pub fn dimension(&self) -> usize {
        4 * self.period()
    }

    /// Builds a curve, reducing the index mod `g - 1`.
    pub fn curve(&self, family: Family, index: i64) -> CurveId {
        let n = self.period() as i64;
        CurveId {
            family,
            index: index.rem_euclid(n) as usize,
        }
    }

    pub fn a(&self, j: i64) -> CurveId {
        self.curve(Family::A, j)
    }

    pub fn b(&self, j: i64) -> CurveId {
        self.curve(Family::B, j)
    }

    pub fn c(&self, j: i64) -> CurveId {
        self.curve(Family::C, j)
    }

    pub fn d(&self, j: i64) -> CurveId {
        self.curve(Family::D, j)
    }

    /// Checks that `u` is a curve of this system and returns it.
    pub fn validate(&self, u: CurveId) -> Result<CurveId> {
        if u.index < self.period() {
            Ok(u)
        } else {
            Err(Error::Parse(format!(
                "curve {u} is out of range for genus {}",
                self.genus
            )))
        }
    }

    /// Canonical order: a-block, b-block, c-block, d-block, ascending index.
    pub fn basis(&self) -> Vec<CurveId> {
        Family::ALL
            .iter()
            .flat_map(|&family| (0..self.period()).map(move |index| CurveId { family, index }))
            .collect()
    }

    /// Position of `u` in [`basis`](Self::basis).
    pub fn position(&self, u: CurveId) -> usize {
        u.family.block() * self.period() + u.index
    }

    pub fn curve_at(&self, position: usize) -> CurveId {
        let n = self.period();
        CurveId {
            family: Family::ALL[position / n],
            index: position % n,
        }
    }

    /// Geometric intersection number of two curves of the family.
    pub fn intersection(&self, u: CurveId, v: CurveId) -> u32 {
        match (u.family, v.family) {
            (Family::D, Family::D) => 0,
            (Family::D, _) => self.meets_d(u.index, v),
            (_, Family::D) => self.meets_d(v.index, u),
            _ => 0,
        }
    }

    fn meets_d(&self, j: usize, x: CurveId) -> u32 {
        let n = self.period();
        let next = (j + 1) % n;
        match x.family {
            Family::A | Family::B => {
                // for g - 1 = 1 both would coincide; the genus floor rules that out
                u32::from(x.index == j) + u32::from(x.index == next)
            }
            Family::C => {
                if x.index == j {
                    2
                } else {
                    0
                }
            }
            Family::D => 0,
        }
    }

    /// Nonzero pairings involving `x`, as `(curve, i(curve, x))`.
    pub fn neighbours(&self, x: CurveId) -> Vec<(CurveId, u32)> {
        let n = self.period() as i64;
        let j = x.index as i64;
        match x.family {
            Family::D => vec![
                (self.a(j), 1),
                (self.a(j + 1), 1),
                (self.b(j), 1),
                (self.b(j + 1), 1),
                (self.c(j), 2),
            ],
            Family::A | Family::B => {
                vec![(self.d(j), 1), (self.d((j - 1).rem_euclid(n)), 1)]
            }
            Family::C => vec![(self.d(j), 2)],
        }
    }

    /// Applies the rotation `steps` times in this system's direction.
    pub fn rotate(&self, u: CurveId, steps: i64) -> CurveId {
        self.curve(u.family, u.index as i64 + self.rotation.sign() * steps)
    }

    /// Sum of `i(u, v)` over all `v` in the family.
    pub fn total_intersection(&self, u: CurveId) -> u32 {
        self.neighbours(u).iter().map(|&(_, w)| w).sum()
    }
}
