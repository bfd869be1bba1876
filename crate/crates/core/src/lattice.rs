//! Site indexing for the two one-dimensional lattices and their finite rings.
//!
//! Sites live either on the integers or on the half-integers. To keep all
//! arithmetic exact we store a site `s` as the integer `2s` (its *doubled*
//! index): even doubled values are integer sites, odd doubled values are
//! half-integer sites. The interface operator shifts configurations by one
//! doubled unit and therefore flips the parity.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Which of the two interleaved site lattices a value lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SiteParity {
    /// Integer sites (doubled indices are even).
    Whole,
    /// Half-integer sites (doubled indices are odd).
    Half,
}

impl SiteParity {
    /// Parity bit of the doubled representation: 0 for whole, 1 for half.
    pub fn bit(self) -> i64 {
        match self {
            SiteParity::Whole => 0,
            SiteParity::Half => 1,
        }
    }

    /// The other lattice. The interface operator maps configurations here.
    pub fn flipped(self) -> SiteParity {
        match self {
            SiteParity::Whole => SiteParity::Half,
            SiteParity::Half => SiteParity::Whole,
        }
    }

    pub fn of_doubled(value: i64) -> SiteParity {
        if value.rem_euclid(2) == 0 {
            SiteParity::Whole
        } else {
            SiteParity::Half
        }
    }
}

/// A lattice: the infinite line on either parity, or a ring of `n` sites.
///
/// A ring of `n` sites is embedded in a doubled circle of circumference `2n`,
/// so ring configurations also carry a parity and the interface operator maps
/// an even ring onto the odd ring of the same size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lattice {
    /// The integers.
    Z,
    /// The half-integers.
    ZHalf,
    /// A ring of `n` sites with the given parity.
    Ring { n: u32, parity: SiteParity },
}

impl Lattice {
    pub fn parity(self) -> SiteParity {
        match self {
            Lattice::Z => SiteParity::Whole,
            Lattice::ZHalf => SiteParity::Half,
            Lattice::Ring { parity, .. } => parity,
        }
    }

    pub fn is_ring(self) -> bool {
        matches!(self, Lattice::Ring { .. })
    }

    pub fn ring_size(self) -> Option<u32> {
        match self {
            Lattice::Ring { n, .. } => Some(n),
            _ => None,
        }
    }

    /// The lattice the interface operator maps into: same geometry, other parity.
    pub fn flipped(self) -> Lattice {
        match self {
            Lattice::Z => Lattice::ZHalf,
            Lattice::ZHalf => Lattice::Z,
            Lattice::Ring { n, parity } => Lattice::Ring {
                n,
                parity: parity.flipped(),
            },
        }
    }

    pub fn line(parity: SiteParity) -> Lattice {
        match parity {
            SiteParity::Whole => Lattice::Z,
            SiteParity::Half => Lattice::ZHalf,
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lattice::Z => write!(f, "Z"),
            Lattice::ZHalf => write!(f, "Z+1/2"),
            Lattice::Ring { n, parity } => match parity {
                SiteParity::Whole => write!(f, "ring({n})"),
                SiteParity::Half => write!(f, "ring({n})+1/2"),
            },
        }
    }
}

/// A lattice site stored as twice its value, so half-integers stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DoubledIndex(pub i64);

impl DoubledIndex {
    /// The integer site `i`.
    pub fn whole(i: i64) -> DoubledIndex {
        DoubledIndex(2 * i)
    }

    /// The half-integer site `i + 1/2`.
    pub fn half(i: i64) -> DoubledIndex {
        DoubledIndex(2 * i + 1)
    }

    pub fn parity(self) -> SiteParity {
        SiteParity::of_doubled(self.0)
    }

    /// The site value as a float; exact for every representable site.
    pub fn site(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Inverse of [`site`](Self::site). Returns `None` when `s` is not a
    /// half-integral site value.
    pub fn from_site(s: f64) -> Option<DoubledIndex> {
        let doubled = 2.0 * s;
        if doubled.fract() != 0.0 || !doubled.is_finite() || doubled.abs() > i64::MAX as f64 / 4.0 {
            return None;
        }
        Some(DoubledIndex(doubled as i64))
    }
}

impl fmt::Display for DoubledIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubled_roundtrip() {
        for v in -7..=7 {
            let d = DoubledIndex(v);
            assert_eq!(DoubledIndex::from_site(d.site()), Some(d));
        }
        assert_eq!(DoubledIndex::whole(3).0, 6);
        assert_eq!(DoubledIndex::half(-1).0, -1);
        assert_eq!(DoubledIndex::half(-1).parity(), SiteParity::Half);
    }

    #[test]
    fn parity_flip() {
        assert_eq!(Lattice::Z.flipped(), Lattice::ZHalf);
        assert_eq!(
            Lattice::Ring {
                n: 8,
                parity: SiteParity::Whole
            }
            .flipped()
            .parity(),
            SiteParity::Half
        );
    }
}
