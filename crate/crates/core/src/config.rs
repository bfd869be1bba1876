//! Two-valued configurations on a lattice, with an explicit finite window and
//! declared boundary constants.
//!
//! A line configuration is determined by a contiguous window of bits plus one
//! constant bit for everything left of the window and one for everything right
//! of it. Finite configurations have both constants zero, Heaviside states one
//! zero and one one. Ring configurations store the whole ring and have no
//! boundary constants. Values are immutable once constructed and all
//! operations are pure, so configurations can be shared freely between
//! workers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::lattice::{DoubledIndex, Lattice, SiteParity};

/// Which one-sided inverse of the interface operator to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Prefix parity; defined on configurations vanishing at minus infinity.
    Minus,
    /// Suffix parity; defined on configurations vanishing at plus infinity.
    Plus,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Config {
    lattice: Lattice,
    /// Doubled index of the first window slot. Successive slots step by 2.
    start: i64,
    bits: Bits,
    left: bool,
    right: bool,
}

impl Config {
    /// General constructor from a window of bits and boundary constants.
    pub fn from_window(
        lattice: Lattice,
        start: DoubledIndex,
        window: &[bool],
        left: bool,
        right: bool,
    ) -> Result<Config> {
        match lattice {
            Lattice::Ring { n, parity } => {
                if window.len() != n as usize {
                    return Err(Error::InvalidParameter(format!(
                        "ring of {n} sites needs exactly {n} window bits, got {}",
                        window.len()
                    )));
                }
                if left || right {
                    return Err(Error::InvalidParameter(
                        "ring configurations have no boundary bits".into(),
                    ));
                }
                if start.0 != parity.bit() {
                    return Err(Error::InvalidParameter(
                        "ring windows are anchored at the parity offset".into(),
                    ));
                }
                Ok(Config {
                    lattice,
                    start: parity.bit(),
                    bits: Bits::from_bools(window),
                    left: false,
                    right: false,
                })
            }
            _ => {
                if start.parity() != lattice.parity() {
                    return Err(Error::LatticeMismatch(
                        lattice,
                        Lattice::line(start.parity()),
                    ));
                }
                let mut c = Config {
                    lattice,
                    start: start.0,
                    bits: Bits::from_bools(window),
                    left,
                    right,
                };
                c.normalize();
                Ok(c)
            }
        }
    }

    /// The all-zeros configuration.
    pub fn empty(lattice: Lattice) -> Config {
        Config::constant(lattice, false)
    }

    /// A constant configuration (all zeros or all ones).
    pub fn constant(lattice: Lattice, value: bool) -> Config {
        match lattice {
            Lattice::Ring { n, parity } => Config {
                lattice,
                start: parity.bit(),
                bits: Bits::filled(n as usize, value),
                left: false,
                right: false,
            },
            _ => Config {
                lattice,
                start: lattice.parity().bit(),
                bits: Bits::zeros(0),
                left: value,
                right: value,
            },
        }
    }

    /// A finite configuration from its support, given as doubled indices.
    pub fn from_support(lattice: Lattice, support: &[i64]) -> Result<Config> {
        if lattice.is_ring() {
            let mut window = vec![false; lattice.ring_size().unwrap() as usize];
            let n2 = 2 * lattice.ring_size().unwrap() as i64;
            for &d in support {
                let dm = d.rem_euclid(n2);
                if SiteParity::of_doubled(dm) != lattice.parity() {
                    return Err(Error::LatticeMismatch(
                        lattice,
                        Lattice::line(SiteParity::of_doubled(dm)),
                    ));
                }
                let slot = ((dm - lattice.parity().bit()) / 2) as usize;
                window[slot] = !window[slot];
            }
            return Config::from_window(
                lattice,
                DoubledIndex(lattice.parity().bit()),
                &window,
                false,
                false,
            );
        }
        if support.is_empty() {
            return Ok(Config::empty(lattice));
        }
        for &d in support {
            if SiteParity::of_doubled(d) != lattice.parity() {
                return Err(Error::LatticeMismatch(
                    lattice,
                    Lattice::line(SiteParity::of_doubled(d)),
                ));
            }
        }
        let lo = *support.iter().min().unwrap();
        let hi = *support.iter().max().unwrap();
        let len = ((hi - lo) / 2 + 1) as usize;
        let mut window = vec![false; len];
        for &d in support {
            let slot = ((d - lo) / 2) as usize;
            window[slot] = !window[slot]; // duplicates cancel mod 2
        }
        Config::from_window(lattice, DoubledIndex(lo), &window, false, false)
    }

    /// The single-site configuration.
    pub fn delta(lattice: Lattice, at: DoubledIndex) -> Result<Config> {
        Config::from_support(lattice, &[at.0])
    }

    /// A Heaviside configuration: `left` below the step, `right` from the step
    /// (a doubled index) onwards.
    pub fn heaviside(lattice: Lattice, step: DoubledIndex, left: bool, right: bool) -> Result<Config> {
        if lattice.is_ring() {
            return Err(Error::InvalidParameter(
                "Heaviside configurations live on the line".into(),
            ));
        }
        Config::from_window(lattice, step, &[], left, right)
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn left_boundary(&self) -> bool {
        self.left
    }

    pub fn right_boundary(&self) -> bool {
        self.right
    }

    /// Doubled index of the first window slot.
    pub fn window_start(&self) -> i64 {
        self.start
    }

    pub fn window_len(&self) -> usize {
        self.bits.len()
    }

    pub(crate) fn window_bits(&self) -> &Bits {
        &self.bits
    }

    /// Value at a doubled index. Panics if the index is on the wrong lattice.
    pub fn get(&self, d: DoubledIndex) -> bool {
        match self.lattice {
            Lattice::Ring { n, parity } => {
                let dm = d.0.rem_euclid(2 * n as i64);
                assert_eq!(
                    SiteParity::of_doubled(dm),
                    parity,
                    "index parity does not match the ring lattice"
                );
                self.bits.get(((dm - parity.bit()) / 2) as usize)
            }
            _ => {
                assert_eq!(
                    d.parity(),
                    self.lattice.parity(),
                    "index parity does not match the lattice"
                );
                if d.0 < self.start {
                    self.left
                } else {
                    let slot = (d.0 - self.start) / 2;
                    if slot >= self.bits.len() as i64 {
                        self.right
                    } else {
                        self.bits.get(slot as usize)
                    }
                }
            }
        }
    }

    /// Doubled indices of set bits inside the window, ascending. For a finite
    /// configuration this is the support.
    pub fn support(&self) -> Vec<DoubledIndex> {
        self.bits
            .ones()
            .map(|k| DoubledIndex(self.start + 2 * k as i64))
            .collect()
    }

    /// In the class vanishing at minus infinity (zero left boundary)?
    pub fn in_s_minus(&self) -> bool {
        self.lattice.is_ring() || !self.left
    }

    /// In the class vanishing at plus infinity (zero right boundary)?
    pub fn in_s_plus(&self) -> bool {
        self.lattice.is_ring() || !self.right
    }

    /// Finite support (both boundary constants zero, or a ring)?
    pub fn in_s_fin(&self) -> bool {
        self.in_s_minus() && self.in_s_plus()
    }

    /// Number of ones; `None` when a boundary constant is 1.
    pub fn count_ones(&self) -> Option<usize> {
        if self.in_s_fin() {
            Some(self.bits.count_ones())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        !self.left && !self.right && self.bits.count_ones() == 0
    }

    /// XOR of all entries, defined for finite-support and ring configurations.
    pub fn parity_norm(&self) -> Result<bool> {
        if !self.in_s_minus() {
            return Err(Error::NonzeroBoundary { side: "left" });
        }
        if !self.in_s_plus() {
            return Err(Error::NonzeroBoundary { side: "right" });
        }
        Ok(self.bits.parity())
    }

    /// Pointwise product over GF(2); boundary constants multiply.
    pub fn product(&self, other: &Config) -> Result<Config> {
        self.zip(other, |a, b| a && b)
    }

    /// Pointwise sum over GF(2); boundary constants add.
    pub fn xor(&self, other: &Config) -> Result<Config> {
        self.zip(other, |a, b| a != b)
    }

    /// All bits and boundary constants flipped.
    pub fn complemented(&self) -> Config {
        let window: Vec<bool> = (0..self.bits.len()).map(|k| !self.bits.get(k)).collect();
        let mut c = Config {
            lattice: self.lattice,
            start: self.start,
            bits: Bits::from_bools(&window),
            left: !self.left,
            right: !self.right,
        };
        if !self.lattice.is_ring() {
            c.normalize();
        } else {
            c.left = false;
            c.right = false;
        }
        c
    }

    /// Shift every site by `sites` lattice steps.
    pub fn translated(&self, sites: i64) -> Config {
        match self.lattice {
            Lattice::Ring { n, .. } => {
                let n = n as usize;
                let shift = sites.rem_euclid(n as i64) as usize;
                let window: Vec<bool> =
                    (0..n).map(|k| self.bits.get((k + n - shift) % n)).collect();
                Config {
                    lattice: self.lattice,
                    start: self.start,
                    bits: Bits::from_bools(&window),
                    left: false,
                    right: false,
                }
            }
            _ => Config {
                lattice: self.lattice,
                start: self.start + 2 * sites,
                bits: self.bits.clone(),
                left: self.left,
                right: self.right,
            },
        }
    }

    /// The interface profile: output site `i` is the sum of the two adjacent
    /// input sites. Lives on the opposite lattice parity; constants have zero
    /// gradient, so the output boundary bits are always zero.
    pub fn grad(&self) -> Config {
        match self.lattice {
            Lattice::Ring { n, parity } => {
                let n = n as usize;
                let window: Vec<bool> = match parity {
                    // Output slot k sits at doubled 2k+1, between inputs k and k+1.
                    SiteParity::Whole => (0..n)
                        .map(|k| self.bits.get(k) != self.bits.get((k + 1) % n))
                        .collect(),
                    // Output slot k sits at doubled 2k, between inputs k-1 and k.
                    SiteParity::Half => (0..n)
                        .map(|k| self.bits.get((k + n - 1) % n) != self.bits.get(k))
                        .collect(),
                };
                Config {
                    lattice: self.lattice.flipped(),
                    start: parity.flipped().bit(),
                    bits: Bits::from_bools(&window),
                    left: false,
                    right: false,
                }
            }
            _ => {
                let len = self.bits.len();
                let window: Vec<bool> = (0..=len)
                    .map(|k| {
                        let d = self.start - 1 + 2 * k as i64;
                        self.get(DoubledIndex(d - 1)) != self.get(DoubledIndex(d + 1))
                    })
                    .collect();
                let mut c = Config {
                    lattice: self.lattice.flipped(),
                    start: self.start - 1,
                    bits: Bits::from_bools(&window),
                    left: false,
                    right: false,
                };
                c.normalize();
                c
            }
        }
    }

    /// One-sided inverse of [`grad`](Self::grad): prefix parity for
    /// [`Side::Minus`], suffix parity for [`Side::Plus`].
    pub fn grad_inv(&self, side: Side) -> Result<Config> {
        if let Lattice::Ring { n, parity } = self.lattice {
            if self.bits.parity() {
                return Err(Error::RingOddParity);
            }
            let n = n as usize;
            // Both one-sided inverses coincide on even-parity ring states;
            // anchor the scan at slot zero.
            let mut acc = false;
            let mut window = vec![false; n];
            match parity {
                // Output slot k at doubled 2k+1 accumulates inputs <= k.
                SiteParity::Whole => {
                    for k in 0..n {
                        acc ^= self.bits.get(k);
                        window[k] = acc;
                    }
                }
                // Output slot k at doubled 2k accumulates inputs < k.
                SiteParity::Half => {
                    for k in 0..n {
                        window[k] = acc;
                        acc ^= self.bits.get(k);
                    }
                }
            }
            return Ok(Config {
                lattice: self.lattice.flipped(),
                start: parity.flipped().bit(),
                bits: Bits::from_bools(&window),
                left: false,
                right: false,
            });
        }

        let len = self.bits.len();
        match side {
            Side::Minus => {
                if self.left {
                    return Err(Error::WrongBoundaryClass { side: "left" });
                }
                if self.right {
                    // The prefix parity would alternate forever past the window.
                    return Err(Error::UnrepresentableInverse { side: "right" });
                }
                let mut acc = false;
                let mut window = Vec::with_capacity(len + 1);
                window.push(false);
                for k in 0..len {
                    acc ^= self.bits.get(k);
                    window.push(acc);
                }
                let mut c = Config {
                    lattice: self.lattice.flipped(),
                    start: self.start - 1,
                    bits: Bits::from_bools(&window),
                    left: false,
                    right: acc,
                };
                c.normalize();
                Ok(c)
            }
            Side::Plus => {
                if self.right {
                    return Err(Error::WrongBoundaryClass { side: "right" });
                }
                if self.left {
                    return Err(Error::UnrepresentableInverse { side: "left" });
                }
                let total = self.bits.parity();
                let mut acc = total;
                let mut window = Vec::with_capacity(len + 1);
                window.push(acc);
                for k in 0..len {
                    acc ^= self.bits.get(k);
                    window.push(acc);
                }
                let mut c = Config {
                    lattice: self.lattice.flipped(),
                    start: self.start - 1,
                    bits: Bits::from_bools(&window),
                    left: total,
                    right: false,
                };
                c.normalize();
                Ok(c)
            }
        }
    }

    fn zip(&self, other: &Config, f: impl Fn(bool, bool) -> bool) -> Result<Config> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch(self.lattice, other.lattice));
        }
        if let Lattice::Ring { n, parity } = self.lattice {
            let window: Vec<bool> = (0..n as usize)
                .map(|k| f(self.bits.get(k), other.bits.get(k)))
                .collect();
            return Ok(Config {
                lattice: self.lattice,
                start: parity.bit(),
                bits: Bits::from_bools(&window),
                left: false,
                right: false,
            });
        }
        let (lo, hi) = match (self.bits.len(), other.bits.len()) {
            (0, 0) => {
                let lo = self.start.min(other.start);
                (lo, self.start.max(other.start))
            }
            _ => {
                let lo = self.start.min(other.start);
                let hi = (self.start + 2 * self.bits.len() as i64)
                    .max(other.start + 2 * other.bits.len() as i64);
                (lo, hi)
            }
        };
        let len = ((hi - lo) / 2) as usize;
        let window: Vec<bool> = (0..len)
            .map(|k| {
                let d = DoubledIndex(lo + 2 * k as i64);
                f(self.get(d), other.get(d))
            })
            .collect();
        let mut c = Config {
            lattice: self.lattice,
            start: lo,
            bits: Bits::from_bools(&window),
            left: f(self.left, other.left),
            right: f(self.right, other.right),
        };
        c.normalize();
        Ok(c)
    }

    /// Trim the window down to the canonical minimal form.
    fn normalize(&mut self) {
        debug_assert!(!self.lattice.is_ring());
        let len = self.bits.len();
        let mut lo = 0usize;
        while lo < len && self.bits.get(lo) == self.left {
            lo += 1;
        }
        let mut hi = len;
        while hi > lo && self.bits.get(hi - 1) == self.right {
            hi -= 1;
        }
        if lo == 0 && hi == len {
            return;
        }
        let window: Vec<bool> = (lo..hi).map(|k| self.bits.get(k)).collect();
        self.start += 2 * lo as i64;
        self.bits = Bits::from_bools(&window);
        if self.bits.is_empty() && self.left == self.right {
            self.start = self.lattice.parity().bit();
        }
    }
}

impl fmt::Debug for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lattice.is_ring() {
            write!(f, "{}<", self.lattice)?;
            for k in 0..self.bits.len() {
                write!(f, "{}", self.bits.get(k) as u8)?;
            }
            return write!(f, ">");
        }
        write!(
            f,
            "...{l}{l}{l}[",
            l = self.left as u8
        )?;
        for k in 0..self.bits.len() {
            write!(f, "{}", self.bits.get(k) as u8)?;
        }
        write!(
            f,
            "]{r}{r}{r}... @ {} on {}",
            DoubledIndex(self.start),
            self.lattice,
            r = self.right as u8
        )
    }
}

/// The admissibility class of a pair of configurations for the parity
/// pairing: the product is guaranteed to have finite support exactly when one
/// of the four class conditions holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingClass {
    pub admissible: bool,
}

impl PairingClass {
    pub fn of(x: &Config, y: &Config) -> PairingClass {
        let admissible = (x.in_s_minus() && y.in_s_plus())
            || (x.in_s_plus() && y.in_s_minus())
            || x.in_s_fin()
            || y.in_s_fin();
        PairingClass { admissible }
    }
}

/// True when the pair falls in one of the four admissibility cases.
pub fn pairing_admissible(x: &Config, y: &Config) -> bool {
    PairingClass::of(x, y).admissible
}

/// A serialisable window literal, the exchange format for configurations.
///
/// `offset` is the site (not doubled) of the first window bit; half-integer
/// offsets select the half-integer lattice.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigLiteral {
    pub lattice: String,
    pub offset: f64,
    pub bits: String,
    #[serde(default)]
    pub left: u8,
    #[serde(default)]
    pub right: u8,
}

impl ConfigLiteral {
    pub fn to_config(&self) -> Result<Config> {
        let lattice = parse_lattice(&self.lattice)?;
        let start = DoubledIndex::from_site(self.offset)
            .ok_or_else(|| Error::InvalidLiteral(format!("offset {} is not a site", self.offset)))?;
        let window: Vec<bool> = self
            .bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidLiteral(format!("bit character {other:?}"))),
            })
            .collect::<Result<_>>()?;
        if self.left > 1 || self.right > 1 {
            return Err(Error::InvalidLiteral("boundary bits must be 0 or 1".into()));
        }
        Config::from_window(lattice, start, &window, self.left == 1, self.right == 1)
    }

    pub fn from_config(c: &Config) -> ConfigLiteral {
        let bits: String = (0..c.window_len())
            .map(|k| if c.window_bits().get(k) { '1' } else { '0' })
            .collect();
        ConfigLiteral {
            lattice: c.lattice().to_string(),
            offset: DoubledIndex(c.window_start()).site(),
            bits,
            left: c.left_boundary() as u8,
            right: c.right_boundary() as u8,
        }
    }
}

pub fn parse_lattice(s: &str) -> Result<Lattice> {
    let s = s.trim();
    match s {
        "Z" => return Ok(Lattice::Z),
        "Z+1/2" => return Ok(Lattice::ZHalf),
        _ => {}
    }
    if let Some(body) = s.strip_prefix("ring(") {
        let (num, parity) = if let Some(num) = body.strip_suffix(")+1/2") {
            (num, SiteParity::Half)
        } else if let Some(num) = body.strip_suffix(')') {
            (num, SiteParity::Whole)
        } else {
            return Err(Error::InvalidLiteral(format!("lattice {s:?}")));
        };
        let n: u32 = num
            .parse()
            .map_err(|_| Error::InvalidLiteral(format!("ring size {num:?}")))?;
        if n == 0 {
            return Err(Error::InvalidLiteral("ring size must be positive".into()));
        }
        return Ok(Lattice::Ring { n, parity });
    }
    Err(Error::InvalidLiteral(format!("lattice {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(support: &[i64]) -> Config {
        // doubled indices on Z
        Config::from_support(Lattice::Z, support).unwrap()
    }

    #[test]
    fn parity_norm_examples() {
        assert_eq!(Config::empty(Lattice::Z).parity_norm().unwrap(), false);
        // x = {0, 1, 3} (sites) -> three ones
        assert_eq!(fin(&[0, 2, 6]).parity_norm().unwrap(), true);
        assert_eq!(fin(&[0]).parity_norm().unwrap(), true);
        let heavi = Config::heaviside(Lattice::Z, DoubledIndex(0), false, true).unwrap();
        assert!(heavi.parity_norm().is_err());
    }

    #[test]
    fn product_examples() {
        // x={0,1}, y={1,2} -> {1}
        let x = fin(&[0, 2]);
        let y = fin(&[2, 4]);
        assert_eq!(x.product(&y).unwrap(), fin(&[2]));
        // Heaviside 1_{i>=0} * delta_{-1} -> empty
        let h = Config::heaviside(Lattice::Z, DoubledIndex(0), false, true).unwrap();
        let d = fin(&[-2]);
        assert!(h.product(&d).unwrap().is_zero());
        // annihilator
        let z = Config::empty(Lattice::Z);
        assert!(h.product(&z).unwrap().is_zero());
    }

    #[test]
    fn grad_examples() {
        // delta_0 -> {-1/2, +1/2}
        let g = fin(&[0]).grad();
        assert_eq!(g, Config::from_support(Lattice::ZHalf, &[-1, 1]).unwrap());
        // {0,1} -> {-1/2, 3/2}
        let g = fin(&[0, 2]).grad();
        assert_eq!(g, Config::from_support(Lattice::ZHalf, &[-1, 3]).unwrap());
        // all-ones ring -> all-zeros ring
        let ring = Lattice::Ring {
            n: 6,
            parity: SiteParity::Whole,
        };
        let ones = Config::constant(ring, true);
        assert!(ones.grad().is_zero());
        // Heaviside step: gradient is a single particle at the step edge
        let h = Config::heaviside(Lattice::Z, DoubledIndex(0), false, true).unwrap();
        assert_eq!(
            h.grad(),
            Config::from_support(Lattice::ZHalf, &[-1]).unwrap()
        );
    }

    #[test]
    fn grad_inv_examples() {
        // {-1/2, 1/2} even parity, minus side -> delta_0
        let y = Config::from_support(Lattice::ZHalf, &[-1, 1]).unwrap();
        assert_eq!(y.grad_inv(Side::Minus).unwrap(), fin(&[0]));
        assert_eq!(y.grad_inv(Side::Plus).unwrap(), fin(&[0]));
        // delta_{1/2}, minus side -> Heaviside 1_{i>=1}
        let y = Config::from_support(Lattice::ZHalf, &[1]).unwrap();
        let h = Config::heaviside(Lattice::Z, DoubledIndex(2), false, true).unwrap();
        assert_eq!(y.grad_inv(Side::Minus).unwrap(), h);
        // empty -> empty on both sides
        let e = Config::empty(Lattice::ZHalf);
        assert!(e.grad_inv(Side::Minus).unwrap().is_zero());
        assert!(e.grad_inv(Side::Plus).unwrap().is_zero());
    }

    #[test]
    fn grad_inv_odd_parity_differs_by_ones() {
        let y = Config::from_support(Lattice::ZHalf, &[1, 3, 7]).unwrap();
        let a = y.grad_inv(Side::Minus).unwrap();
        let b = y.grad_inv(Side::Plus).unwrap();
        assert_eq!(a.xor(&b).unwrap(), Config::constant(Lattice::Z, true));
        assert_eq!(a.grad(), y);
        assert_eq!(b.grad(), y);
    }

    #[test]
    fn grad_inv_boundary_classes() {
        let h = Config::heaviside(Lattice::ZHalf, DoubledIndex(1), true, false).unwrap();
        assert!(h.grad_inv(Side::Minus).is_err());
        assert!(h.grad_inv(Side::Plus).is_err());
        let h = Config::heaviside(Lattice::ZHalf, DoubledIndex(1), false, true).unwrap();
        assert!(h.grad_inv(Side::Minus).is_err());
    }

    #[test]
    fn ring_grad_roundtrip() {
        let ring = Lattice::Ring {
            n: 8,
            parity: SiteParity::Whole,
        };
        let x = Config::from_support(ring, &[0, 4, 6]).unwrap();
        let y = x.grad();
        assert_eq!(y.lattice().parity(), SiteParity::Half);
        assert!(!y.parity_norm().unwrap());
        let back = y.grad_inv(Side::Minus).unwrap();
        assert_eq!(back.grad(), y);
        // odd-parity ring states are rejected
        let odd = Config::from_support(
            Lattice::Ring {
                n: 8,
                parity: SiteParity::Half,
            },
            &[1],
        )
        .unwrap();
        assert!(odd.grad_inv(Side::Minus).is_err());
    }

    #[test]
    fn pairing_cases() {
        let s_minus = Config::heaviside(Lattice::Z, DoubledIndex(0), false, true).unwrap();
        let s_plus = Config::heaviside(Lattice::Z, DoubledIndex(0), true, false).unwrap();
        let ones = Config::constant(Lattice::Z, true);
        let finite = fin(&[0, 2]);
        assert!(pairing_admissible(&s_minus, &s_plus));
        assert!(pairing_admissible(&s_plus, &s_minus));
        assert!(!pairing_admissible(&ones, &ones));
        assert!(pairing_admissible(&finite, &ones));
        assert!(pairing_admissible(&ones, &finite));
    }

    #[test]
    fn normalization_is_canonical() {
        let a = Config::from_window(Lattice::Z, DoubledIndex(-4), &[false, false, true, false], false, false)
            .unwrap();
        let b = fin(&[0]);
        assert_eq!(a, b);
        // an explicit window that is all boundary reduces to the constant
        let c = Config::from_window(Lattice::Z, DoubledIndex(6), &[true, true], true, true).unwrap();
        assert_eq!(c, Config::constant(Lattice::Z, true));
    }

    #[test]
    fn literal_roundtrip() {
        let lit = ConfigLiteral {
            lattice: "Z".into(),
            offset: -1.0,
            bits: "1101".into(),
            left: 0,
            right: 0,
        };
        let c = lit.to_config().unwrap();
        assert_eq!(c, fin(&[-2, 0, 4]));
        let back = ConfigLiteral::from_config(&c);
        assert_eq!(back.to_config().unwrap(), c);
        let half = ConfigLiteral {
            lattice: "Z+1/2".into(),
            offset: -0.5,
            bits: "11".into(),
            left: 0,
            right: 0,
        };
        assert_eq!(
            half.to_config().unwrap(),
            Config::from_support(Lattice::ZHalf, &[-1, 1]).unwrap()
        );
    }
}
