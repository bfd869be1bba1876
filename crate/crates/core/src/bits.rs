//! Minimal packed bit buffer used by configurations and the simulation engines.

pub const WORD_BITS: usize = 64;

/// A fixed-length sequence of bits packed into `u64` words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn zeros(len: usize) -> Bits {
        Bits {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn filled(len: usize, value: bool) -> Bits {
        let mut b = Bits::zeros(len);
        if value {
            for w in &mut b.words {
                *w = u64::MAX;
            }
            b.clear_tail();
        }
        b
    }

    pub fn from_bools(bits: &[bool]) -> Bits {
        let mut b = Bits::zeros(bits.len());
        for (i, &v) in bits.iter().enumerate() {
            if v {
                b.set(i, true);
            }
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if v {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// XOR of all bits.
    pub fn parity(&self) -> bool {
        self.words.iter().fold(0u64, |acc, w| acc ^ w).count_ones() % 2 == 1
    }

    /// Index of the first set bit, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Index of the last set bit, if any.
    pub fn last_one(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(k * WORD_BITS + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    /// Iterator over the indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD_BITS + t)
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut b = Bits::zeros(130);
        b.set(0, true);
        b.set(64, true);
        b.set(129, true);
        assert_eq!(b.count_ones(), 3);
        assert!(b.parity());
        assert_eq!(b.first_one(), Some(0));
        assert_eq!(b.last_one(), Some(129));
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        b.toggle(64);
        assert_eq!(b.count_ones(), 2);
        assert!(!b.parity());
    }

    #[test]
    fn filled_respects_length() {
        let b = Bits::filled(70, true);
        assert_eq!(b.count_ones(), 70);
        assert_eq!(b.last_one(), Some(69));
    }
}
