//! Fixed-length binary words packed into a `u64`.
//!
//! Bit index 1 is the leftmost symbol and carries the `2^(len-1)` place, so the
//! numeric value of a word is its big-endian reading. All words handled here
//! have between 1 and 64 symbols; longer codes are only ever described
//! symbolically.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// Longest word that fits the packed representation.
pub const MAX_WORD_LEN: u32 = 64;

#[inline]
pub(crate) fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// A binary word of 1 to 64 symbols. Storage above `len` is always zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    // Field order matters for the derived ordering: length first, then value.
    len: u8,
    bits: u64,
}

impl BitWord {
    /// Big-endian `len`-bit representation of `value`.
    pub fn from_integer(value: u64, len: u32) -> Result<Self> {
        check_len(len)?;
        if value & !low_mask(len) != 0 {
            return Err(domain(format!("{value} does not fit in {len} bits")));
        }
        Ok(Self { len: len as u8, bits: value })
    }

    /// Like [`from_integer`](Self::from_integer) but masks instead of failing.
    /// `len` must still be in `1..=64`.
    pub(crate) fn truncating(value: u64, len: u32) -> Self {
        debug_assert!((1..=MAX_WORD_LEN).contains(&len));
        Self { len: len as u8, bits: value & low_mask(len) }
    }

    #[inline]
    pub fn len(&self) -> u32 {
        u32::from(self.len)
    }

    /// Always false; words have at least one symbol.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The big-endian integer value.
    #[inline]
    pub fn value(&self) -> u64 {
        self.bits
    }

    /// Symbol at 1-based position `i` (1 = leftmost).
    pub fn bit(&self, i: u32) -> Result<bool> {
        if i == 0 || i > self.len() {
            return Err(domain(format!("bit index {i} outside 1..={}", self.len())));
        }
        Ok((self.bits >> (self.len() - i)) & 1 == 1)
    }

    /// The first `t` symbols.
    pub fn prefix(&self, t: u32) -> Result<Self> {
        self.check_cut(t)?;
        Ok(Self { len: t as u8, bits: self.bits >> (self.len() - t) })
    }

    /// The last `t` symbols.
    pub fn suffix(&self, t: u32) -> Result<Self> {
        self.check_cut(t)?;
        Ok(Self { len: t as u8, bits: self.bits & low_mask(t) })
    }

    /// True iff the `t`-prefix of `self` equals the `t`-suffix of `other`.
    pub fn t_overlap(&self, other: &Self, t: u32) -> Result<bool> {
        if self.len != other.len {
            return Err(domain(format!(
                "length mismatch: {} vs {}",
                self.len, other.len
            )));
        }
        self.check_cut(t)?;
        Ok(prefix_bits(self.bits, self.len(), t) == other.bits & low_mask(t))
    }

    /// Rotate left by `j` places: `a1..al` becomes `a(j+1)..al a1..aj`.
    pub fn cyclic_shift(&self, j: u32) -> Result<Self> {
        if j >= self.len() {
            return Err(domain(format!("shift {j} outside 0..{}", self.len())));
        }
        if j == 0 {
            return Ok(*self);
        }
        let l = self.len();
        let rotated = ((self.bits << j) | (self.bits >> (l - j))) & low_mask(l);
        Ok(Self { len: self.len, bits: rotated })
    }

    /// Bitwise complement within the word's length.
    pub fn complement(&self) -> Self {
        Self { len: self.len, bits: !self.bits & low_mask(self.len()) }
    }

    /// Concatenation `self || other`; fails past 64 symbols.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        let len = self.len() + other.len();
        check_len(len)?;
        Ok(Self { len: len as u8, bits: (self.bits << other.len()) | other.bits })
    }

    fn check_cut(&self, t: u32) -> Result<()> {
        if t == 0 || t > self.len() {
            return Err(domain(format!("cut length {t} outside 1..={}", self.len())));
        }
        Ok(())
    }
}

/// `t`-prefix of a `len`-bit packed value, as an integer.
#[inline]
pub(crate) fn prefix_bits(bits: u64, len: u32, t: u32) -> u64 {
    bits >> (len - t)
}

/// `t`-suffix of a packed value, as an integer.
#[inline]
pub(crate) fn suffix_bits(bits: u64, t: u32) -> u64 {
    bits & low_mask(t)
}

/// Packed-integer form of the overlap test used by the hot loops:
/// does some `t` in `t1..=t2` make the `t`-prefix of `u` equal the `t`-suffix of `v`?
#[inline]
pub(crate) fn overlaps_in_range(u: u64, v: u64, len: u32, t1: u32, t2: u32) -> bool {
    (t1..=t2).any(|t| prefix_bits(u, len, t) == suffix_bits(v, t))
}

fn check_len(len: u32) -> Result<()> {
    if len == 0 || len > MAX_WORD_LEN {
        return Err(domain(format!("word length {len} outside 1..={MAX_WORD_LEN}")));
    }
    Ok(())
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.len();
        let s: String = (1..=l)
            .map(|i| if (self.bits >> (l - i)) & 1 == 1 { '1' } else { '0' })
            .collect();
        f.pad(&s)
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let len = u32::try_from(s.len()).map_err(|_| domain("word too long"))?;
        check_len(len)?;
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    other => {
                        return Err(Error::Parse {
                            line: 0,
                            message: format!("invalid symbol {other:?} at column {}", i + 1),
                        })
                    }
                };
        }
        Ok(Self { len: len as u8, bits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn from_integer_pads_on_the_left() {
        assert_eq!(BitWord::from_integer(3, 4).unwrap().to_string(), "0011");
        assert_eq!(BitWord::from_integer(0, 5).unwrap().to_string(), "00000");
        assert_eq!(BitWord::from_integer(11, 6).unwrap().to_string(), "001011");
        assert_eq!(BitWord::from_integer(u64::MAX, 64).unwrap().value(), u64::MAX);
    }

    #[test]
    fn from_integer_rejects_out_of_range() {
        assert!(matches!(BitWord::from_integer(16, 4), Err(Error::Domain(_))));
        assert!(BitWord::from_integer(0, 0).is_err());
        assert!(BitWord::from_integer(0, 65).is_err());
    }

    #[test]
    fn prefix_and_suffix() {
        assert_eq!(w("0111").prefix(2).unwrap(), w("01"));
        assert_eq!(w("0111").suffix(2).unwrap(), w("11"));
        assert_eq!(w("0111").prefix(4).unwrap(), w("0111"));
        assert_eq!(w("0111").suffix(4).unwrap(), w("0111"));
        assert!(w("0111").prefix(0).is_err());
        assert!(w("0111").suffix(5).is_err());
    }

    #[test]
    fn overlap_examples() {
        assert!(w("0111").t_overlap(&w("1101"), 2).unwrap());
        assert!(w("0000").t_overlap(&w("0000"), 3).unwrap());
        assert!(!w("0011").t_overlap(&w("0011"), 2).unwrap());
        assert!(w("0011").t_overlap(&w("001"), 1).is_err());
        assert!(w("0011").t_overlap(&w("0011"), 5).is_err());
    }

    #[test]
    fn shifts() {
        assert_eq!(w("0011").cyclic_shift(1).unwrap(), w("0110"));
        assert_eq!(w("0011").cyclic_shift(0).unwrap(), w("0011"));
        assert_eq!(w("1000").cyclic_shift(3).unwrap(), w("0100"));
        assert!(w("1000").cyclic_shift(4).is_err());
        let full = BitWord::from_integer(0x8000_0000_0000_0001, 64).unwrap();
        assert_eq!(full.cyclic_shift(1).unwrap().value(), 0x3);
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(w("001011").value(), 11);
        assert_eq!(w("001011").len(), 6);
        assert!("0012".parse::<BitWord>().is_err());
        assert!("".parse::<BitWord>().is_err());
        assert!(" 01".parse::<BitWord>().is_err());
        assert_eq!(format!("{}", w("10")), "10");
    }

    #[test]
    fn concat_and_complement() {
        assert_eq!(w("01").concat(&w("110")).unwrap(), w("01110"));
        assert_eq!(w("0110").complement(), w("1001"));
        assert!(BitWord::from_integer(0, 40)
            .unwrap()
            .concat(&BitWord::from_integer(0, 30).unwrap())
            .is_err());
    }

    #[test]
    fn bit_access_is_one_based() {
        let x = w("100");
        assert!(x.bit(1).unwrap());
        assert!(!x.bit(3).unwrap());
        assert!(x.bit(0).is_err());
    }
}
